#pragma once

#include <stdexcept>
#include <string>

namespace latnet {

/// A parameter set violates its constraint system (probabilities leave [0,1]).
class InfeasibleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A quantity required by the model is undefined (0/0 stationary law,
/// unit marginal in a divisor, all-zero Laplacian input).
class DegenerateError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace latnet
