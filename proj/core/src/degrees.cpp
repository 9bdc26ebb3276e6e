#include "latnet/degrees.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace latnet {

std::int64_t DegreeHistogram::total() const {
    std::int64_t sum = 0;
    for (const auto& [k, c] : counts) sum += c;
    return sum;
}

std::int64_t DegreeHistogram::count(int k) const {
    const auto it = counts.find(k);
    return it == counts.end() ? 0 : it->second;
}

double DegreeHistogram::freq(int k) const {
    return static_cast<double>(count(k)) / static_cast<double>(total());
}

int DegreeHistogram::max_degree() const {
    int hi = 0;
    for (const auto& [k, c] : counts)
        if (c > 0) hi = std::max(hi, k);
    return hi;
}

void DegreeHistogram::absorb(const DegreeHistogram& other) {
    if (graphs == 0) {
        *this = other;
        return;
    }
    if (other.graph_n != graph_n)
        throw std::invalid_argument("cannot pool histograms over different node counts");
    graphs += other.graphs;
    for (const auto& [k, c] : other.counts) counts[k] += c;
}

DegreeHistogram degree_histogram(const Graph& g) {
    const auto deg = g.degrees();
    return degree_histogram(std::span<const int>(deg.data(), deg.size()), g.n());
}

DegreeHistogram degree_histogram(std::span<const int> degrees, int graph_n) {
    DegreeHistogram hist;
    hist.graph_n = graph_n;
    hist.graphs = static_cast<std::int64_t>(degrees.size()) / graph_n;
    if (hist.graphs * graph_n != static_cast<std::int64_t>(degrees.size()))
        throw std::invalid_argument("degree sequence length must be a multiple of graph_n");
    for (int d : degrees) {
        if (d < 0 || d >= graph_n) throw std::invalid_argument("degree outside [0, n-1]");
        ++hist.counts[d];
    }
    return hist;
}

PowerLawFit powerlaw_fit(const DegreeHistogram& hist) {
    if (hist.graph_n < 1 || hist.counts.empty()) throw std::invalid_argument("empty histogram");
    const int sqrt_n = static_cast<int>(std::floor(std::sqrt(static_cast<double>(hist.graph_n))));

    PowerLawFit fit;
    std::int64_t best = -1;
    for (int k = 0; k <= sqrt_n; ++k) { // ties go to the smallest k
        const std::int64_t c = hist.count(k);
        if (c > best) {
            best = c;
            fit.k_lo = k;
        }
    }
    fit.k_hi = hist.max_degree();

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (const auto& [k, c] : hist.counts) {
        if (k < std::max(fit.k_lo, 1) || k > fit.k_hi || c <= 0) continue;
        const double x = std::log(static_cast<double>(k));
        const double y = std::log(static_cast<double>(c));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++m;
    }
    if (m < 3)
        throw std::invalid_argument("power-law fit needs at least 3 positive-count bins in "
                                    "[k_lo, k_hi], got " + std::to_string(m));
    const double denom = m * sxx - sx * sx;
    fit.gamma1 = (m * sxy - sx * sy) / denom;
    fit.gamma0 = (sy - fit.gamma1 * sx) / m;
    fit.points_used = m;
    return fit;
}

double poisson_tv(const DegreeHistogram& hist, double lambda) {
    if (lambda < 0.0) throw std::invalid_argument("lambda must be >= 0");
    const std::int64_t total = hist.total();
    if (total <= 0) throw std::invalid_argument("empty histogram");
    const int kmax = hist.max_degree();

    double pmf = std::exp(-lambda); // k = 0
    double tv = 0.0, cdf = 0.0;
    for (int k = 0; k <= kmax; ++k) {
        if (k > 0) pmf *= lambda / k;
        cdf += pmf;
        const double f = static_cast<double>(hist.count(k)) / static_cast<double>(total);
        tv += std::abs(f - pmf);
    }
    tv += std::max(0.0, 1.0 - cdf); // Poisson mass beyond the maximal degree
    return tv / 2.0;
}

TailSets tail_sets(std::span<const double> freq, int n, double gamma, double mu) {
    if (!(gamma > 1.0)) throw std::invalid_argument("tail sets need gamma > 1");
    if (!(mu > 0.0)) throw std::invalid_argument("tail sets need mu > 0");
    if (n < 1) throw std::invalid_argument("need n >= 1");

    double z_heavy = 0.0, z_cutoff = 0.0;
    for (int k = 1; k <= n; ++k) {
        z_heavy += std::pow(static_cast<double>(k), -gamma);
        z_cutoff += std::pow(static_cast<double>(k), -gamma) * std::exp(-mu * k);
    }
    const double m_gamma = 1.0 / z_heavy;
    const double m_gamma_mu = 1.0 / z_cutoff;

    TailSets sets;
    for (int k = 1; k <= n && k < static_cast<int>(freq.size()); ++k) {
        const double f = freq[static_cast<std::size_t>(k)];
        if (f >= m_gamma * std::pow(static_cast<double>(k), -gamma)) sets.heavy.push_back(k);
        if (f >= m_gamma_mu * std::pow(static_cast<double>(k), -gamma) * std::exp(-mu * k))
            sets.cutoff.push_back(k);
    }
    return sets;
}

TailSets tail_sets(const DegreeHistogram& hist, double gamma, double mu) {
    const std::int64_t total = hist.total();
    if (total <= 0) throw std::invalid_argument("empty histogram");
    std::vector<double> freq(static_cast<std::size_t>(hist.graph_n), 0.0);
    for (const auto& [k, c] : hist.counts)
        if (k < hist.graph_n) freq[static_cast<std::size_t>(k)] = static_cast<double>(c) / total;
    return tail_sets(std::span<const double>(freq.data(), freq.size()), hist.graph_n, gamma, mu);
}

ComponentSummary components(const Graph& g) {
    const int n = g.n();
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    const auto find = [&parent](int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };

    std::int64_t t = 0;
    for (int i = 1; i < n; ++i)
        for (int j = i + 1; j <= n; ++j, ++t)
            if (g.pair_bits()[static_cast<std::size_t>(t)]) {
                const int ri = find(i - 1), rj = find(j - 1);
                if (ri != rj) parent[ri] = rj;
            }

    std::vector<std::int64_t> size(n, 0);
    for (int i = 0; i < n; ++i) ++size[static_cast<std::size_t>(find(i))];
    ComponentSummary summary;
    for (std::int64_t s : size)
        if (s > 0) summary.sizes.push_back(s);
    std::sort(summary.sizes.rbegin(), summary.sizes.rend());
    summary.connected = summary.sizes.size() == 1;
    return summary;
}

} // namespace latnet
