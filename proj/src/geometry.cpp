#include "rmt/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace rmt {

std::size_t CompressParams::sparsity_budget(std::size_t n) const {
    if (!(delta > 0.0 && delta <= 1.0) || !(rho > 0.0 && rho <= 1.0))
        throw std::invalid_argument("CompressParams: delta, rho must lie in (0, 1]");
    const auto m = static_cast<std::size_t>(std::ceil(delta * static_cast<double>(n)));
    return std::max<std::size_t>(1, std::min(m, n));
}

double sparse_distance(std::span<const double> x, std::size_t m) {
    const std::size_t n = x.size();
    if (m == 0 || m > n)
        throw std::invalid_argument("sparse_distance: m out of range");
    if (m == n)
        return 0.0;
    // indices of the m largest magnitudes, ties resolved to the lower index
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(m),
                      order.end(), [&](std::size_t a, std::size_t b) {
                          const double ma = std::abs(x[a]);
                          const double mb = std::abs(x[b]);
                          return ma != mb ? ma > mb : a < b;
                      });
    std::vector<bool> keep(n, false);
    for (std::size_t i = 0; i < m; ++i)
        keep[order[i]] = true;
    double tail = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        if (!keep[i])
            tail += x[i] * x[i];
    return std::sqrt(tail);
}

Compressibility classify(std::span<const double> x, const CompressParams& params) {
    const double nrm = norm(x);
    if (std::abs(nrm - 1.0) > 1e-8)
        throw std::invalid_argument("classify: input must be a unit vector");
    const std::size_t m = params.sparsity_budget(x.size());
    return sparse_distance(x, m) <= params.rho ? Compressibility::Compressible
                                               : Compressibility::Incompressible;
}

double net_cardinality_bound(std::size_t n, const CompressParams& params) {
    const double dn = params.delta * static_cast<double>(n);
    return std::pow(std::exp(1.0) / params.delta, dn) * std::pow(5.0 / params.rho, dn);
}

namespace {

// next combination of k indices out of n, lexicographic; returns false at end
bool next_support(std::vector<std::size_t>& idx, std::size_t n) {
    const std::size_t k = idx.size();
    std::size_t i = k;
    while (i-- > 0) {
        if (idx[i] + (k - i) < n) {
            ++idx[i];
            for (std::size_t j = i + 1; j < k; ++j)
                idx[j] = idx[j - 1] + 1;
            return true;
        }
    }
    return false;
}

} // namespace

SphereNet build_sparse_net(std::size_t n, const CompressParams& params,
                           std::uint64_t seed, double cap) {
    const double bound = net_cardinality_bound(n, params);
    if (!(bound <= cap))
        throw std::invalid_argument("build_sparse_net: cardinality bound exceeds cap");
    const std::size_t m = params.sparsity_budget(n);

    SphereNet net;
    net.ambient_dim = n;
    net.radius = params.rho;
    net.delta = params.delta;
    net.rho = params.rho;
    net.seed = seed;

    RandomStream stream(derive_stream(seed, {n, m}));
    const double sep_sq = params.rho * params.rho;
    // saturation: this many consecutive rejected candidates ends a subspace
    const std::size_t patience = 400 + 100 * m;

    std::vector<std::size_t> support(m);
    std::iota(support.begin(), support.end(), 0);
    std::vector<double> coords(m);
    do {
        std::vector<std::vector<double>> local; // points of this support, packed coords
        std::size_t rejected = 0;
        while (rejected < patience) {
            double sq = 0.0;
            for (std::size_t i = 0; i < m; ++i) {
                coords[i] = stream.normal();
                sq += coords[i] * coords[i];
            }
            if (sq == 0.0)
                continue;
            const double inv = 1.0 / std::sqrt(sq);
            for (double& c : coords)
                c *= inv;
            bool separated = true;
            for (const auto& p : local) {
                double d = 0.0;
                for (std::size_t i = 0; i < m; ++i) {
                    const double diff = p[i] - coords[i];
                    d += diff * diff;
                }
                if (d <= sep_sq) {
                    separated = false;
                    break;
                }
            }
            if (!separated) {
                ++rejected;
                continue;
            }
            rejected = 0;
            local.push_back(coords);
            std::vector<double> full(n, 0.0);
            for (std::size_t i = 0; i < m; ++i)
                full[support[i]] = coords[i];
            net.points.push_back(std::move(full));
        }
    } while (next_support(support, n));

    return net;
}

std::vector<double> random_sparse_unit_vector(std::size_t n, std::size_t m,
                                              RandomStream& stream) {
    // m distinct coordinates by partial Fisher-Yates
    std::vector<std::size_t> pool(n);
    std::iota(pool.begin(), pool.end(), 0);
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(stream.below(n - i));
        std::swap(pool[i], pool[j]);
    }
    std::vector<double> x(n, 0.0);
    double sq = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double g = stream.normal();
        x[pool[i]] = g;
        sq += g * g;
    }
    if (sq == 0.0) {
        x[pool[0]] = 1.0;
        return x;
    }
    const double inv = 1.0 / std::sqrt(sq);
    for (std::size_t i = 0; i < m; ++i)
        x[pool[i]] *= inv;
    return x;
}

std::vector<double> random_compressible_vector(std::size_t n, const CompressParams& params,
                                               RandomStream& stream) {
    const std::size_t m = params.sparsity_budget(n);
    std::vector<double> x = random_sparse_unit_vector(n, m, stream);

    // uniform point of the rho-ball: uniform direction, radius rho * U^(1/n)
    std::vector<double> perturb(n);
    double sq = 0.0;
    for (double& p : perturb) {
        p = stream.normal();
        sq += p * p;
    }
    const double len =
        params.rho * std::pow(stream.uniform_open01(), 1.0 / static_cast<double>(n));
    if (sq > 0.0) {
        const double f = len / std::sqrt(sq);
        for (std::size_t i = 0; i < n; ++i)
            x[i] += f * perturb[i];
    }
    const double xn = norm(x);
    for (double& v : x)
        v /= xn;
    return x;
}

double check_pseudometric_net(const SphereNet& net, const DenseMatrix& m,
                              std::size_t probes, double target_radius,
                              std::uint64_t seed) {
    if (net.points.empty())
        throw std::invalid_argument("check_pseudometric_net: empty net");
    if (m.cols != net.ambient_dim)
        throw std::invalid_argument("check_pseudometric_net: dimension mismatch");
    if (probes == 0)
        throw std::invalid_argument("check_pseudometric_net: probes must be >= 1");

    // image of every net point under M, packed contiguously
    std::vector<double> images(net.points.size() * m.rows);
    for (std::size_t k = 0; k < net.points.size(); ++k) {
        const std::vector<double> y = matvec(m, net.points[k]);
        std::copy(y.begin(), y.end(), images.begin() + static_cast<std::ptrdiff_t>(k * m.rows));
    }

    CompressParams params{net.delta, net.rho};
    const std::size_t budget = params.sparsity_budget(net.ambient_dim);
    RandomStream stream(derive_stream(seed, {net.points.size(), probes}));
    const double target_sq = target_radius * target_radius;

    std::size_t covered = 0;
    for (std::size_t p = 0; p < probes; ++p) {
        const std::vector<double> x =
            random_sparse_unit_vector(net.ambient_dim, budget, stream);
        const std::vector<double> mx = matvec(m, x);
        bool hit = false;
        for (std::size_t k = 0; k < net.points.size() && !hit; ++k) {
            const double* img = images.data() + k * m.rows;
            double d = 0.0;
            for (std::size_t i = 0; i < m.rows; ++i) {
                const double diff = mx[i] - img[i];
                d += diff * diff;
                if (d > target_sq)
                    break;
            }
            hit = d <= target_sq;
        }
        covered += hit ? 1 : 0;
    }
    return static_cast<double>(covered) / static_cast<double>(probes);
}

void write_net_csv(const SphereNet& net, std::ostream& out) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "# n=%zu delta=%.17g rho=%.17g radius=%.17g seed=%llu\n",
                  net.ambient_dim, net.delta, net.rho, net.radius,
                  static_cast<unsigned long long>(net.seed));
    out << buf;
    char cell[40];
    for (const auto& p : net.points) {
        for (std::size_t j = 0; j < p.size(); ++j) {
            std::snprintf(cell, sizeof(cell), "%.17g", p[j]);
            out << cell << (j + 1 == p.size() ? "" : ",");
        }
        out << "\n";
    }
}

} // namespace rmt
