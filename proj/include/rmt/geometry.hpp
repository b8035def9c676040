#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "rmt/linalg.hpp"
#include "rmt/random.hpp"

namespace rmt {

struct CompressParams {
    double delta = 0.1; // in (0, 1]
    double rho = 0.1;   // in (0, 1]

    // sparsity budget m = ceil(delta * n); the strict support bound of the
    // sparse-vector definition is folded into this budget and the closed
    // <= rho comparison in classify
    std::size_t sparsity_budget(std::size_t n) const;
};

// Euclidean distance from x to the set of m-sparse vectors: the norm of x
// after zeroing its m largest-magnitude coordinates (ties to lower index).
double sparse_distance(std::span<const double> x, std::size_t m);

enum class Compressibility { Compressible, Incompressible };

// Requires ||x|| = 1 within 1e-8. Boundary (distance == rho) is Compressible.
Compressibility classify(std::span<const double> x, const CompressParams& params);

struct SphereNet {
    std::size_t ambient_dim = 0;
    double radius = 0.0; // covering radius on the sparse sphere
    double delta = 0.0;
    double rho = 0.0;
    std::uint64_t seed = 0;
    std::vector<std::vector<double>> points; // unit vectors
};

// (e/delta)^(delta n) * (5/rho)^(delta n)
double net_cardinality_bound(std::size_t n, const CompressParams& params);

// Covers every sparsity-budget unit vector within rho (hence compressible
// vectors within 2 rho): per coordinate support, greedy maximal rho-separated
// random insertion. Separation certifies the cardinality bound; saturation
// (many consecutive rejections) certifies covering.
// Throws std::invalid_argument when the cardinality bound exceeds `cap`.
SphereNet build_sparse_net(std::size_t n, const CompressParams& params,
                           std::uint64_t seed, double cap = 1e7);

// Fraction of `probes` random sparse unit vectors x with
// min over net points y of ||M (x - y)|| <= target_radius.
double check_pseudometric_net(const SphereNet& net, const DenseMatrix& m,
                              std::size_t probes, double target_radius,
                              std::uint64_t seed);

// uniform unit vector supported on m random coordinates
std::vector<double> random_sparse_unit_vector(std::size_t n, std::size_t m,
                                              RandomStream& stream);

// random sparse unit vector plus a uniform perturbation of norm <= rho,
// renormalized; an approximate sample of the compressible set
std::vector<double> random_compressible_vector(std::size_t n, const CompressParams& params,
                                               RandomStream& stream);

// CSV: `# n=.. delta=.. rho=.. radius=.. seed=..` header, one unit vector per row.
void write_net_csv(const SphereNet& net, std::ostream& out);

} // namespace rmt
