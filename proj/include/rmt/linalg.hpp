#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <vector>

#include "rmt/distributions.hpp"

namespace rmt {

struct DenseMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> entries; // row-major

    DenseMatrix() = default;
    DenseMatrix(std::size_t r, std::size_t c)
        : rows(r), cols(c), entries(r * c, 0.0) {}

    double& at(std::size_t i, std::size_t j) { return entries[i * cols + j]; }
    double at(std::size_t i, std::size_t j) const { return entries[i * cols + j]; }

    std::span<const double> row(std::size_t i) const {
        return {entries.data() + i * cols, cols};
    }
    std::vector<double> column(std::size_t j) const;

    static DenseMatrix identity(std::size_t n);
    static DenseMatrix diagonal(std::span<const double> diag);

    bool all_finite() const;
};

class SingularMatrixError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// --- small vector kernels -------------------------------------------------

double dot(std::span<const double> a, std::span<const double> b);
double norm(std::span<const double> a);
void scale_in_place(std::span<double> a, double c);

DenseMatrix transpose(const DenseMatrix& m);
std::vector<double> matvec(const DenseMatrix& m, std::span<const double> x);
std::vector<double> matvec_transpose(const DenseMatrix& m, std::span<const double> x);

// --- generation -----------------------------------------------------------

// i.i.d. entries drawn row by row; deterministic given (dist, rows, cols, seed).
DenseMatrix generate_matrix(const EntryDistribution& dist, std::size_t rows,
                            std::size_t cols, std::uint64_t seed);

// --- singular values ------------------------------------------------------

struct SingularSpectrum {
    std::vector<double> values; // non-increasing, length min(rows, cols)

    double largest() const { return values.front(); }
    double smallest() const { return values.back(); }
};

// One-sided Jacobi on the short side; values accurate to ~1e-12 relative.
SingularSpectrum singular_values(const DenseMatrix& m);

// Power iteration on M^T M; lower estimate of s_1, deterministic start vector.
double operator_norm_estimate(const DenseMatrix& m, std::size_t iterations);

// --- orthonormal bases and projections -------------------------------------

struct OrthonormalBasis {
    std::size_t ambient_dim = 0;
    std::size_t count = 0;
    std::vector<double> data; // count x ambient_dim, one basis vector per row

    std::span<const double> vec(std::size_t i) const {
        return {data.data() + i * ambient_dim, ambient_dim};
    }
    std::size_t rank() const { return count; }
};

// Two-pass Gram-Schmidt. Dependent inputs are dropped, so rank() may be
// smaller than the input count; the pivot threshold is 1e-12 relative to the
// largest input norm.
OrthonormalBasis orthonormal_basis(std::span<const std::vector<double>> columns);

// Appends v (orthonormalized) unless it is dependent; returns whether appended.
bool extend_basis(OrthonormalBasis& basis, std::span<const double> v);

// ||y - P_H y||; residual via two orthogonalization passes.
double dist_to_subspace(std::span<const double> y, const OrthonormalBasis& basis);

// P_H y
std::vector<double> project_onto(std::span<const double> y, const OrthonormalBasis& basis);

// Extends the span of `basis` to dimension rank+want using canonical vectors;
// returns only the new directions.
OrthonormalBasis orthonormal_complement(const OrthonormalBasis& basis, std::size_t want);

// --- linear solves ----------------------------------------------------------

// Partial-pivot LU with one step of iterative refinement per solve.
// Throws SingularMatrixError when a pivot falls below 1e-12 relative to the
// largest entry magnitude.
class LuFactorization {
  public:
    explicit LuFactorization(const DenseMatrix& m);

    std::size_t dim() const { return n_; }
    std::vector<double> solve(std::span<const double> rhs) const;           // M w = rhs
    std::vector<double> solve_transpose(std::span<const double> rhs) const; // M^T w = rhs

  private:
    std::size_t n_ = 0;
    std::vector<double> lu_;
    std::vector<std::size_t> perm_;
    DenseMatrix original_;

    std::vector<double> solve_basic(std::span<const double> rhs) const;
    std::vector<double> solve_transpose_basic(std::span<const double> rhs) const;
};

// w with M^T w = e_{unit_index} (0-based).
std::vector<double> solve_transpose(const DenseMatrix& m, std::size_t unit_index);

// Distance of each column to the span of the remaining columns, all at once,
// via Householder QR and the rows of R^{-1}. Independent of any LU route.
std::vector<double> leave_one_out_distances(const DenseMatrix& columns);

// --- serialization -----------------------------------------------------------

// CSV with a `# rows cols` header line, one matrix row per line.
void write_matrix_csv(const DenseMatrix& m, std::ostream& out);
DenseMatrix read_matrix_csv(std::istream& in);

} // namespace rmt
