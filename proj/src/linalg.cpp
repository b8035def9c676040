#include "rmt/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace rmt {

namespace {
constexpr double kPivotRel = 1e-12;
} // namespace

std::vector<double> DenseMatrix::column(std::size_t j) const {
    std::vector<double> c(rows);
    for (std::size_t i = 0; i < rows; ++i)
        c[i] = entries[i * cols + j];
    return c;
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m.at(i, i) = 1.0;
    return m;
}

DenseMatrix DenseMatrix::diagonal(std::span<const double> diag) {
    DenseMatrix m(diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i)
        m.at(i, i) = diag[i];
    return m;
}

bool DenseMatrix::all_finite() const {
    for (double x : entries)
        if (!std::isfinite(x))
            return false;
    return true;
}

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

double norm(std::span<const double> a) {
    return std::sqrt(dot(a, a));
}

void scale_in_place(std::span<double> a, double c) {
    for (double& x : a)
        x *= c;
}

DenseMatrix transpose(const DenseMatrix& m) {
    DenseMatrix t(m.cols, m.rows);
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j)
            t.at(j, i) = m.at(i, j);
    return t;
}

std::vector<double> matvec(const DenseMatrix& m, std::span<const double> x) {
    if (x.size() != m.cols)
        throw std::invalid_argument("matvec: dimension mismatch");
    std::vector<double> y(m.rows, 0.0);
    for (std::size_t i = 0; i < m.rows; ++i)
        y[i] = dot(m.row(i), x);
    return y;
}

std::vector<double> matvec_transpose(const DenseMatrix& m, std::span<const double> x) {
    if (x.size() != m.rows)
        throw std::invalid_argument("matvec_transpose: dimension mismatch");
    std::vector<double> y(m.cols, 0.0);
    for (std::size_t i = 0; i < m.rows; ++i) {
        const double xi = x[i];
        const double* row = m.entries.data() + i * m.cols;
        for (std::size_t j = 0; j < m.cols; ++j)
            y[j] += row[j] * xi;
    }
    return y;
}

DenseMatrix generate_matrix(const EntryDistribution& dist, std::size_t rows,
                            std::size_t cols, std::uint64_t seed) {
    if (rows == 0 || cols == 0)
        throw std::invalid_argument("generate_matrix: empty shape");
    DenseMatrix m(rows, cols);
    EntrySampler sampler(dist, seed);
    for (double& x : m.entries)
        x = sampler.draw();
    return m;
}

// --- one-sided Jacobi --------------------------------------------------------

SingularSpectrum singular_values(const DenseMatrix& m) {
    if (!m.all_finite())
        throw std::invalid_argument("singular_values: non-finite entries");

    // Work on the transpose when wide so the rotated columns are the short side.
    const bool tall = m.rows >= m.cols;
    const std::size_t longdim = tall ? m.rows : m.cols;
    const std::size_t k = tall ? m.cols : m.rows;

    // column-major working copy
    std::vector<double> a(longdim * k);
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) {
            if (tall)
                a[j * longdim + i] = m.at(i, j);
            else
                a[i * longdim + j] = m.at(i, j);
        }

    std::vector<double> sq(k, 0.0);
    constexpr double kOffTol = 1e-14;
    constexpr int kMaxSweeps = 60;

    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        for (std::size_t p = 0; p < k; ++p) {
            const double* cp = a.data() + p * longdim;
            sq[p] = dot({cp, longdim}, {cp, longdim});
        }
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < k; ++p) {
            for (std::size_t q = p + 1; q < k; ++q) {
                double* cp = a.data() + p * longdim;
                double* cq = a.data() + q * longdim;
                const double app = sq[p];
                const double aqq = sq[q];
                if (app == 0.0 || aqq == 0.0)
                    continue;
                double apq = 0.0;
                for (std::size_t i = 0; i < longdim; ++i)
                    apq += cp[i] * cq[i];
                if (std::abs(apq) <= kOffTol * std::sqrt(app * aqq))
                    continue;
                rotated = true;
                const double tau = (aqq - app) / (2.0 * apq);
                const double t =
                    std::copysign(1.0, tau) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                for (std::size_t i = 0; i < longdim; ++i) {
                    const double xp = cp[i];
                    const double xq = cq[i];
                    cp[i] = c * xp - s * xq;
                    cq[i] = s * xp + c * xq;
                }
                sq[p] = app - t * apq;
                sq[q] = aqq + t * apq;
            }
        }
        if (!rotated)
            break;
    }

    SingularSpectrum spectrum;
    spectrum.values.resize(k);
    for (std::size_t p = 0; p < k; ++p) {
        const double* cp = a.data() + p * longdim;
        spectrum.values[p] = norm({cp, longdim});
    }
    std::sort(spectrum.values.begin(), spectrum.values.end(), std::greater<double>());
    return spectrum;
}

double operator_norm_estimate(const DenseMatrix& m, std::size_t iterations) {
    if (iterations == 0)
        throw std::invalid_argument("operator_norm_estimate: iterations must be >= 1");
    // fixed internal key: the estimate takes no seed and must be reproducible
    RandomStream stream(derive_stream(0x5EEDC0DEULL, {m.rows, m.cols}));
    std::vector<double> v(m.cols);
    for (double& x : v)
        x = stream.normal();
    const double v0 = norm(v);
    if (v0 == 0.0)
        return 0.0;
    scale_in_place(v, 1.0 / v0);

    double estimate = 0.0;
    for (std::size_t it = 0; it < iterations; ++it) {
        std::vector<double> mv = matvec(m, v);
        estimate = norm(mv);
        if (estimate == 0.0)
            return 0.0;
        std::vector<double> w = matvec_transpose(m, mv);
        const double wn = norm(w);
        if (wn == 0.0)
            return estimate;
        scale_in_place(w, 1.0 / wn);
        v = std::move(w);
    }
    return norm(matvec(m, v));
}

// --- Gram-Schmidt machinery ---------------------------------------------------

namespace {

// subtract the projection of r onto each basis row, twice
void orthogonalize_against(std::span<double> r, const OrthonormalBasis& basis) {
    for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t i = 0; i < basis.count; ++i) {
            const double* q = basis.data.data() + i * basis.ambient_dim;
            double c = 0.0;
            for (std::size_t j = 0; j < r.size(); ++j)
                c += r[j] * q[j];
            for (std::size_t j = 0; j < r.size(); ++j)
                r[j] -= c * q[j];
        }
    }
}

} // namespace

OrthonormalBasis orthonormal_basis(std::span<const std::vector<double>> columns) {
    if (columns.empty())
        throw std::invalid_argument("orthonormal_basis: no input vectors");
    const std::size_t dim = columns.front().size();
    double max_norm = 0.0;
    for (const auto& c : columns) {
        if (c.size() != dim)
            throw std::invalid_argument("orthonormal_basis: mixed dimensions");
        max_norm = std::max(max_norm, norm(c));
    }

    OrthonormalBasis basis;
    basis.ambient_dim = dim;
    basis.data.reserve(columns.size() * dim);

    const double threshold = kPivotRel * max_norm;
    std::vector<double> r(dim);
    for (const auto& c : columns) {
        std::copy(c.begin(), c.end(), r.begin());
        orthogonalize_against(r, basis);
        const double rn = norm(r);
        if (rn <= threshold)
            continue; // dependent input, rank stays short
        basis.data.insert(basis.data.end(), r.begin(), r.end());
        scale_in_place({basis.data.data() + basis.count * dim, dim}, 1.0 / rn);
        basis.count += 1;
    }
    return basis;
}

bool extend_basis(OrthonormalBasis& basis, std::span<const double> v) {
    if (basis.ambient_dim == 0)
        basis.ambient_dim = v.size();
    if (v.size() != basis.ambient_dim)
        throw std::invalid_argument("extend_basis: dimension mismatch");
    std::vector<double> r(v.begin(), v.end());
    orthogonalize_against(r, basis);
    const double rn = norm(r);
    if (rn <= kPivotRel * std::max(1.0, norm(v)))
        return false;
    basis.data.insert(basis.data.end(), r.begin(), r.end());
    scale_in_place({basis.data.data() + basis.count * basis.ambient_dim, basis.ambient_dim},
                   1.0 / rn);
    basis.count += 1;
    return true;
}

double dist_to_subspace(std::span<const double> y, const OrthonormalBasis& basis) {
    if (y.size() != basis.ambient_dim)
        throw std::invalid_argument("dist_to_subspace: dimension mismatch");
    std::vector<double> r(y.begin(), y.end());
    orthogonalize_against(r, basis);
    return norm(r);
}

std::vector<double> project_onto(std::span<const double> y, const OrthonormalBasis& basis) {
    if (y.size() != basis.ambient_dim)
        throw std::invalid_argument("project_onto: dimension mismatch");
    std::vector<double> r(y.begin(), y.end());
    orthogonalize_against(r, basis);
    std::vector<double> p(y.size());
    for (std::size_t j = 0; j < y.size(); ++j)
        p[j] = y[j] - r[j];
    return p;
}

OrthonormalBasis orthonormal_complement(const OrthonormalBasis& basis, std::size_t want) {
    OrthonormalBasis extended = basis;
    OrthonormalBasis complement;
    complement.ambient_dim = basis.ambient_dim;
    for (std::size_t j = 0; j < basis.ambient_dim && complement.count < want; ++j) {
        std::vector<double> e(basis.ambient_dim, 0.0);
        e[j] = 1.0;
        std::vector<double> r = e;
        orthogonalize_against(r, extended);
        const double rn = norm(r);
        if (rn <= 1e-8)
            continue;
        if (!extend_basis(extended, e))
            continue;
        // the vector just appended to `extended` is the new complement direction
        const double* added = extended.data.data() + (extended.count - 1) * extended.ambient_dim;
        complement.data.insert(complement.data.end(), added, added + extended.ambient_dim);
        complement.count += 1;
    }
    if (complement.count != want)
        throw std::runtime_error("orthonormal_complement: complement dimension not reached");
    return complement;
}

// --- LU ------------------------------------------------------------------------

LuFactorization::LuFactorization(const DenseMatrix& m) {
    if (m.rows != m.cols)
        throw std::invalid_argument("LuFactorization: matrix must be square");
    n_ = m.rows;
    original_ = m;
    lu_ = m.entries;
    perm_.resize(n_);
    for (std::size_t i = 0; i < n_; ++i)
        perm_[i] = i;

    double max_entry = 0.0;
    for (double x : lu_)
        max_entry = std::max(max_entry, std::abs(x));
    const double pivot_floor = kPivotRel * max_entry;

    for (std::size_t col = 0; col < n_; ++col) {
        std::size_t pivot_row = col;
        double pivot_val = std::abs(lu_[perm_[col] * n_ + col]);
        for (std::size_t r = col + 1; r < n_; ++r) {
            const double v = std::abs(lu_[perm_[r] * n_ + col]);
            if (v > pivot_val) {
                pivot_val = v;
                pivot_row = r;
            }
        }
        if (pivot_val <= pivot_floor || pivot_val == 0.0)
            throw SingularMatrixError("LU pivot below threshold");
        std::swap(perm_[col], perm_[pivot_row]);
        const double pivot = lu_[perm_[col] * n_ + col];
        for (std::size_t r = col + 1; r < n_; ++r) {
            double* row = lu_.data() + perm_[r] * n_;
            const double factor = row[col] / pivot;
            row[col] = factor;
            const double* prow = lu_.data() + perm_[col] * n_;
            for (std::size_t c = col + 1; c < n_; ++c)
                row[c] -= factor * prow[c];
        }
    }
}

std::vector<double> LuFactorization::solve_basic(std::span<const double> rhs) const {
    std::vector<double> y(n_);
    for (std::size_t i = 0; i < n_; ++i) {
        double s = rhs[perm_[i]];
        const double* row = lu_.data() + perm_[i] * n_;
        for (std::size_t j = 0; j < i; ++j)
            s -= row[j] * y[j];
        y[i] = s;
    }
    for (std::size_t ii = n_; ii > 0; --ii) {
        const std::size_t i = ii - 1;
        const double* row = lu_.data() + perm_[i] * n_;
        double s = y[i];
        for (std::size_t j = i + 1; j < n_; ++j)
            s -= row[j] * y[j];
        y[i] = s / row[i];
    }
    return y;
}

std::vector<double> LuFactorization::solve_transpose_basic(std::span<const double> rhs) const {
    // M = P^T L U  =>  M^T w = b solved as U^T z = b, L^T u = z, w = P^T u
    std::vector<double> z(n_);
    for (std::size_t i = 0; i < n_; ++i) {
        double s = rhs[i];
        for (std::size_t j = 0; j < i; ++j)
            s -= lu_[perm_[j] * n_ + i] * z[j];
        z[i] = s / lu_[perm_[i] * n_ + i];
    }
    for (std::size_t ii = n_; ii > 0; --ii) {
        const std::size_t i = ii - 1;
        double s = z[i];
        for (std::size_t j = i + 1; j < n_; ++j)
            s -= lu_[perm_[j] * n_ + i] * z[j];
        z[i] = s;
    }
    std::vector<double> w(n_);
    for (std::size_t i = 0; i < n_; ++i)
        w[perm_[i]] = z[i];
    return w;
}

std::vector<double> LuFactorization::solve(std::span<const double> rhs) const {
    if (rhs.size() != n_)
        throw std::invalid_argument("LuFactorization::solve: dimension mismatch");
    std::vector<double> w = solve_basic(rhs);
    // one refinement step
    std::vector<double> mw = matvec(original_, w);
    std::vector<double> resid(n_);
    for (std::size_t i = 0; i < n_; ++i)
        resid[i] = rhs[i] - mw[i];
    std::vector<double> dw = solve_basic(resid);
    for (std::size_t i = 0; i < n_; ++i)
        w[i] += dw[i];
    return w;
}

std::vector<double> LuFactorization::solve_transpose(std::span<const double> rhs) const {
    if (rhs.size() != n_)
        throw std::invalid_argument("LuFactorization::solve_transpose: dimension mismatch");
    std::vector<double> w = solve_transpose_basic(rhs);
    std::vector<double> mtw = matvec_transpose(original_, w);
    std::vector<double> resid(n_);
    for (std::size_t i = 0; i < n_; ++i)
        resid[i] = rhs[i] - mtw[i];
    std::vector<double> dw = solve_transpose_basic(resid);
    for (std::size_t i = 0; i < n_; ++i)
        w[i] += dw[i];
    return w;
}

std::vector<double> solve_transpose(const DenseMatrix& m, std::size_t unit_index) {
    if (unit_index >= m.rows)
        throw std::invalid_argument("solve_transpose: unit index out of range");
    LuFactorization lu(m);
    std::vector<double> e(m.rows, 0.0);
    e[unit_index] = 1.0;
    return lu.solve_transpose(e);
}

// --- leave-one-out distances via Householder QR ---------------------------------

std::vector<double> leave_one_out_distances(const DenseMatrix& columns) {
    const std::size_t n = columns.rows;
    const std::size_t m = columns.cols;
    if (m == 0 || n < m)
        throw std::invalid_argument("leave_one_out_distances: need a tall full-rank block");

    // column-major working copy
    std::vector<double> a(n * m);
    double max_col_norm = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        double sq = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double v = columns.at(i, j);
            a[j * n + i] = v;
            sq += v * v;
        }
        max_col_norm = std::max(max_col_norm, std::sqrt(sq));
    }

    // Householder QR; R accumulates in the top m x m triangle.
    for (std::size_t j = 0; j < m; ++j) {
        double* cj = a.data() + j * n;
        double sigma = 0.0;
        for (std::size_t i = j; i < n; ++i)
            sigma += cj[i] * cj[i];
        const double alpha = -std::copysign(std::sqrt(sigma), cj[j] >= 0.0 ? 1.0 : -1.0);
        const double v0 = cj[j] - alpha;
        if (sigma == 0.0 || v0 == 0.0) {
            cj[j] = alpha;
            continue;
        }
        // Householder vector v = (cj[j]-alpha, cj[j+1], ..., cj[n-1])
        std::vector<double> v(n - j);
        v[0] = v0;
        for (std::size_t i = j + 1; i < n; ++i)
            v[i - j] = cj[i];
        const double vtv = dot(v, v);
        for (std::size_t col = j; col < m; ++col) {
            double* cc = a.data() + col * n;
            double proj = 0.0;
            for (std::size_t i = j; i < n; ++i)
                proj += v[i - j] * cc[i];
            const double f = 2.0 * proj / vtv;
            for (std::size_t i = j; i < n; ++i)
                cc[i] -= f * v[i - j];
        }
        cj[j] = alpha; // clean any rounding residue on the pivot
        for (std::size_t i = j + 1; i < n; ++i)
            cj[i] = 0.0;
    }

    for (std::size_t j = 0; j < m; ++j)
        if (std::abs(a[j * n + j]) <= kPivotRel * max_col_norm)
            throw SingularMatrixError("leave_one_out_distances: rank-deficient columns");

    // invert R by back substitution, row norms of R^{-1} give the distances
    std::vector<double> rinv(m * m, 0.0); // row-major m x m
    for (std::size_t col = 0; col < m; ++col) {
        std::vector<double> x(m, 0.0);
        for (std::size_t ii = col + 1; ii-- > 0;) {
            double s = (ii == col) ? 1.0 : 0.0;
            for (std::size_t j = ii + 1; j <= col; ++j)
                s -= a[j * n + ii] * x[j];
            x[ii] = s / a[ii * n + ii];
        }
        for (std::size_t i = 0; i < m; ++i)
            rinv[i * m + col] = x[i];
    }

    std::vector<double> dist(m);
    for (std::size_t k = 0; k < m; ++k) {
        const double rn = norm({rinv.data() + k * m, m});
        dist[k] = 1.0 / rn;
    }
    return dist;
}

// --- CSV ---------------------------------------------------------------------

void write_matrix_csv(const DenseMatrix& m, std::ostream& out) {
    out << "# " << m.rows << " " << m.cols << "\n";
    char buf[40];
    for (std::size_t i = 0; i < m.rows; ++i) {
        for (std::size_t j = 0; j < m.cols; ++j) {
            std::snprintf(buf, sizeof(buf), "%.17g", m.at(i, j));
            out << buf << (j + 1 == m.cols ? "" : ",");
        }
        out << "\n";
    }
}

DenseMatrix read_matrix_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line.rfind("# ", 0) != 0)
        throw std::invalid_argument("matrix csv: missing '# rows cols' header");
    std::istringstream header(line.substr(2));
    std::size_t rows = 0, cols = 0;
    if (!(header >> rows >> cols) || rows == 0 || cols == 0)
        throw std::invalid_argument("matrix csv: bad header");
    DenseMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (!std::getline(in, line))
            throw std::invalid_argument("matrix csv: truncated");
        std::istringstream row(line);
        std::string cell;
        for (std::size_t j = 0; j < cols; ++j) {
            if (!std::getline(row, cell, ','))
                throw std::invalid_argument("matrix csv: short row");
            m.at(i, j) = std::stod(cell);
        }
    }
    return m;
}

} // namespace rmt
