#pragma once

#include <vector>

#include "rmt/linalg.hpp"

namespace rmt {

// The executable certificate s_n(A) <= ||x|| / ||A^{-1} x|| built from one
// distinguished column: x is the component of that column orthogonal to the
// span of the others, the (a_k, b_k) come from the dual system of projected
// inverse rows, and the equality inv_norm = sqrt(1 + sum (a_k/b_k)^2) is a
// cross-check because the two sides are computed through different routes.
struct WitnessCertificate {
    std::size_t n = 0;
    std::size_t distinguished = 0; // column playing the distinguished role
    double norm_x = 0.0;           // dist(X_d, span of other columns)
    std::vector<double> a;         // |<Y_k/||Y_k||, X_d>|, others in column order
    std::vector<double> b;         // 1/||Y_k||
    double inv_norm = 0.0;         // ||A^{-1} x|| by direct solve
    double proof_lower = 0.0;      // sqrt(1 + sum (a_k/b_k)^2)
    double upper_bound = 0.0;      // norm_x / inv_norm
    bool degenerate = false;

    double b2() const { return b.empty() ? 0.0 : b.front(); }
};

// Numerically singular or rank-deficient inputs yield degenerate = true
// (callers exclude and count those trials; no retries).
WitnessCertificate witness_certificate(const DenseMatrix& a, std::size_t distinguished = 0);

struct CertificateVerification {
    double biorthogonality_residual = 0.0; // max |<X_j, Y_k> - delta_jk| / s_1
    double b_identity_residual = 0.0;      // max |d_k ||Y_k|| - 1|, d_k via QR
    double equality_chain_residual = 0.0;  // |inv_norm - proof_lower| / inv_norm
    double s_n = 0.0;
    double s_1 = 0.0;
    double upper_bound = 0.0;
    bool bound_ok = false; // s_n <= upper_bound + 1e-8 s_1

    bool passed(double tol = 1e-6) const {
        return biorthogonality_residual <= tol && b_identity_residual <= tol &&
               equality_chain_residual <= tol && bound_ok;
    }
};

// Recomputes the dual system from A and checks it against the certificate.
// Throws std::invalid_argument when the certificate does not match A.
CertificateVerification verify_certificate(const DenseMatrix& a,
                                           const WitnessCertificate& certificate);

// Just the two tail statistics (norm_x, b2) without any solve or spectrum:
// cheap enough for 10^4-trial tail experiments.
struct TailSample {
    double norm_x = 0.0;
    double b2 = 0.0;
};
TailSample witness_tail_sample(const DenseMatrix& a);

} // namespace rmt
