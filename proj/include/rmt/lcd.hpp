#pragma once

#include <optional>
#include <span>

#include "rmt/linalg.hpp"

namespace rmt {

struct LcdQuery {
    double alpha = 1.0;  // > 0
    double r = 0.1;      // in (0, 1)
    double t_max = 10.0; // search horizon
    double step = 0.0;   // grid pitch; <= 0 selects 1e-4 * max(1, t_max) / ||x||

    // harness default for "alpha = small multiple of sqrt(n)"
    static double auto_alpha(std::size_t n);
};

struct LcdResult {
    double value = 0.0; // the located infimum, or t_max when censored
    bool censored = false;
    std::optional<double> witness_t;      // first t where the inequality holds
    std::optional<double> achieved_dist;  // dist(witness_t * x, Z^n)
    bool certified = false;               // Lipschitz skip margins respected
};

// sqrt(sum_i (t x_i - round(t x_i))^2), round half to even
double torus_distance(std::span<const double> x, double t);

enum class LcdMode { oracle, fast };

// inf{t > 0 : dist(t x, Z^n) < min(r ||t x||, alpha)} located on a t-grid and
// refined by bisection onto the boundary from above (to 1e-8).
// oracle: visits every grid point. fast: skips grid intervals that the
// ||x||-Lipschitz bound on t -> dist(t x, Z^n) proves empty.
LcdResult lcd_vector(std::span<const double> x, const LcdQuery& query, LcdMode mode);

// Heuristic minimum of lcd_vector over unit vectors cos(theta) h1 + sin(theta) h2
// on an angular grid with golden-section refinement; an upper estimate of the
// subspace infimum, never certified.
LcdResult lcd_subspace2(const OrthonormalBasis& plane, const LcdQuery& query,
                        std::size_t angular_points = 720);

} // namespace rmt
