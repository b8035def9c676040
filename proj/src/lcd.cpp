#include "rmt/lcd.hpp"

#include <cmath>
#include <stdexcept>

namespace rmt {

double LcdQuery::auto_alpha(std::size_t n) {
    return 0.1 * std::sqrt(static_cast<double>(n));
}

double torus_distance(std::span<const double> x, double t) {
    if (!(t > 0.0))
        throw std::invalid_argument("torus_distance: t must be positive");
    double sq = 0.0;
    for (double xi : x) {
        const double v = t * xi;
        const double d = v - std::nearbyint(v); // ties to even
        sq += d * d;
    }
    return std::sqrt(sq);
}

namespace {

void validate_query(const LcdQuery& q) {
    if (!(q.alpha > 0.0))
        throw std::invalid_argument("LcdQuery: alpha must be positive");
    if (!(q.r > 0.0 && q.r < 1.0))
        throw std::invalid_argument("LcdQuery: r must lie in (0, 1)");
    if (!(q.t_max > 0.0))
        throw std::invalid_argument("LcdQuery: t_max must be positive");
}

constexpr double kRefineTol = 1e-8;

LcdResult refine_crossing(std::span<const double> x, const LcdQuery& q, double xnorm,
                          double lo, double hi, bool certified) {
    // invariant: hi qualifies (strict <), lo does not; converge onto the
    // boundary from above so the reported value itself satisfies the inequality
    while (hi - lo > kRefineTol) {
        const double mid = 0.5 * (lo + hi);
        const double g = torus_distance(x, mid);
        if (g < std::min(q.r * mid * xnorm, q.alpha))
            hi = mid;
        else
            lo = mid;
    }
    LcdResult result;
    result.value = hi;
    result.censored = false;
    result.witness_t = hi;
    result.achieved_dist = torus_distance(x, hi);
    result.certified = certified;
    return result;
}

} // namespace

LcdResult lcd_vector(std::span<const double> x, const LcdQuery& query, LcdMode mode) {
    validate_query(query);
    const double xnorm = norm(x);
    if (xnorm == 0.0)
        throw std::invalid_argument("lcd_vector: zero vector");

    double step = query.step > 0.0 ? query.step
                                   : 1e-4 * std::max(1.0, query.t_max) / xnorm;
    step = std::min(step, query.t_max);
    const auto grid_count =
        static_cast<std::size_t>(std::floor(query.t_max / step + 1e-9));

    std::size_t k = 1;
    while (k <= grid_count) {
        const double t = static_cast<double>(k) * step;
        const double g = torus_distance(x, t);
        const double h = std::min(query.r * t * xnorm, query.alpha);
        if (g < h) {
            const double lo = static_cast<double>(k - 1) * step;
            return refine_crossing(x, query, xnorm, lo, t, mode == LcdMode::fast);
        }
        if (mode == LcdMode::fast) {
            // dist(t x, Z^n) is ||x||-Lipschitz and the threshold grows at most
            // r ||x|| per unit t, so no point within margin/((1+r)||x||) can qualify
            const double margin = g - h;
            const auto skip = static_cast<std::size_t>(
                std::floor(margin / ((1.0 + query.r) * xnorm * step)));
            k += std::max<std::size_t>(1, skip);
        } else {
            ++k;
        }
    }

    LcdResult censored;
    censored.value = query.t_max;
    censored.censored = true;
    censored.certified = mode == LcdMode::fast;
    return censored;
}

LcdResult lcd_subspace2(const OrthonormalBasis& plane, const LcdQuery& query,
                        std::size_t angular_points) {
    if (plane.count != 2)
        throw std::invalid_argument("lcd_subspace2: need exactly 2 basis vectors");
    if (angular_points == 0)
        throw std::invalid_argument("lcd_subspace2: angular_points must be >= 1");

    const std::size_t dim = plane.ambient_dim;
    const std::span<const double> h1 = plane.vec(0);
    const std::span<const double> h2 = plane.vec(1);
    std::vector<double> direction(dim);

    auto evaluate = [&](double theta) {
        const double c = std::cos(theta);
        const double s = std::sin(theta);
        for (std::size_t i = 0; i < dim; ++i)
            direction[i] = c * h1[i] + s * h2[i];
        return lcd_vector(direction, query, LcdMode::fast);
    };

    // antipodal directions have the same LCD, so [0, pi) covers the circle
    const double pi = 3.14159265358979323846;
    LcdResult best = evaluate(0.0);
    double best_theta = 0.0;
    for (std::size_t j = 1; j < angular_points; ++j) {
        const double theta = pi * static_cast<double>(j) / static_cast<double>(angular_points);
        const LcdResult candidate = evaluate(theta);
        if (candidate.value < best.value) {
            best = candidate;
            best_theta = theta;
        }
    }

    if (angular_points > 1) {
        // golden-section around the grid minimum
        const double span = pi / static_cast<double>(angular_points);
        double a = best_theta - span;
        double b = best_theta + span;
        const double gr = 0.6180339887498949;
        for (int it = 0; it < 40; ++it) {
            const double c = b - gr * (b - a);
            const double d = a + gr * (b - a);
            const LcdResult fc = evaluate(c);
            const LcdResult fd = evaluate(d);
            if (fc.value < best.value)
                best = fc;
            if (fd.value < best.value)
                best = fd;
            if (fc.value <= fd.value)
                b = d;
            else
                a = c;
        }
    }

    best.certified = false; // heuristic over the plane's unit circle
    return best;
}

} // namespace rmt
