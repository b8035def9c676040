#include "rmt/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <charconv>
#include <stdexcept>

namespace rmt {

bool EntryDistribution::heavy_tailed() const {
    switch (kind) {
    case DistKind::pareto_symmetric: return parameter <= 4.0;
    case DistKind::student_t: return parameter <= 4.0;
    default: return false;
    }
}

EntryDistribution make_distribution(DistKind kind, double parameter) {
    EntryDistribution d;
    d.kind = kind;
    switch (kind) {
    case DistKind::gaussian:
    case DistKind::rademacher:
        d.scale = 1.0;
        break;
    case DistKind::uniform:
        d.scale = std::sqrt(3.0);
        break;
    case DistKind::pareto_symmetric:
        if (!(parameter > 2.0))
            throw std::invalid_argument("pareto shape must satisfy beta > 2");
        d.parameter = parameter;
        d.scale = std::sqrt((parameter - 2.0) / parameter); // x_m
        break;
    case DistKind::student_t:
        if (!(parameter > 2.0))
            throw std::invalid_argument("student dof must satisfy nu > 2");
        d.parameter = parameter;
        d.scale = std::sqrt((parameter - 2.0) / parameter);
        break;
    }
    return d;
}

EntryDistribution parse_distribution(std::string_view spec) {
    std::string_view name = spec;
    double param = 0.0;
    bool has_param = false;
    if (auto colon = spec.find(':'); colon != std::string_view::npos) {
        name = spec.substr(0, colon);
        const std::string_view tail = spec.substr(colon + 1);
        const auto res = std::from_chars(tail.data(), tail.data() + tail.size(), param);
        if (res.ec != std::errc{} || res.ptr != tail.data() + tail.size())
            throw std::invalid_argument("bad distribution parameter in '" + std::string(spec) + "'");
        has_param = true;
    }
    DistKind kind;
    if (name == "gaussian" || name == "normal")
        kind = DistKind::gaussian;
    else if (name == "rademacher")
        kind = DistKind::rademacher;
    else if (name == "pareto")
        kind = DistKind::pareto_symmetric;
    else if (name == "student")
        kind = DistKind::student_t;
    else if (name == "uniform")
        kind = DistKind::uniform;
    else
        throw std::invalid_argument("unknown distribution '" + std::string(spec) + "'");
    const bool needs_param =
        kind == DistKind::pareto_symmetric || kind == DistKind::student_t;
    if (needs_param != has_param)
        throw std::invalid_argument(needs_param
                                        ? "distribution '" + std::string(name) + "' needs a parameter"
                                        : "distribution '" + std::string(name) + "' takes no parameter");
    return make_distribution(kind, param);
}

std::string spec_string(const EntryDistribution& dist) {
    auto with_param = [&](const char* name) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%s:%g", name, dist.parameter);
        return std::string(buf);
    };
    switch (dist.kind) {
    case DistKind::gaussian: return "gaussian";
    case DistKind::rademacher: return "rademacher";
    case DistKind::uniform: return "uniform";
    case DistKind::pareto_symmetric: return with_param("pareto");
    case DistKind::student_t: return with_param("student");
    }
    return "?";
}

double EntrySampler::draw() {
    switch (dist_.kind) {
    case DistKind::gaussian:
        return stream_.normal();
    case DistKind::rademacher:
        return stream_.coin() ? 1.0 : -1.0;
    case DistKind::uniform:
        return dist_.scale * (2.0 * stream_.uniform01() - 1.0);
    case DistKind::pareto_symmetric: {
        // |X| = x_m * U^{-1/beta}, uniform sign; E X^2 = x_m^2 beta/(beta-2) = 1
        const double u = stream_.uniform_open01();
        const double magnitude = dist_.scale * std::pow(u, -1.0 / dist_.parameter);
        return stream_.coin() ? magnitude : -magnitude;
    }
    case DistKind::student_t: {
        // Bailey's polar method, then scale sqrt((nu-2)/nu) for unit variance
        const double nu = dist_.parameter;
        double u, v, w;
        do {
            u = 2.0 * stream_.uniform01() - 1.0;
            v = 2.0 * stream_.uniform01() - 1.0;
            w = u * u + v * v;
        } while (w > 1.0 || w == 0.0);
        const double t = u * std::sqrt(nu * (std::pow(w, -2.0 / nu) - 1.0) / w);
        return dist_.scale * t;
    }
    }
    return 0.0;
}

std::vector<double> sample(const EntryDistribution& dist, std::size_t count,
                           std::uint64_t seed) {
    if (count == 0)
        throw std::invalid_argument("sample: count must be >= 1");
    EntrySampler sampler(dist, seed);
    std::vector<double> out(count);
    for (double& x : out)
        x = sampler.draw();
    return out;
}

ConcentrationEstimate concentration_estimate(std::span<const double> sorted_samples,
                                             double epsilon) {
    if (sorted_samples.empty())
        throw std::invalid_argument("concentration_estimate: empty sample");
    if (epsilon < 0.0)
        throw std::invalid_argument("concentration_estimate: negative epsilon");
    if (!std::is_sorted(sorted_samples.begin(), sorted_samples.end()))
        throw std::invalid_argument("concentration_estimate: samples must be sorted");

    // The optimal window [lambda-eps, lambda+eps] can be slid until its left
    // edge sits on a sample, so scanning windows [s_i, s_i + 2eps] is exact.
    const std::size_t n = sorted_samples.size();
    const double width = 2.0 * epsilon;
    std::size_t best = 1;
    std::size_t right = 0;
    for (std::size_t left = 0; left < n; ++left) {
        if (right < left)
            right = left;
        while (right + 1 < n && sorted_samples[right + 1] - sorted_samples[left] <= width)
            ++right;
        best = std::max(best, right - left + 1);
    }
    return ConcentrationEstimate{epsilon, static_cast<double>(best) / static_cast<double>(n), n};
}

std::vector<ConcentrationEstimate> levy_profile(const EntryDistribution& dist,
                                                std::span<const double> eps_grid,
                                                std::size_t sample_count,
                                                std::uint64_t seed) {
    std::vector<double> draws = sample(dist, sample_count, seed);
    std::sort(draws.begin(), draws.end());
    std::vector<ConcentrationEstimate> profile;
    profile.reserve(eps_grid.size());
    for (double eps : eps_grid)
        profile.push_back(concentration_estimate(draws, eps));
    return profile;
}

} // namespace rmt
