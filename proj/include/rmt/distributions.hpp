#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rmt/random.hpp"

namespace rmt {

enum class DistKind { gaussian, rademacher, pareto_symmetric, student_t, uniform };

// A mean-zero, unit-variance entry law. `scale` is the per-kind normalization
// making the analytic variance exactly 1:
//   gaussian/rademacher: 1
//   pareto_symmetric:    the tail threshold x_m = sqrt((beta-2)/beta)
//   student_t:           sqrt((nu-2)/nu)
//   uniform:             half-width sqrt(3)
struct EntryDistribution {
    DistKind kind = DistKind::gaussian;
    double parameter = 0.0; // beta (pareto) or nu (student); unused otherwise
    double scale = 1.0;
    double location = 0.0;

    bool heavy_tailed() const; // fourth moment infinite
};

// Throws std::invalid_argument when the variance does not exist
// (beta <= 2, nu <= 2) or the kind needs no parameter but got one.
EntryDistribution make_distribution(DistKind kind, double parameter = 0.0);

// Parses "kind" or "kind:parameter", e.g. "pareto:2.5", "student:3", "gaussian".
EntryDistribution parse_distribution(std::string_view spec);

// Canonical spec string, parse_distribution(spec_string(d)) == d.
std::string spec_string(const EntryDistribution& dist);

// Stateful sampler over one stream; draw order is part of the contract.
class EntrySampler {
  public:
    EntrySampler(const EntryDistribution& dist, std::uint64_t seed)
        : dist_(dist), stream_(seed) {}

    double draw();

  private:
    EntryDistribution dist_;
    RandomStream stream_;
};

// count i.i.d. draws; identical (dist, count, seed) give identical output.
std::vector<double> sample(const EntryDistribution& dist, std::size_t count,
                           std::uint64_t seed);

struct ConcentrationEstimate {
    double epsilon = 0.0;
    double value = 0.0; // in [0, 1]
    std::size_t sample_count = 0;
};

// Exact empirical Levy concentration: the maximum fraction of samples inside
// any closed window of width 2*epsilon (sliding two-pointer sweep; no bins).
// Requires samples sorted ascending and non-empty.
ConcentrationEstimate concentration_estimate(std::span<const double> sorted_samples,
                                             double epsilon);

// Estimated concentration at each epsilon over a fresh sample of the law.
std::vector<ConcentrationEstimate> levy_profile(const EntryDistribution& dist,
                                                std::span<const double> eps_grid,
                                                std::size_t sample_count,
                                                std::uint64_t seed);

} // namespace rmt
