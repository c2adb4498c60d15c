#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "redist/problem.hpp"

namespace redist {

/// Random problem generation for the sampled checkers.
struct SampleConfig {
    std::uint64_t seed = 42;
    std::size_t trials = 1000;
    std::size_t min_agents = 1;
    std::size_t max_agents = 6;
    double income_lo = -10.0;
    double income_hi = 10.0;
    double need_hi = 10.0;  // needs are drawn from [0, need_hi]
    double zero_need_probability = 0.1;
    /// Initial step of the continuity probe.
    double perturbation_scale = 1e-2;

    /// Throws Error(InvalidArgument) when the ranges are unusable.
    void validate() const;
};

/// Deterministic stream: the same (seed, stream, index) triple always yields
/// the same draws on every platform.
class Rng {
public:
    Rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

    /// Uniform on [lo, hi).
    double uniform(double lo, double hi);
    /// Uniform on {0, ..., count - 1}.
    std::size_t index(std::size_t count);
    bool chance(double probability);

private:
    std::mt19937_64 engine_;
};

/// Derives an independent seed from a parent seed and a label.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t label) noexcept;

/// Draws a valid problem with agent count in [min_agents, max_agents]
/// (intersected with the config). Aggregate need is kept at or above
/// need_hi / 10 so ratios stay in a numerically tame range.
Problem sample_problem(Rng& rng, const SampleConfig& cfg, std::size_t min_agents = 1);

/// Draws `count` problems from the stream (cfg.seed, stream).
std::vector<Problem> sample_problems(const SampleConfig& cfg, std::uint64_t stream,
                                     std::size_t count, std::size_t min_agents = 1);

std::vector<double> sample_incomes(Rng& rng, const SampleConfig& cfg, std::size_t n);
std::vector<double> sample_needs(Rng& rng, const SampleConfig& cfg, std::size_t n);

}  // namespace redist
