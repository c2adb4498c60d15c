#include "redist/sampling.hpp"

#include <algorithm>
#include <cmath>

#include "redist/error.hpp"

namespace redist {

void SampleConfig::validate() const {
    if (trials < 1) throw Error(ErrorCode::InvalidArgument, "trials must be at least 1");
    if (min_agents < 1 || min_agents > max_agents)
        throw Error(ErrorCode::InvalidArgument, "agent range must satisfy 1 <= min <= max");
    if (!(income_lo < income_hi) || !std::isfinite(income_lo) || !std::isfinite(income_hi))
        throw Error(ErrorCode::InvalidArgument, "income range must be finite with lo < hi");
    if (!(need_hi > 0.0) || !std::isfinite(need_hi))
        throw Error(ErrorCode::InvalidArgument, "need upper bound must be positive");
    if (!(zero_need_probability >= 0.0 && zero_need_probability < 1.0))
        throw Error(ErrorCode::InvalidArgument, "zero-need probability must be in [0, 1)");
    if (!(perturbation_scale > 0.0) || !std::isfinite(perturbation_scale))
        throw Error(ErrorCode::InvalidArgument, "perturbation scale must be positive");
}

Rng::Rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    engine_.seed(seq);
}

double Rng::uniform(double lo, double hi) {
    // 53 random mantissa bits; std::uniform_real_distribution is not
    // reproducible across standard libraries.
    const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
}

std::size_t Rng::index(std::size_t count) {
    if (count == 0) throw Error(ErrorCode::InvalidArgument, "cannot draw from an empty range");
    return static_cast<std::size_t>(engine_() % count);
}

bool Rng::chance(double probability) { return uniform(0.0, 1.0) < probability; }

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t label) noexcept {
    // splitmix64 finaliser
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (label + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::vector<double> sample_incomes(Rng& rng, const SampleConfig& cfg, std::size_t n) {
    std::vector<double> y(n);
    for (auto& v : y) v = rng.uniform(cfg.income_lo, cfg.income_hi);
    return y;
}

std::vector<double> sample_needs(Rng& rng, const SampleConfig& cfg, std::size_t n) {
    const double min_total = cfg.need_hi / 10.0;
    for (;;) {
        std::vector<double> z(n);
        double total = 0.0;
        for (auto& v : z) {
            v = rng.chance(cfg.zero_need_probability) ? 0.0 : rng.uniform(0.0, cfg.need_hi);
            total += v;
        }
        if (total >= min_total) return z;
    }
}

Problem sample_problem(Rng& rng, const SampleConfig& cfg, std::size_t min_agents) {
    const std::size_t lo = std::max(cfg.min_agents, min_agents);
    if (lo > cfg.max_agents)
        throw Error(ErrorCode::InvalidArgument,
                    "configuration allows at most " + std::to_string(cfg.max_agents) +
                        " agents but " + std::to_string(lo) + " are required");
    const std::size_t n = lo + rng.index(cfg.max_agents - lo + 1);
    auto y = sample_incomes(rng, cfg, n);
    auto z = sample_needs(rng, cfg, n);
    return Problem::from_profiles(std::move(y), std::move(z));
}

std::vector<Problem> sample_problems(const SampleConfig& cfg, std::uint64_t stream,
                                     std::size_t count, std::size_t min_agents) {
    cfg.validate();
    std::vector<Problem> out;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        Rng rng(cfg.seed, stream, k);
        out.push_back(sample_problem(rng, cfg, min_agents));
    }
    return out;
}

}  // namespace redist
