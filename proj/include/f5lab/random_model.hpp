#pragma once

// Reproducible sampling of G^3(n,p) and the p(n) schedules.
//
// All randomness is counter-based splitmix64: the k-th uniform of a stream
// is a pure function of (seed, k), so identical (n, p, seed) give identical
// edge sets on every platform, and the same seed at p <= p' gives nested
// edge sets (per-triple uniforms compared against p).

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "hypergraph.hpp"

namespace f5lab {

struct Seed {
    std::uint64_t value = 0;
};

namespace rng {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

inline std::uint64_t finalize(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

/// k-th output of the splitmix64 stream seeded at `seed`.
inline std::uint64_t at(std::uint64_t seed, std::uint64_t k) {
    return finalize(seed + (k + 1) * kGolden);
}

/// Uniform in [0,1) with 53 random bits.
inline double to_unit(std::uint64_t bits) {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

/// Documented seed-splitting rule: fold one component into a derived seed.
inline std::uint64_t mix(std::uint64_t seed, std::uint64_t component) {
    return finalize(seed ^ (component * kGolden + 0xD1B54A32D192ED03ull));
}

/// Small sequential PRNG for local search; deterministic across platforms.
class SplitMix {
public:
    explicit SplitMix(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next() {
        state_ += kGolden;
        return finalize(state_);
    }
    double next_unit() { return to_unit(next()); }
    /// Uniform integer in [0, bound) by rejection.
    std::uint64_t next_below(std::uint64_t bound) {
        if (bound == 0) throw std::invalid_argument("bound must be positive");
        const std::uint64_t limit = ~0ull - (~0ull % bound + 1) % bound;
        std::uint64_t v;
        do {
            v = next();
        } while (v > limit);
        return v % bound;
    }

private:
    std::uint64_t state_;
};

}  // namespace rng

/// Per-trial seed for a sweep point: mix(master, n, c_index, trial_index).
inline Seed derive_trial_seed(Seed master, std::uint64_t n, std::uint64_t c_index, std::uint64_t trial_index) {
    std::uint64_t s = rng::mix(master.value, n);
    s = rng::mix(s, c_index);
    s = rng::mix(s, trial_index);
    return Seed{s};
}

/// Each triple of [0,n) present independently with probability p; triples
/// are drawn in lexicographic order so equal seeds couple monotonically in p.
inline Hypergraph3 sample_g3(int n, double p, Seed seed) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("p must be in [0,1]");
    std::vector<Edge3> triples;
    std::uint64_t idx = 0;
    for (Vertex a = 0; a < n; ++a)
        for (Vertex b = a + 1; b < n; ++b)
            for (Vertex c = b + 1; c < n; ++c, ++idx)
                if (rng::to_unit(rng::at(seed.value, idx)) < p) triples.push_back(Edge3{a, b, c});
    return Hypergraph3::build(n, triples);
}

enum class ScheduleKind { SqrtLog, Log, Constant };

inline ScheduleKind schedule_kind_from_string(const std::string& s) {
    if (s == "sqrt_log") return ScheduleKind::SqrtLog;
    if (s == "log") return ScheduleKind::Log;
    if (s == "constant") return ScheduleKind::Constant;
    throw std::invalid_argument("unknown schedule kind: " + s);
}

inline std::string to_string(ScheduleKind k) {
    switch (k) {
        case ScheduleKind::SqrtLog: return "sqrt_log";
        case ScheduleKind::Log: return "log";
        default: return "constant";
    }
}

/// p(n) schedule: c*sqrt(ln n)/n, c*ln(n)/n, or the constant c; natural logs.
struct PSchedule {
    ScheduleKind kind = ScheduleKind::Constant;
    double c = 0.0;
};

inline double schedule_p(const PSchedule& sched, int n) {
    if (n < 2) throw std::invalid_argument("schedule requires n >= 2");
    if (sched.c <= 0.0) throw std::invalid_argument("schedule coefficient must be positive");
    double p = 0.0;
    switch (sched.kind) {
        case ScheduleKind::SqrtLog: p = sched.c * std::sqrt(std::log(static_cast<double>(n))) / n; break;
        case ScheduleKind::Log: p = sched.c * std::log(static_cast<double>(n)) / n; break;
        case ScheduleKind::Constant: p = sched.c; break;
    }
    return std::min(1.0, std::max(0.0, p));
}

}  // namespace f5lab
