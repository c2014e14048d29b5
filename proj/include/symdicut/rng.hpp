#pragma once

#include <cstdint>
#include <random>

namespace symdicut {

/// Thin wrapper over mt19937_64 that produces bounded values through
/// rejection sampling. std::uniform_int_distribution output differs
/// between standard library implementations, so it is avoided anywhere a
/// seed appears in a report or a frozen test expectation.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform integer in [0, bound), bound >= 1.
    std::uint64_t below(std::uint64_t bound) {
        std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
        for (;;) {
            std::uint64_t x = engine_();
            if (x < limit) return x % bound;
        }
    }

    /// Uniform integer in [lo, hi] inclusive.
    std::int64_t range(std::int64_t lo, std::int64_t hi) {
        return lo + (std::int64_t)below((std::uint64_t)(hi - lo + 1));
    }

    /// Bernoulli with probability num/den.
    bool chance(std::uint64_t num, std::uint64_t den) {
        return below(den) < num;
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace symdicut
