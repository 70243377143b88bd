#pragma once

#include <bit>
#include <cstdint>
#include <random>
#include <vector>

namespace ccn {

// Deterministic random source.  The engine is std::mt19937_64, whose output
// sequence is pinned by the standard, and every derived draw below is built
// from raw 64-bit outputs only, so identical seeds give identical streams on
// every platform.  Never route this through std::*_distribution (those are
// implementation-defined).
class Rng {
public:
    static constexpr const char* kGeneratorId = "mt19937_64/v1";

    explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    std::uint64_t seed() const { return seed_; }

    std::uint64_t next_u64() { return engine_(); }

    // uniform in [0,1) with 53 random mantissa bits
    double next_double() { return double(next_u64() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return next_double() < p; }

    // uniform in [0, bound); bound > 0.  Masked rejection: unbiased and
    // reproducible.
    std::uint64_t next_below(std::uint64_t bound) {
        if (bound <= 1) return 0;
        std::uint64_t mask = ~std::uint64_t{0} >> std::countl_zero(bound - 1);
        while (true) {
            std::uint64_t x = next_u64() & mask;
            if (x < bound) return x;
        }
    }

    int next_int(int bound) { return int(next_below(std::uint64_t(bound))); }

    // Fisher-Yates
    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = next_below(i);
            std::swap(v[i - 1], v[j]);
        }
    }

    // Stable seed derivation for experiment cells: two rounds of the
    // splitmix64 finalizer over (base, a, b).  Documented so recorded runs
    // can be reproduced externally.
    static std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b) {
        std::uint64_t x = splitmix64(base + 0x9E3779B97F4A7C15ull * (a + 1));
        return splitmix64(x ^ (0xBF58476D1CE4E5B9ull * (b + 1)));
    }

    static std::uint64_t splitmix64(std::uint64_t x) {
        x += 0x9E3779B97F4A7C15ull;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
        return x ^ (x >> 31);
    }

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

} // namespace ccn
