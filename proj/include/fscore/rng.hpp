// Seeded random source for the synthetic data generator.
//
// mt19937_64 is bit-exact by the standard; the distribution transforms are
// written out here instead of using std::*_distribution so a given seed
// yields the same stream on every standard library.

#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>

namespace fscore {

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    // [0, 1) with 53 random bits
    double uniform() { return double(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // inclusive bounds, rejection-sampled for exact uniformity
    int uniform_int(int lo, int hi) {
        const std::uint64_t span = std::uint64_t(hi - lo) + 1;
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                    std::numeric_limits<std::uint64_t>::max() % span;
        std::uint64_t x;
        do {
            x = gen_();
        } while (x >= limit);
        return lo + int(x % span);
    }

    bool bernoulli(double p) { return uniform() < p; }

    // Box-Muller, no spare caching
    double normal(double mu = 0.0, double sigma = 1.0) {
        double u1;
        do {
            u1 = uniform();
        } while (u1 <= 0.0);
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        return mu + sigma * r * std::cos(6.283185307179586476925286766559 * u2);
    }

    double lognormal(double mu, double sigma) { return std::exp(normal(mu, sigma)); }

  private:
    std::mt19937_64 gen_;
};

}  // namespace fscore
