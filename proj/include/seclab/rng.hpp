#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace seclab::rng {

// SplitMix64 output for step (index + 1) from `seed`.  Batch seeds derived
// this way are independent of how many batches ran before, so any batch can
// be produced in isolation and in any order.
inline std::uint64_t chunk_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + (index + 1) * 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Standard normals from mt19937_64 via Box-Muller on 53-bit uniforms.
// The exact draw sequence is part of the reproducibility contract:
// u1 in (0, 1], u2 in [0, 1), cosine branch handed out first.
class NormalStream {
  public:
    explicit NormalStream(std::uint64_t seed) : gen_(seed) {}

    double next() {
        if (have_) {
            have_ = false;
            return cached_;
        }
        const double u1 = ((gen_() >> 11) + 1.0) * 0x1.0p-53;
        const double u2 = (gen_() >> 11) * 0x1.0p-53;
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * M_PI * u2;
        cached_ = r * std::sin(a);
        have_ = true;
        return r * std::cos(a);
    }

    std::uint64_t raw() { return gen_(); }

  private:
    std::mt19937_64 gen_;
    double cached_ = 0.0;
    bool have_ = false;
};

}  // namespace seclab::rng
