#pragma once

#include <cmath>
#include <cstdint>

#include "barytree/vec3.hpp"

namespace barytree {

// xoshiro256++ seeded through splitmix64. Hand-rolled so that streams are
// bit-identical across platforms and standard library versions; the std::
// distributions make no such promise and the CLI contract is byte-identical
// output for a fixed seed.
class Rng {
  public:
    explicit Rng(uint64_t seed) {
        uint64_t x = seed;
        for (auto& si : s_) si = splitmix64(x);
    }

    uint64_t next_u64() {
        const uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // uniform in [0, 1)
    double uniform() { return (next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // standard normal, Box-Muller
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform(), u2 = uniform();
        while (u1 <= 1e-300) u1 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    // uniform direction on the unit 2-sphere
    Vec3 unit_vector() {
        double z = uniform(-1.0, 1.0);
        double t = uniform(0.0, 6.283185307179586476925286766559);
        double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        return {r * std::cos(t), r * std::sin(t), z};
    }

    // Derives an independent deterministic substream; used to make per-task
    // randomness independent of worker scheduling.
    Rng fork(uint64_t stream) const {
        uint64_t x = s_[0] ^ rotl(stream + 0x9e3779b97f4a7c15ULL, 31);
        return Rng(splitmix64(x) ^ s_[2]);
    }

  private:
    static uint64_t rotl(uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }
    static uint64_t splitmix64(uint64_t& x) {
        x += 0x9e3779b97f4a7c15ULL;
        uint64_t z = x;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    uint64_t s_[4];
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace barytree
