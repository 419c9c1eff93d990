#pragma once

#include <cstdint>

namespace singhyp {

// Counter-based deterministic random streams. Every consumer derives its own
// sub-stream from (seed, stream index), so results do not depend on how work
// is split across threads. splitmix64 is the usual finalizer-style generator;
// it is platform-independent, unlike the std:: distributions.

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

class Rng {
  public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0) {
        // Decorrelate (seed, stream) pairs before use.
        std::uint64_t s = seed;
        std::uint64_t a = splitmix64(s);
        s = a ^ (stream * 0xda942042e4dd58b5ULL + 0x2545f4914f6cdd1dULL);
        splitmix64(s);
        state_ = s;
    }

    std::uint64_t next_u64() { return splitmix64(state_); }

    /// Uniform double in [0, 1).
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    /// Single fair bit.
    int next_bit() { return static_cast<int>(next_u64() >> 63); }

    /// Uniform integer in [0, n).
    std::uint64_t next_below(std::uint64_t n) {
        // Rejection-free multiply-shift; bias is 2^-64, irrelevant here.
        return static_cast<std::uint64_t>((static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

  private:
    std::uint64_t state_;
};

} // namespace singhyp
