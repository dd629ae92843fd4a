#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sinflow {

/// Raised when an input file cannot be parsed.
class ParseError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Raised when a scenario or model violates one of its invariants.
class ValidationError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Sparse row: list of (column, coefficient), columns strictly increasing.
using SparseVec = std::vector<std::pair<int, double>>;

inline double dot(const SparseVec& row, const std::vector<double>& x) {
    double s = 0.0;
    for (const auto& [j, v] : row) s += v * x[j];
    return s;
}

/// splitmix64: cheap deterministic stream splitter, used to derive
/// per-read and per-field seeds from a master seed.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// xoshiro-style generator with portable, implementation-defined-free
/// uniform helpers so generated scenarios are byte-identical everywhere.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t s = seed;
        s0_ = splitmix64(s);
        s1_ = splitmix64(s);
    }

    std::uint64_t next() {
        std::uint64_t x = s0_;
        const std::uint64_t y = s1_;
        s0_ = y;
        x ^= x << 23;
        s1_ = x ^ y ^ (x >> 17) ^ (y >> 26);
        return s1_ + y;
    }

    /// Uniform in [0, 1).
    double uniform() { return (next() >> 11) * 0x1.0p-53; }

    /// Uniform real in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) {
        // multiply-shift; bias is negligible for the small n used here
        return static_cast<std::uint64_t>(uniform() * static_cast<double>(n));
    }

  private:
    std::uint64_t s0_ = 0, s1_ = 0;
};

/// FNV-1a over a byte string; used for manifest content hashes.
inline std::uint64_t fnv1a(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : bytes) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace sinflow
