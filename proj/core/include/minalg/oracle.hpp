#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "minalg/algebra.hpp"
#include "minalg/bivector.hpp"

namespace minalg {

// Deterministic xorshift generator; fixed across platforms so seeded runs
// reproduce byte-identically.
struct Rng {
  std::uint64_t state;

  explicit Rng(std::uint64_t seed) : state(seed ? seed : 0x9e3779b97f4a7c15ULL) {}
  std::uint64_t next() {
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    return state;
  }
  // Uniform-ish integer in [lo, hi].
  long range(long lo, long hi) {
    return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }
};

// Pushforward of a under a seeded random invertible matrix with entries in
// {-3..3} (redrawn until invertible); returns the matrix used.
std::pair<MinimalAlgebra, Matrix> scramble(const MinimalAlgebra& a,
                                           std::uint64_t seed);

// Invariant bundle computed without running the classifier: filtration
// signature, Betti numbers, the dimensions of d(W_k), the symplectic bit
// (modes Q/R/C, even n ≤ 6) and the pencil invariant for signature (4,2).
struct Fingerprint {
  int n = 0;
  std::vector<int> signature;
  BettiVector betti;
  std::vector<int> dw_dims;
  std::optional<bool> symplectic;
  std::optional<std::string> pencil;

  bool operator==(const Fingerprint& o) const = default;
  std::string str() const;
};

Fingerprint fingerprint(const MinimalAlgebra& a);

// Exhaustive census of nilpotent Lie structures on 3 generators over F3:
// iterates all 3^9 antisymmetric structure-constant tables, keeps the valid
// nilpotent ones, classifies each, and tallies labels.
struct Census {
  std::map<std::string, long> counts;  // label -> number of valid tables
  long total_tables = 0;
  long total_valid = 0;
};
Census enumerate_dim3_f3();

}  // namespace minalg
