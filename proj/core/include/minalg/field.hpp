#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <gmpxx.h>

#include "minalg/errors.hpp"

namespace minalg {

// Field semantics: Q, R and C all compute with exact rationals and differ
// only in square-class (and homotopy-equivalence) semantics; Fp computes
// with residues modulo an odd prime.
struct FieldMode {
  enum class Kind { Q, R, C, Fp };

  Kind kind = Kind::Q;
  std::uint64_t p = 0;  // modulus, nonzero exactly in Fp mode

  static FieldMode Q() { return {Kind::Q, 0}; }
  static FieldMode R() { return {Kind::R, 0}; }
  static FieldMode C() { return {Kind::C, 0}; }
  static FieldMode Fp(std::uint64_t p);  // p must be an odd prime
  static FieldMode parse(const std::string& s);  // "Q" | "R" | "C" | "F<p>"

  bool is_fp() const { return kind == Kind::Fp; }
  // Modulus for arithmetic: 0 means exact rationals.
  std::uint64_t modulus() const { return p; }
  std::string str() const;

  bool operator==(const FieldMode&) const = default;
};

// Exact field element: arbitrary-precision rational (lowest terms, positive
// denominator) or residue in [0, p-1] modulo an odd prime p.  The modulus
// travels with the value; mixing moduli is an internal error.
class Scalar {
 public:
  Scalar() : v_(0), p_(0) {}
  explicit Scalar(long v, std::uint64_t p = 0) : v_(v), p_(p) { reduce(); }
  Scalar(const mpq_class& v, std::uint64_t p) : v_(v) , p_(p) {
    v_.canonicalize();
    reduce();
  }

  static Scalar zero(std::uint64_t p = 0) { return Scalar(0, p); }
  static Scalar one(std::uint64_t p = 0) { return Scalar(1, p); }
  // Accepts "a", "a/b" and, for Fp, "k mod p".
  static Scalar parse(const std::string& s, std::uint64_t p = 0);

  std::uint64_t modulus() const { return p_; }
  const mpq_class& value() const { return v_; }

  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1; }
  bool is_integer() const { return v_.get_den() == 1; }

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;  // ZeroElement on zero divisor
  Scalar operator-() const;
  Scalar inverse() const;

  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

  bool operator==(const Scalar& o) const { return p_ == o.p_ && v_ == o.v_; }
  bool operator!=(const Scalar& o) const { return !(*this == o); }
  // Value order; used only for deterministic tie-breaking.
  bool operator<(const Scalar& o) const { return v_ < o.v_; }

  // Serializes as "p/q" (lowest terms) or "k mod p".
  std::string str() const;

 private:
  void reduce();  // Fp: fold into [0, p-1], clearing denominators
  void same_field(const Scalar& o) const {
    check(p_ == o.p_, "scalar modulus mismatch");
  }

  mpq_class v_;
  std::uint64_t p_;
};

// Element of k*/(k*)^2, stored via its canonical representative:
//   Q  -> signed squarefree integer,
//   R  -> +1 / -1,
//   C  -> 1,
//   Fp -> 1 or the least quadratic nonresidue mod p.
struct SquareClass {
  FieldMode mode;
  Scalar rep;

  bool is_trivial() const { return rep.is_one(); }
  bool operator==(const SquareClass& o) const {
    return mode == o.mode && rep == o.rep;
  }
  bool operator!=(const SquareClass& o) const { return !(*this == o); }
  std::string str() const { return rep.str(); }
};

struct SquareClassCount {
  bool infinite = false;
  std::uint64_t count = 0;
  std::string str() const;
};

// Trial-division guard: factorization gives up (FactorizationTooHard) once
// the unfactored cofactor exceeds this bound. Structure constants are
// human-scale; overflowing the bound signals misuse rather than a need for
// heavier machinery.
inline constexpr std::uint64_t kDefaultFactorBound = 1000000000000ULL;

// Signed squarefree part of a nonzero integer (product of primes with odd
// exponent, times sign).
mpz_class squarefree_part(const mpz_class& n,
                          std::uint64_t bound = kDefaultFactorBound);

// Least quadratic nonresidue modulo an odd prime.
std::uint64_t least_nonresidue(std::uint64_t p);

// The canonical class of a nonzero scalar in mode's square-class group.
SquareClass square_class(const Scalar& x, const FieldMode& mode,
                         std::uint64_t bound = kDefaultFactorBound);

// |k*/(k*)^2|: C -> 1, R -> 2, Fp -> 2, Q -> infinite.
SquareClassCount square_class_count(const FieldMode& mode);

// Class of a nonzero rational in Q*/((k*)^2 ∩ Q*): squarefree datum for Q,
// sign for R, trivial for C.  Rejects Fp modes.
SquareClass rational_class_in_mode(const Scalar& a, const FieldMode& mode,
                                   std::uint64_t bound = kDefaultFactorBound);

bool same_class(const Scalar& x, const Scalar& y, const FieldMode& mode,
                std::uint64_t bound = kDefaultFactorBound);

// Squareness in the scalar's own arithmetic field (Q, or Fp by Euler's
// criterion).  This is what the classifier's constructive steps use.
bool is_square_arith(const Scalar& x);

// Exact square root of a square: positive root over Q, least residue over
// Fp (Tonelli-Shanks).  Internal error if x is not a square.
Scalar sqrt_arith(const Scalar& x);

}  // namespace minalg
