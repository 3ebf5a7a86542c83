#pragma once

#include <optional>
#include <string>
#include <vector>

#include "minalg/algebra.hpp"

namespace minalg {

// Z² = ker(d: Λ² → Λ³), as a subspace of Λ²V coordinates.
Subspace closed_two_forms(const MinimalAlgebra& a);

// The cubic form c(t) with (Σ t_i β_i)³ = c(t)·x_1···x_n for the echelon
// basis β_i of Z²; n must be 6.  Terms are stored with multinomial factors
// folded in, keyed by i ≤ j ≤ k.
struct CubicTerm {
  int i, j, k;
  Scalar c;
};
struct PfaffianCubic {
  int vars = 0;
  std::vector<CubicTerm> terms;
  bool identically_zero() const { return terms.empty(); }
  Scalar eval(const std::vector<Scalar>& t) const;
};
PfaffianCubic pfaffian_cubic(const MinimalAlgebra& a);

struct SymplecticVerdict {
  bool symplectic = false;
  std::optional<ExteriorElement> omega;  // witness: dω = 0, ω^{n/2} ≠ 0
  // True when the non-existence claim is certified (the cubic vanishes
  // identically over an infinite field).  Over Fp a negative answer is
  // reported uncertified.
  bool certified = true;
  std::string certificate;  // "pfaffian-cubic-zero" for certified None
};

// Decides existence of a symplectic form (closed, top-power nonzero) for
// n = 2, 4, 6.  Witness search: coefficient tuples ordered by max-abs shells,
// lexicographic within a shell so reported witnesses are reproducible.
SymplecticVerdict decide_symplectic(const MinimalAlgebra& a);

// Fast necessary condition: some perfect pairing of the six indices must be
// simultaneously reachable inside Z².  Never disagrees with the cubic
// decision over Q, R, C.
bool symplectic_prefilter(const MinimalAlgebra& a);

// Verifies a candidate form independently of the search path.
bool is_symplectic_form(const MinimalAlgebra& a, const ExteriorElement& omega);

}  // namespace minalg
