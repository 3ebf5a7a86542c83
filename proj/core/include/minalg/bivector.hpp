#pragma once

#include <optional>

#include "minalg/exterior.hpp"
#include "minalg/linalg.hpp"

namespace minalg {

// Normal form of a 2-vector φ ∈ Λ²W: a basis z_1..z_k of W with
// φ = z_1∧z_2 + ... + z_{2r−1}∧z_{2r} exactly.  The span of z_1..z_{2r}
// (the support) is independent of all choices.
struct BivectorNormalForm {
  int rank = 0;     // 2r
  Matrix basis;     // k × ambient rows: z_1..z_k in ambient coordinates
  Subspace support; // span of the first `rank` rows
};

// Skew Gram reduction with deterministic first-pair pivoting; char ≠ 2.
// φ must lie in Λ²W.  Already-standard inputs come back unchanged.
BivectorNormalForm bivector_normal_form(const ExteriorElement& phi,
                                        const Subspace& w);

Subspace bivector_support(const ExteriorElement& phi, const Subspace& w);

// The coefficient matrix of φ in the rows-of-w basis: G[a][b] = coefficient
// of w_a ∧ w_b (antisymmetric).
Matrix gram_in_basis(const ExteriorElement& phi, const Matrix& rows);

enum class PencilVerdict { TwoPoints, Tangent, Contained, Empty };

// Invariant of a pencil s·φ5 + t·φ6 of 2-forms on a 4-dimensional space:
// the binary quadratic q(s,t) = (sφ5+tφ6)² / vol = αs² + βst + γt², its
// discriminant, and the verdict for the rank ≤ 2 locus:
//   q ≡ 0          -> Contained
//   disc = 0       -> Tangent
//   disc square    -> TwoPoints
//   disc nonsquare -> Empty (with the square class of disc as parameter)
// Squareness is judged in `mode`'s field.
struct PencilInvariant {
  Scalar alpha, beta, gamma, disc;
  PencilVerdict verdict;
  std::optional<SquareClass> empty_class;
  std::string verdict_str() const;
};

PencilInvariant pencil_invariant(const ExteriorElement& phi5,
                                 const ExteriorElement& phi6, const Subspace& w,
                                 const FieldMode& mode);

}  // namespace minalg
