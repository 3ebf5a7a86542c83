#pragma once

#include <map>
#include <tuple>
#include <vector>

#include "minalg/exterior.hpp"
#include "minalg/linalg.hpp"

namespace minalg {

// Free graded-commutative algebra on n degree-1 generators x_1..x_n with a
// degree-2 differential d x_i.  Dual presentation of a Lie algebra via the
// Chevalley-Eilenberg pairing dx(X,Y) = -x([X,Y]).
struct MinimalAlgebra {
  int n = 0;
  FieldMode mode;
  std::vector<ExteriorElement> diffs;  // diffs[i] = d x_{i+1}

  static MinimalAlgebra make(int n, const FieldMode& mode);
  std::uint64_t modulus() const { return mode.modulus(); }
  bool operator==(const MinimalAlgebra& o) const {
    return n == o.n && mode == o.mode && diffs == o.diffs;
  }
};

// Structure constants a^i_{jk} for j<k: [X_j, X_k] = Σ_i a^i_{jk} X_i.
struct LieAlgebra {
  int n = 0;
  FieldMode mode;
  std::map<std::tuple<int, int, int>, Scalar> c;  // key (j,k,i), j<k

  Scalar bracket_coeff(int j, int k, int i) const;
  bool operator==(const LieAlgebra& o) const {
    return n == o.n && mode == o.mode && c == o.c;
  }
};

struct FiltrationResult {
  std::vector<Subspace> w;      // W_1 ⊆ ... ⊆ W_m = V in generator coordinates
  std::vector<int> signature;   // f_k = dim W_k − dim W_{k−1}
  Matrix adapted;               // rows: adapted basis grouped by level
  // First adapted-basis index (0-based) of level k (1-based); levels() = m.
  int levels() const { return static_cast<int>(signature.size()); }
  int level_start(int k) const;
  int level_of(int row) const;
};

using BettiVector = std::vector<long>;

// d extended as a derivation, as a matrix Λ^deg → Λ^{deg+1}.
Matrix differential_matrix(const MinimalAlgebra& a, int deg);
ExteriorElement apply_d(const MinimalAlgebra& a, const ExteriorElement& e);

// Checks d∘d = 0 (NotClosed) and that the canonical filtration exhausts V
// (NotNilpotent).  Returns the algebra unchanged on success.
MinimalAlgebra validate(const MinimalAlgebra& a);
bool is_valid(const MinimalAlgebra& a);

MinimalAlgebra from_lie(const LieAlgebra& g);
LieAlgebra to_lie(const MinimalAlgebra& a);
// Direct Jacobi test; returns the first failing triple (j,k,l) if any.
std::optional<std::tuple<int, int, int>> jacobi_failure(const LieAlgebra& g);

// W_1 = ker(d) ∩ V, W_k = d^{-1}(Λ²W_{k-1}); throws NotNilpotent if the
// chain stabilizes below V.  The adapted basis uses the deterministic
// pivot-complement rule, so it is canonical for a given input.
FiltrationResult filtration(const MinimalAlgebra& a);

// Pushforward along y = t·x (rows of t are the new generators expressed in
// the old ones): returns the algebra presented in the y-basis.
MinimalAlgebra change_basis(const MinimalAlgebra& a, const Matrix& t);

// b_k = dim H^k(ΛV, d), computed by full rank computations in every degree.
// Poincare duality, χ = 0 and b_1 = f_1 are asserted as cross-checks.
BettiVector betti(const MinimalAlgebra& a);

// Closed degree-2 elements of the subalgebra on W_k, plus representatives of
// H² of that subalgebra (complement of the exact forms, pivot rule).
struct H2Result {
  Subspace closed;                     // in Λ²V coordinates
  Subspace exact;                      //   "
  std::vector<ExteriorElement> reps;   // basis of a complement of exact in closed
};
H2Result h2_classes(const MinimalAlgebra& a, int level);

}  // namespace minalg
