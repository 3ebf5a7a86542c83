#include "minalg/oracle.hpp"

#include "minalg/classify.hpp"
#include "minalg/symplectic.hpp"

namespace minalg {

std::pair<MinimalAlgebra, Matrix> scramble(const MinimalAlgebra& a,
                                           std::uint64_t seed) {
  Rng rng(seed);
  std::uint64_t p = a.modulus();
  Matrix m(a.n, a.n, p);
  do {
    for (int i = 0; i < a.n; ++i)
      for (int j = 0; j < a.n; ++j) m.at(i, j) = Scalar(rng.range(-3, 3), p);
  } while (!m.is_invertible());
  return {change_basis(a, m), m};
}

Fingerprint fingerprint(const MinimalAlgebra& a) {
  Fingerprint f;
  f.n = a.n;
  FiltrationResult fil = filtration(a);
  f.signature = fil.signature;
  f.betti = betti(a);
  Matrix d1 = differential_matrix(a, 1);
  for (const Subspace& wk : fil.w) {
    Matrix rows(0, d1.rows(), a.modulus());
    for (int i = 0; i < wk.dim(); ++i)
      rows.append_row(mat_vec(d1, wk.basis().row(i)));
    f.dw_dims.push_back(Subspace::span(rows).dim());
  }
  if (!a.mode.is_fp() && (a.n == 2 || a.n == 4 || a.n == 6))
    f.symplectic = decide_symplectic(a).symplectic;
  if (a.n == 6 && f.signature == std::vector<int>{4, 2}) {
    FieldMode arith = a.mode.is_fp() ? a.mode : FieldMode::Q();
    Matrix ad = fil.adapted;
    MinimalAlgebra b = change_basis(a, ad);
    Subspace f1 = Subspace::span([&] {
      Matrix rows(0, a.n, a.modulus());
      for (int i = 1; i <= 4; ++i) {
        std::vector<Scalar> r(static_cast<std::size_t>(a.n), Scalar::zero(a.modulus()));
        r[static_cast<std::size_t>(i - 1)] = Scalar::one(a.modulus());
        rows.append_row(r);
      }
      return rows;
    }());
    PencilInvariant pen = pencil_invariant(b.diffs[4], b.diffs[5], f1, arith);
    f.pencil = pen.verdict_str();
  }
  return f;
}

std::string Fingerprint::str() const {
  std::string s = "n=" + std::to_string(n) + " sig=(";
  for (std::size_t i = 0; i < signature.size(); ++i)
    s += (i ? "," : "") + std::to_string(signature[i]);
  s += ") b=(";
  for (std::size_t i = 0; i < betti.size(); ++i)
    s += (i ? "," : "") + std::to_string(betti[i]);
  s += ") dW=(";
  for (std::size_t i = 0; i < dw_dims.size(); ++i)
    s += (i ? "," : "") + std::to_string(dw_dims[i]);
  s += ")";
  if (symplectic.has_value()) s += *symplectic ? " sympl" : " non-sympl";
  if (pencil.has_value()) s += " pencil=" + *pencil;
  return s;
}

Census enumerate_dim3_f3() {
  Census census;
  FieldMode f3 = FieldMode::Fp(3);
  // a^i_{jk} for (j,k) in {(1,2),(1,3),(2,3)} and i in {1,2,3}: 3^9 tables.
  for (long code = 0; code < 19683; ++code) {
    ++census.total_tables;
    long c = code;
    LieAlgebra g;
    g.n = 3;
    g.mode = f3;
    const int pairs[3][2] = {{1, 2}, {1, 3}, {2, 3}};
    for (int t = 0; t < 3; ++t)
      for (int i = 1; i <= 3; ++i) {
        long digit = c % 3;
        c /= 3;
        if (digit != 0)
          g.c[{pairs[t][0], pairs[t][1], i}] = Scalar(digit, 3);
      }
    if (jacobi_failure(g).has_value()) continue;
    MinimalAlgebra a = MinimalAlgebra::make(3, f3);
    for (const auto& [key, cc] : g.c) {
      auto [j, k, i] = key;
      a.diffs[static_cast<std::size_t>(i - 1)].add(mono_from_indices({j, k}), -cc);
    }
    if (!is_valid(a)) continue;  // non-nilpotent tables drop out here
    ++census.total_valid;
    Classification cls = classify(a);
    ++census.counts[cls.label.str()];
  }
  return census;
}

}  // namespace minalg
