#include "minalg/algebra.hpp"

#include <algorithm>

namespace minalg {

MinimalAlgebra MinimalAlgebra::make(int n, const FieldMode& mode) {
  if (n < 0 || n > 8) fail(Err::BadDimension, "dimension out of range: " + std::to_string(n));
  MinimalAlgebra a;
  a.n = n;
  a.mode = mode;
  a.diffs.assign(static_cast<std::size_t>(n), ExteriorElement(n, mode.modulus()));
  return a;
}

Scalar LieAlgebra::bracket_coeff(int j, int k, int i) const {
  check(j != k, "bracket of a generator with itself");
  if (j > k) return -bracket_coeff(k, j, i);
  auto it = c.find({j, k, i});
  return it == c.end() ? Scalar::zero(mode.modulus()) : it->second;
}

Matrix differential_matrix(const MinimalAlgebra& a, int deg) {
  const auto& dom = monomials(a.n, deg);
  const auto& cod = monomials(a.n, deg + 1);
  Matrix m(static_cast<int>(cod.size()), static_cast<int>(dom.size()), a.modulus());
  for (std::size_t col = 0; col < dom.size(); ++col) {
    ExteriorElement e(a.n, a.modulus());
    e.set(dom[col], Scalar::one(a.modulus()));
    ExteriorElement de = apply_d(a, e);
    for (const auto& [mono, cc] : de.terms())
      m.at(mono_position(a.n, deg + 1, mono), static_cast<int>(col)) = cc;
  }
  return m;
}

ExteriorElement apply_d(const MinimalAlgebra& a, const ExteriorElement& e) {
  ExteriorElement out(a.n, a.modulus());
  for (const auto& [mono, c] : e.terms()) {
    auto idx = mono_indices(mono);
    // Derivation on a product of degree-1 factors:
    // d(x_{i1}..x_{ik}) = Σ_t (−1)^{t−1} x_{i1}.. d x_{it} ..x_{ik}
    for (std::size_t t = 0; t < idx.size(); ++t) {
      const ExteriorElement& di = a.diffs[static_cast<std::size_t>(idx[t] - 1)];
      if (di.is_zero()) continue;
      ExteriorElement rest(a.n, a.modulus());
      Mono rest_mono = mono & ~(1u << (idx[t] - 1));
      rest.set(rest_mono, Scalar::one(a.modulus()));
      ExteriorElement term = wedge(di, rest);
      // moving d x_{it} to the front costs (t) transpositions past earlier
      // degree-1 factors... d(di) has even degree, so only the sign of
      // extracting x_{it} matters: (−1)^{t}.
      Scalar sign = (t % 2 == 0) ? c : -c;
      out = out + term * sign;
    }
  }
  return out;
}

MinimalAlgebra validate(const MinimalAlgebra& a) {
  check(static_cast<int>(a.diffs.size()) == a.n, "diffs size mismatch");
  for (int i = 0; i < a.n; ++i) {
    const ExteriorElement& d = a.diffs[static_cast<std::size_t>(i)];
    check(d.n() == a.n && d.modulus() == a.modulus(), "diff in wrong algebra");
    if (!d.is_zero() && d.degree() != 2)
      fail(Err::Parse, "differential of x" + std::to_string(i + 1) + " is not degree 2");
    ExteriorElement dd = apply_d(a, d);
    if (!dd.is_zero())
      fail(Err::NotClosed,
           "d(dx" + std::to_string(i + 1) + ") = " + dd.str() + " != 0", i + 1);
  }
  filtration(a);  // throws NotNilpotent if the chain stops short
  return a;
}

bool is_valid(const MinimalAlgebra& a) {
  try {
    validate(a);
    return true;
  } catch (const Error&) {
    return false;
  }
}

MinimalAlgebra from_lie(const LieAlgebra& g) {
  MinimalAlgebra a = MinimalAlgebra::make(g.n, g.mode);
  // dx_i = −Σ_{j<k} a^i_{jk} x_j x_k
  for (const auto& [key, c] : g.c) {
    auto [j, k, i] = key;
    check(1 <= j && j < k && k <= g.n && 1 <= i && i <= g.n, "bad bracket index");
    a.diffs[static_cast<std::size_t>(i - 1)].add(mono_from_indices({j, k}), -c);
  }
  return validate(a);
}

LieAlgebra to_lie(const MinimalAlgebra& a) {
  LieAlgebra g;
  g.n = a.n;
  g.mode = a.mode;
  for (int i = 1; i <= a.n; ++i) {
    for (const auto& [mono, c] : a.diffs[static_cast<std::size_t>(i - 1)].terms()) {
      auto idx = mono_indices(mono);
      check(idx.size() == 2, "differential term of wrong degree");
      g.c[{idx[0], idx[1], i}] = -c;
    }
  }
  return g;
}

std::optional<std::tuple<int, int, int>> jacobi_failure(const LieAlgebra& g) {
  std::uint64_t p = g.mode.modulus();
  // [[Xj,Xk],Xl] + [[Xk,Xl],Xj] + [[Xl,Xj],Xk] = 0, coefficient-wise.
  for (int j = 1; j <= g.n; ++j)
    for (int k = j + 1; k <= g.n; ++k)
      for (int l = k + 1; l <= g.n; ++l)
        for (int m = 1; m <= g.n; ++m) {
          Scalar s = Scalar::zero(p);
          for (int i = 1; i <= g.n; ++i) {
            s += g.bracket_coeff(j, k, i) * g.bracket_coeff(i, l, m);
            s += g.bracket_coeff(k, l, i) * g.bracket_coeff(i, j, m);
            s += g.bracket_coeff(l, j, i) * g.bracket_coeff(i, k, m);
          }
          if (!s.is_zero()) return std::make_tuple(j, k, l);
        }
  return std::nullopt;
}

int FiltrationResult::level_start(int k) const {
  int s = 0;
  for (int i = 0; i + 1 < k; ++i) s += signature[static_cast<std::size_t>(i)];
  return s;
}

int FiltrationResult::level_of(int row) const {
  int acc = 0;
  for (int k = 0; k < levels(); ++k) {
    acc += signature[static_cast<std::size_t>(k)];
    if (row < acc) return k + 1;
  }
  fail(Err::Internal, "row outside adapted basis");
}

namespace {

// Λ² of a subspace of V, as a subspace of Λ²V.
Subspace lambda2_subspace(const MinimalAlgebra& a, const Subspace& w) {
  const auto& basis2 = monomials(a.n, 2);
  Matrix rows(0, static_cast<int>(basis2.size()), a.modulus());
  for (int i = 0; i < w.dim(); ++i) {
    ExteriorElement ei = from_coords(a.n, a.modulus(), 1, w.basis().row(i));
    for (int j = i + 1; j < w.dim(); ++j) {
      ExteriorElement ej = from_coords(a.n, a.modulus(), 1, w.basis().row(j));
      rows.append_row(to_coords(wedge(ei, ej), 2));
    }
  }
  if (rows.rows() == 0) return Subspace::zero(static_cast<int>(basis2.size()), a.modulus());
  return Subspace::span(rows);
}

}  // namespace

FiltrationResult filtration(const MinimalAlgebra& a) {
  FiltrationResult out;
  Matrix d1 = differential_matrix(a, 1);
  Subspace w = kernel(d1);  // W_1
  out.w.push_back(w);
  while (w.dim() < a.n) {
    Subspace next = preimage(d1, lambda2_subspace(a, w));
    check(next.contains(w), "filtration is not increasing");
    if (next.dim() == w.dim())
      fail(Err::NotNilpotent,
           "filtration stabilizes at dimension " + std::to_string(w.dim()) +
               " < " + std::to_string(a.n));
    out.w.push_back(next);
    w = next;
  }
  int prev = 0;
  Matrix adapted(0, a.n, a.modulus());
  Subspace lower = Subspace::zero(a.n, a.modulus());
  for (const Subspace& wk : out.w) {
    out.signature.push_back(wk.dim() - prev);
    prev = wk.dim();
    Subspace comp = lower.complement_in(wk);
    for (int i = 0; i < comp.dim(); ++i) adapted.append_row(comp.basis().row(i));
    lower = wk;
  }
  if (a.n == 0) out.signature.clear();
  out.adapted = adapted;
  check(a.n == 0 || out.adapted.is_invertible(), "adapted basis not invertible");
  return out;
}

MinimalAlgebra change_basis(const MinimalAlgebra& a, const Matrix& t) {
  check(t.rows() == a.n && t.cols() == a.n, "basis change must be n×n");
  check(t.modulus() == a.modulus(), "basis change over wrong field");
  Matrix back = t.inverse();
  MinimalAlgebra out = MinimalAlgebra::make(a.n, a.mode);
  for (int i = 0; i < a.n; ++i) {
    // d y_i = Σ_j t_{ij} dx_j, rewritten in the y-basis.
    ExteriorElement dy(a.n, a.modulus());
    for (int j = 0; j < a.n; ++j) {
      if (t.at(i, j).is_zero()) continue;
      dy = dy + a.diffs[static_cast<std::size_t>(j)] * t.at(i, j);
    }
    out.diffs[static_cast<std::size_t>(i)] = dy.substitute(back);
  }
  return out;
}

BettiVector betti(const MinimalAlgebra& a) {
  BettiVector b(static_cast<std::size_t>(a.n) + 1, 0);
  std::vector<int> rank_d(static_cast<std::size_t>(a.n) + 1, 0);
  for (int k = 0; k <= a.n; ++k)
    rank_d[static_cast<std::size_t>(k)] = rref(differential_matrix(a, k)).rank;
  for (int k = 0; k <= a.n; ++k) {
    long dim_k = static_cast<long>(monomials(a.n, k).size());
    long prev = k == 0 ? 0 : rank_d[static_cast<std::size_t>(k - 1)];
    b[static_cast<std::size_t>(k)] = dim_k - rank_d[static_cast<std::size_t>(k)] - prev;
  }
  // Cross-checks (duality and Euler characteristic are theorems for these
  // algebras; treat violations as internal errors).
  long euler = 0;
  for (int k = 0; k <= a.n; ++k) {
    euler += (k % 2 == 0 ? 1 : -1) * b[static_cast<std::size_t>(k)];
    check(b[static_cast<std::size_t>(k)] == b[static_cast<std::size_t>(a.n - k)],
          "Poincare duality violated");
  }
  check(a.n == 0 || euler == 0, "Euler characteristic nonzero");
  return b;
}

H2Result h2_classes(const MinimalAlgebra& a, int level) {
  FiltrationResult f = filtration(a);
  check(level >= 1 && level <= f.levels(), "h2_classes: bad level");
  const Subspace& wk = f.w[static_cast<std::size_t>(level - 1)];
  Matrix d2 = differential_matrix(a, 2);
  Matrix d1 = differential_matrix(a, 1);
  Subspace closed_all = kernel(d2);
  Subspace l2wk = lambda2_subspace(a, wk);
  H2Result out;
  out.closed = closed_all.intersect(l2wk);
  // Exact forms inside Λ²W_k: d of the next filtration step (or all of V).
  const Subspace& wnext = f.w[static_cast<std::size_t>(
      std::min(level, f.levels() - 1))];
  Matrix dims(0, d2.cols(), a.modulus());
  for (int i = 0; i < wnext.dim(); ++i)
    dims.append_row(mat_vec(d1, wnext.basis().row(i)));
  Subspace ex = Subspace::span(dims).intersect(l2wk);
  out.exact = ex;
  check(out.closed.contains(out.exact), "exact forms not closed");
  Subspace comp = ex.complement_in(out.closed);
  for (int i = 0; i < comp.dim(); ++i)
    out.reps.push_back(from_coords(a.n, a.modulus(), 2, comp.basis().row(i)));
  return out;
}

}  // namespace minalg
