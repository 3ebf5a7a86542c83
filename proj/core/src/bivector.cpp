#include "minalg/bivector.hpp"

namespace minalg {

namespace {

// Solve for the coefficients of phi in the Λ²-basis {w_a ∧ w_b}, a<b.
std::vector<Scalar> lambda2_coords(const ExteriorElement& phi, const Matrix& rows) {
  int k = rows.rows();
  int n = rows.cols();
  std::uint64_t p = rows.modulus();
  const auto& b2 = monomials(n, 2);
  Matrix m(static_cast<int>(b2.size()), k * (k - 1) / 2, p);
  int col = 0;
  for (int a = 0; a < k; ++a) {
    ExteriorElement wa = from_coords(n, p, 1, rows.row(a));
    for (int b = a + 1; b < k; ++b) {
      ExteriorElement wb = from_coords(n, p, 1, rows.row(b));
      std::vector<Scalar> wc = to_coords(wedge(wa, wb), 2);
      for (std::size_t r = 0; r < wc.size(); ++r)
        m.at(static_cast<int>(r), col) = wc[r];
      ++col;
    }
  }
  auto sol = solve(m, to_coords(phi, 2));
  check(sol.has_value(), "2-form does not lie in Λ² of the given subspace");
  return *sol;
}

bool is_square_in_mode(const Scalar& x, const FieldMode& mode) {
  switch (mode.kind) {
    case FieldMode::Kind::C: return true;
    case FieldMode::Kind::R: return sgn(x.value()) > 0;
    default: return is_square_arith(x);
  }
}

}  // namespace

Matrix gram_in_basis(const ExteriorElement& phi, const Matrix& rows) {
  int k = rows.rows();
  std::uint64_t p = rows.modulus();
  Matrix g(k, k, p);
  if (phi.is_zero()) return g;
  std::vector<Scalar> c = lambda2_coords(phi, rows);
  int idx = 0;
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b) {
      g.at(a, b) = c[static_cast<std::size_t>(idx)];
      g.at(b, a) = -c[static_cast<std::size_t>(idx)];
      ++idx;
    }
  return g;
}

BivectorNormalForm bivector_normal_form(const ExteriorElement& phi,
                                        const Subspace& w) {
  int k = w.dim();
  std::uint64_t p = w.modulus();
  Matrix m = gram_in_basis(phi, w.basis());
  Matrix pmat = Matrix::identity(k, p);

  auto congruence = [&](const Matrix& e) {
    m = e.transpose() * m * e;
    pmat = pmat * e;
  };

  int r2 = 0;  // index of the current block start
  while (r2 + 1 < k) {
    // first nonzero pair at or после the finished blocks
    int pi = -1, pj = -1;
    for (int i = r2; i < k && pi < 0; ++i)
      for (int j = i + 1; j < k; ++j)
        if (!m.at(i, j).is_zero()) {
          pi = i;
          pj = j;
          break;
        }
    if (pi < 0) break;
    if (pi != r2) {
      Matrix e = Matrix::identity(k, p);
      std::swap(e.at(pi, pi), e.at(r2, pi));
      std::swap(e.at(r2, r2), e.at(pi, r2));
      congruence(e);
    }
    if (pj != r2 + 1) {
      Matrix e = Matrix::identity(k, p);
      std::swap(e.at(pj, pj), e.at(r2 + 1, pj));
      std::swap(e.at(r2 + 1, r2 + 1), e.at(pj, r2 + 1));
      congruence(e);
    }
    Scalar piv = m.at(r2, r2 + 1);
    if (!piv.is_one()) {
      Matrix e = Matrix::identity(k, p);
      e.at(r2 + 1, r2 + 1) = piv.inverse();
      congruence(e);
    }
    for (int c = 0; c < k; ++c) {
      if (c == r2 || c == r2 + 1) continue;
      Scalar lam = m.at(r2 + 1, c);       // kill via col_c += lam·col_{r2}
      Scalar mu = -m.at(r2, c);           // kill via col_c += mu·col_{r2+1}
      if (lam.is_zero() && mu.is_zero()) continue;
      Matrix e = Matrix::identity(k, p);
      e.at(r2, c) = lam;
      e.at(r2 + 1, c) = mu;
      congruence(e);
    }
    r2 += 2;
  }

  // m is now the standard block form; P^T G P = J, so the new basis is
  // given by the rows of P^{-1} in w-coordinates.
  BivectorNormalForm out;
  out.rank = r2;
  Matrix s = pmat.inverse();
  out.basis = s * w.basis();
  Matrix supp(0, w.ambient(), p);
  for (int i = 0; i < r2; ++i) supp.append_row(out.basis.row(i));
  out.support = supp.rows() == 0 ? Subspace::zero(w.ambient(), p) : Subspace::span(supp);
  return out;
}

Subspace bivector_support(const ExteriorElement& phi, const Subspace& w) {
  return bivector_normal_form(phi, w).support;
}

std::string PencilInvariant::verdict_str() const {
  switch (verdict) {
    case PencilVerdict::TwoPoints: return "TwoPoints";
    case PencilVerdict::Tangent: return "Tangent";
    case PencilVerdict::Contained: return "Contained";
    case PencilVerdict::Empty:
      return "Empty[" + empty_class->str() + "]";
  }
  return "?";
}

PencilInvariant pencil_invariant(const ExteriorElement& phi5,
                                 const ExteriorElement& phi6, const Subspace& w,
                                 const FieldMode& mode) {
  check(w.dim() == 4, "pencil analysis needs a 4-dimensional space");
  std::uint64_t p = w.modulus();
  // Independence of the pencil generators.
  Matrix pair(0, static_cast<int>(monomials(phi5.n(), 2).size()), p);
  pair.append_row(to_coords(phi5, 2));
  pair.append_row(to_coords(phi6, 2));
  if (Subspace::span(pair).dim() != 2)
    fail(Err::DependentPencil, "pencil generators are linearly dependent");

  // Trivialize Λ⁴W by the ordered basis volume element.
  ExteriorElement vol(phi5.n(), p);
  {
    ExteriorElement acc = from_coords(phi5.n(), p, 1, w.basis().row(0));
    for (int i = 1; i < 4; ++i)
      acc = wedge(acc, from_coords(phi5.n(), p, 1, w.basis().row(i)));
    vol = acc;
  }
  auto ratio = [&](const ExteriorElement& e) {
    if (e.is_zero()) return Scalar::zero(p);
    for (const auto& [mono, c] : vol.terms()) {
      if (!c.is_zero()) return e.coeff(mono) / c;
    }
    fail(Err::Internal, "degenerate volume element");
  };

  PencilInvariant out;
  out.alpha = ratio(wedge(phi5, phi5));
  out.gamma = ratio(wedge(phi6, phi6));
  out.beta = ratio(wedge(phi5, phi6)) * Scalar(2, p);
  out.disc = out.beta * out.beta - Scalar(4, p) * out.alpha * out.gamma;

  if (out.alpha.is_zero() && out.beta.is_zero() && out.gamma.is_zero()) {
    out.verdict = PencilVerdict::Contained;
  } else if (out.disc.is_zero()) {
    out.verdict = PencilVerdict::Tangent;
  } else if (is_square_in_mode(out.disc, mode)) {
    out.verdict = PencilVerdict::TwoPoints;
  } else {
    out.verdict = PencilVerdict::Empty;
    out.empty_class = square_class(out.disc, mode);
  }
  return out;
}

}  // namespace minalg
