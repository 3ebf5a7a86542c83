#include "minalg/exterior.hpp"

#include <algorithm>
#include <bit>
#include <map>

#include "minalg/linalg.hpp"

namespace minalg {

int mono_degree(Mono m) { return std::popcount(m); }

std::vector<int> mono_indices(Mono m) {
  std::vector<int> out;
  for (int i = 0; i < 32; ++i)
    if (m & (1u << i)) out.push_back(i + 1);
  return out;
}

Mono mono_from_indices(const std::vector<int>& idx) {
  Mono m = 0;
  for (int i : idx) {
    check(i >= 1 && i <= 32, "generator index out of range");
    Mono bit = 1u << (i - 1);
    check(!(m & bit), "repeated index in monomial");
    m |= bit;
  }
  return m;
}

int wedge_sign(Mono a, Mono b) {
  if (a & b) return 0;
  // Count transpositions needed to interleave the sorted tuples: for each
  // index in b, the number of indices of a above it.
  int swaps = 0;
  for (int i = 0; i < 32; ++i) {
    if (b & (1u << i)) swaps += std::popcount(a >> (i + 1));
  }
  return (swaps % 2 == 0) ? 1 : -1;
}

namespace {

std::vector<Mono> build_monomials(int n, int d) {
  std::vector<Mono> out;
  if (d < 0 || d > n) return out;
  // Enumerate increasing index tuples in lexicographic order.
  std::vector<int> idx(d);
  for (int i = 0; i < d; ++i) idx[i] = i + 1;
  if (d == 0) {
    out.push_back(0);
    return out;
  }
  while (true) {
    out.push_back(mono_from_indices(idx));
    int t = d - 1;
    while (t >= 0 && idx[t] == n - (d - 1 - t)) --t;
    if (t < 0) break;
    ++idx[t];
    for (int s = t + 1; s < d; ++s) idx[s] = idx[s - 1] + 1;
  }
  return out;
}

}  // namespace

const std::vector<Mono>& monomials(int n, int d) {
  static std::map<std::pair<int, int>, std::vector<Mono>> cache;
  auto key = std::make_pair(n, d);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, build_monomials(n, d)).first;
  return it->second;
}

int mono_position(int n, int d, Mono m) {
  const auto& list = monomials(n, d);
  for (std::size_t i = 0; i < list.size(); ++i)
    if (list[i] == m) return static_cast<int>(i);
  fail(Err::Internal, "monomial not found in basis table");
}

int ExteriorElement::degree() const {
  if (terms_.empty()) return -1;
  return mono_degree(terms_.begin()->first);
}

Scalar ExteriorElement::coeff(Mono m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Scalar::zero(p_) : it->second;
}

Scalar ExteriorElement::coeff(int i, int j) const {
  check(i < j, "coeff(i,j) needs i<j");
  return coeff(mono_from_indices({i, j}));
}

void ExteriorElement::set(Mono m, const Scalar& c) {
  check(mono_degree(m) <= n_, "monomial exceeds ambient dimension");
  if (!terms_.empty())
    check(mono_degree(m) == degree(), "mixed degrees in exterior element");
  if (c.is_zero())
    terms_.erase(m);
  else
    terms_[m] = c;
}

void ExteriorElement::add(Mono m, const Scalar& c) { set(m, coeff(m) + c); }

ExteriorElement ExteriorElement::operator+(const ExteriorElement& o) const {
  check(n_ == o.n_ && p_ == o.p_, "exterior element field/dimension mismatch");
  ExteriorElement out = *this;
  for (const auto& [m, c] : o.terms_) out.add(m, c);
  return out;
}

ExteriorElement ExteriorElement::operator-(const ExteriorElement& o) const {
  return *this + (-o);
}

ExteriorElement ExteriorElement::operator-() const {
  ExteriorElement out(n_, p_);
  for (const auto& [m, c] : terms_) out.set(m, -c);
  return out;
}

ExteriorElement ExteriorElement::operator*(const Scalar& c) const {
  ExteriorElement out(n_, p_);
  if (c.is_zero()) return out;
  for (const auto& [m, cc] : terms_) out.set(m, cc * c);
  return out;
}

bool ExteriorElement::operator==(const ExteriorElement& o) const {
  return n_ == o.n_ && p_ == o.p_ && terms_ == o.terms_;
}

ExteriorElement generator(int n, std::uint64_t p, int i) {
  ExteriorElement e(n, p);
  e.set(mono_from_indices({i}), Scalar::one(p));
  return e;
}

ExteriorElement wedge(const ExteriorElement& u, const ExteriorElement& v) {
  check(u.n() == v.n() && u.modulus() == v.modulus(),
        "wedge operands live in different algebras");
  ExteriorElement out(u.n(), u.modulus());
  if (u.is_zero() || v.is_zero()) return out;
  if (u.degree() + v.degree() > u.n())
    fail(Err::DegreeOverflow, "wedge exceeds top degree");
  for (const auto& [ma, ca] : u.terms()) {
    for (const auto& [mb, cb] : v.terms()) {
      int s = wedge_sign(ma, mb);
      if (s == 0) continue;
      Scalar c = ca * cb;
      if (s < 0) c = -c;
      out.add(ma | mb, c);
    }
  }
  return out;
}

ExteriorElement ExteriorElement::substitute(const Matrix& sub) const {
  check(sub.rows() == n_ && sub.cols() == n_, "substitution matrix must be n×n");
  ExteriorElement out(n_, p_);
  for (const auto& [m, c] : terms_) {
    ExteriorElement prod(n_, p_);
    bool first = true;
    for (int i : mono_indices(m)) {
      ExteriorElement line(n_, p_);
      for (int j = 1; j <= n_; ++j) line.add(mono_from_indices({j}), sub.at(i - 1, j - 1));
      prod = first ? line : wedge(prod, line);
      first = false;
    }
    if (first) {  // degree-0 term
      prod.set(0, Scalar::one(p_));
    }
    out = out + prod * c;
  }
  return out;
}

std::string ExteriorElement::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  // Print in lexicographic tuple order for readability.
  std::vector<std::pair<std::vector<int>, Scalar>> items;
  for (const auto& [m, c] : terms_) items.emplace_back(mono_indices(m), c);
  std::sort(items.begin(), items.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  bool first = true;
  for (const auto& [idx, c] : items) {
    std::string mono;
    for (int i : idx) mono += "x" + std::to_string(i);
    if (mono.empty()) mono = "1";
    std::string cs = c.str();
    bool neg = !cs.empty() && cs[0] == '-';
    std::string mag = neg ? cs.substr(1) : cs;
    if (first) {
      out += (neg ? "-" : "");
    } else {
      out += neg ? " - " : " + ";
    }
    if (mag == "1" && !idx.empty())
      out += mono;
    else
      out += mag + (idx.empty() ? "" : mono);
    first = false;
  }
  return out;
}

std::vector<Scalar> to_coords(const ExteriorElement& e, int degree) {
  const auto& basis = monomials(e.n(), degree);
  std::vector<Scalar> out(basis.size(), Scalar::zero(e.modulus()));
  for (const auto& [m, c] : e.terms()) {
    check(mono_degree(m) == degree, "coordinate conversion at wrong degree");
    out[static_cast<std::size_t>(mono_position(e.n(), degree, m))] = c;
  }
  return out;
}

ExteriorElement from_coords(int n, std::uint64_t p, int degree,
                            const std::vector<Scalar>& coords) {
  const auto& basis = monomials(n, degree);
  check(coords.size() == basis.size(), "coordinate vector has wrong length");
  ExteriorElement out(n, p);
  for (std::size_t i = 0; i < basis.size(); ++i) out.set(basis[i], coords[i]);
  return out;
}

}  // namespace minalg
