#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "minalg/field.hpp"

namespace minalg {

// A monomial x_{i1} ∧ ... ∧ x_{id} with i1 < ... < id is encoded as a bitmask
// with bit (i-1) set for each index i.  Generators are 1-based throughout.
using Mono = std::uint32_t;

int mono_degree(Mono m);
std::vector<int> mono_indices(Mono m);                 // increasing, 1-based
Mono mono_from_indices(const std::vector<int>& idx);   // indices need not be sorted; repeats -> 0 degree error
// Sign of the shuffle merging two disjoint sorted monomials; 0 if they intersect.
int wedge_sign(Mono a, Mono b);

// Degree-d monomials on n generators in lexicographic order of index tuples:
// (1,2) < (1,3) < ... < (1,n) < (2,3) < ...
const std::vector<Mono>& monomials(int n, int d);
int mono_position(int n, int d, Mono m);

class Matrix;  // linalg.hpp

// Homogeneous element of the exterior algebra on n degree-1 generators.
// Only nonzero coefficients are stored, keyed by monomial.
class ExteriorElement {
 public:
  ExteriorElement() : n_(0), p_(0) {}
  ExteriorElement(int n, std::uint64_t p) : n_(n), p_(p) {}

  int n() const { return n_; }
  std::uint64_t modulus() const { return p_; }
  bool is_zero() const { return terms_.empty(); }
  // Degree of the stored terms; -1 for the zero element.
  int degree() const;

  const std::map<Mono, Scalar>& terms() const { return terms_; }
  Scalar coeff(Mono m) const;
  Scalar coeff(int i, int j) const;  // degree-2 coefficient of x_i ∧ x_j, i<j
  void set(Mono m, const Scalar& c);
  void add(Mono m, const Scalar& c);

  ExteriorElement operator+(const ExteriorElement& o) const;
  ExteriorElement operator-(const ExteriorElement& o) const;
  ExteriorElement operator-() const;
  ExteriorElement operator*(const Scalar& c) const;

  bool operator==(const ExteriorElement& o) const;
  bool operator!=(const ExteriorElement& o) const { return !(*this == o); }

  // Rewrites in terms of new generators: x_j ↦ Σ_i sub(j-1, i-1) · y_i.
  // sub must be n×n (rows indexed by old generators).
  ExteriorElement substitute(const Matrix& sub) const;

  std::string str() const;  // e.g. "x1x2 + 2x2x5 - x3x4"

 private:
  int n_;
  std::uint64_t p_;
  std::map<Mono, Scalar> terms_;
};

// Generator x_i as a degree-1 element.
ExteriorElement generator(int n, std::uint64_t p, int i);

// Graded-commutative product; throws DegreeOverflow past degree n.
ExteriorElement wedge(const ExteriorElement& u, const ExteriorElement& v);

// Coordinate vector w.r.t. the lexicographic monomial basis of the given degree.
std::vector<Scalar> to_coords(const ExteriorElement& e, int degree);
ExteriorElement from_coords(int n, std::uint64_t p, int degree,
                            const std::vector<Scalar>& coords);

}  // namespace minalg
