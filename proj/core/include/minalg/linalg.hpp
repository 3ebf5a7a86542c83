#pragma once

#include <optional>
#include <string>
#include <vector>

#include "minalg/field.hpp"

namespace minalg {

// Dense matrix of exact scalars.  Sizes here are tiny (≤ 20×20), so no
// sparse machinery.
class Matrix {
 public:
  Matrix() : rows_(0), cols_(0), p_(0) {}
  Matrix(int rows, int cols, std::uint64_t p)
      : rows_(rows), cols_(cols), p_(p),
        a_(static_cast<std::size_t>(rows * cols), Scalar::zero(p)) {}

  static Matrix identity(int n, std::uint64_t p);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::uint64_t modulus() const { return p_; }

  Scalar& at(int i, int j) { return a_[static_cast<std::size_t>(i * cols_ + j)]; }
  const Scalar& at(int i, int j) const {
    return a_[static_cast<std::size_t>(i * cols_ + j)];
  }

  std::vector<Scalar> row(int i) const;
  void set_row(int i, const std::vector<Scalar>& r);
  void append_row(const std::vector<Scalar>& r);

  Matrix operator*(const Matrix& o) const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix operator*(const Scalar& c) const;
  Matrix transpose() const;
  bool operator==(const Matrix& o) const;
  bool operator!=(const Matrix& o) const { return !(*this == o); }

  Scalar det() const;
  Matrix inverse() const;  // Internal error if singular
  bool is_invertible() const;

  std::string str() const;

 private:
  int rows_, cols_;
  std::uint64_t p_;
  std::vector<Scalar> a_;
};

struct Rref {
  Matrix r;                 // reduced row-echelon form
  std::vector<int> pivots;  // pivot column per nonzero row
  int rank = 0;
};

// Gauss-Jordan with unit pivots, first-nonzero-column pivoting.
Rref rref(const Matrix& m);

// Row space in reduced echelon form; the representation is unique per
// subspace, so equality of subspaces is equality of matrices.
class Subspace {
 public:
  Subspace() = default;

  static Subspace span(const Matrix& vectors);  // rows spanning the space
  static Subspace zero(int ambient, std::uint64_t p);
  static Subspace full(int ambient, std::uint64_t p);

  int dim() const { return basis_.rows(); }
  int ambient() const { return ambient_; }
  std::uint64_t modulus() const { return p_; }
  const Matrix& basis() const { return basis_; }
  const std::vector<int>& pivots() const { return pivots_; }

  // Residual of v after elimination by the basis rows; zero iff v ∈ space.
  std::vector<Scalar> reduce(std::vector<Scalar> v) const;
  bool contains(const std::vector<Scalar>& v) const;
  bool contains(const Subspace& other) const;

  Subspace sum(const Subspace& other) const;
  Subspace intersect(const Subspace& other) const;
  // Deterministic complement of *this inside the larger space T: the rows of
  // T's echelon basis whose pivots are not pivots of *this.
  Subspace complement_in(const Subspace& t) const;

  bool operator==(const Subspace& o) const;
  bool operator!=(const Subspace& o) const { return !(*this == o); }

 private:
  int ambient_ = 0;
  std::uint64_t p_ = 0;
  Matrix basis_;  // dim × ambient, RREF, no zero rows
  std::vector<int> pivots_;
};

// Linear maps are matrices acting on coordinate columns: the image of domain
// basis vector j is column j.
Subspace kernel(const Matrix& m);
Subspace image(const Matrix& m);
// First-pivot particular solution of m·v = rhs, or nullopt.
std::optional<std::vector<Scalar>> solve(const Matrix& m,
                                         const std::vector<Scalar>& rhs);
// {v : m·v ∈ s}; contains kernel(m).
Subspace preimage(const Matrix& m, const Subspace& s);

std::vector<Scalar> mat_vec(const Matrix& m, const std::vector<Scalar>& v);

}  // namespace minalg
