#include "minalg/linalg.hpp"

#include <algorithm>

namespace minalg {

Matrix Matrix::identity(int n, std::uint64_t p) {
  Matrix m(n, n, p);
  for (int i = 0; i < n; ++i) m.at(i, i) = Scalar::one(p);
  return m;
}

std::vector<Scalar> Matrix::row(int i) const {
  std::vector<Scalar> out(static_cast<std::size_t>(cols_), Scalar::zero(p_));
  for (int j = 0; j < cols_; ++j) out[static_cast<std::size_t>(j)] = at(i, j);
  return out;
}

void Matrix::set_row(int i, const std::vector<Scalar>& r) {
  check(static_cast<int>(r.size()) == cols_, "row length mismatch");
  for (int j = 0; j < cols_; ++j) at(i, j) = r[static_cast<std::size_t>(j)];
}

void Matrix::append_row(const std::vector<Scalar>& r) {
  check(static_cast<int>(r.size()) == cols_ || rows_ == 0, "row length mismatch");
  if (rows_ == 0 && cols_ == 0) cols_ = static_cast<int>(r.size());
  a_.insert(a_.end(), r.begin(), r.end());
  ++rows_;
}

Matrix Matrix::operator*(const Matrix& o) const {
  check(cols_ == o.rows_ && p_ == o.p_, "matrix product shape mismatch");
  Matrix out(rows_, o.cols_, p_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      if (at(i, k).is_zero()) continue;
      for (int j = 0; j < o.cols_; ++j)
        out.at(i, j) += at(i, k) * o.at(k, j);
    }
  return out;
}

Matrix Matrix::operator+(const Matrix& o) const {
  check(rows_ == o.rows_ && cols_ == o.cols_, "matrix sum shape mismatch");
  Matrix out(rows_, cols_, p_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out.at(i, j) = at(i, j) + o.at(i, j);
  return out;
}

Matrix Matrix::operator-(const Matrix& o) const {
  check(rows_ == o.rows_ && cols_ == o.cols_, "matrix diff shape mismatch");
  Matrix out(rows_, cols_, p_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out.at(i, j) = at(i, j) - o.at(i, j);
  return out;
}

Matrix Matrix::operator*(const Scalar& c) const {
  Matrix out(rows_, cols_, p_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out.at(i, j) = at(i, j) * c;
  return out;
}

Matrix Matrix::transpose() const {
  Matrix out(cols_, rows_, p_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
  return out;
}

bool Matrix::operator==(const Matrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && p_ == o.p_ && a_ == o.a_;
}

Rref rref(const Matrix& m) {
  Rref out;
  out.r = m;
  Matrix& r = out.r;
  int lead = 0;
  for (int col = 0; col < r.cols() && lead < r.rows(); ++col) {
    int piv = -1;
    for (int i = lead; i < r.rows(); ++i) {
      if (!r.at(i, col).is_zero()) {
        piv = i;
        break;
      }
    }
    if (piv < 0) continue;
    if (piv != lead)
      for (int j = 0; j < r.cols(); ++j) std::swap(r.at(piv, j), r.at(lead, j));
    Scalar inv = r.at(lead, col).inverse();
    for (int j = 0; j < r.cols(); ++j) r.at(lead, j) *= inv;
    for (int i = 0; i < r.rows(); ++i) {
      if (i == lead || r.at(i, col).is_zero()) continue;
      Scalar f = r.at(i, col);
      for (int j = 0; j < r.cols(); ++j) r.at(i, j) -= f * r.at(lead, j);
    }
    out.pivots.push_back(col);
    ++lead;
  }
  out.rank = lead;
  // rank + nullity must equal the domain dimension
  check(out.rank <= std::min(m.rows(), m.cols()), "rank exceeds dimensions");
  return out;
}

Scalar Matrix::det() const {
  check(rows_ == cols_, "determinant of non-square matrix");
  Matrix w = *this;
  Scalar d = Scalar::one(p_);
  for (int col = 0; col < cols_; ++col) {
    int piv = -1;
    for (int i = col; i < rows_; ++i)
      if (!w.at(i, col).is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) return Scalar::zero(p_);
    if (piv != col) {
      for (int j = 0; j < cols_; ++j) std::swap(w.at(piv, j), w.at(col, j));
      d = -d;
    }
    d *= w.at(col, col);
    Scalar inv = w.at(col, col).inverse();
    for (int i = col + 1; i < rows_; ++i) {
      if (w.at(i, col).is_zero()) continue;
      Scalar f = w.at(i, col) * inv;
      for (int j = col; j < cols_; ++j) w.at(i, j) -= f * w.at(col, j);
    }
  }
  return d;
}

bool Matrix::is_invertible() const {
  return rows_ == cols_ && !det().is_zero();
}

Matrix Matrix::inverse() const {
  check(rows_ == cols_, "inverse of non-square matrix");
  Matrix aug(rows_, 2 * cols_, p_);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
    aug.at(i, cols_ + i) = Scalar::one(p_);
  }
  Rref rr = rref(aug);
  check(rr.rank == rows_ &&
            (rows_ == 0 || rr.pivots[static_cast<std::size_t>(rows_ - 1)] < cols_),
        "matrix is singular");
  Matrix out(rows_, cols_, p_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out.at(i, j) = rr.r.at(i, cols_ + j);
  return out;
}

std::string Matrix::str() const {
  std::string out;
  for (int i = 0; i < rows_; ++i) {
    out += i == 0 ? "[" : " ";
    for (int j = 0; j < cols_; ++j) {
      out += at(i, j).str();
      if (j + 1 < cols_) out += " ";
    }
    out += i + 1 < rows_ ? "\n" : "]";
  }
  return out;
}

Subspace Subspace::span(const Matrix& vectors) {
  Subspace s;
  s.ambient_ = vectors.cols();
  s.p_ = vectors.modulus();
  Rref rr = rref(vectors);
  Matrix b(rr.rank, vectors.cols(), vectors.modulus());
  for (int i = 0; i < rr.rank; ++i)
    for (int j = 0; j < vectors.cols(); ++j) b.at(i, j) = rr.r.at(i, j);
  s.basis_ = b;
  s.pivots_ = rr.pivots;
  return s;
}

Subspace Subspace::zero(int ambient, std::uint64_t p) {
  Subspace s;
  s.ambient_ = ambient;
  s.p_ = p;
  s.basis_ = Matrix(0, ambient, p);
  return s;
}

Subspace Subspace::full(int ambient, std::uint64_t p) {
  return span(Matrix::identity(ambient, p));
}

std::vector<Scalar> Subspace::reduce(std::vector<Scalar> v) const {
  check(static_cast<int>(v.size()) == ambient_, "vector/ambient mismatch");
  for (int i = 0; i < dim(); ++i) {
    int c = pivots_[static_cast<std::size_t>(i)];
    Scalar f = v[static_cast<std::size_t>(c)];
    if (f.is_zero()) continue;
    for (int j = 0; j < ambient_; ++j)
      v[static_cast<std::size_t>(j)] -= f * basis_.at(i, j);
  }
  return v;
}

bool Subspace::contains(const std::vector<Scalar>& v) const {
  for (const Scalar& c : reduce(v))
    if (!c.is_zero()) return false;
  return true;
}

bool Subspace::contains(const Subspace& other) const {
  for (int i = 0; i < other.dim(); ++i)
    if (!contains(other.basis_.row(i))) return false;
  return true;
}

Subspace Subspace::sum(const Subspace& other) const {
  check(ambient_ == other.ambient_, "subspace ambient mismatch");
  Matrix stacked(dim() + other.dim(), ambient_, p_);
  for (int i = 0; i < dim(); ++i) stacked.set_row(i, basis_.row(i));
  for (int i = 0; i < other.dim(); ++i)
    stacked.set_row(dim() + i, other.basis_.row(i));
  return span(stacked);
}

Subspace Subspace::intersect(const Subspace& other) const {
  check(ambient_ == other.ambient_, "subspace ambient mismatch");
  // Zassenhaus: row-reduce [A A; B 0]; rows with zero left block carry the
  // intersection in the right block.
  int a = dim(), b = other.dim();
  Matrix big(a + b, 2 * ambient_, p_);
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < ambient_; ++j) {
      big.at(i, j) = basis_.at(i, j);
      big.at(i, ambient_ + j) = basis_.at(i, j);
    }
  for (int i = 0; i < b; ++i)
    for (int j = 0; j < ambient_; ++j) big.at(a + i, j) = other.basis_.at(i, j);
  Rref rr = rref(big);
  Matrix inter(0, ambient_, p_);
  for (int i = 0; i < rr.rank; ++i) {
    if (rr.pivots[static_cast<std::size_t>(i)] < ambient_) continue;
    std::vector<Scalar> v(static_cast<std::size_t>(ambient_), Scalar::zero(p_));
    for (int j = 0; j < ambient_; ++j) v[static_cast<std::size_t>(j)] = rr.r.at(i, ambient_ + j);
    inter.append_row(v);
  }
  return span(inter);
}

Subspace Subspace::complement_in(const Subspace& t) const {
  check(t.contains(*this), "complement_in: not a subspace of the ambient space");
  Matrix rows(0, ambient_, p_);
  for (int i = 0; i < t.dim(); ++i) {
    int piv = t.pivots_[static_cast<std::size_t>(i)];
    if (std::find(pivots_.begin(), pivots_.end(), piv) == pivots_.end())
      rows.append_row(t.basis_.row(i));
  }
  check(rows.rows() == t.dim() - dim(), "complement dimension mismatch");
  return span(rows);
}

bool Subspace::operator==(const Subspace& o) const {
  return ambient_ == o.ambient_ && basis_ == o.basis_;
}

std::vector<Scalar> mat_vec(const Matrix& m, const std::vector<Scalar>& v) {
  check(static_cast<int>(v.size()) == m.cols(), "mat_vec shape mismatch");
  std::vector<Scalar> out(static_cast<std::size_t>(m.rows()),
                          Scalar::zero(m.modulus()));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      out[static_cast<std::size_t>(i)] += m.at(i, j) * v[static_cast<std::size_t>(j)];
  return out;
}

Subspace kernel(const Matrix& m) {
  Rref rr = rref(m);
  // nullity = cols - rank
  std::vector<bool> is_pivot(static_cast<std::size_t>(m.cols()), false);
  for (int c : rr.pivots) is_pivot[static_cast<std::size_t>(c)] = true;
  Matrix basis(0, m.cols(), m.modulus());
  for (int free = 0; free < m.cols(); ++free) {
    if (is_pivot[static_cast<std::size_t>(free)]) continue;
    std::vector<Scalar> v(static_cast<std::size_t>(m.cols()),
                          Scalar::zero(m.modulus()));
    v[static_cast<std::size_t>(free)] = Scalar::one(m.modulus());
    for (int i = 0; i < rr.rank; ++i)
      v[static_cast<std::size_t>(rr.pivots[static_cast<std::size_t>(i)])] =
          -rr.r.at(i, free);
    basis.append_row(v);
  }
  check(basis.rows() + rr.rank == m.cols(), "rank-nullity violated");
  return Subspace::span(basis);
}

Subspace image(const Matrix& m) { return Subspace::span(m.transpose()); }

std::optional<std::vector<Scalar>> solve(const Matrix& m,
                                         const std::vector<Scalar>& rhs) {
  check(static_cast<int>(rhs.size()) == m.rows(), "solve: rhs length mismatch");
  Matrix aug(m.rows(), m.cols() + 1, m.modulus());
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, m.cols()) = rhs[static_cast<std::size_t>(i)];
  }
  Rref rr = rref(aug);
  for (int c : rr.pivots)
    if (c == m.cols()) return std::nullopt;  // inconsistent system
  std::vector<Scalar> v(static_cast<std::size_t>(m.cols()),
                        Scalar::zero(m.modulus()));
  for (std::size_t i = 0; i < rr.pivots.size(); ++i)
    v[static_cast<std::size_t>(rr.pivots[i])] = rr.r.at(static_cast<int>(i), m.cols());
  return v;
}

Subspace preimage(const Matrix& m, const Subspace& s) {
  check(m.rows() == s.ambient(), "preimage: codomain mismatch");
  // v ↦ residual of m·v modulo s is linear; its kernel is the preimage.
  Matrix res(m.rows(), m.cols(), m.modulus());
  for (int j = 0; j < m.cols(); ++j) {
    std::vector<Scalar> col(static_cast<std::size_t>(m.rows()),
                            Scalar::zero(m.modulus()));
    for (int i = 0; i < m.rows(); ++i) col[static_cast<std::size_t>(i)] = m.at(i, j);
    std::vector<Scalar> r = s.reduce(col);
    for (int i = 0; i < m.rows(); ++i) res.at(i, j) = r[static_cast<std::size_t>(i)];
  }
  return kernel(res);
}

}  // namespace minalg
