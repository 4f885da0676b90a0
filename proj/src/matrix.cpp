#include "chl/matrix.hpp"

#include <cassert>
#include <sstream>

namespace chl {

MatC::MatC(CycField::Ptr f, unsigned rows, unsigned cols)
    : f_(std::move(f)), rows_(rows), cols_(cols), e_(rows * cols, f_->zero()) {}

MatC MatC::identity(const CycField::Ptr& f, unsigned n) {
  MatC m(f, n, n);
  for (unsigned i = 0; i < n; ++i) m.at(i, i) = f->one();
  return m;
}

MatC MatC::from_rows(const CycField::Ptr& f, const std::vector<std::vector<CycElem>>& rows) {
  MatC m(f, static_cast<unsigned>(rows.size()),
         rows.empty() ? 0u : static_cast<unsigned>(rows[0].size()));
  for (unsigned i = 0; i < m.rows_; ++i) {
    if (rows[i].size() != m.cols_) fail(errc::dimension_mismatch, "ragged rows");
    for (unsigned j = 0; j < m.cols_; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

MatC MatC::operator-() const {
  MatC m = *this;
  for (auto& x : m.e_) x = -x;
  return m;
}

MatC operator+(const MatC& a, const MatC& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) fail(errc::dimension_mismatch, "add");
  MatC m = a;
  for (size_t i = 0; i < m.e_.size(); ++i) m.e_[i] += b.e_[i];
  return m;
}

MatC operator-(const MatC& a, const MatC& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) fail(errc::dimension_mismatch, "sub");
  MatC m = a;
  for (size_t i = 0; i < m.e_.size(); ++i) m.e_[i] -= b.e_[i];
  return m;
}

MatC operator*(const MatC& a, const MatC& b) {
  if (a.cols_ != b.rows_) fail(errc::dimension_mismatch, "mul");
  MatC m(a.f_, a.rows_, b.cols_);
  for (unsigned i = 0; i < a.rows_; ++i)
    for (unsigned k = 0; k < a.cols_; ++k) {
      const CycElem& aik = a.at(i, k);
      if (aik.is_zero()) continue;
      for (unsigned j = 0; j < b.cols_; ++j) {
        if (b.at(k, j).is_zero()) continue;
        m.at(i, j) += aik * b.at(k, j);
      }
    }
  return m;
}

MatC operator*(const CycElem& s, const MatC& a) {
  MatC m = a;
  for (auto& x : m.e_) x = s * x;
  return m;
}

bool operator==(const MatC& a, const MatC& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
  for (size_t i = 0; i < a.e_.size(); ++i)
    if (a.e_[i] != b.e_[i]) return false;
  return true;
}

MatC MatC::star() const {
  MatC m(f_, cols_, rows_);
  for (unsigned i = 0; i < rows_; ++i)
    for (unsigned j = 0; j < cols_; ++j) m.at(j, i) = at(i, j).conj();
  return m;
}

MatC MatC::transpose() const {
  MatC m(f_, cols_, rows_);
  for (unsigned i = 0; i < rows_; ++i)
    for (unsigned j = 0; j < cols_; ++j) m.at(j, i) = at(i, j);
  return m;
}

bool MatC::is_identity() const {
  if (!is_square()) return false;
  for (unsigned i = 0; i < rows_; ++i)
    for (unsigned j = 0; j < cols_; ++j) {
      if (i == j ? !at(i, j).is_one() : !at(i, j).is_zero()) return false;
    }
  return true;
}

bool MatC::is_zero() const {
  for (const auto& x : e_)
    if (!x.is_zero()) return false;
  return true;
}

MatC MatC::inverse() const {
  if (!is_square()) fail(errc::dimension_mismatch, "inverse of non-square matrix");
  const unsigned n = rows_;
  MatC a = *this;
  MatC inv = identity(f_, n);
  for (unsigned col = 0; col < n; ++col) {
    unsigned piv = col;
    while (piv < n && a.at(piv, col).is_zero()) ++piv;
    if (piv == n) fail(errc::singular_matrix, "matrix is singular");
    if (piv != col) {
      for (unsigned j = 0; j < n; ++j) {
        std::swap(a.at(piv, j), a.at(col, j));
        std::swap(inv.at(piv, j), inv.at(col, j));
      }
    }
    CycElem d = a.at(col, col).inverse();
    for (unsigned j = 0; j < n; ++j) {
      a.at(col, j) = d * a.at(col, j);
      inv.at(col, j) = d * inv.at(col, j);
    }
    for (unsigned i = 0; i < n; ++i) {
      if (i == col || a.at(i, col).is_zero()) continue;
      CycElem c = a.at(i, col);
      for (unsigned j = 0; j < n; ++j) {
        a.at(i, j) -= c * a.at(col, j);
        inv.at(i, j) -= c * inv.at(col, j);
      }
    }
  }
  return inv;
}

MatC MatC::pow(long e) const {
  if (!is_square()) fail(errc::dimension_mismatch, "pow of non-square matrix");
  if (e < 0) return inverse().pow(-e);
  MatC acc = identity(f_, rows_);
  MatC base = *this;
  unsigned long u = static_cast<unsigned long>(e);
  while (u) {
    if (u & 1) acc = acc * base;
    base = base * base;
    u >>= 1;
  }
  return acc;
}

CycElem MatC::det() const {
  if (!is_square()) fail(errc::dimension_mismatch, "det of non-square matrix");
  const unsigned n = rows_;
  if (n == 0) return f_->one();
  // Bareiss one-step fraction-free elimination; divisions are exact.
  MatC a = *this;
  CycElem prev = f_->one();
  int sign = 1;
  for (unsigned k = 0; k + 1 < n; ++k) {
    if (a.at(k, k).is_zero()) {
      unsigned piv = k + 1;
      while (piv < n && a.at(piv, k).is_zero()) ++piv;
      if (piv == n) return f_->zero();
      for (unsigned j = 0; j < n; ++j) std::swap(a.at(piv, j), a.at(k, j));
      sign = -sign;
    }
    for (unsigned i = k + 1; i < n; ++i)
      for (unsigned j = k + 1; j < n; ++j)
        a.at(i, j) = (a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j)) / prev;
    prev = a.at(k, k);
  }
  CycElem d = a.at(n - 1, n - 1);
  return sign < 0 ? -d : d;
}

unsigned MatC::rank() const {
  MatC a = *this;
  unsigned r = 0;
  for (unsigned col = 0; col < cols_ && r < rows_; ++col) {
    unsigned piv = r;
    while (piv < rows_ && a.at(piv, col).is_zero()) ++piv;
    if (piv == rows_) continue;
    if (piv != r)
      for (unsigned j = 0; j < cols_; ++j) std::swap(a.at(piv, j), a.at(r, j));
    CycElem d = a.at(r, col).inverse();
    for (unsigned j = col; j < cols_; ++j) a.at(r, j) = d * a.at(r, j);
    for (unsigned i = r + 1; i < rows_; ++i) {
      if (a.at(i, col).is_zero()) continue;
      CycElem c = a.at(i, col);
      for (unsigned j = col; j < cols_; ++j) a.at(i, j) -= c * a.at(r, j);
    }
    ++r;
  }
  return r;
}

CycElem MatC::tr() const {
  if (!is_square()) fail(errc::dimension_mismatch, "trace of non-square matrix");
  CycElem t = f_->zero();
  for (unsigned i = 0; i < rows_; ++i) t += at(i, i);
  return t;
}

std::vector<CycElem> MatC::apply(const std::vector<CycElem>& x) const {
  if (x.size() != cols_) fail(errc::dimension_mismatch, "apply");
  std::vector<CycElem> y(rows_, f_->zero());
  for (unsigned i = 0; i < rows_; ++i)
    for (unsigned j = 0; j < cols_; ++j)
      if (!at(i, j).is_zero() && !x[j].is_zero()) y[i] += at(i, j) * x[j];
  return y;
}

std::vector<std::vector<CycElem>> MatC::kernel() const {
  // reduced row echelon form, then read off free columns
  MatC a = *this;
  std::vector<int> pivot_of_col(cols_, -1);
  unsigned r = 0;
  for (unsigned col = 0; col < cols_ && r < rows_; ++col) {
    unsigned piv = r;
    while (piv < rows_ && a.at(piv, col).is_zero()) ++piv;
    if (piv == rows_) continue;
    if (piv != r)
      for (unsigned j = 0; j < cols_; ++j) std::swap(a.at(piv, j), a.at(r, j));
    CycElem d = a.at(r, col).inverse();
    for (unsigned j = 0; j < cols_; ++j) a.at(r, j) = d * a.at(r, j);
    for (unsigned i = 0; i < rows_; ++i) {
      if (i == r || a.at(i, col).is_zero()) continue;
      CycElem c = a.at(i, col);
      for (unsigned j = 0; j < cols_; ++j) a.at(i, j) -= c * a.at(r, j);
    }
    pivot_of_col[col] = static_cast<int>(r);
    ++r;
  }
  std::vector<std::vector<CycElem>> basis;
  for (unsigned col = 0; col < cols_; ++col) {
    if (pivot_of_col[col] >= 0) continue;
    std::vector<CycElem> v(cols_, f_->zero());
    v[col] = f_->one();
    for (unsigned c2 = 0; c2 < cols_; ++c2)
      if (pivot_of_col[c2] >= 0) v[c2] = -a.at(static_cast<unsigned>(pivot_of_col[c2]), col);
    basis.push_back(std::move(v));
  }
  return basis;
}

MatC MatC::submatrix(const std::vector<unsigned>& row_idx,
                     const std::vector<unsigned>& col_idx) const {
  MatC m(f_, static_cast<unsigned>(row_idx.size()), static_cast<unsigned>(col_idx.size()));
  for (unsigned i = 0; i < row_idx.size(); ++i)
    for (unsigned j = 0; j < col_idx.size(); ++j) m.at(i, j) = at(row_idx[i], col_idx[j]);
  return m;
}

MatC MatC::galois(long k) const {
  MatC m = *this;
  for (auto& x : m.e_) x = x.galois(k);
  return m;
}

MatC MatC::lift_to(const CycField::Ptr& target) const {
  MatC m(target, rows_, cols_);
  for (unsigned i = 0; i < rows_; ++i)
    for (unsigned j = 0; j < cols_; ++j) m.at(i, j) = at(i, j).lift_to(target);
  return m;
}

std::string MatC::canonical_key() const {
  std::string s = std::to_string(rows_) + "x" + std::to_string(cols_) + ";";
  for (const auto& x : e_) s += x.canonical_key();
  return s;
}

std::string MatC::pretty() const {
  std::ostringstream os;
  for (unsigned i = 0; i < rows_; ++i) {
    os << (i ? "\n[" : "[");
    for (unsigned j = 0; j < cols_; ++j) os << (j ? ", " : "") << at(i, j).pretty();
    os << "]";
  }
  return os.str();
}

std::vector<CycElem> char_poly(const MatC& a) {
  if (!a.is_square()) fail(errc::dimension_mismatch, "char_poly of non-square matrix");
  const unsigned n = a.rows();
  const auto& f = a.field();
  // Faddeev-LeVerrier: M_1 = A, c_{n-1} = -tr M_1,
  // M_k = A (M_{k-1} + c_{n-k+1} I), c_{n-k} = -tr(M_k)/k.
  std::vector<CycElem> c(n + 1, f->zero());
  c[n] = f->one();
  MatC m = a;
  c[n - 1] = -m.tr();
  for (unsigned k = 2; k <= n; ++k) {
    MatC shifted = m;
    for (unsigned i = 0; i < n; ++i) shifted.at(i, i) += c[n - k + 1];
    m = a * shifted;
    c[n - k] = -(m.tr() / f->from_rational(Rational(static_cast<long>(k))));
  }
  return c;
}

MatC poly_eval(const std::vector<CycElem>& coeffs, const MatC& a) {
  if (!a.is_square()) fail(errc::dimension_mismatch, "poly_eval of non-square matrix");
  const auto& f = a.field();
  MatC acc(f, a.rows(), a.cols());
  for (size_t i = coeffs.size(); i-- > 0;) {
    acc = acc * a;
    for (unsigned d = 0; d < a.rows(); ++d) acc.at(d, d) += coeffs[i];
  }
  return acc;
}

} // namespace chl
