#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "chl/cyclotomic.hpp"

namespace chl {

/// Dense matrix over a cyclotomic field. Row-major, immutable in spirit:
/// all operations return new values. Dimensions in this project stay <= 8.
class MatC {
public:
  MatC() = default;
  MatC(CycField::Ptr f, unsigned rows, unsigned cols);

  static MatC identity(const CycField::Ptr& f, unsigned n);
  static MatC from_rows(const CycField::Ptr& f, const std::vector<std::vector<CycElem>>& rows);

  unsigned rows() const { return rows_; }
  unsigned cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  const CycField::Ptr& field() const { return f_; }

  const CycElem& at(unsigned i, unsigned j) const { return e_[i * cols_ + j]; }
  CycElem& at(unsigned i, unsigned j) { return e_[i * cols_ + j]; }

  MatC operator-() const;
  friend MatC operator+(const MatC& a, const MatC& b);
  friend MatC operator-(const MatC& a, const MatC& b);
  friend MatC operator*(const MatC& a, const MatC& b);
  friend MatC operator*(const CycElem& s, const MatC& a);
  friend bool operator==(const MatC& a, const MatC& b);
  friend bool operator!=(const MatC& a, const MatC& b) { return !(a == b); }

  /// Conjugate transpose.
  MatC star() const;
  MatC transpose() const;
  bool is_identity() const;
  bool is_zero() const;

  /// Errors: singular_matrix.
  MatC inverse() const;
  MatC pow(long e) const;

  /// Exact determinant by fraction-free (Bareiss) elimination.
  CycElem det() const;
  /// Exact rank by Gaussian elimination with symbolic zero tests.
  unsigned rank() const;
  /// Trace.
  CycElem tr() const;

  /// Matrix-vector product.
  std::vector<CycElem> apply(const std::vector<CycElem>& x) const;

  /// Basis of the right kernel (column null space).
  std::vector<std::vector<CycElem>> kernel() const;

  MatC submatrix(const std::vector<unsigned>& row_idx, const std::vector<unsigned>& col_idx) const;

  /// Entrywise Galois image.
  MatC galois(long k) const;
  MatC lift_to(const CycField::Ptr& target) const;

  std::string canonical_key() const;
  std::string pretty() const;

private:
  CycField::Ptr f_;
  unsigned rows_ = 0, cols_ = 0;
  std::vector<CycElem> e_;
};

/// Characteristic polynomial det(xI - A), monic, by the Faddeev-LeVerrier
/// recurrence (exact; only divisions by integers occur).
/// Coefficients ascending: c[0] + c[1] x + ... + x^n.
std::vector<CycElem> char_poly(const MatC& a);

/// Evaluate a polynomial (ascending coefficients) at a square matrix.
MatC poly_eval(const std::vector<CycElem>& coeffs, const MatC& a);

} // namespace chl
