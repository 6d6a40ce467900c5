// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "udep/errors.hpp"

namespace udep {

using cplx = std::complex<double>;

/// Dense complex matrix, row-major storage.
class CMat {
 public:
  CMat() = default;
  CMat(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, cplx(0.0, 0.0)) {
    if (rows == 0 || cols == 0) throw ShapeError("matrix dimensions must be >= 1");
  }

  static CMat identity(std::size_t n) {
    CMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  cplx* row_ptr(std::size_t i) { return data_.data() + i * cols_; }
  const cplx* row_ptr(std::size_t i) const { return data_.data() + i * cols_; }

  std::vector<cplx>& data() { return data_; }
  const std::vector<cplx>& data() const { return data_; }

  CMat adjoint() const {
    CMat out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
    return out;
  }

  CMat transpose() const {
    CMat out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    return out;
  }

  CMat conjugate() const {
    CMat out(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = std::conj(data_[i]);
    return out;
  }

  cplx trace() const {
    cplx t = 0.0;
    for (std::size_t i = 0; i < rows_ && i < cols_; ++i) t += (*this)(i, i);
    return t;
  }

  double fro_norm() const {
    double s = 0.0;
    for (const cplx& z : data_) s += std::norm(z);
    return std::sqrt(s);
  }

  bool all_finite() const {
    for (const cplx& z : data_)
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
  }

  double max_abs_imag() const {
    double m = 0.0;
    for (const cplx& z : data_) m = std::max(m, std::abs(z.imag()));
    return m;
  }

  CMat& operator+=(const CMat& o) {
    check_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  CMat& operator-=(const CMat& o) {
    check_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  CMat& operator*=(cplx s) {
    for (cplx& z : data_) z *= s;
    return *this;
  }

  friend CMat operator+(CMat a, const CMat& b) { return a += b; }
  friend CMat operator-(CMat a, const CMat& b) { return a -= b; }
  friend CMat operator*(CMat a, cplx s) { return a *= s; }
  friend CMat operator*(cplx s, CMat a) { return a *= s; }

  friend CMat operator*(const CMat& a, const CMat& b) {
    if (a.cols_ != b.rows_) throw ShapeError("matrix product shape mismatch");
    CMat out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      cplx* oi = out.row_ptr(i);
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const cplx aik = a(i, k);
        if (aik == cplx(0.0, 0.0)) continue;
        const cplx* bk = b.row_ptr(k);
        for (std::size_t j = 0; j < b.cols_; ++j) oi[j] += aik * bk[j];
      }
    }
    return out;
  }

 private:
  void check_same_shape(const CMat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw ShapeError("matrix shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

inline double fro_dist(const CMat& a, const CMat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw ShapeError("fro_dist shape mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) s += std::norm(a.data()[i] - b.data()[i]);
  return std::sqrt(s);
}

}  // namespace udep
