// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "coopmux/rng.hpp"

#ifndef COOPMUX_MAX_DIMENSION
#define COOPMUX_MAX_DIMENSION 64
#endif

namespace coopmux {

using Complex = std::complex<double>;

inline constexpr std::size_t kMaxDimension = COOPMUX_MAX_DIMENSION;

/// Small dense row-major complex matrix. Dimensions are in [1, kMaxDimension].
class ComplexMatrix {
 public:
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);

  static ComplexMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const Complex> entries() const { return data_; }

  /// Columns [first, first + count).
  ComplexMatrix column_block(std::size_t first, std::size_t count) const;
  /// Rows [first, first + count).
  ComplexMatrix row_block(std::size_t first, std::size_t count) const;

  ComplexMatrix adjoint() const;

  /// Sum of |a_ij|^2.
  double frobenius_squared() const;

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Complex> data_;
};

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);

/// H * H^H (rows x rows).
ComplexMatrix gram(const ComplexMatrix& h);

/// Column-wise concatenation in list order. All blocks must share a row count.
ComplexMatrix hconcat(std::span<const ComplexMatrix> blocks);

/// Entries i.i.d. CN(0, 1): real and imaginary parts each have variance 1/2.
ComplexMatrix sample_gaussian_matrix(std::size_t rows, std::size_t cols, RngStream& stream);

/// log2 det(I + rho * H * H^H), evaluated through a Cholesky factorisation.
///
/// When H has more rows than columns the smaller Gram H^H H is factored
/// instead; both determinants are equal. Throws NumericError on a non-positive
/// pivot, DomainError when rho < 0.
double logdet_capacity(const ComplexMatrix& h, double rho);

/// log2 det(A) for Hermitian positive-definite A (Cholesky).
double logdet_hpd(const ComplexMatrix& a);

/// Eigenvalues of a Hermitian matrix in ascending order (cyclic Jacobi).
///
/// Values in [-1e-10, 0) are clamped to zero. Throws ContractError when the
/// matrix is not square or max|A - A^H| exceeds 1e-10.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& a);

}  // namespace coopmux
