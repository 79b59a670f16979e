// SPDX-License-Identifier: Apache-2.0
#include "coopmux/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "coopmux/errors.hpp"

namespace coopmux {
namespace {

void check_dims(std::size_t rows, std::size_t cols) {
  if (rows == 0 || cols == 0 || rows > kMaxDimension || cols > kMaxDimension) {
    throw SizeError("matrix dimensions " + std::to_string(rows) + "x" + std::to_string(cols) +
                    " outside [1, " + std::to_string(kMaxDimension) + "]");
  }
}

constexpr double kHermitianTolerance = 1e-10;
constexpr double kEigenClamp = 1e-10;

// In-place lower Cholesky of an HPD matrix; returns sum of log2 of squared pivots.
double cholesky_logdet(ComplexMatrix& a) {
  const std::size_t n = a.rows();
  double acc = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double diag = a(j, j).real();
    for (std::size_t k = 0; k < j; ++k) diag -= std::norm(a(j, k));
    if (!(diag > 0.0) || !std::isfinite(diag)) {
      throw NumericError("Cholesky breakdown at pivot " + std::to_string(j));
    }
    const double ljj = std::sqrt(diag);
    a(j, j) = ljj;
    acc += std::log2(diag);
    for (std::size_t i = j + 1; i < n; ++i) {
      Complex s = a(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= a(i, k) * std::conj(a(j, k));
      a(i, j) = s / ljj;
    }
  }
  return acc;
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {
  check_dims(rows, cols);
  data_.assign(rows * cols, Complex{});
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  check_dims(rows, cols);
  if (data_.size() != rows * cols) {
    throw SizeError("expected " + std::to_string(rows * cols) + " entries, got " +
                    std::to_string(data_.size()));
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::column_block(std::size_t first, std::size_t count) const {
  if (first + count > cols_) throw SizeError("column block out of range");
  ComplexMatrix out(rows_, count);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < count; ++c) out(r, c) = (*this)(r, first + c);
  return out;
}

ComplexMatrix ComplexMatrix::row_block(std::size_t first, std::size_t count) const {
  if (first + count > rows_) throw SizeError("row block out of range");
  ComplexMatrix out(count, cols_);
  std::copy_n(data_.begin() + static_cast<std::ptrdiff_t>(first * cols_), count * cols_,
              out.data_.begin());
  return out;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
  return out;
}

double ComplexMatrix::frobenius_squared() const {
  double s = 0.0;
  for (const auto& z : data_) s += std::norm(z);
  return s;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) throw SizeError("inner dimensions do not agree");
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw SizeError("shape mismatch in sum");
  ComplexMatrix out = a;
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) += b(r, c);
  return out;
}

ComplexMatrix gram(const ComplexMatrix& h) {
  const std::size_t n = h.rows();
  ComplexMatrix g(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      Complex s{};
      for (std::size_t k = 0; k < h.cols(); ++k) s += h(i, k) * std::conj(h(j, k));
      g(i, j) = s;
      g(j, i) = std::conj(s);
    }
  for (std::size_t i = 0; i < n; ++i) g(i, i) = g(i, i).real();
  return g;
}

ComplexMatrix hconcat(std::span<const ComplexMatrix> blocks) {
  if (blocks.empty()) throw SizeError("hconcat of an empty block list");
  const std::size_t rows = blocks.front().rows();
  std::size_t cols = 0;
  for (const auto& b : blocks) {
    if (b.rows() != rows) throw SizeError("hconcat row mismatch");
    cols += b.cols();
  }
  ComplexMatrix out(rows, cols);
  std::size_t offset = 0;
  for (const auto& b : blocks) {
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < b.cols(); ++c) out(r, offset + c) = b(r, c);
    offset += b.cols();
  }
  return out;
}

ComplexMatrix sample_gaussian_matrix(std::size_t rows, std::size_t cols, RngStream& stream) {
  ComplexMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = stream.next_complex_gaussian();
  return m;
}

double logdet_capacity(const ComplexMatrix& h, double rho) {
  if (!(rho >= 0.0)) throw DomainError("logdet_capacity: rho must be nonnegative");
  if (rho == 0.0) return 0.0;
  const bool wide = h.rows() <= h.cols();
  const std::size_t n = wide ? h.rows() : h.cols();
  ComplexMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      Complex s{};
      if (wide) {
        for (std::size_t k = 0; k < h.cols(); ++k) s += h(i, k) * std::conj(h(j, k));
      } else {
        for (std::size_t k = 0; k < h.rows(); ++k) s += std::conj(h(k, i)) * h(k, j);
      }
      a(i, j) = rho * s;
    }
  for (std::size_t i = 0; i < n; ++i) a(i, i) = 1.0 + a(i, i).real();
  return std::max(0.0, cholesky_logdet(a));
}

double logdet_hpd(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) throw SizeError("logdet_hpd needs a square matrix");
  ComplexMatrix work = a;
  return cholesky_logdet(work);
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) throw ContractError("hermitian_eigenvalues: matrix is not square");
  const std::size_t n = a.rows();
  double asym = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) asym = std::max(asym, std::abs(a(i, j) - std::conj(a(j, i))));
  if (asym > kHermitianTolerance) throw ContractError("hermitian_eigenvalues: matrix is not Hermitian");

  ComplexMatrix m = a;
  for (std::size_t i = 0; i < n; ++i) m(i, i) = m(i, i).real();

  const double scale = std::max(std::sqrt(m.frobenius_squared()), 1e-300);
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += std::norm(m(p, q));
    if (std::sqrt(off) <= 1e-15 * scale) break;

    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        const double mag = std::abs(m(p, q));
        if (mag == 0.0) continue;
        // U = diag(1, e^{-i theta}) * [[c, s], [-s, c]] zeroes m(p, q) in U^H m U.
        const Complex phase = m(p, q) / mag;
        const double app = m(p, p).real();
        const double aqq = m(q, q).real();
        const double theta = (aqq - app) / (2.0 * mag);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const Complex upp = c;
        const Complex upq = s;
        const Complex uqp = -s * std::conj(phase);
        const Complex uqq = c * std::conj(phase);
        for (std::size_t k = 0; k < n; ++k) {
          const Complex kp = m(k, p);
          const Complex kq = m(k, q);
          m(k, p) = kp * upp + kq * uqp;
          m(k, q) = kp * upq + kq * uqq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex pk = m(p, k);
          const Complex qk = m(q, k);
          m(p, k) = std::conj(upp) * pk + std::conj(uqp) * qk;
          m(q, k) = std::conj(upq) * pk + std::conj(uqq) * qk;
        }
        m(p, q) = 0.0;
        m(q, p) = 0.0;
        m(p, p) = m(p, p).real();
        m(q, q) = m(q, q).real();
      }
  }

  std::vector<double> eig(n);
  for (std::size_t i = 0; i < n; ++i) {
    double v = m(i, i).real();
    if (v < 0.0 && v >= -kEigenClamp) v = 0.0;
    eig[i] = v;
  }
  std::sort(eig.begin(), eig.end());
  return eig;
}

}  // namespace coopmux
