// Copyright 2026 The dmupdate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Dense complex matrix kernel: Hermitian spectral decomposition with
// eigenvalue grouping, principal square roots, Kronecker products and
// operators acting on a subset of tensor factors.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "dmupdate/errors.hpp"

namespace dmu {

using Complex = std::complex<double>;
using Matrix =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Absolute tolerance for Hermiticity, PSD, idempotence and orthogonality
// checks. Checks scale it by max(1, |M|_max).
inline constexpr double kTolerance = 1e-9;
// Relative gap below which neighbouring eigenvalues share an eigenspace.
inline constexpr double kDefaultGroupTol = 1e-8;
// Cap on any joint (product) dimension.
inline constexpr std::size_t kMaxJointDim = 4096;

inline double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline double tolerance_for(const Matrix& m) {
  return kTolerance * std::max(1.0, max_abs(m));
}

inline bool all_finite(const Matrix& m) {
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    const Complex z = m.data()[i];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

inline bool all_finite(const Vector& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i].real()) || !std::isfinite(v[i].imag())) return false;
  }
  return true;
}

inline void require_finite(const Matrix& m, const std::string& what) {
  if (m.rows() == 0 || m.cols() == 0)
    throw DimensionMismatch(what + ": empty matrix");
  if (!all_finite(m)) throw NotFinite(what + ": non-finite entry");
}

inline void require_square(const Matrix& m, const std::string& what) {
  if (m.rows() != m.cols())
    throw DimensionMismatch(what + ": matrix is " + std::to_string(m.rows()) +
                            "x" + std::to_string(m.cols()) + ", not square");
}

inline double hermiticity_error(const Matrix& m) {
  return max_abs(m - m.adjoint());
}

inline bool is_hermitian(const Matrix& m) {
  return m.rows() == m.cols() && hermiticity_error(m) <= tolerance_for(m);
}

inline void require_hermitian(const Matrix& m, const std::string& what) {
  require_finite(m, what);
  require_square(m, what);
  const double err = hermiticity_error(m);
  if (err > tolerance_for(m))
    throw NotHermitian(what + ": |M - M^dag|_max = " + std::to_string(err));
}

inline Matrix hermitian_part(const Matrix& m) {
  return (m + m.adjoint()) * 0.5;
}

inline Matrix identity(std::size_t dim) {
  return Matrix::Identity(static_cast<Eigen::Index>(dim),
                          static_cast<Eigen::Index>(dim));
}

// Raw eigensystem of a Hermitian matrix, eigenvalues in decreasing order and
// eigenvectors as the matching columns of `vectors`.
struct Eigensystem {
  RealVector values;
  Matrix vectors;
};

inline Eigensystem hermitian_eigensystem(const Matrix& m) {
  require_hermitian(m, "hermitian_eigensystem");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
      Eigen::MatrixXcd(hermitian_part(m)));
  if (solver.info() != Eigen::Success)
    throw NumericalFailure("hermitian_eigensystem: solver did not converge");
  const Eigen::Index n = m.rows();
  Eigensystem out{RealVector(n), Matrix(n, n)};
  // Eigen returns ascending order.
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values[k] = solver.eigenvalues()[n - 1 - k];
    out.vectors.col(k) = solver.eigenvectors().col(n - 1 - k);
  }
  return out;
}

inline double min_eigenvalue(const Matrix& m) {
  const auto es = hermitian_eigensystem(m);
  return es.values[es.values.size() - 1];
}

inline bool is_psd(const Matrix& m) {
  if (!is_hermitian(m)) return false;
  return min_eigenvalue(m) >= -tolerance_for(m);
}

struct SpectralTerm {
  double eigenvalue;
  Matrix projector;
};

// Spectral decomposition into eigenspace projectors. Eigenvalues are
// strictly decreasing and the projectors sum to the identity.
struct SpectralDecomposition {
  std::size_t dim = 0;
  std::vector<SpectralTerm> terms;

  Matrix reconstruct() const {
    Matrix acc = Matrix::Zero(static_cast<Eigen::Index>(dim),
                              static_cast<Eigen::Index>(dim));
    for (const auto& t : terms) acc += t.eigenvalue * t.projector;
    return acc;
  }
};

inline SpectralDecomposition hermitian_eig(const Matrix& m,
                                           double group_tol = kDefaultGroupTol) {
  const auto es = hermitian_eigensystem(m);
  const Eigen::Index n = es.values.size();
  double spectral_norm = 0.0;
  for (Eigen::Index k = 0; k < n; ++k)
    spectral_norm = std::max(spectral_norm, std::abs(es.values[k]));
  const double gap_tol = group_tol * std::max(1.0, spectral_norm);

  SpectralDecomposition out;
  out.dim = static_cast<std::size_t>(n);
  Eigen::Index start = 0;
  while (start < n) {
    Eigen::Index end = start + 1;
    while (end < n && es.values[end - 1] - es.values[end] <= gap_tol) ++end;
    double mean = 0.0;
    Matrix proj = Matrix::Zero(n, n);
    for (Eigen::Index k = start; k < end; ++k) {
      mean += es.values[k];
      proj += es.vectors.col(k) * es.vectors.col(k).adjoint();
    }
    mean /= static_cast<double>(end - start);
    out.terms.push_back({mean, hermitian_part(proj)});
    start = end;
  }
  return out;
}

// Orthonormal basis (as columns) of the range of a projector.
inline Matrix range_basis(const Matrix& projector) {
  const auto es = hermitian_eigensystem(projector);
  Eigen::Index rank = 0;
  while (rank < es.values.size() && es.values[rank] > 0.5) ++rank;
  return es.vectors.leftCols(rank);
}

// Relative size below which an eigenvalue is treated as roundoff. Square
// roots magnify such values (1e-16 becomes 1e-8), so they are set to zero.
inline constexpr double kRoundoffFloor = 1e-13;

inline double roundoff_floor(double spectral_norm) {
  return kRoundoffFloor * std::max(1.0, spectral_norm);
}

// Eigenvalue below -tol is an error; eigenvalues in [-tol, 0) are clipped
// and roundoff-sized positive ones zeroed.
inline RealVector clipped_psd_spectrum(const Eigensystem& es, double tol,
                                       const std::string& what) {
  RealVector vals = es.values;
  const double floor = roundoff_floor(vals.size() ? vals.cwiseAbs().maxCoeff() : 0.0);
  for (Eigen::Index k = 0; k < vals.size(); ++k) {
    if (vals[k] < -tol)
      throw NotPSD(what + ": eigenvalue " + std::to_string(vals[k]));
    if (vals[k] <= floor) vals[k] = 0.0;
  }
  return vals;
}

inline Matrix matrix_sqrt(const Matrix& s) {
  const auto es = hermitian_eigensystem(s);
  const RealVector vals = clipped_psd_spectrum(es, tolerance_for(s), "matrix_sqrt");
  Matrix root = es.vectors * vals.cwiseSqrt().cast<Complex>().asDiagonal() *
                es.vectors.adjoint();
  return hermitian_part(root);
}

inline Matrix kron(const Matrix& a, const Matrix& b,
                   std::size_t cap = kMaxJointDim) {
  const auto rows = static_cast<std::size_t>(a.rows()) *
                    static_cast<std::size_t>(b.rows());
  const auto cols = static_cast<std::size_t>(a.cols()) *
                    static_cast<std::size_t>(b.cols());
  if (rows > cap || cols > cap)
    throw SizeCap("kron: product dimension " + std::to_string(rows) + "x" +
                  std::to_string(cols) + " exceeds cap " + std::to_string(cap));
  Matrix out(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline std::size_t product(std::span<const std::size_t> dims) {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1},
                         std::multiplies<>());
}

namespace detail {

// Row-major (first slot most significant) multi-index helpers.
inline std::vector<std::size_t> strides_of(std::span<const std::size_t> dims) {
  std::vector<std::size_t> strides(dims.size(), 1);
  for (std::size_t k = dims.size(); k-- > 1;)
    strides[k - 1] = strides[k] * dims[k];
  return strides;
}

inline void check_slots(std::span<const std::size_t> slot_dims,
                        std::span<const std::size_t> slots,
                        const std::string& what) {
  std::vector<bool> seen(slot_dims.size(), false);
  for (std::size_t s : slots) {
    if (s >= slot_dims.size())
      throw DimensionMismatch(what + ": slot " + std::to_string(s) +
                              " out of range");
    if (seen[s])
      throw DimensionMismatch(what + ": slot " + std::to_string(s) +
                              " repeated");
    seen[s] = true;
  }
  for (std::size_t d : slot_dims)
    if (d == 0) throw DimensionMismatch(what + ": zero slot dimension");
}

// For every assignment of the non-selected slots, the flat offset it
// contributes; and for every assignment of the selected slots (in the
// order given), the flat offset it contributes.
struct SlotOffsets {
  std::vector<std::size_t> selected;
  std::vector<std::size_t> rest;
};

inline SlotOffsets slot_offsets(std::span<const std::size_t> slot_dims,
                                std::span<const std::size_t> slots) {
  const auto strides = strides_of(slot_dims);
  std::vector<bool> chosen(slot_dims.size(), false);
  for (std::size_t s : slots) chosen[s] = true;

  auto enumerate = [&](const std::vector<std::size_t>& which) {
    std::size_t count = 1;
    for (std::size_t s : which) count *= slot_dims[s];
    std::vector<std::size_t> offsets(count, 0);
    std::vector<std::size_t> digits(which.size(), 0);
    for (std::size_t n = 0; n < count; ++n) {
      std::size_t off = 0;
      for (std::size_t k = 0; k < which.size(); ++k)
        off += digits[k] * strides[which[k]];
      offsets[n] = off;
      for (std::size_t k = which.size(); k-- > 0;) {
        if (++digits[k] < slot_dims[which[k]]) break;
        digits[k] = 0;
      }
    }
    return offsets;
  };

  std::vector<std::size_t> sel(slots.begin(), slots.end());
  std::vector<std::size_t> rest;
  for (std::size_t s = 0; s < slot_dims.size(); ++s)
    if (!chosen[s]) rest.push_back(s);
  return {enumerate(sel), enumerate(rest)};
}

}  // namespace detail

// Operator acting as `op` on the tensor factors listed in `slots` (op's own
// factor order follows the order of `slots`) and as the identity elsewhere.
inline Matrix embed_on_subsystem(const Matrix& op,
                                 std::span<const std::size_t> slot_dims,
                                 std::span<const std::size_t> slots,
                                 std::size_t cap = kMaxJointDim) {
  require_square(op, "embed_on_subsystem");
  detail::check_slots(slot_dims, slots, "embed_on_subsystem");
  std::size_t op_dim = 1;
  for (std::size_t s : slots) op_dim *= slot_dims[s];
  if (static_cast<std::size_t>(op.rows()) != op_dim)
    throw DimensionMismatch("embed_on_subsystem: operator dimension " +
                            std::to_string(op.rows()) +
                            " does not match selected slots (" +
                            std::to_string(op_dim) + ")");
  const std::size_t total = product(slot_dims);
  if (total > cap)
    throw SizeCap("embed_on_subsystem: joint dimension " +
                  std::to_string(total) + " exceeds cap");

  bool contiguous = !slots.empty();
  for (std::size_t k = 1; k < slots.size(); ++k)
    contiguous = contiguous && slots[k] == slots[k - 1] + 1;
  if (contiguous) {
    const std::size_t left = product(slot_dims.first(slots.front()));
    const std::size_t right = product(slot_dims.subspan(slots.back() + 1));
    return kron(kron(identity(left), op, cap), identity(right), cap);
  }

  const auto offs = detail::slot_offsets(slot_dims, slots);
  const auto n = static_cast<Eigen::Index>(total);
  Matrix out = Matrix::Zero(n, n);
  for (std::size_t r : offs.rest)
    for (std::size_t i = 0; i < op_dim; ++i)
      for (std::size_t j = 0; j < op_dim; ++j)
        out(static_cast<Eigen::Index>(r + offs.selected[i]),
            static_cast<Eigen::Index>(r + offs.selected[j])) =
            op(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  return out;
}

// Partial trace keeping the listed slots (in the given order).
inline Matrix partial_trace(const Matrix& m,
                            std::span<const std::size_t> slot_dims,
                            std::span<const std::size_t> keep) {
  require_square(m, "partial_trace");
  detail::check_slots(slot_dims, keep, "partial_trace");
  if (static_cast<std::size_t>(m.rows()) != product(slot_dims))
    throw DimensionMismatch("partial_trace: matrix dimension does not match slots");
  const auto offs = detail::slot_offsets(slot_dims, keep);
  const auto k = static_cast<Eigen::Index>(offs.selected.size());
  Matrix out = Matrix::Zero(k, k);
  for (std::size_t r : offs.rest)
    for (Eigen::Index i = 0; i < k; ++i)
      for (Eigen::Index j = 0; j < k; ++j)
        out(i, j) += m(static_cast<Eigen::Index>(r + offs.selected[i]),
                       static_cast<Eigen::Index>(r + offs.selected[j]));
  return out;
}

// Sum of K rho K^dag over a Kraus family.
inline Matrix apply_kraus(std::span<const Matrix> kraus, const Matrix& rho) {
  Matrix out = Matrix::Zero(rho.rows(), rho.cols());
  for (const auto& k : kraus) {
    if (k.cols() != rho.rows() || k.rows() != rho.rows())
      throw DimensionMismatch("apply_kraus: operator and state dimensions differ");
    out.noalias() += k * rho * k.adjoint();
  }
  return out;
}

}  // namespace dmu
