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

// Density matrices in the broad sense: positive semidefinite Hermitian
// matrices of any trace. Updates never renormalize on their own.

#include <cmath>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dmupdate/linalg.hpp"

namespace dmu {

// A vector state. Unit norm is not required.
class PureState {
 public:
  explicit PureState(Vector amplitudes) : amps_(std::move(amplitudes)) {
    if (amps_.size() == 0) throw DimensionMismatch("PureState: empty vector");
    if (!all_finite(amps_)) throw NotFinite("PureState: non-finite amplitude");
    if (amps_.norm() <= 0.0) throw NotFinite("PureState: zero vector");
  }

  PureState(std::initializer_list<Complex> amps)
      : PureState(Vector(Eigen::Map<const Vector>(
            amps.begin(), static_cast<Eigen::Index>(amps.size())))) {}

  static PureState basis(std::size_t dim, std::size_t index) {
    Vector v = Vector::Zero(static_cast<Eigen::Index>(dim));
    v[static_cast<Eigen::Index>(index)] = 1.0;
    return PureState(std::move(v));
  }

  std::size_t dim() const noexcept { return static_cast<std::size_t>(amps_.size()); }
  const Vector& amplitudes() const noexcept { return amps_; }
  Complex operator[](std::size_t i) const {
    return amps_[static_cast<Eigen::Index>(i)];
  }
  double norm() const { return amps_.norm(); }
  PureState normalized() const { return PureState(amps_ / amps_.norm()); }

 private:
  Vector amps_;
};

class DensityMatrix {
 public:
  // Validates Hermiticity and positivity; eigenvalues in [-tol, 0) are
  // accepted as roundoff.
  explicit DensityMatrix(Matrix m) : m_(std::move(m)) {
    require_hermitian(m_, "DensityMatrix");
    if (min_eigenvalue(m_) < -tolerance_for(m_))
      throw NotPSD("DensityMatrix: matrix is not positive semidefinite");
    m_ = hermitian_part(m_);
  }

  // For results of completely positive maps applied to valid states, which
  // are PSD by construction. Only symmetrizes away roundoff.
  static DensityMatrix trusted(const Matrix& m) {
    DensityMatrix d;
    d.m_ = hermitian_part(m);
    return d;
  }

  static DensityMatrix maximally_mixed(std::size_t dim) {
    return trusted(identity(dim) / static_cast<double>(dim));
  }

  std::size_t dim() const noexcept { return static_cast<std::size_t>(m_.rows()); }
  const Matrix& matrix() const noexcept { return m_; }
  double trace() const { return m_.trace().real(); }

 private:
  DensityMatrix() = default;
  Matrix m_;
};

class Projector {
 public:
  explicit Projector(Matrix m) : m_(std::move(m)) {
    require_hermitian(m_, "Projector");
    const double err = max_abs(m_ * m_ - m_);
    if (err > kTolerance)
      throw InvalidProjector("Projector: |P^2 - P|_max = " + std::to_string(err));
    m_ = hermitian_part(m_);
  }

  // Rank-1 projector onto the ray of psi (psi need not be normalized).
  static Projector onto(const PureState& psi) {
    const Vector u = psi.amplitudes() / psi.norm();
    return Projector(u * u.adjoint());
  }

  static Projector identity_on(std::size_t dim) { return Projector(identity(dim)); }

  std::size_t dim() const noexcept { return static_cast<std::size_t>(m_.rows()); }
  const Matrix& matrix() const noexcept { return m_; }
  std::size_t rank() const {
    return static_cast<std::size_t>(std::lround(m_.trace().real()));
  }

 private:
  Matrix m_;
};

inline void require_same_dim(std::size_t a, std::size_t b, const std::string& what) {
  if (a != b)
    throw DimensionMismatch(what + ": dimensions " + std::to_string(a) + " and " +
                            std::to_string(b) + " differ");
}

inline DensityMatrix from_pure(const PureState& psi) {
  const Vector& v = psi.amplitudes();
  return DensityMatrix::trusted(v * v.adjoint());
}

inline DensityMatrix projector_update(const DensityMatrix& rho, const Projector& p) {
  require_same_dim(rho.dim(), p.dim(), "projector_update");
  return DensityMatrix::trusted(p.matrix() * rho.matrix() * p.matrix());
}

// Checks a projector family for pairwise orthogonality and completeness.
inline void require_complete_family(std::span<const Projector> family,
                                    const std::string& what) {
  if (family.empty()) throw IncompleteFamily(what + ": empty projector family");
  const std::size_t n = family.front().dim();
  Matrix sum = Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < family.size(); ++i) {
    require_same_dim(n, family[i].dim(), what);
    sum += family[i].matrix();
    for (std::size_t j = i + 1; j < family.size(); ++j)
      if (max_abs(family[i].matrix() * family[j].matrix()) > kTolerance)
        throw IncompleteFamily(what + ": projectors " + std::to_string(i) + " and " +
                               std::to_string(j) + " are not orthogonal");
  }
  if (max_abs(sum - identity(n)) > kTolerance)
    throw IncompleteFamily(what + ": projectors do not sum to the identity");
}

inline DensityMatrix decohere(const DensityMatrix& rho,
                              std::span<const Projector> projectors) {
  require_complete_family(projectors, "decohere");
  require_same_dim(rho.dim(), projectors.front().dim(), "decohere");
  Matrix out = Matrix::Zero(rho.matrix().rows(), rho.matrix().cols());
  for (const auto& p : projectors) out += p.matrix() * rho.matrix() * p.matrix();
  return DensityMatrix::trusted(out);
}

inline constexpr double kZeroTrace = 1e-12;

inline DensityMatrix renormalize(const DensityMatrix& rho) {
  const double tr = rho.trace();
  if (tr <= kZeroTrace)
    throw ZeroTrace("renormalize: trace " + std::to_string(tr) +
                    " (the state was annihilated)");
  return DensityMatrix::trusted(rho.matrix() / tr);
}

inline double purity(const DensityMatrix& rho) {
  const double tr = rho.trace();
  if (tr <= kZeroTrace) throw ZeroTrace("purity: zero trace");
  return (rho.matrix() * rho.matrix()).trace().real() / (tr * tr);
}

// <psi|rho|psi> / (|psi|^2 tr rho): weight of rho on the ray of psi.
inline double fidelity_with(const DensityMatrix& rho, const PureState& psi) {
  const double tr = rho.trace();
  if (tr <= kZeroTrace) throw ZeroTrace("fidelity_with: zero trace");
  const Vector& v = psi.amplitudes();
  return (v.adjoint() * rho.matrix() * v)(0, 0).real() / (v.squaredNorm() * tr);
}

}  // namespace dmu
