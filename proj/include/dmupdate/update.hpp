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

// The two non-commutative update mechanisms on density matrices.
//
//   fuzz:   rho, sigma = sum_i x_i P_i      ->  sum_i x_i P_i rho P_i
//   phaser: rho, sigma = sum_i x_i^2 P_i    ->  (sum_i x_i P_i) rho (sum_j x_j P_j)
//
// P_i are the eigenspace projectors of sigma (degenerate eigenvalues share a
// single projector) and the phaser takes x_i = +sqrt(eigenvalue), so it is
// sqrt(sigma) rho sqrt(sigma). Both are linear completely positive maps in
// rho for fixed sigma, and both are expressed here through their Kraus
// families so they can be embedded on a subsystem or turned into Choi
// matrices.

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dmupdate/density.hpp"
#include "dmupdate/linalg.hpp"
#include "dmupdate/spider.hpp"

namespace dmu {

// A fuzz given by an explicit projector family and real non-negative weights.
struct FuzzData {
  std::vector<std::pair<double, Projector>> terms;

  FuzzData() = default;
  explicit FuzzData(std::vector<std::pair<double, Projector>> t) : terms(std::move(t)) {
    std::vector<Projector> family;
    for (const auto& [w, p] : terms) {
      if (!std::isfinite(w) || w < 0.0)
        throw Error("FuzzData: weights must be finite and non-negative");
      family.push_back(p);
    }
    require_complete_family(family, "FuzzData");
  }

  std::size_t dim() const { return terms.front().second.dim(); }
};

// Complex coefficients on a complete orthogonal projector family; sigma
// alone does not determine this map once the coefficients are complex.
struct PhaserData {
  std::vector<std::pair<Complex, Projector>> terms;

  PhaserData() = default;
  explicit PhaserData(std::vector<std::pair<Complex, Projector>> t) : terms(std::move(t)) {
    std::vector<Projector> family;
    for (const auto& [x, p] : terms) {
      if (!std::isfinite(x.real()) || !std::isfinite(x.imag()))
        throw NotFinite("PhaserData: non-finite coefficient");
      family.push_back(p);
    }
    require_complete_family(family, "PhaserData");
  }

  std::size_t dim() const { return terms.front().second.dim(); }

  // sum_i x_i P_i
  Matrix operator_sum() const {
    const auto n = static_cast<Eigen::Index>(dim());
    Matrix a = Matrix::Zero(n, n);
    for (const auto& [x, p] : terms) a += x * p.matrix();
    return a;
  }
};

inline std::vector<Matrix> fuzz_kraus(const FuzzData& data) {
  std::vector<Matrix> out;
  for (const auto& [w, p] : data.terms)
    if (w > 0.0) out.push_back(std::sqrt(w) * p.matrix());
  if (out.empty()) out.push_back(Matrix::Zero(static_cast<Eigen::Index>(data.dim()),
                                              static_cast<Eigen::Index>(data.dim())));
  return out;
}

// Zero and roundoff-negative eigenspaces of sigma carry weight 0.
inline FuzzData fuzz_data(const DensityMatrix& sigma, double group_tol = kDefaultGroupTol) {
  const auto spectral = hermitian_eig(sigma.matrix(), group_tol);
  double norm = 0.0;
  for (const auto& t : spectral.terms) norm = std::max(norm, std::abs(t.eigenvalue));
  std::vector<std::pair<double, Projector>> terms;
  for (const auto& t : spectral.terms)
    terms.emplace_back(t.eigenvalue <= roundoff_floor(norm) ? 0.0 : t.eigenvalue,
                       Projector(t.projector));
  return FuzzData(std::move(terms));
}

inline std::vector<Matrix> fuzz_kraus(const DensityMatrix& sigma) {
  return fuzz_kraus(fuzz_data(sigma));
}

inline DensityMatrix fuzz(const DensityMatrix& rho, const FuzzData& data) {
  require_same_dim(rho.dim(), data.dim(), "fuzz");
  return DensityMatrix::trusted(apply_kraus(fuzz_kraus(data), rho.matrix()));
}

inline DensityMatrix fuzz(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho.dim(), sigma.dim(), "fuzz");
  return fuzz(rho, fuzz_data(sigma));
}

inline std::vector<Matrix> phaser_kraus(const DensityMatrix& sigma) {
  return {matrix_sqrt(sigma.matrix())};
}

inline std::vector<Matrix> phaser_kraus(const PhaserData& data) {
  return {data.operator_sum()};
}

inline DensityMatrix phaser(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho.dim(), sigma.dim(), "phaser");
  return DensityMatrix::trusted(apply_kraus(phaser_kraus(sigma), rho.matrix()));
}

// (sum_i x_i P_i) rho (sum_j conj(x_j) P_j)
inline DensityMatrix phaser_general(const DensityMatrix& rho, const PhaserData& data) {
  require_same_dim(rho.dim(), data.dim(), "phaser_general");
  return DensityMatrix::trusted(apply_kraus(phaser_kraus(data), rho.matrix()));
}

// Phaser with a pure first argument: phi_i = psi_i x_i in sigma's
// eigenbasis, with x_i = sqrt(eigenvalue_i).
inline PureState phaser_pure(const PureState& psi, const DensityMatrix& sigma) {
  require_same_dim(psi.dim(), sigma.dim(), "phaser_pure");
  const auto es = hermitian_eigensystem(sigma.matrix());
  const RealVector x =
      clipped_psd_spectrum(es, tolerance_for(sigma.matrix()), "phaser_pure").cwiseSqrt();
  const Vector psi_in_basis = es.vectors.adjoint() * psi.amplitudes();
  const Vector phi_in_basis = psi_in_basis.cwiseProduct(x.cast<Complex>());
  const Vector phi = es.vectors * phi_in_basis;
  if (phi.norm() == 0.0)
    throw ZeroTrace("phaser_pure: psi lies in the kernel of sigma");
  return PureState(phi);
}

// The phaser rebuilt from spiders: sigma's eigenbasis fixes the spider, the
// vector of square-root eigenvalues is plugged into one of its legs, and the
// resulting operator conjugates rho.
inline DensityMatrix phaser_as_spider(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho.dim(), sigma.dim(), "phaser_as_spider");
  const auto es = hermitian_eigensystem(sigma.matrix());
  const RealVector x =
      clipped_psd_spectrum(es, tolerance_for(sigma.matrix()), "phaser_as_spider")
          .cwiseSqrt();
  const OrthonormalBasis basis = OrthonormalBasis::from_columns(es.vectors);
  // All-zero x would be rejected as a PureState; the map is then zero.
  if (x.norm() == 0.0)
    return DensityMatrix::trusted(Matrix::Zero(rho.matrix().rows(), rho.matrix().cols()));
  const Matrix a = phase_apply(basis, PureState(Vector(x.cast<Complex>())));
  return DensityMatrix::trusted(a * rho.matrix() * a.adjoint());
}

// Choi(F) = sum_ij |i><j| (x) F(|i><j|), for a linear map F on dim x dim
// matrices.
template <class Map>
Matrix choi_of(Map&& map, std::size_t dim, std::size_t cap = kMaxJointDim) {
  if (dim * dim > cap) throw SizeCap("choi_of: dim^2 exceeds cap");
  const auto n = static_cast<Eigen::Index>(dim);
  Matrix choi = Matrix::Zero(n * n, n * n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      Matrix unit = Matrix::Zero(n, n);
      unit(i, j) = 1.0;
      const Matrix image = map(unit);
      choi.block(i * n, j * n, n, n) = image;
    }
  return choi;
}

inline Matrix kraus_choi(std::span<const Matrix> kraus) {
  const std::size_t dim = static_cast<std::size_t>(kraus.front().rows());
  return choi_of([&](const Matrix& m) { return apply_kraus(kraus, m); }, dim);
}

}  // namespace dmu
