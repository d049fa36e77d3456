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

// Double density matrices built by double mixing. A DDM is a list of factors
// (y_k, [(x_ik, phi_ik)]); with omega_ik = y_k^(1/4) x_ik^(1/2) phi_ik it
// induces the completely positive map
//
//   rho  ->  sum_k A_k rho A_k,     A_k = sum_i |omega_ik><omega_ik|
//
// whose Kraus factors are Hermitian PSD. The fuzz is the case of one branch
// per factor (up to eigenspace bases); the phaser is the case of one factor.

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dmupdate/density.hpp"
#include "dmupdate/linalg.hpp"
#include "dmupdate/update.hpp"

namespace dmu {

struct DdmBranch {
  double x;
  PureState phi;
};

struct DdmFactor {
  double y;
  std::vector<DdmBranch> branches;
};

class DoubleDensityMatrix {
 public:
  DoubleDensityMatrix(std::size_t dim, std::vector<DdmFactor> factors)
      : dim_(dim), factors_(std::move(factors)) {
    if (dim_ == 0) throw InvalidDdm("DoubleDensityMatrix: zero dimension");
    if (factors_.empty()) throw InvalidDdm("DoubleDensityMatrix: no factors");
    for (std::size_t k = 0; k < factors_.size(); ++k) {
      const auto& f = factors_[k];
      if (!std::isfinite(f.y) || f.y <= 0.0)
        throw InvalidDdm("DoubleDensityMatrix: factor " + std::to_string(k) +
                         " needs a finite positive y");
      if (f.branches.empty())
        throw InvalidDdm("DoubleDensityMatrix: factor " + std::to_string(k) +
                         " has no branches");
      for (const auto& b : f.branches) {
        if (!std::isfinite(b.x) || b.x < 0.0)
          throw InvalidDdm("DoubleDensityMatrix: branch weights must be finite and >= 0");
        if (b.phi.dim() != dim_)
          throw DimensionMismatch("DoubleDensityMatrix: branch vector of dimension " +
                                  std::to_string(b.phi.dim()) + " in a DDM of dimension " +
                                  std::to_string(dim_));
      }
    }
  }

  std::size_t dim() const noexcept { return dim_; }
  const std::vector<DdmFactor>& factors() const noexcept { return factors_; }

  Vector omega(std::size_t k, std::size_t i) const {
    const auto& f = factors_.at(k);
    const auto& b = f.branches.at(i);
    return std::pow(f.y, 0.25) * std::sqrt(b.x) * b.phi.amplitudes();
  }

  // A_k = sum_i |omega_ik><omega_ik|
  Matrix kraus_factor(std::size_t k) const {
    const auto n = static_cast<Eigen::Index>(dim_);
    Matrix a = Matrix::Zero(n, n);
    for (std::size_t i = 0; i < factors_.at(k).branches.size(); ++i) {
      const Vector w = omega(k, i);
      a += w * w.adjoint();
    }
    return hermitian_part(a);
  }

 private:
  std::size_t dim_;
  std::vector<DdmFactor> factors_;
};

inline std::vector<Matrix> ddm_kraus(const DoubleDensityMatrix& d) {
  std::vector<Matrix> out;
  for (std::size_t k = 0; k < d.factors().size(); ++k) out.push_back(d.kraus_factor(k));
  return out;
}

inline DensityMatrix ddm_update(const DensityMatrix& rho, const DoubleDensityMatrix& d) {
  require_same_dim(rho.dim(), d.dim(), "ddm_update");
  return DensityMatrix::trusted(apply_kraus(ddm_kraus(d), rho.matrix()));
}

namespace detail {

inline DoubleDensityMatrix zero_map_ddm(std::size_t dim) {
  return DoubleDensityMatrix(dim, {{1.0, {{0.0, PureState::basis(dim, 0)}}}});
}

inline std::vector<DdmBranch> eigenspace_branches(const Matrix& projector, double x) {
  const Matrix basis = range_basis(projector);
  std::vector<DdmBranch> out;
  for (Eigen::Index c = 0; c < basis.cols(); ++c)
    out.push_back({x, PureState(Vector(basis.col(c)))});
  return out;
}

}  // namespace detail

// One factor per positive eigenvalue group of sigma, y_k = eigenvalue, unit
// branch weights over an orthonormal basis of the eigenspace: A_k = sqrt(y_k) P_k.
inline DoubleDensityMatrix ddm_from_fuzz(const DensityMatrix& sigma) {
  const auto data = fuzz_data(sigma);
  std::vector<DdmFactor> factors;
  for (const auto& [w, p] : data.terms)
    if (w > 0.0) factors.push_back({w, detail::eigenspace_branches(p.matrix(), 1.0)});
  if (factors.empty()) return detail::zero_map_ddm(sigma.dim());
  return DoubleDensityMatrix(sigma.dim(), std::move(factors));
}

// A single factor with y = 1 whose branches rebuild sqrt(sigma).
inline DoubleDensityMatrix ddm_from_phaser(const DensityMatrix& sigma) {
  const auto data = fuzz_data(sigma);
  std::vector<DdmBranch> branches;
  for (const auto& [w, p] : data.terms)
    if (w > 0.0) {
      auto more = detail::eigenspace_branches(p.matrix(), std::sqrt(w));
      branches.insert(branches.end(), more.begin(), more.end());
    }
  if (branches.empty()) return detail::zero_map_ddm(sigma.dim());
  return DoubleDensityMatrix(sigma.dim(), {{1.0, std::move(branches)}});
}

// Rank-1 projector update P rho P as a DDM.
inline DoubleDensityMatrix ddm_from_projector(const PureState& psi) {
  return DoubleDensityMatrix(psi.dim(), {{1.0, {{1.0, psi.normalized()}}}});
}

// Multiplies factor k's y by c^2 and divides its branch weights by c; the
// induced map is unchanged.
inline DoubleDensityMatrix rescale_factor(const DoubleDensityMatrix& d, std::size_t k,
                                          double c) {
  if (!(c > 0.0) || !std::isfinite(c)) throw InvalidDdm("rescale_factor: c must be > 0");
  auto factors = d.factors();
  auto& f = factors.at(k);
  f.y *= c * c;
  for (auto& b : f.branches) b.x /= c;
  return DoubleDensityMatrix(d.dim(), std::move(factors));
}

// Orthogonalizes the branches of every factor (eigendecomposition of A_k),
// scales each factor so its largest branch weight is 1, drops zero factors
// and sorts factors by decreasing tr(A_k^2). The induced map is unchanged.
// Two DDMs with the same map need not share a canonical form; compare maps
// through their Choi matrices.
inline DoubleDensityMatrix canonicalize(const DoubleDensityMatrix& d) {
  struct Scored {
    double weight;
    DdmFactor factor;
  };
  std::vector<Scored> scored;
  for (std::size_t k = 0; k < d.factors().size(); ++k) {
    const Matrix a = d.kraus_factor(k);
    const auto es = hermitian_eigensystem(a);
    const double cut = 1e-12 * std::max(1.0, std::abs(es.values[0]));
    const double top = es.values[0];
    if (top <= cut) continue;
    DdmFactor f{top * top, {}};
    for (Eigen::Index i = 0; i < es.values.size(); ++i)
      if (es.values[i] > cut)
        f.branches.push_back({es.values[i] / top, PureState(Vector(es.vectors.col(i)))});
    scored.push_back({(a * a).trace().real(), std::move(f)});
  }
  if (scored.empty()) return detail::zero_map_ddm(d.dim());
  std::stable_sort(scored.begin(), scored.end(),
                   [](const Scored& l, const Scored& r) { return l.weight > r.weight; });
  std::vector<DdmFactor> factors;
  for (auto& s : scored) factors.push_back(std::move(s.factor));
  return DoubleDensityMatrix(d.dim(), std::move(factors));
}

inline std::vector<Matrix> canonical_kraus(const DoubleDensityMatrix& d) {
  return ddm_kraus(canonicalize(d));
}

// Choi matrix sum_ij |i><j| (x) Phi(|i><j|) of rho -> ddm_update(rho, d).
inline Matrix choi_matrix(const DoubleDensityMatrix& d, std::size_t cap = kMaxJointDim) {
  if (d.dim() * d.dim() > cap) throw SizeCap("choi_matrix: dim^2 exceeds cap");
  const auto kraus = ddm_kraus(d);
  return choi_of([&](const Matrix& m) { return apply_kraus(kraus, m); }, d.dim(), cap);
}

// Row-major vectorization: vec(A)[a*n + b] = A(a, b).
inline Vector vectorize(const Matrix& a) {
  return Eigen::Map<const Vector>(a.data(), a.size());
}

inline Matrix unvectorize(const Vector& v, std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  if (v.size() != n * n) throw DimensionMismatch("unvectorize: length is not dim^2");
  Matrix a(n, n);
  std::copy(v.data(), v.data() + v.size(), a.data());
  return a;
}

// The DDM as a density matrix on the doubled space:
// sum_k |Omega_k><Omega_k| with Omega_k = sum_i omega_ik (x) conj(omega_ik) = vec(A_k).
inline DensityMatrix ddm_as_state(const DoubleDensityMatrix& d,
                                  std::size_t cap = kMaxJointDim) {
  if (d.dim() * d.dim() > cap) throw SizeCap("ddm_as_state: dim^2 exceeds cap");
  const auto n2 = static_cast<Eigen::Index>(d.dim() * d.dim());
  Matrix state = Matrix::Zero(n2, n2);
  for (const auto& a : ddm_kraus(d)) {
    const Vector omega = vectorize(a);
    state += omega * omega.adjoint();
  }
  return DensityMatrix::trusted(state);
}

// Kraus operators read back from a doubled-space state by un-vectorizing its
// weighted eigenvectors. They induce the same map as the original factors.
inline std::vector<Matrix> kraus_from_doubled_state(const DensityMatrix& state,
                                                    std::size_t dim) {
  if (state.dim() != dim * dim)
    throw DimensionMismatch("kraus_from_doubled_state: state is not on a doubled space");
  const auto es = hermitian_eigensystem(state.matrix());
  const double cut = 1e-12 * std::max(1.0, std::abs(es.values[0]));
  std::vector<Matrix> out;
  for (Eigen::Index k = 0; k < es.values.size(); ++k)
    if (es.values[k] > cut)
      out.push_back(unvectorize(std::sqrt(es.values[k]) * es.vectors.col(k), dim));
  if (out.empty())
    out.push_back(Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim)));
  return out;
}

}  // namespace dmu
