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

// Seeded samplers for property checks. Everything draws from an explicit
// engine so results are reproducible from a seed.

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/QR>

#include "dmupdate/ddm.hpp"
#include "dmupdate/density.hpp"
#include "dmupdate/spider.hpp"
#include "dmupdate/update.hpp"

namespace dmu {

using Rng = std::mt19937_64;

inline Complex gaussian_complex(Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  const double re = n(rng);
  const double im = n(rng);
  return {re, im};
}

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline std::size_t uniform_index(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline Matrix random_ginibre(Rng& rng, std::size_t rows, std::size_t cols) {
  Matrix g(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index i = 0; i < g.size(); ++i) g.data()[i] = gaussian_complex(rng);
  return g;
}

inline Matrix random_hermitian(Rng& rng, std::size_t dim) {
  return hermitian_part(random_ginibre(rng, dim, dim));
}

// Haar-distributed unitary (QR of a Ginibre matrix with the phase fix).
inline Matrix random_unitary(Rng& rng, std::size_t dim) {
  const Eigen::MatrixXcd g = random_ginibre(rng, dim, dim);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index k = 0; k < q.cols(); ++k) {
    const Complex d = r(k, k);
    if (std::abs(d) > 0) q.col(k) *= d / std::abs(d);
  }
  return q;
}

inline PureState random_pure(Rng& rng, std::size_t dim) {
  Vector v(static_cast<Eigen::Index>(dim));
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = gaussian_complex(rng);
  return PureState(v / v.norm());
}

// G G^dag with G of shape dim x rank; trace is not normalized.
inline DensityMatrix random_psd(Rng& rng, std::size_t dim, std::size_t rank = 0) {
  const Matrix g = random_ginibre(rng, dim, rank == 0 ? dim : rank);
  return DensityMatrix(hermitian_part(g * g.adjoint()));
}

inline DensityMatrix random_density(Rng& rng, std::size_t dim, std::size_t rank = 0) {
  return renormalize(random_psd(rng, dim, rank));
}

inline OrthonormalBasis random_basis(Rng& rng, std::size_t dim) {
  return OrthonormalBasis::from_columns(random_unitary(rng, dim));
}

// A complete orthogonal family: the columns of a random unitary split into
// consecutive groups of random size.
inline std::vector<Projector> random_projector_family(Rng& rng, std::size_t dim,
                                                      bool rank_one = false) {
  const Matrix u = random_unitary(rng, dim);
  std::vector<Projector> family;
  std::size_t start = 0;
  while (start < dim) {
    const std::size_t len = rank_one ? 1 : uniform_index(rng, 1, dim - start);
    const Matrix cols = u.middleCols(static_cast<Eigen::Index>(start),
                                     static_cast<Eigen::Index>(len));
    family.emplace_back(hermitian_part(cols * cols.adjoint()));
    start += len;
  }
  return family;
}

inline DoubleDensityMatrix random_ddm(Rng& rng, std::size_t dim) {
  const std::size_t n_factors = uniform_index(rng, 1, 3);
  std::vector<DdmFactor> factors;
  for (std::size_t k = 0; k < n_factors; ++k) {
    DdmFactor f{uniform(rng, 0.1, 2.0), {}};
    const std::size_t n_branches = uniform_index(rng, 1, dim);
    for (std::size_t i = 0; i < n_branches; ++i)
      f.branches.push_back({uniform(rng, 0.0, 2.0), random_pure(rng, dim)});
    factors.push_back(std::move(f));
  }
  return DoubleDensityMatrix(dim, std::move(factors));
}

}  // namespace dmu
