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

// Reference implementations for tests. These use plain index loops and
// closed-form constructions so they share no code path with the library
// routines they check.

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

#include "dmupdate/linalg.hpp"

namespace oracle {

using dmu::Complex;
using dmu::Matrix;
using dmu::Vector;

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      for (Eigen::Index k = 0; k < b.rows(); ++k)
        for (Eigen::Index l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

// Digits of `flat` in the mixed radix `dims` (first factor most significant).
inline std::vector<std::size_t> digits(std::size_t flat, const std::vector<std::size_t>& dims) {
  std::vector<std::size_t> d(dims.size());
  for (std::size_t k = dims.size(); k-- > 0;) {
    d[k] = flat % dims[k];
    flat /= dims[k];
  }
  return d;
}

inline std::size_t flatten(const std::vector<std::size_t>& d, const std::vector<std::size_t>& dims) {
  std::size_t f = 0;
  for (std::size_t k = 0; k < dims.size(); ++k) f = f * dims[k] + d[k];
  return f;
}

inline std::size_t total(const std::vector<std::size_t>& dims) {
  std::size_t n = 1;
  for (auto d : dims) n *= d;
  return n;
}

// (op on `slots`, identity elsewhere) applied to v, one output amplitude at a
// time: sum over the slot digits of the input index.
inline Vector apply_on_slots(const Matrix& op, const std::vector<std::size_t>& dims,
                             const std::vector<std::size_t>& slots, const Vector& v) {
  std::vector<std::size_t> sub;
  for (auto s : slots) sub.push_back(dims[s]);
  const std::size_t n = total(dims), m = total(sub);
  Vector out = Vector::Zero(static_cast<Eigen::Index>(n));
  for (std::size_t row = 0; row < n; ++row) {
    const auto rd = digits(row, dims);
    std::vector<std::size_t> rs;
    for (auto s : slots) rs.push_back(rd[s]);
    const std::size_t op_row = flatten(rs, sub);
    for (std::size_t c = 0; c < m; ++c) {
      const auto cs = digits(c, sub);
      auto cd = rd;
      for (std::size_t k = 0; k < slots.size(); ++k) cd[slots[k]] = cs[k];
      out[static_cast<Eigen::Index>(row)] +=
          op(static_cast<Eigen::Index>(op_row), static_cast<Eigen::Index>(c)) *
          v[static_cast<Eigen::Index>(flatten(cd, dims))];
    }
  }
  return out;
}

inline Matrix partial_trace_keep_one(const Matrix& m, const std::vector<std::size_t>& dims,
                                     std::size_t keep) {
  const std::size_t n = total(dims), d = dims[keep];
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      const auto rd = digits(r, dims), cd = digits(c, dims);
      bool traced_equal = true;
      for (std::size_t k = 0; k < dims.size(); ++k)
        if (k != keep && rd[k] != cd[k]) traced_equal = false;
      if (traced_equal)
        out(static_cast<Eigen::Index>(rd[keep]), static_cast<Eigen::Index>(cd[keep])) +=
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    }
  return out;
}

// Spider entries from the definition: sum over basis labels i of the product
// of <idx|b_i> (ket legs) or <b_i|idx> (bra legs).
inline std::vector<Complex> spider_entries(const Matrix& basis_columns, const std::vector<bool>& is_ket) {
  const std::size_t d = static_cast<std::size_t>(basis_columns.rows());
  const std::vector<std::size_t> dims(is_ket.size(), d);
  std::vector<Complex> out(total(dims));
  for (std::size_t f = 0; f < out.size(); ++f) {
    const auto idx = digits(f, dims);
    Complex acc = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      Complex term = 1.0;
      for (std::size_t l = 0; l < idx.size(); ++l) {
        const Complex c = basis_columns(static_cast<Eigen::Index>(idx[l]), static_cast<Eigen::Index>(i));
        term *= is_ket[l] ? c : std::conj(c);
      }
      acc += term;
    }
    out[f] = acc;
  }
  return out;
}

using Map = std::function<Matrix(const Matrix&)>;

// sum_ij |i><j| (x) map(|i><j|)
inline Matrix choi(const Map& map, std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  Matrix out = Matrix::Zero(n * n, n * n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      Matrix unit = Matrix::Zero(n, n);
      unit(i, j) = 1.0;
      out.block(i * n, j * n, n, n) = map(unit);
    }
  return out;
}

// U diag(d) U^dag for a known unitary and real spectrum.
inline Matrix from_spectrum(const Matrix& u, const std::vector<double>& d) {
  Matrix diag = Matrix::Zero(u.cols(), u.cols());
  for (std::size_t i = 0; i < d.size(); ++i) diag(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = d[i];
  return u * diag * u.adjoint();
}

// sum over the distinct values v of d: v * P_v rho P_v, with P_v built from
// the columns of u carrying that value.
inline Matrix fuzz_known(const Matrix& rho, const Matrix& u, const std::vector<double>& d) {
  std::vector<double> values;
  for (double v : d) {
    bool seen = false;
    for (double w : values) seen = seen || w == v;
    if (!seen) values.push_back(v);
  }
  Matrix out = Matrix::Zero(rho.rows(), rho.cols());
  for (double v : values) {
    Matrix p = Matrix::Zero(u.rows(), u.rows());
    for (std::size_t i = 0; i < d.size(); ++i)
      if (d[i] == v) p += u.col(static_cast<Eigen::Index>(i)) * u.col(static_cast<Eigen::Index>(i)).adjoint();
    out += v * p * rho * p;
  }
  return out;
}

// sqrt of U diag(d) U^dag, from the known spectrum.
inline Matrix sqrt_known(const Matrix& u, std::vector<double> d) {
  for (auto& x : d) x = std::sqrt(x);
  return from_spectrum(u, d);
}

// Denman-Beavers iteration for the principal square root of a positive
// definite matrix.
inline Matrix sqrt_iterative(const Matrix& s, int iterations = 60) {
  Matrix y = s, z = Matrix::Identity(s.rows(), s.cols());
  for (int k = 0; k < iterations; ++k) {
    const Matrix yi = y.inverse(), zi = z.inverse();
    y = 0.5 * (y + zi);
    z = 0.5 * (z + yi);
  }
  return y;
}

inline double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace oracle
