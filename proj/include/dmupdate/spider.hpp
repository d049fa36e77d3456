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

// Spiders over a declared orthonormal basis, dense tensors and pairwise
// contraction of small spider networks.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "dmupdate/density.hpp"
#include "dmupdate/linalg.hpp"

namespace dmu {

inline constexpr std::size_t kMaxTensorSize = std::size_t{1} << 20;

class OrthonormalBasis {
 public:
  explicit OrthonormalBasis(std::vector<PureState> vectors)
      : vectors_(std::move(vectors)) {
    if (vectors_.empty()) throw DimensionMismatch("OrthonormalBasis: no vectors");
    const std::size_t n = vectors_.front().dim();
    if (vectors_.size() != n)
      throw DimensionMismatch("OrthonormalBasis: " + std::to_string(vectors_.size()) +
                              " vectors in dimension " + std::to_string(n));
    for (std::size_t i = 0; i < n; ++i) {
      require_same_dim(n, vectors_[i].dim(), "OrthonormalBasis");
      for (std::size_t j = i; j < n; ++j) {
        const Complex ip = vectors_[i].amplitudes().dot(vectors_[j].amplitudes());
        const double expected = i == j ? 1.0 : 0.0;
        if (std::abs(ip - expected) > kTolerance)
          throw DimensionMismatch("OrthonormalBasis: <b" + std::to_string(i) + "|b" +
                                  std::to_string(j) + "> = " +
                                  std::to_string(std::abs(ip)));
      }
    }
  }

  static OrthonormalBasis computational(std::size_t dim) {
    std::vector<PureState> v;
    for (std::size_t i = 0; i < dim; ++i) v.push_back(PureState::basis(dim, i));
    return OrthonormalBasis(std::move(v));
  }

  // Columns of a unitary.
  static OrthonormalBasis from_columns(const Matrix& u) {
    std::vector<PureState> v;
    for (Eigen::Index c = 0; c < u.cols(); ++c) v.emplace_back(Vector(u.col(c)));
    return OrthonormalBasis(std::move(v));
  }

  std::size_t dim() const noexcept { return vectors_.size(); }
  const PureState& operator[](std::size_t i) const { return vectors_[i]; }
  const std::vector<PureState>& vectors() const noexcept { return vectors_; }

  // Unitary whose columns are the basis vectors.
  Matrix unitary() const {
    const auto n = static_cast<Eigen::Index>(dim());
    Matrix u(n, n);
    for (Eigen::Index c = 0; c < n; ++c) u.col(c) = vectors_[c].amplitudes();
    return u;
  }

 private:
  std::vector<PureState> vectors_;
};

// Dense tensor, row-major over its legs (leg 0 most significant).
class Tensor {
 public:
  Tensor(std::vector<std::size_t> dims, std::vector<Complex> data,
         std::size_t cap = kMaxTensorSize)
      : dims_(std::move(dims)), data_(std::move(data)) {
    const std::size_t n = product(dims_);
    if (n > cap) throw SizeCap("Tensor: " + std::to_string(n) + " scalars exceeds cap");
    if (data_.size() != n)
      throw DimensionMismatch("Tensor: data length does not match leg dimensions");
    for (std::size_t d : dims_)
      if (d == 0) throw DimensionMismatch("Tensor: zero leg dimension");
  }

  static Tensor zeros(std::vector<std::size_t> dims, std::size_t cap = kMaxTensorSize) {
    const std::size_t n = product(dims);
    if (n > cap) throw SizeCap("Tensor: " + std::to_string(n) + " scalars exceeds cap");
    return Tensor(std::move(dims), std::vector<Complex>(n), cap);
  }

  // Legs (row, col).
  static Tensor from_matrix(const Matrix& m) {
    std::vector<Complex> data(m.data(), m.data() + m.size());
    return Tensor({static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols())},
                  std::move(data));
  }

  static Tensor from_state(const PureState& psi) {
    const Vector& v = psi.amplitudes();
    return Tensor({psi.dim()}, std::vector<Complex>(v.data(), v.data() + v.size()));
  }

  std::size_t rank() const noexcept { return dims_.size(); }
  const std::vector<std::size_t>& dims() const noexcept { return dims_; }
  const std::vector<Complex>& data() const noexcept { return data_; }
  std::size_t size() const noexcept { return data_.size(); }

  Complex scalar() const {
    if (!dims_.empty()) throw DimensionMismatch("Tensor::scalar: tensor has legs");
    return data_.front();
  }

  // Groups the first `row_legs` legs into rows and the rest into columns.
  Matrix to_matrix(std::size_t row_legs) const {
    if (row_legs > dims_.size())
      throw DimensionMismatch("Tensor::to_matrix: too many row legs");
    const std::size_t rows = product(std::span(dims_).first(row_legs));
    const std::size_t cols = size() / rows;
    Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    std::copy(data_.begin(), data_.end(), m.data());
    return m;
  }

  // New tensor whose leg k is this tensor's leg order[k].
  Tensor permuted(const std::vector<std::size_t>& order) const {
    if (order.size() != dims_.size())
      throw DimensionMismatch("Tensor::permuted: wrong permutation length");
    std::vector<std::size_t> new_dims(order.size());
    for (std::size_t k = 0; k < order.size(); ++k) new_dims[k] = dims_.at(order[k]);
    const auto old_strides = detail::strides_of(dims_);
    std::vector<std::size_t> src_stride(order.size());
    for (std::size_t k = 0; k < order.size(); ++k) src_stride[k] = old_strides[order[k]];

    std::vector<Complex> out(data_.size());
    std::vector<std::size_t> digits(order.size(), 0);
    std::size_t src = 0;
    for (std::size_t n = 0; n < out.size(); ++n) {
      out[n] = data_[src];
      for (std::size_t k = order.size(); k-- > 0;) {
        if (++digits[k] < new_dims[k]) {
          src += src_stride[k];
          break;
        }
        src -= (new_dims[k] - 1) * src_stride[k];
        digits[k] = 0;
      }
    }
    return Tensor(std::move(new_dims), std::move(out));
  }

 private:
  std::vector<std::size_t> dims_;
  std::vector<Complex> data_;
};

// Ket legs carry the basis vector, bra legs its conjugate.
enum class Leg { Ket, Bra };

// sum_i (x) over legs of b_i or conj(b_i), in the given leg order.
inline Tensor spider_tensor(const OrthonormalBasis& basis, const std::vector<Leg>& legs,
                            std::size_t cap = kMaxTensorSize) {
  const std::size_t d = basis.dim();
  std::vector<std::size_t> dims(legs.size(), d);
  Tensor t = Tensor::zeros(dims, cap);
  std::vector<Complex> data(t.size(), Complex{});
  std::vector<std::size_t> digits(legs.size(), 0);
  for (std::size_t n = 0; n < data.size(); ++n) {
    Complex acc{};
    for (std::size_t i = 0; i < d; ++i) {
      Complex term{1.0, 0.0};
      for (std::size_t k = 0; k < legs.size(); ++k) {
        const Complex c = basis[i][digits[k]];
        term *= legs[k] == Leg::Ket ? c : std::conj(c);
      }
      acc += term;
    }
    data[n] = acc;
    for (std::size_t k = legs.size(); k-- > 0;) {
      if (++digits[k] < d) break;
      digits[k] = 0;
    }
  }
  return Tensor(std::move(dims), std::move(data), cap);
}

// sum_i |i...i><i...i| with `legs_in` bra legs and `legs_out` ket legs.
// Tensor legs are ordered outputs first, then inputs.
struct SpiderTensor {
  OrthonormalBasis basis;
  std::size_t legs_in;
  std::size_t legs_out;
  Tensor tensor;

  Matrix as_matrix() const { return tensor.to_matrix(legs_out); }
};

inline SpiderTensor make_spider(const OrthonormalBasis& basis, std::size_t legs_in,
                                std::size_t legs_out, std::size_t cap = kMaxTensorSize) {
  if (legs_in + legs_out == 0)
    throw DimensionMismatch("make_spider: a spider needs at least one leg");
  std::vector<Leg> legs(legs_out, Leg::Ket);
  legs.insert(legs.end(), legs_in, Leg::Bra);
  return {basis, legs_in, legs_out, spider_tensor(basis, legs, cap)};
}

inline SpiderTensor cap(const OrthonormalBasis& basis) { return make_spider(basis, 0, 2); }
inline SpiderTensor cup(const OrthonormalBasis& basis) { return make_spider(basis, 2, 0); }

inline const Tensor& as_tensor(const Tensor& t) { return t; }
inline const Tensor& as_tensor(const SpiderTensor& s) { return s.tensor; }
inline Tensor as_tensor(const Matrix& m) { return Tensor::from_matrix(m); }
inline Tensor as_tensor(const PureState& psi) { return Tensor::from_state(psi); }

using LegPair = std::pair<std::size_t, std::size_t>;

// Einstein contraction over the paired legs. The result carries a's free legs
// in order, followed by b's free legs in order.
inline Tensor contract_tensors(const Tensor& a, const Tensor& b,
                               const std::vector<LegPair>& leg_pairs,
                               std::size_t cap = kMaxTensorSize) {
  std::vector<bool> used_a(a.rank(), false), used_b(b.rank(), false);
  std::vector<std::size_t> pa, pb;
  for (const auto& [la, lb] : leg_pairs) {
    if (la >= a.rank() || lb >= b.rank())
      throw DimensionMismatch("contract: leg index out of range");
    if (used_a[la] || used_b[lb]) throw DimensionMismatch("contract: leg used twice");
    if (a.dims()[la] != b.dims()[lb])
      throw DimensionMismatch("contract: paired legs have dimensions " +
                              std::to_string(a.dims()[la]) + " and " +
                              std::to_string(b.dims()[lb]));
    used_a[la] = used_b[lb] = true;
    pa.push_back(la);
    pb.push_back(lb);
  }
  std::vector<std::size_t> order_a, order_b(pb), out_dims;
  for (std::size_t k = 0; k < a.rank(); ++k)
    if (!used_a[k]) {
      order_a.push_back(k);
      out_dims.push_back(a.dims()[k]);
    }
  const std::size_t free_a = order_a.size();
  order_a.insert(order_a.end(), pa.begin(), pa.end());
  for (std::size_t k = 0; k < b.rank(); ++k)
    if (!used_b[k]) {
      order_b.push_back(k);
      out_dims.push_back(b.dims()[k]);
    }
  const std::size_t out_size = product(out_dims);
  if (out_size > cap)
    throw SizeCap("contract: result of " + std::to_string(out_size) +
                  " scalars exceeds cap");

  const Matrix ma = a.permuted(order_a).to_matrix(free_a);
  const Matrix mb = b.permuted(order_b).to_matrix(pb.size());
  const Matrix prod = ma * mb;
  return Tensor(std::move(out_dims),
                std::vector<Complex>(prod.data(), prod.data() + prod.size()), cap);
}

template <class A, class B>
Tensor contract(const A& a, const B& b, const std::vector<LegPair>& leg_pairs,
                std::size_t cap = kMaxTensorSize) {
  return contract_tensors(as_tensor(a), as_tensor(b), leg_pairs, cap);
}

// sum_i x_i |b_i><b_i|, computed by plugging sum_i x_i |b_i> into one input
// leg of the one-output two-input spider.
inline Matrix phase_apply(const OrthonormalBasis& basis, const PureState& x) {
  require_same_dim(basis.dim(), x.dim(), "phase_apply");
  const SpiderTensor merge = make_spider(basis, 2, 1);
  const PureState plugged(basis.unitary() * x.amplitudes());
  const Tensor op = contract(merge, plugged, {{2, 0}});
  return op.to_matrix(1);
}

}  // namespace dmu
