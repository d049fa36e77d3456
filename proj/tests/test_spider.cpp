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


#include <catch2/catch_amalgamated.hpp>

#include "dmupdate/random.hpp"
#include "dmupdate/spider.hpp"
#include "oracles.hpp"

using namespace dmu;

namespace {

double max_diff(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  REQUIRE(a.size() == b.size());
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

std::vector<bool> ket_flags(std::size_t outs, std::size_t ins) {
  std::vector<bool> f(outs, true);
  f.insert(f.end(), ins, false);
  return f;
}

}  // namespace

TEST_CASE("OrthonormalBasis validation") {
  CHECK_NOTHROW(OrthonormalBasis::computational(3));
  CHECK_THROWS(OrthonormalBasis({PureState({Complex{1}, Complex{0}}), PureState({Complex{1}, Complex{1}})}));
  CHECK_THROWS(OrthonormalBasis({PureState({Complex{2}, Complex{0}}), PureState({Complex{0}, Complex{1}})}));
}

TEST_CASE("one-in one-out spider is the identity") {
  Rng rng(31);
  CHECK(max_abs(make_spider(OrthonormalBasis::computational(3), 1, 1).as_matrix() - identity(3)) == 0.0);
  CHECK(max_abs(make_spider(random_basis(rng, 3), 1, 1).as_matrix() - identity(3)) < 1e-12);
}

TEST_CASE("cap is sum_i |ii>") {
  const Tensor c = cap(OrthonormalBasis::computational(3)).tensor;
  REQUIRE(c.dims() == std::vector<std::size_t>{3, 3});
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(c.data()[i * 3 + j] == Complex(i == j ? 1.0 : 0.0));
}

TEST_CASE("merge spider sends |ij> to delta_ij |i>") {
  const Matrix m = make_spider(OrthonormalBasis::computational(2), 2, 1).as_matrix();
  REQUIRE(m.rows() == 2);
  REQUIRE(m.cols() == 4);
  for (Eigen::Index i = 0; i < 2; ++i)
    for (Eigen::Index j = 0; j < 2; ++j) {
      Vector in = Vector::Zero(4);
      in[i * 2 + j] = 1.0;
      Vector expect = Vector::Zero(2);
      if (i == j) expect[i] = 1.0;
      CHECK((m * in - expect).norm() == 0.0);
    }
}

TEST_CASE("spider entries match the defining sum") {
  Rng rng(32);
  for (std::size_t d = 1; d <= 3; ++d) {
    const OrthonormalBasis b = random_basis(rng, d);
    for (std::size_t ins = 0; ins <= 2; ++ins)
      for (std::size_t outs = 0; outs <= 2; ++outs) {
        if (ins + outs == 0) continue;
        CHECK(max_diff(make_spider(b, ins, outs).tensor.data(),
                       oracle::spider_entries(b.unitary(), ket_flags(outs, ins))) < 1e-12);
      }
  }
}

TEST_CASE("contraction basics") {
  const auto c = contract(identity(3), identity(3), {{1, 0}});
  CHECK(max_abs(c.to_matrix(1) - identity(3)) == 0.0);
  Rng rng(33);
  const OrthonormalBasis b = random_basis(rng, 3);
  const Tensor circle = contract(cap(b), cup(b), {{0, 0}, {1, 1}});
  CHECK(circle.rank() == 0);
  CHECK(std::abs(circle.scalar() - 3.0) < 1e-12);

  const Matrix a = random_ginibre(rng, 2, 3), m = random_ginibre(rng, 3, 4);
  CHECK(max_abs(contract(a, m, {{1, 0}}).to_matrix(1) - a * m) < 1e-12);
  CHECK_THROWS_AS(contract(a, m, {{0, 0}}), DimensionMismatch);
  CHECK_THROWS_AS(contract(a, m, {{1, 0}, {1, 1}}), DimensionMismatch);
}

TEST_CASE("spider(2,1) after spider(1,2) fuses to spider(2,2)") {
  Rng rng(34);
  for (const auto& b : {OrthonormalBasis::computational(2), random_basis(rng, 3)}) {
    // Copy: 1 in, 2 out. Merge: 2 in, 1 out. Wire the merge's output into
    // the copy's input.
    const SpiderTensor copy = make_spider(b, 1, 2), merge = make_spider(b, 2, 1);
    const Tensor fused = contract(copy, merge, {{2, 0}});
    // Legs: copy outs (2), merge ins (2).
    CHECK(max_diff(fused.data(), make_spider(b, 2, 2).tensor.data()) < 1e-12);
  }
}

TEST_CASE("size cap on spiders and contractions") {
  CHECK_THROWS_AS(make_spider(OrthonormalBasis::computational(4), 6, 5), SizeCap);
  CHECK_THROWS_AS(make_spider(OrthonormalBasis::computational(2), 2, 2, 8), SizeCap);
  CHECK_THROWS_AS(make_spider(OrthonormalBasis::computational(2), 0, 0), DimensionMismatch);
}

TEST_CASE("phase_apply examples") {
  const auto comp = OrthonormalBasis::computational(2);
  CHECK(max_abs(phase_apply(comp, PureState({Complex{1}, Complex{1}})) - identity(2)) < 1e-15);
  Matrix e00 = Matrix::Zero(2, 2);
  e00(0, 0) = 1.0;
  CHECK(max_abs(phase_apply(comp, PureState({Complex{1}, Complex{0}})) - e00) < 1e-15);
  CHECK_THROWS_AS(phase_apply(comp, PureState::basis(3, 0)), DimensionMismatch);
}

TEST_CASE("phase_apply recovers its weights and basis") {
  Rng rng(35);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = uniform_index(rng, 2, 4);
    const OrthonormalBasis b = random_basis(rng, n);
    const PureState x = random_pure(rng, n);
    const Matrix m = phase_apply(b, x);
    for (std::size_t i = 0; i < n; ++i) {
      const Vector& bi = b[i].amplitudes();
      CHECK((m * bi - x[i] * bi).norm() < 1e-12);
    }
    Matrix expect = Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) expect += x[i] * b[i].amplitudes() * b[i].amplitudes().adjoint();
    CHECK(oracle::max_abs(m - expect) < 1e-12);
  }
}

TEST_CASE("phase_apply with unimodular weights is unitary") {
  Rng rng(36);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = uniform_index(rng, 2, 5);
    Vector x(static_cast<Eigen::Index>(n));
    for (auto& z : x) z = std::polar(1.0, uniform(rng, 0.0, 6.3));
    const Matrix u = phase_apply(random_basis(rng, n), PureState(x));
    CHECK(max_abs(u * u.adjoint() - identity(n)) < 1e-9);
  }
}

TEST_CASE("Tensor permutation and matrix views") {
  Rng rng(37);
  const Matrix a = random_ginibre(rng, 2, 3);
  const Tensor t = Tensor::from_matrix(a);
  CHECK(max_abs(t.permuted({1, 0}).to_matrix(1) - a.transpose()) == 0.0);
  CHECK(max_abs(t.to_matrix(1) - a) == 0.0);
}
