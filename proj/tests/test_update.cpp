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

#include "dmupdate/diagnostics.hpp"
#include "dmupdate/random.hpp"
#include "dmupdate/update.hpp"
#include "oracles.hpp"

using namespace dmu;

namespace {

Matrix diag(std::vector<double> d) {
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(d.size()), static_cast<Eigen::Index>(d.size()));
  for (std::size_t i = 0; i < d.size(); ++i) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = d[i];
  return m;
}

// A spectrum with deliberate repeats, drawn from {0, 0.5, 1, 2}.
std::vector<double> grouped_spectrum(Rng& rng, std::size_t n) {
  static const double values[] = {0.0, 0.5, 1.0, 2.0};
  std::vector<double> d(n);
  for (auto& x : d) x = values[uniform_index(rng, 0, 3)];
  return d;
}

}  // namespace

TEST_CASE("fuzz examples") {
  Rng rng(41);
  const DensityMatrix rho = random_density(rng, 3);
  CHECK(max_abs(fuzz(rho, DensityMatrix(identity(3))).matrix() - rho.matrix()) < 1e-12);

  const Projector p = random_projector_family(rng, 3).front();
  CHECK(max_abs(fuzz(rho, DensityMatrix(p.matrix())).matrix() - projector_update(rho, p).matrix()) < 1e-9);

  Matrix plus(2, 2);
  plus << 0.5, 0.5, 0.5, 0.5;
  CHECK(max_abs(fuzz(DensityMatrix(plus), DensityMatrix(diag({1, 2}))).matrix() - diag({0.5, 1.0})) < 1e-12);
}

TEST_CASE("fuzz matches the eigenspace sum for a known degenerate spectrum") {
  Rng rng(42);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = uniform_index(rng, 2, 6);
    const Matrix u = random_unitary(rng, n);
    const auto d = grouped_spectrum(rng, n);
    const DensityMatrix sigma(oracle::from_spectrum(u, d));
    const DensityMatrix rho = random_density(rng, n);
    CHECK(max_abs(fuzz(rho, sigma).matrix() - oracle::fuzz_known(rho.matrix(), u, d)) < 1e-9);
  }
}

TEST_CASE("fuzz does not depend on the eigenvector choice inside an eigenspace") {
  Rng rng(43);
  const Matrix u = random_unitary(rng, 4);
  const std::vector<double> d = {2.0, 2.0, 0.5, 0.5};
  const DensityMatrix sigma(oracle::from_spectrum(u, d));
  // Rotate within each degenerate block; sigma is unchanged, so the fuzz must be.
  Matrix w = Matrix::Identity(4, 4);
  w.block(0, 0, 2, 2) = random_unitary(rng, 2);
  w.block(2, 2, 2, 2) = random_unitary(rng, 2);
  const Matrix u2 = u * w;
  const DensityMatrix rho = random_density(rng, 4);
  CHECK(max_abs(fuzz(rho, sigma).matrix() - oracle::fuzz_known(rho.matrix(), u2, d)) < 1e-9);
  // A rank-1 refinement of the eigenspaces gives a different map.
  Matrix refined = Matrix::Zero(4, 4);
  for (int i = 0; i < 4; ++i) {
    const Matrix pi = u.col(i) * u.col(i).adjoint();
    refined += d[static_cast<std::size_t>(i)] * pi * rho.matrix() * pi;
  }
  CHECK(max_abs(fuzz(rho, sigma).matrix() - refined) > 1e-3);
}

TEST_CASE("phaser examples") {
  Rng rng(44);
  const DensityMatrix rho = random_density(rng, 3);
  CHECK(max_abs(phaser(rho, DensityMatrix(identity(3))).matrix() - rho.matrix()) < 1e-12);

  const PureState psi({Complex{0.6}, Complex{0.0, 0.8}});
  const DensityMatrix out = phaser(from_pure(psi), DensityMatrix(diag({4, 9})));
  const PureState phi({Complex{1.2}, Complex{0.0, 2.4}});
  CHECK(max_abs(out.matrix() - from_pure(phi).matrix()) < 1e-12);
}

TEST_CASE("phaser equals sqrt(sigma) rho sqrt(sigma) from a known spectrum") {
  Rng rng(45);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = uniform_index(rng, 2, 6);
    const Matrix u = random_unitary(rng, n);
    std::vector<double> d(n);
    for (auto& x : d) x = uniform(rng, 0.0, 3.0);
    if (t % 3 == 0) d[0] = 0.0;
    const Matrix root = oracle::sqrt_known(u, d);
    const DensityMatrix rho = random_density(rng, n);
    const DensityMatrix sigma(oracle::from_spectrum(u, d));
    const Matrix expect = root * rho.matrix() * root;
    CHECK(max_abs(phaser(rho, sigma).matrix() - expect) < 1e-9);
    CHECK(max_abs(phaser_as_spider(rho, sigma).matrix() - expect) < 1e-9);
  }
}

TEST_CASE("fuzz and phaser outputs are Hermitian PSD") {
  Rng rng(46);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = uniform_index(rng, 2, 6);
    const DensityMatrix rho = random_psd(rng, n), sigma = random_psd(rng, n, uniform_index(rng, 1, n));
    for (const auto& out : {fuzz(rho, sigma), phaser(rho, sigma)}) {
      CHECK(hermiticity_error(out.matrix()) < 1e-9);
      CHECK(min_eigenvalue(out.matrix()) > -1e-9);
    }
  }
}

TEST_CASE("phaser_general") {
  Rng rng(47);
  const DensityMatrix rho = random_density(rng, 4);
  const auto fam = random_projector_family(rng, 4);
  std::vector<std::pair<Complex, Projector>> ones, reals;
  Matrix sigma = Matrix::Zero(4, 4);
  for (const auto& p : fam) {
    ones.emplace_back(1.0, p);
    const double x = uniform(rng, 0.1, 2.0);
    reals.emplace_back(x, p);
    sigma += x * x * p.matrix();
  }
  CHECK(max_abs(phaser_general(rho, PhaserData(ones)).matrix() - rho.matrix()) < 1e-12);
  CHECK(max_abs(phaser_general(rho, PhaserData(reals)).matrix() -
                phaser(rho, DensityMatrix(sigma)).matrix()) < 1e-9);
  const auto rank_one = random_projector_family(rng, 4, true);
  CHECK_THROWS_AS(PhaserData({{1.0, rank_one.front()}}), IncompleteFamily);
}

TEST_CASE("phaser_pure examples and agreement with the phaser") {
  const double s = 1.0 / std::sqrt(2.0);
  const PureState psi({Complex{s}, Complex{s}});
  const PureState phi = phaser_pure(psi, DensityMatrix(diag({1, 4})));
  CHECK(std::abs(phi[0] - s) < 1e-12);
  CHECK(std::abs(phi[1] - 2.0 * s) < 1e-12);
  CHECK((phaser_pure(psi, DensityMatrix(identity(2))).amplitudes() - psi.amplitudes()).norm() < 1e-12);

  Rng rng(48);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = uniform_index(rng, 2, 5);
    const PureState p = random_pure(rng, n);
    const DensityMatrix sigma = random_psd(rng, n);
    CHECK(max_abs(from_pure(phaser_pure(p, sigma)).matrix() - phaser(from_pure(p), sigma).matrix()) < 1e-9);
    CHECK(std::abs(purity(phaser(from_pure(p), sigma)) - 1.0) < 1e-9);
  }
  CHECK_THROWS_AS(phaser_pure(PureState::basis(2, 1), DensityMatrix(diag({1, 0}))), ZeroTrace);
}

TEST_CASE("phaser_as_spider examples") {
  Rng rng(49);
  const DensityMatrix rho = random_density(rng, 3);
  CHECK(max_abs(phaser_as_spider(rho, DensityMatrix(identity(3))).matrix() - rho.matrix()) < 1e-12);
  const PureState r = random_pure(rng, 3);
  const DensityMatrix out = phaser_as_spider(rho, from_pure(r));
  const double z = (r.amplitudes().adjoint() * rho.matrix() * r.amplitudes())(0, 0).real();
  CHECK(max_abs(out.matrix() - z * from_pure(r).matrix()) < 1e-12);
  CHECK(max_abs(phaser_as_spider(rho, DensityMatrix(Matrix::Zero(3, 3))).matrix()) == 0.0);
}

TEST_CASE("phasers with commuting sigmas commute; generic ones do not") {
  Rng rng(50);
  const Matrix u = random_unitary(rng, 3);
  const DensityMatrix s1(oracle::from_spectrum(u, {1.0, 0.3, 2.0}));
  const DensityMatrix s2(oracle::from_spectrum(u, {0.2, 1.5, 0.7}));
  const DensityMatrix rho = random_density(rng, 3);
  CHECK(max_abs(phaser(phaser(rho, s1), s2).matrix() - phaser(phaser(rho, s2), s1).matrix()) < 1e-9);
  const DensityMatrix s3 = random_density(rng, 3);
  CHECK(max_abs(phaser(phaser(rho, s1), s3).matrix() - phaser(phaser(rho, s3), s1).matrix()) > 1e-3);
}

TEST_CASE("fixed-sigma mechanisms have PSD Choi matrices matching the unit-by-unit oracle") {
  Rng rng(51);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = uniform_index(rng, 2, 4);
    const DensityMatrix sigma = random_psd(rng, n);
    const Matrix cf = kraus_choi(fuzz_kraus(sigma));
    const Matrix cp = kraus_choi(phaser_kraus(sigma));
    CHECK(max_abs(cf - oracle::choi([&](const Matrix& m) { return apply_kraus(fuzz_kraus(sigma), m); }, n)) < 1e-12);
    CHECK(max_abs(cp - oracle::choi([&](const Matrix& m) {
                    const Matrix r = matrix_sqrt(sigma.matrix());
                    return Matrix(r * m * r);
                  }, n)) < 1e-9);
    CHECK(min_eigenvalue(cf) > -1e-9);
    CHECK(min_eigenvalue(cp) > -1e-9);
  }
}

TEST_CASE("trace_preservation_report") {
  CHECK(trace_preservation_report(TraceMechanism::Fuzz, DensityMatrix(identity(3)), 50).trace_preserving);
  const auto rep = trace_preservation_report(TraceMechanism::Fuzz, DensityMatrix(diag({1, 2})), 100);
  CHECK_FALSE(rep.trace_preserving);
  CHECK(rep.max_deviation > 1e-6);
  REQUIRE(rep.witness.has_value());
  // The reported witness reproduces the reported deviation.
  CHECK(std::abs(fuzz(*rep.witness, DensityMatrix(diag({1, 2}))).trace() - 1.0) ==
        Catch::Approx(rep.max_deviation));
  // The basis-state witness from the definition: |1><1| has trace 2 after the update.
  CHECK(fuzz(from_pure(PureState::basis(2, 1)), DensityMatrix(diag({1, 2}))).trace() == Catch::Approx(2.0));

  Rng rng(52);
  std::vector<std::pair<Complex, Projector>> phases;
  for (const auto& p : random_projector_family(rng, 4)) phases.emplace_back(std::polar(1.0, uniform(rng, 0, 6)), p);
  CHECK(trace_preservation_report(TraceMechanism::PhaserGeneral, PhaserData(phases), 100).trace_preserving);
  CHECK_THROWS(trace_preservation_report(TraceMechanism::Fuzz, DensityMatrix(identity(2)), 0));
  CHECK_THROWS(trace_preservation_report(TraceMechanism::PhaserGeneral, DensityMatrix(identity(2)), 5));
}

TEST_CASE("mechanisms reject mismatched dimensions and indefinite sigma") {
  const DensityMatrix rho = DensityMatrix::maximally_mixed(2);
  CHECK_THROWS_AS(fuzz(rho, DensityMatrix(identity(3))), DimensionMismatch);
  CHECK_THROWS_AS(phaser(rho, DensityMatrix(identity(3))), DimensionMismatch);
  CHECK_THROWS_AS(phaser_as_spider(rho, DensityMatrix(identity(3))), DimensionMismatch);
  CHECK_THROWS_AS(DensityMatrix(diag({1, -0.5})), NotPSD);
}
