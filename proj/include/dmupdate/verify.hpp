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

// Property suite: the algebraic identities, normalization results and
// counterexample witnesses of the update mechanisms, checked on seeded
// random inputs. Every check reports its largest observed deviation (or,
// for witnesses, the margin found) and never throws on failure.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "dmupdate/ddm.hpp"
#include "dmupdate/density.hpp"
#include "dmupdate/diagnostics.hpp"
#include "dmupdate/random.hpp"
#include "dmupdate/spider.hpp"
#include "dmupdate/update.hpp"

namespace dmu::verify {

inline constexpr std::uint64_t kDefaultSeed = 20190520;
// Seed of the shipped counterexample witnesses.
inline constexpr std::uint64_t kWitnessSeed = 7;
inline constexpr double kWitnessMargin = 1e-3;

struct Options {
  std::uint64_t seed = kDefaultSeed;
  std::size_t trials = 100;
  std::size_t dim_lo = 2;
  std::size_t dim_hi = 5;
};

struct Result {
  std::string name;
  bool pass = false;
  // Largest deviation from the identity, or the witness margin for
  // existence checks (see `is_witness`).
  double value = 0.0;
  bool is_witness = false;
  double threshold = 0.0;
  std::string detail;
  double seconds = 0.0;
};

using PhaserFn = std::function<DensityMatrix(const DensityMatrix&, const DensityMatrix&)>;

namespace detail {

inline std::size_t pick_dim(Rng& rng, const Options& o) {
  return uniform_index(rng, o.dim_lo, std::max(o.dim_lo, o.dim_hi));
}

inline Result identity_result(std::string name, double max_dev, double tol, std::string detail) {
  Result r;
  r.name = std::move(name);
  r.value = max_dev;
  r.threshold = tol;
  r.pass = max_dev < tol;
  r.detail = std::move(detail);
  return r;
}

inline Result witness_result(std::string name, double margin, std::string detail) {
  Result r;
  r.name = std::move(name);
  r.value = margin;
  r.is_witness = true;
  r.threshold = kWitnessMargin;
  r.pass = margin > kWitnessMargin;
  r.detail = std::move(detail);
  return r;
}

template <class F>
Result timed(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  Result r = f();
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

// Spectrum of sigma with all eigenvalues strictly positive and spread out.
inline DensityMatrix random_sigma(Rng& rng, std::size_t dim) { return random_psd(rng, dim); }

}  // namespace detail

// phaser_as_spider (spider route) against the phaser sqrt(sigma) rho sqrt(sigma).
inline Result phaser_spider_identity(const Options& o, const PhaserFn& phaser_impl = phaser) {
  Rng rng(o.seed);
  double worst = 0.0;
  for (std::size_t t = 0; t < o.trials; ++t) {
    const std::size_t n = detail::pick_dim(rng, o);
    const DensityMatrix rho = random_density(rng, n);
    const DensityMatrix sigma = t % 3 == 2 ? random_psd(rng, n, 1) : detail::random_sigma(rng, n);
    worst = std::max(worst, max_abs(phaser_as_spider(rho, sigma).matrix() -
                                    phaser_impl(rho, sigma).matrix()));
  }
  return detail::identity_result("phaser equals spider action", worst, 1e-9,
                                 std::to_string(o.trials) + " random (rho, sigma)");
}

// Pure first argument: output pure, and phi_i = psi_i x_i in sigma's eigenbasis.
inline Result phaser_pure_outputs(const Options& o) {
  Rng rng(o.seed + 1);
  double worst = 0.0;
  for (std::size_t t = 0; t < o.trials; ++t) {
    const std::size_t n = detail::pick_dim(rng, o);
    const PureState psi = random_pure(rng, n);
    const DensityMatrix sigma = detail::random_sigma(rng, n);
    const DensityMatrix out = phaser(from_pure(psi), sigma);
    worst = std::max(worst, std::abs(purity(out) - 1.0));

    const auto es = hermitian_eigensystem(sigma.matrix());
    const Vector psi_b = es.vectors.adjoint() * psi.amplitudes();
    const Vector phi_b = es.vectors.adjoint() * phaser_pure(psi, sigma).amplitudes();
    for (Eigen::Index i = 0; i < psi_b.size(); ++i)
      worst = std::max(worst, std::abs(phi_b[i] - psi_b[i] * std::sqrt(std::max(0.0, es.values[i]))));
    worst = std::max(worst, max_abs(from_pure(phaser_pure(psi, sigma)).matrix() - out.matrix()));
  }
  return detail::identity_result("pure phaser input stays pure, phi_i = psi_i x_i", worst, 1e-9,
                                 std::to_string(o.trials) + " random (psi, sigma)");
}

namespace detail {

// Runs the trace report on each case and checks that it flags
// trace-preservation exactly when expected, finding a witness above 1e-6
// otherwise.
struct NormCase {
  std::string label;
  TraceOperand operand;
  bool expect_preserving;
};

inline Result normalization_result(std::string name, TraceMechanism m,
                                   const std::vector<NormCase>& cases, const Options& o) {
  const std::size_t samples = std::max<std::size_t>(o.trials, 100);
  bool ok = true;
  double worst_preserving = 0.0;
  double weakest_witness = 1e300;
  std::string failed;
  for (std::size_t k = 0; k < cases.size(); ++k) {
    const auto rep = trace_preservation_report(m, cases[k].operand, samples, o.seed + 100 + k);
    if (cases[k].expect_preserving) {
      worst_preserving = std::max(worst_preserving, rep.max_deviation);
      if (!rep.trace_preserving) {
        ok = false;
        failed += cases[k].label + " not flagged preserving; ";
      }
    } else {
      weakest_witness = std::min(weakest_witness, rep.max_deviation);
      if (rep.trace_preserving || rep.max_deviation <= 1e-6) {
        ok = false;
        failed += cases[k].label + " lacks a witness; ";
      }
    }
  }
  Result r;
  r.name = std::move(name);
  r.pass = ok;
  r.value = worst_preserving;
  r.threshold = 1e-9;
  r.detail = std::to_string(cases.size()) + " operators x " + std::to_string(samples) +
             " states; weakest witness " + std::to_string(weakest_witness) +
             (failed.empty() ? "" : "; FAILED: " + failed);
  return r;
}

}  // namespace detail

// The fuzz preserves trace exactly when every weight is 1 (decoherence).
inline Result fuzz_normalisation(const Options& o) {
  Rng rng(o.seed + 2);
  std::vector<detail::NormCase> cases;
  for (std::size_t n = o.dim_lo; n <= o.dim_hi; ++n) {
    cases.push_back({"sigma = I (dim " + std::to_string(n) + ")", DensityMatrix(identity(n)), true});
    std::vector<std::pair<double, Projector>> rank_one, grouped, bumped;
    for (auto& p : random_projector_family(rng, n, true)) rank_one.emplace_back(1.0, p);
    for (auto& p : random_projector_family(rng, n)) grouped.emplace_back(1.0, p);
    cases.push_back({"rank-1 decoherence", FuzzData(rank_one), true});
    cases.push_back({"partial decoherence", FuzzData(grouped), true});
    bumped = rank_one;
    bumped.back().first = 1.001;
    cases.push_back({"one weight 1.001", FuzzData(bumped), false});
    const Matrix u = random_unitary(rng, n);
    RealVector spectrum(static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < spectrum.size(); ++i) spectrum[i] = 1.0;
    spectrum[0] = 0.5;
    cases.push_back({"sigma with eigenvalue 0.5",
                     DensityMatrix(u * spectrum.cast<Complex>().asDiagonal() * u.adjoint()), false});
    cases.push_back({"sigma = 2I", DensityMatrix(2.0 * identity(n)), false});
    cases.push_back({"random sigma", random_density(rng, n), false});
  }
  return detail::normalization_result("fuzz is trace-preserving iff all weights are 1",
                                      TraceMechanism::Fuzz, cases, o);
}

// The general phaser preserves trace exactly when every |x_i| = 1.
inline Result phaser_normalisation(const Options& o) {
  Rng rng(o.seed + 3);
  std::vector<detail::NormCase> cases;
  for (std::size_t n = o.dim_lo; n <= o.dim_hi; ++n) {
    const auto fam = random_projector_family(rng, n);
    std::vector<std::pair<Complex, Projector>> phases, scaled, real;
    for (const auto& p : fam) {
      const double theta = uniform(rng, 0.0, 6.283185307179586);
      phases.emplace_back(std::polar(1.0, theta), p);
      scaled.emplace_back(std::polar(1.0, theta), p);
      real.emplace_back(uniform(rng, 0.2, 1.8), p);
    }
    scaled.front().first *= 1.001;
    cases.push_back({"unimodular phases", PhaserData(phases), true});
    cases.push_back({"one |x| = 1.001", PhaserData(scaled), false});
    cases.push_back({"random real weights", PhaserData(real), false});
  }
  return detail::normalization_result("general phaser is trace-preserving iff all |x_i| = 1",
                                      TraceMechanism::PhaserGeneral, cases, o);
}

// ddm_update through ddm_from_fuzz / ddm_from_phaser reproduces fuzz / phaser.
inline Result unification(const Options& o) {
  Rng rng(o.seed + 4);
  double worst = 0.0;
  for (std::size_t t = 0; t < o.trials; ++t) {
    const std::size_t n = detail::pick_dim(rng, o);
    const DensityMatrix rho = random_density(rng, n);
    // Mix in degenerate spectra so eigenspace grouping is exercised.
    DensityMatrix sigma = detail::random_sigma(rng, n);
    if (t % 4 == 3) {
      const auto fam = random_projector_family(rng, n);
      Matrix s = Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
      for (std::size_t k = 0; k < fam.size(); ++k) s += static_cast<double>(k) * fam[k].matrix();
      sigma = DensityMatrix(s);
    }
    worst = std::max(worst, max_abs(ddm_update(rho, ddm_from_fuzz(sigma)).matrix() -
                                    fuzz(rho, sigma).matrix()));
    worst = std::max(worst, max_abs(ddm_update(rho, ddm_from_phaser(sigma)).matrix() -
                                    phaser(rho, sigma).matrix()));
  }
  return detail::identity_result("DDM update unifies fuzz and phaser", worst, 1e-9,
                                 std::to_string(o.trials) + " random (rho, sigma), both reductions");
}

// Choi matrices of DDM channels are PSD; canonical Kraus factors are Hermitian PSD.
inline Result ddm_internality(const Options& o) {
  Rng rng(o.seed + 5);
  const std::size_t count = std::max<std::size_t>(o.trials / 2, 50);
  double worst = 0.0;
  for (std::size_t t = 0; t < count; ++t) {
    const std::size_t n = uniform_index(rng, 2, 4);
    const DoubleDensityMatrix d = random_ddm(rng, n);
    const Matrix choi = choi_matrix(d);
    worst = std::max(worst, hermiticity_error(choi));
    worst = std::max(worst, std::max(0.0, -min_eigenvalue(choi)));
    for (const auto& a : canonical_kraus(d)) {
      worst = std::max(worst, hermiticity_error(a));
      worst = std::max(worst, std::max(0.0, -min_eigenvalue(a)));
    }
  }
  return detail::identity_result("DDM channels are completely positive", worst, 1e-9,
                                 std::to_string(count) + " random DDMs, dims 2..4");
}

namespace detail {

using Binary = DensityMatrix (*)(const DensityMatrix&, const DensityMatrix&);

// Searches seeded random inputs for the first case exceeding the margin;
// returns the best margin found.
template <class Gap>
double find_witness(std::uint64_t seed, Gap&& gap) {
  Rng rng(seed);
  double best = 0.0;
  for (int attempt = 0; attempt < 100 && best <= kWitnessMargin; ++attempt)
    best = std::max(best, gap(rng));
  return best;
}

inline double non_additivity(Binary op, Rng& rng) {
  const DensityMatrix rho = random_density(rng, 3);
  const DensityMatrix s1 = random_density(rng, 3);
  const DensityMatrix s2 = random_density(rng, 3);
  const DensityMatrix sum(s1.matrix() + s2.matrix());
  return max_abs(op(rho, sum).matrix() - op(rho, s1).matrix() - op(rho, s2).matrix());
}

inline double non_associativity(Binary op, Rng& rng) {
  const DensityMatrix a = random_density(rng, 3);
  const DensityMatrix b = random_density(rng, 3);
  const DensityMatrix c = random_density(rng, 3);
  return max_abs(op(op(a, b), c).matrix() - op(a, op(b, c)).matrix());
}

inline DensityMatrix fuzz_op(const DensityMatrix& r, const DensityMatrix& s) { return fuzz(r, s); }
inline DensityMatrix phaser_op(const DensityMatrix& r, const DensityMatrix& s) { return phaser(r, s); }

}  // namespace detail

// Neither mechanism is additive in sigma or associative.
inline std::vector<Result> non_internality_witnesses() {
  using detail::find_witness;
  std::vector<Result> out;
  const std::pair<const char*, detail::Binary> ops[] = {{"fuzz", detail::fuzz_op},
                                                        {"phaser", detail::phaser_op}};
  for (const auto& [label, op] : ops) {
    out.push_back(detail::witness_result(
        std::string(label) + " is not additive in sigma",
        find_witness(kWitnessSeed, [op = op](Rng& r) { return detail::non_additivity(op, r); }),
        "fixed-seed witness, dim 3"));
    out.push_back(detail::witness_result(
        std::string(label) + " is not associative",
        find_witness(kWitnessSeed + 1, [op = op](Rng& r) { return detail::non_associativity(op, r); }),
        "fixed-seed witness, dim 3"));
  }
  return out;
}

// Phasers with non-commuting sigmas do not commute; commuting ones do.
inline std::vector<Result> phaser_commutation(const Options& o) {
  std::vector<Result> out;
  out.push_back(detail::witness_result(
      "phasers in different eigenbases do not commute",
      detail::find_witness(kWitnessSeed + 2,
                           [](Rng& rng) {
                             const DensityMatrix rho = random_density(rng, 3);
                             const DensityMatrix s1 = random_density(rng, 3);
                             const DensityMatrix s2 = random_density(rng, 3);
                             return max_abs(phaser(phaser(rho, s1), s2).matrix() -
                                            phaser(phaser(rho, s2), s1).matrix());
                           }),
      "fixed-seed witness, dim 3"));

  Rng rng(o.seed + 6);
  double worst = 0.0;
  for (std::size_t t = 0; t < o.trials; ++t) {
    const std::size_t n = detail::pick_dim(rng, o);
    const Matrix u = random_unitary(rng, n);
    auto diag_in_u = [&] {
      RealVector d(static_cast<Eigen::Index>(n));
      for (Eigen::Index i = 0; i < d.size(); ++i) d[i] = uniform(rng, 0.0, 2.0);
      return DensityMatrix(hermitian_part(u * d.cast<Complex>().asDiagonal() * u.adjoint()));
    };
    const DensityMatrix s1 = diag_in_u(), s2 = diag_in_u();
    const DensityMatrix rho = random_density(rng, n);
    worst = std::max(worst, max_abs(phaser(phaser(rho, s1), s2).matrix() -
                                    phaser(phaser(rho, s2), s1).matrix()));
  }
  out.push_back(detail::identity_result("phasers sharing an eigenbasis commute", worst, 1e-9,
                                        std::to_string(o.trials) + " random commuting pairs"));
  return out;
}

// Fusion of two spiders over a shared basis along k >= 1 output->input legs,
// compared with the merged spider. Legs of the contraction result are a's
// remaining outputs, a's inputs, b's outputs, b's remaining inputs.
inline double fusion_deviation(const OrthonormalBasis& ba, const OrthonormalBasis& bb,
                               std::size_t m1, std::size_t n1, std::size_t m2, std::size_t n2,
                               std::size_t k) {
  const SpiderTensor a = make_spider(ba, m1, n1);
  const SpiderTensor b = make_spider(bb, m2, n2);
  std::vector<LegPair> pairs;
  for (std::size_t j = 0; j < k; ++j) pairs.emplace_back(j, n2 + j);
  const Tensor fused = contract(a, b, pairs);
  std::vector<Leg> legs(n1 - k, Leg::Ket);
  legs.insert(legs.end(), m1, Leg::Bra);
  legs.insert(legs.end(), n2, Leg::Ket);
  legs.insert(legs.end(), m2 - k, Leg::Bra);
  const Tensor merged = spider_tensor(ba, legs);
  double worst = 0.0;
  for (std::size_t i = 0; i < merged.size(); ++i)
    worst = std::max(worst, std::abs(merged.data()[i] - fused.data()[i]));
  return worst;
}

// Exhaustive over m, n <= 3 for both spiders, dims 1..3, computational and
// random bases.
inline Result spider_fusion(const Options& o) {
  Rng rng(o.seed + 7);
  double worst = 0.0;
  std::size_t cases = 0;
  for (std::size_t d = 1; d <= 3; ++d) {
    const OrthonormalBasis bases[] = {OrthonormalBasis::computational(d), random_basis(rng, d)};
    for (const auto& basis : bases)
      for (std::size_t m1 = 0; m1 <= 3; ++m1)
        for (std::size_t n1 = 1; n1 <= 3; ++n1)
          for (std::size_t m2 = 1; m2 <= 3; ++m2)
            for (std::size_t n2 = 0; n2 <= 3; ++n2)
              for (std::size_t k = 1; k <= std::min(n1, m2); ++k) {
                worst = std::max(worst, fusion_deviation(basis, basis, m1, n1, m2, n2, k));
                ++cases;
              }
  }
  return detail::identity_result("spider fusion", worst, 1e-12,
                                 std::to_string(cases) + " exhaustive contractions");
}

// Spiders over bases with <r|b> = 0.8 do not fuse.
// A copy spider (1 in, 2 out) feeding a merge spider (2 in, 1 out) along one
// leg; the one-in-one-out spider is the identity in every basis, so it cannot
// serve as the witness.
inline Result spider_basis_dependence() {
  const double s = 0.8, c = 0.6;
  const OrthonormalBasis r = OrthonormalBasis::computational(2);
  const OrthonormalBasis b(
      {PureState({Complex{s}, Complex{c}}), PureState({Complex{-c}, Complex{s}})});
  return detail::witness_result("spiders over different bases do not fuse",
                                fusion_deviation(r, b, 1, 2, 2, 1, 1), "<r|b> = 0.8, dim 2");
}

// For fixed sigma both mechanisms are CP in rho: Choi matrices are PSD.
inline Result fixed_sigma_cp(const Options& o) {
  Rng rng(o.seed + 8);
  double worst = 0.0;
  for (std::size_t t = 0; t < o.trials; ++t) {
    const std::size_t n = detail::pick_dim(rng, o);
    const DensityMatrix sigma = detail::random_sigma(rng, n);
    for (const auto& kraus : {fuzz_kraus(sigma), phaser_kraus(sigma)}) {
      const Matrix choi = kraus_choi(kraus);
      worst = std::max(worst, std::max(0.0, -min_eigenvalue(choi)));
    }
  }
  return detail::identity_result("fuzz and phaser are CP in rho for fixed sigma", worst, 1e-9,
                                 std::to_string(o.trials) + " random sigma");
}

// Rescaling a factor (y -> c^2 y, x -> x / c) and canonicalization keep the map.
inline Result ddm_scaling_covariance(const Options& o) {
  Rng rng(o.seed + 9);
  double worst = 0.0;
  for (std::size_t t = 0; t < o.trials; ++t) {
    const std::size_t n = detail::pick_dim(rng, o);
    const DoubleDensityMatrix d = random_ddm(rng, n);
    const Matrix ref = choi_matrix(d);
    const std::size_t k = uniform_index(rng, 0, d.factors().size() - 1);
    worst = std::max(worst, max_abs(choi_matrix(rescale_factor(d, k, uniform(rng, 0.2, 5.0))) - ref));
    worst = std::max(worst, max_abs(choi_matrix(canonicalize(d)) - ref));
  }
  return detail::identity_result("DDM rescaling and canonical form preserve the map", worst, 1e-9,
                                 std::to_string(o.trials) + " random DDMs");
}

// The DDM channel is linear in rho.
inline Result ddm_linearity(const Options& o) {
  Rng rng(o.seed + 10);
  double worst = 0.0;
  for (std::size_t t = 0; t < o.trials; ++t) {
    const std::size_t n = detail::pick_dim(rng, o);
    const DoubleDensityMatrix d = random_ddm(rng, n);
    const DensityMatrix r1 = random_density(rng, n), r2 = random_density(rng, n);
    const double a = uniform(rng, 0.0, 2.0), b = uniform(rng, 0.0, 2.0);
    const DensityMatrix mix(a * r1.matrix() + b * r2.matrix());
    worst = std::max(worst, max_abs(ddm_update(mix, d).matrix() -
                                    a * ddm_update(r1, d).matrix() - b * ddm_update(r2, d).matrix()));
  }
  return detail::identity_result("DDM update is linear in rho", worst, 1e-9,
                                 std::to_string(o.trials) + " random (DDM, rho1, rho2)");
}

// Everything above, in a fixed order.
inline std::vector<Result> run_all(const Options& o) {
  std::vector<Result> out;
  out.push_back(detail::timed([&] { return phaser_spider_identity(o); }));
  out.push_back(detail::timed([&] { return phaser_pure_outputs(o); }));
  out.push_back(detail::timed([&] { return fuzz_normalisation(o); }));
  out.push_back(detail::timed([&] { return phaser_normalisation(o); }));
  out.push_back(detail::timed([&] { return unification(o); }));
  out.push_back(detail::timed([&] { return ddm_internality(o); }));
  for (auto& r : non_internality_witnesses()) out.push_back(std::move(r));
  out.push_back(detail::timed([&] { return spider_fusion(o); }));
  out.push_back(spider_basis_dependence());
  for (auto& r : phaser_commutation(o)) out.push_back(std::move(r));
  out.push_back(detail::timed([&] { return fixed_sigma_cp(o); }));
  out.push_back(detail::timed([&] { return ddm_scaling_covariance(o); }));
  out.push_back(detail::timed([&] { return ddm_linearity(o); }));
  return out;
}

inline bool all_pass(const std::vector<Result>& results) {
  return std::all_of(results.begin(), results.end(), [](const Result& r) { return r.pass; });
}

}  // namespace dmu::verify
