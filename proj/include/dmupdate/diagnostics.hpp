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

// Empirical trace-preservation check for the fuzz and the general phaser.

#include <cmath>
#include <cstdint>
#include <optional>
#include <variant>

#include "dmupdate/random.hpp"
#include "dmupdate/update.hpp"

namespace dmu {

enum class TraceMechanism { Fuzz, PhaserGeneral };

struct TracePreservationReport {
  std::size_t trials = 0;
  double max_deviation = 0.0;    // max |tr(update(rho)) - 1|
  bool trace_preserving = true;  // max_deviation < 1e-9
  std::optional<DensityMatrix> witness;  // sample attaining max_deviation
};

using TraceOperand = std::variant<DensityMatrix, FuzzData, PhaserData>;

// Samples normalized states (alternating pure and full-rank mixed) and
// records the largest trace deviation.
inline TracePreservationReport trace_preservation_report(TraceMechanism mechanism,
                                                         const TraceOperand& operand,
                                                         std::size_t trials,
                                                         std::uint64_t seed = 1) {
  if (trials == 0) throw Error("trace_preservation_report: trials must be >= 1");
  std::vector<Matrix> kraus;
  std::size_t dim = 0;
  if (mechanism == TraceMechanism::Fuzz) {
    if (const auto* s = std::get_if<DensityMatrix>(&operand)) {
      kraus = fuzz_kraus(*s);
      dim = s->dim();
    } else if (const auto* f = std::get_if<FuzzData>(&operand)) {
      kraus = fuzz_kraus(*f);
      dim = f->dim();
    } else {
      throw Error("trace_preservation_report: the fuzz takes a density matrix or FuzzData");
    }
  } else {
    const auto* p = std::get_if<PhaserData>(&operand);
    if (p == nullptr)
      throw Error("trace_preservation_report: the general phaser takes PhaserData");
    kraus = phaser_kraus(*p);
    dim = p->dim();
  }

  Rng rng(seed);
  TracePreservationReport report;
  report.trials = trials;
  for (std::size_t t = 0; t < trials; ++t) {
    const DensityMatrix rho =
        t % 2 == 0 ? from_pure(random_pure(rng, dim)) : random_density(rng, dim);
    const double dev = std::abs(apply_kraus(kraus, rho.matrix()).trace().real() - 1.0);
    if (!report.witness || dev > report.max_deviation) {
      report.max_deviation = dev;
      report.witness = rho;
    }
  }
  report.trace_preserving = report.max_deviation < kTolerance;
  return report;
}

}  // namespace dmu
