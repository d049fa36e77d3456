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

// Two shipped demos over a 4-dimensional colour/genre feature space.
//
//   paint-it-black   "Door turns red. Door turns black." with rank-1 phasers;
//                    the door ends up black, and in the reversed text red.
//   black-fuzztones  the ambiguous adjective black = black_col + black_gen
//                    applied as a fuzz to door, poem and metal. door and poem
//                    disambiguate it; metal stays ambiguous.
//
// Feature basis e0..e3. red = e0, black_col = 0.8 e0 + 0.6 e1 (overlap 0.8
// with red), black_gen = e2. The door's prior has overlap 0.6 with red.

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "dmupdate/density.hpp"
#include "dmupdate/textcirc.hpp"
#include "dmupdate/update.hpp"

namespace dmu::demo {

inline constexpr std::size_t kFeatureDim = 4;

inline PureState vec4(double a, double b, double c, double d) {
  return PureState({Complex{a}, Complex{b}, Complex{c}, Complex{d}});
}

inline PureState red() { return vec4(1, 0, 0, 0); }
inline PureState black_col() { return vec4(0.8, 0.6, 0, 0); }
inline PureState black_gen() { return vec4(0, 0, 1, 0); }
inline PureState door() { return vec4(0.6, std::sqrt(0.63), 0.1, 0); }
inline PureState metal_col() { return vec4(0.72, 0.54, 0, std::sqrt(0.19)); }
inline PureState metal_gen() { return vec4(0, 0, 0.9, std::sqrt(0.19)); }
inline PureState poem() { return vec4(0, 0.1, 0.95, 0.3).normalized(); }

inline DensityMatrix rho_door() { return from_pure(door()); }
inline DensityMatrix rho_poem() { return from_pure(poem()); }
inline DensityMatrix rho_metal() {
  return DensityMatrix((from_pure(metal_col()).matrix() + from_pure(metal_gen()).matrix()) * 0.5);
}
inline DensityMatrix sigma_black() {
  return DensityMatrix(from_pure(black_col()).matrix() + from_pure(black_gen()).matrix());
}

inline Lexicon paint_it_black_lexicon() {
  Lexicon lex;
  lex.add_space("colour", kFeatureDim);
  lex.add_entry({"Door", "colour", door(), Mechanism::Projector});
  lex.add_entry({"red", "colour", red(), Mechanism::Phaser});
  lex.add_entry({"black", "colour", black_col(), Mechanism::Phaser});
  return lex;
}

inline Lexicon black_fuzztones_lexicon() {
  Lexicon lex;
  lex.add_space("feature", kFeatureDim);
  lex.add_entry({"door", "feature", door(), Mechanism::Projector});
  lex.add_entry({"poem", "feature", poem(), Mechanism::Projector});
  lex.add_entry({"metal", "feature", rho_metal(), Mechanism::Phaser});
  lex.add_entry({"black", "feature", sigma_black(), Mechanism::Fuzz});
  lex.add_entry({"black_col", "feature", black_col(), Mechanism::Projector});
  lex.add_entry({"black_gen", "feature", black_gen(), Mechanism::Projector});
  return lex;
}

inline const char* kPaintItBlackText = "Door turns red.\nDoor turns black.\n";
inline const char* kPaintItBlackReversed = "Door turns black.\nDoor turns red.\n";

struct Check {
  std::string name;
  bool pass;
  double value;
  std::string relation;  // e.g. "> 0.3"
};

struct Report {
  std::string name;
  std::vector<std::string> narrative;
  std::vector<Check> checks;

  bool pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return !checks.empty();
  }
};

inline std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

inline Check check_greater(std::string name, double value, double threshold) {
  return {std::move(name), value > threshold, value, "> " + fmt(threshold)};
}

inline Check check_less(std::string name, double value, double threshold) {
  return {std::move(name), value < threshold, value, "< " + fmt(threshold)};
}

// Final Door state of a paint-it-black style text, renormalizing after each
// sentence. Narrative lines are appended to `narrative`.
inline DensityMatrix run_door_text(const std::string& text, std::vector<std::string>& narrative) {
  const auto sentences = parse(text);
  const Circuit c = compile(sentences, paint_it_black_lexicon());
  const WorldState w = evaluate(c, true, [&](std::size_t g, const WorldState& s) {
    const DensityMatrix d = reduced_state(s, "Door");
    narrative.push_back(to_string(sentences[c.gates[g].sentence]) +
                        ": <red|door|red> = " + fmt(fidelity_with(d, red())) +
                        ", <black|door|black> = " + fmt(fidelity_with(d, black_col())) +
                        ", purity = " + fmt(purity(d)));
  });
  return reduced_state(w, "Door");
}

inline Report paint_it_black() {
  Report r{"paint-it-black", {}, {}};
  r.narrative.push_back("prior: <red|door|red> = " + fmt(fidelity_with(rho_door(), red())) +
                        ", <black|door|black> = " + fmt(fidelity_with(rho_door(), black_col())));
  r.narrative.push_back("text: Door turns red. Door turns black.");
  const DensityMatrix forward = run_door_text(kPaintItBlackText, r.narrative);
  r.narrative.push_back("text: Door turns black. Door turns red.");
  const DensityMatrix reversed = run_door_text(kPaintItBlackReversed, r.narrative);

  r.checks.push_back(check_greater("door is black (fidelity with black)",
                                   fidelity_with(forward, black_col()), 1.0 - 1e-9));
  r.checks.push_back(check_greater("final door state is pure", purity(forward), 1.0 - 1e-9));
  r.checks.push_back(check_greater("reversed text: door is red (fidelity with red)",
                                   fidelity_with(reversed, red()), 1.0 - 1e-9));
  r.checks.push_back(check_greater("sentence order matters (max-norm distance)",
                                   max_abs(renormalize(forward).matrix() -
                                           renormalize(reversed).matrix()),
                                   1e-3));
  return r;
}

// <b|rho|b> for normalized rho: the trace of |b><b| rho |b><b|.
inline double projected_trace(const DensityMatrix& rho, const PureState& b) {
  return projector_update(renormalize(rho), Projector::onto(b)).trace();
}

inline Report black_fuzztones() {
  Report r{"black-fuzztones", {}, {}};
  const DensityMatrix sigma = sigma_black();
  struct Noun {
    const char* name;
    DensityMatrix rho;
  };
  const Noun nouns[] = {{"door", rho_door()}, {"poem", rho_poem()}, {"metal", rho_metal()}};

  for (const auto& n : nouns)
    r.narrative.push_back(std::string(n.name) + ": <black_col|rho|black_col> = " +
                          fmt(projected_trace(n.rho, black_col())) +
                          ", <black_gen|rho|black_gen> = " +
                          fmt(projected_trace(n.rho, black_gen())));

  r.checks.push_back(check_less("black_col on poem ~ 0", projected_trace(rho_poem(), black_col()), 0.05));
  r.checks.push_back(check_less("black_gen on door ~ 0", projected_trace(rho_door(), black_gen()), 0.05));
  r.checks.push_back(check_greater("black_col on door >> 0", projected_trace(rho_door(), black_col()), 0.3));
  r.checks.push_back(check_greater("black_gen on poem >> 0", projected_trace(rho_poem(), black_gen()), 0.3));
  r.checks.push_back(check_greater("black_col on metal >> 0", projected_trace(rho_metal(), black_col()), 0.3));
  r.checks.push_back(check_greater("black_gen on metal >> 0", projected_trace(rho_metal(), black_gen()), 0.3));

  // The fuzz itself, run through the text pipeline: "<noun> is black."
  const Lexicon lex = black_fuzztones_lexicon();
  for (const auto& n : nouns) {
    const Circuit c = compile(parse(std::string(n.name) + " is black."), lex);
    const DensityMatrix out = renormalize(reduced_state(evaluate(c), n.name));
    const auto es = hermitian_eigensystem(out.matrix());
    const PureState top(Vector(es.vectors.col(0)));
    const double on_col = fidelity_with(from_pure(top), black_col());
    const double on_gen = fidelity_with(from_pure(top), black_gen());
    std::ostringstream eig;
    for (Eigen::Index k = 0; k < es.values.size(); ++k) eig << (k ? ", " : "") << fmt(es.values[k]);
    r.narrative.push_back(std::string(n.name) + " is black: eigenvalues [" + eig.str() +
                          "], dominant eigenvector on black_col = " + fmt(on_col) +
                          ", on black_gen = " + fmt(on_gen));
    const std::string noun = n.name;
    if (noun == "metal") {
      r.checks.push_back(check_greater("black metal stays ambiguous (second eigenvalue)",
                                       es.values[1], 0.1));
    } else {
      r.checks.push_back(check_greater("black " + noun + " is disambiguated (dominant eigenvalue)",
                                       es.values[0], 0.9));
      const bool colour = noun == "door";
      r.checks.push_back(check_greater(
          "black " + noun + " reads as " + (colour ? "colour" : "genre") + " (fidelity)",
          colour ? on_col : on_gen, 0.9));
    }
  }
  return r;
}

inline std::vector<std::string> names() { return {"paint-it-black", "black-fuzztones"}; }

inline Report run(const std::string& name) {
  if (name == "paint-it-black") return paint_it_black();
  if (name == "black-fuzztones") return black_fuzztones();
  throw Error("unknown demo '" + name + "' (known: paint-it-black, black-fuzztones)");
}

}  // namespace dmu::demo
