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

// Controlled-grammar texts compiled to circuits over actor wires.
//
// Grammar (one sentence per '.', tokens split on whitespace):
//   Once there was X        introduce actor X
//   X is [a|an] N           update X with noun/adjective N
//   X turns N               same update; exists so colour-change texts read naturally
//   X V Y                   transitive verb V bonds subject X and object Y
//
// Actors are introduced at first mention. The world is a single density
// matrix on the tensor product of all actor spaces; each sentence is a gate
// that applies its word's update mechanism on the actor wires it touches.

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "dmupdate/ddm.hpp"
#include "dmupdate/density.hpp"
#include "dmupdate/linalg.hpp"
#include "dmupdate/update.hpp"

namespace dmu {

// ---------------------------------------------------------------- sentences

struct Introduce {
  std::string actor;
  bool implicit = false;  // inserted at first mention rather than written
  bool operator==(const Introduce&) const = default;
};

struct IsA {
  std::string actor, noun;
  bool operator==(const IsA&) const = default;
};

struct Turns {
  std::string actor, noun;
  bool operator==(const Turns&) const = default;
};

struct Transitive {
  std::string subject, verb, object;
  bool operator==(const Transitive&) const = default;
};

using Sentence = std::variant<Introduce, IsA, Turns, Transitive>;

inline std::string to_string(const Sentence& s) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Introduce>)
          return "Introduce(" + v.actor + (v.implicit ? ", implicit)" : ")");
        else if constexpr (std::is_same_v<T, IsA>)
          return "IsA(" + v.actor + ", " + v.noun + ")";
        else if constexpr (std::is_same_v<T, Turns>)
          return "Turns(" + v.actor + ", " + v.noun + ")";
        else
          return "Transitive(" + v.subject + ", " + v.verb + ", " + v.object + ")";
      },
      s);
}

namespace detail {

inline std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

inline bool identifier_char(unsigned char c) {
  return std::isalnum(c) || c == '_' || c == '-' || c == '\'' || c >= 0x80;
}

inline Sentence classify(const std::vector<std::string>& tok, std::size_t line) {
  auto kw = [&](std::size_t i, std::string_view w) { return lower(tok[i]) == w; };
  if (tok.size() == 4 && kw(0, "once") && kw(1, "there") && kw(2, "was"))
    return Introduce{tok[3], false};
  if (tok.size() == 4 && kw(1, "is") && (kw(2, "a") || kw(2, "an")))
    return IsA{tok[0], tok[3]};
  if (tok.size() == 3 && kw(1, "is")) return IsA{tok[0], tok[2]};
  if (tok.size() == 3 && kw(1, "turns")) return Turns{tok[0], tok[2]};
  if (tok.size() == 3) return Transitive{tok[0], tok[1], tok[2]};
  std::string shown;
  for (const auto& t : tok) shown += (shown.empty() ? "" : " ") + t;
  throw ParseError(line, "unrecognized sentence '" + shown + "'");
}

}  // namespace detail

// Deterministic; an implicit Introduce precedes the first mention of every
// actor that was not introduced explicitly before.
inline std::vector<Sentence> parse(std::string_view text) {
  std::vector<Sentence> out;
  std::vector<std::string> known;
  auto mention = [&](const std::string& actor) {
    if (std::find(known.begin(), known.end(), actor) == known.end()) {
      known.push_back(actor);
      out.push_back(Introduce{actor, true});
    }
  };

  std::vector<std::string> tokens;
  std::string current;
  std::size_t line = 1, sentence_line = 1;
  auto flush_token = [&] {
    if (!current.empty()) {
      if (tokens.empty()) sentence_line = line;
      tokens.push_back(std::move(current));
      current.clear();
    }
  };

  for (char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    if (ch == '.') {
      flush_token();
      if (tokens.empty()) throw ParseError(line, "empty sentence");
      Sentence s = detail::classify(tokens, sentence_line);
      if (const auto* intro = std::get_if<Introduce>(&s)) {
        if (std::find(known.begin(), known.end(), intro->actor) == known.end()) {
          known.push_back(intro->actor);
          out.push_back(std::move(s));
        }
      } else {
        std::visit(
            [&](const auto& v) {
              using T = std::decay_t<decltype(v)>;
              if constexpr (std::is_same_v<T, Transitive>) {
                mention(v.subject);
                mention(v.object);
              } else if constexpr (!std::is_same_v<T, Introduce>) {
                mention(v.actor);
              }
            },
            s);
        out.push_back(std::move(s));
      }
      tokens.clear();
    } else if (std::isspace(c)) {
      flush_token();
      if (ch == '\n') ++line;
    } else if (detail::identifier_char(c)) {
      current.push_back(ch);
    } else {
      throw ParseError(line, std::string("unexpected character '") + ch + "'");
    }
  }
  flush_token();
  if (!tokens.empty()) throw ParseError(sentence_line, "sentence is missing its final '.'");
  return out;
}

// ---------------------------------------------------------------- lexicon

enum class Mechanism { Projector, Fuzz, Phaser, Ddm };

inline std::string to_string(Mechanism m) {
  switch (m) {
    case Mechanism::Projector: return "projector";
    case Mechanism::Fuzz: return "fuzz";
    case Mechanism::Phaser: return "phaser";
    case Mechanism::Ddm: return "ddm";
  }
  return "?";
}

inline Mechanism parse_mechanism(std::string_view name) {
  const std::string n = detail::lower(name);
  if (n == "projector") return Mechanism::Projector;
  if (n == "fuzz") return Mechanism::Fuzz;
  if (n == "phaser") return Mechanism::Phaser;
  if (n == "ddm") return Mechanism::Ddm;
  throw LexiconError("unknown mechanism '" + std::string(name) + "'");
}

using Operand = std::variant<PureState, DensityMatrix, DoubleDensityMatrix>;

inline std::size_t operand_dim(const Operand& op) {
  return std::visit([](const auto& v) { return v.dim(); }, op);
}

inline std::string operand_kind(const Operand& op) {
  switch (op.index()) {
    case 0: return "pure";
    case 1: return "density";
    default: return "ddm";
  }
}

// Projector needs a pure operand; ddm needs a DDM operand and only ddm takes one.
inline void require_compatible(Mechanism m, const Operand& op, const std::string& who) {
  const bool is_ddm = std::holds_alternative<DoubleDensityMatrix>(op);
  if (m == Mechanism::Projector && !std::holds_alternative<PureState>(op))
    throw LexiconError("'" + who + "': the projector mechanism needs a pure operand, got " +
                       operand_kind(op));
  if (is_ddm != (m == Mechanism::Ddm))
    throw LexiconError("'" + who + "': mechanism " + to_string(m) +
                       " cannot take a " + operand_kind(op) + " operand");
}

struct LexiconEntry {
  std::string name;
  std::string space;  // a declared space, or several joined with '*'
  Operand operand;
  Mechanism mechanism;
};

class Lexicon {
 public:
  void add_space(const std::string& name, std::size_t dim) {
    if (name.empty() || name.find('*') != std::string::npos)
      throw LexiconError("invalid space name '" + name + "'");
    if (dim == 0) throw LexiconError("space '" + name + "' has dimension 0");
    if (!spaces_.emplace(name, dim).second)
      throw LexiconError("space '" + name + "' declared twice");
  }

  void add_entry(LexiconEntry entry) {
    if (entry.name.empty()) throw LexiconError("lexicon entry without a name");
    if (index_.count(entry.name)) throw LexiconError("entry '" + entry.name + "' defined twice");
    const auto dims = space_dims(entry.space);
    const std::size_t want = product(dims);
    if (operand_dim(entry.operand) != want)
      throw LexiconError("entry '" + entry.name + "' has dimension " +
                         std::to_string(operand_dim(entry.operand)) + " but space '" +
                         entry.space + "' has dimension " + std::to_string(want));
    require_compatible(entry.mechanism, entry.operand, entry.name);
    index_.emplace(entry.name, entries_.size());
    entries_.push_back(std::move(entry));
  }

  const LexiconEntry* find(const std::string& name) const {
    const auto it = index_.find(name);
    return it == index_.end() ? nullptr : &entries_[it->second];
  }

  const LexiconEntry& at(const std::string& name) const {
    const auto* e = find(name);
    if (e == nullptr) throw UnknownWord(name);
    return *e;
  }

  std::vector<std::string> space_components(const std::string& label) const {
    std::vector<std::string> parts;
    std::stringstream ss(label);
    std::string part;
    while (std::getline(ss, part, '*')) parts.push_back(part);
    if (parts.empty()) throw LexiconError("empty space label");
    for (const auto& p : parts)
      if (!spaces_.count(p)) throw LexiconError("undeclared space '" + p + "'");
    return parts;
  }

  std::vector<std::size_t> space_dims(const std::string& label) const {
    std::vector<std::size_t> dims;
    for (const auto& p : space_components(label)) dims.push_back(spaces_.at(p));
    return dims;
  }

  const std::map<std::string, std::size_t>& spaces() const noexcept { return spaces_; }
  const std::vector<LexiconEntry>& entries() const noexcept { return entries_; }

 private:
  std::map<std::string, std::size_t> spaces_;
  std::vector<LexiconEntry> entries_;
  std::map<std::string, std::size_t> index_;
};

// ---------------------------------------------------------------- circuits

struct Actor {
  std::string name;
  std::string space;
  std::size_t dim;
  DensityMatrix prior;
};

struct Gate {
  std::vector<std::size_t> slots;  // operand factor order follows this order
  std::string word;
  Operand operand;
  Mechanism mechanism;
  std::size_t sentence;  // index into the parsed sentence list
};

struct Circuit {
  std::vector<Actor> actors;
  std::vector<Gate> gates;

  std::vector<std::size_t> dims() const {
    std::vector<std::size_t> d;
    for (const auto& a : actors) d.push_back(a.dim);
    return d;
  }

  std::optional<std::size_t> actor_index(const std::string& name) const {
    for (std::size_t i = 0; i < actors.size(); ++i)
      if (actors[i].name == name) return i;
    return std::nullopt;
  }
};

// Kraus family of a word's update on its own (un-embedded) space.
inline std::vector<Matrix> gate_kraus(Mechanism m, const Operand& op) {
  require_compatible(m, op, "gate");
  switch (m) {
    case Mechanism::Projector:
      return {Projector::onto(std::get<PureState>(op)).matrix()};
    case Mechanism::Fuzz:
    case Mechanism::Phaser: {
      const DensityMatrix sigma = std::holds_alternative<PureState>(op)
                                      ? from_pure(std::get<PureState>(op))
                                      : std::get<DensityMatrix>(op);
      return m == Mechanism::Fuzz ? fuzz_kraus(sigma) : phaser_kraus(sigma);
    }
    case Mechanism::Ddm:
      return ddm_kraus(std::get<DoubleDensityMatrix>(op));
  }
  return {};
}

// The same update as a double density matrix (for export and comparison).
inline DoubleDensityMatrix gate_ddm(Mechanism m, const Operand& op) {
  require_compatible(m, op, "gate");
  switch (m) {
    case Mechanism::Projector:
      return ddm_from_projector(std::get<PureState>(op));
    case Mechanism::Fuzz:
    case Mechanism::Phaser: {
      const DensityMatrix sigma = std::holds_alternative<PureState>(op)
                                      ? from_pure(std::get<PureState>(op))
                                      : std::get<DensityMatrix>(op);
      return m == Mechanism::Fuzz ? ddm_from_fuzz(sigma) : ddm_from_phaser(sigma);
    }
    case Mechanism::Ddm:
      return std::get<DoubleDensityMatrix>(op);
  }
  throw Error("gate_ddm: unreachable");
}

namespace detail {

struct SpaceBinding {
  std::string space;
  std::string source;  // word that fixed it, for diagnostics
};

}  // namespace detail

// `mechanism_override`, when set, replaces every word's default mechanism.
inline Circuit compile(const std::vector<Sentence>& sentences, const Lexicon& lexicon,
                       std::optional<Mechanism> mechanism_override = std::nullopt) {
  std::vector<std::string> order;
  std::map<std::string, detail::SpaceBinding> spaces;

  auto note_actor = [&](const std::string& a) {
    if (std::find(order.begin(), order.end(), a) != order.end()) return;
    order.push_back(a);
    if (const auto* e = lexicon.find(a)) {
      if (lexicon.space_components(e->space).size() != 1)
        throw SpaceMismatch(a, "a single space", e->space);
      spaces[a] = {e->space, a};
    }
  };
  auto bind = [&](const std::string& actor, const std::string& space) {
    const auto it = spaces.find(actor);
    if (it == spaces.end())
      spaces[actor] = {space, actor};
    else if (it->second.space != space)
      throw SpaceMismatch(actor, it->second.space, space);
  };

  for (const auto& s : sentences) {
    std::visit(
        [&](const auto& v) {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, Introduce>) {
            note_actor(v.actor);
          } else if constexpr (std::is_same_v<T, Transitive>) {
            note_actor(v.subject);
            note_actor(v.object);
            if (v.subject == v.object)
              throw Error("'" + v.subject + " " + v.verb + " " + v.object +
                          "': subject and object must be different actors");
            const auto& e = lexicon.at(v.verb);
            const auto parts = lexicon.space_components(e.space);
            if (parts.size() != 2)
              throw SpaceMismatch(v.subject, "a two-wire verb space", e.space);
            bind(v.subject, parts[0]);
            bind(v.object, parts[1]);
          } else {
            note_actor(v.actor);
            const auto& e = lexicon.at(v.noun);
            const auto parts = lexicon.space_components(e.space);
            if (parts.size() != 1) throw SpaceMismatch(v.actor, "a single space", e.space);
            bind(v.actor, parts[0]);
          }
        },
        s);
  }

  Circuit c;
  for (const auto& name : order) {
    std::string space;
    if (const auto it = spaces.find(name); it != spaces.end()) {
      space = it->second.space;
    } else if (lexicon.spaces().size() == 1) {
      space = lexicon.spaces().begin()->first;
    } else {
      throw UnknownWord(name, "cannot infer the space of this actor");
    }
    const std::size_t dim = lexicon.spaces().at(space);
    std::optional<DensityMatrix> prior;
    if (const auto* e = lexicon.find(name)) {
      if (const auto* p = std::get_if<PureState>(&e->operand))
        prior = from_pure(*p);
      else if (const auto* d = std::get_if<DensityMatrix>(&e->operand))
        prior = *d;
      else
        throw LexiconError("'" + name + "': a DDM cannot serve as an actor's prior");
    }
    c.actors.push_back({name, space, dim, prior.value_or(DensityMatrix::maximally_mixed(dim))});
  }
  const std::size_t joint = product(c.dims());
  if (joint > kMaxJointDim)
    throw SizeCap("compile: joint dimension " + std::to_string(joint) + " exceeds cap " +
                  std::to_string(kMaxJointDim));

  for (std::size_t i = 0; i < sentences.size(); ++i) {
    std::visit(
        [&](const auto& v) {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, Introduce>) {
            return;
          } else {
            Gate g{{}, {}, PureState::basis(1, 0), Mechanism::Projector, i};
            if constexpr (std::is_same_v<T, Transitive>) {
              g.slots = {*c.actor_index(v.subject), *c.actor_index(v.object)};
              g.word = v.verb;
            } else {
              g.slots = {*c.actor_index(v.actor)};
              g.word = v.noun;
            }
            const auto& e = lexicon.at(g.word);
            g.operand = e.operand;
            g.mechanism = mechanism_override.value_or(e.mechanism);
            require_compatible(g.mechanism, g.operand, g.word);
            c.gates.push_back(std::move(g));
          }
        },
        sentences[i]);
  }
  return c;
}

// ---------------------------------------------------------------- evaluation

struct WorldState {
  std::vector<std::string> actor_names;
  std::vector<std::size_t> dims;
  DensityMatrix joint;
};

inline DensityMatrix initial_joint(const Circuit& c) {
  Matrix joint = Matrix::Ones(1, 1);
  for (const auto& a : c.actors) joint = kron(joint, a.prior.matrix());
  return DensityMatrix::trusted(joint);
}

inline DensityMatrix apply_gate(const Gate& g, const std::vector<std::size_t>& dims,
                                const DensityMatrix& joint) {
  std::vector<Matrix> embedded;
  for (const auto& k : gate_kraus(g.mechanism, g.operand))
    embedded.push_back(embed_on_subsystem(k, dims, g.slots));
  return DensityMatrix::trusted(apply_kraus(embedded, joint.matrix()));
}

using GateObserver = std::function<void(std::size_t gate_index, const WorldState&)>;

// Applies the gates in text order. With `renormalize_each_step` the joint
// state is rescaled to unit trace after every gate, and an annihilated state
// raises ZeroTrace.
inline WorldState evaluate(const Circuit& c, bool renormalize_each_step = false,
                           const GateObserver& observer = {}) {
  WorldState w{{}, c.dims(), initial_joint(c)};
  for (const auto& a : c.actors) w.actor_names.push_back(a.name);
  for (std::size_t i = 0; i < c.gates.size(); ++i) {
    w.joint = apply_gate(c.gates[i], w.dims, w.joint);
    if (renormalize_each_step) w.joint = renormalize(w.joint);
    if (observer) observer(i, w);
  }
  return w;
}

inline DensityMatrix reduced_state(const WorldState& w, const std::string& actor) {
  const auto it = std::find(w.actor_names.begin(), w.actor_names.end(), actor);
  if (it == w.actor_names.end()) throw UnknownActor(actor);
  const std::size_t slot = static_cast<std::size_t>(it - w.actor_names.begin());
  const std::size_t keep[] = {slot};
  return DensityMatrix::trusted(partial_trace(w.joint.matrix(), w.dims, keep));
}

}  // namespace dmu
