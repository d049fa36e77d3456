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

// JSON serialization of lexicons, compiled circuits and evaluation reports.
//
// Lexicon document:
//   {"spaces": {"colour": 4, ...},
//    "entries": [{"name": "red", "space": "colour", "kind": "pure",
//                 "mechanism": "phaser", "data": [[1, 0], [0, 0], ...]}, ...]}
//
// Complex numbers are [re, im] pairs (a bare number is read as a real).
// "pure" data is a vector, "density" data a row-major list of rows, and
// "ddm" data {"factors": [{"y": r, "branches": [{"x": r, "phi": [...]}]}]}.
// A space label may join declared spaces with '*' (e.g. "person*person"
// for a transitive verb). A missing "mechanism" defaults to projector for
// pure entries, phaser for density entries and ddm for DDM entries.

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "dmupdate/ddm.hpp"
#include "dmupdate/textcirc.hpp"

namespace dmu {

using Json = nlohmann::json;

namespace io {

inline Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

inline Complex complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw LexiconError("expected a complex number as [re, im], got " + j.dump());
}

inline Json vector_to_json(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v[i]));
  return out;
}

inline Vector vector_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw LexiconError("expected a non-empty vector");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i)
    v[static_cast<Eigen::Index>(i)] = complex_from_json(j[i]);
  return v;
}

inline Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Matrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array())
    throw LexiconError("expected a matrix as a list of rows");
  const std::size_t rows = j.size(), cols = j[0].size();
  Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols) throw LexiconError("ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = complex_from_json(j[r][c]);
  }
  return m;
}

inline Json ddm_to_json(const DoubleDensityMatrix& d) {
  Json factors = Json::array();
  for (const auto& f : d.factors()) {
    Json branches = Json::array();
    for (const auto& b : f.branches)
      branches.push_back({{"x", b.x}, {"phi", vector_to_json(b.phi.amplitudes())}});
    factors.push_back({{"y", f.y}, {"branches", std::move(branches)}});
  }
  return {{"factors", std::move(factors)}};
}

inline DoubleDensityMatrix ddm_from_json(const Json& j, std::size_t dim) {
  if (!j.is_object() || !j.contains("factors") || !j["factors"].is_array())
    throw LexiconError("ddm data needs a \"factors\" list");
  std::vector<DdmFactor> factors;
  for (const auto& f : j["factors"]) {
    if (!f.contains("y") || !f.contains("branches") || !f["branches"].is_array())
      throw LexiconError("ddm factor needs \"y\" and \"branches\"");
    DdmFactor factor{f["y"].get<double>(), {}};
    for (const auto& b : f["branches"]) {
      if (!b.contains("x") || !b.contains("phi"))
        throw LexiconError("ddm branch needs \"x\" and \"phi\"");
      factor.branches.push_back({b["x"].get<double>(), PureState(vector_from_json(b["phi"]))});
    }
    factors.push_back(std::move(factor));
  }
  return DoubleDensityMatrix(dim, std::move(factors));
}

inline Json operand_to_json(const Operand& op) {
  if (const auto* p = std::get_if<PureState>(&op)) return vector_to_json(p->amplitudes());
  if (const auto* d = std::get_if<DensityMatrix>(&op)) return matrix_to_json(d->matrix());
  return ddm_to_json(std::get<DoubleDensityMatrix>(op));
}

inline std::string default_mechanism_for(const std::string& kind) {
  if (kind == "pure") return "projector";
  if (kind == "density") return "phaser";
  return "ddm";
}

inline std::string require_string(const Json& j, const char* key, const std::string& where) {
  if (!j.contains(key) || !j[key].is_string())
    throw LexiconError(where + ": missing string field \"" + key + "\"");
  return j[key].get<std::string>();
}

}  // namespace io

inline Lexicon lexicon_from_json(const Json& doc) {
  try {
    if (!doc.is_object()) throw LexiconError("lexicon must be a JSON object");
    if (!doc.contains("spaces") || !doc["spaces"].is_object())
      throw LexiconError("lexicon needs a \"spaces\" object");
    Lexicon lex;
    for (const auto& [name, dim] : doc["spaces"].items()) {
      if (!dim.is_number_integer() || dim.get<long long>() <= 0)
        throw LexiconError("space '" + name + "' needs a positive integer dimension");
      lex.add_space(name, dim.get<std::size_t>());
    }
    const Json entries = doc.value("entries", Json::array());
    if (!entries.is_array()) throw LexiconError("\"entries\" must be a list");
    for (const auto& e : entries) {
      const std::string name = io::require_string(e, "name", "entry");
      const std::string where = "entry '" + name + "'";
      const std::string space = io::require_string(e, "space", where);
      const std::string kind = io::require_string(e, "kind", where);
      if (!e.contains("data")) throw LexiconError(where + ": missing \"data\"");
      const std::size_t dim = product(lex.space_dims(space));
      try {
        Operand operand = PureState::basis(1, 0);
        if (kind == "pure")
          operand = PureState(io::vector_from_json(e["data"]));
        else if (kind == "density")
          operand = DensityMatrix(io::matrix_from_json(e["data"]));
        else if (kind == "ddm")
          operand = io::ddm_from_json(e["data"], dim);
        else
          throw LexiconError("unknown kind '" + kind + "'");
        const Mechanism mech = parse_mechanism(
            e.contains("mechanism") ? io::require_string(e, "mechanism", where)
                                    : io::default_mechanism_for(kind));
        lex.add_entry({name, space, std::move(operand), mech});
      } catch (const LexiconError&) {
        throw;
      } catch (const Error& err) {
        throw LexiconError(where + ": " + err.what());
      }
    }
    return lex;
  } catch (const Json::exception& err) {
    throw LexiconError(std::string("malformed lexicon: ") + err.what());
  }
}

inline Json lexicon_to_json(const Lexicon& lex) {
  Json spaces = Json::object();
  for (const auto& [name, dim] : lex.spaces()) spaces[name] = dim;
  Json entries = Json::array();
  for (const auto& e : lex.entries())
    entries.push_back({{"name", e.name},
                       {"space", e.space},
                       {"kind", operand_kind(e.operand)},
                       {"mechanism", to_string(e.mechanism)},
                       {"data", io::operand_to_json(e.operand)}});
  return {{"spaces", std::move(spaces)}, {"entries", std::move(entries)}};
}

// Document-level canonical form: bare reals become [re, 0] pairs, missing
// mechanisms are filled in, and unknown keys are dropped. Serializing a
// parsed lexicon yields exactly this form.
inline Json normalize_lexicon_json(const Json& doc) {
  auto pair_up = [](const Json& z) {
    return z.is_number() ? Json::array({z.get<double>(), 0.0})
                         : Json::array({z[0].get<double>(), z[1].get<double>()});
  };
  auto vec = [&](const Json& v) {
    Json out = Json::array();
    for (const auto& z : v) out.push_back(pair_up(z));
    return out;
  };
  Json entries = Json::array();
  for (const auto& e : doc.value("entries", Json::array())) {
    const std::string kind = e["kind"].get<std::string>();
    Json data;
    if (kind == "pure") {
      data = vec(e["data"]);
    } else if (kind == "density") {
      data = Json::array();
      for (const auto& row : e["data"]) data.push_back(vec(row));
    } else {
      Json factors = Json::array();
      for (const auto& f : e["data"]["factors"]) {
        Json branches = Json::array();
        for (const auto& b : f["branches"])
          branches.push_back({{"x", b["x"].get<double>()}, {"phi", vec(b["phi"])}});
        factors.push_back({{"y", f["y"].get<double>()}, {"branches", std::move(branches)}});
      }
      data = {{"factors", std::move(factors)}};
    }
    entries.push_back({{"name", e["name"]},
                       {"space", e["space"]},
                       {"kind", kind},
                       {"mechanism", e.value("mechanism", io::default_mechanism_for(kind))},
                       {"data", std::move(data)}});
  }
  Json spaces = Json::object();
  for (const auto& [name, dim] : doc["spaces"].items()) spaces[name] = dim.get<std::size_t>();
  return {{"spaces", std::move(spaces)}, {"entries", std::move(entries)}};
}

inline std::string read_file(const std::string& path, const char* what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LexiconError(std::string("cannot open ") + what + " file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Lexicon load_lexicon(const std::string& path) {
  const std::string text = read_file(path, "lexicon");
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& err) {
    throw LexiconError("lexicon file '" + path + "' is not valid JSON: " + err.what());
  }
  try {
    return lexicon_from_json(doc);
  } catch (const LexiconError& err) {
    throw LexiconError("lexicon file '" + path + "': " + err.what());
  }
}

// Compiled circuit with, for each gate, its canonical Kraus operators.
inline Json circuit_to_json(const Circuit& c) {
  Json actors = Json::array();
  for (const auto& a : c.actors)
    actors.push_back({{"name", a.name},
                      {"space", a.space},
                      {"dim", a.dim},
                      {"prior", io::matrix_to_json(a.prior.matrix())}});
  Json gates = Json::array();
  for (const auto& g : c.gates) {
    Json kraus = Json::array();
    for (const auto& k : canonical_kraus(gate_ddm(g.mechanism, g.operand)))
      kraus.push_back(io::matrix_to_json(k));
    gates.push_back({{"sentence", g.sentence},
                     {"word", g.word},
                     {"slots", g.slots},
                     {"mechanism", to_string(g.mechanism)},
                     {"kind", operand_kind(g.operand)},
                     {"operand", io::operand_to_json(g.operand)},
                     {"kraus", std::move(kraus)}});
  }
  return {{"actors", std::move(actors)}, {"gates", std::move(gates)}};
}

}  // namespace dmu
