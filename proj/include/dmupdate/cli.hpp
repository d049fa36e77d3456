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

// Command implementations behind the dmupdate executable. Each command
// writes its report to `out`, diagnostics to `err`, and returns the process
// exit code, so tests can drive them without spawning a process.

#include <charconv>
#include <cmath>
#include <optional>
#include <ostream>
#include <string>
#include <utility>

#include "dmupdate/demos.hpp"
#include "dmupdate/lexicon_io.hpp"
#include "dmupdate/textcirc.hpp"
#include "dmupdate/verify.hpp"

namespace dmu::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitInternal = 1,
  kExitInput = 2,
  kExitZeroTrace = 3,
  kExitCheckFailed = 4,
};

enum class Format { Text, Json };

inline Format parse_format(const std::string& s) {
  if (s == "text") return Format::Text;
  if (s == "json") return Format::Json;
  throw Error("unknown format '" + s + "' (expected text or json)");
}

// "A..B" with 1 <= A <= B.
inline std::pair<std::size_t, std::size_t> parse_dim_range(const std::string& s) {
  const auto dots = s.find("..");
  auto number = [&](std::string_view part) {
    std::size_t v = 0;
    const auto [p, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (part.empty() || ec != std::errc() || p != part.data() + part.size())
      throw Error("bad dimension range '" + s + "' (expected A..B)");
    return v;
  };
  if (dots == std::string::npos) throw Error("bad dimension range '" + s + "' (expected A..B)");
  const std::string_view sv(s);
  const std::size_t lo = number(sv.substr(0, dots)), hi = number(sv.substr(dots + 2));
  if (lo < 1 || lo > hi) throw Error("dimension range '" + s + "' must satisfy 1 <= A <= B");
  return {lo, hi};
}

// Six significant digits; an imaginary part that prints as zero is omitted.
inline std::string format_complex(Complex z) {
  const std::string im = demo::fmt(std::abs(z.imag()));
  if (im == "0") return demo::fmt(z.real());
  return demo::fmt(z.real()) + (z.imag() < 0 ? "-" : "+") + im + "i";
}

namespace detail {

template <class F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const ZeroTrace& e) {
    err << "error: " << e.what() << "\n";
    return kExitZeroTrace;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

inline void print_matrix(std::ostream& out, const Matrix& m, const char* indent) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    out << indent;
    for (Eigen::Index j = 0; j < m.cols(); ++j) out << (j ? " " : "") << format_complex(m(i, j));
    out << "\n";
  }
}

inline std::optional<Mechanism> mechanism_from(const std::optional<std::string>& name) {
  if (!name) return std::nullopt;
  return parse_mechanism(*name);
}

inline Circuit compile_files(const std::string& text_path, const std::string& lexicon_path,
                             const std::optional<std::string>& mechanism) {
  const Lexicon lex = load_lexicon(lexicon_path);
  const auto override_mech = mechanism_from(mechanism);
  const std::string text = read_file(text_path, "text");
  return compile(parse(text), lex, override_mech);
}

}  // namespace detail

struct RunOptions {
  std::string text_path;
  std::string lexicon_path;
  std::optional<std::string> mechanism;
  bool renormalize = false;
  Format format = Format::Text;
};

struct ActorReport {
  std::string name;
  std::string space;
  std::size_t dim;
  double trace;
  double purity;
  Matrix state;
};

// Final reduced state of every actor after evaluating the text.
inline std::vector<ActorReport> run_text(const Circuit& c, bool renormalize_each_step) {
  const WorldState w = evaluate(c, renormalize_each_step);
  std::vector<ActorReport> out;
  for (const auto& a : c.actors) {
    const DensityMatrix r = reduced_state(w, a.name);
    out.push_back({a.name, a.space, a.dim, r.trace(), purity(r), r.matrix()});
  }
  return out;
}

inline int cmd_run(const RunOptions& o, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    const Circuit c = detail::compile_files(o.text_path, o.lexicon_path, o.mechanism);
    const auto actors = run_text(c, o.renormalize);
    if (o.format == Format::Json) {
      Json doc = {{"renormalized", o.renormalize}, {"actors", Json::array()}};
      for (const auto& a : actors)
        doc["actors"].push_back({{"name", a.name},
                                 {"space", a.space},
                                 {"dim", a.dim},
                                 {"trace", a.trace},
                                 {"purity", a.purity},
                                 {"state", io::matrix_to_json(a.state)}});
      out << doc.dump(2) << "\n";
    } else {
      for (const auto& a : actors) {
        out << "actor " << a.name << " (space " << a.space << ", dim " << a.dim << ")\n";
        out << "  trace " << demo::fmt(a.trace) << "\n";
        out << "  purity " << demo::fmt(a.purity) << "\n";
        out << "  state\n";
        detail::print_matrix(out, a.state, "    ");
      }
    }
    return static_cast<int>(kExitOk);
  });
}

inline int cmd_demo(const std::string& name, Format format, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    const demo::Report r = demo::run(name);
    if (format == Format::Json) {
      Json checks = Json::array();
      for (const auto& c : r.checks)
        checks.push_back(
            {{"name", c.name}, {"pass", c.pass}, {"value", c.value}, {"relation", c.relation}});
      out << Json{{"demo", r.name}, {"narrative", r.narrative}, {"checks", checks}, {"pass", r.pass()}}
                 .dump(2)
          << "\n";
    } else {
      out << "demo " << r.name << "\n";
      for (const auto& line : r.narrative) out << "  " << line << "\n";
      for (const auto& c : r.checks)
        out << (c.pass ? "PASS " : "FAIL ") << c.name << ": " << demo::fmt(c.value) << " "
            << c.relation << "\n";
      out << "demo " << r.name << ": " << (r.pass() ? "PASS" : "FAIL") << "\n";
    }
    return static_cast<int>(r.pass() ? kExitOk : kExitCheckFailed);
  });
}

// Reports omit timings so identical invocations print identical bytes.
inline int cmd_verify(const verify::Options& o, Format format, std::ostream& out,
                      std::ostream& err) {
  return detail::guarded(err, [&] {
    if (o.trials == 0) throw Error("--trials must be at least 1");
    if (o.dim_lo < 1 || o.dim_lo > o.dim_hi) throw Error("bad dimension range");
    const auto results = verify::run_all(o);
    std::size_t passed = 0;
    for (const auto& r : results) passed += r.pass ? 1 : 0;
    if (format == Format::Json) {
      Json props = Json::array();
      for (const auto& r : results)
        props.push_back({{"name", r.name},
                         {"pass", r.pass},
                         {r.is_witness ? "margin" : "max_deviation", r.value},
                         {"threshold", r.threshold},
                         {"detail", r.detail}});
      out << Json{{"seed", o.seed},
                  {"trials", o.trials},
                  {"dims", {o.dim_lo, o.dim_hi}},
                  {"properties", props},
                  {"pass", passed == results.size()}}
                 .dump(2)
          << "\n";
    } else {
      out << "verify: seed " << o.seed << ", trials " << o.trials << ", dims " << o.dim_lo
          << ".." << o.dim_hi << "\n";
      for (const auto& r : results)
        out << (r.pass ? "PASS " : "FAIL ") << r.name << ": "
            << (r.is_witness ? "margin " : "max deviation ") << demo::fmt(r.value)
            << (r.is_witness ? " > " : " < ") << demo::fmt(r.threshold) << " [" << r.detail
            << "]\n";
      out << "verify: " << passed << "/" << results.size() << " properties pass\n";
    }
    return static_cast<int>(passed == results.size() ? kExitOk : kExitCheckFailed);
  });
}

inline int cmd_export(const std::string& text_path, const std::string& lexicon_path,
                      const std::optional<std::string>& mechanism, std::ostream& out,
                      std::ostream& err) {
  return detail::guarded(err, [&] {
    out << circuit_to_json(detail::compile_files(text_path, lexicon_path, mechanism)).dump(2)
        << "\n";
    return static_cast<int>(kExitOk);
  });
}

}  // namespace dmu::cli
