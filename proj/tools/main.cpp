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


#include <CLI11.hpp>
#include <iostream>
#include <tuple>

#include "dmupdate/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Density-matrix meaning updates for short texts"};
  app.require_subcommand(1);

  std::string text_path, lexicon_path, format = "text", mechanism;
  bool renormalize = false;

  auto* run = app.add_subcommand("run", "Evaluate a text and print every actor's final state");
  run->add_option("text", text_path, "Text file")->required();
  run->add_option("--lexicon", lexicon_path, "Lexicon file (JSON)")->required();
  run->add_option("--mechanism", mechanism, "Override every word's mechanism")
      ->check(CLI::IsMember({"projector", "fuzz", "phaser", "ddm"}));
  run->add_flag("--renormalize", renormalize, "Renormalize after every sentence");
  run->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));

  std::string demo_name;
  auto* demo = app.add_subcommand("demo", "Run a shipped example and check its claims");
  demo->add_option("name", demo_name, "paint-it-black or black-fuzztones")->required();
  demo->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));

  dmu::verify::Options vopts;
  std::string dims = "2..5";
  auto* verify = app.add_subcommand("verify", "Run the property suite");
  verify->add_option("--seed", vopts.seed, "RNG seed");
  verify->add_option("--trials", vopts.trials, "Random trials per property");
  verify->add_option("--dims", dims, "Dimension range A..B");
  verify->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));

  auto* exp = app.add_subcommand("export", "Dump the compiled circuit with canonical Kraus operators");
  exp->add_option("text", text_path, "Text file")->required();
  exp->add_option("--lexicon", lexicon_path, "Lexicon file (JSON)")->required();
  exp->add_option("--mechanism", mechanism, "Override every word's mechanism")
      ->check(CLI::IsMember({"projector", "fuzz", "phaser", "ddm"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : dmu::cli::kExitInput;
  }

  const auto fmt = dmu::cli::parse_format(format);
  const std::optional<std::string> mech =
      mechanism.empty() ? std::nullopt : std::optional<std::string>(mechanism);
  if (*run) {
    dmu::cli::RunOptions o{text_path, lexicon_path, mech, renormalize, fmt};
    return dmu::cli::cmd_run(o, std::cout, std::cerr);
  }
  if (*demo) return dmu::cli::cmd_demo(demo_name, fmt, std::cout, std::cerr);
  if (*verify) {
    try {
      std::tie(vopts.dim_lo, vopts.dim_hi) = dmu::cli::parse_dim_range(dims);
    } catch (const dmu::Error& e) {
      std::cerr << "error: " << e.what() << "\n";
      return dmu::cli::kExitInput;
    }
    return dmu::cli::cmd_verify(vopts, fmt, std::cout, std::cerr);
  }
  return dmu::cli::cmd_export(text_path, lexicon_path, mech, std::cout, std::cerr);
}
