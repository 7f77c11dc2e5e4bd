// Copyright 2026 The qobs developers

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "qobs/documents.hpp"
#include "qobs/errors.hpp"
#include "qobs/states.hpp"

namespace fs = std::filesystem;
using namespace qobs;

namespace {

// Ordered fact list shared by the text and JSON renderers, so the two
// outputs carry the same information by construction.
struct Report {
  int exit_code = 0;
  std::string fail_reason;
  std::vector<std::pair<std::string, std::string>> facts;

  void add(const std::string& key, const std::string& value) {
    facts.push_back({key, value});
  }
};

void render(const Report& report, bool as_json) {
  if (as_json) {
    nlohmann::ordered_json out;
    out["status"] = report.exit_code == 0 ? "OK" : "FAIL";
    if (report.exit_code != 0) out["reason"] = report.fail_reason;
    nlohmann::ordered_json facts = nlohmann::ordered_json::object();
    for (const auto& [key, value] : report.facts) facts[key] = value;
    out["facts"] = facts;
    std::cout << out.dump(2) << "\n";
    return;
  }
  if (report.exit_code == 0)
    std::cout << "OK\n";
  else
    std::cout << "FAIL " << report.fail_reason << "\n";
  for (const auto& [key, value] : report.facts)
    std::cout << key << ": " << value << "\n";
}

std::string join_elements(const QuantumStructure& s,
                          const std::vector<ElementId>& ids) {
  std::string out;
  for (ElementId id : ids) {
    if (!out.empty()) out += ", ";
    out += s.name(id);
  }
  return out.empty() ? "-" : out;
}

std::string flags_line(const Flavor& flavor) {
  auto names = flavor.names();
  std::string out;
  for (const auto& name : names) {
    if (!out.empty()) out += ",";
    out += name;
  }
  return out.empty() ? "-" : out;
}

std::string state_line(const State& state) {
  std::string out;
  const QuantumStructure& s = *state.structure();
  for (ElementId a = 0; a < s.size(); ++a) {
    if (!out.empty()) out += ", ";
    out += s.name(a) + "=" + to_string(state.value(a));
  }
  return out;
}

std::vector<std::pair<Rational, Rational>> parse_map_args(
    const std::vector<std::string>& args) {
  std::vector<std::pair<Rational, Rational>> table;
  for (const auto& arg : args) {
    auto eq = arg.find('=');
    if (eq == std::string::npos)
      fail(Errc::syntax_error, "expected t=v, got '" + arg + "'");
    table.push_back({parse_rational(arg.substr(0, eq)),
                     parse_rational(arg.substr(eq + 1))});
  }
  return table;
}

// ---------------------------------------------------------------------------
// Subcommand bodies

Report cmd_validate(const fs::path& path) {
  Report report;
  switch (detect_document_type(path)) {
    case DocumentType::structure: {
      auto loaded = load_structure_document(path);
      report.add("document", "structure");
      report.add("kind", kind_name(loaded.kind));
      if (loaded.kind == StructureKind::hilbert) {
        const auto& doc = *loaded.hilbert;
        report.add("dim", std::to_string(doc.dim));
        report.add("effects", std::to_string(doc.effects.size()));
        for (size_t i = 0; i < doc.effects.size(); ++i) {
          auto effect = EffectOperator::make(doc.effects[i].second);
          report.add("effect." + std::to_string(i),
                     "t=" + format_real(doc.effects[i].first) +
                         " herm-residual=" +
                         format_real(effect.hermiticity_residual()) +
                         " eig-range=[" + format_real(effect.min_eigenvalue()) +
                         ", " + format_real(effect.max_eigenvalue()) + "]");
        }
        if (doc.rho) {
          auto rho = DensityState::make(*doc.rho);
          report.add("rho", "trace-residual=" +
                                format_real(rho.trace_residual()) +
                                " min-eig=" + format_real(rho.min_eigenvalue()));
        }
        break;
      }
      const QuantumStructure& s = *loaded.structure;
      report.add("elements", std::to_string(s.size()));
      report.add("axioms", "i,ii,iii,iv verified");
      report.add("flags", flags_line(s.flavor()));
      break;
    }
    case DocumentType::observable: {
      auto x = load_observable_document(path);
      report.add("document", "observable");
      report.add("atoms", std::to_string(x.atoms().size()));
      for (size_t i = 0; i < x.atoms().size(); ++i)
        report.add("atom." + std::to_string(i),
                   "(" + to_string(x.atoms()[i].point) + ", " +
                       x.structure()->name(x.atoms()[i].effect) + ")");
      break;
    }
    case DocumentType::family: {
      auto loaded = load_family_document(path);
      auto axioms = check_family_axioms(loaded.structure, loaded.jumps);
      report.add("document", "spectral-family");
      report.add("jumps", std::to_string(loaded.jumps.size()));
      report.add("monotone", axioms.monotone_ok ? "pass" : "fail");
      report.add("limits",
                 axioms.top_is_one && axioms.bottom_is_zero ? "pass" : "fail");
      report.add("left-continuity", "representational");
      if (!axioms.all_ok()) {
        report.exit_code = 1;
        report.fail_reason = reason_code(Errc::family_invalid);
        report.add("error", axioms.detail);
      }
      break;
    }
    case DocumentType::state: {
      auto s = load_state_document(path);
      report.add("document", "state");
      report.add("values", state_line(s));
      break;
    }
  }
  return report;
}

Report cmd_build(const fs::path& family_path, const std::string& output) {
  Report report;
  if (detect_document_type(family_path) == DocumentType::structure) {
    auto loaded = load_structure_document(family_path);
    if (loaded.kind != StructureKind::hilbert)
      fail(Errc::kind_mismatch,
           family_path.string() + ": build expects a spectral family");
    std::vector<OperatorJump> jumps;
    for (const auto& [t, matrix] : loaded.hilbert->effects)
      jumps.push_back({t, EffectOperator::make(matrix)});
    auto povm = reconstruct_povm(OperatorSpectralFamily::make(std::move(jumps)));
    report.add("kind", "povm");
    report.add("atoms", std::to_string(povm.atoms().size()));
    for (size_t i = 0; i < povm.atoms().size(); ++i)
      report.add("atom." + std::to_string(i),
                 "t=" + format_real(povm.atoms()[i].point));
    if (!output.empty()) {
      write_text_file(output, povm_document_text(povm));
      report.add("written", output);
    }
    return report;
  }

  auto loaded = load_family_document(family_path);
  auto axioms = check_family_axioms(loaded.structure, loaded.jumps);
  if (!axioms.all_ok()) {
    report.exit_code = 1;
    report.fail_reason = reason_code(Errc::family_invalid);
    report.add("monotone", axioms.monotone_ok ? "pass" : "fail");
    report.add("limits",
               axioms.top_is_one && axioms.bottom_is_zero ? "pass" : "fail");
    report.add("error", axioms.detail);
    return report;
  }
  auto x = reconstruct(SpectralFamily::make(loaded.structure, loaded.jumps));
  report.add("kind", "observable");
  report.add("atoms", std::to_string(x.atoms().size()));
  for (size_t i = 0; i < x.atoms().size(); ++i)
    report.add("atom." + std::to_string(i),
               "(" + to_string(x.atoms()[i].point) + ", " +
                   x.structure()->name(x.atoms()[i].effect) + ")");
  if (!output.empty()) {
    // reference the structure document relative to the output location
    std::ifstream in(family_path);
    std::string line, ref;
    while (std::getline(in, line)) {
      auto pos = line.find("@structure");
      if (pos != std::string::npos) {
        std::istringstream ss(line.substr(pos + 10));
        ss >> ref;
        break;
      }
    }
    fs::path target = ref;
    if (target.is_relative()) target = family_path.parent_path() / target;
    target = fs::absolute(target).lexically_normal();
    fs::path out_dir = fs::path(output).parent_path();
    if (out_dir.empty()) out_dir = ".";
    out_dir = fs::absolute(out_dir).lexically_normal();
    std::error_code ec;
    fs::path rel = fs::relative(target, out_dir, ec);
    std::string stored = (ec || rel.empty()) ? target.string() : rel.string();
    write_text_file(output, observable_document_text(x, stored));
    report.add("written", output);
  }
  return report;
}

Report cmd_eval(const fs::path& obs_path, const std::string& set_text) {
  Report report;
  auto x = load_observable_document(obs_path);
  bool dropped = false;
  auto set = parse_interval_set(set_text, &dropped);
  if (dropped) report.add("warning", "empty interval piece dropped");
  report.add("value", x.structure()->name(x.evaluate(set)));
  return report;
}

Report cmd_spectrum(const fs::path& obs_path) {
  Report report;
  auto x = load_observable_document(obs_path);
  report.add("spectrum", spectrum(x).str());
  return report;
}

Report cmd_exp(const fs::path& input, const std::string& state_path,
               const std::string& rho_path,
               const std::vector<std::string>& map_args, int max_moment,
               bool with_distribution) {
  Report report;
  if (detect_document_type(input) == DocumentType::structure) {
    // POVM statistics in a density state
    auto loaded = load_structure_document(input);
    if (loaded.kind != StructureKind::hilbert)
      fail(Errc::kind_mismatch, input.string() + ": expected a POVM document");
    if (rho_path.empty())
      fail(Errc::precondition_failed, "--rho required for POVM statistics");
    std::vector<PovmAtom> atoms;
    for (const auto& [t, matrix] : loaded.hilbert->effects)
      atoms.push_back({t, EffectOperator::make(matrix)});
    auto povm = Povm::make(std::move(atoms));
    auto rho_doc = load_structure_document(rho_path);
    if (rho_doc.kind != StructureKind::hilbert || !rho_doc.hilbert->rho)
      fail(Errc::precondition_failed, rho_path + ": expected a @rho block");
    auto rho = DensityState::make(*rho_doc.hilbert->rho);
    auto stats = povm_statistics(povm, rho, std::max(max_moment, 1));
    if (with_distribution)
      for (size_t i = 0; i < stats.probabilities.size(); ++i)
        report.add("p." + format_real(povm.atoms()[i].point),
                   format_real(stats.probabilities[i]));
    report.add("expectation", format_real(stats.expectation));
    for (int m = 2; m <= max_moment; ++m)
      report.add("moment." + std::to_string(m),
                 format_real(stats.moments[m - 1]));
    report.add("probability-residual", format_real(stats.probability_residual));
    return report;
  }

  auto x = load_observable_document(input);
  if (state_path.empty())
    fail(Errc::precondition_failed, "--state required for observables");
  auto s = load_state_document(state_path);
  if (with_distribution)
    for (const auto& [t, p] : distribution(s, x))
      report.add("p." + to_string(t), to_string(p));
  if (map_args.empty())
    report.add("expectation", to_string(expectation(s, x)));
  else
    report.add("expectation",
               to_string(expectation(s, x, parse_map_args(map_args))));
  for (int m = 2; m <= max_moment; ++m)
    report.add("moment." + std::to_string(m), to_string(moment(s, x, m)));
  return report;
}

Report cmd_blocks(const fs::path& path) {
  Report report;
  auto loaded = load_structure_document(path);
  if (!loaded.structure)
    fail(Errc::kind_mismatch, "blocks expects a structure with elements");
  auto all = blocks(*loaded.structure);
  report.add("count", std::to_string(all.size()));
  for (size_t i = 0; i < all.size(); ++i)
    report.add("block." + std::to_string(i),
               join_elements(*loaded.structure, all[i]));
  return report;
}

Report cmd_sharp(const fs::path& path) {
  Report report;
  auto loaded = load_structure_document(path);
  if (!loaded.structure)
    fail(Errc::kind_mismatch, "sharp expects a structure with elements");
  auto result = sharp_elements(*loaded.structure);
  report.add("sharp", join_elements(*loaded.structure, result.elements));
  report.add("meet-undefined",
             join_elements(*loaded.structure, result.meet_undefined));
  return report;
}

Report cmd_states(const fs::path& path, bool extremal) {
  Report report;
  auto loaded = load_structure_document(path);
  if (!loaded.structure)
    fail(Errc::kind_mismatch, "states expects a structure with elements");
  auto polytope = state_polytope(loaded.structure);
  report.add("empty", polytope.empty() ? "true" : "false");
  if (polytope.empty()) return report;
  report.add("dimension", std::to_string(polytope.dimension()));
  report.add("free",
             join_elements(*loaded.structure, polytope.free_coordinates()));
  report.add("vertices", std::to_string(polytope.vertices().size()));
  if (extremal)
    for (size_t i = 0; i < polytope.vertices().size(); ++i)
      report.add("vertex." + std::to_string(i),
                 state_line(polytope.vertices()[i]));
  return report;
}

Report cmd_refine(const fs::path& path, const std::vector<std::string>& names) {
  Report report;
  auto loaded = load_structure_document(path);
  if (!loaded.structure)
    fail(Errc::kind_mismatch, "refine expects a structure with elements");
  const QuantumStructure& s = *loaded.structure;
  auto m = rdp_refine(s, s.id_of(names[0]), s.id_of(names[1]),
                      s.id_of(names[2]), s.id_of(names[3]));
  report.add("c11", s.name(m.c11));
  report.add("c12", s.name(m.c12));
  report.add("c21", s.name(m.c21));
  report.add("c22", s.name(m.c22));
  return report;
}

Report cmd_check_unique(const fs::path& x_path, const fs::path& y_path) {
  Report report;
  auto x = load_observable_document(x_path);
  auto y = load_observable_document(y_path);
  auto verdict = uniqueness_oracle(x, y);
  report.add("agree", verdict.agree ? "true" : "false");
  if (!verdict.agree) report.add("witness", verdict.witness->str());
  report.add("families-equal",
             spectral_family(x) == spectral_family(y) ? "true" : "false");
  return report;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "finite quantum structures: effect algebras, observables, spectral "
      "families, states, POVMs"};
  app.require_subcommand(1);

  bool as_json = false;
  std::string path, second, output, set_text, state_path, rho_path;
  std::vector<std::string> map_args, refine_names;
  int max_moment = 1;
  bool extremal = false, with_dist = false;

  auto* validate = app.add_subcommand("validate", "validate any document");
  validate->add_option("path", path)->required();
  validate->add_flag("--json", as_json);

  auto* build =
      app.add_subcommand("build", "reconstruct the observable of a family");
  build->add_option("--family", second, "spectral family document")->required();
  build->add_option("-o,--output", output, "write the result here");
  build->add_flag("--json", as_json);

  auto* eval = app.add_subcommand("eval", "evaluate an observable on a set");
  eval->add_option("observable", path)->required();
  eval->add_option("--set", set_text, "interval set")->required();
  eval->add_flag("--json", as_json);

  auto* spec_cmd = app.add_subcommand("spectrum", "spectrum of an observable");
  spec_cmd->add_option("observable", path)->required();
  spec_cmd->add_flag("--json", as_json);

  auto* exp = app.add_subcommand("exp", "expectation, moments, distribution");
  exp->add_option("input", path, "observable or POVM document")->required();
  exp->add_option("--state", state_path);
  exp->add_option("--rho", rho_path);
  exp->add_option("--map", map_args, "finite table entries t=v");
  exp->add_option("--moment", max_moment, "report moments up to this order");
  exp->add_flag("--dist", with_dist, "list outcome probabilities");
  exp->add_flag("--json", as_json);

  auto* blocks_cmd = app.add_subcommand("blocks", "maximal compatible subsets");
  blocks_cmd->add_option("structure", path)->required();
  blocks_cmd->add_flag("--json", as_json);

  auto* sharp_cmd = app.add_subcommand("sharp", "sharp elements");
  sharp_cmd->add_option("structure", path)->required();
  sharp_cmd->add_flag("--json", as_json);

  auto* states_cmd = app.add_subcommand("states", "state polytope");
  states_cmd->add_option("structure", path)->required();
  states_cmd->add_flag("--extremal", extremal, "list the extremal states");
  states_cmd->add_flag("--json", as_json);

  auto* refine =
      app.add_subcommand("refine", "refinement matrix of a1+a2 = b1+b2");
  refine->add_option("structure", path)->required();
  refine->add_option("elements", refine_names, "a1 a2 b1 b2")
      ->expected(4)
      ->required();
  refine->add_flag("--json", as_json);

  auto* unique =
      app.add_subcommand("check-unique", "compare two observables everywhere");
  unique->add_option("x", path)->required();
  unique->add_option("y", second)->required();
  unique->add_flag("--json", as_json);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 3;  // usage errors
  }

  Report report;
  try {
    if (*validate) report = cmd_validate(path);
    else if (*build) report = cmd_build(second, output);
    else if (*eval) report = cmd_eval(path, set_text);
    else if (*spec_cmd) report = cmd_spectrum(path);
    else if (*exp)
      report =
          cmd_exp(path, state_path, rho_path, map_args, max_moment, with_dist);
    else if (*blocks_cmd) report = cmd_blocks(path);
    else if (*sharp_cmd) report = cmd_sharp(path);
    else if (*states_cmd) report = cmd_states(path, extremal);
    else if (*refine) report = cmd_refine(path, refine_names);
    else if (*unique) report = cmd_check_unique(path, second);
  } catch (const Error& e) {
    report = Report{};
    report.exit_code = e.code() == Errc::syntax_error ? 2 : 1;
    report.fail_reason = reason_code(e.code());
    report.add("error", e.what());
  }
  render(report, as_json);
  return report.exit_code;
}
