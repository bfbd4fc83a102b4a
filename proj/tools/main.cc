// Copyright 2026 The fwa Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// fwa: command-line front end. Exit status 0 = clean, 1 = findings (or
// validation errors for `check`), 2 = I/O, parse or analysis errors.

#include <CLI11.hpp>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "fwa/analysis.h"
#include "fwa/cfg.h"
#include "fwa/error.h"
#include "fwa/frontends.h"
#include "fwa/interpreter.h"
#include "fwa/parser.h"
#include "fwa/report.h"

namespace {

constexpr int kExitClean = 0;
constexpr int kExitFindings = 1;
constexpr int kExitError = 2;

struct IoError {
  std::string message;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError{"cannot open '" + path + "'"};
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError{"cannot read '" + path + "'"};
  return ss.str();
}

void print_diagnostics(std::ostream& os, const std::string& file,
                       const std::vector<fwa::Diagnostic>& diags) {
  for (const fwa::Diagnostic& d : diags) {
    os << file;
    if (d.span) os << ":" << d.span->line << ":" << d.span->column;
    os << ": " << fwa::severity_name(d.severity) << ": " << fwa::diag_code_name(d.code) << ": "
       << d.message << "\n";
  }
}

struct InputOptions {
  std::string path;
  std::string from;
  std::string entry_chain;
  std::vector<unsigned> sets;
};

struct Loaded {
  fwa::Policy policy;
  std::vector<fwa::Diagnostic> diagnostics;
};

// IR files are parsed directly; vendor files (by --from or extension) are
// translated first and their warnings carried along.
Loaded load(const InputOptions& in) {
  std::string text = read_file(in.path);
  std::optional<fwa::Platform> platform;
  if (!in.from.empty()) {
    platform = fwa::platform_from_name(in.from);
    if (!platform) throw IoError{"unknown platform '" + in.from + "'"};
  } else {
    platform = fwa::platform_from_extension(in.path);
  }
  if (!platform) {
    fwa::ParseResult r = fwa::parse_and_validate(text);
    return {std::move(r.policy), std::move(r.diagnostics)};
  }
  fwa::TranslateOptions opts;
  if (!in.entry_chain.empty()) opts.entry_chain = in.entry_chain;
  if (!in.sets.empty()) opts.ipfw_sets = std::set<unsigned>(in.sets.begin(), in.sets.end());
  fwa::Translation t = fwa::translate(*platform, text, opts);
  Loaded out{std::move(t.policy), std::move(t.warnings)};
  for (fwa::Diagnostic& d : fwa::validate(out.policy)) out.diagnostics.push_back(std::move(d));
  return out;
}

// Loads and refuses to continue past validation errors.
Loaded load_valid(const InputOptions& in) {
  Loaded l = load(in);
  print_diagnostics(std::cerr, in.path, l.diagnostics);
  if (fwa::has_errors(l.diagnostics)) throw IoError{"'" + in.path + "' is not a valid policy"};
  return l;
}

std::uint64_t default_budget() {
  const char* env = std::getenv("FWA_BUDGET");
  if (env == nullptr || *env == '\0') return fwa::kDefaultBudget;
  char* end = nullptr;
  unsigned long long v = std::strtoull(env, &end, 0);
  if (*end != '\0' || v == 0) throw IoError{std::string("invalid FWA_BUDGET '") + env + "'"};
  return v;
}

void add_input(CLI::App* cmd, InputOptions& in, bool vendor_options) {
  cmd->add_option("file", in.path, "Policy file (IR, or vendor with --from)")->required();
  cmd->add_option("--from", in.from, "Source platform: netfilter, pf, ipfw, ipfilter");
  if (vendor_options) {
    cmd->add_option("--entry-chain", in.entry_chain, "netfilter: built-in chain to start from");
    cmd->add_option("--sets", in.sets, "ipfw: enabled rule sets")->delimiter(',');
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Static analysis of firewall policies"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "fwa 0.1.0");

  InputOptions in;
  std::string format = "text";
  std::uint64_t budget = 0;
  bool exact_cells = false;
  bool omit_call_return = false;
  bool trace = false;
  std::string packet_text;
  std::size_t step_limit = 0;

  CLI::App* check = app.add_subcommand("check", "Parse and validate a policy");
  add_input(check, in, true);

  CLI::App* analyze = app.add_subcommand("analyze", "Report unreachable rules and dead writes");
  add_input(analyze, in, true);
  analyze->add_flag("--exact-cells", exact_cells, "At most one cell per field may hold");
  analyze->add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"text", "json"}));
  analyze->add_option("--budget", budget, "Assignment budget (default 2^20, env FWA_BUDGET)");
  analyze->add_flag("--omit-call-return", omit_call_return,
                    "Give Return labels no incoming edges");

  CLI::App* translate = app.add_subcommand("translate", "Translate a vendor policy to IR");
  add_input(translate, in, true);

  CLI::App* facts = app.add_subcommand("facts", "Emit the Datalog fact base");
  add_input(facts, in, true);
  facts->add_flag("--omit-call-return", omit_call_return);

  CLI::App* dot = app.add_subcommand("dot", "Emit the control-flow graph as DOT");
  add_input(dot, in, true);
  dot->add_flag("--omit-call-return", omit_call_return);

  CLI::App* eval = app.add_subcommand("eval", "Run a policy on one packet");
  add_input(eval, in, true);
  eval->add_option("packet", packet_text, "\"saddr=A sport=N daddr=A dport=N proto=N\"")
      ->required();
  eval->add_flag("--trace", trace, "Print every rule visited");
  eval->add_option("--step-limit", step_limit, "Maximum rules visited (default 10 x rules)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitClean : kExitError;
  }

  fwa::CfgOptions cfg_options;
  if (omit_call_return) cfg_options.call_return = fwa::CallReturnFlow::kOmitted;

  try {
    if (check->parsed()) {
      Loaded l = load(in);
      print_diagnostics(std::cout, in.path, l.diagnostics);
      if (fwa::has_errors(l.diagnostics)) return kExitFindings;
      std::cout << in.path << ": ok, " << l.policy.size() << " rules\n";
      return kExitClean;
    }
    if (analyze->parsed()) {
      fwa::AnalysisOptions options;
      options.mode = exact_cells ? fwa::AnalysisMode::kExactCells
                                 : fwa::AnalysisMode::kIndependentColumns;
      options.budget = budget != 0 ? budget : default_budget();
      options.cfg = cfg_options;
      Loaded l = load(in);
      if (fwa::has_errors(l.diagnostics)) {
        print_diagnostics(std::cerr, in.path, l.diagnostics);
        return kExitError;
      }
      auto start = std::chrono::steady_clock::now();
      fwa::AnalysisResult result = fwa::analyze(l.policy, options);
      auto stop = std::chrono::steady_clock::now();

      fwa::Report report;
      report.file = in.path;
      report.findings = std::move(result.findings);
      report.diagnostics = std::move(l.diagnostics);
      report.stats = result.stats;
      report.runtime_ms = std::chrono::duration<double, std::milli>(stop - start).count();
      std::cout << (format == "json" ? fwa::to_json(report) : fwa::to_text(report));
      return report.findings.empty() ? kExitClean : kExitFindings;
    }
    if (translate->parsed()) {
      Loaded l = load(in);
      print_diagnostics(std::cerr, in.path, l.diagnostics);
      if (fwa::has_errors(l.diagnostics)) return kExitError;
      std::cout << fwa::print(l.policy);
      return kExitClean;
    }
    if (facts->parsed() || dot->parsed()) {
      Loaded l = load_valid(in);
      fwa::StaticVarCatalog catalog = fwa::build_catalog(l.policy);
      fwa::Cfg cfg = fwa::build_cfg(l.policy, catalog, cfg_options);
      if (facts->parsed()) {
        std::cout << fwa::emit_datalog(fwa::extract_facts(l.policy, cfg), cfg, catalog);
      } else {
        std::cout << fwa::emit_dot(l.policy, cfg, catalog);
      }
      return kExitClean;
    }
    if (eval->parsed()) {
      Loaded l = load_valid(in);
      fwa::Packet packet = fwa::parse_packet(packet_text);
      std::optional<std::size_t> limit;
      if (step_limit != 0) limit = step_limit;
      fwa::Evaluation ev = fwa::evaluate(l.policy, packet, limit);
      if (trace) {
        for (const fwa::TraceStep& s : ev.trace.steps) {
          std::cout << s.label << (s.matched ? " match " : " skip  ") << s.action;
          std::cout << "  {";
          const char* sep = "";
          for (const auto& [var, value] : s.store) {
            std::cout << sep << "$" << var << "=" << fwa::to_string(value);
            sep = ", ";
          }
          std::cout << "}\n";
        }
      }
      std::cout << ev.outcome.to_string() << "\n";
      return kExitClean;
    }
  } catch (const IoError& e) {
    std::cerr << "fwa: error: " << e.message << "\n";
    return kExitError;
  } catch (const fwa::Error& e) {
    std::cerr << "fwa: error: " << fwa::error_code_name(e.code()) << ": " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
