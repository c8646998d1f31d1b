// Copyright 2026 The fairshare Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command dispatch for the fairshare tool. Exit codes:
//   0  success (and every requested axiom check passed)
//   1  an axiom check failed
//   2  usage or problem-file parse error
//   3  infeasible or unsupported parameters

#ifndef FAIRSHARE_TOOLS_CLI_HPP
#define FAIRSHARE_TOOLS_CLI_HPP

#include "fairshare/fairshare.hpp"
#include "fairshare/problem_file.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <iostream>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace fairshare::cli {

using nlohmann::json;

enum exit_code : int { ok = 0, check_failed = 1, usage = 2, infeasible = 3 };

struct common_flags {
  std::string file;
  std::string solution = "shapley";
  std::optional<std::string> backend_name;
  bool json_output = false;
  int precision = 6;
};

inline json scalar_json(const rational& x) { return detail::number_to_json(x); }
inline json scalar_json(double x) { return x; }

template <Scalar T>
json vector_json(std::span<const T> xs) {
  json a = json::array();
  for (const auto& x : xs) a.push_back(scalar_json(x));
  return a;
}

inline std::string party_name(std::size_t index, std::size_t n) {
  return index == n ? std::string("fund") : std::to_string(index + 1);
}

inline json party_json(std::size_t index, std::size_t n) {
  if (index == n) return "fund";
  return index + 1;
}

template <Scalar T>
std::string format_vector(std::span<const T> xs, int precision) {
  std::string s = "(";
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? ", " : "") + format_scalar(xs[i], precision);
  return s + ")";
}

inline std::string format_coalition(coalition s) {
  std::string out = "{";
  bool first = true;
  for (auto i : s.members()) {
    out += (first ? "" : ",") + std::to_string(i + 1);
    first = false;
  }
  return out + "}";
}

inline backend pick_backend(const common_flags& flags, const problem_file& f) {
  if (flags.backend_name) return *flags.backend_name == "exact" ? backend::exact : backend::floating;
  if (f.preferred_backend) return *f.preferred_backend;
  if (f.application && std::holds_alternative<common_resource_spec>(*f.application)) return backend::floating;
  return backend::exact;
}

template <Scalar T>
stand_alone_game<T> game_for(const resolved_problem<T>& r) {
  if (r.plain) return stand_alone(*r.plain);
  if (r.surplus) return surplus_game(*r.surplus);
  return tabulate(*r.oracle);
}

struct solve_flags : common_flags {
  bool claims = false;
  bool transfers = false;
};

template <Scalar T>
int run_solve(const solve_flags& flags, const problem_file& file, std::ostream& out, std::ostream& err) {
  const auto kind = *parse_solution_kind(flags.solution);
  auto r = resolve<T>(file);
  auto game = game_for(r);
  auto psi = solve(game, kind);
  const std::size_t n = r.players;
  std::ostream& text = flags.json_output ? err : out;
  const int prec = flags.precision;

  json doc = json::object();
  doc["command"] = "solve";
  doc["solution_name"] = std::string(to_string(kind));
  doc["backend"] = scalar_traits<T>::exact ? "exact" : "float";
  doc["n"] = n;
  doc["solution"] = vector_json<T>(psi);

  text << "problem: " << r.kind << ", " << n << " players (" << (scalar_traits<T>::exact ? "exact" : "float")
       << " backend)\n";
  text << "solution (" << to_string(kind) << "): " << format_vector<T>(psi, prec) << "\n";

  if (flags.claims) {
    json table = json::array();
    text << "claims:\n";
    for (std::size_t m = 0; m < game.values().size(); ++m) {
      coalition s(static_cast<coalition::mask_type>(m));
      json members = json::array();
      for (auto i : s.members()) members.push_back(i + 1);
      table.push_back({{"coalition", members}, {"value", scalar_json(game(s))}});
      text << "  " << format_coalition(s) << " " << format_scalar(game(s), prec) << "\n";
    }
    doc["claims"] = std::move(table);
  }

  if (flags.transfers) {
    solution_report<T> report;
    std::optional<std::size_t> index;
    if (r.plain) {
      index = select_efficient_alternative(*r.plain);
      report = transfers(*r.plain, std::span<const T>(psi));
    } else if (r.surplus) {
      index = select_efficient_alternative(*r.surplus);
      report = transfers(*r.surplus, std::span<const T>(psi));
    } else if (r.alternative) {
      report = transfers<T>(*r.alternative, T(0), psi);
    } else {
      throw error(errc::unsupported, "no efficient alternative is known for this problem");
    }
    json alt = json::object();
    if (index) alt["index"] = *index + 1;
    alt["utilities"] = vector_json<T>(report.alternative);
    if (r.surplus) alt["surplus"] = scalar_json(report.alternative_surplus);
    doc["alternative"] = std::move(alt);
    doc["net_transfers"] = vector_json<T>(report.net_transfers);
    json pays = json::array();
    for (const auto& p : report.payments)
      pays.push_back({{"from", party_json(p.payer, n)}, {"to", party_json(p.payee, n)}, {"amount", scalar_json(p.amount)}});
    doc["payments"] = std::move(pays);

    text << "alternative: ";
    if (index) text << "#" << *index + 1 << " ";
    text << format_vector<T>(report.alternative, prec);
    if (r.surplus) text << " surplus " << format_scalar(report.alternative_surplus, prec);
    text << "\nnet transfers: " << format_vector<T>(report.net_transfers, prec) << "\npayments:\n";
    if (report.payments.empty()) text << "  none\n";
    for (const auto& p : report.payments)
      text << "  " << party_name(p.payer, n) << " -> " << party_name(p.payee, n) << ": "
           << format_scalar(p.amount, prec) << "\n";
  }

  if (flags.json_output) {
    doc["problem"] = to_json(file);
    out << doc.dump() << "\n";
  }
  return ok;
}

struct check_flags : common_flags {
  std::string axiom = "all";
  std::size_t trials = 20;
  std::uint64_t seed = 1;
  double delta = 0.01;
};

inline json verdict_json(const axiom_verdict& v) {
  json j = {{"axiom", v.axiom}, {"passed", v.passed}, {"applicable", v.applicable}, {"tolerance", v.tolerance}};
  if (v.observed_ratio) j["observed_ratio"] = *v.observed_ratio;
  if (v.witness) {
    json w = {{"expected", v.witness->expected}, {"observed", v.witness->observed}, {"detail", v.witness->detail}};
    if (v.witness->player) w["player"] = *v.witness->player + 1;
    j["witness"] = std::move(w);
  }
  return j;
}

template <Scalar T, typename K>
int run_checks(const check_flags& flags, const basic_problem<T, K>& p, std::span<const std::string_view> axioms,
               std::ostream& out, std::ostream& err) {
  auto sol = make_solution<T, K>(*parse_solution_kind(flags.solution));
  suite_options opt{flags.trials, flags.seed, flags.delta};
  std::vector<axiom_verdict> verdicts;
  for (auto a : axioms) verdicts.push_back(run_axiom<T, K>(a, sol, p, opt));

  std::ostream& text = flags.json_output ? err : out;
  bool all_passed = true;
  json list = json::array();
  for (const auto& v : verdicts) {
    list.push_back(verdict_json(v));
    if (!v.applicable) {
      text << "SKIP " << v.axiom << ": hypothesis not met\n";
      continue;
    }
    all_passed = all_passed && v.passed;
    text << (v.passed ? "PASS " : "FAIL ") << v.axiom;
    if (v.observed_ratio) text << " (max ratio " << format_scalar(*v.observed_ratio, 4) << ")";
    if (v.witness) {
      text << ": ";
      if (v.witness->player) text << "player " << *v.witness->player + 1 << " ";
      text << "expected " << v.witness->expected << ", observed " << v.witness->observed << " ["
           << v.witness->detail << "]";
    }
    text << "\n";
  }
  if (flags.json_output) {
    json doc = {{"command", "check"}, {"solution_name", flags.solution}, {"passed", all_passed}, {"verdicts", list}};
    out << doc.dump() << "\n";
  }
  return all_passed ? ok : check_failed;
}

template <Scalar T>
int run_check(const check_flags& flags, const problem_file& file, std::ostream& out, std::ostream& err) {
  auto r = resolve<T>(file);
  auto select = [&](std::span<const std::string_view> known) {
    std::vector<std::string_view> chosen;
    if (flags.axiom == "all") chosen.assign(known.begin(), known.end());
    else chosen.push_back(flags.axiom);
    return chosen;
  };
  if (r.plain) return run_checks<T, plain_tag>(flags, *r.plain, select(plain_axioms), out, err);
  if (r.surplus) return run_checks<T, surplus_tag>(flags, *r.surplus, select(surplus_axioms), out, err);
  throw error(errc::unsupported, "axiom checks need a generator list; this application only provides claims");
}

struct estimate_flags : common_flags {
  std::size_t samples = 10000;
  std::uint64_t seed = 1;
  std::size_t threads = 0;
};

inline int run_estimate(const estimate_flags& flags, const problem_file& file, std::ostream& out, std::ostream& err) {
  if (!file.application || !(std::holds_alternative<public_good_spec>(*file.application) ||
                             std::holds_alternative<common_resource_spec>(*file.application) ||
                             std::holds_alternative<bankruptcy_spec>(*file.application)))
    throw error(errc::unsupported, "estimate needs a claim-oracle application (public-good, common-resource, bankruptcy)");
  auto r = resolve<double>(file);
  auto report = shapley_montecarlo(*r.oracle, flags.samples, flags.seed, r.group_of, flags.threads);
  std::ostream& text = flags.json_output ? err : out;
  const int prec = flags.precision;
  auto se_text = [&](double se) { return report.standard_error_defined ? format_scalar(se, prec) : std::string("undefined"); };

  json doc = {{"command", "estimate"},
              {"samples", report.samples},
              {"seed", report.seed},
              {"standard_error_defined", report.standard_error_defined}};
  text << "estimate: " << r.kind << ", " << r.players << " players, " << report.samples << " samples, seed "
       << report.seed << "\n";
  if (!report.groups.empty()) {
    json groups = json::array();
    for (std::size_t g = 0; g < report.groups.size(); ++g) {
      const auto& ge = report.groups[g];
      groups.push_back({{"count", ge.count},
                        {"value", detail::number_to_json(r.groups[g].value)},
                        {"mean", ge.mean},
                        {"standard_error", ge.standard_error}});
      text << "  group " << g + 1 << " (" << ge.count << " players, value " << format_scalar(r.groups[g].value)
           << "): " << format_scalar(ge.mean, prec) << " +/- " << se_text(ge.standard_error) << "\n";
    }
    doc["groups"] = std::move(groups);
  } else {
    doc["estimate"] = report.estimate;
    doc["standard_error"] = report.standard_error;
    for (std::size_t i = 0; i < report.estimate.size(); ++i)
      text << "  player " << i + 1 << ": " << format_scalar(report.estimate[i], prec) << " +/- "
           << se_text(report.standard_error[i]) << "\n";
  }
  if (flags.json_output) out << doc.dump() << "\n";
  return ok;
}

/// Entry point; `args` excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"fairshare: fair allocations with transfers"};
  app.require_subcommand(1);

  auto add_common = [](CLI::App* cmd, common_flags& f, bool with_solution) {
    cmd->add_option("file", f.file, "problem file (JSON)")->required();
    if (with_solution)
      cmd->add_option("--solution", f.solution, "shapley | eans | esil")
          ->check(CLI::IsMember({"shapley", "eans", "esil"}));
    cmd->add_option("--backend", f.backend_name, "exact | float")->check(CLI::IsMember({"exact", "float"}));
    cmd->add_flag("--json", f.json_output, "machine-readable report on stdout");
    cmd->add_option("--precision", f.precision, "significant digits for floats")->check(CLI::Range(1, 17));
  };

  const auto at_least_one = CLI::Range(std::size_t(1), std::numeric_limits<std::size_t>::max()).description("");

  solve_flags sf;
  auto* solve_cmd = app.add_subcommand("solve", "compute a solution");
  add_common(solve_cmd, sf, true);
  solve_cmd->add_flag("--claims", sf.claims, "print the claims table");
  solve_cmd->add_flag("--transfers", sf.transfers, "print the efficient alternative and payments");

  check_flags cf;
  auto* check_cmd = app.add_subcommand("check", "run axiom checks");
  add_common(check_cmd, cf, true);
  check_cmd->add_option("axiom", cf.axiom, "axiom name or 'all'");
  check_cmd->add_option("--trials", cf.trials, "randomized instances per axiom")->check(at_least_one);
  check_cmd->add_option("--seed", cf.seed, "seed for randomized instances");
  check_cmd->add_option("--delta", cf.delta, "perturbation size for continuity")->check(CLI::NonNegativeNumber);

  estimate_flags ef;
  auto* estimate_cmd = app.add_subcommand("estimate", "Monte-Carlo Shapley estimate");
  add_common(estimate_cmd, ef, false);
  estimate_cmd->add_option("--samples", ef.samples, "number of random orders")->check(at_least_one);
  estimate_cmd->add_option("--seed", ef.seed, "sampling seed");
  estimate_cmd->add_option("--threads", ef.threads, "worker threads (0 = all cores)");

  common_flags vf;
  auto* convert_cmd = app.add_subcommand("convert", "rewrite a problem file in generator form");
  convert_cmd->add_option("file", vf.file, "problem file (JSON)")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return usage;
  }

  try {
    if (solve_cmd->parsed()) {
      auto file = read_problem_file(sf.file);
      return pick_backend(sf, file) == backend::exact ? run_solve<rational>(sf, file, out, err)
                                                      : run_solve<double>(sf, file, out, err);
    }
    if (check_cmd->parsed()) {
      const bool known = cf.axiom == "all" || std::find(std::begin(plain_axioms), std::end(plain_axioms), cf.axiom) !=
                                                  std::end(plain_axioms) ||
                         cf.axiom == "compromise";
      if (!known) {
        err << "error: unknown axiom '" << cf.axiom << "'\n";
        return usage;
      }
      auto file = read_problem_file(cf.file);
      return pick_backend(cf, file) == backend::exact ? run_check<rational>(cf, file, out, err)
                                                      : run_check<double>(cf, file, out, err);
    }
    if (estimate_cmd->parsed()) {
      auto file = read_problem_file(ef.file);
      return run_estimate(ef, file, out, err);
    }
    auto file = read_problem_file(vf.file);
    out << to_json(to_generator_form(file)).dump(2) << "\n";
    return ok;
  } catch (const parse_error& e) {
    err << "error: " << e.what() << "\n";
    return usage;
  } catch (const error& e) {
    err << "error: " << e.what() << "\n";
    return infeasible;
  }
}

}  // namespace fairshare::cli

#endif  // FAIRSHARE_TOOLS_CLI_HPP
