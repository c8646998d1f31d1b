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

// Acceptance run: one line per criterion, exit status 1 if any fails.

#include "fairshare/fairshare.hpp"
#include "fairshare/problem_file.hpp"
#include "fairshare_cli.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace fairshare;
using Q = rational;

struct criterion_result {
  bool passed = true;
  std::string note;
};

// Records the first failed expectation.
class expect {
 public:
  explicit expect(criterion_result& r) : r_(r) {}
  void that(bool ok, const std::string& what) {
    if (!ok && r_.passed) {
      r_.passed = false;
      r_.note = what;
    }
  }

 private:
  criterion_result& r_;
};

std::string data(const std::string& name) { return std::string(FAIRSHARE_DATA_DIR) + "/" + name; }

point<Q> qpoint(std::initializer_list<long long> xs) {
  point<Q> p;
  for (auto x : xs) p.push_back(Q(x));
  return p;
}

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

int cli_exit(std::vector<std::string> args, std::string* out = nullptr) {
  std::ostringstream o, e;
  int code = cli::run(args, o, e);
  if (out) *out = o.str();
  return code;
}

criterion_result power_plant() {
  criterion_result r;
  expect e(r);
  auto p = make_problem<Q>({qpoint({8, 2}), qpoint({2, 4})});
  auto psi = shapley_standalone(p);
  e.that(psi == qpoint({7, 3}), "psi is " + format_scalar(psi[0]) + ", " + format_scalar(psi[1]));
  auto rep = transfers(p, std::span<const Q>(psi));
  e.that(rep.alternative == qpoint({8, 2}), "efficient alternative is not (8, 2)");
  e.that(rep.payments.size() == 1 && rep.payments[0] == payment<Q>{0, 1, Q(1)}, "payment is not 1 -> 2: 1");
  return r;
}

criterion_result river() {
  criterion_result r;
  expect e(r);
  auto f = read_problem_file(data("river.json"));
  auto res = resolve<double>(f);
  auto psi = shapley_standalone(tabulate(*res.oracle));
  const double want[] = {4.5, 11.7, 21.3};
  for (int i = 0; i < 3; ++i)
    e.that(near(psi[i], want[i], 0.05), "psi_" + std::to_string(i + 1) + " = " + format_scalar(psi[i], 6));
  const std::vector<double> alpha = {1, 2, 3};
  auto inst = common_resource(alpha, 100.0);
  std::vector<concave_utility> u = {sqrt_utility(1), sqrt_utility(2), sqrt_utility(3)};
  auto fill = waterfill_claim(u, 100.0, coalition::grand(3));
  const double water[] = {7.1, 28.6, 64.3};
  for (int i = 0; i < 3; ++i) {
    e.that(near(inst.efficient_allocation[i], water[i], 0.05), "closed-form water allocation off");
    e.that(near(fill.allocation[i], water[i], 0.05), "water-filling allocation off");
  }
  auto rep = transfers<double>(inst.utilities, 0.0, psi);
  e.that(rep.payments.size() == 2, "expected two payments");
  if (rep.payments.size() == 2) {
    e.that(rep.payments[0].payer == 2 && rep.payments[0].payee == 0 && near(rep.payments[0].amount, 1.8, 0.05),
           "first payment is not 3 -> 1 of about 1.8");
    e.that(rep.payments[1].payer == 2 && rep.payments[1].payee == 1 && near(rep.payments[1].amount, 1.0, 0.05),
           "second payment is not 3 -> 2 of about 1.0");
  }
  return r;
}

criterion_result bankruptcy_split() {
  criterion_result r;
  expect e(r);
  const std::vector<Q> c = {Q(100), Q(200), Q(400)};
  auto inst = bankruptcy<Q>(c, Q(300));
  auto by_vertices = stand_alone(inst.polytope);
  auto by_oracle = tabulate(inst.oracle);
  e.that(by_vertices == by_oracle, "vertex and oracle games differ");
  e.that(shapley_standalone(by_vertices) == qpoint({50, 100, 150}), "vertex path is not (50, 100, 150)");
  e.that(shapley_standalone(by_oracle) == qpoint({50, 100, 150}), "oracle path is not (50, 100, 150)");
  return r;
}

criterion_result inheritance() {
  criterion_result r;
  expect e(r);
  const std::vector<Q> v = {Q(300), Q(270), Q(240)};
  auto p = indivisible_good<Q>(v);
  auto psi = shapley_standalone(p);
  e.that(psi == qpoint({125, 95, 80}), "psi is not (125, 95, 80)");
  auto rep = transfers(p, std::span<const Q>(psi));
  e.that(rep.payments == std::vector<payment<Q>>{{0, 1, Q(95)}, {0, 2, Q(80)}}, "payments are not 1 -> 2: 95, 1 -> 3: 80");
  return r;
}

criterion_result surplus_table() {
  criterion_result r;
  expect e(r);
  auto c = make_surplus_problem<Q>({qpoint({10, 4, -4}), qpoint({4, 6, -4}), qpoint({9, 2, -2}), qpoint({2, 7, -2})});
  auto w = surplus_game(c);
  e.that(w(coalition::of({0})) == Q(7), "w({1}) is not 7");
  e.that(w(coalition::of({1})) == Q(5), "w({2}) is not 5");
  e.that(w(coalition::grand(2)) == Q(10), "w(N) is not 10");
  e.that(shapley_surplus(c) == qpoint({6, 4}), "phi is not (6, 4)");
  return r;
}

criterion_result dummy_separation() {
  criterion_result r;
  expect e(r);
  auto p = make_problem<Q>({qpoint({0, 2, 0}), qpoint({0, 0, 1})});
  auto g = stand_alone(p);
  e.that(eans(g)[0] == Q(1) / 3, "EANS does not give player 1 exactly 1/3");
  e.that(esil(g)[0] == Q(-1) / 3, "ESIL does not give player 1 exactly -1/3");
  e.that(shapley_standalone(g)[0] == Q(0), "Shapley does not give player 1 zero");
  e.that(check_dummy(make_solution<Q, plain_tag>(solution_kind::shapley), p, 0).passed, "dummy fails for Shapley");
  for (auto kind : {solution_kind::eans, solution_kind::esil}) {
    auto v = check_dummy(make_solution<Q, plain_tag>(kind), p, 0);
    e.that(!v.passed && v.witness && v.witness->player == 0u, std::string("dummy passes for ") + std::string(to_string(kind)));
  }
  std::string out;
  e.that(cli_exit({"check", data("dummy_separation.json"), "dummy"}) == 0, "CLI dummy check fails for Shapley");
  e.that(cli_exit({"check", data("dummy_separation.json"), "dummy", "--solution", "eans"}, &out) == 1 &&
             out.find("player 1") != std::string::npos,
         "CLI dummy check for EANS does not exit 1 with a witness");
  e.that(cli_exit({"check", data("dummy_separation.json"), "dummy", "--solution", "esil"}, &out) == 1 &&
             out.find("player 1") != std::string::npos,
         "CLI dummy check for ESIL does not exit 1 with a witness");
  return r;
}

criterion_result park(double& montecarlo_seconds) {
  criterion_result r;
  expect e(r);
  auto f = read_problem_file(data("park.json"));
  auto res = resolve<double>(f);
  e.that(res.players == 10000, "park instance does not have 10000 households");
  auto start = std::chrono::steady_clock::now();
  auto est = shapley_montecarlo(*res.oracle, 100000, 20240601, res.group_of);
  montecarlo_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const double want[] = {10, 5, 0};
  e.that(est.groups.size() == 3, "expected three groups");
  for (std::size_t g = 0; g < est.groups.size() && g < 3; ++g)
    e.that(near(est.groups[g].mean, want[g], 0.5),
           "group " + std::to_string(g + 1) + " mean " + format_scalar(est.groups[g].mean, 6));
  e.that(montecarlo_seconds < 60.0, "Monte-Carlo run took " + format_scalar(montecarlo_seconds, 3) + " s");

  auto small = resolve<Q>(read_problem_file(data("park_small.json")));
  auto game = surplus_game(*small.surplus);
  e.that(shapley_standalone(game) == shapley_permutation_oracle(game), "n = 10 park differs from the permutation oracle");
  e.that(game == tabulate(*small.oracle), "n = 10 park generator and oracle games differ");
  if (r.passed) {
    r.note = "group means";
    for (const auto& g : est.groups) r.note += " " + format_scalar(g.mean, 4);
  }
  return r;
}

criterion_result oracle_equivalence() {
  criterion_result r;
  expect e(r);
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const std::size_t n = 1 + seed % 6;
    auto p = random_problem<Q>(n, 1 + seed % 8, -10, 10, seed, 6);
    auto g = stand_alone(p);
    if (shapley_standalone(g) != shapley_permutation_oracle(g)) e.that(false, "seed " + std::to_string(seed));
  }
  return r;
}

// A problem where `dummy` is zero on every generator except one dominated
// generator, which gives it a negative amount.
bargaining_problem<Q> with_dummy(const bargaining_problem<Q>& p, std::size_t dummy) {
  auto gens = p.generators();
  for (auto& g : gens) g[dummy] = Q(0);
  auto low = gens.front();
  for (auto& x : low) x -= 1;
  low[dummy] = Q(-1);
  gens.push_back(low);
  return bargaining_problem<Q>(std::move(gens));
}

criterion_result axiom_suite() {
  criterion_result r;
  expect e(r);
  auto sol = make_solution<Q, plain_tag>(solution_kind::shapley);
  auto sol_d = make_solution<double, plain_tag>(solution_kind::shapley);
  std::size_t dummy_checks = 0, monotone_checks = 0;
  double worst_ratio = 0.0;
  for (std::uint64_t seed = 0; seed < 1000 && r.passed; ++seed) {
    const std::size_t n = 1 + seed % 5;
    const std::size_t k = 1 + (seed / 5) % 8;
    auto p = random_problem<Q>(n, k, -10, 10, seed);
    counter_rng rng(seed, 1);
    const std::string tag = " (problem " + std::to_string(seed) + ")";

    e.that(check_efficiency(sol, p).passed, "efficiency" + tag);
    e.that(check_anonymity(sol, p, random_permutation(n, rng)).passed, "anonymity" + tag);
    auto partner = random_problem<Q>(n, 1 + rng.below(8), -10, 10, seed + 100000);
    e.that(check_additivity(sol, p, partner).passed, "additivity" + tag);

    auto dp = seed % 4 == 0 ? with_dummy(p, rng.below(n)) : p;
    for (std::size_t i = 0; i < n; ++i)
      if (dummy_hypothesis(dp, i)) {
        ++dummy_checks;
        e.that(check_dummy(sol, dp, i).passed, "dummy" + tag);
      }

    if (seed % 2 == 0) {
      auto x = p.generator(rng.below(p.size()));
      auto i = static_cast<std::size_t>(rng.below(n));
      x[i] += Q(static_cast<long long>(1 + rng.below(20))) / 4;
      ++monotone_checks;
      e.that(check_monotonicity(sol, p, i, x).passed, "monotonicity" + tag);
    }

    auto cont = check_continuity(sol_d, problem_cast<double>(p), 0.01, 100, seed);
    e.that(cont.passed, "continuity" + tag);
    if (cont.observed_ratio) worst_ratio = std::max(worst_ratio, *cont.observed_ratio);
  }
  e.that(monotone_checks == 500, "expected 500 monotonicity instances");
  e.that(dummy_checks >= 250, "too few dummy instances");
  if (r.passed)
    r.note = std::to_string(dummy_checks) + " dummy checks, worst continuity ratio " + format_scalar(worst_ratio, 4);
  return r;
}

criterion_result translation_scaling() {
  criterion_result r;
  expect e(r);
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const std::size_t n = 1 + seed % 5;
    auto p = random_problem<Q>(n, 1 + seed % 7, -10, 10, seed + 5000);
    counter_rng rng(seed, 2);
    point<Q> t(n);
    for (auto& x : t) x = Q(static_cast<long long>(rng.below(41)) - 20) / Q(static_cast<long long>(1 + rng.below(6)));
    Q lambda = Q(static_cast<long long>(rng.below(30))) / Q(static_cast<long long>(1 + rng.below(7)));
    auto base = shapley_standalone(p);
    auto moved = shapley_standalone(translate(p, std::span<const Q>(t)));
    auto scaled = shapley_standalone(scale(p, lambda));
    for (std::size_t i = 0; i < n; ++i) {
      e.that(moved[i] == base[i] + t[i], "translation, seed " + std::to_string(seed));
      e.that(scaled[i] == lambda * base[i], "scaling, seed " + std::to_string(seed));
    }
    e.that(shapley_standalone(make_problem<Q>({t})) == t, "singleton, seed " + std::to_string(seed));
  }
  return r;
}

}  // namespace

int main() {
  struct entry {
    int id;
    const char* name;
    double limit_seconds;
    std::function<criterion_result()> run;
  };
  double montecarlo_seconds = 0.0;
  const std::vector<entry> criteria = {
      {1, "power plant: (7, 3), alternative (8, 2), 1 -> 2 pays 1", 1.0, power_plant},
      {2, "river: shares, water allocation and transfers within 0.05", 1.0, river},
      {3, "bankruptcy: (50, 100, 150) by vertices and by oracle", 1.0, bankruptcy_split},
      {4, "inheritance: (125, 95, 80), payments 95 and 80", 1.0, inheritance},
      {5, "surplus table: (6, 4), claims 7, 5, 10", 1.0, surplus_table},
      {6, "EANS 1/3, ESIL -1/3, Shapley 0, dummy separation", 0.0, dummy_separation},
      {7, "park: Monte-Carlo group means and exact n = 10", 0.0, [&] { return park(montecarlo_seconds); }},
      {8, "500 random games: formula equals permutation average", 30.0, oracle_equivalence},
      {9, "axiom suite on 1000 random problems", 120.0, axiom_suite},
      {10, "translation and scaling identities on 200 instances", 0.0, translation_scaling},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    criterion_result r;
    try {
      r = c.run();
    } catch (const std::exception& ex) {
      r.passed = false;
      r.note = std::string("exception: ") + ex.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_seconds > 0 && secs >= c.limit_seconds && r.passed) {
      r.passed = false;
      r.note = "took longer than " + format_scalar(c.limit_seconds, 3) + " s";
    }
    if (!r.passed) ++failures;
    std::cout << (r.passed ? "[PASS] " : "[FAIL] ") << c.id << ". " << c.name << " (" << format_scalar(secs, 3) << " s";
    if (c.id == 7) std::cout << ", Monte-Carlo " << format_scalar(montecarlo_seconds, 3) << " s";
    std::cout << ")";
    if (!r.note.empty()) std::cout << ": " << r.note;
    std::cout << "\n";
  }
  std::cout << (failures ? "FAILED: " : "all criteria passed: ") << (criteria.size() - failures) << "/"
            << criteria.size() << "\n";
  return failures ? 1 : 0;
}
