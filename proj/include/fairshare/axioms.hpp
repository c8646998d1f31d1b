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

/// \file fairshare/axioms.hpp
///
/// Executable versions of the fairness axioms. Each check runs a solution
/// function on concrete problems and returns a verdict; a failing verdict
/// carries a witness and a closure that replays the same predicate.
///
/// Hypotheses (dummy player, monotone improvement) are certified from the
/// generator list only. When a hypothesis cannot be certified the check
/// throws errc::hypothesis_not_met rather than guessing.

#ifndef FAIRSHARE_AXIOMS_HPP
#define FAIRSHARE_AXIOMS_HPP

#include "fairshare/core.hpp"
#include "fairshare/random.hpp"
#include "fairshare/solutions.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace fairshare {

struct axiom_witness {
  std::optional<std::size_t> player;
  std::string expected;
  std::string observed;
  std::string detail;
};

struct axiom_verdict {
  std::string axiom;
  bool passed = true;
  /// False when the axiom's hypothesis held for no instance tried.
  bool applicable = true;
  std::optional<axiom_witness> witness;
  double tolerance = 0.0;
  /// Continuity only: largest observed |change in solution| / distance bound.
  std::optional<double> observed_ratio;
  /// Re-evaluates the same predicate on the same inputs.
  std::function<axiom_verdict()> replay;
};

/// Equality tolerance used by the checks: exact for rationals, 1e-7 for
/// doubles.
template <Scalar T>
T axiom_tolerance() {
  if constexpr (scalar_traits<T>::exact) return T(0);
  else return 1e-7;
}

template <Scalar U, Scalar T, typename K>
basic_problem<U, K> problem_cast(const basic_problem<T, K>& p) {
  std::vector<point<U>> gens;
  for (const auto& g : p.generators()) {
    point<U> x;
    for (const auto& v : g) {
      if constexpr (std::same_as<U, T>) x.push_back(v);
      else if constexpr (std::same_as<U, double>) x.push_back(to_double(v));
      else x.push_back(U(v));
    }
    gens.push_back(std::move(x));
  }
  return basic_problem<U, K>(std::move(gens));
}

namespace detail {

template <Scalar T>
std::string format_point(std::span<const T> x) {
  std::string s = "(";
  for (std::size_t i = 0; i < x.size(); ++i) s += (i ? ", " : "") + format_scalar(x[i], 10);
  return s + ")";
}

template <Scalar T>
axiom_verdict make_verdict(std::string axiom) {
  axiom_verdict v;
  v.axiom = std::move(axiom);
  v.tolerance = to_double(axiom_tolerance<T>());
  return v;
}

/// First player where lhs and rhs differ beyond the tolerance.
template <Scalar T>
std::optional<std::size_t> first_mismatch(std::span<const T> lhs, std::span<const T> rhs) {
  for (std::size_t i = 0; i < lhs.size(); ++i)
    if (!nearly_equal(lhs[i], rhs[i], axiom_tolerance<T>())) return i;
  return std::nullopt;
}

}  // namespace detail

/// Solution total equals the largest generator total.
template <Scalar T, typename K>
axiom_verdict check_efficiency(const solution_function<T, K>& sol, const basic_problem<T, K>& p) {
  auto v = detail::make_verdict<T>("efficiency");
  v.replay = [sol, p] { return check_efficiency(sol, p); };
  const auto& best = p.generator(select_efficient_alternative(p));
  T target = std::accumulate(best.begin(), best.end(), T(0));
  auto psi = sol(p);
  T total = std::accumulate(psi.begin(), psi.end(), T(0));
  if (!nearly_equal(total, target, axiom_tolerance<T>())) {
    v.passed = false;
    v.witness = axiom_witness{std::nullopt, format_scalar(target, 10), format_scalar(total, 10),
                              "solution " + detail::format_point<T>(psi) + " does not add up to the efficient total"};
  }
  return v;
}

/// sol(rho(B)) = rho(sol(B)).
template <Scalar T, typename K>
axiom_verdict check_anonymity(const solution_function<T, K>& sol, const basic_problem<T, K>& p,
                              std::vector<std::size_t> rho) {
  auto v = detail::make_verdict<T>("anonymity");
  v.replay = [sol, p, rho] { return check_anonymity(sol, p, rho); };
  auto lhs = sol(permute(p, rho));
  auto base = sol(p);
  auto rhs = permute_point<T>(base, rho);
  if (auto i = detail::first_mismatch<T>(lhs, rhs)) {
    v.passed = false;
    v.witness = axiom_witness{*i, format_scalar(rhs[*i], 10), format_scalar(lhs[*i], 10),
                              "solution of the permuted problem " + detail::format_point<T>(lhs) +
                                  " vs permuted solution " + detail::format_point<T>(rhs)};
  }
  return v;
}

/// True when every Pareto generator gives player i exactly zero.
template <Scalar T>
bool dummy_hypothesis(const bargaining_problem<T>& p, std::size_t i) {
  for (auto k : pareto_indices(p))
    if (!nearly_equal(p.generator(k)[i], T(0), axiom_tolerance<T>())) return false;
  return true;
}

/// A player with zero utility on the Pareto frontier receives zero.
template <Scalar T>
axiom_verdict check_dummy(const solution_function<T, plain_tag>& sol, const bargaining_problem<T>& p, std::size_t i) {
  if (i >= p.players()) throw error(errc::invalid_parameter, "player index out of range");
  if (!dummy_hypothesis(p, i))
    throw error(errc::hypothesis_not_met, "player " + std::to_string(i) + " is not zero on every Pareto generator");
  auto v = detail::make_verdict<T>("dummy");
  v.replay = [sol, p, i] { return check_dummy(sol, p, i); };
  auto psi = sol(p);
  if (!nearly_equal(psi[i], T(0), axiom_tolerance<T>())) {
    v.passed = false;
    v.witness = axiom_witness{i, "0", format_scalar(psi[i], 10), "dummy player receives a nonzero amount"};
  }
  return v;
}

/// sol(a + b) = sol(a) + sol(b), with Minkowski addition.
template <Scalar T, typename K>
axiom_verdict check_additivity(const solution_function<T, K>& sol, const basic_problem<T, K>& a,
                               const basic_problem<T, K>& b) {
  auto v = detail::make_verdict<T>("additivity");
  v.replay = [sol, a, b] { return check_additivity(sol, a, b); };
  auto joint = sol(minkowski_sum(a, b));
  auto sa = sol(a), sb = sol(b);
  allocation<T> separate(sa.size());
  for (std::size_t i = 0; i < sa.size(); ++i) separate[i] = sa[i] + sb[i];
  if (auto i = detail::first_mismatch<T>(joint, separate)) {
    v.passed = false;
    v.witness = axiom_witness{*i, format_scalar(separate[*i], 10), format_scalar(joint[*i], 10),
                              "joint " + detail::format_point<T>(joint) + " vs separate sum " +
                                  detail::format_point<T>(separate)};
  }
  return v;
}

/// Some generator g has g_j >= x_j for every coordinate j other than i;
/// then (x_{-i}, min(g_i, x_i)) lies in the set and certifies the premise.
template <Scalar T, typename K>
bool monotonicity_hypothesis(const basic_problem<T, K>& p, std::size_t i, std::span<const T> x) {
  return std::any_of(p.generators().begin(), p.generators().end(), [&](const point<T>& g) {
    for (std::size_t j = 0; j < g.size(); ++j)
      if (j != i && g[j] < x[j]) return false;
    return true;
  });
}

/// Improving player i in one allocation never hurts player i.
template <Scalar T, typename K>
axiom_verdict check_monotonicity(const solution_function<T, K>& sol, const basic_problem<T, K>& p, std::size_t i,
                                 point<T> x) {
  if (i >= p.players()) throw error(errc::invalid_parameter, "player index out of range");
  if (x.size() != p.dimension()) throw error(errc::dimension_mismatch, "added point has wrong length");
  if (!monotonicity_hypothesis<T>(p, i, x))
    throw error(errc::hypothesis_not_met, "no generator certifies the improvement for player " + std::to_string(i));
  auto v = detail::make_verdict<T>("monotonicity");
  v.replay = [sol, p, i, x] { return check_monotonicity(sol, p, i, x); };
  auto before = sol(p)[i];
  auto after = sol(add_point(p, x))[i];
  if (after < before - axiom_tolerance<T>()) {
    v.passed = false;
    v.witness = axiom_witness{i, ">= " + format_scalar(before, 10), format_scalar(after, 10),
                              "adding " + detail::format_point<T>(x) + " lowered the player's share"};
  }
  return v;
}

/// Perturbs every generator coordinate by noise in [-delta, delta] and
/// requires max_i |sol(p')_i - sol(p)_i| <= 2 sqrt(n) * d, where d is the
/// largest generator displacement (an upper bound on the Hausdorff
/// distance). Every claim is a support value at a vector of norm <= sqrt(n)
/// and each player's weights sum to one, which gives the constant.
template <Scalar T, typename K>
axiom_verdict check_continuity(const solution_function<T, K>& sol, const basic_problem<T, K>& p, const T& delta,
                               std::size_t trials, std::uint64_t seed) {
  if (delta < T(0)) throw error(errc::invalid_parameter, "delta must be nonnegative");
  auto v = detail::make_verdict<T>("continuity");
  v.replay = [sol, p, delta, trials, seed] { return check_continuity(sol, p, delta, trials, seed); };
  const double lipschitz = 2.0 * std::sqrt(static_cast<double>(p.players()));
  const double slack = scalar_traits<T>::exact ? 1e-12 : to_double(axiom_tolerance<T>());
  const auto base = sol(p);
  double worst_ratio = 0.0;
  constexpr std::int64_t grid = std::int64_t(1) << 20;
  for (std::size_t t = 0; t < trials; ++t) {
    counter_rng rng(seed, t);
    auto gens = p.generators();
    for (auto& g : gens) {
      for (auto& c : g) {
        if constexpr (scalar_traits<T>::exact) {
          auto m = static_cast<std::int64_t>(rng.below(2 * grid + 1)) - grid;
          c += delta * T(rational(m, grid));
        } else {
          c += delta * (2.0 * rng.uniform() - 1.0);
        }
      }
    }
    basic_problem<T, K> moved(std::move(gens));
    const double dist = hausdorff_upper_bound(p, moved, identity_matching(p.size()));
    const auto psi = sol(moved);
    double change = 0.0;
    std::size_t where = 0;
    for (std::size_t i = 0; i < psi.size(); ++i) {
      double d = std::abs(to_double(T(psi[i] - base[i])));
      if (d > change) {
        change = d;
        where = i;
      }
    }
    if (dist > 0.0) worst_ratio = std::max(worst_ratio, change / dist);
    if (change > lipschitz * dist + slack * (1.0 + change)) {
      v.passed = false;
      v.witness = axiom_witness{where, "<= " + format_scalar(lipschitz * dist, 10), format_scalar(change, 10),
                                "trial " + std::to_string(t) + ": solution moved by more than 2*sqrt(n) times the "
                                "generator displacement " + format_scalar(dist, 10)};
      break;
    }
  }
  v.observed_ratio = worst_ratio;
  return v;
}

/// Lower and upper compromise bounds for player i: x_i + x_{n+1}/n
/// minimized over Pareto generators and maximized over all generators.
template <Scalar T>
std::pair<T, T> compromise_bounds(const surplus_problem<T>& c, std::size_t i) {
  const T n(static_cast<long long>(c.players()));
  auto level = [&](const point<T>& x) { return T(x[i] + x.back() / n); };
  std::optional<T> lo, hi;
  for (auto k : pareto_indices(c)) {
    T l = level(c.generator(k));
    if (!lo || l < *lo) lo = l;
  }
  for (const auto& g : c.generators()) {
    T h = level(g);
    if (!hi || h > *hi) hi = h;
  }
  return {*lo, *hi};
}

template <Scalar T>
axiom_verdict check_compromise(const solution_function<T, surplus_tag>& sol, const surplus_problem<T>& c) {
  auto v = detail::make_verdict<T>("compromise");
  v.replay = [sol, c] { return check_compromise(sol, c); };
  auto phi = sol(c);
  const T tol = axiom_tolerance<T>();
  for (std::size_t i = 0; i < c.players(); ++i) {
    auto [lo, hi] = compromise_bounds(c, i);
    if (phi[i] < lo - tol || phi[i] > hi + tol) {
      v.passed = false;
      v.witness = axiom_witness{i, "[" + format_scalar(lo, 10) + ", " + format_scalar(hi, 10) + "]",
                                format_scalar(phi[i], 10), "share outside the compromise interval"};
      break;
    }
  }
  return v;
}

/// k generators with coordinates on the grid lo + j/grid inside [lo, hi].
template <Scalar T, typename K = plain_tag>
basic_problem<T, K> random_problem(std::size_t n, std::size_t k, long lo, long hi, std::uint64_t seed,
                                   long grid = 4) {
  if (n == 0 || k == 0) throw error(errc::invalid_parameter, "need at least one player and one generator");
  if (hi < lo || grid <= 0) throw error(errc::invalid_parameter, "invalid coordinate range");
  counter_rng rng(seed, 0x70726f626c656dULL);
  const auto steps = static_cast<std::uint64_t>((hi - lo) * grid);
  const std::size_t dim = n + (std::is_same_v<K, surplus_tag> ? 1 : 0);
  std::vector<point<T>> gens(k, point<T>(dim));
  for (auto& g : gens) {
    for (auto& c : g) {
      auto j = static_cast<long long>(rng.below(steps + 1));
      rational r = rational(lo) + rational(j, grid);
      c = from_rational<T>(r);
    }
  }
  return basic_problem<T, K>(std::move(gens));
}

template <Scalar T>
surplus_problem<T> random_surplus_problem(std::size_t n, std::size_t k, long lo, long hi, std::uint64_t seed,
                                          long grid = 4) {
  return random_problem<T, surplus_tag>(n, k, lo, hi, seed, grid);
}

inline std::vector<std::size_t> random_permutation(std::size_t n, counter_rng& rng) {
  std::vector<std::size_t> rho(n);
  std::iota(rho.begin(), rho.end(), std::size_t(0));
  for (std::size_t k = n; k > 1; --k) std::swap(rho[k - 1], rho[rng.below(k)]);
  return rho;
}

struct suite_options {
  std::size_t trials = 20;
  std::uint64_t seed = 1;
  double delta = 0.01;
};

inline constexpr std::string_view plain_axioms[] = {"efficiency", "anonymity", "dummy", "continuity", "additivity",
                                                    "monotonicity"};
inline constexpr std::string_view surplus_axioms[] = {"efficiency", "anonymity", "compromise", "continuity",
                                                      "additivity", "monotonicity"};

/// Runs one axiom against a problem: randomized instances (permutations,
/// partner problems, raised generators, perturbations) are derived from
/// (seed, trial). Returns the first failing verdict, or a passing one.
template <Scalar T, typename K>
axiom_verdict run_axiom(std::string_view axiom, const solution_function<T, K>& sol, const basic_problem<T, K>& p,
                        const suite_options& opt) {
  constexpr bool surplus = basic_problem<T, K>::has_surplus;
  const std::size_t n = p.players();
  auto first_failure = [](std::vector<axiom_verdict> vs, std::string name) {
    for (auto& v : vs)
      if (!v.passed) return v;
    if (vs.empty()) {
      axiom_verdict none;
      none.axiom = std::move(name);
      none.applicable = false;
      return none;
    }
    return vs.front();
  };
  std::vector<axiom_verdict> out;
  if (axiom == "efficiency") return check_efficiency(sol, p);
  if (axiom == "anonymity") {
    for (std::size_t t = 0; t < opt.trials; ++t) {
      counter_rng rng(opt.seed, 0x616e6f6e0000ULL + t);
      out.push_back(check_anonymity(sol, p, random_permutation(n, rng)));
    }
  } else if (axiom == "dummy") {
    if constexpr (!surplus) {
      for (std::size_t i = 0; i < n; ++i)
        if (dummy_hypothesis(p, i)) out.push_back(check_dummy(sol, p, i));
    } else {
      throw error(errc::unsupported, "the dummy axiom applies to plain problems; use compromise");
    }
  } else if (axiom == "compromise") {
    if constexpr (surplus) return check_compromise(sol, p);
    else throw error(errc::unsupported, "compromise applies to surplus problems");
  } else if (axiom == "additivity") {
    for (std::size_t t = 0; t < opt.trials; ++t) {
      auto partner = random_problem<T, K>(n, 1 + t % 4, -10, 10, mix64(opt.seed) + t);
      out.push_back(check_additivity(sol, p, partner));
    }
  } else if (axiom == "monotonicity") {
    for (std::size_t t = 0; t < opt.trials; ++t) {
      counter_rng rng(opt.seed, 0x6d6f6e6f0000ULL + t);
      auto x = p.generator(rng.below(p.size()));
      auto i = static_cast<std::size_t>(rng.below(n));
      x[i] += from_rational<T>(rational(static_cast<long long>(1 + rng.below(16)), 4));
      out.push_back(check_monotonicity(sol, p, i, x));
    }
  } else if (axiom == "continuity") {
    return check_continuity(sol, p, from_rational<T>(decimal_rational(opt.delta)), opt.trials, opt.seed);
  } else {
    throw error(errc::unsupported, "unknown axiom '" + std::string(axiom) + "'");
  }
  return first_failure(std::move(out), std::string(axiom));
}

}  // namespace fairshare

#endif  // FAIRSHARE_AXIOMS_HPP
