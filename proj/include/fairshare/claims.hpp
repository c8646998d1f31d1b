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

/// \file fairshare/claims.hpp
///
/// Stand-alone claims. The claim of a coalition S is the largest total
/// utility S can reach inside the bargaining set, v(S) = max_{x in B} x_S.
/// For a finitely generated set this is a support-function value at the
/// indicator of S, and it is attained at a generator.

#ifndef FAIRSHARE_CLAIMS_HPP
#define FAIRSHARE_CLAIMS_HPP

#include "fairshare/core.hpp"

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace fairshare {

/// max over the hull of x . direction, for a nonnegative direction.
template <Scalar T, typename K>
T support(const basic_problem<T, K>& p, std::span<const T> direction) {
  if (direction.size() != p.dimension()) throw error(errc::dimension_mismatch, "direction has wrong length");
  for (const auto& v : direction)
    if (v < T(0)) throw error(errc::unbounded_direction, "support is unbounded along a negative direction");
  std::optional<T> best;
  for (const auto& g : p.generators()) {
    T dot(0);
    for (std::size_t j = 0; j < g.size(); ++j)
      if (direction[j] != T(0)) dot += g[j] * direction[j];
    if (!best || dot > *best) best = std::move(dot);
  }
  return *best;
}

inline void check_coalition(coalition s, std::size_t n) {
  if (!s.within(n)) throw error(errc::invalid_coalition, "coalition mentions a player outside 0.." + std::to_string(n - 1));
}

template <Scalar T>
T claim(const bargaining_problem<T>& p, coalition s) {
  check_coalition(s, p.players());
  if (s.empty()) return T(0);
  std::optional<T> best;
  for (const auto& g : p.generators()) {
    T total = coalition_sum<T>(g, s);
    if (!best || total > *best) best = std::move(total);
  }
  return *best;
}

/// max over the hull of x_S + x_{n+1}.
template <Scalar T>
T surplus_claim(const surplus_problem<T>& c, coalition s) {
  check_coalition(s, c.players());
  std::optional<T> best;
  for (const auto& g : c.generators()) {
    T total = coalition_sum<T>(g, s) + g.back();
    if (!best || total > *best) best = std::move(total);
  }
  return *best;
}

/// A transferable-utility game given by its value on every coalition.
template <Scalar T>
class stand_alone_game {
 public:
  stand_alone_game(std::size_t n, std::vector<T> values) : n_(n), values_(std::move(values)) {
    if (n == 0) throw error(errc::invalid_parameter, "a game needs at least one player");
    if (n > max_exact_players) throw error(errc::too_many_players, std::to_string(n) + " players exceed the tabulation limit");
    if (values_.size() != (std::size_t(1) << n))
      throw error(errc::incomplete_game, "expected " + std::to_string(std::size_t(1) << n) + " coalition values, got " +
                                             std::to_string(values_.size()));
  }

  /// Builds a game from a sparse table; every coalition must be present.
  static stand_alone_game from_table(std::size_t n, const std::map<coalition::mask_type, T>& table) {
    if (n == 0 || n > max_exact_players) throw error(errc::too_many_players, "unsupported player count");
    std::vector<T> values(std::size_t(1) << n);
    for (std::size_t m = 0; m < values.size(); ++m) {
      auto it = table.find(static_cast<coalition::mask_type>(m));
      if (it == table.end())
        throw error(errc::incomplete_game, "no value for coalition mask " + std::to_string(m));
      values[m] = it->second;
    }
    return stand_alone_game(n, std::move(values));
  }

  std::size_t players() const noexcept { return n_; }
  const std::vector<T>& values() const noexcept { return values_; }
  const T& operator()(coalition s) const { return values_[s.mask()]; }
  const T& at(coalition s) const {
    check_coalition(s, n_);
    return values_[s.mask()];
  }

  friend bool operator==(const stand_alone_game&, const stand_alone_game&) = default;

 private:
  std::size_t n_;
  std::vector<T> values_;
};

namespace detail {

inline void check_tabulation_size(std::size_t n) {
  if (n > max_exact_players)
    throw error(errc::too_many_players, std::to_string(n) + " players exceed the limit of " +
                                            std::to_string(max_exact_players) + " for exact enumeration");
}

/// For each coalition mask, max over generators of (g_S + offset(g)).
template <Scalar T, typename K, typename Offset>
std::vector<T> tabulate_max_sums(const basic_problem<T, K>& p, Offset offset) {
  const std::size_t n = p.players();
  const std::size_t count = std::size_t(1) << n;
  std::vector<T> best(count);
  std::vector<T> sums(count);
  bool first = true;
  for (const auto& g : p.generators()) {
    sums[0] = offset(g);
    for (std::size_t m = 1; m < count; ++m) {
      auto low = static_cast<std::size_t>(std::countr_zero(m));
      sums[m] = sums[m & (m - 1)] + g[low];
    }
    for (std::size_t m = 0; m < count; ++m)
      if (first || sums[m] > best[m]) best[m] = sums[m];
    first = false;
  }
  return best;
}

}  // namespace detail

/// v(S) = max_{x in B} x_S for all S; v(empty) = 0.
template <Scalar T>
stand_alone_game<T> stand_alone(const bargaining_problem<T>& p) {
  detail::check_tabulation_size(p.players());
  auto values = detail::tabulate_max_sums(p, [](const point<T>&) { return T(0); });
  values[0] = T(0);
  return stand_alone_game<T>(p.players(), std::move(values));
}

/// w(S) = max_{x in C} (x_S + x_{n+1}); w(empty) is the largest surplus.
template <Scalar T>
stand_alone_game<T> surplus_game(const surplus_problem<T>& c) {
  detail::check_tabulation_size(c.players());
  auto values = detail::tabulate_max_sums(c, [](const point<T>& g) { return g.back(); });
  return stand_alone_game<T>(c.players(), std::move(values));
}

/// Claims supplied by a function instead of a generator list. When the
/// claim depends on the coalition only through a weighted member total,
/// the additive form lets callers evaluate growing coalitions in O(1).
template <Scalar T>
class claim_oracle {
 public:
  using evaluator = std::function<T(std::span<const std::size_t> members)>;

  struct additive_form {
    std::vector<T> weights;
    std::function<T(const T&)> transform;
  };

  claim_oracle(std::size_t n, std::string description, evaluator evaluate)
      : n_(n), description_(std::move(description)), evaluate_(std::move(evaluate)) {
    if (n_ == 0) throw error(errc::invalid_parameter, "oracle needs at least one player");
  }

  claim_oracle(std::size_t n, std::string description, additive_form form)
      : n_(n), description_(std::move(description)), additive_(std::move(form)) {
    if (n_ == 0) throw error(errc::invalid_parameter, "oracle needs at least one player");
    if (additive_->weights.size() != n_) throw error(errc::dimension_mismatch, "one weight per player is required");
    evaluate_ = [w = additive_->weights, f = additive_->transform](std::span<const std::size_t> members) {
      T total(0);
      for (auto i : members) total += w[i];
      return f(total);
    };
  }

  std::size_t players() const noexcept { return n_; }
  const std::string& description() const noexcept { return description_; }
  const std::optional<additive_form>& additive() const noexcept { return additive_; }

  T evaluate(std::span<const std::size_t> members) const { return evaluate_(members); }

  T operator()(coalition s) const {
    check_coalition(s, n_);
    auto m = s.members();
    return evaluate_(m);
  }

 private:
  std::size_t n_;
  std::string description_;
  evaluator evaluate_;
  std::optional<additive_form> additive_;
};

/// Tabulates an oracle on all coalitions.
template <Scalar T>
stand_alone_game<T> tabulate(const claim_oracle<T>& o) {
  detail::check_tabulation_size(o.players());
  std::vector<T> values(std::size_t(1) << o.players());
  for (std::size_t m = 0; m < values.size(); ++m) values[m] = o(coalition(static_cast<coalition::mask_type>(m)));
  return stand_alone_game<T>(o.players(), std::move(values));
}

/// Claims of a shared budget wbar split among players with benefit
/// alpha_i * sqrt(w_i): v(S) = sqrt(wbar * sum_{i in S} alpha_i^2).
inline claim_oracle<double> common_resource_oracle(std::span<const double> alpha, double wbar) {
  if (alpha.empty()) throw error(errc::invalid_parameter, "at least one player is required");
  if (!(wbar > 0.0) || !std::isfinite(wbar)) throw error(errc::invalid_parameter, "budget must be positive");
  std::vector<double> weights;
  for (double a : alpha) {
    if (!(a > 0.0) || !std::isfinite(a)) throw error(errc::invalid_parameter, "every alpha must be positive");
    weights.push_back(a * a);
  }
  claim_oracle<double>::additive_form form{std::move(weights), [wbar](const double& s) { return std::sqrt(wbar * s); }};
  return claim_oracle<double>(alpha.size(), "common resource", std::move(form));
}

/// Increasing concave utility of a divisible resource, described by its
/// value, its (strictly decreasing) marginal, and the marginal's inverse.
struct concave_utility {
  std::function<double(double)> value;
  std::function<double(double)> marginal;
  std::function<double(double)> inverse_marginal;
};

/// u(w) = scale * sqrt(w).
inline concave_utility sqrt_utility(double scale) {
  return {
      [scale](double w) { return scale * std::sqrt(std::max(w, 0.0)); },
      [scale](double w) { return scale / (2.0 * std::sqrt(w)); },
      [scale](double lambda) {
        double w = scale / (2.0 * lambda);
        return w * w;
      },
  };
}

struct waterfill_result {
  double value = 0.0;
  std::vector<double> allocation;
  double multiplier = 0.0;
  int iterations = 0;
};

/// Maximizes sum_{i in S} u_i(w_i) subject to sum w_i <= budget, w >= 0,
/// by bisection on the common marginal utility lambda.
inline waterfill_result waterfill_claim(std::span<const concave_utility> utilities, double budget, coalition s) {
  const std::size_t n = utilities.size();
  if (n == 0) throw error(errc::invalid_parameter, "no utilities given");
  check_coalition(s, n);
  if (s.empty()) throw error(errc::invalid_coalition, "coalition must be nonempty");
  if (!(budget > 0.0) || !std::isfinite(budget)) throw error(errc::invalid_parameter, "budget must be positive");

  const auto members = s.members();
  for (auto i : members) {
    double prev = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= 16; ++k) {
      double m = utilities[i].marginal(budget * k / 16.0);
      if (!std::isfinite(m) || !(m < prev) || !(m > 0.0))
        throw error(errc::invalid_utility, "marginal utility of player " + std::to_string(i) +
                                               " is not positive and strictly decreasing");
      prev = m;
    }
  }

  auto demand = [&](double lambda, std::vector<double>* out) {
    double total = 0.0;
    for (auto i : members) {
      double w = std::clamp(utilities[i].inverse_marginal(lambda), 0.0, budget);
      if (out) (*out)[i] = w;
      total += w;
    }
    return total;
  };

  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (auto i : members) {
    lo = std::min(lo, utilities[i].marginal(budget));
    hi = std::max(hi, utilities[i].marginal(budget / 1e6));
  }
  for (int k = 0; k < 200 && demand(lo, nullptr) < budget; ++k) lo *= 0.5;
  for (int k = 0; k < 200 && demand(hi, nullptr) > budget; ++k) hi *= 2.0;

  waterfill_result result;
  result.allocation.assign(n, 0.0);
  const double target = 1e-10 * budget;
  for (int it = 1; it <= 200; ++it) {
    double mid = 0.5 * (lo + hi);
    double total = demand(mid, &result.allocation);
    result.iterations = it;
    result.multiplier = mid;
    if (std::abs(total - budget) <= target) {
      for (auto i : members) result.value += utilities[i].value(result.allocation[i]);
      return result;
    }
    if (total > budget) lo = mid;
    else hi = mid;
  }
  throw error(errc::no_convergence, "water-filling bisection did not converge in 200 iterations");
}

}  // namespace fairshare

#endif  // FAIRSHARE_CLAIMS_HPP
