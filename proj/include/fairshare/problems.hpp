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

/// \file fairshare/problems.hpp
///
/// Constructors for the standard application classes: shared
/// infrastructure, common resources, bankruptcy, division of an indivisible
/// good, and public-good provision.

#ifndef FAIRSHARE_PROBLEMS_HPP
#define FAIRSHARE_PROBLEMS_HPP

#include "fairshare/claims.hpp"
#include "fairshare/core.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <vector>

namespace fairshare {

namespace detail {

template <Scalar T>
void require_nonnegative(std::span<const T> xs, const char* what) {
  for (const auto& x : xs)
    if (x < T(0)) throw error(errc::invalid_parameter, std::string(what) + " must be nonnegative");
}

}  // namespace detail

/// One generator per option.
template <Scalar T>
bargaining_problem<T> infrastructure(std::vector<point<T>> options) {
  return bargaining_problem<T>(std::move(options));
}

/// Options with costs: each option becomes (utilities, -cost).
template <Scalar T>
surplus_problem<T> infrastructure(std::vector<point<T>> options, std::span<const T> costs) {
  if (costs.size() != options.size())
    throw error(errc::dimension_mismatch, std::to_string(options.size()) + " options but " +
                                              std::to_string(costs.size()) + " costs");
  for (std::size_t k = 0; k < options.size(); ++k) options[k].push_back(T(-costs[k]));
  return surplus_problem<T>(std::move(options));
}

inline constexpr std::size_t max_bankruptcy_vertex_players = 10;

/// v(S) = min(c_S, E).
template <Scalar T>
claim_oracle<T> bankruptcy_oracle(std::span<const T> claims, const T& estate) {
  detail::require_nonnegative(claims, "claims");
  if (estate < T(0)) throw error(errc::invalid_parameter, "estate must be nonnegative");
  typename claim_oracle<T>::additive_form form{std::vector<T>(claims.begin(), claims.end()),
                                               [estate](const T& s) { return std::min(s, estate); }};
  return claim_oracle<T>(claims.size(), "bankruptcy", std::move(form));
}

/// The maximal vertices of { 0 <= x <= c, x_N <= E }: a set of creditors
/// paid in full plus at most one pivot creditor taking the remainder.
template <Scalar T>
bargaining_problem<T> bankruptcy_polytope(std::span<const T> claims, const T& estate) {
  const std::size_t n = claims.size();
  if (n == 0) throw error(errc::empty_problem, "no creditors");
  if (n > max_bankruptcy_vertex_players)
    throw error(errc::too_many_players, "vertex enumeration supports at most " +
                                            std::to_string(max_bankruptcy_vertex_players) + " creditors");
  detail::require_nonnegative(claims, "claims");
  if (estate < T(0)) throw error(errc::invalid_parameter, "estate must be nonnegative");

  std::vector<point<T>> vertices;
  const std::size_t count = std::size_t(1) << n;
  for (std::size_t m = 0; m < count; ++m) {
    coalition full(static_cast<coalition::mask_type>(m));
    T paid = coalition_sum<T>(claims, full);
    if (paid > estate) continue;
    point<T> base(n, T(0));
    for (auto i : full.members()) base[i] = claims[i];
    if (paid == estate || full == coalition::grand(n)) {
      vertices.push_back(base);
      continue;
    }
    T rest = estate - paid;
    for (std::size_t p = 0; p < n; ++p) {
      if (full.contains(p) || claims[p] <= rest) continue;
      point<T> x = base;
      x[p] = rest;
      vertices.push_back(std::move(x));
    }
  }
  if (vertices.empty()) vertices.push_back(point<T>(n, T(0)));
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  return bargaining_problem<T>(std::move(vertices));
}

template <Scalar T>
struct bankruptcy_instance {
  bargaining_problem<T> polytope;
  claim_oracle<T> oracle;
};

template <Scalar T>
bankruptcy_instance<T> bankruptcy(std::span<const T> claims, const T& estate) {
  auto oracle = bankruptcy_oracle(claims, estate);
  return {bankruptcy_polytope(claims, estate), std::move(oracle)};
}

/// ch{ val_i e_i }: the good goes to exactly one player.
template <Scalar T>
bargaining_problem<T> indivisible_good(std::span<const T> valuations) {
  if (valuations.empty()) throw error(errc::empty_problem, "no claimants");
  detail::require_nonnegative(valuations, "valuations");
  std::vector<point<T>> gens;
  for (std::size_t i = 0; i < valuations.size(); ++i) {
    point<T> x(valuations.size(), T(0));
    x[i] = valuations[i];
    gens.push_back(std::move(x));
  }
  return bargaining_problem<T>(std::move(gens));
}

/// ch{ (v, -c), 0 }: build at cost c or do nothing.
template <Scalar T>
surplus_problem<T> public_good(std::span<const T> values, const T& cost) {
  if (values.empty()) throw error(errc::empty_problem, "no households");
  detail::require_nonnegative(values, "values");
  if (cost < T(0)) throw error(errc::invalid_parameter, "cost must be nonnegative");
  point<T> build(values.begin(), values.end());
  build.push_back(T(-cost));
  return surplus_problem<T>({std::move(build), point<T>(values.size() + 1, T(0))});
}

/// w(S) = max(v_S - c, 0).
template <Scalar T>
claim_oracle<T> public_good_oracle(std::span<const T> values, const T& cost) {
  if (values.empty()) throw error(errc::empty_problem, "no households");
  detail::require_nonnegative(values, "values");
  if (cost < T(0)) throw error(errc::invalid_parameter, "cost must be nonnegative");
  typename claim_oracle<T>::additive_form form{std::vector<T>(values.begin(), values.end()), [cost](const T& s) {
                                                 T net = s - cost;
                                                 return net > T(0) ? net : T(0);
                                               }};
  return claim_oracle<T>(values.size(), "public good", std::move(form));
}

/// Players with equal parameters share a group; groups are numbered in
/// order of first appearance.
template <Scalar T>
std::vector<std::size_t> groups_by_value(std::span<const T> values) {
  std::map<T, std::size_t> ids;
  std::vector<std::size_t> group_of;
  group_of.reserve(values.size());
  for (const auto& v : values) {
    auto [it, inserted] = ids.try_emplace(v, ids.size());
    group_of.push_back(it->second);
  }
  return group_of;
}

struct common_resource_instance {
  claim_oracle<double> oracle;
  /// w*_i = wbar alpha_i^2 / sum_j alpha_j^2.
  std::vector<double> efficient_allocation;
  /// alpha_i sqrt(w*_i).
  std::vector<double> utilities;
};

inline common_resource_instance common_resource(std::span<const double> alpha, double wbar) {
  auto oracle = common_resource_oracle(alpha, wbar);
  double norm = 0.0;
  for (double a : alpha) norm += a * a;
  std::vector<double> w(alpha.size()), u(alpha.size());
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    w[i] = wbar * alpha[i] * alpha[i] / norm;
    u[i] = alpha[i] * std::sqrt(w[i]);
  }
  return {std::move(oracle), std::move(w), std::move(u)};
}

}  // namespace fairshare

#endif  // FAIRSHARE_PROBLEMS_HPP
