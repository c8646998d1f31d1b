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

/// \file fairshare/core.hpp
///
/// Finitely generated bargaining sets. A problem stores a list of generator
/// points and stands for their closed, convex, comprehensive hull. Players
/// are indexed from 0 throughout the library.

#ifndef FAIRSHARE_CORE_HPP
#define FAIRSHARE_CORE_HPP

#include "fairshare/scalar.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <vector>

namespace fairshare {

enum class errc {
  empty_problem = 1,
  dimension_mismatch,
  invalid_permutation,
  invalid_matching,
  unbounded_direction,
  invalid_coalition,
  too_many_players,
  invalid_parameter,
  invalid_utility,
  no_convergence,
  incomplete_game,
  infeasible_transfer,
  hypothesis_not_met,
  unsupported,
};

constexpr std::string_view to_string(errc code) noexcept {
  switch (code) {
    case errc::empty_problem: return "empty problem";
    case errc::dimension_mismatch: return "dimension mismatch";
    case errc::invalid_permutation: return "invalid permutation";
    case errc::invalid_matching: return "invalid matching";
    case errc::unbounded_direction: return "unbounded direction";
    case errc::invalid_coalition: return "invalid coalition";
    case errc::too_many_players: return "too many players";
    case errc::invalid_parameter: return "invalid parameter";
    case errc::invalid_utility: return "invalid utility";
    case errc::no_convergence: return "no convergence";
    case errc::incomplete_game: return "incomplete game";
    case errc::infeasible_transfer: return "infeasible transfer";
    case errc::hypothesis_not_met: return "hypothesis not met";
    case errc::unsupported: return "unsupported";
  }
  return "unknown error";
}

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

/// Largest player count for which all 2^n coalitions are tabulated.
inline constexpr std::size_t max_exact_players = 24;

/// A subset of players encoded as a bitmask (bit i <=> player i).
class coalition {
 public:
  using mask_type = std::uint32_t;

  constexpr coalition() noexcept = default;
  constexpr explicit coalition(mask_type mask) noexcept : mask_(mask) {}

  static coalition of(std::initializer_list<std::size_t> players) {
    coalition s;
    for (auto i : players) s = s.with(i);
    return s;
  }

  static constexpr coalition grand(std::size_t n) noexcept {
    return coalition(n >= 32 ? ~mask_type(0) : static_cast<mask_type>((mask_type(1) << n) - 1));
  }

  constexpr mask_type mask() const noexcept { return mask_; }
  constexpr bool empty() const noexcept { return mask_ == 0; }
  constexpr std::size_t size() const noexcept { return static_cast<std::size_t>(std::popcount(mask_)); }
  constexpr bool contains(std::size_t i) const noexcept { return i < 32 && ((mask_ >> i) & 1u); }
  constexpr coalition with(std::size_t i) const { return coalition(mask_ | (mask_type(1) << i)); }
  constexpr coalition without(std::size_t i) const { return coalition(mask_ & ~(mask_type(1) << i)); }
  constexpr bool within(std::size_t n) const noexcept { return (mask_ & ~grand(n).mask_) == 0; }

  std::vector<std::size_t> members() const {
    std::vector<std::size_t> out;
    for (mask_type m = mask_; m != 0; m &= m - 1) out.push_back(static_cast<std::size_t>(std::countr_zero(m)));
    return out;
  }

  friend constexpr bool operator==(coalition, coalition) noexcept = default;

 private:
  mask_type mask_ = 0;
};

template <Scalar T>
using point = std::vector<T>;

/// One value per player.
template <Scalar T>
using allocation = std::vector<T>;

struct plain_tag {};
struct surplus_tag {};

/// The hull ch(generators). Plain problems live in R^n; surplus problems
/// live in R^(n+1) with the last coordinate holding the alternative's
/// surplus (negative for a deficit).
template <Scalar T, typename Kind>
class basic_problem {
 public:
  using scalar_type = T;
  using kind_type = Kind;
  static constexpr bool has_surplus = std::is_same_v<Kind, surplus_tag>;

  explicit basic_problem(std::vector<point<T>> generators) : generators_(std::move(generators)) {
    if (generators_.empty()) throw error(errc::empty_problem, "at least one generator is required");
    dimension_ = generators_.front().size();
    if (dimension_ < (has_surplus ? 2u : 1u))
      throw error(errc::dimension_mismatch, "generators need at least one player coordinate");
    for (std::size_t k = 0; k < generators_.size(); ++k) {
      if (generators_[k].size() != dimension_)
        throw error(errc::dimension_mismatch, "generator " + std::to_string(k) + " has length " +
                                                  std::to_string(generators_[k].size()) + ", expected " +
                                                  std::to_string(dimension_));
    }
  }

  std::size_t players() const noexcept { return dimension_ - (has_surplus ? 1 : 0); }
  std::size_t dimension() const noexcept { return dimension_; }
  std::size_t size() const noexcept { return generators_.size(); }
  const std::vector<point<T>>& generators() const noexcept { return generators_; }
  const point<T>& generator(std::size_t k) const { return generators_.at(k); }

  /// Surplus entry of generator k.
  const T& surplus(std::size_t k) const
    requires has_surplus
  {
    return generators_.at(k).back();
  }

  friend bool operator==(const basic_problem&, const basic_problem&) = default;

 private:
  std::vector<point<T>> generators_;
  std::size_t dimension_ = 0;
};

template <Scalar T>
using bargaining_problem = basic_problem<T, plain_tag>;
template <Scalar T>
using surplus_problem = basic_problem<T, surplus_tag>;

template <Scalar T>
bargaining_problem<T> make_problem(std::vector<point<T>> generators) {
  return bargaining_problem<T>(std::move(generators));
}

template <Scalar T>
surplus_problem<T> make_surplus_problem(std::vector<point<T>> generators) {
  return surplus_problem<T>(std::move(generators));
}

/// x_S, the total of the coordinates in S.
template <Scalar T>
T coalition_sum(std::span<const T> x, coalition s) {
  T total(0);
  for (auto m = s.mask(); m != 0; m &= m - 1) total += x[static_cast<std::size_t>(std::countr_zero(m))];
  return total;
}

inline void validate_permutation(std::span<const std::size_t> rho, std::size_t n) {
  if (rho.size() != n)
    throw error(errc::invalid_permutation, "permutation has " + std::to_string(rho.size()) + " entries, expected " +
                                               std::to_string(n));
  std::vector<bool> seen(n, false);
  for (auto r : rho) {
    if (r >= n || seen[r]) throw error(errc::invalid_permutation, "not a bijection on the player set");
    seen[r] = true;
  }
}

/// rho(x) = (x_rho(0), ..., x_rho(n-1)). Coordinates past rho.size() are
/// carried over unchanged (the surplus entry).
template <Scalar T>
point<T> permute_point(std::span<const T> x, std::span<const std::size_t> rho) {
  point<T> out(x.begin(), x.end());
  for (std::size_t i = 0; i < rho.size(); ++i) out[i] = x[rho[i]];
  return out;
}

/// rho(S) = { rho(i) : i in S }.
inline coalition permute_coalition(coalition s, std::span<const std::size_t> rho) {
  coalition out;
  for (auto i : s.members()) out = out.with(rho[i]);
  return out;
}

inline std::vector<std::size_t> inverse_permutation(std::span<const std::size_t> rho) {
  std::vector<std::size_t> inv(rho.size());
  for (std::size_t i = 0; i < rho.size(); ++i) inv[rho[i]] = i;
  return inv;
}

template <Scalar T, typename K>
basic_problem<T, K> permute(const basic_problem<T, K>& p, std::span<const std::size_t> rho) {
  validate_permutation(rho, p.players());
  std::vector<point<T>> gens;
  gens.reserve(p.size());
  for (const auto& g : p.generators()) gens.push_back(permute_point<T>(g, rho));
  return basic_problem<T, K>(std::move(gens));
}

/// Pairwise sums of generators; represents ch(a) + ch(b) exactly.
template <Scalar T, typename K>
basic_problem<T, K> minkowski_sum(const basic_problem<T, K>& a, const basic_problem<T, K>& b) {
  if (a.dimension() != b.dimension())
    throw error(errc::dimension_mismatch, "Minkowski sum of problems with different player counts");
  std::vector<point<T>> gens;
  gens.reserve(a.size() * b.size());
  for (const auto& x : a.generators()) {
    for (const auto& y : b.generators()) {
      point<T> z(x.size());
      for (std::size_t j = 0; j < z.size(); ++j) z[j] = x[j] + y[j];
      gens.push_back(std::move(z));
    }
  }
  return basic_problem<T, K>(std::move(gens));
}

template <Scalar T, typename K>
basic_problem<T, K> translate(const basic_problem<T, K>& p, std::span<const T> t) {
  if (t.size() != p.dimension()) throw error(errc::dimension_mismatch, "translation vector has wrong length");
  auto gens = p.generators();
  for (auto& g : gens)
    for (std::size_t j = 0; j < g.size(); ++j) g[j] += t[j];
  return basic_problem<T, K>(std::move(gens));
}

template <Scalar T, typename K>
basic_problem<T, K> scale(const basic_problem<T, K>& p, const T& factor) {
  if (factor < T(0)) throw error(errc::invalid_parameter, "scale factor must be nonnegative");
  auto gens = p.generators();
  for (auto& g : gens)
    for (auto& x : g) x *= factor;
  return basic_problem<T, K>(std::move(gens));
}

/// ch(B u {x}).
template <Scalar T, typename K>
basic_problem<T, K> add_point(const basic_problem<T, K>& p, point<T> x) {
  if (x.size() != p.dimension()) throw error(errc::dimension_mismatch, "added point has wrong length");
  auto gens = p.generators();
  gens.push_back(std::move(x));
  return basic_problem<T, K>(std::move(gens));
}

/// y >= x coordinatewise with y != x.
template <Scalar T>
bool pareto_dominates(std::span<const T> y, std::span<const T> x) {
  bool strict = false;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (y[j] < x[j]) return false;
    if (y[j] > x[j]) strict = true;
  }
  return strict;
}

/// Indices of generators not Pareto-dominated by another generator.
template <Scalar T, typename K>
std::vector<std::size_t> pareto_indices(const basic_problem<T, K>& p) {
  std::vector<std::size_t> out;
  const auto& gens = p.generators();
  for (std::size_t k = 0; k < gens.size(); ++k) {
    bool dominated = std::any_of(gens.begin(), gens.end(),
                                 [&](const point<T>& y) { return pareto_dominates<T>(y, gens[k]); });
    if (!dominated) out.push_back(k);
  }
  return out;
}

template <Scalar T, typename K>
std::vector<point<T>> pareto_generators(const basic_problem<T, K>& p) {
  std::vector<point<T>> out;
  for (auto k : pareto_indices(p)) out.push_back(p.generator(k));
  return out;
}

using generator_matching = std::vector<std::pair<std::size_t, std::size_t>>;

inline generator_matching identity_matching(std::size_t k) {
  generator_matching m;
  for (std::size_t i = 0; i < k; ++i) m.emplace_back(i, i);
  return m;
}

/// Largest Euclidean displacement over matched generator pairs. The
/// matching must touch every generator of both problems; the result then
/// bounds the Hausdorff distance between the two hulls from above.
template <Scalar T, typename K>
double hausdorff_upper_bound(const basic_problem<T, K>& a, const basic_problem<T, K>& b,
                             const generator_matching& matching) {
  if (a.dimension() != b.dimension()) throw error(errc::dimension_mismatch, "problems differ in dimension");
  std::vector<bool> hit_a(a.size(), false), hit_b(b.size(), false);
  double worst = 0.0;
  for (auto [i, j] : matching) {
    if (i >= a.size() || j >= b.size()) throw error(errc::invalid_matching, "matching index out of range");
    hit_a[i] = hit_b[j] = true;
    double sq = 0.0;
    for (std::size_t c = 0; c < a.dimension(); ++c) {
      double d = to_double(T(a.generator(i)[c] - b.generator(j)[c]));
      sq += d * d;
    }
    worst = std::max(worst, std::sqrt(sq));
  }
  auto all = [](const std::vector<bool>& v) { return std::all_of(v.begin(), v.end(), [](bool x) { return x; }); };
  if (!all(hit_a) || !all(hit_b)) throw error(errc::invalid_matching, "matching leaves a generator unpaired");
  return worst;
}

}  // namespace fairshare

#endif  // FAIRSHARE_CORE_HPP
