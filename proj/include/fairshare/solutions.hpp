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

/// \file fairshare/solutions.hpp
///
/// Solutions of social-choice problems with transfers. The central one is
/// the Shapley value of the stand-alone game:
///
///   psi_i = (1/n) sum_{S subset of N\i} C(n-1,|S|)^-1 (v(S u i) - v(S))
///
/// where the claim of the empty coalition always enters as 0. For surplus
/// problems the same weights are applied to w(S) = max (x_S + x_{n+1}),
/// which makes the S = empty term equal to max (x_i + x_{n+1}).

#ifndef FAIRSHARE_SOLUTIONS_HPP
#define FAIRSHARE_SOLUTIONS_HPP

#include "fairshare/claims.hpp"
#include "fairshare/core.hpp"
#include "fairshare/random.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

namespace fairshare {

enum class solution_kind { shapley, eans, esil };

constexpr std::string_view to_string(solution_kind k) noexcept {
  switch (k) {
    case solution_kind::shapley: return "shapley";
    case solution_kind::eans: return "eans";
    case solution_kind::esil: return "esil";
  }
  return "?";
}

inline std::optional<solution_kind> parse_solution_kind(std::string_view name) {
  if (name == "shapley") return solution_kind::shapley;
  if (name == "eans") return solution_kind::eans;
  if (name == "esil") return solution_kind::esil;
  return std::nullopt;
}

/// 1 / (n * C(n-1, k)) for k = 0..n-1.
template <Scalar T>
std::vector<T> shapley_weights(std::size_t n) {
  std::vector<T> w(n);
  std::uint64_t binom = 1;  // C(n-1, k)
  for (std::size_t k = 0; k < n; ++k) {
    w[k] = T(1) / (T(static_cast<long long>(n)) * T(static_cast<long long>(binom)));
    binom = binom * (n - 1 - k) / (k + 1);
  }
  return w;
}

template <Scalar T>
allocation<T> shapley_standalone(const stand_alone_game<T>& g) {
  const std::size_t n = g.players();
  const auto weights = shapley_weights<T>(n);
  const std::size_t count = std::size_t(1) << n;
  const auto& v = g.values();
  allocation<T> psi(n, T(0));
  std::vector<T> by_size(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t bit = std::size_t(1) << i;
    std::fill(by_size.begin(), by_size.end(), T(0));
    for (std::size_t m = 0; m < count; ++m) {
      if (m & bit) continue;
      const std::size_t k = static_cast<std::size_t>(std::popcount(m));
      if (m == 0) by_size[0] += v[bit];
      else by_size[k] += v[m | bit] - v[m];
    }
    for (std::size_t k = 0; k < n; ++k) psi[i] += weights[k] * by_size[k];
  }
  return psi;
}

template <Scalar T>
allocation<T> shapley_standalone(const bargaining_problem<T>& p) {
  return shapley_standalone(stand_alone(p));
}

template <Scalar T>
allocation<T> shapley_surplus(const surplus_problem<T>& c) {
  return shapley_standalone(surplus_game(c));
}

inline constexpr std::size_t max_permutation_players = 10;

/// Average marginal contribution over all n! player orders, counted by
/// explicit enumeration of the orders.
template <Scalar T>
allocation<T> shapley_permutation_oracle(const stand_alone_game<T>& g) {
  const std::size_t n = g.players();
  if (n > max_permutation_players)
    throw error(errc::too_many_players, "permutation enumeration supports at most " +
                                            std::to_string(max_permutation_players) + " players");
  const std::size_t count = std::size_t(1) << n;
  // visits[m * n + i]: number of orders in which i joins right after exactly m.
  std::vector<std::uint64_t> visits(count * n, 0);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t(0));
  std::uint64_t orders = 0;
  do {
    std::size_t m = 0;
    for (auto i : order) {
      ++visits[m * n + i];
      m |= std::size_t(1) << i;
    }
    ++orders;
  } while (std::next_permutation(order.begin(), order.end()));

  const auto& v = g.values();
  allocation<T> psi(n, T(0));
  for (std::size_t m = 0; m < count; ++m) {
    for (std::size_t i = 0; i < n; ++i) {
      auto c = visits[m * n + i];
      if (c == 0) continue;
      T before = m == 0 ? T(0) : v[m];
      psi[i] += T(static_cast<long long>(c)) * (v[m | (std::size_t(1) << i)] - before);
    }
  }
  for (auto& x : psi) x /= T(static_cast<long long>(orders));
  return psi;
}

/// Equal allocation of non-separable costs:
/// psi_i = (v(N) + sum_j v(N\j)) / n - v(N\i).
template <Scalar T>
allocation<T> eans(const stand_alone_game<T>& g) {
  const std::size_t n = g.players();
  const auto all = coalition::grand(n);
  T total = g(all);
  for (std::size_t j = 0; j < n; ++j) total += g(all.without(j));
  total /= T(static_cast<long long>(n));
  allocation<T> psi(n);
  for (std::size_t i = 0; i < n; ++i) psi[i] = total - g(all.without(i));
  return psi;
}

/// Equal sharing from the ideal level:
/// psi_i = (v(N) - sum_j v({j})) / n + v({i}).
template <Scalar T>
allocation<T> esil(const stand_alone_game<T>& g) {
  const std::size_t n = g.players();
  T residual = g(coalition::grand(n));
  for (std::size_t j = 0; j < n; ++j) residual -= g(coalition::of({j}));
  residual /= T(static_cast<long long>(n));
  allocation<T> psi(n);
  for (std::size_t i = 0; i < n; ++i) psi[i] = residual + g(coalition::of({i}));
  return psi;
}

template <Scalar T>
allocation<T> solve(const stand_alone_game<T>& g, solution_kind kind) {
  switch (kind) {
    case solution_kind::shapley: return shapley_standalone(g);
    case solution_kind::eans: return eans(g);
    case solution_kind::esil: return esil(g);
  }
  throw error(errc::unsupported, "unknown solution");
}

/// The game a solution is computed from: stand-alone claims for plain
/// problems, surplus claims for surplus problems.
template <Scalar T, typename K>
stand_alone_game<T> game_of(const basic_problem<T, K>& p) {
  if constexpr (basic_problem<T, K>::has_surplus) return surplus_game(p);
  else return stand_alone(p);
}

template <Scalar T, typename K>
using solution_function = std::function<allocation<T>(const basic_problem<T, K>&)>;

template <Scalar T, typename K>
solution_function<T, K> make_solution(solution_kind kind) {
  return [kind](const basic_problem<T, K>& p) { return solve(game_of(p), kind); };
}

/// Index of the generator with the largest total x_N (plus x_{n+1} for
/// surplus problems); ties go to the earliest generator.
template <Scalar T, typename K>
std::size_t select_efficient_alternative(const basic_problem<T, K>& p) {
  std::size_t best = 0;
  std::optional<T> best_total;
  for (std::size_t k = 0; k < p.size(); ++k) {
    const auto& g = p.generator(k);
    T total = std::accumulate(g.begin(), g.end(), T(0));
    if (!best_total || total > *best_total) {
      best_total = std::move(total);
      best = k;
    }
  }
  return best;
}

/// Transfer between two parties. Index n (one past the last player) is the
/// surplus account that funds deficits or pays out surpluses.
template <Scalar T>
struct payment {
  std::size_t payer;
  std::size_t payee;
  T amount;

  friend bool operator==(const payment&, const payment&) = default;
};

template <Scalar T>
struct solution_report {
  allocation<T> solution;
  point<T> alternative;  // utilities of the chosen alternative
  T alternative_surplus = T(0);
  std::vector<T> net_transfers;
  std::vector<payment<T>> payments;
};

/// Net transfers solution - alternative, routed as pairwise payments.
/// Payers and receivers are each visited in ascending index order and every
/// step moves the largest amount that clears one side.
template <Scalar T>
solution_report<T> transfers(std::span<const T> alternative_utilities, const T& alternative_surplus,
                             std::span<const T> solution, T tolerance = scalar_traits<T>::tolerance()) {
  const std::size_t n = solution.size();
  if (alternative_utilities.size() != n) throw error(errc::dimension_mismatch, "alternative and solution differ in length");
  solution_report<T> report;
  report.solution.assign(solution.begin(), solution.end());
  report.alternative.assign(alternative_utilities.begin(), alternative_utilities.end());
  report.alternative_surplus = alternative_surplus;
  report.net_transfers.resize(n);
  T balance(0);
  T magnitude(1);
  for (std::size_t i = 0; i < n; ++i) {
    report.net_transfers[i] = solution[i] - alternative_utilities[i];
    balance += report.net_transfers[i];
    magnitude = std::max(magnitude, abs_value(solution[i]));
    magnitude = std::max(magnitude, abs_value(alternative_utilities[i]));
  }
  const T eps = tolerance * magnitude;
  if (!nearly_equal(balance, alternative_surplus, eps))
    throw error(errc::infeasible_transfer, "net transfers total " + format_scalar(balance) + " but the surplus is " +
                                               format_scalar(alternative_surplus));

  // outstanding[i] > 0: still owed; < 0: still has to pay.
  std::vector<T> outstanding(report.net_transfers);
  outstanding.push_back(T(-alternative_surplus));
  std::vector<std::size_t> payers, payees;
  for (std::size_t i = 0; i <= n; ++i) {
    if (outstanding[i] < T(-eps)) payers.push_back(i);
    else if (outstanding[i] > eps) payees.push_back(i);
  }
  std::size_t a = 0, b = 0;
  while (a < payers.size() && b < payees.size()) {
    auto from = payers[a], to = payees[b];
    T amount = std::min(T(-outstanding[from]), outstanding[to]);
    if (amount > eps) report.payments.push_back({from, to, amount});
    outstanding[from] += amount;
    outstanding[to] -= amount;
    if (outstanding[from] >= T(-eps)) ++a;
    if (outstanding[to] <= eps) ++b;
  }
  return report;
}

template <Scalar T, typename K>
solution_report<T> transfers(const basic_problem<T, K>& p, std::span<const T> solution) {
  const auto& g = p.generator(select_efficient_alternative(p));
  const std::size_t n = p.players();
  T surplus = basic_problem<T, K>::has_surplus ? g.back() : T(0);
  return transfers<T>(std::span<const T>(g.data(), n), surplus, solution);
}

/// Group of identical players in a Monte-Carlo report.
struct group_estimate {
  std::size_t count = 0;
  double mean = 0.0;
  double standard_error = 0.0;
};

struct estimate_report {
  std::vector<double> estimate;
  std::vector<double> standard_error;
  std::vector<group_estimate> groups;  // filled when a grouping is supplied
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  /// False when samples == 1; standard errors are then reported as 0.
  bool standard_error_defined = false;
};

namespace detail {

/// Marginal contributions along one random order, keyed on (seed, index).
template <Scalar T>
class order_sampler {
 public:
  explicit order_sampler(const claim_oracle<T>& o) : oracle_(o), order_(o.players()) {}

  void sample(std::uint64_t seed, std::uint64_t index, std::vector<double>& out) {
    const std::size_t n = order_.size();
    counter_rng rng(seed, index);
    std::iota(order_.begin(), order_.end(), std::size_t(0));
    for (std::size_t k = n - 1; k > 0; --k) std::swap(order_[k], order_[rng.below(k + 1)]);

    T prev(0);
    if (const auto& form = oracle_.additive()) {
      T total(0);
      for (auto i : order_) {
        total += form->weights[i];
        T value = form->transform(total);
        out[i] = to_double(T(value - prev));
        prev = std::move(value);
      }
    } else {
      members_.clear();
      for (auto i : order_) {
        members_.push_back(i);
        T value = oracle_.evaluate(members_);
        out[i] = to_double(T(value - prev));
        prev = std::move(value);
      }
    }
  }

 private:
  const claim_oracle<T>& oracle_;
  std::vector<std::size_t> order_;
  std::vector<std::size_t> members_;
};

/// Runs fn(chunk) for every chunk index on up to `threads` workers.
template <typename Fn>
void parallel_chunks(std::size_t chunks, std::size_t threads, Fn fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, chunks);
  if (threads <= 1) {
    for (std::size_t c = 0; c < chunks; ++c) fn(c);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  for (std::size_t t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (std::size_t c = next++; c < chunks; c = next++) fn(c);
    });
}

}  // namespace detail

/// Monte-Carlo Shapley estimate from uniformly random player orders. Sample
/// k uses the stream counter_rng(seed, k) and per-chunk partial sums are
/// merged in chunk order, so the result does not depend on `threads`.
/// `group_of`, when nonempty, maps each player to a group index; group
/// estimates average the members' marginals within each sample.
template <Scalar T>
estimate_report shapley_montecarlo(const claim_oracle<T>& o, std::size_t samples, std::uint64_t seed,
                                   std::span<const std::size_t> group_of = {}, std::size_t threads = 0) {
  if (samples == 0) throw error(errc::invalid_parameter, "at least one sample is required");
  const std::size_t n = o.players();
  std::size_t group_count = 0;
  std::vector<std::size_t> group_size;
  if (!group_of.empty()) {
    if (group_of.size() != n) throw error(errc::dimension_mismatch, "grouping must cover every player");
    group_count = *std::max_element(group_of.begin(), group_of.end()) + 1;
    group_size.assign(group_count, 0);
    for (auto g : group_of) ++group_size[g];
  }

  const std::size_t chunk = std::max<std::size_t>(256, (samples + 63) / 64);
  const std::size_t chunks = (samples + chunk - 1) / chunk;
  struct partial {
    std::vector<double> sum, sumsq, gsum, gsumsq;
  };
  std::vector<partial> parts(chunks);

  detail::parallel_chunks(chunks, threads, [&](std::size_t c) {
    partial& part = parts[c];
    part.sum.assign(n, 0.0);
    part.sumsq.assign(n, 0.0);
    part.gsum.assign(group_count, 0.0);
    part.gsumsq.assign(group_count, 0.0);
    detail::order_sampler<T> sampler(o);
    std::vector<double> marginals(n), group_total(group_count);
    const std::size_t end = std::min(samples, (c + 1) * chunk);
    for (std::size_t k = c * chunk; k < end; ++k) {
      sampler.sample(seed, k, marginals);
      for (std::size_t i = 0; i < n; ++i) {
        part.sum[i] += marginals[i];
        part.sumsq[i] += marginals[i] * marginals[i];
      }
      if (group_count) {
        std::fill(group_total.begin(), group_total.end(), 0.0);
        for (std::size_t i = 0; i < n; ++i) group_total[group_of[i]] += marginals[i];
        for (std::size_t g = 0; g < group_count; ++g) {
          double mean = group_total[g] / static_cast<double>(group_size[g]);
          part.gsum[g] += mean;
          part.gsumsq[g] += mean * mean;
        }
      }
    }
  });

  std::vector<double> sum(n, 0.0), sumsq(n, 0.0), gsum(group_count, 0.0), gsumsq(group_count, 0.0);
  for (const auto& part : parts) {
    for (std::size_t i = 0; i < n; ++i) {
      sum[i] += part.sum[i];
      sumsq[i] += part.sumsq[i];
    }
    for (std::size_t g = 0; g < group_count; ++g) {
      gsum[g] += part.gsum[g];
      gsumsq[g] += part.gsumsq[g];
    }
  }

  const double count = static_cast<double>(samples);
  auto stderr_of = [&](double s, double sq) {
    if (samples < 2) return 0.0;
    double var = std::max(0.0, (sq - s * s / count) / (count - 1.0));
    return std::sqrt(var / count);
  };
  estimate_report r;
  r.samples = samples;
  r.seed = seed;
  r.standard_error_defined = samples >= 2;
  r.estimate.resize(n);
  r.standard_error.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    r.estimate[i] = sum[i] / count;
    r.standard_error[i] = stderr_of(sum[i], sumsq[i]);
  }
  for (std::size_t g = 0; g < group_count; ++g)
    r.groups.push_back({group_size[g], gsum[g] / count, stderr_of(gsum[g], gsumsq[g])});
  return r;
}

}  // namespace fairshare

#endif  // FAIRSHARE_SOLUTIONS_HPP
