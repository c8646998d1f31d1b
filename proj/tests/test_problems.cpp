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

#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

namespace fairshare {
namespace {

using namespace testing;

TEST(Infrastructure, CostsBecomeNegativeSurplus) {
  std::vector<point<Q>> options = {qpoint({10, 4}), qpoint({4, 6}), qpoint({9, 2}), qpoint({2, 7})};
  const std::vector<Q> costs = {Q(4), Q(4), Q(2), Q(2)};
  EXPECT_EQ(infrastructure<Q>(options, costs), costly_options_problem());
  EXPECT_EQ(infrastructure<Q>({qpoint({8, 2}), qpoint({2, 4})}), power_plant());
  const std::vector<Q> short_costs = {Q(1)};
  EXPECT_THROW(infrastructure<Q>(options, short_costs), error);
}

TEST(Bankruptcy, PolytopeGameEqualsOracleOnRandomInstances) {
  counter_rng rng(77, 0);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 1 + rng.below(6);
    std::vector<Q> c(n);
    Q total(0);
    for (auto& x : c) total += (x = Q(static_cast<long long>(rng.below(50))) / Q(static_cast<long long>(1 + rng.below(3))));
    Q estate = total * Q(static_cast<long long>(rng.below(13))) / 10;
    auto inst = bankruptcy<Q>(c, estate);
    auto g = stand_alone(inst.polytope);
    EXPECT_EQ(g, tabulate(inst.oracle));
    for (auto s : all_coalitions(n)) EXPECT_EQ(g(s), std::min(coalition_sum<Q>(c, s), estate));
  }
}

TEST(Bankruptcy, ExampleSplit) {
  const std::vector<Q> c = {Q(100), Q(200), Q(400)};
  auto inst = bankruptcy<Q>(c, Q(300));
  EXPECT_EQ(shapley_standalone(inst.polytope), qpoint({50, 100, 150}));
  EXPECT_EQ(shapley_standalone(tabulate(inst.oracle)), qpoint({50, 100, 150}));
}

TEST(Bankruptcy, AmpleAndEmptyEstate) {
  const std::vector<Q> c = {Q(30), Q(10), Q(5)};
  EXPECT_EQ(shapley_standalone(bankruptcy_polytope<Q>(c, Q(45))), qpoint({30, 10, 5}));
  EXPECT_EQ(shapley_standalone(bankruptcy_polytope<Q>(c, Q(1000))), qpoint({30, 10, 5}));
  EXPECT_EQ(shapley_standalone(bankruptcy_polytope<Q>(c, Q(0))), qpoint({0, 0, 0}));
}

TEST(Bankruptcy, RejectsBadInput) {
  const std::vector<Q> neg = {Q(1), Q(-1)};
  EXPECT_THROW(bankruptcy<Q>(neg, Q(1)), error);
  const std::vector<Q> c = {Q(1), Q(2)};
  EXPECT_THROW(bankruptcy<Q>(c, Q(-1)), error);
  std::vector<Q> many(max_bankruptcy_vertex_players + 1, Q(1));
  try {
    bankruptcy_polytope<Q>(many, Q(3));
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::too_many_players);
  }
  EXPECT_NO_THROW(bankruptcy_oracle<Q>(many, Q(3)));
}

TEST(IndivisibleGood, ClaimsAreLargestValuation) {
  const std::vector<Q> v = {Q(300), Q(270), Q(240)};
  auto p = indivisible_good<Q>(v);
  for (auto s : all_coalitions(3)) {
    Q best(0);
    for (auto i : s.members()) best = std::max(best, v[i]);
    EXPECT_EQ(claim(p, s), best);
  }
  EXPECT_EQ(shapley_standalone(p), qpoint({125, 95, 80}));
}

TEST(PublicGood, GeneratorFormMatchesOracle) {
  const std::vector<Q> v = {Q(20), Q(20), Q(10), Q(10), Q(0)};
  for (long long cost : {0, 15, 40, 100}) {
    auto c = public_good<Q>(v, Q(cost));
    auto o = public_good_oracle<Q>(v, Q(cost));
    auto w = surplus_game(c);
    for (auto s : all_coalitions(5)) EXPECT_EQ(w(s), std::max(coalition_sum<Q>(v, s) - Q(cost), Q(0)));
    EXPECT_EQ(w, tabulate(o));
  }
}

TEST(PublicGood, ZeroCostGivesValuesAndZeroValuesGiveNothing) {
  const std::vector<Q> v = {Q(7), Q(3), Q(0)};
  EXPECT_EQ(shapley_surplus(public_good<Q>(v, Q(0))), qpoint({7, 3, 0}));
  const std::vector<Q> zeros(4, Q(0));
  EXPECT_EQ(shapley_surplus(public_good<Q>(zeros, Q(10))), allocation<Q>(4, Q(0)));
}

TEST(PublicGood, ScaledParkMatchesPermutationOracle) {
  const std::vector<Q> v = {Q(20), Q(20), Q(10), Q(10), Q(10), Q(10), Q(0), Q(0), Q(0), Q(0)};
  auto c = public_good<Q>(v, Q(40));
  auto game = tabulate(public_good_oracle<Q>(v, Q(40)));
  auto by_formula = shapley_standalone(game);
  EXPECT_EQ(by_formula, shapley_permutation_oracle(game));
  EXPECT_EQ(by_formula, shapley_surplus(c));
  EXPECT_EQ(std::accumulate(by_formula.begin(), by_formula.end(), Q(0)), Q(40));
  EXPECT_EQ(by_formula[0], by_formula[1]);
  EXPECT_EQ(by_formula[2], by_formula[5]);
  for (std::size_t i = 6; i < 10; ++i) EXPECT_EQ(by_formula[i], Q(0));
  EXPECT_GT(by_formula[0], by_formula[2]);
}

TEST(GroupsByValue, FirstAppearanceOrder) {
  const std::vector<Q> v = {Q(5), Q(1), Q(5), Q(0), Q(1)};
  EXPECT_EQ(groups_by_value<Q>(v), (std::vector<std::size_t>{0, 1, 0, 2, 1}));
}

TEST(CommonResource, EfficientAllocationAndTransfers) {
  const std::vector<double> alpha = {1, 2, 3};
  auto inst = common_resource(alpha, 100.0);
  EXPECT_NEAR(inst.efficient_allocation[0], 7.1, 0.05);
  EXPECT_NEAR(inst.efficient_allocation[1], 28.6, 0.05);
  EXPECT_NEAR(inst.efficient_allocation[2], 64.3, 0.05);
  auto psi = shapley_standalone(tabulate(inst.oracle));
  auto r = transfers<double>(inst.utilities, 0.0, psi);
  ASSERT_EQ(r.payments.size(), 2u);
  EXPECT_EQ(r.payments[0].payer, 2u);
  EXPECT_EQ(r.payments[0].payee, 0u);
  EXPECT_NEAR(r.payments[0].amount, 1.8, 0.05);
  EXPECT_EQ(r.payments[1].payer, 2u);
  EXPECT_EQ(r.payments[1].payee, 1u);
  EXPECT_NEAR(r.payments[1].amount, 1.0, 0.05);
}

TEST(CommonResource, SymmetricPlayersAndMonotoneShares) {
  counter_rng rng(31, 0);
  for (int t = 0; t < 20; ++t) {
    std::vector<double> alpha(5);
    for (auto& a : alpha) a = 0.5 + 4 * rng.uniform();
    alpha[3] = alpha[1];
    std::sort(alpha.begin(), alpha.end());
    auto psi = shapley_standalone(tabulate(common_resource_oracle(alpha, 50.0)));
    for (std::size_t i = 0; i + 1 < 5; ++i) {
      if (alpha[i] == alpha[i + 1]) EXPECT_NEAR(psi[i], psi[i + 1], 1e-9);
      else EXPECT_LT(psi[i], psi[i + 1]);
    }
  }
}

}  // namespace
}  // namespace fairshare
