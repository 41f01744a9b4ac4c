// Copyright 2026 The ZSC Curriculum Authors
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

#include <boost/math/distributions/students_t.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <cmath>
#include <limits>
#include <sstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "zsc/common/error.hpp"
#include "zsc/common/rng.hpp"
#include "zsc/eval/crossplay.hpp"
#include "zsc/eval/proxy.hpp"
#include "zsc/eval/stats.hpp"
#include "zsc/kitchen/rollout.hpp"
#include "zsc/layoutgen/generator.hpp"
#include "zsc/layoutgen/layout_text.hpp"

using namespace zsc;
using namespace zsc::eval;

namespace {

constexpr std::string_view kOpen =
    "XXPXXXX\n"
    "O 1   X\n"
    "X     S\n"
    "X   2 X\n"
    "XXXDXXX\n";

std::shared_ptr<const kitchen::Layout> make(std::string_view text) {
  return std::make_shared<const kitchen::Layout>(layoutgen::parse_layout(text));
}

// Values frozen from scipy.stats / scipy.special before the build.
constexpr double kA[] = {12.1, 14.3, 9.8, 15.2, 11.7, 13.9, 10.4, 16.8, 12.6, 14.0};
constexpr double kB[] = {10.9, 13.1, 10.2, 12.8, 11.0, 12.4, 9.1, 15.0, 12.9, 12.2};
constexpr double kFrozenT = 3.944488010760609;
constexpr double kFrozenP = 0.0033828583722689937;

}  // namespace

TEST_CASE("difficulty thresholds") {
  CHECK(difficulty_of(70, 50, 10) == Difficulty::VeryEasy);
  CHECK(difficulty_of(50, 50, 10) == Difficulty::Medium);
  CHECK(difficulty_of(65, 50, 10) == Difficulty::Easy);  // upper bound is inclusive
  CHECK(difficulty_of(55, 50, 10) == Difficulty::Medium);
  CHECK(difficulty_of(45, 50, 10) == Difficulty::Hard);
  CHECK(difficulty_of(35, 50, 10) == Difficulty::VeryHard);
  CHECK(difficulty_of(35.0001, 50, 10) == Difficulty::Hard);
  CHECK(difficulty_name(Difficulty::VeryEasy) == "very_easy");
}

TEST_CASE("difficulty labels partition the reward line") {
  Rng rng(1234);
  for (int i = 0; i < 10000; ++i) {
    const double mu = 100 * (uniform01(rng) - 0.5), sigma = 0.01 + 20 * uniform01(rng);
    const double r = mu + sigma * 4 * (uniform01(rng) - 0.5);
    const double z = (r - mu) / sigma;
    // count how many of the five intervals claim r
    const int claims = (z > 1.5) + (z > 0.5 && z <= 1.5) + (z > -0.5 && z <= 0.5) + (z > -1.5 && z <= -0.5) +
                       (z <= -1.5);
    CHECK(claims == 1);
    const int label = static_cast<int>(difficulty_of(r, mu, sigma));
    CHECK(label >= 0);
    CHECK(label < kNumDifficulties);
  }
}

TEST_CASE("classify uses the sample mean and sample deviation") {
  const std::vector<double> r = {10, 20, 30, 40, 50};
  const auto labels = classify_difficulty(r);
  // mu 30, sigma sqrt(250) ~ 15.81
  CHECK(labels[0] == Difficulty::Hard);
  CHECK(labels[2] == Difficulty::Medium);
  CHECK(labels[4] == Difficulty::Easy);
  CHECK(sample_stddev(r) == doctest::Approx(std::sqrt(250.0)));
  const std::vector<double> one = {1.0};
  CHECK_THROWS_AS(classify_difficulty(one), Error);
  const std::vector<double> bad = {1.0, std::nan("")};
  CHECK_THROWS_AS(classify_difficulty(bad), Error);
}

TEST_CASE("normalization rescales to the unit interval") {
  const std::vector<double> s = {10, 30, 20};
  CHECK(normalize_slice(s) == std::vector<double>{0.0, 1.0, 0.5});
  const std::vector<double> flat = {4, 4, 4};
  CHECK(normalize_slice(flat) == std::vector<double>{0, 0, 0});
  const std::vector<double> unit = {0.0, 0.25, 1.0};
  CHECK(normalize_slice(unit) == unit);
}

TEST_CASE("matrix normalization works per layout slice") {
  CrossPlayMatrix m;
  m.policies = {"a", "b"};
  m.layouts = {"L0", "L1"};
  m.episodes_per_cell = 1;
  m.mean_reward.assign(8, 0.0);
  const double l0[] = {10, 30, 20, 40}, l1[] = {5, 5, 5, 5};
  for (std::size_t r = 0; r < 2; ++r) {
    for (std::size_t c = 0; c < 2; ++c) {
      m.mean_reward[m.index(r, c, 0)] = l0[r * 2 + c];
      m.mean_reward[m.index(r, c, 1)] = l1[r * 2 + c];
    }
  }
  const auto n = normalize(m);
  CHECK(n.at(0, 0, 0) == 0.0);
  CHECK(n.at(1, 1, 0) == 1.0);
  CHECK(n.at(0, 1, 0) == doctest::Approx(2.0 / 3.0));
  CHECK(n.at(1, 0, 1) == 0.0);
  m.mean_reward.pop_back();
  CHECK_THROWS_AS(normalize(m), Error);
}

TEST_CASE("incomplete beta against frozen and Boost values") {
  CHECK(incomplete_beta(2.5, 0.5, 0.3) == doctest::Approx(0.018927124071945658).epsilon(1e-12));
  CHECK(incomplete_beta(7, 3, 0.8) == doctest::Approx(0.7381975040000002).epsilon(1e-12));
  CHECK(incomplete_beta(0.5, 0.5, 0.01) == doctest::Approx(0.06376856085851985).epsilon(1e-12));
  CHECK(incomplete_beta(2, 3, 0.0) == 0.0);
  CHECK(incomplete_beta(2, 3, 1.0) == 1.0);
  Rng rng(6);
  for (int i = 0; i < 200; ++i) {
    const double a = 0.1 + 20 * uniform01(rng), b = 0.1 + 20 * uniform01(rng), x = uniform01(rng);
    CHECK(incomplete_beta(a, b, x) == doctest::Approx(boost::math::ibeta(a, b, x)).epsilon(1e-10));
  }
  CHECK_THROWS_AS(incomplete_beta(0, 1, 0.5), Error);
}

TEST_CASE("two-sided student t") {
  CHECK(student_t_two_sided(2.5, 7) == doctest::Approx(0.040992218585752874).epsilon(1e-12));
  CHECK(student_t_two_sided(0.3, 3) == doctest::Approx(0.783763292039919).epsilon(1e-12));
  CHECK(student_t_two_sided(10, 30) == doctest::Approx(4.5752514082296097e-11).epsilon(1e-9));
  CHECK(student_t_two_sided(std::numeric_limits<double>::infinity(), 4) == 0.0);
  CHECK(student_t_two_sided(0, 4) == 1.0);
  for (double df : {1.0, 2.0, 5.0, 9.0, 40.0}) {
    const boost::math::students_t dist(df);
    for (double t : {0.1, 0.9, 1.7, 3.2, 6.0}) {
      const double want = 2 * boost::math::cdf(boost::math::complement(dist, t));
      CHECK(student_t_two_sided(t, df) == doctest::Approx(want).epsilon(1e-10));
      CHECK(student_t_two_sided(-t, df) == doctest::Approx(want).epsilon(1e-10));
    }
  }
}

TEST_CASE("paired t-test on the fixed 10-sample instance") {
  const TTestResult r = paired_t_test(kA, kB);
  CHECK(r.df == 9);
  CHECK_FALSE(r.degenerate);
  CHECK(std::abs(r.t - kFrozenT) < 1e-9);
  CHECK(std::abs(r.p - kFrozenP) < 1e-9);
  // textbook formula, by hand
  double d[10], m = 0;
  for (int i = 0; i < 10; ++i) m += (d[i] = kA[i] - kB[i]) / 10;
  double ss = 0;
  for (double x : d) ss += (x - m) * (x - m);
  CHECK(r.t == doctest::Approx(m / (std::sqrt(ss / 9) / std::sqrt(10.0))).epsilon(1e-12));
}

TEST_CASE("paired t-test degenerate cases") {
  const std::vector<double> a = {1, 2, 3, 4};
  const auto same = paired_t_test(a, a);
  CHECK(same.degenerate);
  CHECK(same.t == 0.0);
  CHECK(same.p == 1.0);
  const std::vector<double> b = {0, 1, 2, 3};
  const auto shift = paired_t_test(a, b);
  CHECK(shift.degenerate);
  CHECK(std::isinf(shift.t));
  CHECK(shift.t > 0);
  CHECK(shift.p == 0.0);
  const std::vector<double> shorter = {1, 2, 3};
  CHECK_THROWS_AS(paired_t_test(a, shorter), Error);
  const std::vector<double> single = {1};
  CHECK_THROWS_AS(paired_t_test(single, single), Error);
}

TEST_CASE("cross-play with stay agents is all zeros and deterministic") {
  kitchen::StayAgent stay;
  kitchen::UniformRandomAgent random;
  const std::vector<std::shared_ptr<const kitchen::Layout>> layouts = {make(kOpen),
                                                                       make(testing::kFixtureLayout)};
  kitchen::KitchenConfig kc;
  kc.horizon = 60;
  const kitchen::Agent* stays[] = {&stay, &stay};
  const auto m = cross_play(stays, layouts, 3, 1, kc);
  CHECK(m.check().empty());
  CHECK(m.policies.size() == 2u);
  for (double v : m.mean_reward) CHECK(v == 0.0);

  eval::ProxyAgent proxy;
  const kitchen::Agent* mixed[] = {&proxy, &random};
  const auto a = cross_play(mixed, layouts, 4, 9, kc);
  const auto b = cross_play(mixed, layouts, 4, 9, kc);
  CHECK(a.mean_reward == b.mean_reward);

  const kitchen::Agent* single[] = {&proxy};
  const auto s = cross_play(single, layouts, 4, 9, kc);
  CHECK(s.mean_reward.size() == 2u);
  CHECK_THROWS_AS(cross_play(single, layouts, 0, 9, kc), Error);
}

TEST_CASE("generic cross-play uses every cell and episode") {
  const auto m = cross_play({"p", "q", "r"}, {"A", "B"}, 5, 3,
                            [](std::size_t row, std::size_t col, std::size_t l, int e, std::uint64_t) {
                              return static_cast<double>(100 * row + 10 * col + l) + e;
                            });
  CHECK(m.at(2, 1, 1) == doctest::Approx(211 + 2.0));
  CHECK(m.at(0, 0, 0) == doctest::Approx(2.0));
}

TEST_CASE("proxy agent cooks on its own") {
  kitchen::KitchenConfig kc;
  kc.horizon = 200;
  eval::ProxyAgent greedy(0.0);
  kitchen::StayAgent stay;
  const auto layout = make(kOpen);
  const kitchen::Kitchen k(layout, kc);
  const auto solo = kitchen::rollout(k, greedy, stay, 3);
  CHECK(solo.events.deliveries >= 1);
  CHECK(solo.total_reward >= 43.0);

  // with a Stay partner every episode is the proxy cooking alone, so the
  // mean is the solo golden averaged over the two seats
  const auto solo1 = kitchen::rollout(k, stay, greedy, 3);
  const std::vector<std::shared_ptr<const kitchen::Layout>> ls = {layout};
  const auto with_stay = evaluate_vs_proxy(stay, ls, 4, 11, kc, 0.0);
  CHECK(with_stay[0].mean_reward == doctest::Approx(0.5 * (solo.total_reward + solo1.total_reward)));
  CHECK(with_stay[0].mean_reward <= std::max(solo.total_reward, solo1.total_reward));
  CHECK(with_stay[0].episodes == 4);
  const auto again = evaluate_vs_proxy(stay, ls, 4, 11, kc, 0.0);
  CHECK(again[0].mean_reward == with_stay[0].mean_reward);
  CHECK_THROWS_AS(evaluate_vs_proxy(stay, ls, 0, 11, kc), Error);
  CHECK_THROWS_AS(eval::ProxyAgent(1.5), Error);
}

TEST_CASE("proxy distribution mixes epsilon noise over a planned action") {
  const auto layout = make(kOpen);
  const kitchen::Kitchen k(layout);
  eval::ProxyAgent p(0.1);
  const auto s = k.reset();
  const auto d = p.act(k, s, 0);
  const auto planned = static_cast<std::size_t>(p.plan(k, s, 0));
  double total = 0;
  for (std::size_t a = 0; a < d.probs.size(); ++a) {
    total += d.probs[a];
    CHECK(d.probs[a] == doctest::Approx(a == planned ? 0.9 + 0.1 / 6 : 0.1 / 6));
  }
  CHECK(total == doctest::Approx(1.0));
}

TEST_CASE("results csv") {
  std::vector<LayoutResult> rs = {{"L0", "ego", 10.5, 2.0, 4}, {"L1", "ego", 20.0, 0.0, 4}};
  std::ostringstream out;
  write_results_csv(out, rs);
  CHECK(out.str().rfind("layout_id,policy_id,mean_reward,std,episodes\n", 0) == 0);
  CHECK(out.str().find("L1,ego,20") != std::string::npos);
  CHECK(overall_mean(rs) == doctest::Approx(15.25));
}

TEST_CASE("held-out layout selection skips excluded ids and spans labels") {
  layoutgen::GeneratorConfig g;
  g.count = 10;
  kitchen::KitchenConfig kc;
  kc.horizon = 80;
  const auto sel = select_eval_layouts(g, kc, {}, 5, 20, 1);
  REQUIRE(sel.layouts.size() == 5u);
  std::set<std::string, std::less<>> exclude = {sel.layouts[0]->id()};
  const auto other = select_eval_layouts(g, kc, exclude, 5, 20, 1);
  for (const auto& l : other.layouts) CHECK(l->id() != sel.layouts[0]->id());
  const auto again = select_eval_layouts(g, kc, {}, 5, 20, 1);
  for (std::size_t i = 0; i < 5; ++i) CHECK(again.layouts[i]->id() == sel.layouts[i]->id());
}
