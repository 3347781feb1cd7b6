#include <doctest.h>

#include <cmath>

#include "qmc/models.hpp"
#include "test_helpers.hpp"

using namespace qmc;
using namespace qmc::testing;

TEST_CASE("RoadColoring validation") {
  CHECK_THROWS_AS(RoadColoring({"a"}, {"c"}, {{0}}, {0.5}), Error);     // nu sum
  CHECK_THROWS_AS(RoadColoring({"a"}, {"c"}, {{1}}, {1.0}), Error);     // target
  CHECK_THROWS_AS(RoadColoring({"a", "b"}, {"c"}, {{0}}, {1.0}), Error);  // row
  RoadColoring ok({"a", "b"}, {"c"}, {{1, 0}}, {1.0});
  CHECK(ok.color_index("c") == 0);
  CHECK_THROWS_AS(ok.color_index("x"), Error);
}

TEST_CASE("stochastic_matrix of the bundled model and trivia") {
  RealMatrix t = stochastic_matrix(models::three_state_road());
  RealMatrix expect(3, 3);
  expect << 5.0 / 6, 1.0 / 6, 0, 1.0 / 3, 0.5, 1.0 / 6, 0, 1.0 / 3, 2.0 / 3;
  CHECK((t - expect).norm() < 1e-14);

  RoadColoring ident({"a", "b"}, {"c"}, {{0, 1}}, {1.0});
  CHECK((stochastic_matrix(ident) - RealMatrix::Identity(2, 2)).norm() == 0.0);

  RoadColoring single({"a"}, {"c"}, {{0}}, {1.0});
  CHECK(stochastic_matrix(single)(0, 0) == 1.0);
}

TEST_CASE("graph product marginals recover the base chain") {
  RoadColoring rc = models::three_state_road();
  RoadColoring pair = graph_product(rc);
  REQUIRE(pair.num_states() == 9);
  RealMatrix t = stochastic_matrix(rc);
  RealMatrix pt = stochastic_matrix(pair);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int x = 0; x < 3; ++x) {
        double row_sum_1 = 0, row_sum_2 = 0;
        for (int y = 0; y < 3; ++y) {
          row_sum_1 += pt(a * 3 + b, x * 3 + y);
          row_sum_2 += pt(a * 3 + b, y * 3 + x);
        }
        CHECK(row_sum_1 == doctest::Approx(t(a, x)));
        CHECK(row_sum_2 == doctest::Approx(t(b, x)));
      }
  // the diagonal is forward invariant
  for (int s = 0; s < 3; ++s)
    for (int c = 0; c < rc.num_colors(); ++c)
      CHECK(pair.gamma[c][s * 3 + s] % 4 == 0);  // index of a diagonal state
}

TEST_CASE("synchronizing words") {
  RoadColoring rc = models::three_state_road();
  const int r = rc.color_index("r");
  CHECK(is_synchronizing_word(rc, {r, r}));
  CHECK_FALSE(is_synchronizing_word(rc, {rc.color_index("g")}));
  CHECK_FALSE(is_synchronizing_word(rc, {rc.color_index("b")}));
  CHECK_THROWS_AS(is_synchronizing_word(rc, {}), Error);
}

TEST_CASE("nonsync probability: exact values and the enumeration oracle") {
  RoadColoring rc = models::three_state_road();
  CHECK(nonsync_probability(rc, 0) == doctest::Approx(1.0));
  CHECK(nonsync_probability(rc, 2) == doctest::Approx(31.0 / 36.0));
  CHECK(nonsync_probability(rc, 3) == doctest::Approx(25.0 / 36.0));
  for (int n = 0; n <= 10; ++n)
    CHECK(std::abs(nonsync_probability(rc, n) -
                   nonsync_enumeration_oracle(rc, n)) <= 1e-12);
  CHECK_THROWS_AS(nonsync_enumeration_oracle(rc, 30), HorizonTooLarge);
}

TEST_CASE("oracle agreement on random automata") {
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 20; ++trial) {
    RoadColoring rc = random_road(3, 3, rng);
    for (int n = 0; n <= 6; ++n)
      CHECK(std::abs(nonsync_probability(rc, n) -
                     nonsync_enumeration_oracle(rc, n)) <= 1e-12);
  }
}

TEST_CASE("synchronizable verdicts") {
  CHECK(synchronizable(models::three_state_road()));
  RoadColoring ident({"a", "b"}, {"c"}, {{0, 1}}, {1.0});
  CHECK_FALSE(synchronizable(ident));
  RoadColoring single({"a"}, {"c"}, {{0}}, {1.0});
  CHECK(synchronizable(single));
}

TEST_CASE("alternating sum equals the exact nonsync sequence") {
  RoadColoring rc = models::three_state_road();
  for (int n = 0; n <= 12; ++n)
    CHECK(std::abs(alternating_sum_bound(n).binomial_sum -
                   nonsync_probability(rc, n)) <= 1e-12);
  // closed form dominates up to n = 7
  for (int n = 2; n <= 7; ++n)
    CHECK(alternating_sum_bound(n).binomial_sum <=
          alternating_sum_bound(n).closed_form + 1e-12);
}

TEST_CASE("classical mixing bound dominates true distances") {
  RoadColoring rc = models::three_state_road();
  RealMatrix t = stochastic_matrix(rc);
  const double rate = models::ref_classical_rate();
  RealMatrix power = RealMatrix::Identity(3, 3);
  for (int n = 0; n <= 20; ++n) {
    double worst = 0.0;
    for (int s = 0; s < 3; ++s)
      for (int s2 = 0; s2 < 3; ++s2)
        worst = std::max(worst,
                         (power.row(s) - power.row(s2)).cwiseAbs().sum());
    CHECK(worst <= classical_mixing_bound(rc, n) + 1e-12);
    CHECK(worst <= 4.0 * std::pow(rate, double(n)) + 1e-12);
    power = power * t;
  }
}

TEST_CASE("sync_report ties everything together") {
  SyncReport rep = sync_report(models::three_state_road(), 6);
  CHECK(rep.horizon == 6);
  CHECK(rep.synchronizable);
  CHECK(std::abs(rep.rate - models::ref_classical_rate()) < 1e-12);
  REQUIRE(rep.exact_nonsync.size() == 7);
  CHECK(rep.exact_nonsync[2] == doctest::Approx(31.0 / 36.0));
  CHECK(rep.closed_form[0] == doctest::Approx(2.0));
}
