#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "aomega/family.hpp"

using namespace aomega;

TEST_CASE("family members evaluate as expected") {
  const auto powers = WeightFamily::power_n(8);
  CHECK(powers.member(3).eval(1.0) == doctest::Approx(8.0));
  CHECK(powers.member(1).eval(0.0) == doctest::Approx(1.0));

  const auto roots = WeightFamily::frac_power(8);
  // n = 1 degenerates to the constant weight
  CHECK(roots.member(1).eval(17.3) == doctest::Approx(1.0));
  CHECK(roots.member(2).eval(3.0) == doctest::Approx(2.0));  // (1+3)^(1/2)

  const auto binary = WeightFamily::binary_pow_n(7);
  CHECK(binary.member(2).eval(3.0) == doctest::Approx(16.0));  // 2^(2*2)

  CHECK_THROWS_AS(powers.member(0), std::out_of_range);
  CHECK_THROWS_AS(powers.member(9), std::out_of_range);
}

TEST_CASE("members are nondecreasing in n pointwise") {
  for (const auto& fam :
       {WeightFamily::power_n(5), WeightFamily::frac_power(5),
        WeightFamily::exp_sqrt_n(5), WeightFamily::exp_n(4),
        WeightFamily::binary_pow_n(5)})
    for (double t : {0.0, 0.5, 2.0, 100.0})
      for (int n = 1; n < fam.n_max(); ++n)
        CHECK(fam.member(n + 1).log_eval(t) >= fam.member(n).log_eval(t) - 1e-12);
}

TEST_CASE("digit weight quotients are exact powers of two") {
  const auto binary = WeightFamily::binary_pow_n(7);
  CHECK(weight_ratio(binary.member(2), binary.member(1), 1023.0) == 1024.0);
  CHECK(weight_ratio(binary.member(2), binary.member(1), 512.0) == 2.0);
  CHECK(weight_ratio(binary.member(4), binary.member(1), 1024.0) == 8.0);
}

TEST_CASE("successive quotient unbounded for the digit family") {
  const auto binary = WeightFamily::binary_pow_n(7);
  const auto rep = check_condition_c(binary, 1, 1024.0, 1024.0);
  CHECK(rep.passed());
  CHECK(rep.extremum == 1024.0);
  CHECK(rep.witness.at(0).point == 1023.0);
}

TEST_CASE("quotient blowup holds for powers but fails for the digit family") {
  const auto powers = WeightFamily::power_n(8);
  const auto ok = check_wein(powers, 1, 1024.0, 100.0);
  CHECK(ok.passed());
  CHECK(ok.selected_m == 2);

  const auto binary = WeightFamily::binary_pow_n(7);
  const auto rep = check_wein(binary, 1, 1024.0, 100.0);
  CHECK(rep.verdict == Verdict::fail);
  // inf over the far window equals 2^(m-1) exactly, attained at dyadic points
  for (int m = 2; m <= 7; ++m)
    CHECK(rep.parameters.at("inf_per_m").at(std::to_string(m)).get<double>() ==
          std::exp2(m - 1));
  REQUIRE(!rep.witness.empty());
  for (const Witness& w : rep.witness) {
    const double l2 = std::log2(w.point);
    CHECK(l2 == doctest::Approx(std::round(l2)));
  }
}

TEST_CASE("linear-in-t domination settles one index up for polynomial weights") {
  const auto powers = WeightFamily::power_n(8);
  for (int n = 1; n <= 4; ++n) {
    const auto rep = check_weco(powers, n, 1024.0, 8, 1e-3);
    CHECK(rep.passed());
    CHECK(rep.selected_m == n + 1);
    CHECK(rep.extremum <= 1.0 + 1e-12);
  }
}

TEST_CASE("no domination index for the fractional family") {
  const auto roots = WeightFamily::frac_power(8);
  const auto rep = check_weco(roots, 2, 1024.0, 8, 1e-3);
  CHECK(rep.verdict == Verdict::fail);
  CHECK(rep.selected_m == -1);
  const auto& strong = rep.parameters.at("strong_growth");
  for (int m = 3; m <= 8; ++m) CHECK(strong.at(std::to_string(m)).get<bool>());
  // growth under horizon doubling tracks 2^(1/2 + 1/m)
  for (int m = 3; m <= 8; ++m)
    CHECK(rep.parameters.at("growth_per_m").at(std::to_string(m)).get<double>() ==
          doctest::Approx(std::exp2(0.5 + 1.0 / m)).epsilon(0.01));
}

TEST_CASE("square-in-t domination needs two indices up") {
  const auto powers = WeightFamily::power_n(8);
  const auto rep = check_weco_p(powers, 2, 2.0, 1024.0, 8, 1e-3);
  CHECK(rep.passed());
  CHECK(rep.selected_m == 4);
}

TEST_CASE("tail convergence factor") {
  const auto powers = WeightFamily::power_n(8);
  CHECK(check_convergence_factor(powers, 1, 3, 1.0, 1024.0, 1e-2).passed());
  const auto tight = check_convergence_factor(powers, 1, 2, 1.0, 1024.0, 1e-6);
  CHECK(tight.verdict == Verdict::fail);
  CHECK_THROWS_AS(check_convergence_factor(powers, 3, 2, 1.0, 1024.0, 1e-2),
                  std::invalid_argument);
}

TEST_CASE("shift continuity constant is finite two indices up") {
  const auto powers = WeightFamily::power_n(8);
  const double b = derivation_continuity_bound(powers, 1, 3, 1.0, 1024.0);
  CHECK(b > 0.3);
  CHECK(b < 0.4);  // sup of t(2+t)/(1+t)^3 is ~0.385 near t = 0.7
  // one index up, t(2+t)/(1+t)^2 increases towards its limit 1: bounded but
  // only just, with the sampled sup at the horizon
  const double edge = derivation_continuity_bound(powers, 1, 2, 1.0, 1024.0);
  CHECK(edge > 0.99);
  CHECK(edge <= 1.0);
}

TEST_CASE("custom families validate their generator") {
  const auto fam = WeightFamily::custom(
      "geometric", [](int n) { return Weight::exponential(0.5 * n); }, 4);
  CHECK(fam.member(2).eval(1.0) == doctest::Approx(std::exp(1.0)));
  CHECK(fam.n_max() == 4);
  CHECK_THROWS_AS(WeightFamily::power_n(0), std::invalid_argument);
}
