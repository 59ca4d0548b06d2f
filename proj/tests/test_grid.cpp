#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>

#include <doctest.h>

#include "aomega/family.hpp"
#include "aomega/grid.hpp"
#include "aomega/serialize.hpp"

using namespace aomega;

namespace {

double max_abs_diff(const GridFunction& a, const GridFunction& b) {
  REQUIRE(a.size() == b.size());
  double m = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a.v[j] - b.v[j]));
  return m;
}

}  // namespace

TEST_CASE("standard grid") {
  const Grid g = Grid::standard();
  CHECK(g.h == 0.0009765625);  // 2^-10, exact
  CHECK(g.T == 64.0);
  CHECK(g.n == 65537);
  CHECK(g.node(1024) == 1.0);
  CHECK_THROWS_AS(Grid::make(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(Grid::make(2.0, 1.0), std::invalid_argument);
}

TEST_CASE("box indicator is half open") {
  const Grid g = Grid::standard();
  const GridFunction f = GridFunction::box(g, 0.0, 1.0);
  CHECK(f.v[0] == cplx{1.0});
  CHECK(f.v[1023] == cplx{1.0});
  CHECK(f.v[1024] == cplx{0.0});
  // unweighted mass is then exactly 1
  CHECK(weighted_norm(f, Weight::power(0.0)) == 1.0);
}

TEST_CASE("weighted norms match closed forms for boxes") {
  const Grid g = Grid::standard();
  const GridFunction f = GridFunction::box(g, 0.0, 1.0);
  const auto powers = WeightFamily::power_n(8);
  for (int n = 1; n <= 6; ++n) {
    const double exact = (std::exp2(n + 1) - 1.0) / (n + 1);  // integral of (1+t)^n on [0,1]
    CHECK(weighted_norm(f, powers.member(n)) == doctest::Approx(exact).epsilon(5e-3));
  }
}

TEST_CASE("spectral convolution matches the direct sum") {
  const Grid g = Grid::make(1.0 / 256.0, 16.0);
  const GridFunction f = GridFunction::bump(g, 1.5, 1.0, {0.7, -0.3});
  const GridFunction k = GridFunction::box(g, 0.25, 2.0, {1.0, 0.5});
  CHECK(max_abs_diff(convolve(f, k), convolve_direct(f, k)) <= 1e-10);
}

TEST_CASE("convolution is commutative and associative") {
  const Grid g = Grid::make(1.0 / 256.0, 16.0);
  const GridFunction a = GridFunction::box(g, 0.0, 1.0);
  const GridFunction b = GridFunction::bump(g, 2.0, 0.5);
  const GridFunction c = GridFunction::exp_decay(g, 2.0);
  CHECK(max_abs_diff(convolve(a, b), convolve(b, a)) == 0.0);
  CHECK(max_abs_diff(convolve(convolve(a, b), c), convolve(a, convolve(b, c))) <= 1e-8);
}

TEST_CASE("box convolved with itself gives the triangle") {
  const Grid g = Grid::standard();
  const GridFunction f = GridFunction::box(g, 0.0, 1.0);
  const GridFunction t = convolve(f, f);
  CHECK(t.v[512].real() == doctest::Approx(0.5).epsilon(3e-3));
  CHECK(t.v[1024].real() == doctest::Approx(1.0).epsilon(3e-3));
  CHECK(t.v[1536].real() == doctest::Approx(0.5).epsilon(3e-3));
  CHECK(std::abs(t.v[3000]) <= 1e-12);  // beyond the support [0,2]
}

TEST_CASE("transform evaluation on the closed right half plane") {
  const Grid g = Grid::standard();
  const GridFunction f = GridFunction::box(g, 0.0, 1.0);
  CHECK(std::abs(laplace(f, {0.0, 0.0}) - cplx{1.0}) <= 2e-3);
  CHECK(std::abs(laplace(f, {1.0, 0.0}) - cplx{1.0 - std::exp(-1.0)}) <= 2e-3);
  // pure oscillation: (1 - e^{-i5}) / (i5)
  const cplx z{0.0, 5.0};
  const cplx exact = (1.0 - std::exp(-z)) / z;
  CHECK(std::abs(laplace(f, z) - exact) <= 3e-3);
  CHECK_THROWS_AS(laplace(f, {-0.1, 0.0}), std::domain_error);
}

TEST_CASE("support infimum") {
  const Grid g = Grid::standard();
  CHECK(alpha_support(GridFunction::box(g, 1.0, 2.0)) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(std::isinf(alpha_support(GridFunction::zeros(g))));
  const GridFunction b = GridFunction::bump(g, 3.0, 0.5);
  CHECK(alpha_support(b) == doctest::Approx(2.5).epsilon(1e-2));
}

TEST_CASE("multiplication by the variable") {
  const Grid g = Grid::standard();
  const GridFunction f = GridFunction::bump(g, 2.0, 1.0);
  const GridFunction xf = apply_X(f);
  CHECK(xf.v[0] == cplx{0.0});
  CHECK(xf.v[2048] == f.v[2048] * 2.0);
}

TEST_CASE("unit bumps") {
  const Grid g = Grid::standard();
  // the k = 1/h bump occupies exactly one cell and has unit mass
  CHECK(weighted_norm(approximate_identity(1024, g), Weight::power(0.0)) == 1.0);
  CHECK(weighted_norm(approximate_identity(16, g), Weight::power(0.0)) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(approximate_identity(2048, g), std::invalid_argument);
}

TEST_CASE("unit bump convolution reproduces at the finest scale") {
  const Grid g = Grid::standard();
  const GridFunction f = GridFunction::bump(g, 2.0, 1.0);
  const GridFunction r = convolve(approximate_identity(1024, g), f);
  CHECK(max_abs_diff(r, f) <= 1e-11);
}

TEST_CASE("pairing and dual norm") {
  const Grid g = Grid::standard();
  const GridFunction f = GridFunction::box(g, 0.0, 1.0);
  CHECK(std::abs(dual_pairing(f, f) - cplx{1.0}) <= 1e-12);
  const Weight w = Weight::power(1.0);
  // sup |f| / w over [0,1): attained at t = 0
  CHECK(sup_norm_over_weight(f, w) == doctest::Approx(1.0));
}

TEST_CASE("norm ladder is nondecreasing") {
  const Grid g = Grid::standard();
  const auto powers = WeightFamily::power_n(6);
  const auto profile = norms_profile(GridFunction::box(g, 0.0, 1.0), powers, 6);
  REQUIRE(profile.size() == 6);
  for (std::size_t i = 1; i < profile.size(); ++i) CHECK(profile[i] >= profile[i - 1]);
}

TEST_CASE("finite samples are required") {
  const Grid g = Grid::make(0.25, 1.0);
  std::vector<cplx> bad(g.n, 0.0);
  bad[2] = cplx{std::numeric_limits<double>::quiet_NaN(), 0.0};
  CHECK_THROWS_AS(GridFunction::from_samples(g, bad), std::invalid_argument);
}

TEST_CASE("csv round trip is exact") {
  const Grid g = Grid::make(1.0 / 32.0, 2.0);
  GridFunction f = GridFunction::bump(g, 1.0, 0.75, {0.123456789, -0.987654321});
  std::ostringstream os;
  write_function_csv(os, f);
  std::istringstream is(os.str());
  const GridFunction back = read_function_csv(is);
  CHECK(back.grid == g);
  CHECK(max_abs_diff(back, f) == 0.0);
}
