#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ifs/admissibility.hpp"
#include "ifs/calibration.hpp"
#include "ifs/errors.hpp"
#include "ifs/pl_map.hpp"
#include "ifs/rng.hpp"
#include "ifs/system.hpp"
#include "ifs/words.hpp"

using ifs::IfsSystem;
using ifs::PiecewiseLinearMap;
using Node = PiecewiseLinearMap::Node;

namespace {

PiecewiseLinearMap f1() {
  return PiecewiseLinearMap({{0.0, 0.0}, {0.8, 0.4}, {1.0, 1.0}});
}
PiecewiseLinearMap f2() {
  return PiecewiseLinearMap({{0.0, 0.0}, {0.2, 0.6}, {1.0, 1.0}});
}

}  // namespace

TEST_CASE("map evaluation on the two-map fixture") {
  CHECK(f1().eval(0.0) == 0.0);
  CHECK(f1().eval(1.0) == 1.0);
  CHECK(f1().eval(0.5) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(f2().eval(0.5) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(f1().eval(0.8) == 0.4);  // breakpoint is exact
  CHECK(f2().eval(0.2) == 0.6);
}

TEST_CASE("map domain violations are rejected") {
  CHECK_THROWS_AS(f1().eval(-0.1), ifs::ValidationError);
  CHECK_THROWS_AS(f1().eval(1.5), ifs::ValidationError);
  CHECK_THROWS_AS(f1().eval_inverse(-0.1), ifs::ValidationError);
}

TEST_CASE("node list validation") {
  CHECK_THROWS_AS(PiecewiseLinearMap({{0.1, 0.0}, {1.0, 1.0}}),
                  ifs::ValidationError);
  CHECK_THROWS_AS(PiecewiseLinearMap({{0.0, 0.0}, {0.9, 0.9}}),
                  ifs::ValidationError);
  CHECK_THROWS_AS(
      PiecewiseLinearMap({{0.0, 0.0}, {0.5, 0.6}, {0.5, 0.7}, {1.0, 1.0}}),
      ifs::ValidationError);
  CHECK_THROWS_AS(
      PiecewiseLinearMap({{0.0, 0.0}, {0.5, 0.7}, {0.6, 0.6}, {1.0, 1.0}}),
      ifs::ValidationError);
  CHECK_NOTHROW(PiecewiseLinearMap::identity());
}

TEST_CASE("inverse evaluation") {
  CHECK(f1().eval_inverse(0.0) == 0.0);
  CHECK(f1().eval_inverse(1.0) == 1.0);
  CHECK(f1().eval_inverse(0.25) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(f2().eval_inverse(0.6) == doctest::Approx(0.2).epsilon(1e-15));
}

TEST_CASE("endpoint slopes are the segment slopes") {
  // The interior node coordinates are not exactly representable, so the
  // outer slopes carry one ulp of rounding (3.0000000000000004 vs 3).
  CHECK(f1().endpoint_slopes().first == 0.5);
  CHECK(f1().endpoint_slopes().second == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(f2().endpoint_slopes().first == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(f2().endpoint_slopes().second == 0.5);
  CHECK(PiecewiseLinearMap::identity().endpoint_slopes() ==
        std::pair<double, double>{1.0, 1.0});
}

TEST_CASE("monotonicity and round trip on random points") {
  const auto maps = IfsSystem::am2().maps();
  ifs::SplitMix64 rng(ifs::StreamSpec{42, 0});
  for (int it = 0; it < 2000; ++it) {
    double x = rng.next_unit(), y = rng.next_unit();
    if (x == y) continue;
    if (x > y) std::swap(x, y);
    for (const auto& f : maps) {
      CHECK(f.eval(x) < f.eval(y));
      CHECK(std::abs(f.eval_inverse(f.eval(x)) - x) <= 1e-12);
      CHECK(std::abs(f.eval(f.eval_inverse(y)) - y) <= 1e-12);
    }
  }
}

TEST_CASE("system validation") {
  CHECK_THROWS_AS(IfsSystem({f1()}, {1.0}), ifs::ValidationError);  // N < 2
  CHECK_THROWS_AS(IfsSystem({f1(), f2()}, {0.5, 0.4}), ifs::ValidationError);
  CHECK_THROWS_AS(IfsSystem({f1(), f2()}, {1.2, -0.2}), ifs::ValidationError);
  CHECK_THROWS_AS(IfsSystem({f1(), f2()}, {0.5}), ifs::ValidationError);
  const IfsSystem sys = IfsSystem::am2();
  CHECK(sys.size() == 2);
  CHECK(sys.cum_probs().back() == 1.0);
}

TEST_CASE("symbol selection from uniform draws") {
  const IfsSystem sys = IfsSystem::am2();
  CHECK(sys.symbol_for(0.0) == 0);
  CHECK(sys.symbol_for(0.4999) == 0);
  // smallest i with C_i > u: C_1 = 0.5 is not > 0.5
  CHECK(sys.symbol_for(0.5) == 1);
  CHECK(sys.symbol_for(0.999) == 1);
}

TEST_CASE("json round trip and diagnostics") {
  const IfsSystem sys = IfsSystem::am2();
  const IfsSystem back = IfsSystem::from_json_text(sys.to_json_text());
  CHECK(back.size() == sys.size());
  for (std::size_t i = 0; i < sys.size(); ++i) {
    REQUIRE(back.map(i).nodes().size() == sys.map(i).nodes().size());
    for (std::size_t j = 0; j < sys.map(i).nodes().size(); ++j) {
      CHECK(back.map(i).nodes()[j].x == sys.map(i).nodes()[j].x);
      CHECK(back.map(i).nodes()[j].y == sys.map(i).nodes()[j].y);
    }
    CHECK(back.probs()[i] == sys.probs()[i]);
  }
  CHECK_THROWS_AS(IfsSystem::from_json_text("{not json"), ifs::ValidationError);
  CHECK_THROWS_AS(IfsSystem::from_json_text(R"({"maps": [], "probs": []})"),
                  ifs::ValidationError);
  CHECK_THROWS_AS(
      IfsSystem::from_json_text(
          R"({"maps":[{"nodes":[[0,0],[1,1]]},{"nodes":[[0,0],[1,1]]}],"probs":[0.5,0.4]})"),
      ifs::ValidationError);
}

TEST_CASE("word application") {
  const IfsSystem sys = IfsSystem::am2();
  CHECK(ifs::word_apply(sys, {}, 0.37) == 0.37);
  const ifs::Word w12 = {0, 1};  // f2 after f1
  CHECK(ifs::word_apply(sys, w12, 0.5) == doctest::Approx(0.625).epsilon(1e-15));
  const ifs::Word w22 = {1, 1};
  CHECK(ifs::word_apply(sys, w22, 0.5) == doctest::Approx(0.875).epsilon(1e-15));
  const ifs::Word bad = {2};
  CHECK_THROWS_AS(ifs::word_apply(sys, bad, 0.5), ifs::ValidationError);
}

TEST_CASE("word composition is a left fold") {
  const IfsSystem sys = IfsSystem::am2();
  ifs::SplitMix64 rng(ifs::StreamSpec{7, 3});
  for (int it = 0; it < 200; ++it) {
    ifs::Word a, b, ab;
    const std::size_t la = rng.next_u64() % 6, lb = rng.next_u64() % 6;
    for (std::size_t i = 0; i < la; ++i)
      a.push_back(static_cast<std::uint32_t>(rng.next_u64() % 2));
    for (std::size_t i = 0; i < lb; ++i)
      b.push_back(static_cast<std::uint32_t>(rng.next_u64() % 2));
    ab = a;
    ab.insert(ab.end(), b.begin(), b.end());
    const double x = rng.next_unit();
    CHECK(ifs::word_apply(sys, ab, x) ==
          ifs::word_apply(sys, b, ifs::word_apply(sys, a, x)));
  }
}

TEST_CASE("admissibility of the fixture and its degenerations") {
  const auto r = ifs::check_admissible(IfsSystem::am2());
  CHECK(r.admissible);
  CHECK(r.crossing_ok);
  const double lyap = 0.5 * std::log(1.5);
  CHECK(std::abs(r.lyap0 - lyap) <= 1e-12);
  CHECK(std::abs(r.lyap1 - lyap) <= 1e-12);

  const IfsSystem ident({PiecewiseLinearMap::identity(),
                         PiecewiseLinearMap::identity()},
                        {0.5, 0.5});
  CHECK_FALSE(ifs::check_admissible(ident).admissible);

  const IfsSystem skew({f1(), f2()}, {0.9, 0.1});
  const auto rs = ifs::check_admissible(skew);
  CHECK(rs.lyap0 == doctest::Approx(0.9 * std::log(0.5) + 0.1 * std::log(3.0))
                        .epsilon(1e-12));
  CHECK(rs.lyap0 < 0.0);
  CHECK_FALSE(rs.admissible);
}

TEST_CASE("calibration closed forms on the fixture") {
  const IfsSystem sys = IfsSystem::am2();

  const auto c5 = ifs::calibrate(sys, 0.5);
  CHECK(std::abs(c5.epsilon_raw - 0.2) <= 1e-12);
  CHECK(c5.epsilon == doctest::Approx(0.999 * c5.epsilon_raw).epsilon(1e-15));
  const double s5 = 0.5 * (std::sqrt(2.0) + 1.0 / std::sqrt(3.0));
  CHECK(std::abs(c5.delta_raw - (1.0 - s5 * s5)) <= 1e-10);
  CHECK(c5.M == doctest::Approx(std::pow(c5.epsilon, -0.5)).epsilon(1e-15));

  const auto c1 = ifs::calibrate(sys, 0.1);
  const double s1 = 0.5 * (std::pow(2.0, 0.1) + std::pow(3.0, -0.1));
  CHECK(std::abs(c1.delta_raw - (1.0 - std::pow(s1, 10.0))) <= 1e-10);

  CHECK_THROWS_WITH_AS(ifs::calibrate(sys, 0.99),
                       doctest::Contains("lambda_lo"), ifs::ValidationError);
  CHECK_THROWS_AS(ifs::calibrate(sys, 0.0), ifs::ValidationError);
  CHECK_THROWS_AS(ifs::calibrate(sys, 1.0), ifs::ValidationError);
}

TEST_CASE("calibration inequalities survive a brute-force scan") {
  const IfsSystem sys = IfsSystem::am2();
  for (double alpha : {0.5, 0.1}) {
    const auto c = ifs::calibrate(sys, alpha);
    for (std::size_t i = 0; i < sys.size(); ++i) {
      const auto& f = sys.map(i);
      const double lo = c.lambda_lo[i], hi = c.lambda_hi[i];
      for (int g = 0; g <= 100000; ++g) {
        const double x = c.epsilon * g / 100000.0;
        REQUIRE(f.eval(x) >= lo * x - 1e-12);
        REQUIRE(1.0 - f.eval(1.0 - x) >= hi * x - 1e-12);
        REQUIRE(f.eval_inverse(x) <= x / lo + 1e-12);
        REQUIRE(f.eval_inverse(1.0 - x) >= 1.0 - x / hi - 1e-12);
      }
    }
    // delta actually satisfies the defining inequality with strict margin.
    double s0 = 0.0, s1 = 0.0;
    for (std::size_t i = 0; i < sys.size(); ++i) {
      s0 += sys.probs()[i] * std::pow(c.lambda_lo[i], -alpha);
      s1 += sys.probs()[i] * std::pow(c.lambda_hi[i], -alpha);
    }
    CHECK(std::max(s0, s1) < std::pow(1.0 - c.delta, alpha));
    CHECK(c.M * std::pow(c.epsilon, alpha) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("bound regime arithmetic") {
  ifs::CalibrationConstants c;
  c.alpha = 0.1;
  c.delta = 0.15;
  const auto r1 = ifs::regime(c, 1);
  CHECK(r1.k == 1);
  CHECK(r1.eps_n == doctest::Approx(std::pow(0.85, 0.5)).epsilon(1e-12));
  const auto r2 = ifs::regime(c, 6561);
  CHECK(r2.k == 9);
  CHECK(r2.eps_n == doctest::Approx(std::pow(0.85, 4.5)).epsilon(1e-12));
  c.delta = 0.0;
  CHECK(ifs::regime(c, 16).eps_n == 1.0);
  CHECK_THROWS_AS(ifs::regime(c, 0), ifs::ValidationError);

  CHECK(ifs::fourth_root_floor(1) == 1);
  CHECK(ifs::fourth_root_floor(15) == 1);
  CHECK(ifs::fourth_root_floor(16) == 2);
  CHECK(ifs::fourth_root_floor(6560) == 8);
  CHECK(ifs::fourth_root_floor(6561) == 9);
  CHECK(ifs::fourth_root_floor(0) == 0);
}

TEST_CASE("enumeration budget") {
  const IfsSystem sys = IfsSystem::am2();
  CHECK(ifs::enumeration_cost(sys, 20) == (1u << 20));
  CHECK_THROWS_AS(ifs::enumeration_cost(sys, 21), ifs::BudgetError);
  CHECK_THROWS_AS(
      ifs::dual_apply_exact(sys, [](double x) { return x; }, 30, 0.5),
      ifs::BudgetError);
}

TEST_CASE("exact dual operator") {
  const IfsSystem sys = IfsSystem::am2();
  const auto id = [](double x) { return x; };
  CHECK(ifs::dual_apply_exact(sys, id, 0, 0.37) == 0.37);
  for (unsigned n = 1; n <= 12; ++n)
    CHECK(std::abs(ifs::dual_apply_exact(sys, id, n, 0.5) - 0.5) <= 1e-12);
  CHECK(ifs::dual_apply_exact(sys, [](double) { return 0.75; }, 9, 0.3) ==
        doctest::Approx(0.75).epsilon(1e-15));
}

TEST_CASE("dual operator contraction and monotonicity") {
  const IfsSystem sys = IfsSystem::am2();
  const auto phi = [](double x) { return std::sin(3.0 * x) + 0.2 * x; };
  ifs::SplitMix64 rng(ifs::StreamSpec{11, 0});
  double lo = 1e300, hi = -1e300;
  for (int g = 0; g <= 1000; ++g) {
    const double v = phi(g / 1000.0);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  for (int it = 0; it < 50; ++it) {
    const double x = rng.next_unit();
    const unsigned n = 1 + static_cast<unsigned>(rng.next_u64() % 8);
    const double u = ifs::dual_apply_exact(sys, phi, n, x);
    CHECK(u >= lo - 1e-12);
    CHECK(u <= hi + 1e-12);
  }
  // increasing maps propagate monotone test functions
  const auto id = [](double x) { return x; };
  double prev = -1.0;
  for (int g = 0; g <= 50; ++g) {
    const double u = ifs::dual_apply_exact(sys, id, 6, g / 50.0);
    CHECK(u >= prev);
    prev = u;
  }
}

TEST_CASE("fixture reflection symmetry kills odd test functions at 1/2") {
  const IfsSystem sys = IfsSystem::am2();
  for (int g = 0; g <= 200; ++g) {
    const double x = g / 200.0;
    CHECK(sys.map(1).eval(x) == doctest::Approx(1.0 - sys.map(0).eval(1.0 - x))
                                    .epsilon(1e-15));
  }
  const auto odd = [](double x) {
    return std::pow(x - 0.5, 3.0) + std::sin(x - 0.5);
  };
  for (unsigned n = 1; n <= 8; ++n)
    CHECK(std::abs(ifs::dual_apply_exact(sys, odd, n, 0.5)) <= 1e-12);
}
