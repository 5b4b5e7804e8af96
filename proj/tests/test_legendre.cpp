#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "pmg/legendre.hpp"

using namespace pmg;
using Catch::Approx;

TEST_CASE("legendre evaluation basics") {
  CHECK(legendre::eval(0, 0.37) == 1.0);
  CHECK(legendre::eval(0, -1.0) == 1.0);
  CHECK(legendre::eval(2, 1.0) == Approx(1.0).margin(1e-15));
  CHECK(legendre::eval(2, 0.0) == Approx(-0.5).margin(1e-15));
  CHECK(legendre::eval(1, 0.3) == Approx(0.3));
  CHECK_THROWS_AS(legendre::eval(2, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(legendre::eval(-1, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(legendre::eval(65, 0.0), std::invalid_argument);
}

TEST_CASE("legendre normalization l(1) = 1 for all degrees") {
  for (int s = 0; s <= 30; ++s)
    CHECK(legendre::eval(s, 1.0) == Approx(1.0).margin(1e-13));
}

TEST_CASE("legendre derivative endpoint values") {
  // l'_s(1) = s(s+1)/2, l'_s(-1) = (-1)^{s+1} s(s+1)/2
  CHECK(legendre::deriv(3, 1.0) == Approx(6.0));
  CHECK(legendre::deriv(4, -1.0) == Approx(-10.0));
  CHECK(legendre::deriv(1, 0.3) == Approx(1.0));
  CHECK(legendre::deriv(0, 0.5) == 0.0);
}

TEST_CASE("legendre parity") {
  for (int s = 0; s <= 12; ++s) {
    for (int i = 0; i <= 100; ++i) {
      const double xi = -1.0 + 0.02 * i;
      const double sign = (s % 2 == 0) ? 1.0 : -1.0;
      CHECK(legendre::eval(s, -xi) ==
            Approx(sign * legendre::eval(s, xi)).margin(1e-13));
      if (s >= 1)
        CHECK(legendre::deriv(s, -xi) ==
              Approx(-sign * legendre::deriv(s, xi)).margin(1e-12));
    }
  }
}

TEST_CASE("christoffel expansion matches the derivative") {
  // l'_s = (2s-1) l_{s-1} + (2s-5) l_{s-3} + ... down to 3 l_1 or l_0
  for (int s = 1; s <= 12; ++s) {
    for (double xi : {-0.95, -0.4, 0.0, 0.33, 0.8, 1.0}) {
      double sum = 0.0;
      for (int t = s - 1; t >= 0; t -= 2) sum += (2 * t + 1) * legendre::eval(t, xi);
      CHECK(legendre::deriv(s, xi) == Approx(sum).margin(1e-12));
    }
  }
}

TEST_CASE("deriv_all agrees with deriv") {
  std::vector<double> d;
  for (double xi : {-0.7, 0.1, 0.99}) {
    legendre::deriv_all(12, xi, d);
    for (int s = 0; s <= 12; ++s)
      CHECK(d[s] == Approx(legendre::deriv(s, xi)).margin(1e-11));
  }
}

TEST_CASE("reference mass and stiffness entries") {
  CHECK(legendre::reference_mass_entry(2, 2) == Approx(0.4));
  CHECK(legendre::reference_mass_entry(1, 3) == 0.0);
  CHECK(legendre::reference_mass_entry(0, 0) == 2.0);
  CHECK(legendre::reference_stiff_entry(1, 3) == 2.0);
  CHECK(legendre::reference_stiff_entry(2, 3) == 0.0);
  CHECK(legendre::reference_stiff_entry(0, 2) == 0.0);
}

TEST_CASE("gauss rules") {
  SECTION("one point") {
    const auto r = legendre::gauss_rule(1);
    REQUIRE(r.nodes.size() == 1);
    CHECK(r.nodes[0] == Approx(0.0).margin(1e-15));
    CHECK(r.weights[0] == Approx(2.0));
  }
  SECTION("two points") {
    const auto r = legendre::gauss_rule(2);
    CHECK(r.nodes[0] == Approx(-1.0 / std::sqrt(3.0)).margin(1e-14));
    CHECK(r.nodes[1] == Approx(1.0 / std::sqrt(3.0)).margin(1e-14));
    CHECK(r.weights[0] == Approx(1.0));
    CHECK(r.weights[1] == Approx(1.0));
  }
  SECTION("five points integrate xi^8 to 2/9") {
    const auto r = legendre::gauss_rule(5);
    double s = 0.0;
    for (std::size_t i = 0; i < r.nodes.size(); ++i)
      s += r.weights[i] * std::pow(r.nodes[i], 8);
    CHECK(s == Approx(2.0 / 9.0).margin(1e-13));
  }
  SECTION("weights sum to 2 and are positive") {
    for (int q : {1, 2, 3, 7, 16, 33, 64}) {
      const auto r = legendre::gauss_rule(q);
      double s = 0.0;
      for (double w : r.weights) {
        CHECK(w > 0.0);
        s += w;
      }
      CHECK(s == Approx(2.0).margin(1e-14));
    }
  }
  SECTION("rule with q nodes is exact through degree 2q-1") {
    for (int q : {1, 2, 3, 5, 8}) {
      const auto r = legendre::gauss_rule(q);
      for (int deg = 0; deg <= 2 * q - 1; ++deg) {
        double s = 0.0;
        for (std::size_t i = 0; i < r.nodes.size(); ++i)
          s += r.weights[i] * std::pow(r.nodes[i], deg);
        const double exact = (deg % 2 == 0) ? 2.0 / (deg + 1) : 0.0;
        CHECK(s == Approx(exact).margin(1e-13));
      }
    }
  }
  SECTION("out of range") {
    CHECK_THROWS_AS(legendre::gauss_rule(0), std::invalid_argument);
    CHECK_THROWS_AS(legendre::gauss_rule(65), std::invalid_argument);
  }
}

TEST_CASE("quadrature reproduces closed-form mass and stiffness entries") {
  for (int s = 0; s <= 12; ++s) {
    for (int t = 0; t <= 12; ++t) {
      const auto r = legendre::gauss_rule(s + t + 2);
      double mass = 0.0, stiff = 0.0;
      for (std::size_t q = 0; q < r.nodes.size(); ++q) {
        mass += r.weights[q] * legendre::eval(s, r.nodes[q]) *
                legendre::eval(t, r.nodes[q]);
        stiff += r.weights[q] * legendre::deriv(s, r.nodes[q]) *
                 legendre::deriv(t, r.nodes[q]);
      }
      CHECK(mass == Approx(legendre::reference_mass_entry(s, t)).margin(1e-12));
      CHECK(stiff == Approx(legendre::reference_stiff_entry(s, t)).margin(1e-12));
    }
  }
}
