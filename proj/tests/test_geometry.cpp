#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "cyclone/geometry.hpp"

using namespace cyclone;

namespace {

CycloneGeometry cy1_dims() {
  CycloneGeometry g;
  g.h_t = 18.3;
  g.h_c = 7.4;
  g.h_x = 3.5;
  g.r_c = 3.5;
  g.r_r = 3.6;
  g.r_x = 1.9;
  g.r_d = 0.3;
  g.r_in = 2.8;
  g.w_in = 1.4;
  g.A_in = 11.0;
  g.wall_thickness = 0.008;
  return g;
}

}  // namespace

TEST_CASE("chamber volume of the largest preset") {
  const DerivedGeometry d = derive(cy1_dims());
  // Hand evaluation: barrel + cone frustum - vortex-finder displacement.
  CHECK(d.V_tot == doctest::Approx(554.22302078549).epsilon(1e-12));
  CHECK(d.h_c1 == doctest::Approx(7.4 / 2.0));
  CHECK(d.r_2 == doctest::Approx(0.5 * (3.5 + 0.3)).epsilon(1e-14));
  CHECK(d.r_eq == doctest::Approx(std::sqrt(d.V_tot / (std::numbers::pi * 18.3))).epsilon(1e-14));
  CHECK(d.h_i == doctest::Approx(18.3 - 3.5));
  CHECK(d.D_H == doctest::Approx(4.0 * d.V_tot / d.A_c).epsilon(1e-14));
  CHECK(d.A_sep < d.A_c + 1e-9);
  CHECK(d.A_c == doctest::Approx(363.09453290684).epsilon(1e-12));
}

TEST_CASE("near-degenerate cylinder limit") {
  CycloneGeometry g = cy1_dims();
  g.h_c = 1e-7;
  g.h_x = 1e-7;
  g.r_x = g.r_c * (1.0 - 1e-9);
  const DerivedGeometry d = derive(g);
  CHECK(d.V_tot == doctest::Approx(std::numbers::pi * g.r_c * g.r_c * g.h_t).epsilon(1e-6));
}

TEST_CASE("derived values are scale-covariant") {
  const DerivedGeometry d1 = derive(cy1_dims());
  CycloneGeometry g = cy1_dims();
  const double s = 2.0;
  g.h_t *= s;
  g.h_c *= s;
  g.h_x *= s;
  g.r_c *= s;
  g.r_r *= s;
  g.r_x *= s;
  g.r_d *= s;
  g.r_in *= s;
  g.w_in *= s;
  g.A_in *= s * s;
  g.wall_thickness *= s;
  const DerivedGeometry d2 = derive(g);
  CHECK(d2.V_tot == doctest::Approx(s * s * s * d1.V_tot).epsilon(1e-12));
  CHECK(d2.A_c == doctest::Approx(s * s * d1.A_c).epsilon(1e-12));
  CHECK(d2.A_sep == doctest::Approx(s * s * d1.A_sep).epsilon(1e-12));
  CHECK(d2.r_eq == doctest::Approx(s * d1.r_eq).epsilon(1e-12));
}

TEST_CASE("volume is monotone in total height") {
  CycloneGeometry g = cy1_dims();
  double prev = derive(g).V_tot;
  for (double dh = 0.5; dh <= 2.0; dh += 0.5) {
    CycloneGeometry taller = cy1_dims();
    taller.h_t += dh;
    const double v = derive(taller).V_tot;
    CHECK(v > prev);
    prev = v;
  }
}

TEST_CASE("geometry validation rejects inconsistent dimensions") {
  CycloneGeometry g = cy1_dims();
  g.r_x = 3.6;  // vortex finder wider than the chamber
  CHECK_THROWS_AS(derive(g), std::invalid_argument);
  g = cy1_dims();
  g.h_c = 19.0;  // cone taller than the cyclone
  CHECK_THROWS_AS(derive(g), std::invalid_argument);
  g = cy1_dims();
  g.h_x = 12.0;  // outlet pipe reaching into the cone
  CHECK_THROWS_AS(derive(g), std::invalid_argument);
  g = cy1_dims();
  g.A_in = 0.0;
  CHECK_THROWS_AS(derive(g), std::invalid_argument);
  // The pipe may end exactly at the cone even when the subtraction rounds down.
  g = cy1_dims();
  g.h_t = 11.2;
  g.h_c = 7.8;
  g.h_x = 3.4;
  g.r_r = 3.6;
  CHECK_NOTHROW(g.validate());
}

TEST_CASE("inlet slot height follows from area and width") {
  const CycloneGeometry g = cy1_dims();
  CHECK(g.l_in() == doctest::Approx(11.0 / 1.4).epsilon(1e-14));
  CHECK(g.r_w() == doctest::Approx(3.608).epsilon(1e-14));
}

TEST_CASE("curved wall conduction depth") {
  CHECK(curved_wall_depth(3.5, 3.6) == doctest::Approx(0.098598069383438).epsilon(1e-12));
  CHECK(curved_wall_depth(1.0, std::exp(1.0)) == doctest::Approx(1.0).epsilon(1e-14));
  // Depth vanishes as the radii coincide.
  CHECK(curved_wall_depth(2.0, 2.0 + 1e-9) == doctest::Approx(1e-9).epsilon(1e-6));
  CHECK_THROWS_AS(curved_wall_depth(3.6, 3.5), std::domain_error);
  CHECK_THROWS_AS(curved_wall_depth(0.0, 1.0), std::domain_error);
}
