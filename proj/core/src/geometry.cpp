#include "cyclone/geometry.hpp"

#include <cmath>
#include <numbers>

namespace cyclone {

namespace {
constexpr double pi = std::numbers::pi;
}

void CycloneGeometry::validate() const {
  auto fail = [](const char* what) {
    throw std::invalid_argument(std::string("cyclone geometry: ") + what);
  };
  if (!(r_d > 0 && r_d < r_x && r_x < r_c && r_c < r_r && r_r < r_w()))
    fail("radius ordering 0 < r_d < r_x < r_c < r_r < r_w violated");
  if (!(h_c > 0 && h_c < h_t)) fail("cone height must satisfy 0 < h_c < h_t");
  if (!(h_x > 0 && h_x <= h_t - h_c + 1e-9 * h_t))
    fail("outlet pipe must end at or above the cone");
  if (!(A_in > 0)) fail("inlet area must be positive");
  if (!(w_in > 0 && r_in > 0)) fail("inlet dimensions must be positive");
  if (!(wall_thickness > 0)) fail("wall thickness must be positive");
}

DerivedGeometry derive(const CycloneGeometry& g) {
  g.validate();
  DerivedGeometry d;
  d.h_c1 = g.h_c / 2.0;
  d.r_2 = g.r_c - (d.h_c1 / g.h_c) * (g.r_c - g.r_d);

  const double barrel = g.r_c * g.r_c * (g.h_t - g.h_c);
  const double frustum = (g.h_c / 3.0) * (g.r_c * g.r_c + g.r_x * g.r_x + g.r_c * g.r_x);
  d.V_tot = pi * (barrel + frustum - g.r_x * g.r_x * g.h_x);

  d.A_c = 2.0 * pi * g.r_c * (g.h_t - g.h_c) + pi * (g.r_c * g.r_c - g.r_x * g.r_x) +
          pi * (g.r_c + g.r_d) * std::hypot(g.r_c - g.r_d, g.h_c);
  d.A_sep = 2.0 * pi * g.r_c * (g.h_t - g.h_c) +
            pi * (g.r_c + d.r_2) * std::hypot(g.r_c - d.r_2, d.h_c1);

  d.r_eq = std::sqrt(d.V_tot / (pi * g.h_t));
  d.h_i = g.h_t - g.h_x;
  d.A_x = pi * g.r_x * g.r_x;
  d.D_x = 2.0 * g.r_x;
  d.D_H = 4.0 * d.V_tot / d.A_c;
  d.d_c = 2.0 * g.r_c;

  // Shells as full-height cylinders; the cone section is folded into an
  // effective cylinder of height h_t with the same radial thickness.
  const double r_w = g.r_w();
  d.V_r = pi * (g.r_r * g.r_r - g.r_c * g.r_c) * g.h_t;
  d.V_w = pi * (r_w * r_w - g.r_r * g.r_r) * g.h_t;
  d.A_r = 2.0 * pi * 0.5 * (g.r_c + g.r_r) * g.h_t;
  d.A_w = 2.0 * pi * r_w * g.h_t;

  if (!(d.V_tot > 0) || !(d.A_c > 0) || !(d.A_sep > 0))
    throw std::invalid_argument("cyclone geometry: derived quantities not positive");
  return d;
}

double curved_wall_depth(double r_i, double r_j) {
  if (!(r_i > 0) || !(r_j > r_i))
    throw std::domain_error("curved_wall_depth: requires 0 < r_i < r_j");
  return std::log(r_j / r_i) * r_i;
}

}  // namespace cyclone
