#pragma once

#include <stdexcept>

namespace cyclone {

// Raw cyclone dimensions (all in m). r_w = r_r + wall_thickness.
struct CycloneGeometry {
  double h_t = 0.0;   // total height
  double h_c = 0.0;   // cone height
  double h_x = 0.0;   // vortex-finder insertion depth
  double r_c = 0.0;   // chamber radius
  double r_r = 0.0;   // refractory outer radius
  double r_x = 0.0;   // vortex-finder radius
  double r_d = 0.0;   // dust-outlet radius
  double r_in = 0.0;  // inlet center radius
  double w_in = 0.0;  // inlet slot width
  double A_in = 0.0;  // inlet area, m^2
  double wall_thickness = 0.008;

  double r_w() const { return r_r + wall_thickness; }
  double l_in() const { return A_in / w_in; }  // slot height from area and width

  void validate() const;
};

struct DerivedGeometry {
  double V_tot = 0.0;  // chamber volume
  double A_c = 0.0;    // chamber surface area
  double A_sep = 0.0;  // separation collection area
  double r_2 = 0.0;
  double h_c1 = 0.0;
  double r_eq = 0.0;   // equivalent-cylinder radius
  double h_i = 0.0;    // height below the outlet pipe
  double A_x = 0.0;    // outlet pipe cross section
  double D_x = 0.0;    // outlet pipe diameter
  double D_H = 0.0;    // hydraulic diameter
  double V_r = 0.0;    // refractory shell volume
  double V_w = 0.0;    // wall shell volume
  double A_r = 0.0;    // refractory lateral area (mid radius)
  double A_w = 0.0;    // wall lateral area (outer radius)
  double d_c = 0.0;    // chamber diameter
};

DerivedGeometry derive(const CycloneGeometry& geo);

// ln(r_j/r_i) * r_i, the conduction depth of a curved wall.
double curved_wall_depth(double r_i, double r_j);

}  // namespace cyclone
