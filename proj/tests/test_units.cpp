#include <doctest.h>

#include <stdexcept>

#include "cyclone/units.hpp"

using namespace cyclone;

TEST_CASE("parse_quantity converts table units to SI") {
  CHECK(parse_quantity("0.9452 bar", "pressure") == doctest::Approx(94520.0));
  CHECK(parse_quantity("25 degC", "temperature") == doctest::Approx(298.15));
  CHECK(parse_quantity("173.1 m3/s", "volumetric_flow") == doctest::Approx(173.1));
  CHECK(parse_quantity("50 um", "length") == doctest::Approx(5e-5));
  CHECK(parse_quantity("2.71 g/cm3", "density") == doctest::Approx(2710.0));
  CHECK(parse_quantity("100.09 g/mol", "molar_mass") == doctest::Approx(0.10009));
  CHECK(parse_quantity("41.18 uPa*s", "viscosity") == doctest::Approx(41.18e-6));
  CHECK(parse_quantity("179.4 kJ/mol", "molar_energy") == doctest::Approx(179400.0));
  CHECK(parse_quantity("16.77 mW/(m*K)", "thermal_conductivity") ==
        doctest::Approx(0.01677));
  CHECK(parse_quantity("8 W/(m2*K)", "heat_transfer_coefficient") == doctest::Approx(8.0));
  CHECK(parse_quantity("1 mol/L", "molar_concentration") == doctest::Approx(1000.0));
  CHECK(parse_quantity("50 h", "time") == doctest::Approx(180000.0));
}

TEST_CASE("bare numbers are accepted only for dimensionless quantities") {
  CHECK(parse_quantity("6.5", "dimensionless") == doctest::Approx(6.5));
  CHECK(parse_quantity("6.5 -", "dimensionless") == doctest::Approx(6.5));
  CHECK_THROWS_AS(parse_quantity("0.9452", "pressure"), std::invalid_argument);
}

TEST_CASE("parse errors name the offending token") {
  CHECK_THROWS_WITH_AS(parse_quantity("1.0 furlong", "length"),
                       doctest::Contains("furlong"), std::invalid_argument);
  CHECK_THROWS_AS(parse_quantity("abc bar", "pressure"), std::invalid_argument);
  // Dimension mismatch: a pressure where a temperature is expected.
  CHECK_THROWS_AS(parse_quantity("1.0 bar", "temperature"), std::invalid_argument);
}

TEST_CASE("to_si and unit_dimension agree with the table") {
  CHECK(to_si(1.0, "bar") == doctest::Approx(1e5));
  CHECK(to_si(0.0, "degC") == doctest::Approx(273.15));
  CHECK(unit_dimension("bar") == "pressure");
  CHECK(unit_dimension("degC") == "temperature");
  CHECK_THROWS_AS(to_si(1.0, "psi"), std::invalid_argument);
}

TEST_CASE("format_quantity round-trips through parse_quantity") {
  const double v = 0.9451999999999999e5;
  const double back = parse_quantity(format_quantity(v, "Pa"), "pressure");
  CHECK(back == v);
  CHECK(format_quantity(6.5, "-") == "6.5");
}
