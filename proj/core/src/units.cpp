#include "cyclone/units.hpp"

#include <cmath>
#include <cstdlib>
#include <map>
#include <sstream>
#include <stdexcept>

namespace cyclone {

namespace {

struct UnitDef {
  std::string dimension;
  double scale;
  double offset;  // value_si = value * scale + offset
};

const std::map<std::string, UnitDef>& unit_table() {
  static const std::map<std::string, UnitDef> table = {
      {"m", {"length", 1.0, 0.0}},
      {"cm", {"length", 1e-2, 0.0}},
      {"mm", {"length", 1e-3, 0.0}},
      {"um", {"length", 1e-6, 0.0}},
      {"m2", {"area", 1.0, 0.0}},
      {"m3", {"volume", 1.0, 0.0}},
      {"m3/s", {"volumetric_flow", 1.0, 0.0}},
      {"K", {"temperature", 1.0, 0.0}},
      {"degC", {"temperature", 1.0, 273.15}},
      {"Pa", {"pressure", 1.0, 0.0}},
      {"kPa", {"pressure", 1e3, 0.0}},
      {"bar", {"pressure", 1e5, 0.0}},
      {"atm", {"pressure", 101325.0, 0.0}},
      {"Pa*s", {"viscosity", 1.0, 0.0}},
      {"uPa*s", {"viscosity", 1e-6, 0.0}},
      {"kg/m3", {"density", 1.0, 0.0}},
      {"g/cm3", {"density", 1e3, 0.0}},
      {"kg/mol", {"molar_mass", 1.0, 0.0}},
      {"g/mol", {"molar_mass", 1e-3, 0.0}},
      {"mol/m3", {"molar_concentration", 1.0, 0.0}},
      {"mol/L", {"molar_concentration", 1e3, 0.0}},
      {"m/s", {"velocity", 1.0, 0.0}},
      {"s", {"time", 1.0, 0.0}},
      {"min", {"time", 60.0, 0.0}},
      {"h", {"time", 3600.0, 0.0}},
      {"W/(m*K)", {"thermal_conductivity", 1.0, 0.0}},
      {"W/(m2*K)", {"heat_transfer_coefficient", 1.0, 0.0}},
      {"mW/(m*K)", {"thermal_conductivity", 1e-3, 0.0}},
      {"J/(mol*K)", {"molar_heat_capacity", 1.0, 0.0}},
      {"J/(kg*K)", {"specific_heat", 1.0, 0.0}},
      {"J/mol", {"molar_energy", 1.0, 0.0}},
      {"kJ/mol", {"molar_energy", 1e3, 0.0}},
      {"kg/s", {"mass_flow", 1.0, 0.0}},
      {"kg/kg", {"dimensionless", 1.0, 0.0}},
      {"-", {"dimensionless", 1.0, 0.0}},
      {"1", {"dimensionless", 1.0, 0.0}},
  };
  return table;
}

}  // namespace

double to_si(double value, const std::string& unit) {
  auto it = unit_table().find(unit);
  if (it == unit_table().end())
    throw std::invalid_argument("unknown unit: '" + unit + "'");
  return value * it->second.scale + it->second.offset;
}

std::string unit_dimension(const std::string& unit) {
  auto it = unit_table().find(unit);
  if (it == unit_table().end())
    throw std::invalid_argument("unknown unit: '" + unit + "'");
  return it->second.dimension;
}

double parse_quantity(const std::string& text, const std::string& expected_dimension) {
  std::istringstream is(text);
  double value = 0.0;
  if (!(is >> value))
    throw std::invalid_argument("cannot parse quantity: '" + text + "'");
  std::string unit;
  is >> unit;
  if (unit.empty()) {
    if (expected_dimension == "dimensionless") return value;
    throw std::invalid_argument("missing unit in '" + text + "' (expected " +
                                expected_dimension + ")");
  }
  const std::string dim = unit_dimension(unit);
  if (dim != expected_dimension)
    throw std::invalid_argument("unit '" + unit + "' has dimension " + dim +
                                ", expected " + expected_dimension + " in '" + text + "'");
  return to_si(value, unit);
}

std::string format_quantity(double si_value, const std::string& si_unit) {
  std::ostringstream os;
  os.precision(17);
  os << si_value;
  if (!si_unit.empty() && si_unit != "-") os << ' ' << si_unit;
  return os.str();
}

std::string default_data_dir() {
  if (const char* env = std::getenv("CYCLONE_DATA_DIR")) return env;
#ifdef CYCLONE_DEFAULT_DATA_DIR
  return CYCLONE_DEFAULT_DATA_DIR;
#else
  return "data";
#endif
}

}  // namespace cyclone
