#pragma once

#include <string>

namespace cyclone {

// All internal computation is in SI: m, s, kg, mol, K, Pa, J, W.
namespace constants {
inline constexpr double R_gas = 8.31446261815324;     // J/(mol K)
inline constexpr double sigma_sb = 5.670374419e-8;    // W/(m^2 K^4)
inline constexpr double T_ref = 298.15;               // K, formation-enthalpy anchor
inline constexpr double P_ref = 1.0e5;                // Pa
inline constexpr double P_atm = 101325.0;             // Pa
}  // namespace constants

// Parses "value unit" strings from config/data files, e.g. "0.9452 bar",
// "25 degC", "173.1 m3/s", and converts to SI. A bare number is accepted
// only for dimensionless quantities.
double parse_quantity(const std::string& text, const std::string& expected_dimension);

// Converts a numeric value in `unit` to SI.
double to_si(double value, const std::string& unit);

// The dimension tag a unit belongs to ("pressure", "temperature", ...).
std::string unit_dimension(const std::string& unit);

std::string format_quantity(double si_value, const std::string& si_unit);

// Resolution order: $CYCLONE_DATA_DIR, then the build-time default.
std::string default_data_dir();

}  // namespace cyclone
