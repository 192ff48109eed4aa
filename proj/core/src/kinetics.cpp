#include "cyclone/kinetics.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "cyclone/units.hpp"

namespace cyclone {

using json = nlohmann::json;

namespace {

// Parses "2 CaO + SiO2 -> C2S" into signed stoichiometry. The first species
// on the left is the mass-rate reference.
void parse_equation(const std::string& eq, Reaction& rx) {
  const auto arrow = eq.find("->");
  if (arrow == std::string::npos)
    throw std::invalid_argument("reaction equation missing '->': " + eq);

  auto parse_side = [&](const std::string& side, int sign, bool record_first) {
    std::istringstream is(side);
    std::string token;
    int coeff = 1;
    bool have_coeff = false;
    bool first = true;
    while (is >> token) {
      if (token == "+") continue;
      char* end = nullptr;
      const long v = std::strtol(token.c_str(), &end, 10);
      if (end && *end == '\0') {
        coeff = static_cast<int>(v);
        have_coeff = true;
        continue;
      }
      const int sp = species_from_name(token);
      rx.nu[sp] += sign * (have_coeff ? coeff : 1);
      if (record_first && first) rx.reference_species = sp;
      first = false;
      coeff = 1;
      have_coeff = false;
    }
  };
  parse_side(eq.substr(0, arrow), -1, true);
  parse_side(eq.substr(arrow + 2), +1, false);
  if (rx.reference_species < 0)
    throw std::invalid_argument("reaction has no reactant: " + eq);
}

}  // namespace

ReactionSet ReactionSet::load(const std::string& path, const SpeciesDb& db) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open reaction data file: " + path);
  json j = json::parse(in);

  const auto& list = j.at("reactions");
  if (list.size() != kNumReactions)
    throw std::runtime_error("reaction data file must define exactly 5 reactions");

  ReactionSet set;
  for (int i = 0; i < kNumReactions; ++i) {
    const json& jr = list.at(i);
    Reaction& rx = set.reactions_[i];
    rx.name = jr.at("name").get<std::string>();
    parse_equation(jr.at("equation").get<std::string>(), rx);
    rx.k0 = jr.at("k0").get<double>();
    rx.E_A = parse_quantity(jr.at("E_A").get<std::string>(), "molar_energy");
    rx.tuning = jr.value("tuning", 1.0);
    if (!(rx.k0 > 0) || !(rx.E_A > 0) || !(rx.tuning > 0))
      throw std::invalid_argument(rx.name + ": k0, E_A, tuning must be positive");
    for (const auto& [name, order] : jr.at("orders").items()) {
      const int sp = species_from_name(name);
      if (rx.nu[sp] >= 0)
        throw std::invalid_argument(rx.name + ": order given for a non-reactant " + name);
      rx.order[sp] = order.get<double>();
    }
    set.molar_mass_ref_[i] = db.molar_mass(rx.reference_species);

    // Exact elemental balance, integer arithmetic on the atom matrix.
    for (int e = 0; e < kNumElements; ++e) {
      long balance = 0;
      for (int sp = 0; sp < kNumSpecies; ++sp)
        balance += static_cast<long>(rx.nu[sp]) * db.record(sp).atoms[e];
      if (balance != 0)
        throw std::runtime_error(rx.name + ": stoichiometry does not conserve elements");
    }
  }
  return set;
}

ReactionSet ReactionSet::load_default(const SpeciesDb& db) {
  return load(default_data_dir() + "/reactions.json", db);
}

void ReactionSet::set_tuning(int reaction, double factor) {
  if (reaction < 0 || reaction >= kNumReactions)
    throw std::out_of_range("reaction index out of range");
  if (!(factor > 0)) throw std::invalid_argument("tuning factor must be positive");
  reactions_[reaction].tuning = factor;
}

std::array<double, kNumReactions> ReactionSet::reaction_rates(double T,
                                                              const SpeciesVec& C) const {
  if (T <= 0) throw std::domain_error("reaction_rates: T must be positive");
  for (double c : C)
    if (c < 0) throw std::domain_error("reaction_rates: negative concentration");
  return reaction_rates_clamped(T, C);
}

std::array<double, kNumReactions> ReactionSet::reaction_rates_clamped(
    double T, const SpeciesVec& C) const {
  std::array<double, kNumReactions> r{};
  for (int i = 0; i < kNumReactions; ++i) {
    const Reaction& rx = reactions_[i];
    double product = 1.0;
    for (int sp = 0; sp < kNumSpecies; ++sp) {
      if (rx.order[sp] == 0.0) continue;
      const double c_molar = std::max(C[sp], 0.0) * 1e-3;  // mol/m^3 -> mol/L
      product *= std::pow(c_molar, rx.order[sp]);
    }
    const double mass_rate =
        rx.tuning * rx.k0 * std::exp(-rx.E_A / (constants::R_gas * T)) * product;
    r[i] = mass_rate / molar_mass_ref_[i];  // mol/(m^3 s) extent
  }
  return r;
}

SpeciesVec ReactionSet::production_rates(const std::array<double, kNumReactions>& r) const {
  SpeciesVec R = zero_vec();
  for (int i = 0; i < kNumReactions; ++i)
    for (int sp = 0; sp < kNumSpecies; ++sp)
      if (reactions_[i].nu[sp] != 0) R[sp] += reactions_[i].nu[sp] * r[i];
  return R;
}

}  // namespace cyclone
