#pragma once

#include <array>
#include <string>
#include <vector>

#include "cyclone/species.hpp"

namespace cyclone {

inline constexpr int kNumReactions = 5;

struct Reaction {
  std::string name;
  std::array<int, kNumSpecies> nu{};      // signed stoichiometry, products positive
  std::array<double, kNumSpecies> order{};  // concentration exponents on reactants
  double k0 = 0.0;          // mass-rate prefactor, kg/(m^3 s) (mol/L)^-sum(order)
  double E_A = 0.0;         // J/mol
  int reference_species = -1;  // first-listed reactant; converts mass rate to molar extent
  double tuning = 1.0;
};

class ReactionSet {
 public:
  static ReactionSet load(const std::string& path, const SpeciesDb& db);
  static ReactionSet load_default(const SpeciesDb& db);

  const std::array<Reaction, kNumReactions>& reactions() const { return reactions_; }
  void set_tuning(int reaction, double factor);

  // Molar extent rates, mol/(m^3 s) per reaction. C is mol/m^3; the rate law
  // itself takes mol/L. Throws on negative concentrations.
  std::array<double, kNumReactions> reaction_rates(double T, const SpeciesVec& C) const;

  // Same, with negative concentrations treated as zero. Solver-internal path
  // for transient Newton iterates.
  std::array<double, kNumReactions> reaction_rates_clamped(double T, const SpeciesVec& C) const;

  // R = nu^T r, mol/(m^3 s) per species.
  SpeciesVec production_rates(const std::array<double, kNumReactions>& r) const;

 private:
  ReactionSet() = default;
  std::array<Reaction, kNumReactions> reactions_{};
  std::array<double, kNumReactions> molar_mass_ref_{};
};

}  // namespace cyclone
