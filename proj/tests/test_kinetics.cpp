#include <doctest.h>

#include <array>
#include <random>
#include <stdexcept>

#include "cyclone/kinetics.hpp"

using namespace cyclone;

namespace {

const SpeciesDb& db() {
  static SpeciesDb instance = SpeciesDb::load_default();
  return instance;
}

const ReactionSet& reactions() {
  static ReactionSet set = ReactionSet::load_default(db());
  return set;
}

}  // namespace

TEST_CASE("stoichiometry conserves every element") {
  for (const Reaction& rx : reactions().reactions()) {
    for (int e = 0; e < kNumElements; ++e) {
      long balance = 0;
      for (int sp = 0; sp < kNumSpecies; ++sp)
        balance += static_cast<long>(rx.nu[sp]) * db().record(sp).atoms[e];
      CHECK(balance == 0);
    }
  }
}

TEST_CASE("zero reactant concentration stops the reaction") {
  SpeciesVec c = zero_vec();
  c[kCaO] = 1000.0;  // calcination still needs CaCO3
  const auto r = reactions().reaction_rates(1100.0, c);
  CHECK(r[0] == 0.0);
  CHECK(r[1] == 0.0);  // belite needs SiO2 as well
}

TEST_CASE("calcination rate at 1100 K matches the Arrhenius hand value") {
  SpeciesVec c = zero_vec();
  c[kCaCO3] = 1000.0;  // 1 mol/L
  const auto r = reactions().reaction_rates(1100.0, c);
  // Mass rate 1e8 exp(-175700/(R 1100)) = 0.4538 kg/(m3 s), referenced to
  // CaCO3; the molar extent is that divided by M_CaCO3.
  const double mass_rate = r[0] * db().molar_mass(kCaCO3);
  CHECK(mass_rate == doctest::Approx(0.45380190375).epsilon(1e-9));
}

TEST_CASE("tuning factors scale rates linearly") {
  ReactionSet set = ReactionSet::load_default(db());
  SpeciesVec c = zero_vec();
  c[kCaCO3] = 500.0;
  const double base = set.reaction_rates(1000.0, c)[0];
  set.set_tuning(0, 0.001);
  CHECK(set.reaction_rates(1000.0, c)[0] == doctest::Approx(0.001 * base).epsilon(1e-14));
}

TEST_CASE("production rates apply the transpose stoichiometry") {
  std::array<double, kNumReactions> r{};
  CHECK(reactions().production_rates(r) == zero_vec());
  r[0] = 1.0;
  const SpeciesVec R = reactions().production_rates(r);
  CHECK(R[kCaCO3] == doctest::Approx(-1.0));
  CHECK(R[kCaO] == doctest::Approx(1.0));
  CHECK(R[kCO2] == doctest::Approx(1.0));
  for (int sp = 0; sp < kNumSpecies; ++sp)
    if (sp != kCaCO3 && sp != kCaO && sp != kCO2) CHECK(R[sp] == 0.0);
}

TEST_CASE("random extents conserve elements and total mass") {
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> uni(0.0, 10.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::array<double, kNumReactions> r{};
    for (double& v : r) v = uni(rng);
    const SpeciesVec R = reactions().production_rates(r);
    double scale = 0.0;
    for (int sp = 0; sp < kNumSpecies; ++sp) scale += std::abs(R[sp]);
    for (int e = 0; e < kNumElements; ++e) {
      double balance = 0.0;
      for (int sp = 0; sp < kNumSpecies; ++sp)
        balance += R[sp] * db().record(sp).atoms[e];
      CHECK(std::abs(balance) <= 1e-10 * scale);
    }
    double mass = 0.0;
    for (int sp = 0; sp < kNumSpecies; ++sp) mass += R[sp] * db().molar_mass(sp);
    CHECK(std::abs(mass) <= 1e-10 * scale);
  }
}

TEST_CASE("rates are non-negative and increase with temperature") {
  SpeciesVec c = zero_vec();
  c[kCaCO3] = 800.0;
  c[kCaO] = 300.0;
  c[kSiO2] = 200.0;
  c[kAl2O3] = 50.0;
  c[kFe2O3] = 30.0;
  c[kC2S] = 10.0;
  auto prev = reactions().reaction_rates(800.0, c);
  for (double& v : prev) CHECK(v >= 0.0);
  for (double T = 900.0; T <= 1500.0; T += 100.0) {
    const auto r = reactions().reaction_rates(T, c);
    for (int j = 0; j < kNumReactions; ++j) CHECK(r[j] > prev[j]);
    prev = r;
  }
}

TEST_CASE("negative concentrations: strict path throws, clamped path zeroes") {
  SpeciesVec c = zero_vec();
  c[kCaCO3] = -1.0;
  CHECK_THROWS_AS(reactions().reaction_rates(1000.0, c), std::domain_error);
  const auto r = reactions().reaction_rates_clamped(1000.0, c);
  CHECK(r[0] == 0.0);
}
