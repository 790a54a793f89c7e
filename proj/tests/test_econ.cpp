#include <gtest/gtest.h>

#include "compadv/econ.hpp"
#include "support.hpp"

namespace compadv {
namespace {

TEST(EnergyCost, WorkloadOverEfficiency) {
  EXPECT_DOUBLE_EQ(energy_cost(2.0, 10.0), 5.0);
  EXPECT_DOUBLE_EQ(energy_cost(1.0, 10.0), 10.0);
  EXPECT_LT(energy_cost(4.0, 10.0), energy_cost(2.0, 10.0));
  EXPECT_DOUBLE_EQ(energy_cost(4.0, 10.0), 2.5);
}

TEST(EnergyCost, RejectsNonpositiveArguments) {
  EXPECT_THROW(energy_cost(0.0, 10.0), DomainError);
  EXPECT_THROW(energy_cost(-1.0, 10.0), DomainError);
  EXPECT_THROW(energy_cost(1.0, 0.0), DomainError);
  EXPECT_THROW(energy_cost(1.0, -3.0), DomainError);
  EXPECT_THROW(energy_cost(std::numeric_limits<double>::infinity(), 1.0), DomainError);
}

TEST(EnergyCost, ScalingLawAndMonotonicity) {
  Rng rng(7);
  for (int k = 0; k < 1000; ++k) {
    const double e = rng.uniform(0.01, 10.0);
    const double w = rng.uniform(0.01, 100.0);
    const double s = rng.uniform(0.1, 10.0);
    EXPECT_NEAR(energy_cost(s * e, w), energy_cost(e, w) / s, 1e-12 * energy_cost(e, w) / s);
    const double bump = rng.uniform(0.001, 1.0);
    EXPECT_LT(energy_cost(e + bump, w), energy_cost(e, w));
    EXPECT_GT(energy_cost(e, w + bump), energy_cost(e, w));
  }
}

TEST(BreakEvenPrice, ConversionTimesCost) {
  EXPECT_DOUBLE_EQ(break_even_price(5.0, 1.0), 5.0);
  EXPECT_EQ(break_even_price(0.0, 1.0), 0.0);
  EXPECT_DOUBLE_EQ(break_even_price(7.5, 2.0), 15.0);
  EXPECT_THROW(break_even_price(-1.0, 1.0), DomainError);
  EXPECT_THROW(break_even_price(1.0, 0.0), DomainError);
}

TEST(BreakEvenPrice, Linear) {
  Rng rng(11);
  for (int k = 0; k < 1000; ++k) {
    const double a = rng.uniform(0.0, 50.0), b = rng.uniform(0.0, 50.0), c = rng.uniform(0.1, 5.0);
    EXPECT_NEAR(break_even_price(a + b, c), break_even_price(a, c) + break_even_price(b, c), 1e-12 * (a + b) * c);
  }
}

TEST(AutarkyEnergy, GoldenEconomy) {
  // (5 + 10) + (10 + 5) + (10 + 10)
  EXPECT_DOUBLE_EQ(autarky_energy(testing::golden_economy()), 50.0);
}

TEST(AutarkyEnergy, SingleTermAndEmptyDemand) {
  EconomyConfig one;
  one.jobs = {{"x", 10.0}};
  one.players = {{"solo", {1.0}, Money{}}};
  one.demand = constant_demand(1, 1, 1);
  EXPECT_DOUBLE_EQ(autarky_energy(one), 10.0);

  auto cfg = testing::golden_economy();
  cfg.demand = constant_demand(3, 2, 0);
  EXPECT_EQ(autarky_energy(cfg), 0.0);
}

TEST(AutarkyEnergy, MatchesBruteForceDoubleSum) {
  Rng rng(3);
  for (int k = 0; k < 200; ++k) {
    const auto cfg = testing::random_economy(rng, 1 + rng.next() % 30, 1 + rng.next() % 10);
    const double a = autarky_energy(cfg);
    EXPECT_NEAR(a, testing::oracle_autarky(cfg), 1e-12 * std::max(1.0, a));
  }
}

TEST(AutarkyEnergy, FreeEnergyModelCostsNothing) {
  auto cfg = testing::golden_economy();
  cfg.energy_model = EnergyModel::free;
  EXPECT_EQ(autarky_energy(cfg), 0.0);
  EXPECT_EQ(cfg.cost(0, 0), 0.0);
}

TEST(Validate, RejectsBrokenEconomies) {
  auto cfg = testing::golden_economy();
  EXPECT_NO_THROW(validate(cfg));

  auto bad = cfg;
  bad.players[1].efficiencies[0] = 0.0;
  EXPECT_THROW(validate(bad), DomainError);

  bad = cfg;
  bad.jobs[1].id = "x";
  EXPECT_THROW(validate(bad), StructuralError);

  bad = cfg;
  bad.conversion = 0.0;
  EXPECT_THROW(validate(bad), DomainError);

  bad = cfg;
  bad.price_quantum = -0.01;
  EXPECT_THROW(validate(bad), DomainError);

  bad = cfg;
  bad.demand.pop_back();
  EXPECT_THROW(validate(bad), StructuralError);

  bad = cfg;
  bad.demand[0][0] = -1;
  EXPECT_THROW(validate(bad), DomainError);
}

TEST(Money, ArithmeticIsExactInTicks) {
  const Money a = to_money(9.0, 0.01);
  EXPECT_EQ(a.ticks, 900);
  EXPECT_EQ((a * 3).ticks, 2700);
  EXPECT_EQ((a - a), Money{});
  EXPECT_DOUBLE_EQ(a.value(0.01), 9.0);
}

}  // namespace
}  // namespace compadv
