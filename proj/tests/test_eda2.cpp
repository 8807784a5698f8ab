#include "ceda/benchmarks/basic_functions.hpp"
#include "ceda/eda2.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

using namespace ceda;

namespace {

std::vector<Individual> with_fitness(const std::vector<double>& f) {
  std::vector<Individual> out;
  for (std::size_t i = 0; i < f.size(); ++i) {
    Individual ind;
    ind.genome = Vector::Constant(1, static_cast<double>(i));
    ind.fitness = f[i];
    ind.eval_index = i + 1;
    out.push_back(ind);
  }
  return out;
}

double sphere_objective(const Vector& x) { return bench::sphere(x); }

}  // namespace

TEST(Eda2Params, Validation) {
  EXPECT_NO_THROW((Eda2Params{80, 0.35, 10}.validate()));
  EXPECT_THROW((Eda2Params{1, 0.35, 10}.validate()), std::invalid_argument);
  EXPECT_THROW((Eda2Params{2, 0.35, 10}.validate()), std::invalid_argument);
  EXPECT_THROW((Eda2Params{10, 1.0, 10}.validate()), std::invalid_argument);
  EXPECT_THROW((Eda2Params{10, 0.0, 10}.validate()), std::invalid_argument);
}

TEST(TruncationSelect, KeepsTopThreeOfTen) {
  const auto pop = with_fitness({1, 2, 3, 4, 5, 6, 7, 8, 9, 10});
  const auto s = truncation_select(pop, 0.35, Sense::maximize);
  ASSERT_EQ(s.members.size(), 3u);
  EXPECT_EQ(s.members[0].fitness, 10);
  EXPECT_EQ(s.members[1].fitness, 9);
  EXPECT_EQ(s.members[2].fitness, 8);
}

TEST(TruncationSelect, EightyByPointThreeFiveIsTwentyEight) {
  Rng rng(1);
  std::uniform_real_distribution<double> u;
  std::vector<double> f(80);
  for (auto& v : f) v = u(rng);
  EXPECT_EQ(truncation_select(with_fitness(f), 0.35, Sense::minimize).members.size(), 28u);
  EXPECT_EQ(selection_count(0.35, 80), 28u);
}

TEST(TruncationSelect, MatchesFullSortOracle) {
  Rng rng(2);
  std::uniform_real_distribution<double> u(-5, 5);
  std::vector<double> f(50);
  for (auto& v : f) v = u(rng);
  const auto pop = with_fitness(f);
  for (Sense sense : {Sense::minimize, Sense::maximize}) {
    auto sorted = f;
    std::sort(sorted.begin(), sorted.end());
    if (sense == Sense::maximize) std::reverse(sorted.begin(), sorted.end());
    const auto s = truncation_select(pop, 0.35, sense);
    ASSERT_EQ(s.members.size(), 17u);
    for (std::size_t i = 0; i < s.members.size(); ++i) EXPECT_EQ(s.members[i].fitness, sorted[i]);
  }
}

TEST(TruncationSelect, TiesGoToOlderEvaluations) {
  auto pop = with_fitness({5, 5, 5, 5});
  pop[0].eval_index = 40;
  pop[1].eval_index = 10;
  pop[2].eval_index = 30;
  pop[3].eval_index = 20;
  const auto s = truncation_select(pop, 0.5, Sense::minimize);
  ASSERT_EQ(s.members.size(), 2u);
  EXPECT_EQ(s.members[0].eval_index, 10u);
  EXPECT_EQ(s.members[1].eval_index, 20u);
}

TEST(TruncationSelect, Errors) {
  EXPECT_THROW(truncation_select(with_fitness({1, 2}), 0.35, Sense::minimize), std::invalid_argument);
  EXPECT_THROW(truncation_select({}, 0.5, Sense::minimize), std::invalid_argument);
  auto pop = with_fitness({1, 2, 3});
  pop[1].fitness = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(truncation_select(pop, 0.5, Sense::minimize), std::invalid_argument);
}

TEST(BoundRepair, InsidePointUnchanged) {
  Rng rng(3);
  const Box box = Box::uniform(3, -1, 1);
  Vector x(3);
  x << 0.5, -1.0, 1.0;
  EXPECT_EQ(bound_repair(x, box, rng), x);
}

TEST(BoundRepair, OnlyOffendingCoordinateResampled) {
  Rng rng(4);
  const Box box = Box::uniform(2, -2, 4);
  Vector x(2);
  x << -3.0, 1.0;
  const Vector y = bound_repair(x, box, rng);
  EXPECT_GE(y[0], -2.0);
  EXPECT_LE(y[0], 4.0);
  EXPECT_EQ(y[1], 1.0);
}

TEST(BoundRepair, RepairedCoordinateIsUniform) {
  Rng rng(5);
  const Box box = Box::uniform(1, 2, 7);
  std::vector<double> u;
  for (int i = 0; i < 10000; ++i) u.push_back((bound_repair(Vector::Constant(1, 100.0), box, rng)[0] - 2.0) / 5.0);
  std::sort(u.begin(), u.end());
  double d = 0.0;
  const double n = static_cast<double>(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    d = std::max({d, (static_cast<double>(i) + 1) / n - u[i], u[i] - static_cast<double>(i) / n});
  }
  EXPECT_LT(d, 1.63 / std::sqrt(n));
}

TEST(StagnationCheck, FlatMediansStagnate) {
  const std::vector<double> m{5, 5, 5, 5, 5, 5};
  EXPECT_TRUE(stagnation_check(m, 5, 1e-4, Sense::minimize));
}

TEST(StagnationCheck, ImprovingByOneDoesNot) {
  const std::vector<double> m{10, 9, 8, 7, 6, 5};
  EXPECT_FALSE(stagnation_check(m, 5, 1e-4, Sense::minimize));
  const std::vector<double> up{5, 6, 7, 8, 9, 10};
  EXPECT_FALSE(stagnation_check(up, 5, 1e-4, Sense::maximize));
}

TEST(StagnationCheck, ImprovementEqualToAccuracyDoesNot) {
  const std::vector<double> m{1.0, 1.0, 1.0, 1.0, 1.0, 0.75};
  EXPECT_FALSE(stagnation_check(m, 5, 0.25, Sense::minimize));
}

TEST(StagnationCheck, ShortHistoryNeverStagnates) {
  const std::vector<double> m{5, 5, 5, 5, 5};
  EXPECT_FALSE(stagnation_check(m, 5, 1.0, Sense::minimize));
}

TEST(StagnationCheck, OnlyTheLastWindowCounts) {
  const std::vector<double> m{100, 50, 5, 5, 5, 5, 5, 5};
  EXPECT_TRUE(stagnation_check(m, 5, 1e-4, Sense::minimize));
}

TEST(StagnationCheck, OscillatingMedianIsNotStagnant) {
  const std::vector<double> m{5, 8, 3, 9, 4, 5};
  EXPECT_FALSE(stagnation_check(m, 5, 1e-4, Sense::maximize));
}

TEST(RunEda2, SphereConverges) {
  Rng rng(6);
  const Box box = Box::uniform(5, -10, 10);
  EvalBudget budget(50000);
  TerminationPolicy term;
  term.max_fes = 50000;
  const auto r = run_eda2(sphere_objective, box, Eda2Params{24, 0.35, 5}, term, std::nullopt, budget, rng);
  EXPECT_LT(r.best.fitness, 1e-10);
  EXPECT_EQ(r.fes_used, 50000u);
  EXPECT_EQ(r.stop, StopReason::budget);
}

TEST(RunEda2, IdenticalInitDoesNotCrash) {
  Rng rng(7);
  const Box box = Box::uniform(3, -5, 5);
  std::vector<Individual> init(12);
  for (auto& ind : init) ind.genome = Vector::Constant(3, 1.5);
  EvalBudget budget(2000);
  TerminationPolicy term;
  term.max_fes = 2000;
  std::vector<double> jitters;
  const auto r = run_eda2(sphere_objective, box, Eda2Params{12, 0.35, 3}, term, init, budget, rng,
                          [&](const GenerationView& v) { jitters.push_back(v.covariance.trace()); });
  ASSERT_FALSE(jitters.empty());
  EXPECT_EQ(jitters.front(), 0.0);
  EXPECT_GT(r.generations, 1u);
  EXPECT_TRUE(r.best.evaluated());
}

TEST(RunEda2, ExhaustedBudgetReturnsImmediately) {
  Rng rng(8);
  EvalBudget budget(1);
  budget.consume();
  const auto r = run_eda2(sphere_objective, Box::uniform(2, -1, 1), Eda2Params{10, 0.5, 2}, TerminationPolicy{},
                          std::nullopt, budget, rng);
  EXPECT_TRUE(r.history.empty());
  EXPECT_EQ(r.fes_used, 0u);
}

TEST(RunEda2, ElitismPopulationAndFeAccounting) {
  Rng rng(9);
  const Box box = Box::uniform(4, -5, 5);
  std::size_t calls = 0;
  auto counted = [&](const Vector& x) {
    ++calls;
    return bench::rastrigin(x);
  };
  const std::size_t p = 20;
  EvalBudget budget(3000);
  TerminationPolicy term;
  term.max_fes = 3000;
  std::vector<std::size_t> sizes;
  std::vector<double> bests_in_population;
  const auto r = run_eda2(counted, box, Eda2Params{p, 0.35, 4}, term, std::nullopt, budget, rng,
                          [&](const GenerationView& v) {
                            sizes.push_back(v.population.size());
                            double b = std::numeric_limits<double>::infinity();
                            for (const auto& ind : v.population) b = std::min(b, ind.fitness);
                            bests_in_population.push_back(b);
                          });
  EXPECT_EQ(calls, r.fes_used);
  EXPECT_EQ(budget.used(), r.fes_used);
  for (std::size_t t = 1; t < r.history.size(); ++t) EXPECT_LE(r.history[t].best, r.history[t - 1].best);
  for (std::size_t t = 0; t < sizes.size(); ++t) {
    EXPECT_EQ(sizes[t], p);
    EXPECT_EQ(bests_in_population[t], r.history[t].best);
  }
  double best_seen = std::numeric_limits<double>::infinity();
  for (const auto& g : r.history) best_seen = std::min(best_seen, g.best);
  EXPECT_EQ(r.best.fitness, best_seen);
}

TEST(RunEda2, ArchiveHoldsTheLastLGenerations) {
  Rng rng(10);
  const std::size_t l = 3;
  EvalBudget budget(1000);
  TerminationPolicy term;
  term.max_fes = 1000;
  run_eda2(sphere_objective, Box::uniform(2, -3, 3), Eda2Params{10, 0.4, l}, term, std::nullopt, budget, rng,
           [&](const GenerationView& v) {
             const std::size_t t = v.generation;
             const std::size_t expected = std::min(t, l);
             ASSERT_EQ(v.archive.sets().size(), expected);
             for (std::size_t k = 0; k < expected; ++k) EXPECT_EQ(v.archive.sets()[k].generation, t - expected + k);
           });
}

TEST(RunEda2, ZeroArchiveUsesPlainScatter) {
  Rng rng(11);
  EvalBudget budget(3000);
  TerminationPolicy term;
  term.max_fes = 3000;
  run_eda2(sphere_objective, Box::uniform(3, -3, 3), Eda2Params{100, 0.35, 0}, term, std::nullopt, budget, rng,
           [&](const GenerationView& v) {
             EXPECT_TRUE(v.archive.empty());
             const Vector m = Vector::Map(v.mean.data(), v.mean.size());
             Matrix oracle = Matrix::Zero(3, 3);
             for (const auto& ind : v.selected.members) oracle += (ind.genome - m) * (ind.genome - m).transpose();
             oracle /= static_cast<double>(v.selected.members.size());
             EXPECT_LE((v.covariance - oracle).cwiseAbs().maxCoeff(), 1e-12);
           });
}

TEST(RunEda2, Deterministic) {
  auto once = [] {
    Rng rng(12);
    EvalBudget budget(4000);
    TerminationPolicy term;
    term.max_fes = 4000;
    return run_eda2(bench::rosenbrock, Box::uniform(4, -5, 5), Eda2Params{30, 0.35, 5}, term, std::nullopt, budget,
                    rng);
  };
  const auto a = once();
  const auto b = once();
  EXPECT_EQ(a.best, b.best);
  ASSERT_EQ(a.history.size(), b.history.size());
  for (std::size_t i = 0; i < a.history.size(); ++i) {
    EXPECT_EQ(a.history[i].median, b.history[i].median);
    EXPECT_EQ(a.history[i].mean, b.history[i].mean);
  }
}

TEST(RunEda2, SmallInitSeedsTheFirstModelWholesale) {
  Rng rng(13);
  std::vector<Individual> init(3);
  for (std::size_t i = 0; i < init.size(); ++i) init[i].genome = Vector::Constant(2, static_cast<double>(i));
  EvalBudget budget(500);
  TerminationPolicy term;
  term.max_fes = 500;
  std::size_t first_selected = 0;
  std::vector<std::size_t> sizes;
  run_eda2(sphere_objective, Box::uniform(2, -5, 5), Eda2Params{10, 0.35, 2}, term, init, budget, rng,
           [&](const GenerationView& v) {
             if (v.generation == 0) first_selected = v.selected.members.size();
             sizes.push_back(v.population.size());
           });
  EXPECT_EQ(first_selected, 3u);
  ASSERT_GE(sizes.size(), 2u);
  EXPECT_EQ(sizes[0], 3u);
  EXPECT_EQ(sizes[1], 10u);
}

TEST(RunEda2, StagnationStopsAFlatRun) {
  Rng rng(14);
  EvalBudget budget(100000);
  TerminationPolicy term;
  term.max_fes = 100000;
  term.stagnation_enabled = true;
  term.stagnation_accuracy = 1e-6;
  const auto r = run_eda2([](const Vector&) { return 1.0; }, Box::uniform(2, -1, 1), Eda2Params{10, 0.5, 2}, term,
                          std::nullopt, budget, rng);
  EXPECT_EQ(r.stop, StopReason::stagnation);
  EXPECT_EQ(r.generations, 6u);
}

TEST(RunEda2, SharedBudgetIsRespected) {
  Rng rng(15);
  EvalBudget budget(250);
  TerminationPolicy term;
  const auto a = run_eda2(sphere_objective, Box::uniform(2, -1, 1), Eda2Params{20, 0.35, 2}, term, std::nullopt,
                          budget, rng);
  EXPECT_EQ(a.fes_used, 250u);
  EXPECT_TRUE(budget.exhausted());
}
