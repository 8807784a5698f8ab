#include "ceda/benchmarks/optima_io.hpp"
#include "ceda/benchmarks/registry.hpp"
#include "optima_oracle.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <random>
#include <sstream>

using namespace ceda;
using namespace ceda::bench;

namespace {

struct Row {
  int id;
  int dim;
  std::size_t optima;
  std::size_t max_fes;
};

// Dimension, number of global optima and evaluation budget per function.
constexpr Row kTable[] = {
    {1, 1, 2, 50000},    {2, 1, 5, 50000},    {3, 1, 1, 50000},    {4, 2, 4, 50000},    {5, 2, 2, 50000},
    {6, 2, 18, 200000},  {7, 2, 36, 200000},  {8, 3, 81, 400000},  {9, 3, 216, 400000}, {10, 2, 12, 200000},
    {11, 2, 6, 200000},  {12, 2, 8, 200000},  {13, 2, 6, 200000},  {14, 3, 6, 400000},  {15, 3, 8, 400000},
    {16, 5, 6, 400000},  {17, 5, 8, 400000},  {18, 10, 6, 400000}, {19, 10, 8, 400000}, {20, 20, 8, 400000}};

/// Pairs every optimum in `a` with a distinct one in `b` within `tol`.
bool same_point_sets(const std::vector<Vector>& a, const std::vector<Vector>& b, double tol) {
  if (a.size() != b.size()) return false;
  std::vector<bool> used(b.size(), false);
  for (const auto& x : a) {
    bool found = false;
    for (std::size_t j = 0; j < b.size() && !found; ++j) {
      if (!used[j] && (x - b[j]).norm() <= tol) {
        used[j] = true;
        found = true;
      }
    }
    if (!found) return false;
  }
  return true;
}

}  // namespace

class Cec2013Table : public ::testing::TestWithParam<Row> {};

TEST_P(Cec2013Table, MatchesInventory) {
  const auto row = GetParam();
  const auto p = make_cec2013_problem(row.id);
  EXPECT_EQ(p.dimension(), row.dim);
  EXPECT_EQ(p.global_optima.size(), row.optima);
  EXPECT_EQ(p.max_fes, row.max_fes);
  EXPECT_EQ(p.sense, Sense::maximize);
  EXPECT_GT(p.niche_radius, 0.0);
}

TEST_P(Cec2013Table, OptimaPassSelfCheck) {
  const auto p = make_cec2013_problem(GetParam().id);
  for (const auto& o : p.global_optima) {
    EXPECT_TRUE(p.bounds.contains(o));
    EXPECT_NEAR(p(o), p.global_optimum_value, 1e-6);
  }
}

TEST_P(Cec2013Table, OptimaBeatRandomPoints) {
  const auto p = make_cec2013_problem(GetParam().id);
  Rng rng(static_cast<std::uint64_t>(GetParam().id));
  for (int i = 0; i < 2000; ++i) EXPECT_LE(p(uniform_in(p.bounds, rng)), p.global_optimum_value + 1e-9);
}

TEST_P(Cec2013Table, Deterministic) {
  const auto a = make_cec2013_problem(GetParam().id);
  const auto b = make_cec2013_problem(GetParam().id);
  Rng rng(99);
  for (int i = 0; i < 20; ++i) {
    const Vector x = uniform_in(a.bounds, rng);
    EXPECT_EQ(a(x), b(x));
    EXPECT_EQ(a(x), a(x));
  }
}

INSTANTIATE_TEST_SUITE_P(AllFunctions, Cec2013Table, ::testing::ValuesIn(kTable),
                         [](const auto& info) { return "f" + std::to_string(info.param.id); });

TEST(Cec2013, OutOfRangeIdThrows) {
  EXPECT_THROW(make_cec2013_problem(0), std::invalid_argument);
  EXPECT_THROW(make_cec2013_problem(21), std::invalid_argument);
}

TEST(Cec2013, EqualMaximaPeakIsOne) {
  const auto p = make_cec2013_problem(2);
  EXPECT_NEAR(p(Vector::Constant(1, 0.1)), 1.0, 1e-12);
}

TEST(Cec2013, SixHumpGlobalOptimum) {
  const auto p = make_cec2013_problem(5);
  EXPECT_NEAR(p.global_optimum_value, 1.031628453489877, 1e-9);
  for (const auto& o : p.global_optima) EXPECT_NEAR(p(o), p.global_optimum_value, 1e-6);
  const auto basins = six_hump_basin_optima();
  ASSERT_EQ(basins.size(), 4u);
  EXPECT_NEAR(p(basins[2]), p(basins[3]), 1e-12);
  EXPECT_LT(p(basins[2]), p.global_optimum_value);
}

TEST(Cec2013, ClosedFormSpotValues) {
  EXPECT_DOUBLE_EQ(make_cec2013_problem(1)(Vector::Constant(1, 0.0)), 200.0);
  EXPECT_DOUBLE_EQ(make_cec2013_problem(1)(Vector::Constant(1, 30.0)), 200.0);
  Vector h(2);
  h << 3.0, 2.0;
  EXPECT_DOUBLE_EQ(make_cec2013_problem(4)(h), 200.0);
  EXPECT_NEAR(make_cec2013_problem(10)(Vector::Constant(2, 0.5)), -(10.0 - 9.0) - (10.0 + 9.0), 1e-9);
}

TEST(Cec2013, ShubertValue) {
  EXPECT_NEAR(make_cec2013_problem(6).global_optimum_value, 186.7309088, 1e-6);
  EXPECT_NEAR(make_cec2013_problem(8).global_optimum_value, 2709.0935, 1e-3);
}

TEST(Cec2013, ShubertGridOracleFindsEighteen) {
  const auto p = make_cec2013_problem(6);
  oracle::GridOptions opt;
  opt.points_per_dim = 2000;
  const auto found = oracle::grid_optima(p.objective, p.bounds, opt);
  EXPECT_EQ(found.size(), 18u);
  EXPECT_TRUE(same_point_sets(found, p.global_optima, 1e-6));
}

TEST(Cec2013, StoredTablesAgreeWithConstructedOptima) {
  for (int id = 6; id <= 9; ++id) {
    char name[32];
    std::snprintf(name, sizeof(name), "/optima/f%02d.txt", id);
    const auto stored = load_optima_table(std::string(CEDA_DATA_DIR) + name);
    const auto p = make_cec2013_problem(id);
    EXPECT_EQ(stored.size(), p.global_optima.size()) << id;
    EXPECT_TRUE(same_point_sets(stored, p.global_optima, 1e-6)) << id;
    for (const auto& o : stored) EXPECT_NEAR(p(o), p.global_optimum_value, 1e-6) << id;
  }
}

TEST(Evaluate, ChargesBudget) {
  const auto p = make_cec2013_problem(5);
  EvalBudget budget(3);
  evaluate(p, p.global_optima[0], budget);
  evaluate(p, p.global_optima[1], budget);
  EXPECT_EQ(budget.used(), 2u);
  EXPECT_NEAR(evaluate(p, p.global_optima[0], budget), p.global_optimum_value, 1e-6);
  EXPECT_THROW(evaluate(p, p.global_optima[0], budget), BudgetExhausted);
  EXPECT_EQ(budget.used(), 3u);
}

TEST(EvalBudget, Accounting) {
  EXPECT_THROW(EvalBudget(0), std::invalid_argument);
  EvalBudget b(2);
  EXPECT_EQ(b.consume(), 1u);
  EXPECT_EQ(b.remaining(), 1u);
  EXPECT_EQ(b.consume(), 2u);
  EXPECT_TRUE(b.exhausted());
  EXPECT_THROW(b.consume(), BudgetExhausted);
}

TEST(NicheRadius, HalfTheClosestPair) {
  std::vector<Vector> optima{Vector::Constant(2, 0.0), Vector::Constant(2, 3.0), Vector::Constant(2, 1.0)};
  EXPECT_NEAR(default_niche_radius(optima, Box::uniform(2, -5, 5)), 0.5 * std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(default_niche_radius({Vector::Zero(2)}, Box::uniform(2, -5, 5)), 0.5 * std::sqrt(200.0), 1e-12);
}

TEST(Finalize, RejectsWrongOptimum) {
  Problem p;
  p.name = "broken";
  p.bounds = Box::uniform(1, -1, 1);
  p.global_optimum_value = 1.0;
  p.global_optima = {Vector::Zero(1)};
  p.max_fes = 10;
  p.objective = [](const Vector& x) { return x[0]; };
  EXPECT_THROW(finalize(p), std::logic_error);
}

TEST(Rotation, SeededQrIsOrthogonal) {
  Rng rng(1);
  for (Eigen::Index n : {1, 2, 5, 20}) {
    const Matrix r = random_rotation(n, rng);
    EXPECT_LE((r.transpose() * r - Matrix::Identity(n, n)).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_TRUE(is_orthogonal(r));
  }
  Matrix bad = Matrix::Identity(3, 3);
  bad(0, 1) = 0.1;
  EXPECT_FALSE(is_orthogonal(bad));
}

TEST(Composition, SingleComponentIsScaledBasicFunction) {
  CompositionSpec spec;
  spec.bounds = Box::uniform(2, -5, 5);
  spec.components = {{BasicFunction::rastrigin, 1.0, 1.0, 0.0}};
  spec.shifts = {Vector::Zero(2)};
  spec.rotations = {Matrix::Identity(2, 2)};
  const auto p = make_composition(spec);
  EXPECT_EQ(p.global_optimum_value, 0.0);
  EXPECT_FALSE(std::signbit(p.global_optimum_value));
  const double fmax = rastrigin(spec.bounds.upper);
  Rng rng(2);
  for (int i = 0; i < 50; ++i) {
    const Vector x = uniform_in(spec.bounds, rng);
    EXPECT_NEAR(p(x), -2000.0 * rastrigin(x) / fmax, 1e-9 * std::max(1.0, std::abs(p(x))));
  }
}

TEST(Composition, SeededSixShiftsAreAllOptimal) {
  std::vector<CompositionComponent> comps(6, CompositionComponent{BasicFunction::griewank, 1.0, 1.0, 0.0});
  const auto spec = seeded_composition("cf6", comps, Box::uniform(2, -5, 5), true, 7, 1000);
  const auto p = make_composition(spec);
  ASSERT_EQ(p.global_optima.size(), 6u);
  for (const auto& o : p.global_optima) EXPECT_NEAR(p(o), p.global_optimum_value, 1e-6);
  for (const auto& r : spec.rotations) EXPECT_LE((r.transpose() * r - Matrix::Identity(2, 2)).norm(), 1e-10);
}

TEST(Composition, OnlyLowestBiasShiftsAreGlobal) {
  std::vector<CompositionComponent> comps{{BasicFunction::sphere, 1.0, 1.0, 0.0},
                                          {BasicFunction::sphere, 1.0, 1.0, 100.0},
                                          {BasicFunction::sphere, 1.0, 1.0, 0.0}};
  const auto p = make_composition(seeded_composition("cf", comps, Box::uniform(2, -5, 5), false, 3, 1000));
  EXPECT_EQ(p.global_optima.size(), 2u);
}

TEST(Composition, NonOrthogonalRotationThrows) {
  CompositionSpec spec;
  spec.bounds = Box::uniform(2, -5, 5);
  spec.components = {{BasicFunction::sphere, 1.0, 1.0, 0.0}};
  spec.shifts = {Vector::Zero(2)};
  Matrix r = Matrix::Identity(2, 2);
  r(1, 0) = 0.5;
  spec.rotations = {r};
  EXPECT_THROW(make_composition(spec), std::invalid_argument);
}

TEST(Study, EllipticOptimumAtShift) {
  const auto p = make_cec2005_study_problem(StudyFunction::elliptic, 20);
  ASSERT_EQ(p.global_optima.size(), 1u);
  EXPECT_EQ(p(p.global_optima[0]), 0.0);
  EXPECT_EQ(p.sense, Sense::minimize);
  EXPECT_EQ(p.max_fes, 200000u);
  EXPECT_LE(p.global_optima[0].cwiseAbs().maxCoeff(), 80.0);
  EXPECT_EQ(p.bounds.lower[0], -100.0);
}

TEST(Study, RosenbrockClassicOptimum) {
  const auto p = make_study_problem(StudyFunction::rosenbrock, Vector::Ones(2), Matrix::Identity(2, 2));
  EXPECT_EQ(p(Vector::Ones(2)), 0.0);
  Vector x(2);
  x << -1.2, 1.0;
  EXPECT_NEAR(p(x), 100 * std::pow(1.0 - 1.44, 2) + std::pow(2.2, 2), 1e-12);
  const auto shifted = make_cec2005_study_problem(StudyFunction::rosenbrock, 10);
  EXPECT_EQ(shifted(shifted.global_optima[0]), 0.0);
}

TEST(Study, EllipticConditioning) {
  const Vector o = Vector::Constant(20, 3.0);
  const auto p = make_study_problem(StudyFunction::elliptic, o, Matrix::Identity(20, 20));
  Vector a = o, b = o;
  a[0] += 1.0;
  b[19] += 1.0;
  EXPECT_NEAR(p(a) / p(b), 1e-6, 1e-18);
}

TEST(Study, SeedIsStable) {
  const auto a = make_cec2005_study_problem(StudyFunction::elliptic, 5, 11);
  const auto b = make_cec2005_study_problem(StudyFunction::elliptic, 5, 11);
  const auto c = make_cec2005_study_problem(StudyFunction::elliptic, 5, 12);
  EXPECT_EQ(a.global_optima[0], b.global_optima[0]);
  EXPECT_NE(a.global_optima[0], c.global_optima[0]);
  EXPECT_THROW(make_cec2005_study_problem(StudyFunction::elliptic, 1), std::invalid_argument);
}

TEST(Registry, ResolvesIds) {
  EXPECT_EQ(make_problem("cec2013/f7").global_optima.size(), 36u);
  EXPECT_EQ(make_problem("study/elliptic-d20").dimension(), 20);
  EXPECT_EQ(make_problem("study/rosenbrock-d20").name, "study/rosenbrock-d20");
  EXPECT_EQ(make_problem("study/sphere-d3").dimension(), 3);
  for (const char* bad : {"cec2013/f0", "cec2013/f21", "cec2013/fx", "study/elliptic", "study/foo-d3", "nope"}) {
    EXPECT_THROW(make_problem(bad), UnknownProblem) << bad;
  }
}

TEST(OptimaIo, RoundTripIsExact) {
  Rng rng(5);
  std::normal_distribution<double> g(0, 1e3);
  std::vector<Vector> optima;
  for (int i = 0; i < 20; ++i) {
    Vector v(3);
    for (int k = 0; k < 3; ++k) v[k] = g(rng);
    optima.push_back(v);
  }
  std::stringstream s;
  s << "# comment\n";
  write_optima_table(s, optima);
  EXPECT_EQ(read_optima_table(s), optima);
}

TEST(OptimaIo, RejectsRaggedRows) {
  std::stringstream s("1 2\n3\n");
  EXPECT_THROW(read_optima_table(s), std::invalid_argument);
  std::stringstream t("1 abc\n");
  EXPECT_THROW(read_optima_table(t), std::invalid_argument);
}
