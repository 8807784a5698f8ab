#include "ceda/benchmarks/cec2013.hpp"
#include "ceda/benchmarks/optima_io.hpp"
#include "optima_oracle.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>

/// Regenerates the stored optimum tables of the Shubert and Vincent
/// problems from a grid scan of the objective alone.
int main(int argc, char** argv) {
  CLI::App app{"Grid-and-refine optimum tables for cec2013 f6-f9"};
  std::string out_dir = "data/optima";
  std::size_t grid2 = 2000;
  std::size_t grid3 = 200;
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--grid2", grid2, "grid points per axis for 2-D problems");
  app.add_option("--grid3", grid3, "grid points per axis for 3-D problems");
  CLI11_PARSE(app, argc, argv);

  std::filesystem::create_directories(out_dir);
  for (int id = 6; id <= 9; ++id) {
    const auto problem = ceda::bench::make_cec2013_problem(id);
    ceda::oracle::GridOptions opt;
    opt.points_per_dim = problem.dimension() == 2 ? grid2 : grid3;
    const auto optima = ceda::oracle::grid_optima(problem.objective, problem.bounds, opt);
    char name[32];
    std::snprintf(name, sizeof(name), "f%02d.txt", id);
    const auto path = std::filesystem::path(out_dir) / name;
    ceda::bench::save_optima_table(path, optima);
    std::cout << problem.name << ": " << optima.size() << " optima -> " << path.string() << '\n';
  }
  return 0;
}
