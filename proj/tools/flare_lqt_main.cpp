// flare-lqt: design the flare trajectory, run the tracking loop, or sweep
// the admissible initial-state region, from a single config file.
//
// Exit codes: 0 success; 1 constraints violated; 2 bad config or usage;
// 3 trajectory root not bracketed; 4 gain solve failed; 5 simulation or
// output failure.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "flare_lqt/config.hpp"
#include "flare_lqt/errors.hpp"
#include "flare_lqt/io.hpp"
#include "flare_lqt/pipeline.hpp"

namespace {

namespace fl = flare_lqt;
namespace fs = std::filesystem;

std::vector<double> symmetric_grid(double max_abs, int cells) {
  std::vector<double> grid(cells);
  for (int i = 0; i < cells; ++i) {
    grid[i] = (2.0 * i / (cells - 1) - 1.0) * max_abs;
  }
  return grid;
}

int run_design(const std::string& config_path, const fs::path& out_dir) {
  const fl::RunConfig cfg = fl::load_config(config_path);
  const fl::FlareGeometry geom = fl::design_geometry(cfg);
  fl::write_geometry_txt(out_dir / "geometry.txt", geom);
  std::printf("flare design (%s mode)\n",
              geom.inputs.mode == fl::KMode::geometric ? "geometric"
                                                       : "timed");
  std::printf("  X_f0 = %.6g ft\n", geom.X_f0);
  std::printf("  K_x  = %.6g 1/ft\n", geom.K_x);
  std::printf("  h_c  = %.6g ft\n", geom.h_c);
  std::printf("  K    = %.6g 1/s (geometric %.6g, timed %.6g)\n", geom.K,
              geom.K_geometric, geom.K_timed);
  std::printf("  touchdown at t = %.6g s\n", fl::touchdown_time(geom));
  std::printf("wrote %s\n", (out_dir / "geometry.txt").string().c_str());
  return 0;
}

int run_simulate(const std::string& config_path, const fs::path& out_dir,
                 bool no_plots) {
  const fl::RunConfig cfg = fl::load_config(config_path);
  const fl::PipelineResult result = fl::run_pipeline(cfg);
  fl::write_run_bundle(out_dir, result, no_plots);
  std::printf("simulated [%g, %g] s, J = %.9g\n", cfg.t0, cfg.t_f,
              result.sim.J);
  for (const fl::ConstraintCheck& chk : result.report.checks) {
    std::printf("  %-7s measured %12.5g in [%g, %g]  %s\n", chk.id.c_str(),
                chk.measured, chk.bound_lo, chk.bound_hi,
                chk.pass ? "PASS" : "FAIL");
  }
  std::printf("constraints %s; wrote %s\n",
              result.report.all_pass ? "satisfied" : "violated",
              out_dir.string().c_str());
  return result.report.all_pass ? 0 : 1;
}

int run_region(const std::string& config_path, const fs::path& out_dir,
               bool no_plots, int jobs, double dh_max, double dtheta_max,
               int cells) {
  const fl::RunConfig cfg = fl::load_config(config_path);
  const std::vector<double> dh_grid = symmetric_grid(dh_max, cells);
  const std::vector<double> dtheta_grid = symmetric_grid(dtheta_max, cells);
  const fl::RegionResult region =
      fl::admissible_region(cfg, dh_grid, dtheta_grid, jobs);
  fl::write_geometry_txt(out_dir / "geometry.txt", fl::design_geometry(cfg));
  fl::write_region_csv(out_dir / "region.csv", region);
  if (!no_plots) {
    fl::write_region_svg(out_dir / "plots" / "region.svg", region);
  }
  std::size_t feasible = 0;
  for (const fl::RegionCell& cell : region.cells) feasible += cell.feasible;
  std::printf("region sweep %dx%d over |dh| <= %g ft, |dtheta| <= %g deg\n",
              cells, cells, dh_max, dtheta_max);
  std::printf("  feasible cells: %zu / %zu\n", feasible, region.cells.size());
  std::printf("  axis boundary: |dh| <= %g ft, |dtheta| <= %g deg\n",
              region.boundary_dh, region.boundary_dtheta);
  std::printf("wrote %s\n", out_dir.string().c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-horizon LQ tracking toolkit for the landing flare"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = "out";
  bool no_plots = false;
  int jobs = 0;
  int cells = 21;
  double dh_max = 40.0;
  double dtheta_max = 2.0;

  CLI::App* design = app.add_subcommand("design", "Solve the flare geometry");
  CLI::App* simulate =
      app.add_subcommand("simulate", "Design, solve gains, simulate, validate");
  CLI::App* region = app.add_subcommand(
      "region", "Sweep initial-state deviations for feasibility");
  for (CLI::App* sub : {design, simulate, region}) {
    sub->add_option("config", config_path, "Run configuration file")
        ->required();
    sub->add_option("--out", out_dir, "Output directory")
        ->capture_default_str();
    sub->add_flag("--no-plots", no_plots, "Skip SVG plot emission");
  }
  region->add_option("--jobs", jobs, "Worker threads (0 = hardware)")
      ->capture_default_str();
  region->add_option("--dh-max", dh_max, "Altitude deviation half-range, ft")
      ->capture_default_str();
  region
      ->add_option("--dtheta-max", dtheta_max,
                   "Pitch deviation half-range, deg")
      ->capture_default_str();
  region->add_option("--cells", cells, "Grid points per axis")
      ->check(CLI::Range(2, 1000000))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    const fs::path out(out_dir);
    if (design->parsed()) return run_design(config_path, out);
    if (simulate->parsed()) return run_simulate(config_path, out, no_plots);
    return run_region(config_path, out, no_plots, jobs, dh_max, dtheta_max,
                      cells);
  } catch (const fl::ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const fl::NoRootError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const fl::SolverError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 4;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 5;
  }
}
