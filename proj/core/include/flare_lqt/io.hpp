#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "flare_lqt/constraints.hpp"
#include "flare_lqt/lqt.hpp"
#include "flare_lqt/pipeline.hpp"
#include "flare_lqt/sim.hpp"
#include "flare_lqt/trajectory.hpp"

namespace flare_lqt {

// All numeric output uses 17 significant digits so files re-parse to the
// in-memory values bit-for-bit.
std::string format_g17(double value);

// sim.csv: t,h,h_dot,theta,theta_dot,h_ref,h_dot_ref,theta_ref,
//          theta_dot_ref,delta_e,e_h,e_hdot,e_theta,e_thetadot,saturated
void write_sim_csv(const std::filesystem::path& path, const SimResult& result);

// gains.csv: t, 10 upper-triangle S entries (row-major), 4 v entries,
//            4 feedback-gain entries
void write_gains_csv(const std::filesystem::path& path,
                     const GainSchedule& schedule);

// region.csv: dh_ft,dtheta_deg,feasible,binding_constraint
void write_region_csv(const std::filesystem::path& path,
                      const RegionResult& region);

// report.csv: id,bound_lo,bound_hi,measured,verdict
void write_report_csv(const std::filesystem::path& path,
                      const ConstraintReport& report);

// Key-value geometry dump (both K rules included); read_geometry_txt
// restores the exact FlareGeometry for round-trip checks.
void write_geometry_txt(const std::filesystem::path& path,
                        const FlareGeometry& geom);
FlareGeometry read_geometry_txt(const std::filesystem::path& path);

// Key-value run report: constraint verdicts with measured extremes, J,
// touchdown bookkeeping.
void write_report_txt(const std::filesystem::path& path,
                      const ConstraintReport& report, const SimResult& result,
                      const FlareGeometry& geom);

// Minimal deterministic SVG line plot; one curve per series, drawn in order.
struct PlotSeries {
  std::string label;
  const std::vector<double>* x;
  const std::vector<double>* y;
};
void write_line_svg(const std::filesystem::path& path, const std::string& title,
                    const std::string& x_label, const std::string& y_label,
                    const std::vector<PlotSeries>& series);

// Feasibility cell map of a region sweep.
void write_region_svg(const std::filesystem::path& path,
                      const RegionResult& region);

// Writes the whole bundle for a finished pipeline run into out_dir:
// geometry.txt, gains.csv, sim.csv, report.txt, report.csv and (unless
// no_plots) plots/*.svg.
void write_run_bundle(const std::filesystem::path& out_dir,
                      const PipelineResult& result, bool no_plots);

}  // namespace flare_lqt
