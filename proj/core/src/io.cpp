#include "flare_lqt/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "flare_lqt/errors.hpp"

namespace flare_lqt {

namespace {

constexpr double kRadToDeg = 180.0 / M_PI;

std::ofstream open_out(const std::filesystem::path& path) {
  const std::filesystem::path parent = path.parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
  std::ofstream out(path);
  if (!out) {
    throw Error("io: cannot open '" + path.string() + "' for writing");
  }
  return out;
}

std::string fmt2(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", value);
  return buf;
}

std::string fmt_tick(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", value);
  return buf;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

// Shared plot frame geometry.
constexpr double kVpW = 800.0, kVpH = 500.0;
constexpr double kML = 70.0, kMR = 20.0, kMT = 40.0, kMB = 50.0;
constexpr const char* kPalette[4] = {"#1f77b4", "#d62728", "#2ca02c",
                                     "#9467bd"};

struct AxisRange {
  double lo, hi;
  double map(double v, double px_lo, double px_hi) const {
    return px_lo + (v - lo) / (hi - lo) * (px_hi - px_lo);
  }
};

AxisRange padded_range(double lo, double hi, double pad_frac) {
  if (!(hi > lo)) {  // degenerate or reversed: widen around the value
    const double pad = std::max(1.0, std::abs(lo) * 0.5);
    return {lo - pad, lo + pad};
  }
  const double pad = (hi - lo) * pad_frac;
  return {lo - pad, hi + pad};
}

void emit_frame(std::ostream& os, const std::string& title,
                const std::string& x_label, const std::string& y_label,
                const AxisRange& xr, const AxisRange& yr) {
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kVpW
     << "\" height=\"" << kVpH << "\" viewBox=\"0 0 " << kVpW << " " << kVpH
     << "\">\n";
  os << "<rect width=\"" << kVpW << "\" height=\"" << kVpH
     << "\" fill=\"white\"/>\n";
  os << "<text x=\"" << kVpW / 2 << "\" y=\"24\" text-anchor=\"middle\" "
     << "font-family=\"sans-serif\" font-size=\"16\">" << xml_escape(title)
     << "</text>\n";
  // Gridlines and ticks, 6 per axis.
  for (int i = 0; i < 6; ++i) {
    const double fx = i / 5.0;
    const double xv = xr.lo + fx * (xr.hi - xr.lo);
    const double yv = yr.lo + fx * (yr.hi - yr.lo);
    const double px = kML + fx * (kVpW - kML - kMR);
    const double py = kVpH - kMB - fx * (kVpH - kMT - kMB);
    os << "<line x1=\"" << fmt2(px) << "\" y1=\"" << fmt2(kMT) << "\" x2=\""
       << fmt2(px) << "\" y2=\"" << fmt2(kVpH - kMB)
       << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    os << "<line x1=\"" << fmt2(kML) << "\" y1=\"" << fmt2(py) << "\" x2=\""
       << fmt2(kVpW - kMR) << "\" y2=\"" << fmt2(py)
       << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    os << "<text x=\"" << fmt2(px) << "\" y=\"" << fmt2(kVpH - kMB + 18)
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
       << "font-size=\"11\">" << fmt_tick(xv) << "</text>\n";
    os << "<text x=\"" << fmt2(kML - 6) << "\" y=\"" << fmt2(py + 4)
       << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
       << "font-size=\"11\">" << fmt_tick(yv) << "</text>\n";
  }
  os << "<rect x=\"" << kML << "\" y=\"" << kMT << "\" width=\""
     << kVpW - kML - kMR << "\" height=\"" << kVpH - kMT - kMB
     << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
  os << "<text x=\"" << (kML + (kVpW - kML - kMR) / 2) << "\" y=\"" << kVpH - 10
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
     << "font-size=\"13\">" << xml_escape(x_label) << "</text>\n";
  os << "<text x=\"18\" y=\"" << (kMT + (kVpH - kMT - kMB) / 2)
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
     << "font-size=\"13\" transform=\"rotate(-90 18 "
     << (kMT + (kVpH - kMT - kMB) / 2) << ")\">" << xml_escape(y_label)
     << "</text>\n";
}

std::string csv_escape(const std::string& s) {
  // Identifiers we emit never contain commas/quotes; keep the writer honest
  // anyway.
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    out += c;
  }
  out += "\"";
  return out;
}

}  // namespace

std::string format_g17(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

void write_sim_csv(const std::filesystem::path& path,
                   const SimResult& result) {
  std::ofstream out = open_out(path);
  out << "t,h,h_dot,theta,theta_dot,h_ref,h_dot_ref,theta_ref,theta_dot_ref,"
         "delta_e,e_h,e_hdot,e_theta,e_thetadot,saturated\n";
  for (std::size_t i = 0; i < result.times.size(); ++i) {
    const Vec4& x = result.states[i];
    const Vec4& r = result.references[i];
    const Vec4& e = result.errors[i];
    out << format_g17(result.times[i]);
    for (int k = 0; k < 4; ++k) out << ',' << format_g17(x(k));
    for (int k = 0; k < 4; ++k) out << ',' << format_g17(r(k));
    out << ',' << format_g17(result.controls[i]);
    for (int k = 0; k < 4; ++k) out << ',' << format_g17(e(k));
    out << ',' << result.saturated[i] << '\n';
  }
  if (!out) throw Error("io: write failure on '" + path.string() + "'");
}

void write_gains_csv(const std::filesystem::path& path,
                     const GainSchedule& schedule) {
  std::ofstream out = open_out(path);
  const int n = static_cast<int>(schedule.plant.A.rows());
  out << 't';
  for (int i = 1; i <= n; ++i)
    for (int j = i; j <= n; ++j) out << ",S" << i << j;
  for (int i = 1; i <= n; ++i) out << ",v" << i;
  for (int i = 1; i <= n; ++i) out << ",K" << i;
  out << '\n';
  for (std::size_t k = 0; k < schedule.grid.size(); ++k) {
    out << format_g17(schedule.grid[k]);
    const Eigen::MatrixXd& S = schedule.S[k];
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) out << ',' << format_g17(S(i, j));
    for (int i = 0; i < n; ++i) out << ',' << format_g17(schedule.v[k](i));
    for (int i = 0; i < n; ++i) out << ',' << format_g17(schedule.K_fb[k](i));
    out << '\n';
  }
  if (!out) throw Error("io: write failure on '" + path.string() + "'");
}

void write_region_csv(const std::filesystem::path& path,
                      const RegionResult& region) {
  std::ofstream out = open_out(path);
  out << "dh_ft,dtheta_deg,feasible,binding_constraint\n";
  for (const RegionCell& cell : region.cells) {
    out << format_g17(cell.dh) << ',' << format_g17(cell.dtheta_deg) << ','
        << (cell.feasible ? 1 : 0) << ',' << csv_escape(cell.binding) << '\n';
  }
  if (!out) throw Error("io: write failure on '" + path.string() + "'");
}

void write_report_csv(const std::filesystem::path& path,
                      const ConstraintReport& report) {
  std::ofstream out = open_out(path);
  out << "id,bound_lo,bound_hi,measured,verdict\n";
  for (const ConstraintCheck& chk : report.checks) {
    out << csv_escape(chk.id) << ',' << format_g17(chk.bound_lo) << ','
        << format_g17(chk.bound_hi) << ',' << format_g17(chk.measured) << ','
        << (chk.pass ? "pass" : "fail") << '\n';
  }
  if (!out) throw Error("io: write failure on '" + path.string() + "'");
}

void write_geometry_txt(const std::filesystem::path& path,
                        const FlareGeometry& geom) {
  std::ofstream out = open_out(path);
  out << "designed=" << (geom.designed ? 1 : 0) << '\n';
  out << "mode=" << (geom.inputs.mode == KMode::geometric ? "geometric"
                                                          : "timed")
      << '\n';
  out << "X_f0=" << format_g17(geom.X_f0) << '\n';
  out << "K_x=" << format_g17(geom.K_x) << '\n';
  out << "h_c=" << format_g17(geom.h_c) << '\n';
  out << "K=" << format_g17(geom.K) << '\n';
  out << "K_geometric=" << format_g17(geom.K_geometric) << '\n';
  out << "K_timed=" << format_g17(geom.K_timed) << '\n';
  out << "touchdown_time=" << format_g17(touchdown_time(geom)) << '\n';
  out << "h_f0=" << format_g17(geom.inputs.h_f0) << '\n';
  out << "nu_d=" << format_g17(geom.inputs.nu_d) << '\n';
  out << "X_dot=" << format_g17(geom.inputs.X_dot) << '\n';
  out << "t0=" << format_g17(geom.inputs.t0) << '\n';
  out << "t_f=" << format_g17(geom.inputs.t_f) << '\n';
  out << "X_g0=" << format_g17(geom.plate.X_g0) << '\n';
  out << "h_g0=" << format_g17(geom.plate.h_g0) << '\n';
  out << "X_t=" << format_g17(geom.plate.X_t) << '\n';
  if (!out) throw Error("io: write failure on '" + path.string() + "'");
}

FlareGeometry read_geometry_txt(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("io: cannot open '" + path.string() + "'");
  std::map<std::string, std::string> kv;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("io: '" + path.string() + "' line " +
                        std::to_string(line_no) + ": expected key=value");
    }
    kv[line.substr(0, eq)] = line.substr(eq + 1);
  }
  static const std::set<std::string> known = {
      "designed", "mode", "X_f0", "K_x", "h_c", "K", "K_geometric", "K_timed",
      "touchdown_time", "h_f0", "nu_d", "X_dot", "t0", "t_f", "X_g0", "h_g0",
      "X_t"};
  for (const auto& [key, value] : kv) {
    (void)value;
    if (!known.count(key)) {
      throw ConfigError("io: '" + path.string() + "': unknown key '" + key +
                        "'");
    }
  }
  auto num = [&](const std::string& key) {
    auto it = kv.find(key);
    if (it == kv.end()) {
      throw ConfigError("io: '" + path.string() + "': missing key '" + key +
                        "'");
    }
    try {
      std::size_t pos = 0;
      const double v = std::stod(it->second, &pos);
      if (pos != it->second.size()) throw std::invalid_argument(key);
      return v;
    } catch (const std::exception&) {
      throw ConfigError("io: '" + path.string() + "': bad number for '" + key +
                        "'");
    }
  };
  FlareGeometry geom;
  geom.designed = num("designed") != 0.0;
  const std::string mode = kv.count("mode") ? kv["mode"] : "";
  if (mode != "geometric" && mode != "timed") {
    throw ConfigError("io: '" + path.string() + "': bad mode '" + mode + "'");
  }
  geom.inputs.mode = (mode == "geometric") ? KMode::geometric : KMode::timed;
  geom.X_f0 = num("X_f0");
  geom.K_x = num("K_x");
  geom.h_c = num("h_c");
  geom.K = num("K");
  geom.K_geometric = num("K_geometric");
  geom.K_timed = num("K_timed");
  geom.inputs.h_f0 = num("h_f0");
  geom.inputs.nu_d = num("nu_d");
  geom.inputs.X_dot = num("X_dot");
  geom.inputs.t0 = num("t0");
  geom.inputs.t_f = num("t_f");
  geom.plate.X_g0 = num("X_g0");
  geom.plate.h_g0 = num("h_g0");
  geom.plate.X_t = num("X_t");
  num("touchdown_time");  // present and numeric; derived, not stored
  return geom;
}

void write_report_txt(const std::filesystem::path& path,
                      const ConstraintReport& report, const SimResult& result,
                      const FlareGeometry& geom) {
  std::ofstream out = open_out(path);
  out << "J=" << format_g17(result.J) << '\n';
  out << "touchdown_time=" << format_g17(touchdown_time(geom)) << '\n';
  out << "first_ground_contact="
      << (std::isnan(report.first_ground_contact)
              ? std::string("none")
              : format_g17(report.first_ground_contact))
      << '\n';
  out << "descent_td_ftmin=" << format_g17(report.descent_td_ftmin) << '\n';
  out << "pitch_td_deg=" << format_g17(report.pitch_td_deg) << '\n';
  out << "alpha_max_deg=" << format_g17(report.alpha_max_meas_deg) << '\n';
  out << "alpha_rate_deg_s=" << format_g17(report.alpha_rate_meas_deg_s)
      << '\n';
  out << "elevator_min_deg=" << format_g17(report.elevator_min_deg) << '\n';
  out << "elevator_max_deg=" << format_g17(report.elevator_max_deg) << '\n';
  for (const ConstraintCheck& chk : report.checks) {
    out << chk.id << ": measured=" << format_g17(chk.measured) << " band=["
        << format_g17(chk.bound_lo) << ", " << format_g17(chk.bound_hi)
        << "] verdict=" << (chk.pass ? "PASS" : "FAIL") << '\n';
  }
  out << "all_pass=" << (report.all_pass ? "yes" : "no") << '\n';
  if (!out) throw Error("io: write failure on '" + path.string() + "'");
}

void write_line_svg(const std::filesystem::path& path,
                    const std::string& title, const std::string& x_label,
                    const std::string& y_label,
                    const std::vector<PlotSeries>& series) {
  if (series.empty()) throw Error("io: plot '" + title + "' has no series");
  double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
  double y_lo = x_lo, y_hi = -x_lo;
  for (const PlotSeries& s : series) {
    if (!s.x || !s.y || s.x->size() != s.y->size()) {
      throw Error("io: plot '" + title + "': malformed series");
    }
    for (std::size_t i = 0; i < s.x->size(); ++i) {
      const double xv = (*s.x)[i], yv = (*s.y)[i];
      if (!std::isfinite(xv) || !std::isfinite(yv)) continue;
      x_lo = std::min(x_lo, xv);
      x_hi = std::max(x_hi, xv);
      y_lo = std::min(y_lo, yv);
      y_hi = std::max(y_hi, yv);
    }
  }
  if (!std::isfinite(x_lo) || !std::isfinite(y_lo)) {
    x_lo = 0.0, x_hi = 1.0, y_lo = 0.0, y_hi = 1.0;
  }
  const AxisRange xr = padded_range(x_lo, x_hi, 0.0);
  const AxisRange yr = padded_range(y_lo, y_hi, 0.05);

  std::ofstream out = open_out(path);
  emit_frame(out, title, x_label, y_label, xr, yr);
  for (std::size_t si = 0; si < series.size(); ++si) {
    const PlotSeries& s = series[si];
    const char* color = kPalette[si % 4];
    out << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.5\" points=\"";
    bool first = true;
    for (std::size_t i = 0; i < s.x->size(); ++i) {
      const double xv = (*s.x)[i], yv = (*s.y)[i];
      if (!std::isfinite(xv) || !std::isfinite(yv)) continue;
      const double px = xr.map(xv, kML, kVpW - kMR);
      const double py = yr.map(yv, kVpH - kMB, kMT);
      if (!first) out << ' ';
      out << fmt2(px) << ',' << fmt2(py);
      first = false;
    }
    out << "\"/>\n";
  }
  if (series.size() > 1) {
    for (std::size_t si = 0; si < series.size(); ++si) {
      const double ly = kMT + 16 + 18.0 * si;
      out << "<line x1=\"" << kML + 12 << "\" y1=\"" << ly << "\" x2=\""
          << kML + 40 << "\" y2=\"" << ly << "\" stroke=\"" << kPalette[si % 4]
          << "\" stroke-width=\"2\"/>\n";
      out << "<text x=\"" << kML + 46 << "\" y=\"" << ly + 4
          << "\" font-family=\"sans-serif\" font-size=\"12\">"
          << xml_escape(series[si].label) << "</text>\n";
    }
  }
  out << "</svg>\n";
  if (!out) throw Error("io: write failure on '" + path.string() + "'");
}

void write_region_svg(const std::filesystem::path& path,
                      const RegionResult& region) {
  const std::vector<double>& hs = region.dh_grid;
  const std::vector<double>& ts = region.dtheta_grid;
  if (hs.empty() || ts.empty()) throw Error("io: empty region");
  const double dh_step = hs.size() > 1 ? hs[1] - hs[0] : 1.0;
  const double dt_step = ts.size() > 1 ? ts[1] - ts[0] : 1.0;
  const AxisRange xr{hs.front() - dh_step / 2, hs.back() + dh_step / 2};
  const AxisRange yr{ts.front() - dt_step / 2, ts.back() + dt_step / 2};

  std::ofstream out = open_out(path);
  emit_frame(out, "Admissible initial-state region", "dh (ft)",
             "dtheta (deg)", xr, yr);
  for (const RegionCell& cell : region.cells) {
    const double x0 = xr.map(cell.dh - dh_step / 2, kML, kVpW - kMR);
    const double x1 = xr.map(cell.dh + dh_step / 2, kML, kVpW - kMR);
    const double y0 = yr.map(cell.dtheta_deg - dt_step / 2, kVpH - kMB, kMT);
    const double y1 = yr.map(cell.dtheta_deg + dt_step / 2, kVpH - kMB, kMT);
    const char* fill = cell.feasible ? "#2ca02c"
                       : cell.binding == "error" ? "#7f7f7f"
                                                 : "#d62728";
    out << "<rect x=\"" << fmt2(std::min(x0, x1)) << "\" y=\""
        << fmt2(std::min(y0, y1)) << "\" width=\"" << fmt2(std::abs(x1 - x0))
        << "\" height=\"" << fmt2(std::abs(y1 - y0)) << "\" fill=\"" << fill
        << "\" fill-opacity=\"0.85\"/>\n";
  }
  out << "<rect x=\"" << kML << "\" y=\"" << kMT << "\" width=\""
      << kVpW - kML - kMR << "\" height=\"" << kVpH - kMT - kMB
      << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
  out << "</svg>\n";
  if (!out) throw Error("io: write failure on '" + path.string() + "'");
}

void write_run_bundle(const std::filesystem::path& out_dir,
                      const PipelineResult& result, bool no_plots) {
  std::filesystem::create_directories(out_dir);
  write_geometry_txt(out_dir / "geometry.txt", result.geometry);
  write_gains_csv(out_dir / "gains.csv", result.schedule);
  write_sim_csv(out_dir / "sim.csv", result.sim);
  write_report_txt(out_dir / "report.txt", result.report, result.sim,
                   result.geometry);
  write_report_csv(out_dir / "report.csv", result.report);
  if (no_plots) return;

  const SimResult& sim = result.sim;
  const std::size_t n = sim.times.size();
  std::vector<double> h(n), h_dot(n), theta_deg(n), delta_deg(n);
  std::vector<double> h_ref(n), h_dot_ref(n), theta_ref_deg(n);
  std::vector<double> e_h(n), e_hdot(n), e_theta_deg(n), e_thetadot_deg(n);
  for (std::size_t i = 0; i < n; ++i) {
    h[i] = sim.states[i](kH);
    h_dot[i] = sim.states[i](kHdot);
    theta_deg[i] = sim.states[i](kTheta) * kRadToDeg;
    delta_deg[i] = sim.controls[i] * kRadToDeg;
    h_ref[i] = sim.references[i](kH);
    h_dot_ref[i] = sim.references[i](kHdot);
    theta_ref_deg[i] = sim.references[i](kTheta) * kRadToDeg;
    e_h[i] = sim.errors[i](kH);
    e_hdot[i] = sim.errors[i](kHdot);
    e_theta_deg[i] = sim.errors[i](kTheta) * kRadToDeg;
    e_thetadot_deg[i] = sim.errors[i](kThetaDot) * kRadToDeg;
  }
  const std::filesystem::path plots = out_dir / "plots";
  const std::vector<double>& t = sim.times;
  write_line_svg(plots / "h.svg", "Altitude", "t (s)", "h (ft)",
                 {{"h", &t, &h}, {"h_d", &t, &h_ref}});
  write_line_svg(plots / "h_dot.svg", "Sink rate", "t (s)", "h_dot (ft/s)",
                 {{"h_dot", &t, &h_dot}, {"h_dot_d", &t, &h_dot_ref}});
  write_line_svg(plots / "theta.svg", "Pitch attitude", "t (s)",
                 "theta (deg)",
                 {{"theta", &t, &theta_deg}, {"theta_d", &t, &theta_ref_deg}});
  write_line_svg(plots / "delta_e.svg", "Elevator deflection", "t (s)",
                 "delta_e (deg)", {{"delta_e", &t, &delta_deg}});
  write_line_svg(plots / "e_h.svg", "Altitude tracking error", "t (s)",
                 "e_h (ft)", {{"e_h", &t, &e_h}});
  write_line_svg(plots / "e_hdot.svg", "Sink-rate tracking error", "t (s)",
                 "e_hdot (ft/s)", {{"e_hdot", &t, &e_hdot}});
  write_line_svg(plots / "e_theta.svg", "Pitch tracking error", "t (s)",
                 "e_theta (deg)", {{"e_theta", &t, &e_theta_deg}});
  write_line_svg(plots / "e_thetadot.svg", "Pitch-rate tracking error",
                 "t (s)", "e_thetadot (deg/s)",
                 {{"e_thetadot", &t, &e_thetadot_deg}});
}

}  // namespace flare_lqt
