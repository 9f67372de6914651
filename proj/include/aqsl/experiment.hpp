#pragma once

// Experiment runners behind the aqsl command line: OU dephasing dynamics of
// Bell-diagonal states and speed-limit sweeps, written as CSV with an
// optional SVG line chart.

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "aqsl/channels.hpp"
#include "aqsl/correlations.hpp"
#include "aqsl/error.hpp"
#include "aqsl/qsl.hpp"
#include "aqsl/states.hpp"

namespace aqsl {

enum class Command { Dynamics, Qsl, Verify };
enum class Sweep { Time, Coupling };
enum class ModeSelection { Decay, Creation, Both };

struct ExperimentConfig {
  Command command = Command::Dynamics;
  BellDiagonalParams initial_c{1.0, 1.0, -1.0};
  double big_gamma = 1.0;
  double gamma = 1.0;
  double t_max = 5.0;
  std::size_t steps = 50;
  Sweep sweep = Sweep::Time;
  double coupling_lo = 0.2;
  double coupling_hi = 5.0;
  std::size_t coupling_n = 10;
  ModeSelection mode = ModeSelection::Decay;
  std::uint64_t seed = 20240607;
  std::string out_path;
  bool emit_svg = false;

  void validate() const {
    auto bad = [](const std::string& why) { throw Error(ErrorKind::InvalidConfig, why); };
    if (steps < 2) bad("steps must be at least 2");
    if (!(t_max > 0.0) || !std::isfinite(t_max)) bad("t-max must be positive");
    if (!(big_gamma > 0.0) || !std::isfinite(big_gamma)) bad("big-gamma must be positive");
    if (!(gamma > 0.0) || !std::isfinite(gamma)) bad("gamma must be positive");
    if (!(coupling_lo < coupling_hi)) bad("coupling-lo must be below coupling-hi");
    if (!(coupling_lo > 0.0)) bad("coupling-lo must be positive");
    if (coupling_n < 2) bad("coupling-n must be at least 2");
    if (!initial_c.is_state()) bad("initial coefficients do not describe a state");
    if (emit_svg && out_path.empty()) bad("--svg requires --out");
  }
};

// ---------------------------------------------------------------------------
// Output

/// 17 significant digits, independent of the C locale.
inline std::string format_double(double x) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x, std::chars_format::general, 17);
  return std::string(buf.data(), res.ptr);
}

inline double parse_double(std::string_view s) {
  double v = 0.0;
  if (std::from_chars(s.data(), s.data() + s.size(), v).ec != std::errc{}) {
    throw Error(ErrorKind::InvalidConfig, "not a number: " + std::string(s));
  }
  return v;
}

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

  void add_row(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

  const std::vector<std::string>& header() const noexcept { return header_; }
  const std::vector<std::vector<std::string>>& rows() const noexcept { return rows_; }

  /// Numeric column, skipping entries that do not parse.
  std::vector<double> column(std::string_view name) const {
    const auto it = std::find(header_.begin(), header_.end(), name);
    if (it == header_.end()) return {};
    const auto idx = static_cast<std::size_t>(it - header_.begin());
    std::vector<double> out;
    for (const auto& r : rows_) {
      double v = 0.0;
      const auto& s = r[idx];
      if (std::from_chars(s.data(), s.data() + s.size(), v).ec == std::errc{}) out.push_back(v);
    }
    return out;
  }

  void write(std::ostream& os) const {
    write_line(os, header_);
    for (const auto& r : rows_) write_line(os, r);
  }

 private:
  static void write_line(std::ostream& os, const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) os << ',';
      os << cells[i];
    }
    os << '\n';
  }

  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

struct SvgSeries {
  std::string label;
  std::vector<double> y;
};

/// Minimal self-contained line chart.
inline std::string render_svg(const std::string& title, const std::string& x_label, const std::vector<double>& x,
                              const std::vector<SvgSeries>& series) {
  constexpr double kW = 640, kH = 420, kLeft = 70, kRight = 170, kTop = 40, kBottom = 60;
  const double pw = kW - kLeft - kRight, ph = kH - kTop - kBottom;
  double xmin = x.empty() ? 0.0 : *std::min_element(x.begin(), x.end());
  double xmax = x.empty() ? 1.0 : *std::max_element(x.begin(), x.end());
  double ymin = 0.0, ymax = 0.0;
  for (const auto& s : series)
    for (double v : s.y) {
      ymin = std::min(ymin, v);
      ymax = std::max(ymax, v);
    }
  if (xmax <= xmin) xmax = xmin + 1.0;
  if (ymax <= ymin) ymax = ymin + 1.0;
  auto sx = [&](double v) { return kLeft + (v - xmin) / (xmax - xmin) * pw; };
  auto sy = [&](double v) { return kTop + ph - (v - ymin) / (ymax - ymin) * ph; };
  static constexpr std::array<const char*, 6> kColors{"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                                       "#8c564b"};

  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << kW / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" << title << "</text>\n";
  os << "<line x1=\"" << kLeft << "\" y1=\"" << kTop + ph << "\" x2=\"" << kLeft + pw << "\" y2=\"" << kTop + ph
     << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\"" << kTop + ph
     << "\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double xv = xmin + (xmax - xmin) * k / 4.0;
    const double yv = ymin + (ymax - ymin) * k / 4.0;
    os << "<text x=\"" << sx(xv) << "\" y=\"" << kTop + ph + 18 << "\" text-anchor=\"middle\" font-size=\"11\">"
       << format_double(std::round(xv * 1000.0) / 1000.0) << "</text>\n";
    os << "<text x=\"" << kLeft - 6 << "\" y=\"" << sy(yv) + 4 << "\" text-anchor=\"end\" font-size=\"11\">"
       << format_double(std::round(yv * 1000.0) / 1000.0) << "</text>\n";
  }
  os << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kH - 15 << "\" text-anchor=\"middle\" font-size=\"13\">"
     << x_label << "</text>\n";
  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = kColors[s % kColors.size()];
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < std::min(x.size(), series[s].y.size()); ++i) {
      os << (i ? " " : "") << sx(x[i]) << ',' << sy(series[s].y[i]);
    }
    os << "\"/>\n";
    const double ly = kTop + 10 + 20.0 * static_cast<double>(s);
    os << "<line x1=\"" << kLeft + pw + 15 << "\" y1=\"" << ly << "\" x2=\"" << kLeft + pw + 35 << "\" y2=\"" << ly
       << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    os << "<text x=\"" << kLeft + pw + 40 << "\" y=\"" << ly + 4 << "\" font-size=\"12\">" << series[s].label
       << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::IoFailure, "cannot open " + path);
  f << text;
  if (!f) throw Error(ErrorKind::IoFailure, "write failed for " + path);
}

inline std::string svg_path_for(const std::string& csv_path) {
  const auto dot = csv_path.find_last_of('.');
  const auto slash = csv_path.find_last_of('/');
  if (dot != std::string::npos && (slash == std::string::npos || dot > slash)) return csv_path.substr(0, dot) + ".svg";
  return csv_path + ".svg";
}

// ---------------------------------------------------------------------------
// Dynamics

/// OU-dephased trajectory of a Bell-diagonal initial state.
inline Trajectory ou_trajectory(const BellDiagonalParams& c0, const OuParams& p, double t_end) {
  const DensityMatrix rho0 = bell_diagonal(c0);
  return {[rho0, p](double t) { return ou_kraus(t, p).apply(rho0); }, 0.0, t_end};
}

inline CsvTable run_dynamics(const ExperimentConfig& cfg) {
  cfg.validate();
  const OuParams p{cfg.big_gamma, cfg.gamma};
  const Trajectory traj = ou_trajectory(cfg.initial_c, p, cfg.t_max);
  CsvTable table({"t", "f_t", "c1_t", "c2_t", "c3_t", "concurrence", "affinity_discord", "hs_discord"});
  for (std::size_t k = 0; k <= cfg.steps; ++k) {
    const double t = cfg.t_max * static_cast<double>(k) / static_cast<double>(cfg.steps);
    const DensityMatrix rho = traj(t);
    const BellDiagonalParams c = bell_coefficients(rho);
    table.add_row({format_double(t), format_double(ou_f(t, p)), format_double(c.c1), format_double(c.c2),
                   format_double(c.c3), format_double(concurrence(rho)),
                   format_double(affinity_discord_closed(rho).value), format_double(hs_discord(rho))});
  }
  return table;
}

// ---------------------------------------------------------------------------
// Speed-limit sweeps

inline std::vector<QslMode> selected_modes(ModeSelection m) {
  switch (m) {
    case ModeSelection::Decay: return {QslMode::Decay};
    case ModeSelection::Creation: return {QslMode::Creation};
    case ModeSelection::Both: return {QslMode::Decay, QslMode::Creation};
  }
  return {};
}

/// Decay: the forward OU segment [0, tau]. Creation: the same samples in
/// reverse, starting from rho_tau.
inline QslProfile ou_qsl_point(const BellDiagonalParams& c0, const OuParams& p, double tau, QslMode mode,
                               std::size_t n_steps = 200) {
  const Trajectory forward = ou_trajectory(c0, p, tau);
  if (mode == QslMode::Decay) return tau_qsl(forward(0.0), forward, tau, mode, n_steps);
  const Trajectory backward = forward.reversed();
  return tau_qsl(backward(0.0), backward, tau, mode, n_steps);
}

inline CsvTable run_qsl(const ExperimentConfig& cfg) {
  cfg.validate();
  CsvTable table({"tau", "Gamma", "gamma", "mode", "delta_q", "lambda_op", "lambda_tr", "lambda_hs", "tau_qc"});
  const auto modes = selected_modes(cfg.mode);
  auto emit = [&](const QslProfile& q, double big_gamma) {
    table.add_row({format_double(q.tau), format_double(big_gamma), format_double(cfg.gamma),
                   std::string(to_string(q.mode)), format_double(q.delta_q), format_double(q.lambda_op),
                   format_double(q.lambda_tr), format_double(q.lambda_hs), format_double(q.tau_qc)});
  };
  if (cfg.sweep == Sweep::Time) {
    const OuParams p{cfg.big_gamma, cfg.gamma};
    for (QslMode m : modes)
      for (std::size_t k = 1; k <= cfg.steps; ++k) {
        const double tau = cfg.t_max * static_cast<double>(k) / static_cast<double>(cfg.steps);
        emit(ou_qsl_point(cfg.initial_c, p, tau, m), cfg.big_gamma);
      }
  } else {
    for (QslMode m : modes)
      for (std::size_t j = 0; j < cfg.coupling_n; ++j) {
        const double g = cfg.coupling_lo +
                         (cfg.coupling_hi - cfg.coupling_lo) * static_cast<double>(j) /
                             static_cast<double>(cfg.coupling_n - 1);
        emit(ou_qsl_point(cfg.initial_c, OuParams{g, cfg.gamma}, cfg.t_max, m), g);
      }
  }
  return table;
}

/// Chart of selected numeric columns against `x_column`, one polyline per
/// (column, mode) pair when a mode column is present.
inline std::string table_svg(const CsvTable& table, const std::string& title, const std::string& x_column,
                             const std::vector<std::string>& y_columns) {
  const auto& hdr = table.header();
  const auto find = [&](std::string_view n) {
    return static_cast<std::size_t>(std::find(hdr.begin(), hdr.end(), n) - hdr.begin());
  };
  const std::size_t xi = find(x_column);
  const std::size_t mi = find("mode");
  std::vector<std::string> groups;
  for (const auto& r : table.rows()) {
    const std::string g = mi < hdr.size() ? r[mi] : "";
    if (std::find(groups.begin(), groups.end(), g) == groups.end()) groups.push_back(g);
  }
  std::vector<double> x;
  std::vector<SvgSeries> series;
  for (const auto& g : groups) {
    std::vector<double> gx;
    for (const auto& yc : y_columns) {
      const std::size_t yi = find(yc);
      SvgSeries s{g.empty() ? yc : yc + " (" + g + ")", {}};
      gx.clear();
      for (const auto& r : table.rows()) {
        if (mi < hdr.size() && r[mi] != g) continue;
        gx.push_back(parse_double(r[xi]));
        s.y.push_back(parse_double(r[yi]));
      }
      series.push_back(std::move(s));
    }
    if (x.empty()) x = gx;
  }
  return render_svg(title, x_column, x, series);
}

}  // namespace aqsl
