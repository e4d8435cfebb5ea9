#pragma once

// File emission helpers for the CLI: CSV tables, self-contained SVG line
// plots, and the per-invocation run manifest.

#include <array>
#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "estgame/simulator.hpp"
#include "estgame/sweep.hpp"

namespace estgame_cli {

inline constexpr const char* kToolVersion = "0.1.0";

// Shortest decimal representation that round-trips to the same double.
inline std::string fmt_double(double v) {
  std::array<char, 64> buf;
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

inline std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out)
    throw std::runtime_error("cannot write to '" + path.string() + "'");
  return out;
}

// sweep table: one row per p1, the argmin row's region tagged with '*'.
inline void write_sweep_csv(const std::filesystem::path& path,
                            const estgame::SweepResult& sweep) {
  std::ofstream out = open_for_write(path);
  out << "p1,br_p2,j1,region\n";
  for (std::size_t i = 0; i < sweep.rows.size(); ++i) {
    const estgame::SweepRow& row = sweep.rows[i];
    out << fmt_double(row.p1) << ',' << fmt_double(row.br_p2) << ','
        << fmt_double(row.j1.value) << ',' << to_string(row.region)
        << (i == sweep.argmin ? "*" : "") << '\n';
  }
}

// simulate table: shared-age histogram plus player 1's conditional error.
inline void write_simulate_csv(const std::filesystem::path& path,
                               const estgame::SimResult& result) {
  std::ofstream out = open_for_write(path);
  out << "age,probability,empirical_cond_error\n";
  for (int age = 0; age <= result.age_cap; ++age)
    out << age << ',' << fmt_double(result.age_histogram[age]) << ','
        << fmt_double(result.cond_error_by_age[age]) << '\n';
}

struct VerifyRow {
  double k1, k2;
  double analytic_p1, analytic_p2;
  double grid_p1, grid_p2;
  double cost_gap;
  bool pass;
};

inline void write_verify_csv(const std::filesystem::path& path,
                             const std::vector<VerifyRow>& rows) {
  std::ofstream out = open_for_write(path);
  out << "k1,k2,analytic_p1,analytic_p2,grid_p1,grid_p2,cost_gap,pass\n";
  for (const VerifyRow& r : rows)
    out << fmt_double(r.k1) << ',' << fmt_double(r.k2) << ','
        << fmt_double(r.analytic_p1) << ',' << fmt_double(r.analytic_p2) << ','
        << fmt_double(r.grid_p1) << ',' << fmt_double(r.grid_p2) << ','
        << fmt_double(r.cost_gap) << ',' << (r.pass ? 1 : 0) << '\n';
}

// Static line plot of the reduced leader objective with the argmin marked.
// Non-finite values (divergent costs at p1 = 0) are skipped.
inline void write_sweep_svg(const std::filesystem::path& path,
                            const estgame::SweepResult& sweep,
                            const std::string& title) {
  constexpr double kWidth = 640.0, kHeight = 480.0, kMargin = 56.0;

  std::vector<std::pair<double, double>> points;
  points.reserve(sweep.rows.size());
  for (const estgame::SweepRow& row : sweep.rows)
    if (row.j1.is_finite()) points.emplace_back(row.p1, row.j1.value);

  double y_min = 0.0, y_max = 1.0;
  if (!points.empty()) {
    y_min = y_max = points.front().second;
    for (const auto& [x, y] : points) {
      y_min = std::min(y_min, y);
      y_max = std::max(y_max, y);
    }
  }
  if (y_max - y_min < 1e-12) {
    y_min -= 1.0;
    y_max += 1.0;
  }
  const double pad = 0.05 * (y_max - y_min);
  y_min -= pad;
  y_max += pad;

  const auto sx = [&](double p1) {
    return kMargin + p1 * (kWidth - 2.0 * kMargin);
  };
  const auto sy = [&](double j1) {
    return kHeight - kMargin -
           (j1 - y_min) / (y_max - y_min) * (kHeight - 2.0 * kMargin);
  };

  std::ofstream out = open_for_write(path);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' '
      << kHeight << "\">\n";
  out << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "  <text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"15\">"
      << title << "</text>\n";
  // axes
  out << "  <line x1=\"" << kMargin << "\" y1=\"" << kHeight - kMargin
      << "\" x2=\"" << kWidth - kMargin << "\" y2=\"" << kHeight - kMargin
      << "\" stroke=\"black\"/>\n";
  out << "  <line x1=\"" << kMargin << "\" y1=\"" << kMargin << "\" x2=\""
      << kMargin << "\" y2=\"" << kHeight - kMargin
      << "\" stroke=\"black\"/>\n";
  for (double tick : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    out << "  <text x=\"" << sx(tick) << "\" y=\"" << kHeight - kMargin + 18
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"11\">"
        << fmt_double(tick) << "</text>\n";
  }
  for (double frac : {0.0, 0.5, 1.0}) {
    const double y = y_min + frac * (y_max - y_min);
    out << "  <text x=\"" << kMargin - 6 << "\" y=\"" << sy(y) + 4
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
           "font-size=\"11\">"
        << fmt_double(0.001 * std::round(1000.0 * y)) << "</text>\n";
  }
  out << "  <text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 12
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"13\">p1</text>\n";
  out << "  <text x=\"16\" y=\"" << kHeight / 2
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"13\" transform=\"rotate(-90 16 "
      << kHeight / 2 << ")\">J1</text>\n";
  if (!points.empty()) {
    out << "  <polyline fill=\"none\" stroke=\"#1f6fb2\" stroke-width=\"1.5\" "
           "points=\"";
    for (const auto& [x, y] : points) out << sx(x) << ',' << sy(y) << ' ';
    out << "\"/>\n";
  }
  const estgame::SweepRow& best = sweep.rows[sweep.argmin];
  if (best.j1.is_finite()) {
    out << "  <circle cx=\"" << sx(best.p1) << "\" cy=\"" << sy(best.j1.value)
        << "\" r=\"5\" fill=\"#c0392b\"/>\n";
    out << "  <text x=\"" << sx(best.p1) + 8 << "\" y=\""
        << sy(best.j1.value) - 8
        << "\" font-family=\"sans-serif\" font-size=\"11\">SE</text>\n";
  }
  out << "</svg>\n";
}

// Every invocation that writes files records exactly one of these.
struct Manifest {
  std::string command;
  nlohmann::json inputs;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> outputs;
};

inline void write_manifest(const std::filesystem::path& path,
                           const Manifest& manifest) {
  nlohmann::json doc;
  doc["command"] = manifest.command;
  doc["inputs"] = manifest.inputs;
  doc["seed"] = manifest.seed ? nlohmann::json(*manifest.seed)
                              : nlohmann::json(nullptr);
  doc["outputs"] = manifest.outputs;
  doc["tool_version"] = kToolVersion;
  std::ofstream out = open_for_write(path);
  out << doc.dump(2) << '\n';
}

// sweep.csv -> sweep.manifest.json, next to the primary output.
inline std::filesystem::path manifest_path_for(std::filesystem::path primary) {
  primary.replace_extension();
  primary += ".manifest.json";
  return primary;
}

}  // namespace estgame_cli
