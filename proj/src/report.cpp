// Copyright 2026 The Graphon Lab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "graphon/experiments.hpp"
#include "json.hpp"

namespace graphon {
namespace {

using nlohmann::json;

std::string fmt17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

const char* kind_name(SweepKind k) {
  return k == SweepKind::kTheorem ? "theorem" : "counterexample";
}

void write_file(const std::filesystem::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << body;
  out.close();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

}  // namespace

ReportFormat parse_report_format(std::string_view name) {
  if (name == "csv") return ReportFormat::kCsv;
  if (name == "json") return ReportFormat::kJson;
  if (name == "svg") return ReportFormat::kSvg;
  throw DomainError("unknown report format '" + std::string(name) +
                    "' (expected csv, json or svg)");
}

std::string report_csv(const ConvergenceReport& r, const EmitOptions& o) {
  std::string out =
      "n,l1_expected_vs_limit,l1_sampled_vs_limit,cutnorm_sampled_vs_limit,"
      "cut_exact";
  out += o.include_timing ? ",wall_time\n" : "\n";
  for (const SweepRow& row : r.rows) {
    out += std::to_string(row.n) + "," + fmt17(row.l1_expected_vs_limit) +
           "," + fmt17(row.l1_sampled_vs_limit) + "," +
           fmt17(row.cutnorm_sampled_vs_limit) + "," +
           (row.cut_exact ? "1" : "0");
    if (o.include_timing) out += "," + fmt17(row.wall_time);
    out += "\n";
  }
  return out;
}

std::string report_json(const ConvergenceReport& r, const EmitOptions& o) {
  json rows = json::array();
  for (const SweepRow& row : r.rows) {
    json j = {
        {"n", row.n},
        {"l1_expected_vs_limit", row.l1_expected_vs_limit},
        {"l1_sampled_vs_limit", row.l1_sampled_vs_limit},
        {"cutnorm_sampled_vs_limit", row.cutnorm_sampled_vs_limit},
        {"cut_exact", row.cut_exact},
        {"draw_l1", row.draw_l1},
        {"draw_cut", row.draw_cut},
    };
    if (o.include_timing) j["wall_time"] = row.wall_time;
    rows.push_back(std::move(j));
  }
  json doc = {
      {"kind", kind_name(r.kind)},
      {"graphon", r.label},
      {"k", r.k},
      {"seed", r.seed},
      {"draws_per_n", r.draws_per_n},
      {"quadrature",
       {{"base_grid", r.quadrature.base_grid},
        {"max_refinements", r.quadrature.max_refinements},
        {"tol", r.quadrature.tol}}},
      {"complete", r.complete},
      {"error", r.error},
      {"rows", std::move(rows)},
  };
  return doc.dump(2) + "\n";
}

ConvergenceReport report_from_json(std::string_view text) {
  try {
    const json doc = json::parse(text);
    ConvergenceReport r;
    const std::string kind = doc.at("kind").get<std::string>();
    if (kind == "theorem") {
      r.kind = SweepKind::kTheorem;
    } else if (kind == "counterexample") {
      r.kind = SweepKind::kCounterexample;
    } else {
      throw FormatError("unknown report kind '" + kind + "'", 0);
    }
    r.label = doc.at("graphon").get<std::string>();
    r.k = doc.at("k").get<int>();
    r.seed = doc.at("seed").get<std::uint64_t>();
    r.draws_per_n = doc.at("draws_per_n").get<Index>();
    const json& q = doc.at("quadrature");
    r.quadrature.base_grid = q.at("base_grid").get<Index>();
    r.quadrature.max_refinements = q.at("max_refinements").get<int>();
    r.quadrature.tol = q.at("tol").get<double>();
    r.complete = doc.at("complete").get<bool>();
    r.error = doc.at("error").get<std::string>();
    for (const json& j : doc.at("rows")) {
      SweepRow row;
      row.n = j.at("n").get<Index>();
      row.l1_expected_vs_limit = j.at("l1_expected_vs_limit").get<double>();
      row.l1_sampled_vs_limit = j.at("l1_sampled_vs_limit").get<double>();
      row.cutnorm_sampled_vs_limit =
          j.at("cutnorm_sampled_vs_limit").get<double>();
      row.cut_exact = j.at("cut_exact").get<bool>();
      row.wall_time = j.value("wall_time", 0.0);
      row.draw_l1 = j.at("draw_l1").get<std::vector<double>>();
      row.draw_cut = j.at("draw_cut").get<std::vector<double>>();
      r.rows.push_back(std::move(row));
    }
    r.validate();
    return r;
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed report JSON: ") + e.what(), 0);
  }
}

std::string report_svg(const ConvergenceReport& r) {
  constexpr double kWidth = 640;
  constexpr double kHeight = 420;
  constexpr double kLeft = 70;
  constexpr double kRight = 170;
  constexpr double kTop = 40;
  constexpr double kBottom = 50;

  struct Series {
    const char* name;
    const char* color;
    double SweepRow::*field;
  };
  const Series series[] = {
      {"L1 expected", "#1f77b4", &SweepRow::l1_expected_vs_limit},
      {"L1 sampled", "#d62728", &SweepRow::l1_sampled_vs_limit},
      {"cut sampled", "#2ca02c", &SweepRow::cutnorm_sampled_vs_limit},
  };

  double xmin = std::numeric_limits<double>::infinity();
  double xmax = -xmin;
  double ymin = xmin;
  double ymax = -xmin;
  for (const SweepRow& row : r.rows) {
    xmin = std::min(xmin, std::log10(static_cast<double>(row.n)));
    xmax = std::max(xmax, std::log10(static_cast<double>(row.n)));
    for (const Series& s : series) {
      const double v = row.*s.field;
      if (v > 0) {
        ymin = std::min(ymin, std::log10(v));
        ymax = std::max(ymax, std::log10(v));
      }
    }
  }
  // Reference slope -1 through the first expected-distance point.
  double ref_anchor = 0;
  if (!r.rows.empty() && r.rows.front().l1_expected_vs_limit > 0) {
    ref_anchor = r.rows.front().l1_expected_vs_limit *
                 static_cast<double>(r.rows.front().n);
    for (const SweepRow& row : r.rows) {
      const double v = std::log10(ref_anchor / static_cast<double>(row.n));
      ymin = std::min(ymin, v);
      ymax = std::max(ymax, v);
    }
  }
  if (!std::isfinite(xmin)) xmin = 0, xmax = 1;
  if (!std::isfinite(ymin)) ymin = -1, ymax = 0;
  if (xmax - xmin < 1e-9) xmin -= 0.5, xmax += 0.5;
  ymin = std::floor(ymin);
  ymax = std::ceil(ymax);
  if (ymax - ymin < 1) ymax = ymin + 1;

  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto px = [&](double n) {
    return kLeft + (std::log10(n) - xmin) / (xmax - xmin) * pw;
  };
  auto py = [&](double v) {
    return kTop + (ymax - std::log10(v)) / (ymax - ymin) * ph;
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " "
      << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << kLeft << "\" y=\"22\" font-size=\"14\">"
      << kind_name(r.kind) << " sweep: " << r.label << ", k = " << r.k
      << "</text>\n";
  svg << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw
      << "\" height=\"" << ph << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (double e = ymin; e <= ymax + 1e-9; e += 1) {
    const double y = py(std::pow(10.0, e));
    svg << "<line x1=\"" << kLeft << "\" y1=\"" << y << "\" x2=\""
        << kLeft + pw << "\" y2=\"" << y << "\" stroke=\"#ddd\"/>\n";
    svg << "<text x=\"" << kLeft - 6 << "\" y=\"" << y + 4
        << "\" text-anchor=\"end\">1e" << static_cast<int>(e) << "</text>\n";
  }
  for (const SweepRow& row : r.rows) {
    const double x = px(static_cast<double>(row.n));
    svg << "<text x=\"" << x << "\" y=\"" << kTop + ph + 18
        << "\" text-anchor=\"middle\">" << row.n << "</text>\n";
  }
  svg << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kHeight - 12
      << "\" text-anchor=\"middle\">n (log scale)</text>\n";

  double legend_y = kTop + 10;
  auto legend = [&](const char* name, const char* color, bool dashed) {
    svg << "<line x1=\"" << kLeft + pw + 15 << "\" y1=\"" << legend_y
        << "\" x2=\"" << kLeft + pw + 40 << "\" y2=\"" << legend_y
        << "\" stroke=\"" << color << "\" stroke-width=\"2\""
        << (dashed ? " stroke-dasharray=\"5,4\"" : "") << "/>\n";
    svg << "<text x=\"" << kLeft + pw + 46 << "\" y=\"" << legend_y + 4
        << "\">" << name << "</text>\n";
    legend_y += 20;
  };

  for (const Series& s : series) {
    std::string points;
    for (const SweepRow& row : r.rows) {
      const double v = row.*s.field;
      if (!(v > 0)) continue;
      points += fmt("%.2f,", px(static_cast<double>(row.n))) +
                fmt("%.2f ", py(v));
    }
    if (points.empty()) continue;
    svg << "<polyline fill=\"none\" stroke=\"" << s.color
        << "\" stroke-width=\"2\" points=\"" << points << "\"/>\n";
    for (const SweepRow& row : r.rows) {
      const double v = row.*s.field;
      if (!(v > 0)) continue;
      svg << "<circle cx=\"" << fmt("%.2f", px(static_cast<double>(row.n)))
          << "\" cy=\"" << fmt("%.2f", py(v)) << "\" r=\"3\" fill=\""
          << s.color << "\"/>\n";
    }
    legend(s.name, s.color, false);
  }
  if (ref_anchor > 0 && r.rows.size() > 1) {
    const double n0 = static_cast<double>(r.rows.front().n);
    const double n1 = static_cast<double>(r.rows.back().n);
    svg << "<line x1=\"" << fmt("%.2f", px(n0)) << "\" y1=\""
        << fmt("%.2f", py(ref_anchor / n0)) << "\" x2=\"" << fmt("%.2f", px(n1))
        << "\" y2=\"" << fmt("%.2f", py(ref_anchor / n1))
        << "\" stroke=\"#555\" stroke-dasharray=\"5,4\"/>\n";
    legend("1/n reference", "#555", true);
  }
  svg << "</svg>\n";
  return svg.str();
}

std::vector<std::filesystem::path> emit_report(
    const ConvergenceReport& r, const std::set<ReportFormat>& formats,
    const std::filesystem::path& base, const EmitOptions& o) {
  if (r.rows.empty()) throw Error("empty sweep");
  std::vector<std::filesystem::path> written;
  if (base.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(base.parent_path(), ec);
    if (ec) {
      throw IoError("cannot create '" + base.parent_path().string() +
                    "': " + ec.message());
    }
  }
  for (ReportFormat f : formats) {
    std::filesystem::path path = base;
    switch (f) {
      case ReportFormat::kCsv:
        path += ".csv";
        write_file(path, report_csv(r, o));
        break;
      case ReportFormat::kJson:
        path += ".json";
        write_file(path, report_json(r, o));
        break;
      case ReportFormat::kSvg:
        path += ".svg";
        write_file(path, report_svg(r));
        break;
    }
    written.push_back(path);
  }
  return written;
}

}  // namespace graphon
