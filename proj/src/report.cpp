// Copyright 2026 The dbo Authors. All Rights Reserved.
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
// =============================================================================

#include "dbo/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "dbo/error.hpp"

namespace dbo {

std::string format_number(double value) {
  if (std::isnan(value)) return "";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

double parse_number(const std::string& field) {
  if (field.empty()) return std::numeric_limits<double>::quiet_NaN();
  double v = 0.0;
  const char* first = field.data();
  const char* last = first + field.size();
  auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc() || res.ptr != last) throw InvalidArgument("csv: bad number '" + field + "'");
  return v;
}

namespace {

void check_name(const std::string& name) {
  if (name.empty() || name.find_first_of(",\"\n\r") != std::string::npos) {
    throw InvalidArgument("csv: method name '" + name + "' is empty or contains a separator");
  }
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  for (char c : line) {
    if (c == ',') {
      out.push_back(std::move(field));
      field.clear();
    } else if (c != '\r') {
      field.push_back(c);
    }
  }
  out.push_back(std::move(field));
  return out;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line != "\r") out.push_back(line);
  }
  return out;
}

template <typename T>
T parse_int(const std::string& field) {
  T v{};
  auto res = std::from_chars(field.data(), field.data() + field.size(), v);
  if (res.ec != std::errc() || res.ptr != field.data() + field.size()) {
    throw InvalidArgument("csv: bad integer '" + field + "'");
  }
  return v;
}

// Writes `content` to `path` only when it is complete.
void write_file(const std::string& path, const std::string& content) {
  std::filesystem::path p(path);
  if (p.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(p.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << content;
  out.close();
  if (!out) throw IoError("failed writing '" + path + "'");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::string traces_csv(const std::vector<RegretTrace>& traces) {
  if (traces.empty()) throw InvalidArgument("no traces to write");
  std::size_t dim = 0;
  bool have_dim = false;
  for (const auto& t : traces) {
    check_name(t.method);
    for (const auto& r : t.rows) {
      if (have_dim && r.x.size() != dim) throw InvalidArgument("traces have mixed dimensions");
      dim = r.x.size();
      have_dim = true;
    }
  }
  std::string out = "method,trial,eval_index,node_id,tick";
  for (std::size_t j = 0; j < dim; ++j) out += ",x_" + std::to_string(j);
  out += ",y,best_so_far,immediate_regret\n";
  for (const auto& t : traces) {
    for (const auto& r : t.rows) {
      out += t.method + ',' + std::to_string(t.trial) + ',' + std::to_string(r.eval_index) + ',' +
             std::to_string(r.node_id) + ',' + std::to_string(r.tick);
      for (double v : r.x) out += ',' + format_number(v);
      out += ',' + format_number(r.y) + ',' + format_number(r.best_so_far) + ',' +
             format_number(r.immediate_regret) + '\n';
    }
  }
  return out;
}

void write_traces_csv(const std::vector<RegretTrace>& traces, const std::string& path) {
  write_file(path, traces_csv(traces));
}

std::vector<RegretTrace> parse_traces_csv(const std::string& text) {
  auto lines = lines_of(text);
  if (lines.empty()) throw InvalidArgument("traces csv: empty");
  auto header = split(lines[0]);
  if (header.size() < 8 || header[0] != "method" || header[1] != "trial" || header[2] != "eval_index" ||
      header[3] != "node_id" || header[4] != "tick" || header[header.size() - 3] != "y" ||
      header[header.size() - 2] != "best_so_far" || header.back() != "immediate_regret") {
    throw InvalidArgument("traces csv: unexpected header");
  }
  const std::size_t dim = header.size() - 8;
  for (std::size_t j = 0; j < dim; ++j) {
    if (header[5 + j] != "x_" + std::to_string(j)) throw InvalidArgument("traces csv: unexpected header");
  }
  std::vector<RegretTrace> out;
  std::map<std::pair<std::string, std::size_t>, std::size_t> where;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto f = split(lines[i]);
    if (f.size() != header.size()) throw InvalidArgument("traces csv: line " + std::to_string(i + 1) + " has wrong width");
    const auto trial = parse_int<std::size_t>(f[1]);
    auto key = std::make_pair(f[0], trial);
    auto it = where.find(key);
    if (it == where.end()) {
      it = where.emplace(key, out.size()).first;
      RegretTrace t;
      t.method = f[0];
      t.trial = trial;
      out.push_back(std::move(t));
    }
    TraceRow row;
    row.eval_index = parse_int<std::size_t>(f[2]);
    row.node_id = parse_int<std::uint64_t>(f[3]);
    row.tick = parse_int<std::int64_t>(f[4]);
    for (std::size_t j = 0; j < dim; ++j) row.x.push_back(parse_number(f[5 + j]));
    row.y = parse_number(f[5 + dim]);
    row.best_so_far = parse_number(f[6 + dim]);
    row.immediate_regret = parse_number(f[7 + dim]);
    out[it->second].rows.push_back(std::move(row));
  }
  return out;
}

std::vector<RegretTrace> read_traces_csv(const std::string& path) { return parse_traces_csv(read_file(path)); }

std::string summary_csv(const Summary& summary) {
  if (summary.rows.empty()) throw InvalidArgument("no summary rows to write");
  std::string out = "method,eval_index,mean,median,ci_lo,ci_hi\n";
  for (const auto& r : summary.rows) {
    check_name(r.method);
    out += r.method + ',' + std::to_string(r.eval_index) + ',' + format_number(r.mean) + ',' +
           format_number(r.median) + ',' + format_number(r.ci_lo) + ',' + format_number(r.ci_hi) + '\n';
  }
  return out;
}

void write_summary_csv(const Summary& summary, const std::string& path) {
  write_file(path, summary_csv(summary));
}

Summary parse_summary_csv(const std::string& text) {
  auto lines = lines_of(text);
  if (lines.empty() || lines[0] != "method,eval_index,mean,median,ci_lo,ci_hi") {
    throw InvalidArgument("summary csv: unexpected header");
  }
  Summary s;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto f = split(lines[i]);
    if (f.size() != 6) throw InvalidArgument("summary csv: line " + std::to_string(i + 1) + " has wrong width");
    SummaryRow r;
    r.method = f[0];
    r.eval_index = parse_int<std::size_t>(f[1]);
    r.mean = parse_number(f[2]);
    r.median = parse_number(f[3]);
    r.ci_lo = parse_number(f[4]);
    r.ci_hi = parse_number(f[5]);
    s.rows.push_back(std::move(r));
  }
  return s;
}

Summary read_summary_csv(const std::string& path) { return parse_summary_csv(read_file(path)); }

// ---------------------------------------------------------------------------
// SVG

namespace {

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

// Round step for about `target` intervals over [lo, hi].
double nice_step(double lo, double hi, int target) {
  double raw = (hi - lo) / target;
  if (!(raw > 0.0)) return 1.0;
  double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    if (m * mag >= raw) return m * mag;
  }
  return 10.0 * mag;
}

}  // namespace

std::string render_svg(const Summary& summary, const PlotOptions& options) {
  if (summary.rows.empty()) throw InvalidArgument("plot: empty summary");
  std::vector<std::string> methods;
  std::map<std::string, std::vector<const SummaryRow*>> series;
  for (const auto& r : summary.rows) {
    if (!series.count(r.method)) methods.push_back(r.method);
    series[r.method].push_back(&r);
  }
  for (auto& [m, rows] : series) {
    std::stable_sort(rows.begin(), rows.end(),
                     [](const SummaryRow* a, const SummaryRow* b) { return a->eval_index < b->eval_index; });
  }

  double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
  double v_lo = std::numeric_limits<double>::infinity(), v_hi = -v_lo;
  double pos_lo = std::numeric_limits<double>::infinity();
  bool negative = false;
  for (const auto& r : summary.rows) {
    x_lo = std::min(x_lo, static_cast<double>(r.eval_index));
    x_hi = std::max(x_hi, static_cast<double>(r.eval_index));
    for (double v : {r.mean, r.ci_lo, r.ci_hi}) {
      if (!std::isfinite(v)) continue;
      v_lo = std::min(v_lo, v);
      v_hi = std::max(v_hi, v);
      if (v > 0.0) pos_lo = std::min(pos_lo, v);
    }
    if (r.mean < 0.0) negative = true;
  }
  if (x_hi <= x_lo) x_hi = x_lo + 1.0;
  const bool log_y = options.log_y && !negative;

  double y_lo, y_hi;
  if (log_y) {
    if (!std::isfinite(pos_lo)) pos_lo = 1e-12;
    y_lo = std::floor(std::log10(pos_lo));
    y_hi = std::ceil(std::log10(std::max(v_hi, pos_lo)));
    if (y_hi <= y_lo) y_hi = y_lo + 1.0;
  } else {
    if (!std::isfinite(v_lo)) v_lo = 0.0, v_hi = 1.0;
    if (v_hi <= v_lo) v_hi = v_lo + 1.0;
    double step = nice_step(v_lo, v_hi, 5);
    y_lo = std::floor(v_lo / step) * step;
    y_hi = std::ceil(v_hi / step) * step;
  }

  const double W = options.width, H = options.height;
  const double left = 70, right = 160, top = 40, bottom = 50;
  const double pw = W - left - right, ph = H - top - bottom;
  auto px = [&](double x) { return left + (x - x_lo) / (x_hi - x_lo) * pw; };
  auto py = [&](double v) {
    double t;
    if (log_y) {
      t = v > 0.0 ? std::log10(v) : y_lo;
    } else {
      t = v;
    }
    t = std::clamp(t, y_lo, y_hi);
    return top + (1.0 - (t - y_lo) / (y_hi - y_lo)) * ph;
  };

  std::string ylabel = options.y_label;
  if (ylabel.empty()) ylabel = summary.metric == "best_so_far" ? "best value" : "immediate regret";

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << options.width << "\" height=\""
    << options.height << "\" viewBox=\"0 0 " << options.width << ' ' << options.height << "\">\n";
  o << "<rect x=\"0\" y=\"0\" width=\"" << options.width << "\" height=\"" << options.height
    << "\" fill=\"white\"/>\n";
  if (!options.title.empty()) {
    o << "<text x=\"" << fmt(left + pw / 2) << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
      << "font-size=\"15\">" << escape(options.title) << "</text>\n";
  }
  // Grid and y ticks.
  o << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#333\">\n";
  if (log_y) {
    int decades = static_cast<int>(y_hi - y_lo);
    int stride = std::max(1, (decades + 7) / 8);
    for (int k = 0; k <= decades; k += stride) {
      double e = y_lo + k;
      double y = py(std::pow(10.0, e));
      o << "<line x1=\"" << fmt(left) << "\" y1=\"" << fmt(y) << "\" x2=\"" << fmt(left + pw) << "\" y2=\""
        << fmt(y) << "\" stroke=\"#ddd\"/>\n";
      o << "<text x=\"" << fmt(left - 6) << "\" y=\"" << fmt(y + 4) << "\" text-anchor=\"end\">1e"
        << static_cast<int>(e) << "</text>\n";
    }
  } else {
    double step = nice_step(y_lo, y_hi, 5);
    for (double v = y_lo; v <= y_hi + 0.5 * step; v += step) {
      double y = py(v);
      o << "<line x1=\"" << fmt(left) << "\" y1=\"" << fmt(y) << "\" x2=\"" << fmt(left + pw) << "\" y2=\""
        << fmt(y) << "\" stroke=\"#ddd\"/>\n";
      o << "<text x=\"" << fmt(left - 6) << "\" y=\"" << fmt(y + 4) << "\" text-anchor=\"end\">"
        << tick_label(std::abs(v) < 1e-12 * step ? 0.0 : v) << "</text>\n";
    }
  }
  double xstep = nice_step(x_lo, x_hi, 6);
  for (double v = std::ceil(x_lo / xstep) * xstep; v <= x_hi + 1e-9; v += xstep) {
    double x = px(v);
    o << "<line x1=\"" << fmt(x) << "\" y1=\"" << fmt(top + ph) << "\" x2=\"" << fmt(x) << "\" y2=\""
      << fmt(top + ph + 4) << "\" stroke=\"#333\"/>\n";
    o << "<text x=\"" << fmt(x) << "\" y=\"" << fmt(top + ph + 17) << "\" text-anchor=\"middle\">"
      << tick_label(v) << "</text>\n";
  }
  o << "<text x=\"" << fmt(left + pw / 2) << "\" y=\"" << fmt(H - 10)
    << "\" text-anchor=\"middle\" font-size=\"12\">function evaluations</text>\n";
  o << "<text transform=\"translate(16 " << fmt(top + ph / 2) << ") rotate(-90)\" text-anchor=\"middle\" "
    << "font-size=\"12\">" << escape(ylabel) << (log_y ? " (log scale)" : "") << "</text>\n";
  o << "</g>\n";
  o << "<rect x=\"" << fmt(left) << "\" y=\"" << fmt(top) << "\" width=\"" << fmt(pw) << "\" height=\""
    << fmt(ph) << "\" fill=\"none\" stroke=\"#333\"/>\n";

  for (std::size_t m = 0; m < methods.size(); ++m) {
    const char* color = kPalette[m % (sizeof(kPalette) / sizeof(kPalette[0]))];
    const auto& rows = series[methods[m]];
    o << "<g>\n<polygon fill=\"" << color << "\" fill-opacity=\"0.18\" stroke=\"none\" points=\"";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      o << (i ? " " : "") << fmt(px(rows[i]->eval_index)) << ',' << fmt(py(rows[i]->ci_hi));
    }
    for (std::size_t i = rows.size(); i-- > 0;) {
      o << ' ' << fmt(px(rows[i]->eval_index)) << ',' << fmt(py(rows[i]->ci_lo));
    }
    o << "\"/>\n<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.8\" points=\"";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      o << (i ? " " : "") << fmt(px(rows[i]->eval_index)) << ',' << fmt(py(rows[i]->mean));
    }
    o << "\"/>\n</g>\n";
    const double ly = top + 12 + 20.0 * static_cast<double>(m);
    o << "<line x1=\"" << fmt(left + pw + 12) << "\" y1=\"" << fmt(ly) << "\" x2=\"" << fmt(left + pw + 36)
      << "\" y2=\"" << fmt(ly) << "\" stroke=\"" << color << "\" stroke-width=\"3\"/>\n";
    o << "<text x=\"" << fmt(left + pw + 42) << "\" y=\"" << fmt(ly + 4)
      << "\" font-family=\"sans-serif\" font-size=\"12\">" << escape(methods[m]) << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

void write_svg(const Summary& summary, const std::string& path, const PlotOptions& options) {
  write_file(path, render_svg(summary, options));
}

Summary write_outputs(const ExperimentResult& result, const ExperimentConfig& config) {
  if (result.traces.empty()) throw InvalidArgument("experiment produced no traces");
  Summary summary = aggregate(result.traces, config.ci);
  const std::filesystem::path dir(config.output_dir);
  // Render everything before touching the disk.
  const std::string traces = traces_csv(result.traces);
  const std::string table = summary_csv(summary);
  PlotOptions options;
  options.title = config.objective;
  const std::string svg = render_svg(summary, options);
  write_file((dir / "traces.csv").string(), traces);
  write_file((dir / "summary.csv").string(), table);
  write_file((dir / "regret.svg").string(), svg);
  return summary;
}

void plot_csv(const std::string& csv_path, const std::string& svg_path, const PlotOptions& options, CiMethod ci) {
  const std::string text = read_file(csv_path);
  Summary summary;
  if (text.rfind("method,trial,", 0) == 0) {
    auto traces = parse_traces_csv(text);
    if (traces.empty()) throw InvalidArgument("plot: no traces in '" + csv_path + "'");
    summary = aggregate(traces, ci);
  } else {
    summary = parse_summary_csv(text);
  }
  write_svg(summary, svg_path, options);
}

}  // namespace dbo
