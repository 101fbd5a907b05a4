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

#ifndef DBO_REPORT_HPP
#define DBO_REPORT_HPP

#include <optional>
#include <string>
#include <vector>

#include "dbo/experiment.hpp"

namespace dbo {

// Decimal form with 17 significant digits, which reads back to the same
// double. NaN is written as an empty field.
std::string format_number(double value);
double parse_number(const std::string& field);

// Traces: method,trial,eval_index,node_id,tick,x_0..x_{d-1},y,best_so_far,immediate_regret
std::string traces_csv(const std::vector<RegretTrace>& traces);
void write_traces_csv(const std::vector<RegretTrace>& traces, const std::string& path);
std::vector<RegretTrace> parse_traces_csv(const std::string& text);
std::vector<RegretTrace> read_traces_csv(const std::string& path);

// Summaries: method,eval_index,mean,median,ci_lo,ci_hi
std::string summary_csv(const Summary& summary);
void write_summary_csv(const Summary& summary, const std::string& path);
Summary parse_summary_csv(const std::string& text);
Summary read_summary_csv(const std::string& path);

struct PlotOptions {
  std::string title;
  std::string y_label;  // defaults from the summary metric
  // Log scale unless a value to plot is negative; nonpositive values are
  // drawn at the bottom of the axis.
  bool log_y = true;
  int width = 720;
  int height = 450;
};

std::string render_svg(const Summary& summary, const PlotOptions& options = {});
void write_svg(const Summary& summary, const std::string& path, const PlotOptions& options = {});

// Writes traces.csv, summary.csv and regret.svg into config.output_dir
// (created if needed) and returns the summary.
Summary write_outputs(const ExperimentResult& result, const ExperimentConfig& config);

// Reads a traces or summary CSV (detected from the header) and plots it.
void plot_csv(const std::string& csv_path, const std::string& svg_path, const PlotOptions& options = {},
              CiMethod ci = CiMethod::kNormal);

}  // namespace dbo

#endif  // DBO_REPORT_HPP
