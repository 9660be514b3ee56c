#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "nbf/eval/experiment.hpp"

namespace nbf {

// Pr / Re / F1 as percentages with two decimals, e.g. "93.62 / 92.02 / 92.67".
std::string format_cell(const MeanMetrics& m);
std::string format_percent(double fraction);

struct SummaryRow {
  std::string kind;
  std::size_t buggy = 0;
  std::size_t non_buggy = 0;
  std::vector<std::optional<MeanMetrics>> cells;  // one per summary setup
};

struct Summary {
  std::vector<Setup> setups;  // canonical order, only those present
  std::vector<SummaryRow> rows;
  std::vector<std::optional<MeanMetrics>> median;
};

// Lower middle value for even counts.
double median_of(std::vector<double> values);

// One row per kind (ordered by descending buggy count, then name) with a
// median row per setup column.
Summary summarize(const std::vector<ExperimentReport>& reports);

void write_summary_text(std::ostream& out, const Summary& summary);
void write_report_csv(std::ostream& out, const Summary& summary);
void write_repetitions_csv(std::ostream& out, const std::vector<ExperimentReport>& reports);
// Buggy-example count against precision/recall, one line per kind and setup.
void write_scatter_csv(std::ostream& out, const std::vector<ExperimentReport>& reports);
std::string reports_to_json(const std::vector<ExperimentReport>& reports, const Summary& summary);

}  // namespace nbf
