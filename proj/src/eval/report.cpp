#include "nbf/eval/report.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <ostream>

#include <nlohmann/json.hpp>

#include "nbf/error.hpp"

namespace nbf {

namespace {

std::size_t setup_rank(Setup s) {
  for (std::size_t i = 0; i < std::size(kAllSetups); ++i) {
    if (kAllSetups[i] == s) return i;
  }
  return std::size(kAllSetups);
}

std::string pad_right(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

std::string pad_left(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

}  // namespace

std::string format_percent(double fraction) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", fraction * 100.0);
  return buf;
}

std::string format_cell(const MeanMetrics& m) {
  return format_percent(m.precision) + " / " + format_percent(m.recall) + " / " +
         format_percent(m.f1);
}

double median_of(std::vector<double> values) {
  if (values.empty()) throw Error("median of an empty set");
  std::sort(values.begin(), values.end());
  return values[(values.size() - 1) / 2];
}

Summary summarize(const std::vector<ExperimentReport>& reports) {
  if (reports.empty()) throw Error("nothing to summarize");
  Summary out;
  for (const auto& r : reports) {
    if (std::find(out.setups.begin(), out.setups.end(), r.setup) == out.setups.end()) {
      out.setups.push_back(r.setup);
    }
  }
  std::sort(out.setups.begin(), out.setups.end(),
            [](Setup a, Setup b) { return setup_rank(a) < setup_rank(b); });

  std::map<std::string, SummaryRow> rows;
  for (const auto& r : reports) {
    SummaryRow& row = rows[r.kind];
    row.kind = r.kind;
    row.buggy = r.buggy;
    row.non_buggy = r.non_buggy;
    row.cells.resize(out.setups.size());
    const auto col = static_cast<std::size_t>(
        std::find(out.setups.begin(), out.setups.end(), r.setup) - out.setups.begin());
    row.cells[col] = r.mean;
  }
  for (auto& [kind, row] : rows) out.rows.push_back(std::move(row));
  std::stable_sort(out.rows.begin(), out.rows.end(),
                   [](const SummaryRow& a, const SummaryRow& b) { return a.buggy > b.buggy; });

  out.median.resize(out.setups.size());
  for (std::size_t col = 0; col < out.setups.size(); ++col) {
    std::vector<double> p, r, f;
    for (const auto& row : out.rows) {
      if (!row.cells[col]) continue;
      p.push_back(row.cells[col]->precision);
      r.push_back(row.cells[col]->recall);
      f.push_back(row.cells[col]->f1);
    }
    if (!p.empty()) out.median[col] = MeanMetrics{median_of(p), median_of(r), median_of(f)};
  }
  return out;
}

void write_summary_text(std::ostream& out, const Summary& summary) {
  std::vector<std::vector<std::string>> table;
  std::vector<std::string> header{"Warning", "Buggy", "nBuggy"};
  for (Setup s : summary.setups) header.push_back(std::string(to_string(s)) + " Pr / Re / F1");
  table.push_back(header);
  for (const auto& row : summary.rows) {
    std::vector<std::string> line{row.kind, std::to_string(row.buggy), std::to_string(row.non_buggy)};
    for (const auto& cell : row.cells) line.push_back(cell ? format_cell(*cell) : "-");
    table.push_back(std::move(line));
  }
  std::vector<std::string> median{"Median", "", ""};
  for (const auto& cell : summary.median) median.push_back(cell ? format_cell(*cell) : "-");
  table.push_back(std::move(median));

  std::vector<std::size_t> width(header.size(), 0);
  for (const auto& line : table) {
    for (std::size_t c = 0; c < line.size(); ++c) width[c] = std::max(width[c], line[c].size());
  }
  for (const auto& line : table) {
    for (std::size_t c = 0; c < line.size(); ++c) {
      if (c > 0) out << " | ";
      out << (c == 0 ? pad_right(line[c], width[c]) : pad_left(line[c], width[c]));
    }
    out << '\n';
  }
}

void write_report_csv(std::ostream& out, const Summary& summary) {
  out << "kind,buggy,non_buggy,setup,precision,recall,f1\n";
  for (const auto& row : summary.rows) {
    for (std::size_t c = 0; c < summary.setups.size(); ++c) {
      if (!row.cells[c]) continue;
      out << row.kind << ',' << row.buggy << ',' << row.non_buggy << ','
          << to_string(summary.setups[c]) << ',' << format_percent(row.cells[c]->precision) << ','
          << format_percent(row.cells[c]->recall) << ',' << format_percent(row.cells[c]->f1) << '\n';
    }
  }
  for (std::size_t c = 0; c < summary.setups.size(); ++c) {
    if (!summary.median[c]) continue;
    out << "Median,,," << to_string(summary.setups[c]) << ','
        << format_percent(summary.median[c]->precision) << ','
        << format_percent(summary.median[c]->recall) << ','
        << format_percent(summary.median[c]->f1) << '\n';
  }
}

void write_repetitions_csv(std::ostream& out, const std::vector<ExperimentReport>& reports) {
  out << "kind,setup,rep,tp,fp,tn,fn,precision,recall,f1\n";
  for (const auto& r : reports) {
    for (std::size_t i = 0; i < r.per_rep.size(); ++i) {
      const Metrics& m = r.per_rep[i];
      out << r.kind << ',' << to_string(r.setup) << ',' << i << ',' << m.tp << ',' << m.fp << ','
          << m.tn << ',' << m.fn << ',' << format_percent(m.precision) << ','
          << format_percent(m.recall) << ',' << format_percent(m.f1) << '\n';
    }
  }
}

void write_scatter_csv(std::ostream& out, const std::vector<ExperimentReport>& reports) {
  out << "kind,setup,buggy,precision,recall\n";
  for (const auto& r : reports) {
    out << r.kind << ',' << to_string(r.setup) << ',' << r.buggy << ','
        << format_percent(r.mean.precision) << ',' << format_percent(r.mean.recall) << '\n';
  }
}

std::string reports_to_json(const std::vector<ExperimentReport>& reports, const Summary& summary) {
  using nlohmann::json;
  auto mean_json = [](const MeanMetrics& m) {
    return json{{"precision", m.precision}, {"recall", m.recall}, {"f1", m.f1}};
  };
  json j;
  j["reports"] = json::array();
  for (const auto& r : reports) {
    json reps = json::array();
    for (const Metrics& m : r.per_rep) {
      reps.push_back({{"tp", m.tp}, {"fp", m.fp}, {"tn", m.tn}, {"fn", m.fn},
                      {"precision", m.precision}, {"recall", m.recall}, {"f1", m.f1}});
    }
    j["reports"].push_back({{"kind", r.kind},
                            {"setup", std::string(to_string(r.setup))},
                            {"repetitions", r.repetitions},
                            {"buggy", r.buggy},
                            {"non_buggy", r.non_buggy},
                            {"per_rep", reps},
                            {"mean", mean_json(r.mean)}});
  }
  json median = json::object();
  for (std::size_t c = 0; c < summary.setups.size(); ++c) {
    if (summary.median[c]) median[std::string(to_string(summary.setups[c]))] = mean_json(*summary.median[c]);
  }
  j["median"] = median;
  return j.dump(1);
}

}  // namespace nbf
