#include <doctest.h>

#include <nlohmann/json.hpp>
#include <sstream>

#include "nbf/error.hpp"
#include "nbf/eval/report.hpp"

using namespace nbf;

namespace {

ExperimentReport report(std::string kind, Setup setup, std::size_t buggy, double p, double r,
                        double f) {
  ExperimentReport rep;
  rep.kind = std::move(kind);
  rep.setup = setup;
  rep.buggy = buggy;
  rep.non_buggy = 10 * buggy;
  rep.repetitions = 1;
  rep.per_rep.push_back(from_counts(3, 1, 10, 2));
  rep.mean = {p, r, f};
  return rep;
}

}  // namespace

TEST_CASE("cells print percentages with two decimals") {
  CHECK(format_cell({0.9362, 0.9202, 0.9267}) == "93.62 / 92.02 / 92.67");
  CHECK(format_percent(1.0) == "100.00");
  CHECK(format_percent(0.0) == "0.00");
  CHECK(format_percent(0.08) == "8.00");
}

TEST_CASE("median takes the lower middle") {
  CHECK(median_of({10, 20, 90}) == 20);
  CHECK(median_of({90, 10, 20, 30}) == 20);
  CHECK(median_of({5}) == 5);
  CHECK_THROWS_AS(median_of({}), Error);
}

TEST_CASE("summary orders kinds and computes column medians") {
  const std::vector<ExperimentReport> reps{
      report("Beta", Setup::SS, 50, 0.1, 0.2, 0.3),
      report("Alpha", Setup::SS, 50, 0.2, 0.4, 0.5),
      report("Gamma", Setup::SS, 200, 0.9, 0.9, 0.9),
      report("Gamma", Setup::BS, 200, 0.5, 0.5, 0.5),
  };
  const Summary s = summarize(reps);
  REQUIRE(s.setups == std::vector<Setup>{Setup::BS, Setup::SS});
  REQUIRE(s.rows.size() == 3);
  CHECK(s.rows[0].kind == "Gamma");
  CHECK(s.rows[1].kind == "Alpha");
  CHECK(s.rows[2].kind == "Beta");
  CHECK_FALSE(s.rows[1].cells[0].has_value());
  REQUIRE(s.median[1].has_value());
  CHECK(s.median[1]->precision == 0.2);
  CHECK(s.median[1]->f1 == 0.5);
  CHECK(s.median[0]->recall == 0.5);

  std::ostringstream text;
  write_summary_text(text, s);
  CHECK(text.str().find("Median") != std::string::npos);
  CHECK(text.str().find("90.00 / 90.00 / 90.00") != std::string::npos);

  std::ostringstream csv;
  write_report_csv(csv, s);
  CHECK(csv.str().rfind("kind,buggy,non_buggy,setup,precision,recall,f1\n", 0) == 0);

  const auto j = nlohmann::json::parse(reports_to_json(reps, s));
  CHECK(j.at("reports").size() == 4);
  CHECK(j.at("median").contains("SS"));
}

TEST_CASE("single report") {
  const std::vector<ExperimentReport> reps{report("Only", Setup::BB, 7, 0.5, 0.25, 1.0 / 3)};
  const Summary s = summarize(reps);
  REQUIRE(s.rows.size() == 1);
  CHECK(s.median[0]->precision == 0.5);

  std::ostringstream rcsv;
  write_repetitions_csv(rcsv, reps);
  std::string header, row;
  std::istringstream in(rcsv.str());
  std::getline(in, header);
  std::getline(in, row);
  CHECK(header == "kind,setup,rep,tp,fp,tn,fn,precision,recall,f1");
  CHECK(row.rfind("Only,BB,0,3,1,10,2,", 0) == 0);

  std::ostringstream sc;
  write_scatter_csv(sc, reps);
  CHECK(sc.str().find("Only,BB,7,") != std::string::npos);
  CHECK_THROWS_AS(summarize({}), Error);
}
