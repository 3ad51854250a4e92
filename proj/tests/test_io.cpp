#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>

#include "sobolrank/config.hpp"
#include "sobolrank/csv.hpp"
#include "sobolrank/errors.hpp"
#include "sobolrank/report_io.hpp"
#include "sobolrank/rng.hpp"
#include "sobolrank/study.hpp"

using namespace sobolrank;

TEST_CASE("format_number is compact and locale independent") {
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(-2.5) == "-2.5");
  CHECK(format_number(400.0) == "400");
  CHECK(format_number(0.0) == "0");
  CHECK(format_number(1e300) == "1e+300");
  CHECK(format_number(0.52720105554446849) == "0.5272010555");
}

TEST_CASE("printed numbers reparse to the same printed form") {
  Rng rng(123);
  for (int i = 0; i < 2000; ++i) {
    const double scale = std::pow(10.0, rng.uniform(-12.0, 12.0));
    const double v = (rng.uniform01() - 0.5) * scale;
    const std::string printed = format_number(v);
    const double reparsed = parse_number(printed, "test");
    CHECK(format_number(reparsed) == printed);
  }
}

TEST_CASE("read_xy_csv accepts well-formed input") {
  std::istringstream in("x,y\n1,10\n2,20\n3,30\n");
  const PairedSample sample = read_xy_csv(in, "mem");
  CHECK(sample.xs == std::vector<double>{1, 2, 3});
  CHECK(sample.ys == std::vector<double>{10, 20, 30});
}

TEST_CASE("read_xy_csv tolerates CRLF and spaces around cells") {
  std::istringstream in("x,y\r\n 1 , 10 \r\n2,20\r\n");
  const PairedSample sample = read_xy_csv(in, "mem");
  CHECK(sample.xs == std::vector<double>{1, 2});
}

TEST_CASE("read_xy_csv rejects malformed input with row numbers") {
  const auto expect_error = [](const std::string& text, const std::string& needle) {
    std::istringstream in(text);
    try {
      read_xy_csv(in, "mem");
      FAIL("expected CsvError for: ", text);
    } catch (const CsvError& e) {
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
  };
  expect_error("", "header");
  expect_error("a,b\n1,2\n2,3\n", "header");
  expect_error("x,y\n1,2\n3\n", "mem:3");
  expect_error("x,y\n1,2\n3,4,5\n", "mem:3");
  expect_error("x,y\n1,2\n3,abc\n", "abc");
  expect_error("x,y\n1,2\n3,inf\n", "non-finite");
  expect_error("x,y\n1,2\nnan,4\n", "non-finite");
  expect_error("x,y\n1,2\n", "at least 2");
  expect_error("x,y\n1,2\n\n3,4\n", "blank");
  expect_error("x,y\n1,,2\n2,3\n", "two comma-separated");
}

TEST_CASE("read_xy_csv_file reports missing files") {
  CHECK_THROWS_AS(read_xy_csv_file("/nonexistent/p.csv"), CsvError);
}

TEST_CASE("study config parses the full schema") {
  std::istringstream in(
      "# experiment\n"
      "model = sin5\n"
      "law = uniform:0,1\n"
      "ns = 100, 200\n"
      "max_lag = 20\n"
      "avg_ks = 5,10,20\n"
      "reps = 50\n"
      "seed = 7\n"
      "k_rule = fixed:4\n");
  const StudyFileConfig file = parse_study_config(in, "mem");
  CHECK(file.model_name == "sin5");
  CHECK(file.config.sample_sizes == std::vector<std::size_t>{100, 200});
  CHECK(file.config.max_lag == 20);
  CHECK(file.config.avg_ks == std::vector<int>{5, 10, 20});
  CHECK(file.config.replications == 50);
  CHECK(file.config.base_seed == 7);
  CHECK(file.config.k_rule == KRule::Fixed);
  CHECK(file.config.fixed_k == 4);
}

TEST_CASE("study config applies defaults") {
  std::istringstream in("model = quad\nlaw = exp:1\nns = 100\n");
  const StudyFileConfig file = parse_study_config(in, "mem");
  CHECK(file.config.max_lag == 50);
  CHECK(file.config.avg_ks == std::vector<int>{5, 10, 15, 20, 25, 30, 35, 40, 45, 50});
  CHECK(file.config.replications == 10000);
  CHECK(file.config.base_seed == 1);
  CHECK(file.config.k_rule == KRule::CubeRoot);
}

TEST_CASE("study config violations name the offending key") {
  const auto expect_error = [](const std::string& text, const std::string& needle) {
    std::istringstream in(text);
    try {
      parse_study_config(in, "mem");
      FAIL("expected ConfigError for: ", text);
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
  };
  expect_error("model = sin5\nlaw = uniform:0,1\nns = 100\nbogus = 1\n", "bogus");
  expect_error("law = uniform:0,1\nns = 100\n", "model");
  expect_error("model = sin5\nns = 100\n", "law");
  expect_error("model = sin5\nlaw = uniform:0,1\n", "ns");
  expect_error("model = sin5\nlaw = uniform:0,1\nns = 100\nreps = one\n", "reps");
  expect_error("model = sin5\nlaw = uniform:0,1\nns = 100\nk_rule = magic\n", "k_rule");
  expect_error("model = sin5\nlaw = uniform:0,1\nns = 100\nmodel = quad\n", "duplicate");
  expect_error("model = sin5\nlaw = uniform:0,1\nns = 10\nmax_lag = 50\n", "max_lag");
}

TEST_CASE("study outputs round-trip at the printed precision") {
  StudyConfig config;
  config.model = make_model("sin5", InputLaw::uniform(0.0, 1.0));
  config.sample_sizes = {40, 60};
  config.max_lag = 6;
  config.avg_ks = {2, 6};
  config.replications = 120;
  config.base_seed = 5;
  const StudyReport report = run_study(config);

  std::ostringstream lag_csv;
  write_lag_cells_csv(report, lag_csv);
  std::istringstream in(lag_csv.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "n,lag,q05,q25,median,q75,q95,mean,bias,var,mse");
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    std::size_t start = 0;
    int cellno = 0;
    while (start <= line.size()) {
      const std::size_t comma = line.find(',', start);
      const std::string cell =
          comma == std::string::npos ? line.substr(start) : line.substr(start, comma - start);
      if (cellno >= 2) {  // numeric payload cells
        const double value = parse_number(cell, "cell");
        CHECK(format_number(value) == cell);
      }
      if (comma == std::string::npos) break;
      start = comma + 1;
      ++cellno;
    }
  }
  CHECK(rows == config.sample_sizes.size() * static_cast<std::size_t>(config.max_lag));

  std::ostringstream avg_csv;
  write_avg_cells_csv(report, avg_csv);
  CHECK(avg_csv.str().find("n,k,") == 0);

  std::ostringstream cov_csv;
  write_matrix_csv(report.lag_cov[0], cov_csv);
  std::istringstream cov_in(cov_csv.str());
  std::getline(cov_in, line);
  CHECK(line == "lag,l1,l2,l3,l4,l5,l6");
}

TEST_CASE("theory table prints six significant digits") {
  const TheorySummary t = theory_summary(make_model("sin5", InputLaw::uniform(0.0, 1.0)));
  std::ostringstream out;
  print_theory_table(t, "sin5", "uniform:0,1", out);
  CHECK(out.str().find("improvement   0.487999") != std::string::npos);
  CHECK(out.str().find("sigma2_rank   6.5574") != std::string::npos);
}
