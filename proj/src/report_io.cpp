#include "sobolrank/report_io.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "sobolrank/csv.hpp"
#include "sobolrank/errors.hpp"

namespace sobolrank {

namespace {

void write_cell_row(std::ostream& out, std::size_t n, int index, const CellStats& cell) {
  const BoxplotStats& b = cell.box;
  out << n << ',' << index << ',' << format_number(b.q05) << ',' << format_number(b.q25) << ','
      << format_number(b.median) << ',' << format_number(b.q75) << ',' << format_number(b.q95)
      << ',' << format_number(b.mean) << ',' << format_number(cell.bias) << ','
      << format_number(cell.variance) << ',' << format_number(cell.mse) << '\n';
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw Error("cannot open output file " + path.string());
  }
  return out;
}

}  // namespace

void write_lag_cells_csv(const StudyReport& report, std::ostream& out) {
  out << "n,lag,q05,q25,median,q75,q95,mean,bias,var,mse\n";
  for (std::size_t ni = 0; ni < report.sample_sizes.size(); ++ni) {
    for (int l = 1; l <= report.max_lag; ++l) {
      write_cell_row(out, report.sample_sizes[ni], l,
                     report.lag_cells[ni][static_cast<std::size_t>(l - 1)]);
    }
  }
}

void write_avg_cells_csv(const StudyReport& report, std::ostream& out) {
  out << "n,k,q05,q25,median,q75,q95,mean,bias,var,mse\n";
  for (std::size_t ni = 0; ni < report.sample_sizes.size(); ++ni) {
    for (std::size_t ki = 0; ki < report.avg_ks.size(); ++ki) {
      write_cell_row(out, report.sample_sizes[ni], report.avg_ks[ki],
                     report.avg_cells[ni][ki]);
    }
  }
}

void write_matrix_csv(const Matrix& m, std::ostream& out) {
  out << "lag";
  for (std::size_t j = 0; j < m.cols(); ++j) out << ",l" << (j + 1);
  out << '\n';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    out << (i + 1);
    for (std::size_t j = 0; j < m.cols(); ++j) out << ',' << format_number(m(i, j));
    out << '\n';
  }
}

void write_theory_csv(const TheorySummary& t, const std::string& model_name,
                      const std::string& law_text, std::ostream& out) {
  out << "model,law,eta,var_y,sobol,e_phi2_v,e_v2,var_phi2,sigma2_opt,sigma2_rank,"
         "sigma2_nn,sigma2_ker,improvement\n";
  out << model_name << ',' << law_text << ',' << format_number(t.eta) << ','
      << format_number(t.var_y) << ',' << format_number(t.sobol) << ','
      << format_number(t.e_phi2_v) << ',' << format_number(t.e_v2) << ','
      << format_number(t.var_phi2) << ',' << format_number(t.sigma2_opt) << ','
      << format_number(t.sigma2_rank) << ',' << format_number(t.sigma2_nn) << ','
      << format_number(t.sigma2_ker) << ',' << format_number(t.improvement) << '\n';
}

void write_mse_curve_csv(const MseCurve& curve, std::ostream& out) {
  out << "n,estimator,n_mse,reference\n";
  for (const MseCurveRow& row : curve.rows) {
    out << row.n << ',' << row.estimator << ',' << format_number(row.n_mse) << ','
        << format_number(row.reference) << '\n';
  }
}

void write_lag_table_csv(const LagEstimates& estimates, std::ostream& out) {
  out << "lag,eta_lag\n";
  for (int l = 1; l <= estimates.k(); ++l) {
    out << l << ',' << format_number(estimates.values[static_cast<std::size_t>(l - 1)]) << '\n';
  }
}

void print_theory_table(const TheorySummary& t, const std::string& model_name,
                        const std::string& law_text, std::ostream& out) {
  std::ostringstream num;
  num << std::setprecision(6);
  const auto row = [&out](const std::string& name, const std::string& value) {
    out << std::left << std::setw(14) << name << value << '\n';
  };
  const auto num_row = [&row](const std::string& name, double v) {
    std::ostringstream os;
    os << std::setprecision(6) << v;
    row(name, os.str());
  };
  row("model", model_name);
  row("law", law_text);
  num_row("eta", t.eta);
  num_row("var_y", t.var_y);
  num_row("sobol", t.sobol);
  num_row("E[phi^2 v]", t.e_phi2_v);
  num_row("E[v^2]", t.e_v2);
  num_row("var[phi^2]", t.var_phi2);
  num_row("sigma2_opt", t.sigma2_opt);
  num_row("sigma2_rank", t.sigma2_rank);
  num_row("sigma2_nn", t.sigma2_nn);
  num_row("sigma2_ker", t.sigma2_ker);
  num_row("improvement", t.improvement);
}

void write_study_outputs(const StudyReport& report, const std::string& model_name,
                         const std::string& law_text, const std::string& out_dir) {
  const std::filesystem::path dir(out_dir);
  std::filesystem::create_directories(dir);

  {
    std::ofstream out = open_out(dir / "lags.csv");
    write_lag_cells_csv(report, out);
  }
  {
    std::ofstream out = open_out(dir / "avgs.csv");
    write_avg_cells_csv(report, out);
  }
  for (std::size_t ni = 0; ni < report.sample_sizes.size(); ++ni) {
    std::ofstream out =
        open_out(dir / ("cov_n" + std::to_string(report.sample_sizes[ni]) + ".csv"));
    write_matrix_csv(report.lag_cov[ni], out);
  }
  {
    std::ofstream out = open_out(dir / "theory.csv");
    write_theory_csv(report.theory, model_name, law_text, out);
  }
}

}  // namespace sobolrank
