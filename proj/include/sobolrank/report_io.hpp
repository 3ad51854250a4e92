#pragma once

#include <iosfwd>
#include <string>

#include "sobolrank/estimators.hpp"
#include "sobolrank/matrix.hpp"
#include "sobolrank/study.hpp"
#include "sobolrank/theory.hpp"

namespace sobolrank {

/// Writes lags.csv rows: n,lag,q05,q25,median,q75,q95,mean,bias,var,mse.
void write_lag_cells_csv(const StudyReport& report, std::ostream& out);

/// Writes avgs.csv rows: n,k,q05,q25,median,q75,q95,mean,bias,var,mse.
void write_avg_cells_csv(const StudyReport& report, std::ostream& out);

/// Writes one covariance matrix: header lag,l1..lK then one labelled row per lag.
void write_matrix_csv(const Matrix& m, std::ostream& out);

/// Writes theory.csv: a single labelled row with every TheorySummary field.
void write_theory_csv(const TheorySummary& theory, const std::string& model_name,
                      const std::string& law_text, std::ostream& out);

/// Writes the mse-curve table: n,estimator,n_mse,reference.
void write_mse_curve_csv(const MseCurve& curve, std::ostream& out);

/// Writes the per-lag estimate table behind `estimate --all-lags`: lag,eta_lag.
void write_lag_table_csv(const LagEstimates& estimates, std::ostream& out);

/// Human-readable aligned table of a TheorySummary, 6 significant digits.
void print_theory_table(const TheorySummary& theory, const std::string& model_name,
                        const std::string& law_text, std::ostream& out);

/// Runs the study and writes lags.csv, avgs.csv, cov_n<NN>.csv per sample
/// size, and theory.csv under out_dir (created if missing).
void write_study_outputs(const StudyReport& report, const std::string& model_name,
                         const std::string& law_text, const std::string& out_dir);

}  // namespace sobolrank
