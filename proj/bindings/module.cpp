#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "sobolrank/errors.hpp"
#include "sobolrank/estimators.hpp"
#include "sobolrank/model.hpp"
#include "sobolrank/study.hpp"
#include "sobolrank/theory.hpp"

namespace py = pybind11;
using namespace sobolrank;

namespace {

PairedSample to_sample(const std::vector<double>& xs, const std::vector<double>& ys) {
  PairedSample sample;
  sample.xs = xs;
  sample.ys = ys;
  return sample;
}

std::vector<std::vector<double>> to_nested(const Matrix& m) {
  std::vector<std::vector<double>> out(m.rows(), std::vector<double>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m(i, j);
  }
  return out;
}

py::dict theory_dict(const TheorySummary& t) {
  py::dict d;
  d["eta"] = t.eta;
  d["var_y"] = t.var_y;
  d["sobol"] = t.sobol;
  d["e_phi2_v"] = t.e_phi2_v;
  d["e_v2"] = t.e_v2;
  d["var_phi2"] = t.var_phi2;
  d["sigma2_opt"] = t.sigma2_opt;
  d["sigma2_rank"] = t.sigma2_rank;
  d["sigma2_nn"] = t.sigma2_nn;
  d["sigma2_ker"] = t.sigma2_ker;
  d["improvement"] = t.improvement;
  return d;
}

StudyConfig basic_config(const std::string& model, const std::string& law, std::size_t n,
                         int max_lag, int replications, std::uint64_t seed) {
  StudyConfig config;
  config.model = make_model(model, parse_law(law));
  config.sample_sizes = {n};
  config.max_lag = max_lag;
  config.avg_ks = {max_lag};
  config.replications = replications;
  config.base_seed = seed;
  return config;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Lagged rank estimators of first-order Sobol indices";

  // bad inputs surface as ValueError, everything else as RuntimeError
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ConfigError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const LagError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const InvalidInputError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const DegenerateOutputError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const ModelError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  m.def("default_k", &default_k, py::arg("n"),
        "Rule-of-thumb lag budget max(1, floor(n^(1/3)))");

  m.def(
      "eta_lags",
      [](const std::vector<double>& xs, const std::vector<double>& ys, std::optional<int> k) {
        const OrderedSample ordered = order_by_input(to_sample(xs, ys));
        return eta_lags(ordered, k.value_or(default_k(xs.size()))).values;
      },
      py::arg("xs"), py::arg("ys"), py::arg("k") = py::none(),
      "Lag-l cross products of the outputs ordered by input, l = 1..k");

  m.def(
      "eta_avg",
      [](const std::vector<double>& xs, const std::vector<double>& ys, std::optional<int> k) {
        const OrderedSample ordered = order_by_input(to_sample(xs, ys));
        return eta_avg(eta_lags(ordered, k.value_or(default_k(xs.size()))));
      },
      py::arg("xs"), py::arg("ys"), py::arg("k") = py::none(),
      "Equal-weight average of the first k lag estimates");

  m.def(
      "sobol",
      [](const std::vector<double>& xs, const std::vector<double>& ys, std::optional<int> k) {
        const PairedSample sample = to_sample(xs, ys);
        const SobolEstimate est =
            k.has_value() ? sobol_from_sample(sample, *k) : sobol_from_sample(sample);
        py::dict d;
        d["eta_hat"] = est.eta_hat;
        d["mean_hat"] = est.mean_hat;
        d["var_hat"] = est.var_hat;
        d["s_raw"] = est.s_raw;
        d["s"] = est.s_clamped;
        d["n"] = est.n;
        d["k"] = est.k;
        return d;
      },
      py::arg("xs"), py::arg("ys"), py::arg("k") = py::none(),
      "Sobol index estimate: raw and clamped, with the output moments");

  m.def(
      "sample_model",
      [](const std::string& model, const std::string& law, std::size_t n, std::uint64_t seed) {
        const PairedSample s = sample_model(make_model(model, parse_law(law)), n, seed);
        return py::make_tuple(s.xs, s.ys);
      },
      py::arg("model"), py::arg("law"), py::arg("n"), py::arg("seed"),
      "Draw a reproducible (xs, ys) sample from a catalog model");

  m.def(
      "theory_summary",
      [](const std::string& model, const std::string& law, int points) {
        return theory_dict(theory_summary(make_model(model, parse_law(law)), points));
      },
      py::arg("model"), py::arg("law"), py::arg("points") = 1024,
      "Quadrature values of eta, var(Y), the Sobol index and the asymptotic variances");

  m.def(
      "asymptotic_cov",
      [](const std::string& model, const std::string& law, int k) {
        return to_nested(asymptotic_cov(theory_summary(make_model(model, parse_law(law))), k));
      },
      py::arg("model"), py::arg("law"), py::arg("k"),
      "First-order k x k covariance limit of the lag estimators");

  m.def(
      "bias_bound",
      [](double m_phi, double l_phi, double e_delta_n, std::size_t n, int lag) {
        BiasBoundSpec spec;
        spec.m_phi = m_phi;
        spec.l_phi = l_phi;
        spec.e_delta_n = e_delta_n;
        return bias_bound(spec, n, lag);
      },
      py::arg("m_phi"), py::arg("l_phi"), py::arg("e_delta_n"), py::arg("n"), py::arg("lag"),
      "Finite-sample bias bound of the lag-l estimator");

  m.def("expected_range",
        [](const std::string& law, std::size_t n, int replicates) {
          return expected_range(parse_law(law), n, replicates);
        },
        py::arg("law"), py::arg("n"), py::arg("replicates") = 10000,
        "Monte Carlo E[max(X) - min(X)] at sample size n");

  m.def(
      "empirical_lag_cov",
      [](const std::string& model, const std::string& law, std::size_t n, int k,
         int replications, std::uint64_t seed, int threads) {
        const StudyConfig config = basic_config(model, law, n, k, replications, seed);
        return to_nested(empirical_lag_cov(config, n, k, threads));
      },
      py::arg("model"), py::arg("law"), py::arg("n"), py::arg("k"), py::arg("replications"),
      py::arg("seed") = 1, py::arg("threads") = 0,
      "n times the sample covariance of the k lag estimators across replications");

  m.def(
      "lag_replicates",
      [](const std::string& model, const std::string& law, std::size_t n, int k,
         int replications, std::uint64_t seed, int threads) {
        const StudyConfig config = basic_config(model, law, n, k, replications, seed);
        return to_nested(lag_replicates(config, n, k, threads));
      },
      py::arg("model"), py::arg("law"), py::arg("n"), py::arg("k"), py::arg("replications"),
      py::arg("seed") = 1, py::arg("threads") = 0,
      "Replications x k matrix of lag estimates, one row per replication");
}
