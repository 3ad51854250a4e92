#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "sobolrank/estimators.hpp"
#include "sobolrank/rng.hpp"

namespace sobolrank {

enum class LawKind { Uniform, Exponential };

/// Input distribution: uniform(a, b) or exponential(rate).
struct InputLaw {
  LawKind kind = LawKind::Uniform;
  double a = 0.0;     ///< uniform lower bound
  double b = 1.0;     ///< uniform upper bound
  double rate = 1.0;  ///< exponential rate

  static InputLaw uniform(double a, double b);
  static InputLaw exponential(double rate);

  double draw(Rng& rng) const;
  double quantile(double p) const;
  std::string describe() const;
};

/// "uniform:a,b" or "exp:rate" (also accepts "exponential:rate"); parameters
/// optional, defaulting to uniform:0,1 and exp:1.
InputLaw parse_law(const std::string& text);

/// Simulation ground truth for Y = phi(X) + sqrt(v(X)) * eps with eps
/// standard normal independent of X. `v` must be >= 0 on the support.
struct ModelSpec {
  std::function<double(double)> phi;
  std::function<double(double)> v;
  InputLaw law;
  std::string label;
};

/// Built-in model catalog. `name` is "<phi>" or "<phi>:<v>" with
/// phi in {sin5: sin(5x), quad: x^2-3x} and v in {vquad: 4x^2, vzero: 0};
/// vquad is the default. Unknown names throw ConfigError listing the catalog.
ModelSpec make_model(const std::string& name, const InputLaw& law);

/// One line per catalog entry, for usage messages.
std::string catalog_help();

/// Draws n iid inputs from the law and outputs from the model, fully
/// reproducible from the seed. Throws ModelError if v(x) < 0 comes up.
PairedSample sample_model(const ModelSpec& spec, std::size_t n, std::uint64_t seed);

/// E[max(X) - min(X)] for an iid sample of size n under the law, estimated
/// by Monte Carlo (no general closed form). Deterministic for fixed inputs.
double expected_range(const InputLaw& law, std::size_t n, int replicates = 10000,
                      std::uint64_t seed = 0x6a09e667f3bcc908ULL);

}  // namespace sobolrank
