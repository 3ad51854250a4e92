#include "sobolrank/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "sobolrank/errors.hpp"

namespace sobolrank {

InputLaw InputLaw::uniform(double a, double b) {
  if (!(a < b) || !std::isfinite(a) || !std::isfinite(b)) {
    throw ConfigError("uniform law: need finite bounds with a < b");
  }
  InputLaw law;
  law.kind = LawKind::Uniform;
  law.a = a;
  law.b = b;
  return law;
}

InputLaw InputLaw::exponential(double rate) {
  if (!(rate > 0.0) || !std::isfinite(rate)) {
    throw ConfigError("exponential law: need rate > 0");
  }
  InputLaw law;
  law.kind = LawKind::Exponential;
  law.rate = rate;
  return law;
}

double InputLaw::draw(Rng& rng) const {
  return kind == LawKind::Uniform ? rng.uniform(a, b) : rng.exponential(rate);
}

double InputLaw::quantile(double p) const {
  p = std::clamp(p, 0.0, 1.0);
  if (kind == LawKind::Uniform) return a + p * (b - a);
  return -std::log1p(-p) / rate;
}

std::string InputLaw::describe() const {
  std::ostringstream os;
  if (kind == LawKind::Uniform) {
    os << "uniform(" << a << "," << b << ")";
  } else {
    os << "exp(" << rate << ")";
  }
  return os.str();
}

namespace {

double parse_param(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("law: cannot parse " + what + " from '" + text + "'");
  }
}

}  // namespace

InputLaw parse_law(const std::string& text) {
  const std::size_t colon = text.find(':');
  const std::string name = text.substr(0, colon);
  const std::string params = colon == std::string::npos ? "" : text.substr(colon + 1);

  if (name == "uniform") {
    if (params.empty()) return InputLaw::uniform(0.0, 1.0);
    const std::size_t comma = params.find(',');
    if (comma == std::string::npos) {
      throw ConfigError("law: uniform needs two parameters 'a,b', got '" + params + "'");
    }
    return InputLaw::uniform(parse_param(params.substr(0, comma), "uniform bound"),
                             parse_param(params.substr(comma + 1), "uniform bound"));
  }
  if (name == "exp" || name == "exponential") {
    if (params.empty()) return InputLaw::exponential(1.0);
    return InputLaw::exponential(parse_param(params, "exponential rate"));
  }
  throw ConfigError("law: unknown law '" + name + "' (use uniform:a,b or exp:rate)");
}

std::string catalog_help() {
  return
      "  sin5        phi(x) = sin(5x),    v(x) = 4x^2\n"
      "  quad        phi(x) = x^2 - 3x,   v(x) = 4x^2\n"
      "  <phi>:<v>   any phi in {sin5, quad} with v in {vquad: 4x^2, vzero: 0}\n";
}

ModelSpec make_model(const std::string& name, const InputLaw& law) {
  const std::size_t colon = name.find(':');
  const std::string phi_name = name.substr(0, colon);
  const std::string v_name = colon == std::string::npos ? "vquad" : name.substr(colon + 1);

  ModelSpec spec;
  spec.law = law;
  if (phi_name == "sin5") {
    spec.phi = [](double x) { return std::sin(5.0 * x); };
  } else if (phi_name == "quad") {
    spec.phi = [](double x) { return x * x - 3.0 * x; };
  } else {
    throw ConfigError("unknown model '" + name + "'; catalog:\n" + catalog_help());
  }
  if (v_name == "vquad") {
    spec.v = [](double x) { return 4.0 * x * x; };
  } else if (v_name == "vzero") {
    spec.v = [](double) { return 0.0; };
  } else {
    throw ConfigError("unknown model '" + name + "'; catalog:\n" + catalog_help());
  }
  spec.label = phi_name + ":" + v_name;
  return spec;
}

PairedSample sample_model(const ModelSpec& spec, std::size_t n, std::uint64_t seed) {
  if (n < 2) {
    throw InvalidInputError("sample_model: need n >= 2, got " + std::to_string(n));
  }
  Rng rng(seed);

  PairedSample sample;
  sample.xs.resize(n);
  sample.ys.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    sample.xs[i] = spec.law.draw(rng);
  }
  // normals drawn pairwise; the trailing draw of an odd n discards its twin
  for (std::size_t i = 0; i < n; i += 2) {
    const auto [z0, z1] = rng.normal_pair();
    sample.ys[i] = z0;
    if (i + 1 < n) sample.ys[i + 1] = z1;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double x = sample.xs[i];
    const double vx = spec.v(x);
    if (vx < 0.0) {
      throw ModelError("sample_model: v(" + std::to_string(x) + ") = " + std::to_string(vx) +
                       " is negative");
    }
    sample.ys[i] = spec.phi(x) + std::sqrt(vx) * sample.ys[i];
  }
  return sample;
}

double expected_range(const InputLaw& law, std::size_t n, int replicates, std::uint64_t seed) {
  if (n < 1 || replicates < 1) {
    throw InvalidInputError("expected_range: need n >= 1 and replicates >= 1");
  }
  double sum = 0.0;
  for (int r = 0; r < replicates; ++r) {
    Rng rng(replication_seed(seed, n, static_cast<std::uint64_t>(r)));
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t i = 0; i < n; ++i) {
      const double x = law.draw(rng);
      lo = std::min(lo, x);
      hi = std::max(hi, x);
    }
    sum += hi - lo;
  }
  return sum / static_cast<double>(replicates);
}

}  // namespace sobolrank
