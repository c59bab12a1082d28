#ifndef ORDSEV_SYNTH_HPP
#define ORDSEV_SYNTH_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "ordsev/dataset.hpp"
#include "ordsev/design.hpp"
#include "ordsev/error.hpp"
#include "ordsev/ologit.hpp"
#include "ordsev/rng.hpp"
#include "ordsev/schema.hpp"

namespace ordsev {

/// Ordered-logit data-generating process over independent categorical
/// covariates.
struct GeneratorSpec {
  CategoricalSchema schema;
  std::vector<std::vector<double>> category_probabilities;  // [variable][category]
  OrderedLogitParams params;
  std::size_t sample_size = 0;
  std::uint64_t seed = 0;

  void validate() const {
    schema.validate();
    if (sample_size < 1) throw InputError("generator: sample size must be at least 1");
    if (category_probabilities.size() != schema.variables.size())
      throw InputError("generator: need category probabilities for every variable");
    for (std::size_t v = 0; v < schema.variables.size(); ++v) {
      const auto& probs = category_probabilities[v];
      const auto& var = schema.variables[v];
      if (probs.size() != var.categories.size())
        throw InputError("generator: variable '" + var.name + "' has " +
                         std::to_string(var.categories.size()) + " categories but " +
                         std::to_string(probs.size()) + " probabilities");
      double sum = 0.0;
      for (double p : probs) {
        if (!(p >= 0.0) || !std::isfinite(p))
          throw InputError("generator: variable '" + var.name +
                           "' has a negative or non-finite probability");
        sum += p;
      }
      if (std::fabs(sum - 1.0) > 1e-9)
        throw InputError("generator: probabilities of variable '" + var.name +
                         "' sum to " + std::to_string(sum));
    }
    if (params.num_slopes() != schema.dummy_count())
      throw InputError("generator: " + std::to_string(params.num_slopes()) +
                       " slopes for " + std::to_string(schema.dummy_count()) +
                       " selected dummies");
    if (params.num_classes() != schema.num_classes())
      throw InputError("generator: " + std::to_string(params.cutoffs.size()) +
                       " cut-offs for " + std::to_string(schema.num_classes()) + " classes");
    params.validate();
  }

  /// Slope contribution of each (variable, category), zero for reference ones.
  std::vector<std::vector<double>> category_effects() const {
    std::vector<std::vector<double>> eff;
    for (const auto& var : schema.variables) eff.emplace_back(var.categories.size(), 0.0);
    const auto cols = design_columns(schema);
    for (std::size_t k = 0; k < cols.size(); ++k)
      eff[cols[k].variable][cols[k].category] = params.beta[static_cast<Eigen::Index>(k)];
    return eff;
  }
};

namespace detail {

inline std::vector<double> json_numbers(const nlohmann::json& j, const std::string& what) {
  if (!j.is_array()) throw InputError("generator: '" + what + "' must be a list of numbers");
  std::vector<double> out;
  for (const auto& e : j) {
    if (!e.is_number()) throw InputError("generator: '" + what + "' must contain numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

}  // namespace detail

/// Reads a generator spec: the schema keys plus `frequencies`, `beta`,
/// `cutoffs`, `n` and `seed`.
///
/// `frequencies` maps each variable name to either a list aligned with its
/// categories or an object keyed by category label (absent labels get 0).
/// Weights are normalized, so raw counts are accepted. `beta` is a list in
/// design-column order or an object keyed by "Variable: Category" labels
/// (absent columns get 0).
inline GeneratorSpec generator_spec_from_json(const nlohmann::json& j) {
  GeneratorSpec spec;
  spec.schema = schema_from_json(j);
  const auto& s = spec.schema;

  if (!j.contains("frequencies") || !j.at("frequencies").is_object())
    throw InputError("generator: missing 'frequencies' object");
  const auto& freq = j.at("frequencies");
  for (const auto& var : s.variables) {
    if (!freq.contains(var.name))
      throw InputError("generator: no frequencies for variable '" + var.name + "'");
    const auto& f = freq.at(var.name);
    std::vector<double> w(var.categories.size(), 0.0);
    if (f.is_array()) {
      w = detail::json_numbers(f, "frequencies." + var.name);
      if (w.size() != var.categories.size())
        throw InputError("generator: variable '" + var.name + "' frequency list has " +
                         std::to_string(w.size()) + " entries for " +
                         std::to_string(var.categories.size()) + " categories");
    } else if (f.is_object()) {
      for (const auto& [label, value] : f.items()) {
        auto idx = var.find(label);
        if (!idx)
          throw InputError("generator: variable '" + var.name +
                           "' has no category '" + label + "'");
        if (!value.is_number())
          throw InputError("generator: frequency of '" + var.name + ": " + label +
                           "' is not a number");
        w[*idx] = value.get<double>();
      }
    } else {
      throw InputError("generator: frequencies of '" + var.name +
                       "' must be a list or an object");
    }
    double sum = 0.0;
    for (double x : w) {
      if (!(x >= 0.0) || !std::isfinite(x))
        throw InputError("generator: variable '" + var.name + "' has a negative frequency");
      sum += x;
    }
    if (!(sum > 0.0))
      throw InputError("generator: variable '" + var.name + "' frequencies sum to zero");
    for (double& x : w) x /= sum;
    spec.category_probabilities.push_back(std::move(w));
  }

  const auto cols = design_columns(s);
  spec.params.beta = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(cols.size()));
  if (j.contains("beta")) {
    const auto& b = j.at("beta");
    if (b.is_array()) {
      auto v = detail::json_numbers(b, "beta");
      if (v.size() != cols.size())
        throw InputError("generator: 'beta' has " + std::to_string(v.size()) +
                         " entries for " + std::to_string(cols.size()) + " dummies");
      for (std::size_t k = 0; k < v.size(); ++k)
        spec.params.beta[static_cast<Eigen::Index>(k)] = v[k];
    } else if (b.is_object()) {
      for (const auto& [label, value] : b.items()) {
        std::size_t k = 0;
        while (k < cols.size() && cols[k].label() != label) ++k;
        if (k == cols.size())
          throw InputError("generator: 'beta' names unknown column '" + label + "'");
        if (!value.is_number())
          throw InputError("generator: beta of '" + label + "' is not a number");
        spec.params.beta[static_cast<Eigen::Index>(k)] = value.get<double>();
      }
    } else {
      throw InputError("generator: 'beta' must be a list or an object");
    }
  }
  if (!j.contains("cutoffs")) throw InputError("generator: missing 'cutoffs'");
  auto cut = detail::json_numbers(j.at("cutoffs"), "cutoffs");
  spec.params.cutoffs = Eigen::Map<const Eigen::VectorXd>(cut.data(),
                                                          static_cast<Eigen::Index>(cut.size()));
  if (!j.contains("n") || !j.at("n").is_number_integer())
    throw InputError("generator: 'n' must be an integer");
  if (j.at("n").get<long long>() < 1)
    throw InputError("generator: 'n' must be at least 1");
  spec.sample_size = j.at("n").get<std::size_t>();
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_integer())
      throw InputError("generator: 'seed' must be an integer");
    spec.seed = j.at("seed").get<std::uint64_t>();
  }
  spec.validate();
  return spec;
}

inline GeneratorSpec parse_generator_spec(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("generator: malformed text: ") + e.what());
  }
  return generator_spec_from_json(j);
}

/// Canonical form (normalized probabilities, beta by column label).
inline nlohmann::ordered_json to_json(const GeneratorSpec& spec) {
  auto j = to_json(spec.schema);
  nlohmann::ordered_json freq = nlohmann::ordered_json::object();
  for (std::size_t v = 0; v < spec.schema.variables.size(); ++v)
    freq[spec.schema.variables[v].name] = spec.category_probabilities[v];
  j["frequencies"] = std::move(freq);
  nlohmann::ordered_json beta = nlohmann::ordered_json::object();
  const auto cols = design_columns(spec.schema);
  for (std::size_t k = 0; k < cols.size(); ++k)
    beta[cols[k].label()] = spec.params.beta[static_cast<Eigen::Index>(k)];
  j["beta"] = std::move(beta);
  j["cutoffs"] = std::vector<double>(spec.params.cutoffs.begin(), spec.params.cutoffs.end());
  j["n"] = spec.sample_size;
  j["seed"] = spec.seed;
  return j;
}

namespace detail {

inline std::uint32_t draw_category(const std::vector<double>& cumulative, double u) {
  std::uint32_t c = 0;
  while (c + 1 < cumulative.size() && u >= cumulative[c]) ++c;
  return c;
}

}  // namespace detail

/// Draws covariates independently, then the outcome from the latent index
/// x.beta + e with standard logistic e = log(u / (1 - u)).
inline Dataset simulate(const GeneratorSpec& spec) {
  spec.validate();
  auto schema = std::make_shared<const CategoricalSchema>(spec.schema);
  Dataset ds(schema);
  ds.reserve(spec.sample_size);

  std::vector<std::vector<double>> cumulative;
  for (const auto& p : spec.category_probabilities) {
    std::vector<double> c(p.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) c[i] = (acc += p[i]);
    cumulative.push_back(std::move(c));
  }
  const auto effects = spec.category_effects();
  const auto& cut = spec.params.cutoffs;

  std::vector<std::uint32_t> codes(spec.schema.variables.size());
  for (std::size_t r = 0; r < spec.sample_size; ++r) {
    RecordStream rng(spec.seed, r);
    double index = 0.0;
    for (std::size_t v = 0; v < codes.size(); ++v) {
      codes[v] = detail::draw_category(cumulative[v], rng.uniform_open());
      index += effects[v][codes[v]];
    }
    const double u = rng.uniform_open();
    const double latent = index + std::log(u / (1.0 - u));
    int cls = 0;
    while (cls < cut.size() && latent > cut[cls]) ++cls;
    ds.add_record(cls, codes);
  }
  return ds;
}

struct Profile {
  std::vector<std::uint32_t> categories;
  Eigen::VectorXd x;
  Eigen::VectorXd class_probabilities;
  double probability = 0.0;  // occurrence probability under independence
};

/// Every covariate combination with its exact class probabilities.
inline std::vector<Profile> enumerate_profiles(const GeneratorSpec& spec,
                                               std::size_t max_profiles = 1'000'000) {
  spec.validate();
  const auto& vars = spec.schema.variables;
  std::size_t total = 1;
  for (const auto& v : vars) {
    total *= v.categories.size();
    if (total > max_profiles)
      throw InputError("enumerate_profiles: more than " + std::to_string(max_profiles) +
                       " covariate combinations");
  }
  const auto cols = design_columns(spec.schema);
  const auto effects = spec.category_effects();
  std::vector<Profile> out;
  out.reserve(total);
  std::vector<std::uint32_t> codes(vars.size(), 0);
  for (std::size_t n = 0; n < total; ++n) {
    Profile p;
    p.categories = codes;
    p.x = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(cols.size()));
    for (std::size_t k = 0; k < cols.size(); ++k)
      if (codes[cols[k].variable] == cols[k].category) p.x[static_cast<Eigen::Index>(k)] = 1.0;
    p.probability = 1.0;
    for (std::size_t v = 0; v < vars.size(); ++v)
      p.probability *= spec.category_probabilities[v][codes[v]];
    p.class_probabilities = class_probabilities(p.x, spec.params);
    out.push_back(std::move(p));
    // Mixed-radix increment, last variable fastest.
    for (std::size_t v = vars.size(); v-- > 0;) {
      if (++codes[v] < vars[v].categories.size()) break;
      codes[v] = 0;
    }
  }
  return out;
}

}  // namespace ordsev

#endif  // ORDSEV_SYNTH_HPP
