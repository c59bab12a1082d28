#ifndef ORDSEV_SCHEMA_HPP
#define ORDSEV_SCHEMA_HPP

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "ordsev/error.hpp"

namespace ordsev {

/// One categorical covariate.
///
/// `selected` lists the non-base categories that enter the model as dummy
/// columns, in column order. Categories that are neither base nor selected
/// share the reference group with the base when encoded.
struct VariableSpec {
  std::string name;
  std::vector<std::string> categories;
  std::string base;
  std::vector<std::string> selected;

  std::optional<std::size_t> find(std::string_view label) const {
    auto it = std::find(categories.begin(), categories.end(), label);
    if (it == categories.end()) return std::nullopt;
    return static_cast<std::size_t>(it - categories.begin());
  }

  std::size_t base_index() const { return *find(base); }

  bool operator==(const VariableSpec&) const = default;
};

/// Outcome classes ordered from least to most severe, plus the covariates.
struct CategoricalSchema {
  std::string outcome_name = "Severity";
  std::vector<std::string> outcome;
  std::vector<VariableSpec> variables;

  std::size_t num_classes() const { return outcome.size(); }

  std::size_t dummy_count() const {
    std::size_t k = 0;
    for (const auto& v : variables) k += v.selected.size();
    return k;
  }

  std::optional<std::size_t> variable_index(std::string_view name) const {
    for (std::size_t i = 0; i < variables.size(); ++i)
      if (variables[i].name == name) return i;
    return std::nullopt;
  }

  std::optional<std::size_t> outcome_index(std::string_view label) const {
    auto it = std::find(outcome.begin(), outcome.end(), label);
    if (it == outcome.end()) return std::nullopt;
    return static_cast<std::size_t>(it - outcome.begin());
  }

  const VariableSpec& variable(std::string_view name) const {
    auto idx = variable_index(name);
    if (!idx) throw InputError("unknown variable '" + std::string(name) + "'");
    return variables[*idx];
  }

  /// Throws InputError naming the offending variable on any violation.
  void validate() const {
    if (outcome.size() < 2)
      throw InputError("schema: outcome '" + outcome_name +
                       "' needs at least 2 classes");
    if (outcome_name.empty()) throw InputError("schema: empty outcome name");
    {
      std::set<std::string> seen;
      for (const auto& c : outcome)
        if (!seen.insert(c).second)
          throw InputError("schema: outcome '" + outcome_name +
                           "' has duplicate class '" + c + "'");
    }
    std::set<std::string> names{outcome_name};
    for (const auto& v : variables) {
      if (v.name.empty()) throw InputError("schema: variable with empty name");
      if (!names.insert(v.name).second)
        throw InputError("schema: duplicate variable name '" + v.name + "'");
      if (v.categories.empty())
        throw InputError("schema: variable '" + v.name + "' has no categories");
      std::set<std::string> cats;
      for (const auto& c : v.categories)
        if (!cats.insert(c).second)
          throw InputError("schema: variable '" + v.name +
                           "' has duplicate category '" + c + "'");
      if (!cats.count(v.base))
        throw InputError("schema: variable '" + v.name + "' base '" + v.base +
                         "' is not one of its categories");
      std::set<std::string> sel;
      for (const auto& s : v.selected) {
        if (!cats.count(s))
          throw InputError("schema: variable '" + v.name + "' selects '" + s +
                           "' which is not one of its categories");
        if (s == v.base)
          throw InputError("schema: variable '" + v.name +
                           "' selects its base category '" + s + "'");
        if (!sel.insert(s).second)
          throw InputError("schema: variable '" + v.name + "' selects '" + s +
                           "' twice");
      }
    }
  }

  bool operator==(const CategoricalSchema&) const = default;
};

namespace detail {

inline std::vector<std::string> string_list(const nlohmann::json& j,
                                            const std::string& what) {
  if (!j.is_array()) throw InputError("schema: " + what + " must be a list");
  std::vector<std::string> out;
  for (const auto& e : j) {
    if (!e.is_string())
      throw InputError("schema: " + what + " must contain only strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

}  // namespace detail

/// Builds and validates a schema from an already-parsed JSON tree.
inline CategoricalSchema schema_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw InputError("schema: top level must be an object");
  CategoricalSchema s;
  if (!j.contains("outcome")) throw InputError("schema: missing 'outcome'");
  const auto& out = j.at("outcome");
  if (out.is_array()) {
    s.outcome = detail::string_list(out, "outcome");
  } else if (out.is_object()) {
    if (out.contains("name")) {
      if (!out.at("name").is_string())
        throw InputError("schema: outcome name must be a string");
      s.outcome_name = out.at("name").get<std::string>();
    }
    if (!out.contains("classes"))
      throw InputError("schema: outcome '" + s.outcome_name +
                       "' missing 'classes'");
    s.outcome = detail::string_list(out.at("classes"),
                                    "outcome '" + s.outcome_name + "' classes");
  } else {
    throw InputError("schema: 'outcome' must be a list or an object");
  }

  if (j.contains("variables")) {
    const auto& vars = j.at("variables");
    if (!vars.is_array()) throw InputError("schema: 'variables' must be a list");
    for (const auto& jv : vars) {
      if (!jv.is_object() || !jv.contains("name") || !jv.at("name").is_string())
        throw InputError("schema: every variable needs a string 'name'");
      VariableSpec v;
      v.name = jv.at("name").get<std::string>();
      const std::string where = "variable '" + v.name + "'";
      if (!jv.contains("categories"))
        throw InputError("schema: " + where + " missing 'categories'");
      v.categories = detail::string_list(jv.at("categories"), where + " categories");
      if (!jv.contains("base") || !jv.at("base").is_string())
        throw InputError("schema: " + where + " needs a string 'base'");
      v.base = jv.at("base").get<std::string>();
      if (jv.contains("selected"))
        v.selected = detail::string_list(jv.at("selected"), where + " selected");
      s.variables.push_back(std::move(v));
    }
  }
  s.validate();
  return s;
}

inline CategoricalSchema parse_schema(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("schema: malformed text: ") + e.what());
  }
  return schema_from_json(j);
}

inline nlohmann::ordered_json to_json(const CategoricalSchema& s) {
  nlohmann::ordered_json j;
  j["outcome"] = {{"name", s.outcome_name}, {"classes", s.outcome}};
  j["variables"] = nlohmann::ordered_json::array();
  for (const auto& v : s.variables) {
    nlohmann::ordered_json jv;
    jv["name"] = v.name;
    jv["categories"] = v.categories;
    jv["base"] = v.base;
    jv["selected"] = v.selected;
    j["variables"].push_back(std::move(jv));
  }
  return j;
}

}  // namespace ordsev

#endif  // ORDSEV_SCHEMA_HPP
