// Shared fixtures and independent oracles for the test suites.
#ifndef ORDSEV_TESTS_SUPPORT_HPP
#define ORDSEV_TESTS_SUPPORT_HPP

#include <cstdint>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "ordsev/ordsev.hpp"

namespace ordsev::testing {

using BigFloat = boost::multiprecision::cpp_bin_float_50;

inline SchemaPtr table4_schema() {
  return std::make_shared<const CategoricalSchema>(parse_schema(bundled::kTable4Schema));
}

inline GeneratorSpec table4_spec(std::size_t n = 100000, std::uint64_t seed = 42) {
  auto j = nlohmann::json::parse(bundled::kTable4Dgp);
  j["n"] = n;
  j["seed"] = seed;
  return generator_spec_from_json(j);
}

inline OrderedLogitParams table4_params() { return table4_spec().params; }

// 50-digit logistic CDF.
inline BigFloat big_logistic(const BigFloat& z) { return 1 / (1 + exp(-z)); }

// 50-digit class probabilities for a latent index; used only as an oracle.
inline std::vector<BigFloat> big_class_probabilities(const BigFloat& index,
                                                     const std::vector<double>& cutoffs) {
  std::vector<BigFloat> cdf{0};
  for (double c : cutoffs) cdf.push_back(big_logistic(BigFloat(c) - index));
  cdf.push_back(1);
  std::vector<BigFloat> p;
  for (std::size_t j = 0; j + 1 < cdf.size(); ++j) p.push_back(cdf[j + 1] - cdf[j]);
  return p;
}

/// Builds a dataset straight from a category-by-class count table for one
/// variable; the remaining variables sit at their base category.
inline Dataset dataset_from_counts(const SchemaPtr& schema, const std::string& variable,
                                   const std::vector<std::vector<std::size_t>>& counts) {
  Dataset ds(schema);
  const auto v = *schema->variable_index(variable);
  std::vector<std::uint32_t> codes(schema->variables.size());
  for (std::size_t i = 0; i < codes.size(); ++i)
    codes[i] = static_cast<std::uint32_t>(schema->variables[i].base_index());
  for (std::size_t r = 0; r < counts.size(); ++r)
    for (std::size_t j = 0; j < counts[r].size(); ++j)
      for (std::size_t n = 0; n < counts[r][j]; ++n) {
        codes[v] = static_cast<std::uint32_t>(r);
        ds.add_record(static_cast<int>(j), codes);
      }
  return ds;
}

/// Random design with K dummy columns grouped into variables of width
/// `group`, and outcomes drawn from the model at `params`.
inline DesignMatrix random_design(std::mt19937_64& rng, std::size_t n, std::size_t k,
                                  const OrderedLogitParams& params, std::size_t group = 2) {
  DesignMatrix d;
  d.num_classes = params.num_classes();
  d.x = RowMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(k));
  for (std::size_t c = 0; c < k; ++c)
    d.columns.push_back({c / group, c % group + 1, "v" + std::to_string(c / group),
                         "c" + std::to_string(c % group + 1)});
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t g = 0; g * group < k; ++g) {
      // Pick one of the group's columns or the reference (all zero).
      const std::size_t width = std::min(group, k - g * group);
      const auto pick = static_cast<std::size_t>(u(rng) * static_cast<double>(width + 1));
      if (pick < width)
        d.x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(g * group + pick)) = 1.0;
    }
    const auto p = class_probabilities(d.x.row(static_cast<Eigen::Index>(i)), params);
    double r = u(rng), acc = 0.0;
    int cls = static_cast<int>(p.size()) - 1;
    for (Eigen::Index j = 0; j < p.size(); ++j) {
      acc += p[j];
      if (r < acc) {
        cls = static_cast<int>(j);
        break;
      }
    }
    d.y.push_back(cls);
  }
  return d;
}

inline OrderedLogitParams random_params(std::mt19937_64& rng, std::size_t k,
                                        std::size_t classes, double scale = 1.0) {
  std::normal_distribution<double> z(0.0, scale);
  std::uniform_real_distribution<double> gap(0.3, 2.0);
  OrderedLogitParams p;
  p.beta.resize(static_cast<Eigen::Index>(k));
  for (auto& b : p.beta) b = z(rng);
  p.cutoffs.resize(static_cast<Eigen::Index>(classes - 1));
  double c = z(rng) - 1.0;
  for (auto& v : p.cutoffs) {
    v = c;
    c += gap(rng);
  }
  return p;
}

/// Central finite-difference gradient of the log-likelihood, natural layout.
inline Eigen::VectorXd finite_difference_gradient(const DesignMatrix& d,
                                                  const OrderedLogitParams& params,
                                                  double step = 1e-5) {
  const Eigen::VectorXd theta = params.packed();
  Eigen::VectorXd g(theta.size());
  for (Eigen::Index i = 0; i < theta.size(); ++i) {
    Eigen::VectorXd up = theta, dn = theta;
    up[i] += step;
    dn[i] -= step;
    g[i] = (log_likelihood(d, OrderedLogitParams::unpack(up, params.num_slopes())) -
            log_likelihood(d, OrderedLogitParams::unpack(dn, params.num_slopes()))) /
           (2 * step);
  }
  return g;
}

}  // namespace ordsev::testing

#endif  // ORDSEV_TESTS_SUPPORT_HPP
