#include "archive.hpp"

#include <array>
#include <cstdio>

#include <nlohmann/json.hpp>
#include <openssl/evp.h>

#include "ordsev/error.hpp"

namespace ordsev::tools {

namespace {

constexpr const char* kArchiveFormat = "ordsev-fit-archive";
constexpr int kArchiveVersion = 1;

std::vector<double> to_vector(const Eigen::VectorXd& v) { return {v.begin(), v.end()}; }

Eigen::VectorXd from_vector(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

}  // namespace

std::string sha256_hex(std::string_view data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md.data(), &len, EVP_sha256(), nullptr) != 1)
    throw Error(ErrorKind::Input, "sha256: digest failed");
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    hex += buf;
  }
  return hex;
}

std::string schema_hash(const CategoricalSchema& schema) {
  return sha256_hex(to_json(schema).dump());
}

std::string serialize_archive(const FitArchive& a) {
  nlohmann::ordered_json j;
  j["format"] = kArchiveFormat;
  j["version"] = kArchiveVersion;
  j["schema_sha256"] = a.schema_sha256;
  j["schema"] = to_json(a.schema);
  j["columns"] = a.columns;
  j["beta"] = to_vector(a.fit.params.beta);
  j["cutoffs"] = to_vector(a.fit.params.cutoffs);
  nlohmann::ordered_json cov = nlohmann::ordered_json::array();
  for (Eigen::Index r = 0; r < a.fit.covariance.rows(); ++r)
    cov.push_back(to_vector(a.fit.covariance.row(r).transpose()));
  j["covariance"] = std::move(cov);
  j["log_likelihood"] = a.fit.log_likelihood;
  j["null_log_likelihood"] = a.fit.null_log_likelihood;
  j["num_observations"] = a.fit.num_observations;
  j["iterations"] = a.fit.iterations;
  j["converged"] = a.fit.converged;
  j["gradient_norm"] = a.fit.gradient_norm;
  j["warnings"] = a.fit.warnings;
  j["options"] = {{"tol_grad", a.options.tol_grad},
                  {"tol_ll", a.options.tol_ll},
                  {"max_iter", a.options.max_iter},
                  {"hessian_fallback", a.options.hessian_fallback}};
  return j.dump(2) + "\n";
}

FitArchive parse_archive(std::string_view text) {
  FitArchive a;
  try {
    auto j = nlohmann::json::parse(text.begin(), text.end());
    if (j.value("format", std::string()) != kArchiveFormat)
      throw InputError("archive: not an ordsev fit archive");
    if (j.at("version").get<int>() != kArchiveVersion)
      throw InputError("archive: unsupported version");
    a.schema_sha256 = j.at("schema_sha256").get<std::string>();
    a.schema = schema_from_json(j.at("schema"));
    a.columns = j.at("columns").get<std::vector<std::string>>();
    a.fit.params.beta = from_vector(j.at("beta").get<std::vector<double>>());
    a.fit.params.cutoffs = from_vector(j.at("cutoffs").get<std::vector<double>>());
    const auto cov = j.at("covariance").get<std::vector<std::vector<double>>>();
    const auto p = static_cast<Eigen::Index>(cov.size());
    a.fit.covariance.resize(p, p);
    for (Eigen::Index r = 0; r < p; ++r) {
      if (static_cast<Eigen::Index>(cov[r].size()) != p)
        throw InputError("archive: covariance is not square");
      for (Eigen::Index c = 0; c < p; ++c) a.fit.covariance(r, c) = cov[r][c];
    }
    a.fit.log_likelihood = j.at("log_likelihood").get<double>();
    a.fit.null_log_likelihood = j.at("null_log_likelihood").get<double>();
    a.fit.num_observations = j.at("num_observations").get<std::size_t>();
    a.fit.iterations = j.at("iterations").get<int>();
    a.fit.converged = j.at("converged").get<bool>();
    a.fit.gradient_norm = j.at("gradient_norm").get<double>();
    a.fit.warnings = j.at("warnings").get<std::vector<std::string>>();
    const auto& o = j.at("options");
    a.options.tol_grad = o.at("tol_grad").get<double>();
    a.options.tol_ll = o.at("tol_ll").get<double>();
    a.options.max_iter = o.at("max_iter").get<int>();
    a.options.hessian_fallback = o.at("hessian_fallback").get<bool>();
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("archive: malformed: ") + e.what());
  }
  if (a.fit.params.num_slopes() != a.columns.size() ||
      a.fit.covariance.rows() != static_cast<Eigen::Index>(a.fit.params.num_params()))
    throw InputError("archive: parameter dimensions are inconsistent");
  if (schema_hash(a.schema) != a.schema_sha256)
    throw InputError("archive: embedded schema does not match its recorded hash");
  return a;
}

}  // namespace ordsev::tools
