#include "cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "archive.hpp"
#include "ordsev/ordsev.hpp"

namespace fs = std::filesystem;

namespace ordsev::tools {

namespace {

struct CommonArgs {
  std::string records;
  std::string schema;
  std::string out_dir = ".";
  std::string format = "md";
  std::string unknown = "drop";
  bool verbose = false;
};

std::string read_file(const std::string& path, const std::string& what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + what + " '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  out << content;
  if (!out) throw InputError("write failed for '" + path.string() + "'");
}

fs::path output_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw InputError("cannot create output directory '" + dir + "': " + ec.message());
  return fs::path(dir);
}

// Bundled asset names resolve only when no file of that name exists.
std::string read_asset(const std::string& path, const std::string& what) {
  if (path.empty()) throw InputError("missing " + what + " (use --" + what + ")");
  if (!fs::exists(path))
    if (auto text = bundled::lookup(path)) return std::string(*text);
  return read_file(path, what);
}

SchemaPtr load_schema(const std::string& path) {
  return std::make_shared<const CategoricalSchema>(parse_schema(read_asset(path, "schema")));
}

IngestOptions ingest_options(const std::string& unknown) {
  IngestOptions o;
  if (unknown == "drop") {
    o.policy = UnknownPolicy::Drop;
  } else if (unknown == "reject") {
    o.policy = UnknownPolicy::Reject;
  } else if (unknown.rfind("map:", 0) == 0 && unknown.size() > 4) {
    o.policy = UnknownPolicy::MapToCategory;
    o.catch_all = unknown.substr(4);
  } else {
    throw InputError("--unknown must be drop, reject or map:<category>");
  }
  return o;
}

Dataset load_records(const CommonArgs& a, const SchemaPtr& schema, std::ostream& err) {
  if (a.records.empty()) throw InputError("missing --records");
  std::ifstream in(a.records, std::ios::binary);
  if (!in) throw InputError("cannot read records '" + a.records + "'");
  Dataset ds = ingest_records(in, schema, ingest_options(a.unknown));
  for (const auto& w : ds.warnings) err << "warning: " << w << '\n';
  if (ds.dropped_count)
    err << "warning: dropped " << ds.dropped_count << " of " << ds.input_rows() << " rows\n";
  return ds;
}

std::string slug(const std::string& s) {
  std::string out;
  for (unsigned char c : s) {
    if (std::isalnum(c)) {
      out.push_back(static_cast<char>(std::tolower(c)));
    } else if (!out.empty() && out.back() != '_') {
      out.push_back('_');
    }
  }
  while (!out.empty() && out.back() == '_') out.pop_back();
  return out.empty() ? "var" : out;
}

void add_common(CLI::App* cmd, CommonArgs& a, bool needs_records) {
  auto* rec = cmd->add_option("--records", a.records, "Records CSV file");
  if (needs_records) rec->required();
  cmd->add_option("--schema", a.schema, "Schema JSON file or bundled name (table4)");
  cmd->add_option("--out", a.out_dir, "Output directory")->capture_default_str();
  cmd->add_option("--format", a.format, "Output format")
      ->check(CLI::IsMember({"csv", "json", "md"}))
      ->capture_default_str();
  cmd->add_option("--unknown", a.unknown,
                  "Unknown labels: drop, reject or map:<category>")
      ->capture_default_str();
  cmd->add_flag("-v,--verbose", a.verbose, "Print progress to stderr");
}

void add_fit_options(CLI::App* cmd, FitOptions& o) {
  cmd->add_option("--tol-grad", o.tol_grad, "Gradient max-norm tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--tol-ll", o.tol_ll, "Relative log-likelihood change tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--max-iter", o.max_iter, "Newton iteration limit")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_flag_callback("--no-hessian-fallback", [&o] { o.hessian_fallback = false; },
                         "Fail instead of taking gradient steps when the Hessian is "
                         "not negative definite");
}

int cmd_describe(const CommonArgs& a, std::ostream& out, std::ostream& err) {
  auto schema = load_schema(a.schema);
  Dataset ds = load_records(a, schema, err);
  if (ds.empty()) err << "warning: dataset is empty; tables contain zeros\n";
  const Format f = parse_format(a.format);
  const auto dir = output_dir(a.out_dir);
  for (const auto& v : schema->variables) {
    const auto path = dir / ("describe_" + slug(v.name) + "." + extension(f));
    write_file(path, render({crosstab_table(crosstab(ds, v.name))}, f));
    if (a.verbose) err << "wrote " << path.string() << '\n';
  }
  out << "described " << ds.size() << " records across " << schema->variables.size()
      << " variables\n";
  return kExitOk;
}

// --table CSV: header row of column labels (first cell names the axes),
// then one row per row label followed by counts.
CountTable read_count_table(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read table '" + path + "'");
  CsvReader reader(in);
  std::vector<std::string> fields;
  if (!reader.next(fields) || fields.size() < 2)
    throw InputError("table '" + path + "': missing header row");
  CountTable t;
  t.row_variable = fields[0];
  t.col_labels.assign(fields.begin() + 1, fields.end());
  std::vector<std::vector<double>> rows;
  while (reader.next(fields)) {
    if (is_blank_record(fields)) continue;
    if (fields.size() != t.col_labels.size() + 1)
      throw InputError("table '" + path + "' line " + std::to_string(reader.line()) +
                       ": expected " + std::to_string(t.col_labels.size() + 1) + " fields");
    t.row_labels.push_back(fields[0]);
    std::vector<double> row;
    for (std::size_t c = 1; c < fields.size(); ++c) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(fields[c], &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != fields[c].size() || !(v >= 0.0))
        throw InputError("table '" + path + "' line " + std::to_string(reader.line()) +
                         ": '" + fields[c] + "' is not a non-negative count");
      row.push_back(v);
    }
    rows.push_back(std::move(row));
  }
  t.counts.resize(static_cast<Eigen::Index>(rows.size()),
                  static_cast<Eigen::Index>(t.col_labels.size()));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows[r].size(); ++c)
      t.counts(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
  return t;
}

int cmd_chisq(const CommonArgs& a, const std::string& var_a, const std::string& var_b,
              const std::string& table_path, std::ostream& out, std::ostream& err) {
  CountTable observed;
  if (!table_path.empty()) {
    observed = read_count_table(table_path);
    if (!var_a.empty()) observed.row_variable = var_a;
    if (!var_b.empty()) observed.col_variable = var_b;
  } else {
    if (var_a.empty() || var_b.empty())
      throw InputError("chisq needs --var-a and --var-b (or --table)");
    if (var_a == var_b) throw InputError("chisq: --var-a and --var-b must differ");
    auto schema = load_schema(a.schema);
    Dataset ds = load_records(a, schema, err);
    observed = observed_table(ds, var_a, var_b);
  }
  ContingencyResult res = chi_square_test(observed);
  for (const auto& w : res.warnings) err << "warning: " << w << '\n';
  const Format f = parse_format(a.format);
  const auto dir = output_dir(a.out_dir);
  const std::string stem = "chisq_" + slug(observed.row_variable.empty() ? "rows"
                                                                          : observed.row_variable) +
                           "_x_" +
                           slug(observed.col_variable.empty() ? "cols" : observed.col_variable);
  write_file(dir / (stem + "." + extension(f)), render(contingency_tables(res), f));
  out << "chi-square = " << format_human(res.chi_square) << ", df = " << res.df << ", p "
      << (res.p_value < 1e-4 ? "" : "= ") << format_p_value(res.p_value) << '\n';
  return kExitOk;
}

std::string diagnostics_json(const OrderedLogitFit& fit) {
  nlohmann::ordered_json j;
  j["converged"] = fit.converged;
  j["iterations"] = fit.iterations;
  j["gradient_norm"] = fit.gradient_norm;
  j["log_likelihood"] = fit.log_likelihood;
  j["null_log_likelihood"] = fit.null_log_likelihood;
  j["beta"] = std::vector<double>(fit.params.beta.begin(), fit.params.beta.end());
  j["cutoffs"] = std::vector<double>(fit.params.cutoffs.begin(), fit.params.cutoffs.end());
  j["warnings"] = fit.warnings;
  return j.dump(2) + "\n";
}

int cmd_fit(const CommonArgs& a, const FitOptions& options, std::ostream& out,
            std::ostream& err) {
  auto schema = load_schema(a.schema);
  Dataset ds = load_records(a, schema, err);
  const DesignMatrix design = encode_design(ds, *schema);
  const auto dir = output_dir(a.out_dir);
  OrderedLogitFit fit = ordsev::fit(design, options);
  for (const auto& w : fit.warnings) err << "warning: " << w << '\n';
  if (a.verbose)
    err << "fit: " << fit.iterations << " iterations, gradient max-norm "
        << format_human(fit.gradient_norm) << '\n';
  if (!fit.converged) {
    write_file(dir / "fit_diagnostics.json", diagnostics_json(fit));
    err << "error: fit did not converge within " << options.max_iter
        << " iterations (gradient max-norm " << format_human(fit.gradient_norm)
        << "); diagnostics in " << (dir / "fit_diagnostics.json").string() << '\n';
    return kExitNumerical;
  }

  FitArchive archive;
  archive.schema = *schema;
  archive.schema_sha256 = schema_hash(*schema);
  for (const auto& c : design.columns) archive.columns.push_back(c.label());
  archive.fit = fit;
  archive.options = options;
  write_file(dir / "fit_archive.json", serialize_archive(archive));

  const FitReport rep = report(fit, design.columns);
  const Format f = parse_format(a.format);
  write_file(dir / (std::string("fit_report.") + extension(f)), render(report_tables(rep), f));
  out << "log-likelihood " << format_human(rep.log_likelihood) << ", LR chi-square "
      << format_human(rep.lr.chi_square) << " (df " << rep.lr.df << "), McFadden rho^2 "
      << format_human(rep.mcfadden_rho2) << '\n';
  return kExitOk;
}

int cmd_margins(const CommonArgs& a, const std::string& archive_path, std::ostream& out,
                std::ostream& err) {
  const std::string path =
      archive_path.empty() ? (fs::path(a.out_dir) / "fit_archive.json").string() : archive_path;
  if (!fs::exists(path)) throw InputError("missing fit archive '" + path + "'");
  const FitArchive archive = parse_archive(read_file(path, "archive"));
  auto schema = a.schema.empty() ? std::make_shared<const CategoricalSchema>(archive.schema)
                                 : load_schema(a.schema);
  if (schema_hash(*schema) != archive.schema_sha256)
    throw InputError("schema hash mismatch: archive was fitted with schema " +
                     archive.schema_sha256 + ", records use " + schema_hash(*schema));
  Dataset ds = load_records(a, schema, err);
  const DesignMatrix design = encode_design(ds, *schema);
  const auto table = margins_table(archive.fit, design, schema->outcome);
  const Format f = parse_format(a.format);
  const auto dir = output_dir(a.out_dir);
  write_file(dir / (std::string("margins.") + extension(f)),
             render({margins_text_table(table)}, f));
  double worst = 0.0;
  for (const auto& r : table.rows) worst = std::max(worst, std::fabs(r.row_sum()));
  out << "marginal effects for " << table.rows.size() << " columns; max |row sum| "
      << format_human(worst) << '\n';
  return kExitOk;
}

int cmd_simulate(const CommonArgs& a, const std::string& spec_path,
                 std::optional<std::uint64_t> seed, std::optional<long long> n,
                 std::ostream& out, std::ostream& err) {
  auto j = [&] {
    const std::string text = read_asset(spec_path, "spec");
    try {
      return nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw InputError(std::string("spec: malformed text: ") + e.what());
    }
  }();
  if (seed) j["seed"] = *seed;
  if (n) {
    if (*n < 1) throw InputError("simulate: n must be at least 1");
    j["n"] = *n;
  }
  const GeneratorSpec spec = generator_spec_from_json(j);
  const Dataset ds = simulate(spec);
  const auto dir = output_dir(a.out_dir);
  std::ostringstream csv;
  write_records(csv, ds);
  write_file(dir / "records.csv", csv.str());

  nlohmann::ordered_json prov;
  prov["generator"] = "splitmix64-counter";
  prov["seed"] = spec.seed;
  prov["n"] = spec.sample_size;
  prov["spec_sha256"] = sha256_hex(to_json(spec).dump());
  prov["schema_sha256"] = schema_hash(spec.schema);
  prov["records_sha256"] = sha256_hex(csv.str());
  write_file(dir / "records.provenance.json", prov.dump(2) + "\n");
  write_file(dir / "schema.json", to_json(spec.schema).dump(2) + "\n");
  if (a.verbose) err << "simulated " << ds.size() << " records\n";
  out << "wrote " << ds.size() << " records to " << (dir / "records.csv").string() << '\n';
  return kExitOk;
}

void check_threads_env(std::ostream& err) {
  const char* v = std::getenv("ORDSEV_THREADS");
  if (!v) return;
  char* end = nullptr;
  const long n = std::strtol(v, &end, 10);
  if (end == v || *end != '\0' || n < 1)
    err << "warning: ignoring invalid ORDSEV_THREADS='" << v << "'\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"ordsev: ordered-logit crash severity analysis", "ordsev"};
  app.require_subcommand(1, 1);

  CommonArgs common;
  FitOptions fit_options;
  std::string var_a, var_b, table_path, archive_path, spec_path = "table4_dgp";
  std::optional<std::uint64_t> seed;
  std::optional<long long> n;

  auto* describe = app.add_subcommand("describe", "Cross-tabulate every variable by severity");
  add_common(describe, common, true);

  auto* chisq = app.add_subcommand("chisq", "Pearson chi-square test of two variables");
  add_common(chisq, common, false);
  chisq->add_option("--var-a", var_a, "Row variable (may be the outcome)");
  chisq->add_option("--var-b", var_b, "Column variable (may be the outcome)");
  chisq->add_option("--table", table_path, "Pre-tabulated counts CSV instead of records");

  auto* fitcmd = app.add_subcommand("fit", "Fit the ordered logit model");
  add_common(fitcmd, common, true);
  add_fit_options(fitcmd, fit_options);

  auto* margins = app.add_subcommand("margins", "Average marginal effects from a fit archive");
  add_common(margins, common, true);
  margins->add_option("--archive", archive_path, "Fit archive (default OUT/fit_archive.json)");

  auto* sim = app.add_subcommand("simulate", "Generate synthetic records");
  add_common(sim, common, false);
  sim->add_option("--spec", spec_path, "Generator spec JSON or bundled name")
      ->capture_default_str();
  sim->add_option("--seed", seed, "Override the spec's seed");
  sim->add_option("--n", n, "Override the spec's sample size");

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "error: " << e.what() << '\n' << app.help();
    return kExitInput;
  }

  check_threads_env(err);
  try {
    if (*describe) return cmd_describe(common, out, err);
    if (*chisq) return cmd_chisq(common, var_a, var_b, table_path, out, err);
    if (*fitcmd) return cmd_fit(common, fit_options, out, err);
    if (*margins) return cmd_margins(common, archive_path, out, err);
    if (*sim) return cmd_simulate(common, spec_path, seed, n, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.kind() == ErrorKind::Numerical ? kExitNumerical : kExitInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}

}  // namespace ordsev::tools
