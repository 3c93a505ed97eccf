#include "cli_options.hpp"

#include <CLI11.hpp>
#include <map>

namespace groma::cli {

namespace {

constexpr const char* kDefaultOutDir = "groma_out";

template <typename T>
std::vector<std::string> keys(const std::map<std::string, T>& m) {
  std::vector<std::string> out;
  for (const auto& [k, v] : m) out.push_back(k);
  return out;
}

}  // namespace

ParseOutcome parse_args(const std::vector<std::string>& args, std::optional<std::string> env_out_dir) {
  CLI::App app{"groma: probabilistic global categorial robustness of a classifier", "groma"};
  app.get_formatter()->column_width(34);

  CliOptions opts;
  RunConfig& c = opts.config;
  std::string model;
  std::string data;
  std::string label_file;
  std::string data_format;
  std::vector<Label> labels;
  std::string out_dir;
  std::string estimator = "auto";
  std::string mode = "delta_deviation";
  std::string method = "mean";
  std::string range = "plus_minus_5_sigma";
  bool no_clip = false;

  const std::map<std::string, StatisticMode> modes{{"delta_deviation", StatisticMode::DeltaDeviation},
                                                   {"misclassification", StatisticMode::Misclassification}};
  const std::map<std::string, AggregationMethod> methods{{"mean", AggregationMethod::Mean},
                                                         {"median", AggregationMethod::Median}};
  const std::map<std::string, RangeConstruction> ranges{{"plus_minus_5_sigma", RangeConstruction::PlusMinus5Sigma},
                                                        {"a_priori_unit", RangeConstruction::APrioriUnit}};

  app.add_option("--model", model, "GNNF model file")->required();
  app.add_option("--data", data, "CSV file, or IDX images[,labels]")->required();
  app.add_option("--label-file", label_file, "IDX1 label file (alternative to images,labels)");
  app.add_option("--data-format", data_format, "idx | csv (default: from the file extension)")
      ->check(CLI::IsMember({"idx", "csv"}));
  app.add_option("--labels", labels, "comma-separated labels to evaluate (default: all)")->delimiter(',');
  app.add_option("--n", c.n, "points drawn per label")->capture_default_str();
  app.add_option("--k", c.k, "perturbations per point")->capture_default_str();
  app.add_option("--epsilon", c.epsilon, "L-infinity perturbation radius")->capture_default_str();
  app.add_option("--delta", c.delta, "allowed confidence deviation")->capture_default_str();
  app.add_option("--seed", c.seed, "run seed")->capture_default_str();
  app.add_option("--mode", mode, "delta_deviation | misclassification")
      ->check(CLI::IsMember(keys(modes)))
      ->capture_default_str();
  app.add_option("--aggregate", method, "mean | median")->check(CLI::IsMember(keys(methods)))->capture_default_str();
  app.add_option("--tolerance", c.tolerance, "error tolerance t of the Hoeffding bound")->capture_default_str();
  app.add_option("--range-construction", range, "plus_minus_5_sigma | a_priori_unit")
      ->check(CLI::IsMember(keys(ranges)))
      ->capture_default_str();
  app.add_flag("--no-clip", no_clip, "do not clip perturbed inputs to the domain");
  app.add_option("--workers", c.workers, "worker threads")->capture_default_str();
  app.add_option("--out-dir", out_dir, "output directory (default: $GROMA_OUT_DIR or groma_out)");
  app.add_flag("--quiet", opts.quiet, "suppress per-point progress on stderr");
  app.add_flag("--with-replacement", c.with_replacement, "draw points with replacement");
  app.add_option("--domain-lo", c.domain_lo, "lower input bound")->capture_default_str();
  app.add_option("--domain-hi", c.domain_hi, "upper input bound")->capture_default_str();
  app.add_flag("--per-point", c.per_point, "include per-point diagnostics in report.json");
  app.add_option("--estimator", estimator, "auto | empirical")->check(CLI::IsMember({"auto", "empirical"}));

  ParseOutcome outcome;
  if (args.empty()) {
    outcome.exit_code = kExitUsage;
    outcome.message = app.help();
    return outcome;
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    outcome.exit_code = kExitOk;
    outcome.message = app.help();
    return outcome;
  } catch (const CLI::ParseError& e) {
    outcome.exit_code = kExitUsage;
    outcome.message = std::string("error: ") + e.what() + "\n\n" + app.help();
    return outcome;
  }

  c.model_path = model;
  const auto comma = data.find(',');
  if (comma != std::string::npos) {
    c.data_path = data.substr(0, comma);
    c.label_path = data.substr(comma + 1);
  } else {
    c.data_path = data;
    c.label_path = label_file;
  }
  if (data_format.empty()) data_format = c.data_path.extension() == ".csv" ? "csv" : "idx";
  c.data_format = data_format == "csv" ? DataFormat::Csv : DataFormat::Idx;
  if (!labels.empty()) c.labels = labels;
  c.mode = modes.at(mode);
  c.method = methods.at(method);
  c.range_construction = ranges.at(range);
  c.clip = !no_clip;
  c.policy = estimator == "empirical" ? EstimatorPolicy::ForceEmpirical : EstimatorPolicy::Auto;

  if (!out_dir.empty())
    opts.out_dir = out_dir;
  else if (env_out_dir && !env_out_dir->empty())
    opts.out_dir = *env_out_dir;
  else
    opts.out_dir = kDefaultOutDir;

  try {
    validate(c);
    if (!(c.domain_lo <= c.domain_hi))
      throw Error(ErrorCode::InvalidConfig, "--domain-lo must not exceed --domain-hi");
  } catch (const Error& e) {
    outcome.exit_code = kExitUsage;
    outcome.message = std::string("error: ") + e.what() + "\n\n" + app.help();
    return outcome;
  }

  outcome.options = std::move(opts);
  return outcome;
}

int exit_code_for(const PGCRReport& report) noexcept { return report.all_succeeded() ? kExitOk : kExitLabelFailed; }

}  // namespace groma::cli
