#include <cstdio>
#include <cstdlib>
#include <iostream>

#include "cli_options.hpp"
#include "groma/report.hpp"

int main(int argc, char** argv) {
  using namespace groma;

  const std::vector<std::string> args(argv + 1, argv + argc);
  const char* env = std::getenv("GROMA_OUT_DIR");
  auto parsed = cli::parse_args(args, env ? std::optional<std::string>(env) : std::nullopt);
  if (!parsed.options) {
    (parsed.exit_code == cli::kExitOk ? std::cout : std::cerr) << parsed.message;
    return parsed.exit_code;
  }

  cli::CliOptions& opts = *parsed.options;
  if (!opts.quiet) opts.config.progress = &std::cerr;

  PGCRReport report;
  OutputBundle bundle;
  try {
    report = run_groma(opts.config);
    bundle = emit_report(report, opts.out_dir);
  } catch (const Error& e) {
    std::cerr << "groma: " << e.what() << '\n';
    return e.code() == ErrorCode::InvalidConfig ? cli::kExitUsage : cli::kExitIoError;
  } catch (const std::exception& e) {
    std::cerr << "groma: " << e.what() << '\n';
    return cli::kExitIoError;
  }

  std::printf("%-6s %-12s %-14s %6s %8s\n", "label", "pgcr", "P(|err|>t)", "used", "skipped");
  for (const auto& l : report.labels) {
    if (l.failure) {
      std::printf("%-6u failed: %s\n", l.label, std::string(to_string(l.failure->code)).c_str());
      continue;
    }
    std::printf("%-6u %-12.6f ", l.label, *l.pgcr);
    if (l.error)
      std::printf("%-14.4e ", l.error->probability_exceed);
    else
      std::printf("%-14s ", "n/a");
    std::printf("%6zu %8zu\n", l.n_used, l.n_skipped_misclassified);
  }
  std::printf("report: %s\n", bundle.report_path.string().c_str());
  return cli::exit_code_for(report);
}
