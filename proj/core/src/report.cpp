#include "groma/report.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <nlohmann/json.hpp>

namespace groma {

namespace {

using nlohmann::json;

// Real numbers are carried as tagged strings inside the tree and expanded by
// the writer, since nlohmann::json prints shortest round-trip digits.
constexpr std::string_view kRealTag = "\x01real:";

json real(double v) { return std::string(kRealTag) + format_real(v); }

json optional_real(const std::optional<double>& v) { return v ? real(*v) : json(nullptr); }

void write_canonical(const json& node, std::string& out, int depth) {
  const std::string pad(2 * static_cast<std::size_t>(depth + 1), ' ');
  const std::string close_pad(2 * static_cast<std::size_t>(depth), ' ');
  switch (node.type()) {
    case json::value_t::object: {
      if (node.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = node.begin(); it != node.end(); ++it) {  // std::map: sorted keys
        if (!first) out += ",\n";
        first = false;
        out += pad + json(it.key()).dump() + ": ";
        write_canonical(it.value(), out, depth + 1);
      }
      out += "\n" + close_pad + "}";
      return;
    }
    case json::value_t::array: {
      if (node.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < node.size(); ++i) {
        if (i) out += ",\n";
        out += pad;
        write_canonical(node[i], out, depth + 1);
      }
      out += "\n" + close_pad + "]";
      return;
    }
    case json::value_t::string: {
      const auto& s = node.get_ref<const std::string&>();
      if (s.starts_with(kRealTag)) {
        out += s.substr(kRealTag.size());
        return;
      }
      out += node.dump();
      return;
    }
    default:
      out += node.dump();
  }
}

json config_json(const RunConfig& c) {
  json j = json::object();
  j["model_path"] = c.model_path.generic_string();
  j["data_path"] = c.data_path.generic_string();
  j["label_path"] = c.label_path.generic_string();
  j["data_format"] = to_string(c.data_format);
  if (c.labels) {
    j["labels"] = *c.labels;
  } else {
    j["labels"] = "all";
  }
  j["n"] = c.n;
  j["k"] = c.k;
  j["epsilon"] = real(c.epsilon);
  j["delta"] = real(c.delta);
  j["seed"] = c.seed;
  j["mode"] = to_string(c.mode);
  j["aggregate"] = to_string(c.method);
  j["tolerance"] = real(c.tolerance);
  j["range_construction"] = to_string(c.range_construction);
  j["clip"] = c.clip;
  j["with_replacement"] = c.with_replacement;
  j["domain_lo"] = real(c.domain_lo);
  j["domain_hi"] = real(c.domain_hi);
  j["estimator"] = c.policy == EstimatorPolicy::Auto ? "auto" : "empirical";
  return j;
}

json label_json(const LabelReport& l, const RunConfig& c) {
  json j = json::object();
  j["label"] = l.label;
  j["status"] = l.failure ? "failed" : "ok";
  if (l.failure) {
    j["failure"] = {{"code", to_string(l.failure->code)}, {"message", l.failure->message}};
  } else {
    j["failure"] = nullptr;
  }
  j["pgcr"] = optional_real(l.pgcr);
  if (l.error) {
    j["error"] = {{"tolerance", real(l.error->tolerance)},
                  {"range", real(l.error->range)},
                  {"range_construction", to_string(c.range_construction)},
                  {"probability_exceed", real(l.error->probability_exceed)},
                  {"n", l.error->n}};
  } else {
    j["error"] = nullptr;
  }
  j["n_requested"] = l.n_requested;
  j["n_used"] = l.n_used;
  j["n_skipped_misclassified"] = l.n_skipped_misclassified;
  j["normality_reject_count"] = l.normality_reject_count;
  j["degenerate_count"] = l.degenerate_count;
  j["clamped_count"] = l.clamped_count;
  if (c.per_point) {
    json points = json::array();
    for (const PointSummary& p : l.per_point) {
      json pj = {{"draw_position", p.draw_position},
                 {"source_index", p.source_index},
                 {"classified_correctly", p.classified_correctly}};
      if (p.classified_correctly) {
        pj["plr"] = real(p.plr);
        pj["method"] = to_string(p.method);
        pj["mu"] = real(p.mu);
        pj["sigma"] = real(p.sigma);
        pj["a2_star"] = p.a2_star ? real(*p.a2_star) : json(nullptr);
        pj["ad_reject"] = p.ad_reject;
      }
      points.push_back(std::move(pj));
    }
    j["per_point"] = std::move(points);
  }
  return j;
}

std::string csv_real(const std::optional<double>& v) { return v ? format_real(*v) : std::string(); }

std::optional<double> error_probability(const LabelReport& l) {
  if (l.error) return l.error->probability_exceed;
  return std::nullopt;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  out << content;
  if (!out) throw Error(ErrorCode::IoError, "short write to " + path.string());
}

}  // namespace

std::string format_real(double v) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 17);
  (void)ec;
  return {buf.data(), end};
}

std::string to_canonical_json(const PGCRReport& report) {
  json doc = json::object();
  doc["tool"] = {{"name", "groma"}, {"version", report.tool_version}};
  doc["config"] = config_json(report.config);
  doc["model"] = {{"fingerprint", report.model_fingerprint},
                  {"input_dim", report.input_dim},
                  {"label_count", report.label_count},
                  {"layers", report.model_layers}};
  doc["dataset"] = {{"fingerprint", report.dataset_fingerprint},
                    {"size", report.dataset_size},
                    {"representativeness", "caller-supplied; not verified"}};
  json labels = json::array();
  for (const auto& l : report.labels) labels.push_back(label_json(l, report.config));
  doc["labels"] = std::move(labels);

  std::string out;
  write_canonical(doc, out, 0);
  out += '\n';
  return out;
}

std::string to_csv(const PGCRReport& report) {
  std::string out = "label,pgcr,error_probability,n_used,n_skipped,normality_rejects\n";
  for (const auto& l : report.labels) {
    out += std::to_string(l.label) + ',' + csv_real(l.pgcr) + ',' + csv_real(error_probability(l)) + ',' +
           std::to_string(l.n_used) + ',' + std::to_string(l.n_skipped_misclassified) + ',' +
           std::to_string(l.normality_reject_count) + '\n';
  }
  return out;
}

std::string to_chart_csv(const PGCRReport& report) {
  std::string out = "label,pgcr,error_probability\n";
  for (const auto& l : report.labels)
    out += std::to_string(l.label) + ',' + csv_real(l.pgcr) + ',' + csv_real(error_probability(l)) + '\n';
  return out;
}

std::string to_timing_json(const PGCRReport& report) {
  json doc = json::object();
  json labels = json::array();
  for (const auto& l : report.labels) labels.push_back({{"label", l.label}, {"wall_seconds", l.wall_seconds}});
  doc["labels"] = std::move(labels);
  return doc.dump(2) + '\n';
}

OutputBundle emit_report(const PGCRReport& report, const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create " + out_dir.string() + ": " + ec.message());

  OutputBundle b{out_dir / "report.json", out_dir / "pgcr.csv", out_dir / "chart.csv", out_dir / "timing.json"};
  write_file(b.report_path, to_canonical_json(report));
  write_file(b.csv_path, to_csv(report));
  write_file(b.chart_path, to_chart_csv(report));
  write_file(b.timing_path, to_timing_json(report));
  return b;
}

}  // namespace groma
