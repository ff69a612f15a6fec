#include "linksmooth_cli/output.hpp"

#include <fstream>

#include <fmt/format.h>

#include <linksmooth/error.hpp>

#ifndef LINKSMOOTH_VERSION
#define LINKSMOOTH_VERSION "0.0.0"
#endif

namespace linksmooth::cli {

std::string_view tool_version() noexcept { return LINKSMOOTH_VERSION; }

std::string csv_real(double value) { return fmt::format("{:.17g}", value); }

void write_file(const std::filesystem::path& path, std::string_view content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw Error("cannot open " + path.string() + " for writing");
  file.write(content.data(), static_cast<std::streamsize>(content.size()));
  file.close();
  if (!file) throw Error("failed writing " + path.string());
}

void write_json(const std::filesystem::path& path, const Json& doc) {
  write_file(path, doc.dump(2) + "\n");
}

Json config_echo(const RunOptions& o) {
  Json c;
  c["design"] = o.design;
  c["n"] = o.sample_size();
  c["d"] = o.d;
  c["kernel"] = o.kernel;
  c["kernel_normalized"] = o.kernel_normalized;
  c["s"] = o.s;
  c["h"] = o.h ? Json(*o.h) : Json(nullptr);
  const auto rule = o.resolved_lambda_rule();
  c["lambda_rule"] = std::string(to_string(rule.kind));
  c["lambda"] = rule.kind == LambdaRuleKind::kFixed ? Json(rule.value) : Json(nullptr);
  c["nu"] = o.nu;
  c["query"] = o.query_point();
  c["model"] = o.model;
  c["constant"] = o.constant;
  c["beta"] = o.beta;
  c["L"] = o.lipschitz;
  c["law"] = o.law;
  c["sigma"] = o.sigma;
  c["sigma_u"] = o.sigma_u;
  c["sigma_v"] = o.sigma_v;
  c["reps"] = o.reps;
  c["rx"] = o.rx;
  c["ry"] = o.ry;
  c["seed"] = o.seed;
  c["bins"] = o.bins ? Json(*o.bins) : Json(nullptr);
  c["ns"] = o.ns;
  return c;
}

Json document_header(const RunOptions& options) {
  Json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["tool_version"] = tool_version();
  doc["command"] = options.command;
  doc["seed"] = options.seed;
  doc["config"] = config_echo(options);
  return doc;
}

Json to_json(const ConditionAudit& audit) {
  return Json{{"bandwidth_lower", audit.bandwidth_lower},
              {"bandwidth_upper", audit.bandwidth_upper},
              {"lambda_lower", audit.lambda_lower},
              {"lambda_upper", audit.lambda_upper},
              {"nu_min", audit.nu_min},
              {"satisfied", audit.satisfied()}};
}

Json to_json(const Histogram& histogram) {
  return Json{{"edges", histogram.edges}, {"counts", histogram.counts}, {"total", histogram.total()}};
}

void append_histogram_rows(std::string& csv, std::string_view design, const Histogram& histogram) {
  for (std::size_t b = 0; b < histogram.counts.size(); ++b) {
    csv += fmt::format("{},{},{},{},{}\n", design, b, csv_real(histogram.edges[b]),
                       csv_real(histogram.edges[b + 1]), histogram.counts[b]);
  }
}

}  // namespace linksmooth::cli
