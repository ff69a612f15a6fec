#include "linksmooth_cli/commands.hpp"

#include <chrono>
#include <fstream>

#include <fmt/format.h>

#include <linksmooth/error.hpp>
#include <linksmooth/montecarlo.hpp>
#include <linksmooth/rates.hpp>
#include <linksmooth/summation.hpp>

#include "linksmooth_cli/output.hpp"

namespace linksmooth::cli {

namespace {

DesignSpec design_spec(DesignKind kind, std::size_t n, int d) {
  return kind == DesignKind::kFixedLattice ? DesignSpec::fixed(n, d) : DesignSpec::random(n, d);
}

ExperimentConfig experiment(const RunOptions& o, DesignKind kind) {
  ExperimentConfig cfg;
  cfg.design = design_spec(kind, o.sample_size(), o.d);
  cfg.model = o.link_model();
  cfg.smoother = o.smoother_at(o.sample_size());
  cfg.rx = o.rx;
  cfg.ry = o.ry;
  cfg.master_seed = o.seed;
  cfg.histogram.bins = o.bins;
  return cfg;
}

// One estimate per replicate: a fresh covariate draw for every replicate under
// the random design, a single lattice with `reps` outcome draws under the fixed one.
ExperimentConfig histogram_experiment(const RunOptions& o, DesignKind kind) {
  ExperimentConfig cfg = experiment(o, kind);
  if (kind == DesignKind::kFixedLattice) {
    cfg.rx = 1;
    cfg.ry = o.reps;
  } else {
    cfg.rx = o.reps;
    cfg.ry = 1;
  }
  return cfg;
}

std::string values_file(const RunOptions& o, DesignKind kind) {
  if (o.designs().size() == 1) return "values.csv";
  return fmt::format("values_{}.csv", to_string(kind));
}

void warn_audit(const ConditionAudit& audit, std::size_t n, double nu, std::ostream& err) {
  if (audit.satisfied()) return;
  err << fmt::format("warning: n={} violates the bandwidth/regularization conditions ({}) at nu={}\n",
                     n, audit.violations(), nu);
}

Json spread_summary(std::string_view design, std::span<const double> values, double truth) {
  CompensatedSum sq;
  for (double v : values) sq.add((v - truth) * (v - truth));
  return Json{{"design", design},
              {"replicates", values.size()},
              {"mean", mean(values)},
              {"variance", sample_variance(values)},
              {"risk", sq.value() / static_cast<double>(values.size())}};
}

void write_manifest(const RunOptions& o, const Json& outputs, double seconds) {
  Json doc = document_header(o);
  doc["threads"] = o.thread_count();
  doc["wall_time_seconds"] = seconds;
  doc["outputs"] = outputs;
  write_json(o.out / "run_manifest.json", doc);
}

class Stopwatch {
 public:
  [[nodiscard]] double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

}  // namespace

int cmd_histogram(const RunOptions& o, std::ostream& out, std::ostream& err) {
  const Stopwatch clock;
  const ExecutionOptions exec{o.thread_count()};
  const std::size_t n = o.sample_size();
  const auto smoother = o.smoother_at(n);
  const auto audit = audit_conditions(n, o.d, smoother.h, smoother.lambda, o.nu);
  warn_audit(audit, n, o.nu, err);

  std::vector<DesignKind> kinds = o.designs();
  std::vector<HistogramRun> runs;
  std::vector<std::vector<double>> values;
  for (DesignKind kind : kinds) {
    const auto cfg = histogram_experiment(o, kind);
    cfg.validate();
    runs.push_back(run_histogram(cfg, exec));
    auto& v = values.emplace_back();
    for (const auto& r : runs.back().values) v.push_back(r.value);
  }
  if (runs.size() == 2) {
    auto [first, second] = compare_histograms(values[0], values[1], {o.bins});
    runs[0].histogram = std::move(first);
    runs[1].histogram = std::move(second);
  }

  Json outputs = Json::array();
  std::string hist_csv(kHistogramHeader);
  Json doc = document_header(o);
  doc["truth"] = runs.front().truth;
  doc["h"] = smoother.h;
  doc["lambda"] = smoother.lambda;
  doc["audit"] = to_json(audit);
  doc["designs"] = Json::array();
  for (std::size_t k = 0; k < runs.size(); ++k) {
    const auto design = to_string(kinds[k]);
    std::string csv = "replicate,draw,inner,value,s_nh,t_nh,conditional_mean\n";
    for (const auto& r : runs[k].values) {
      csv += fmt::format("{},{},{},{},{},{},{}\n", r.replicate, r.draw, r.inner, csv_real(r.value),
                         csv_real(r.s_nh), csv_real(r.t_nh), csv_real(r.conditional_mean));
    }
    const auto file = values_file(o, kinds[k]);
    write_file(o.out / file, csv);
    outputs.push_back(file);
    append_histogram_rows(hist_csv, design, runs[k].histogram);

    Json entry = spread_summary(design, values[k], runs[k].truth);
    entry["values_file"] = file;
    entry["histogram"] = to_json(runs[k].histogram);
    doc["designs"].push_back(entry);
  }
  if (runs.size() == 2) {
    doc["variance_ratio_random_over_fixed"] =
        sample_variance(values[1]) / sample_variance(values[0]);
  }
  write_file(o.out / "histogram.csv", hist_csv);
  write_json(o.out / "summary.json", doc);
  outputs.push_back("histogram.csv");
  outputs.push_back("summary.json");
  write_manifest(o, outputs, clock.seconds());

  for (const auto& entry : doc["designs"]) {
    out << fmt::format("{:>6}  mean {:.6f}  variance {:.6e}\n", entry["design"].get<std::string>(),
                       entry["mean"].get<double>(), entry["variance"].get<double>());
  }
  if (doc.contains("variance_ratio_random_over_fixed")) {
    out << fmt::format("variance ratio random/fixed {:.4f}\n",
                       doc["variance_ratio_random_over_fixed"].get<double>());
  }
  return 0;
}

int cmd_decompose(const RunOptions& o, std::ostream& out, std::ostream& err) {
  const Stopwatch clock;
  const ExecutionOptions exec{o.thread_count()};
  const std::size_t n = o.sample_size();
  const auto smoother = o.smoother_at(n);
  const auto audit = audit_conditions(n, o.d, smoother.h, smoother.lambda, o.nu);
  warn_audit(audit, n, o.nu, err);

  Json doc = document_header(o);
  doc["h"] = smoother.h;
  doc["lambda"] = smoother.lambda;
  doc["audit"] = to_json(audit);
  doc["designs"] = Json::array();
  for (DesignKind kind : o.designs()) {
    const auto cfg = experiment(o, kind);
    cfg.validate();
    const auto est = run_decomposition(cfg, exec);
    doc["designs"].push_back(Json{{"design", to_string(kind)},
                                  {"rx", est.rx},
                                  {"ry", est.ry},
                                  {"truth", est.truth},
                                  {"mean", est.mean},
                                  {"rho1_hat", est.rho1_hat},
                                  {"rho2_hat", est.rho2_hat},
                                  {"rho3_hat", est.rho3_hat},
                                  {"rho3_exact", est.rho3_exact},
                                  {"total_variance", est.total_variance},
                                  {"risk", est.risk},
                                  {"t_bar", est.t_bar},
                                  {"epsilon_hat", est.epsilon_hat},
                                  {"histogram", to_json(est.histogram)}});
    out << fmt::format("{:>6}  rho1 {:.6e}  rho2 {:.6e}  rho3 {:.6e}  total {:.6e}\n",
                       to_string(kind), est.rho1_hat, est.rho2_hat, est.rho3_hat,
                       est.total_variance);
  }
  write_json(o.out / "decomposition.json", doc);
  write_manifest(o, Json::array({"decomposition.json"}), clock.seconds());
  return 0;
}

int cmd_ratestudy(const RunOptions& o, std::ostream& out, std::ostream& err) {
  const Stopwatch clock;
  require(!o.h, "ratestudy derives h from --s; --h is not allowed");
  const ExecutionOptions exec{o.thread_count()};
  const Schedule schedule{o.s, o.resolved_lambda_rule()};
  schedule.validate();
  require(o.ns.size() >= 3, "need ≥ 3 sample sizes");

  std::filesystem::create_directories(o.out);
  std::ofstream csv(o.out / "rates.csv", std::ios::binary | std::ios::trunc);
  if (!csv) throw Error("cannot open " + (o.out / "rates.csv").string() + " for writing");
  csv << "design,n,h,lambda,statistic,value\n" << std::flush;

  Json doc = document_header(o);
  doc["studies"] = Json::array();
  for (DesignKind kind : o.designs()) {
    ExperimentConfig base = experiment(o, kind);
    const auto design = to_string(kind);
    const auto on_point = [&](const RatePoint& p) {
      warn_audit(p.audit, p.n, o.nu, err);
      for (RateStatistic stat : kRateStatistics) {
        csv << fmt::format("{},{},{},{},{},{}\n", design, p.n, csv_real(p.h), csv_real(p.lambda),
                           to_string(stat), csv_real(p.statistic(stat)));
      }
      csv << std::flush;
    };
    const auto study = run_rate_study(base, schedule, o.ns, exec, o.nu, on_point);

    Json entry{{"design", design},
               {"s", o.s},
               {"beta", o.beta},
               {"d", o.d},
               {"lambda_rule", to_string(schedule.lambda_rule.kind)},
               {"nu", study.nu}};
    entry["points"] = Json::array();
    for (const auto& p : study.points) {
      entry["points"].push_back(Json{{"n", p.n},
                                     {"h", p.h},
                                     {"lambda", p.lambda},
                                     {"rx", p.estimate.rx},
                                     {"ry", p.estimate.ry},
                                     {"audit", to_json(p.audit)}});
    }
    entry["fits"] = Json::array();
    for (const auto& f : study.fits) {
      Json fit{{"statistic", to_string(f.statistic)},
               {"predicted", f.predicted ? Json(*f.predicted) : Json(nullptr)},
               {"fitted", f.fit ? Json(f.fit->slope) : Json(nullptr)},
               {"intercept", f.fit ? Json(f.fit->intercept) : Json(nullptr)},
               {"r_squared", f.fit ? Json(f.fit->r_squared) : Json(nullptr)}};
      if (!f.note.empty()) fit["note"] = f.note;
      entry["fits"].push_back(fit);
      out << fmt::format("{:>6}  {:<15} fitted {:>8}  predicted {:>8}\n", design,
                         to_string(f.statistic),
                         f.fit ? fmt::format("{:.3f}", f.fit->slope) : std::string("-"),
                         f.predicted ? fmt::format("{:.3f}", *f.predicted) : std::string("-"));
    }
    doc["studies"].push_back(entry);
  }
  csv.close();
  if (!csv) throw Error("failed writing rates.csv");
  write_json(o.out / "ratefit.json", doc);
  write_manifest(o, Json::array({"rates.csv", "ratefit.json"}), clock.seconds());
  return 0;
}

int cmd_conventional(const RunOptions& o, std::ostream& out, std::ostream&) {
  const Stopwatch clock;
  const ExecutionOptions exec{o.thread_count()};
  ConventionalConfig cfg;
  cfg.n = o.sample_size();
  cfg.model = o.node_model();
  cfg.kernel = o.kernel_spec();
  cfg.h = o.bandwidth_at(cfg.n);
  cfg.lambda = o.resolved_lambda_rule()(cfg.n);
  const auto q = o.query_point();
  require(o.d == 1, "the conventional comparison is univariate (d must be 1)");
  cfg.query = q.front();
  cfg.reps = o.reps;
  cfg.master_seed = o.seed;
  cfg.histogram.bins = o.bins;
  cfg.validate();

  const std::vector<DesignKind> kinds = o.designs();
  std::vector<std::vector<double>> values;
  std::vector<Histogram> histograms;
  double truth = 0.0;
  if (kinds.size() == 2) {
    auto cmp = run_conventional_comparison(cfg, exec);
    truth = cmp.truth;
    values = {std::move(cmp.fixed), std::move(cmp.random)};
    histograms = {std::move(cmp.fixed_histogram), std::move(cmp.random_histogram)};
  } else {
    truth = linksmooth::truth(cfg.model, q);
    values.push_back(run_conventional(cfg, kinds.front(), exec));
    histograms.push_back(make_histogram(values.front(), cfg.histogram));
  }

  Json outputs = Json::array();
  std::string hist_csv(kHistogramHeader);
  Json doc = document_header(o);
  doc["truth"] = truth;
  doc["h"] = cfg.h;
  doc["lambda"] = cfg.lambda;
  doc["designs"] = Json::array();
  for (std::size_t k = 0; k < kinds.size(); ++k) {
    const auto design = to_string(kinds[k]);
    std::string csv = "replicate,value\n";
    for (std::size_t r = 0; r < values[k].size(); ++r) {
      csv += fmt::format("{},{}\n", r, csv_real(values[k][r]));
    }
    const auto file = values_file(o, kinds[k]);
    write_file(o.out / file, csv);
    outputs.push_back(file);
    append_histogram_rows(hist_csv, design, histograms[k]);
    Json entry = spread_summary(design, values[k], truth);
    entry["values_file"] = file;
    entry["histogram"] = to_json(histograms[k]);
    doc["designs"].push_back(entry);
    out << fmt::format("{:>6}  mean {:.6f}  variance {:.6e}\n", design, entry["mean"].get<double>(),
                       entry["variance"].get<double>());
  }
  if (kinds.size() == 2) {
    const double ratio = sample_variance(values[1]) / sample_variance(values[0]);
    doc["variance_ratio_random_over_fixed"] = ratio;
    out << fmt::format("variance ratio random/fixed {:.4f}\n", ratio);
  }
  write_file(o.out / "histogram.csv", hist_csv);
  write_json(o.out / "summary.json", doc);
  outputs.push_back("histogram.csv");
  outputs.push_back("summary.json");
  write_manifest(o, outputs, clock.seconds());
  return 0;
}

}  // namespace linksmooth::cli
