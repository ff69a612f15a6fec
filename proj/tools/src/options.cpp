#include "linksmooth_cli/options.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <functional>
#include <map>
#include <thread>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <linksmooth/error.hpp>

namespace linksmooth::cli {

namespace {

template <typename T>
T parse_number(const std::string& text, const std::string& what) {
  T value{};
  const char* first = text.data();
  const char* last = text.data() + text.size();
  while (first != last && *first == ' ') ++first;
  while (last != first && last[-1] == ' ') --last;
  if constexpr (std::is_same_v<T, unsigned> || std::is_same_v<T, std::size_t> ||
                std::is_same_v<T, std::uint64_t>) {
    require(first == last || *first != '-', what + " must be non-negative: '" + text + "'");
  }
  auto [ptr, ec] = std::from_chars(first, last, value);
  require(ec == std::errc{} && ptr == last && first != last,
          "cannot parse " + what + " from '" + text + "'");
  return value;
}

bool parse_bool(const std::string& text) {
  if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
  if (text == "false" || text == "0" || text == "no" || text == "off") return false;
  throw InvalidArgument("cannot parse boolean from '" + text + "'");
}

using Setter = std::function<void(RunOptions&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"design.kind", [](RunOptions& o, const std::string& v) { o.design = v; }},
      {"design.n", [](RunOptions& o, const std::string& v) { o.n = parse_number<std::size_t>(v, "n"); }},
      {"design.d", [](RunOptions& o, const std::string& v) { o.d = parse_number<int>(v, "d"); }},
      {"kernel.kind", [](RunOptions& o, const std::string& v) { o.kernel = v; }},
      {"kernel.normalized",
       [](RunOptions& o, const std::string& v) { o.kernel_normalized = parse_bool(v); }},
      {"model.function", [](RunOptions& o, const std::string& v) { o.model = v; }},
      {"model.constant",
       [](RunOptions& o, const std::string& v) { o.constant = parse_number<double>(v, "constant"); }},
      {"model.beta", [](RunOptions& o, const std::string& v) { o.beta = parse_number<double>(v, "beta"); }},
      {"model.lipschitz",
       [](RunOptions& o, const std::string& v) { o.lipschitz = parse_number<double>(v, "L"); }},
      {"model.law", [](RunOptions& o, const std::string& v) { o.law = v; }},
      {"model.sigma", [](RunOptions& o, const std::string& v) { o.sigma = parse_number<double>(v, "sigma"); }},
      {"model.sigma_u",
       [](RunOptions& o, const std::string& v) { o.sigma_u = parse_number<double>(v, "sigma_u"); }},
      {"model.sigma_v",
       [](RunOptions& o, const std::string& v) { o.sigma_v = parse_number<double>(v, "sigma_v"); }},
      {"smoother.s", [](RunOptions& o, const std::string& v) { o.s = parse_number<double>(v, "s"); }},
      {"smoother.h", [](RunOptions& o, const std::string& v) { o.h = parse_number<double>(v, "h"); }},
      {"smoother.lambda_rule", [](RunOptions& o, const std::string& v) { o.lambda_rule = v; }},
      {"smoother.lambda",
       [](RunOptions& o, const std::string& v) { o.lambda = parse_number<double>(v, "lambda"); }},
      {"smoother.nu", [](RunOptions& o, const std::string& v) { o.nu = parse_number<double>(v, "nu"); }},
      {"smoother.query", [](RunOptions& o, const std::string& v) { o.query = parse_real_list(v); }},
      {"montecarlo.reps",
       [](RunOptions& o, const std::string& v) { o.reps = parse_number<std::size_t>(v, "reps"); }},
      {"montecarlo.rx", [](RunOptions& o, const std::string& v) { o.rx = parse_number<std::size_t>(v, "rx"); }},
      {"montecarlo.ry", [](RunOptions& o, const std::string& v) { o.ry = parse_number<std::size_t>(v, "ry"); }},
      {"montecarlo.seed",
       [](RunOptions& o, const std::string& v) { o.seed = parse_number<std::uint64_t>(v, "seed"); }},
      {"montecarlo.bins",
       [](RunOptions& o, const std::string& v) { o.bins = parse_number<std::size_t>(v, "bins"); }},
      {"montecarlo.threads",
       [](RunOptions& o, const std::string& v) { o.threads = parse_number<unsigned>(v, "threads"); }},
      {"rates.ns", [](RunOptions& o, const std::string& v) { o.ns = parse_size_list(v); }},
      {"output.dir", [](RunOptions& o, const std::string& v) { o.out = v; }},
  };
  return table;
}

std::vector<std::string> split(const std::string& text) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    parts.push_back(text.substr(start, comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return parts;
}

}  // namespace

std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> values;
  for (const auto& part : split(text)) values.push_back(parse_number<double>(part, "real list"));
  return values;
}

std::vector<std::size_t> parse_size_list(const std::string& text) {
  std::vector<std::size_t> values;
  for (const auto& part : split(text)) values.push_back(parse_number<std::size_t>(part, "size list"));
  return values;
}

void apply_config_file(const std::filesystem::path& path, RunOptions& options) {
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::ini_parser::read_ini(path.string(), tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw InvalidArgument("cannot read config file: " + std::string(e.what()));
  }
  for (const auto& [section, keys] : tree) {
    require(!keys.empty() || keys.data().empty(),
            "config key '" + section + "' must live inside a section");
    for (const auto& [key, node] : keys) {
      const auto it = setters().find(section + "." + key);
      require(it != setters().end(), "unknown config key '" + section + "." + key + "'");
      it->second(options, node.get_value<std::string>());
    }
  }
}

std::vector<DesignKind> RunOptions::designs() const {
  if (design == "both") return {DesignKind::kFixedLattice, DesignKind::kRandomIID};
  return {parse_design_kind(design)};
}

std::size_t RunOptions::sample_size() const {
  if (n) return *n;
  return command == "conventional" ? 5000 : 500;
}

LambdaRule RunOptions::resolved_lambda_rule() const {
  if (lambda_rule) return parse_lambda_rule(*lambda_rule, lambda.value_or(0.0));
  if (lambda) return parse_lambda_rule("fixed", *lambda);
  return parse_lambda_rule(command == "conventional" ? "inverse-sqrt-n" : "inverse-n");
}

double RunOptions::bandwidth_at(std::size_t n_value) const {
  if (h) return *h;
  return bandwidth(n_value, s, d);
}

KernelSpec RunOptions::kernel_spec() const {
  return {parse_kernel_kind(kernel), d, kernel_normalized};
}

LinkModel RunOptions::link_model() const {
  LinkModel m;
  m.function = parse_link_function(model);
  m.constant = constant;
  m.beta = beta;
  m.lipschitz = lipschitz;
  m.law = parse_outcome_law(law);
  m.sigma = sigma;
  m.sigma_u = sigma_u;
  m.sigma_v = sigma_v;
  return m;
}

NodeModel RunOptions::node_model() const {
  NodeModel m;
  if (model == "product" || model == "identity") {
    m.function = RegressionFunction::kIdentity;
  } else if (model == "constant") {
    m.function = RegressionFunction::kConstant;
  } else {
    throw InvalidArgument("unknown model '" + model + "' (expected identity or constant)");
  }
  m.constant = constant;
  m.law = parse_outcome_law(law);
  require(m.law != OutcomeLaw::kNodeEffect, "the conventional smoother has no node-effect law");
  m.sigma = sigma;
  return m;
}

std::vector<double> RunOptions::query_point() const {
  const std::size_t size = command == "conventional" ? d : 2 * static_cast<std::size_t>(d);
  if (!query) return std::vector<double>(size, 0.5);
  require(query->size() == size, "query needs " + std::to_string(size) + " coordinates");
  return *query;
}

SmootherConfig RunOptions::smoother_at(std::size_t n_value) const {
  const auto q = query_point();
  SmootherConfig cfg;
  cfg.kernel = kernel_spec();
  cfg.h = bandwidth_at(n_value);
  cfg.lambda = resolved_lambda_rule()(n_value);
  cfg.query_x.assign(q.begin(), q.begin() + d);
  cfg.query_xp.assign(q.begin() + d, q.end());
  return cfg;
}

unsigned RunOptions::thread_count() const {
  if (threads) return std::max(1u, *threads);
  if (const char* env = std::getenv("LINKSMOOTH_THREADS"); env != nullptr && *env != '\0') {
    return std::max(1u, parse_number<unsigned>(env, "LINKSMOOTH_THREADS"));
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace linksmooth::cli
