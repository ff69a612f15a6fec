#include "linksmooth_cli/app.hpp"

#include <algorithm>
#include <optional>

#include <CLI11.hpp>

#include <linksmooth/error.hpp>

#include "linksmooth_cli/commands.hpp"
#include "linksmooth_cli/options.hpp"

namespace linksmooth::cli {

namespace {

// Flags as typed on the command line; unset ones leave the file/defaults alone.
struct Flags {
  std::optional<std::string> config;
  std::optional<std::string> design;
  std::optional<std::size_t> n;
  std::optional<int> d;
  std::optional<double> s;
  std::optional<double> h;
  std::optional<double> beta;
  std::optional<double> lipschitz;
  std::optional<std::string> kernel;
  std::optional<std::string> lambda_rule;
  std::optional<double> lambda;
  std::optional<double> nu;
  std::optional<std::string> model;
  std::optional<double> constant;
  std::optional<std::string> law;
  std::optional<double> sigma;
  std::optional<double> sigma_u;
  std::optional<double> sigma_v;
  std::optional<std::string> query;
  std::optional<std::size_t> reps;
  std::optional<std::size_t> rx;
  std::optional<std::size_t> ry;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> bins;
  std::optional<unsigned> threads;
  std::optional<std::string> out;
  std::optional<std::string> ns;
};

void add_flags(CLI::App& sub, Flags& f) {
  sub.add_option("--config", f.config, "INI config file (flags override it)");
  sub.add_option("--design", f.design, "fixed, random or both");
  sub.add_option("--n", f.n, "number of nodes (default 500; 5000 for conventional)");
  sub.add_option("--d", f.d, "covariate dimension");
  sub.add_option("--s", f.s, "assumed smoothness; h = n^{-1/(s+d)}");
  sub.add_option("--h", f.h, "explicit bandwidth");
  sub.add_option("--beta", f.beta, "Hoelder exponent of the true f");
  sub.add_option("--L", f.lipschitz, "Hoelder constant of the true f");
  sub.add_option("--kernel", f.kernel, "boxcar or epanechnikov");
  sub.add_option("--lambda-rule", f.lambda_rule, "inverse-n, inverse-sqrt-n or fixed");
  sub.add_option("--lambda", f.lambda, "fixed lambda (implies --lambda-rule fixed)");
  sub.add_option("--nu", f.nu, "exponent in the lower bound on lambda");
  sub.add_option("--model", f.model, "product or constant (identity or constant for conventional)");
  sub.add_option("--constant", f.constant, "value of the constant model");
  sub.add_option("--law", f.law, "bernoulli, gaussian or node-effect");
  sub.add_option("--sigma", f.sigma, "Gaussian noise sd");
  sub.add_option("--sigma-u", f.sigma_u, "node-effect sd");
  sub.add_option("--sigma-v", f.sigma_v, "pair noise sd for the node-effect law");
  sub.add_option("--query", f.query, "comma-separated query: x,x' (x only for conventional)");
  sub.add_option("--reps", f.reps, "replicates per design (histogram, conventional)");
  sub.add_option("--rx", f.rx, "covariate draws (decompose, ratestudy)");
  sub.add_option("--ry", f.ry, "outcome draws per covariate draw (decompose, ratestudy)");
  sub.add_option("--seed", f.seed, "master seed");
  sub.add_option("--bins", f.bins, "histogram bins (Freedman-Diaconis when unset)");
  sub.add_option("--threads", f.threads, "worker threads (env LINKSMOOTH_THREADS)");
  sub.add_option("--out", f.out, "output directory");
  sub.add_option("--ns", f.ns, "comma-separated sample sizes (ratestudy)");
}

template <typename T, typename U>
void overlay(const std::optional<T>& flag, U& target) {
  if (flag) target = *flag;
}

RunOptions resolve(const std::string& command, const Flags& f) {
  RunOptions o;
  o.command = command;
  if (f.config) apply_config_file(*f.config, o);
  overlay(f.design, o.design);
  overlay(f.n, o.n);
  overlay(f.d, o.d);
  overlay(f.s, o.s);
  overlay(f.h, o.h);
  overlay(f.beta, o.beta);
  overlay(f.lipschitz, o.lipschitz);
  overlay(f.kernel, o.kernel);
  overlay(f.lambda_rule, o.lambda_rule);
  overlay(f.lambda, o.lambda);
  overlay(f.nu, o.nu);
  overlay(f.model, o.model);
  overlay(f.constant, o.constant);
  overlay(f.law, o.law);
  overlay(f.sigma, o.sigma);
  overlay(f.sigma_u, o.sigma_u);
  overlay(f.sigma_v, o.sigma_v);
  if (f.query) o.query = parse_real_list(*f.query);
  overlay(f.reps, o.reps);
  overlay(f.rx, o.rx);
  overlay(f.ry, o.ry);
  overlay(f.seed, o.seed);
  overlay(f.bins, o.bins);
  overlay(f.threads, o.threads);
  overlay(f.out, o.out);
  if (f.ns) o.ns = parse_size_list(*f.ns);

  require(o.design == "fixed" || o.design == "random" || o.design == "both",
          "unknown design '" + o.design + "' (expected fixed, random or both)");
  require(o.d >= 1, "d must be ≥ 1");
  require(!o.n || *o.n >= 2, "n must be ≥ 2");
  require(!o.bins || *o.bins >= 1, "bins must be ≥ 1");
  require(o.reps >= 1, "reps must be ≥ 1");
  return o;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Regularized kernel smoother for link regression: Monte Carlo experiments",
               "linksmooth"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(LINKSMOOTH_VERSION));

  Flags flags;
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"histogram", "estimates at the query under each design; values, histogram and summary"},
      {"decompose", "bias/variance decomposition; decomposition.json"},
      {"ratestudy", "variance and risk decay across --ns; rates.csv and ratefit.json"},
      {"conventional", "conventional kernel regression under both designs (d = 1)"},
      {"selftest", "quick invariant checks"},
  };
  for (const auto& [name, help] : commands) add_flags(*app.add_subcommand(name, help), flags);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion& e) {
    out << e.what() << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidConfig;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    const RunOptions options = resolve(command, flags);
    if (command == "histogram") return cmd_histogram(options, out, err);
    if (command == "decompose") return cmd_decompose(options, out, err);
    if (command == "ratestudy") return cmd_ratestudy(options, out, err);
    if (command == "conventional") return cmd_conventional(options, out, err);
    return cmd_selftest(options, out, err);
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace linksmooth::cli
