#include "cli.hpp"

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "rankstream/aggregation.hpp"
#include "rankstream/drift_theory.hpp"
#include "rankstream/mallows.hpp"
#include "rankstream/stream_harness.hpp"
#include "rankstream/text_io.hpp"

namespace rankstream::cli {
namespace {

// Input that parsed but cannot be processed (bad files, unwritable outputs, oversize inputs).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct AggregateOptions {
  std::string votes_file;
  std::string method = "borda";
  double rho = 1.0;
};

struct SimulateOptions {
  std::size_t n = 7;
  std::size_t T = 100;
  std::vector<double> rho{0.8, 0.9295, 1.0};
  std::size_t runs = 30;
  std::uint64_t seed = 1;
  std::optional<double> theta;
  std::string out;
};

struct BoundsOptions {
  std::size_t n = 7;
  double rho = 0.9295;
  std::optional<double> theta;
  double delta = 0.05;
  std::string pair = "1,2";
  std::optional<double> gap;
};

struct SampleOptions {
  std::size_t n = 5;
  double theta = 1.0;
  std::string center;
  std::size_t count = 10;
  std::uint64_t seed = 1;
};

Permutation uborda_from_file(const std::vector<WeightedVote>& votes, double rho) {
  bool unit = true;
  for (const auto& v : votes) unit = unit && v.weight == 1.0;
  if (unit) {
    UBordaState state(votes.front().ranking.size(), rho);
    for (const auto& v : votes) state.update(v.ranking);
    return state.ranking();
  }
  // Weighted file: combine reliability weights with the recency weights.
  std::vector<WeightedVote> combined = votes;
  const std::size_t k = combined.size();
  for (std::size_t t = 0; t < k; ++t) combined[t].weight *= std::pow(rho, static_cast<double>(k - 1 - t));
  return weighted_borda(combined).ranking;
}

void cmd_aggregate(const AggregateOptions& opts, std::ostream& out) {
  std::ifstream in(opts.votes_file);
  if (!in) throw DataError("cannot open votes file '" + opts.votes_file + "'");
  const auto votes = read_votes(in);
  const std::size_t n = votes.front().ranking.size();
  Permutation consensus = Permutation::identity(n);
  if (opts.method == "borda") {
    consensus = weighted_borda(votes).ranking;
  } else if (opts.method == "uborda") {
    consensus = uborda_from_file(votes, opts.rho);
  } else if (opts.method == "kemeny") {
    if (n > kMaxEnumerationSize) {
      throw DataError("kemeny is exhaustive and limited to n <= " +
                      std::to_string(kMaxEnumerationSize) + "; votes have n=" + std::to_string(n));
    }
    consensus = kemeny_exact(votes);
  } else {
    consensus = copeland(pairwise_matrices(votes));
  }
  out << consensus.to_string() << '\n';
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw DataError("cannot write '" + path.string() + "'");
  file << contents;
  file.close();
  if (!file) throw DataError("failed writing '" + path.string() + "'");
}

void cmd_simulate(const SimulateOptions& opts, std::ostream& out) {
  ExperimentConfig config;
  config.n = opts.n;
  config.T = opts.T;
  config.rho_values = opts.rho;
  config.runs = opts.runs;
  config.seed = opts.seed;
  config.theta = opts.theta;
  config.validate();

  const std::filesystem::path dir(opts.out);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw DataError("cannot create output directory '" + opts.out + "': " + ec.message());

  const double theta = opts.theta ? *opts.theta : one_third_uniform_theta(opts.n);
  const auto records = run_experiment(config);
  const auto summary = summarize(records);

  std::ostringstream records_csv;
  write_records_csv(records_csv, records);
  std::ostringstream summary_csv;
  write_summary_csv(summary_csv, summary);
  write_file(dir / "records.csv", records_csv.str());
  write_file(dir / "summary.csv", summary_csv.str());
  write_file(dir / "schedule.json",
             schedule_to_json(incremental_reversal_schedule(opts.n, opts.T, theta)) + "\n");
  out << "theta " << format_number(theta) << '\n'
      << "records " << records.size() << " -> " << (dir / "records.csv").string() << '\n'
      << "summary " << summary.size() << " -> " << (dir / "summary.csv").string() << '\n';
}

ItemPair parse_pair(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw std::invalid_argument("--pair expects `i,j`, got '" + text + "'");
  try {
    std::size_t used_i = 0;
    std::size_t used_j = 0;
    const std::string first = text.substr(0, comma);
    const std::string second = text.substr(comma + 1);
    ItemPair pair{std::stoi(first, &used_i), std::stoi(second, &used_j)};
    if (used_i != first.size() || used_j != second.size()) throw std::invalid_argument(text);
    return pair;
  } catch (const std::logic_error&) {
    throw std::invalid_argument("--pair expects `i,j`, got '" + text + "'");
  }
}

void cmd_bounds(const BoundsOptions& opts, std::ostream& out) {
  DriftBoundInputs inputs;
  inputs.n = opts.n;
  inputs.rho = opts.rho;
  inputs.delta = opts.delta;
  inputs.pair = parse_pair(opts.pair);
  inputs.gap_override = opts.gap;
  if (!opts.gap && opts.n > kMaxExactExpectationSize) {
    throw DataError("exact expected-rank gap needs n <= " +
                    std::to_string(kMaxExactExpectationSize) + "; pass --gap for larger n");
  }
  inputs.theta = opts.theta ? *opts.theta
                            : (opts.n >= 2 ? one_third_uniform_theta(opts.n) : 0.0);
  inputs.validate();

  const auto bound = hp_recovery_bound(inputs);
  out << "theta " << format_number(inputs.theta) << '\n'
      << "expected_recovery_bound " << format_number(expected_recovery_bound(inputs.rho)) << '\n'
      << "delta_ij " << format_number(bound.gap) << '\n'
      << "hp_recovery_bound ";
  if (bound.feasible()) {
    out << format_number(bound.samples) << '\n';
  } else {
    out << "infeasible\n";
  }
}

void cmd_rho_opt(std::uint64_t m, std::ostream& out) {
  out << std::fixed << std::setprecision(6) << optimal_rho(m) << '\n';
}

void cmd_sample(const SampleOptions& opts, std::ostream& out) {
  const Permutation center =
      opts.center.empty() ? Permutation::identity(opts.n) : Permutation::parse(opts.center);
  const MallowsModel model(center, opts.theta);
  Rng rng(opts.seed);
  for (std::size_t k = 0; k < opts.count; ++k) out << model.sample(rng).to_string() << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"rankstream: rank aggregation over drifting ranking streams"};
  app.require_subcommand(1);

  AggregateOptions aggregate;
  auto* agg = app.add_subcommand("aggregate", "Aggregate a votes file into a consensus ranking");
  agg->add_option("votes", aggregate.votes_file, "Votes file: one `w;r1,...,rn` per line")
      ->required();
  agg->add_option("--method", aggregate.method, "borda | uborda | kemeny | copeland")
      ->check(CLI::IsMember({"borda", "uborda", "kemeny", "copeland"}));
  agg->add_option("--rho", aggregate.rho, "Fading factor for uborda (file is oldest-first)")
      ->check(CLI::Range(0.0, 1.0));

  SimulateOptions simulate;
  double sim_theta = -1.0;
  auto* sim = app.add_subcommand("simulate", "Run the drift experiment and write CSVs");
  sim->add_option("--n", simulate.n, "Number of items")->check(CLI::Range(2, 10000));
  sim->add_option("--T", simulate.T, "Rankings per concept")->check(CLI::PositiveNumber);
  sim->add_option("--rho", simulate.rho, "Fading factors, comma separated")->delimiter(',');
  sim->add_option("--runs", simulate.runs, "Repetitions")->check(CLI::PositiveNumber);
  sim->add_option("--seed", simulate.seed, "RNG seed");
  auto* sim_theta_opt = sim->add_option("--theta", sim_theta, "Concentration (default: calibrated)");
  sim->add_option("--out", simulate.out, "Output directory")->required();

  BoundsOptions bounds;
  double bounds_theta = -1.0;
  double bounds_gap = 0.0;
  auto* bnd = app.add_subcommand("bounds", "Recovery bounds after an adjacent-swap drift");
  bnd->add_option("--n", bounds.n, "Number of items");
  bnd->add_option("--rho", bounds.rho, "Fading factor in (0,1)");
  auto* bnd_theta_opt = bnd->add_option("--theta", bounds_theta, "Concentration (default: calibrated)");
  bnd->add_option("--delta", bounds.delta, "Failure probability in (0,1)");
  bnd->add_option("--pair", bounds.pair, "Swapped items `i,j` holding ranks k,k+1 in the identity");
  auto* bnd_gap_opt = bnd->add_option("--gap", bounds_gap, "Override the expected-rank gap");

  std::uint64_t m = 20;
  auto* ropt = app.add_subcommand("rho-opt", "Fading factor maximising recovery after m rankings");
  ropt->add_option("--m", m, "Rankings since the drift")->check(CLI::PositiveNumber);

  SampleOptions sample;
  auto* smp = app.add_subcommand("sample", "Draw rankings from a Mallows model");
  smp->add_option("--n", sample.n, "Number of items (ignored with --center)");
  smp->add_option("--theta", sample.theta, "Concentration")->check(CLI::NonNegativeNumber);
  smp->add_option("--center", sample.center, "Modal ranking, e.g. 2,1,3");
  smp->add_option("--count", sample.count, "Number of draws");
  smp->add_option("--seed", sample.seed, "RNG seed");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitSuccess : kExitUsage;
  }

  try {
    if (agg->parsed()) {
      cmd_aggregate(aggregate, out);
    } else if (sim->parsed()) {
      if (*sim_theta_opt) simulate.theta = sim_theta;
      cmd_simulate(simulate, out);
    } else if (bnd->parsed()) {
      if (*bnd_theta_opt) bounds.theta = bounds_theta;
      if (*bnd_gap_opt) bounds.gap = bounds_gap;
      cmd_bounds(bounds, out);
    } else if (ropt->parsed()) {
      cmd_rho_opt(m, out);
    } else if (smp->parsed()) {
      cmd_sample(sample, out);
    }
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const DataError& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitSuccess;
}

}  // namespace rankstream::cli
