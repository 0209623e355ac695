// Acceptance checks: one PASS/FAIL line per criterion, non-zero exit on any failure.
// Every tolerance and sample size is pinned below.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "oracles.hpp"
#include "rankstream/aggregation.hpp"
#include "rankstream/drift_theory.hpp"
#include "rankstream/mallows.hpp"
#include "rankstream/permutation.hpp"
#include "rankstream/stream_harness.hpp"

namespace {

using namespace rankstream;
using Clock = std::chrono::steady_clock;

// 1
constexpr double kRhoStarReported = 0.9295;
constexpr double kRhoStarTolerance = 1e-3;
constexpr double kRhoStarSeconds = 1.0;
// 2
constexpr std::size_t kDriftN = 7;
constexpr std::size_t kDriftT = 100;
constexpr std::size_t kDriftRuns = 30;
constexpr std::uint64_t kDriftSeed = 1;
constexpr std::size_t kDriftRecoveredStep = 20;
constexpr double kDriftRecoveredErrorMax = 1.0;
constexpr double kDriftFinalSegmentRatio = 2.0;
constexpr double kDriftSeconds = 120.0;
// 3
constexpr std::size_t kExpN = 5;
constexpr double kExpRho = 0.9;
constexpr std::size_t kExpStreams = 2000;
constexpr std::size_t kExpBurnIn = 300;
constexpr std::uint64_t kExpLateM = 10;
constexpr std::uint64_t kExpEarlyM = 1;
constexpr double kExpStandardErrors = 3.0;
// 4
constexpr std::size_t kBordaSamples = 100;
constexpr std::size_t kKemenySamples = 50;
constexpr std::size_t kReplicationSamples = 30;
// 5
constexpr double kPmfSumTolerance = 1e-12;
constexpr std::size_t kSamplerDraws = 1'000'000;
constexpr double kSamplerFrequencyTolerance = 0.01;
constexpr double kCalibrationTolerance = 1e-8;
// 6, 7
constexpr std::size_t kIdentityCases = 20;
constexpr double kExactTolerance = 1e-10;
// 8
constexpr std::size_t kCoverageN = 5;
constexpr double kCoverageRho = 0.9;
constexpr double kCoverageDelta = 0.1;
constexpr std::uint64_t kCoverageWindow = 30;
constexpr std::size_t kCoverageStreams = 2000;
// 9
constexpr std::size_t kPerfN = 10;
constexpr std::size_t kPerfUpdates = 1'000'000;
constexpr double kPerfSeconds = 1.0;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double x, int precision = 6) {
  std::ostringstream s;
  s.precision(precision);
  s << x;
  return s.str();
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

Permutation to_perm(const oracle::Ranks& r) { return Permutation(r); }

Outcome rho_star() {
  const auto start = Clock::now();
  const double rho = optimal_rho(20);
  const double elapsed = seconds_since(start);
  const bool pass = std::abs(rho - kRhoStarReported) <= kRhoStarTolerance && elapsed < kRhoStarSeconds;
  return {pass, "optimal_rho(20)=" + fmt(rho, 8) + " target " + fmt(kRhoStarReported) + " +/- " +
                    fmt(kRhoStarTolerance) + ", " + fmt(elapsed, 3) + " s"};
}

Outcome drift_experiment() {
  const auto start = Clock::now();
  ExperimentConfig config;
  config.n = kDriftN;
  config.T = kDriftT;
  config.runs = kDriftRuns;
  config.seed = kDriftSeed;
  config.rho_values = {0.8, kRhoStarReported, 1.0};
  const auto records = run_experiment(config);
  const std::size_t last_segment_start = kDriftT * (kDriftN * (kDriftN - 1) / 2);

  struct Stats {
    double recovered_sum = 0.0;
    std::size_t recovered_count = 0;
    double final_sum = 0.0;
    std::size_t final_count = 0;
    std::vector<double> post_recovery;
  };
  std::map<double, Stats> by_rho;
  for (const auto& r : records) {
    auto& s = by_rho[r.rho];
    const bool after_drift = r.step >= kDriftT;
    if (after_drift && r.since_drift == kDriftRecoveredStep) {
      s.recovered_sum += static_cast<double>(r.error);
      ++s.recovered_count;
    }
    if (r.step >= last_segment_start) {
      s.final_sum += static_cast<double>(r.error);
      ++s.final_count;
    }
    if (after_drift && r.since_drift >= kDriftRecoveredStep) s.post_recovery.push_back(static_cast<double>(r.error));
  }
  const auto variance = [](const std::vector<double>& xs) {
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    return ss / static_cast<double>(xs.size() - 1);
  };
  const auto& fast = by_rho.at(0.8);
  const auto& tuned = by_rho.at(kRhoStarReported);
  const auto& flat = by_rho.at(1.0);
  const double recovered = tuned.recovered_sum / static_cast<double>(tuned.recovered_count);
  const double final_tuned = tuned.final_sum / static_cast<double>(tuned.final_count);
  const double final_flat = flat.final_sum / static_cast<double>(flat.final_count);
  const double var_fast = variance(fast.post_recovery);
  const double var_tuned = variance(tuned.post_recovery);
  const double elapsed = seconds_since(start);

  const bool a = recovered < kDriftRecoveredErrorMax;
  const bool b = final_flat >= kDriftFinalSegmentRatio * final_tuned;
  const bool c = var_fast > var_tuned;
  const bool t = elapsed < kDriftSeconds;
  return {a && b && c && t,
          std::string("(a) ") + (a ? "ok" : "FAIL") + " error@20=" + fmt(recovered, 4) + " < " +
              fmt(kDriftRecoveredErrorMax) + "; (b) " + (b ? "ok" : "FAIL") + " final rho=1 " +
              fmt(final_flat, 4) + " vs rho*=" + fmt(final_tuned, 4) + " (ratio " +
              fmt(final_flat / final_tuned, 4) + " >= " + fmt(kDriftFinalSegmentRatio) + "); (c) " +
              (c ? "ok" : "FAIL") + " var rho=0.8 " + fmt(var_fast, 4) + " > var rho* " +
              fmt(var_tuned, 4) + "; " + fmt(elapsed, 3) + " s"};
}

Outcome expected_recovery() {
  const double theta = one_third_uniform_theta(kExpN);
  const Permutation old_truth = Permutation::identity(kExpN);
  const Permutation new_truth = Permutation::parse("2,1,3,4,5");  // items 1 and 2 swap ranks
  const MallowsModel before(old_truth, theta);
  const MallowsModel after(new_truth, theta);
  const double bound = expected_recovery_bound(kExpRho);

  // Gap B(1) - B(2) of raw fading scores: positive means item 2 ranks ahead (new truth).
  const auto gap_after = [&](std::uint64_t m) {
    double sum = 0.0;
    double sum_sq = 0.0;
    for (std::size_t k = 0; k < kExpStreams; ++k) {
      Rng rng = experiment_rng(3, k, m);
      UBordaState state(kExpN, kExpRho);
      for (std::size_t t = 0; t < kExpBurnIn; ++t) state.update(before.sample(rng));
      for (std::uint64_t t = 0; t < m; ++t) state.update(after.sample(rng));
      const double g = state.scores()[0] - state.scores()[1];
      sum += g;
      sum_sq += g * g;
    }
    const double n = static_cast<double>(kExpStreams);
    const double mean = sum / n;
    const double se = std::sqrt((sum_sq - n * mean * mean) / (n - 1.0) / n);
    return std::pair{mean, se};
  };
  const auto [late, late_se] = gap_after(kExpLateM);
  const auto [early, early_se] = gap_after(kExpEarlyM);
  const bool ordered = static_cast<double>(kExpEarlyM) < bound && static_cast<double>(kExpLateM) > bound;
  const bool pass = ordered && late > kExpStandardErrors * late_se && early < -kExpStandardErrors * early_se;
  const double gap = delta_ij(before, 1, 2).value();
  return {pass, "bound " + fmt(bound, 5) + "; m=10 gap " + fmt(late, 4) + " (se " + fmt(late_se, 3) +
                    ", theory " + fmt(expected_score_gap(kExpRho, kExpLateM, gap), 4) + "); m=1 gap " +
                    fmt(early, 4) + " (se " + fmt(early_se, 3) + ", theory " +
                    fmt(expected_score_gap(kExpRho, kExpEarlyM, gap), 4) + "); threshold " +
                    fmt(kExpStandardErrors) + " SE"};
}

Outcome oracle_equivalences() {
  std::mt19937_64 engine(20240401);
  std::size_t borda_fail = 0;
  for (std::size_t k = 0; k < kBordaSamples; ++k) {
    const std::size_t n = 2 + engine() % 9;
    const std::size_t votes = 1 + engine() % 40;
    std::vector<Permutation> sample;
    UBordaState state(n, 1.0);
    for (std::size_t v = 0; v < votes; ++v) {
      sample.push_back(to_perm(oracle::random_ranks(n, engine)));
      state.update(sample.back());
    }
    if (!(state.ranking() == borda(sample).ranking)) ++borda_fail;
  }

  std::size_t kemeny_fail = 0;
  for (std::size_t k = 0; k < kKemenySamples; ++k) {
    const std::size_t n = 2 + engine() % 5;
    const std::size_t votes = 1 + engine() % 9;
    std::vector<oracle::Ranks> raw;
    std::vector<WeightedVote> weighted;
    for (std::size_t v = 0; v < votes; ++v) {
      raw.push_back(oracle::random_ranks(n, engine));
      weighted.push_back({to_perm(raw.back()), 1.0});
    }
    if (!(kemeny_exact(weighted) == to_perm(oracle::median_ranking(raw)))) ++kemeny_fail;
  }

  std::size_t replication_fail = 0;
  for (std::size_t k = 0; k < kReplicationSamples; ++k) {
    const std::size_t n = 2 + engine() % 5;
    const std::size_t votes = 1 + engine() % 6;
    std::vector<WeightedVote> weighted;
    std::vector<WeightedVote> replicated;
    std::vector<Permutation> replicated_plain;
    for (std::size_t v = 0; v < votes; ++v) {
      const Permutation p = to_perm(oracle::random_ranks(n, engine));
      const int w = 1 + static_cast<int>(engine() % 4);
      weighted.push_back({p, static_cast<double>(w)});
      for (int c = 0; c < w; ++c) {
        replicated.push_back({p, 1.0});
        replicated_plain.push_back(p);
      }
    }
    const auto a = pairwise_matrices(weighted);
    const auto b = pairwise_matrices(replicated);
    const bool same = a.n_matrix == b.n_matrix && a.m_matrix == b.m_matrix &&
                      weighted_borda(weighted).ranking == borda(replicated_plain).ranking &&
                      weighted_borda(weighted).scores == borda(replicated_plain).scores &&
                      kemeny_exact(a) == kemeny_exact(b);
    if (!same) ++replication_fail;
  }
  const bool pass = borda_fail == 0 && kemeny_fail == 0 && replication_fail == 0;
  return {pass, "uborda(1)==borda mismatches " + std::to_string(borda_fail) + "/" +
                    std::to_string(kBordaSamples) + "; kemeny==median mismatches " +
                    std::to_string(kemeny_fail) + "/" + std::to_string(kKemenySamples) +
                    "; weighted==replicated mismatches " + std::to_string(replication_fail) + "/" +
                    std::to_string(kReplicationSamples)};
}

Outcome mallows_exactness() {
  double worst_sum = 0.0;
  for (std::size_t n = 1; n <= 6; ++n) {
    for (double theta : {0.0, 0.1, 1.0, 5.0}) {
      const MallowsModel model(Permutation::reverse(n), theta);
      double total = 0.0;
      for_each_permutation(n, [&](const Permutation& p) { total += model.pmf(p); });
      worst_sum = std::max(worst_sum, std::abs(total - 1.0));
    }
  }

  const MallowsModel model(Permutation::parse("2,4,1,3"), 1.0);
  std::map<Permutation, std::size_t> counts;
  Rng rng(77);
  for (std::size_t k = 0; k < kSamplerDraws; ++k) ++counts[model.sample(rng)];
  double worst_freq = 0.0;
  for_each_permutation(4, [&](const Permutation& p) {
    const auto it = counts.find(p);
    const double freq = it == counts.end() ? 0.0 : static_cast<double>(it->second) / kSamplerDraws;
    worst_freq = std::max(worst_freq, std::abs(freq - model.pmf(p)));
  });

  double worst_calibration = 0.0;
  for (std::size_t n : {3u, 5u, 7u, 10u, 20u}) {
    for (double theta : {0.05, 0.3, 1.0, 2.5}) {
      const double back = calibrate_theta(n, expected_distance(n, theta));
      worst_calibration = std::max(worst_calibration, std::abs(back - theta));
    }
  }
  const bool pass = worst_sum <= kPmfSumTolerance && worst_freq <= kSamplerFrequencyTolerance &&
                    worst_calibration <= kCalibrationTolerance;
  return {pass, "max |sum pmf - 1| " + fmt(worst_sum, 3) + " <= " + fmt(kPmfSumTolerance) +
                    "; max |freq - pmf| " + fmt(worst_freq, 3) + " <= " + fmt(kSamplerFrequencyTolerance) +
                    "; max calibration error " + fmt(worst_calibration, 3) + " <= " +
                    fmt(kCalibrationTolerance)};
}

struct AdjacentCase {
  Permutation center;
  double theta;
  int i;
  int j;
};

std::vector<AdjacentCase> adjacent_cases(std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  std::vector<AdjacentCase> cases;
  for (std::size_t k = 0; k < kIdentityCases; ++k) {
    const std::size_t n = 2 + engine() % 5;
    const Permutation center = to_perm(oracle::random_ranks(n, engine));
    const double theta = 0.05 + 3.0 * std::uniform_real_distribution<double>(0.0, 1.0)(engine);
    const int rank = 1 + static_cast<int>(engine() % (n - 1));
    const auto order = center.ordering();
    cases.push_back({center, theta, order[static_cast<std::size_t>(rank - 1)], order[static_cast<std::size_t>(rank)]});
  }
  return cases;
}

Outcome swap_identity() {
  double worst = 0.0;
  for (const auto& c : adjacent_cases(11)) {
    const auto base = MallowsModel(c.center, c.theta).expected_rank_vector();
    const auto swapped = MallowsModel(swap_items(c.center, c.i, c.j), c.theta).expected_rank_vector();
    const auto i = static_cast<std::size_t>(c.i - 1);
    const auto j = static_cast<std::size_t>(c.j - 1);
    worst = std::max({worst, std::abs(swapped[i] - base[j]), std::abs(swapped[j] - base[i])});
  }
  return {worst <= kExactTolerance, std::to_string(kIdentityCases) + " cases, max deviation " +
                                        fmt(worst, 3) + " <= " + fmt(kExactTolerance)};
}

Outcome gap_paths() {
  double worst = 0.0;
  std::size_t non_positive = 0;
  std::size_t checked = 0;
  for (const auto& c : adjacent_cases(12)) {
    const MallowsModel model(c.center, c.theta);
    const std::size_t n = c.center.size();
    for (int i = 1; i <= static_cast<int>(n); ++i) {
      for (int j = 1; j <= static_cast<int>(n); ++j) {
        if (c.center.rank(i) >= c.center.rank(j)) continue;
        const auto gap = delta_ij(model, i, j);
        worst = std::max(worst, std::abs(gap.from_expected_ranks - gap.from_pair_sum));
        if (!(gap.from_expected_ranks > 0.0 && gap.from_pair_sum > 0.0)) ++non_positive;
        ++checked;
      }
    }
  }
  return {worst <= kExactTolerance && non_positive == 0,
          std::to_string(checked) + " ordered pairs, max path difference " + fmt(worst, 3) + " <= " +
              fmt(kExactTolerance) + ", non-positive gaps " + std::to_string(non_positive)};
}

Outcome deviation_coverage() {
  const double theta = one_third_uniform_theta(kCoverageN);
  const MallowsModel model(Permutation::identity(kCoverageN), theta);
  const auto expected_ranks = model.expected_rank_vector();
  // Normalised score over rankings t = 0..W-1 back from the latest one.
  const double mass = 1.0 - std::pow(kCoverageRho, static_cast<double>(kCoverageWindow));
  const double radius = epsilon(kCoverageN, kCoverageRho, kCoverageDelta, 0, WindowEnd::at(kCoverageWindow));
  std::vector<std::size_t> exceed(kCoverageN, 0);
  for (std::size_t k = 0; k < kCoverageStreams; ++k) {
    Rng rng = experiment_rng(8, k, 0);
    UBordaState state(kCoverageN, kCoverageRho);
    for (std::uint64_t t = 0; t < kCoverageWindow; ++t) state.update(model.sample(rng));
    const auto normalized = state.normalized_scores();
    for (std::size_t i = 0; i < kCoverageN; ++i) {
      if (std::abs(normalized[i] - mass * expected_ranks[i]) > radius) ++exceed[i];
    }
  }
  const double worst = static_cast<double>(*std::max_element(exceed.begin(), exceed.end())) / kCoverageStreams;
  return {worst <= 2.0 * kCoverageDelta, "epsilon " + fmt(radius, 5) + ", worst per-item exceedance " +
                                             fmt(worst, 4) + " <= " + fmt(2.0 * kCoverageDelta)};
}

Outcome update_throughput() {
  std::mt19937_64 engine(9);
  std::vector<Permutation> pool;
  for (int k = 0; k < 1024; ++k) pool.push_back(to_perm(oracle::random_ranks(kPerfN, engine)));
  UBordaState state(kPerfN, 0.9295);
  const auto start = Clock::now();
  for (std::size_t k = 0; k < kPerfUpdates; ++k) state.update(pool[k & 1023]);
  const double elapsed = seconds_since(start);
  const bool bounded = state.scores().size() == kPerfN && state.count() == kPerfUpdates;
  volatile double sink = state.scores()[0];
  (void)sink;
  return {bounded && elapsed < kPerfSeconds,
          std::to_string(kPerfUpdates) + " updates at n=" + std::to_string(kPerfN) + " in " +
              fmt(elapsed, 3) + " s < " + fmt(kPerfSeconds) + " s, state size " +
              std::to_string(state.scores().size())};
}

Outcome simulate_determinism() {
  namespace fs = std::filesystem;
  const fs::path root = fs::temp_directory_path() / "rankstream_acceptance_determinism";
  fs::remove_all(root);
  const auto run = [&](const std::string& sub) {
    std::ostringstream out;
    std::ostringstream err;
    return rankstream::cli::run({"rankstream", "simulate", "--seed", "42", "--out", (root / sub).string()},
                                out, err);
  };
  const int a = run("a");
  const int b = run("b");
  const auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
  };
  bool identical = a == 0 && b == 0;
  std::size_t bytes = 0;
  for (const char* name : {"records.csv", "summary.csv"}) {
    const auto x = slurp(root / "a" / name);
    identical = identical && !x.empty() && x == slurp(root / "b" / name);
    bytes += x.size();
  }
  fs::remove_all(root);
  return {identical, "two default simulate runs (seed 42), " + std::to_string(bytes) +
                         " CSV bytes each, " + (identical ? "byte-identical" : "DIFFERENT")};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"optimal fading factor for m=20", rho_star},
      {"drift experiment ordinal properties", drift_experiment},
      {"expected recovery after one adjacent swap", expected_recovery},
      {"aggregation oracle equivalences", oracle_equivalences},
      {"Mallows pmf, sampler and calibration", mallows_exactness},
      {"expected ranks swap with the modal pair", swap_identity},
      {"expected-rank gap: two paths, positivity", gap_paths},
      {"deviation radius coverage", deviation_coverage},
      {"uborda update throughput", update_throughput},
      {"simulate determinism", simulate_determinism},
  };
  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome outcome;
    try {
      outcome = criteria[k].second();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    if (!outcome.pass) ++failures;
    std::cout << (outcome.pass ? "PASS" : "FAIL") << " criterion " << (k + 1) << " - "
              << criteria[k].first << ": " << outcome.detail << std::endl;
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failures)) << "/" << criteria.size()
            << " criteria passed" << std::endl;
  return failures == 0 ? 0 : 1;
}
