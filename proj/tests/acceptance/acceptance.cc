// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "augbin/augbin.hpp"
#include "augbin/cli.hpp"

using namespace augbin;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

struct Outcome {
  bool passed;
  std::string detail;
};

NetworkShape shape_of(std::size_t n, std::size_t k, std::size_t d, std::size_t hidden) {
  NetworkShape s;
  s.categories = n;
  s.numeric = d;
  s.width = k;
  s.hidden_layers = hidden;
  return s;
}

std::vector<double> random_x(SplitMix64& rng, std::size_t d) {
  std::vector<double> x(d);
  for (double& v : x) v = rng.next_uniform(-1.0, 1.0);
  return x;
}

CategoryId random_category(SplitMix64& rng, std::size_t n) {
  return CategoryId{static_cast<std::uint32_t>(1 + rng.next_index(n))};
}

// 1
Outcome twin_construction() {
  const auto start = Clock::now();
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto net = make_network<AugmentedBinaryLayer>(shape_of(37, 8, 3, 1), seed);
    const TwinPair pair = build_onehot_twin(net);
    SplitMix64 rng(seed ^ 0xacce97ULL);
    for (int p = 0; p < 100; ++p) {
      const CategoryId c = random_category(rng, 37);
      const auto x = random_x(rng, 3);
      worst = std::max(worst, max_abs_diff(forward(pair.augmented, c, x).output(),
                                           forward(pair.onehot, c, x).output()));
    }
  }
  const double t = seconds_since(start);
  return {worst <= 1e-12 && t < 5.0,
          "max_diff=" + sci(worst) + " (<= 1e-12), time=" + sci(t) + "s (< 5s)"};
}

// 2
Outcome lockstep_training() {
  const auto start = Clock::now();
  TwinPair pair = build_onehot_twin(make_network<AugmentedBinaryLayer>(shape_of(37, 8, 3, 1), 7));
  const Dataset stream = synth_gen(7, 37, 3, 2001, 0.1);
  const DivergenceTrace trace = lockstep_train(pair, stream.rows, SgdConfig{0.1, 2001, 7});
  // Entry s is measured after s updates.
  double upto_100 = 0.0;
  double upto_2000 = 0.0;
  for (std::size_t s = 0; s < trace.max_output_diff.size(); ++s) {
    if (s <= 100) upto_100 = std::max(upto_100, trace.max_output_diff[s]);
    upto_2000 = std::max(upto_2000, trace.max_output_diff[s]);
  }
  const double t = seconds_since(start);
  return {upto_100 <= 1e-10 && upto_2000 <= 1e-8 && t < 10.0,
          "max_diff@100=" + sci(upto_100) + " (<= 1e-10), max_diff@2000=" + sci(upto_2000) +
              " (<= 1e-8), time=" + sci(t) + "s (< 10s)"};
}

// Shared probe stream for criteria 3 and 4: 50 random states, 20 probes
// each, with a training step between probes.
template <FirstLayerEncoder E>
void for_each_probe(std::uint64_t salt,
                    const std::function<void(const Network<E>&, const ProbeResult&)>& visit) {
  SplitMix64 rng(0x150ULL ^ salt);
  for (int state = 0; state < 50; ++state) {
    const std::size_t n = 2 + rng.next_index(63);
    const std::size_t k = 1 + rng.next_index(16);
    const std::size_t d = rng.next_index(4);
    const std::size_t hidden = rng.next_index(3);
    Network<E> net = make_network<E>(shape_of(n, k, d, hidden), rng());
    const SgdConfig sgd{rng.next_uniform(0.01, 0.5), 1, 0};
    const Dataset warm = synth_gen(rng(), n, d, 20, 0.1);
    for (const auto& ex : warm.rows) train_step(net, ex.category, ex.numeric, ex.target, sgd);
    for (int p = 0; p < 20; ++p) {
      const CategoryId c = random_category(rng, n);
      const auto x = random_x(rng, d);
      const std::vector<double> target{rng.next_uniform(-2.0, 2.0)};
      visit(net, isolation_probe(net, c, x, target, sgd));
      train_step(net, c, x, target, sgd);
    }
  }
}

// 3
Outcome isolation() {
  double off = 0.0, on = 0.0;
  std::size_t probes = 0;
  for_each_probe<AugmentedBinaryLayer>(0, [&](const AugmentedNetwork&, const ProbeResult& r) {
    const ProbeErrors e = isolation_errors(r);
    off = std::max(off, e.off_category);
    on = std::max(on, e.on_category);
    ++probes;
  });
  return {off <= 1e-12 && on <= 1e-12 && probes == 1000,
          std::to_string(probes) + " probes, off_category=" + sci(off) +
              ", on_category=" + sci(on) + " (<= 1e-12)"};
}

// 4
Outcome negative_control() {
  double off = 0.0, on = 0.0;
  std::size_t probes = 0;
  bool interference = false;
  for_each_probe<BinaryLayer>(0, [&](const BinaryNetwork& net, const ProbeResult& r) {
    const ProbeErrors e = interference_errors(r, net.encoder.bit_count());
    off = std::max(off, e.off_category);
    on = std::max(on, e.on_category);
    interference |= e.any_nonzero_prediction_off_category;
    ++probes;
  });
  return {off <= 1e-12 && on <= 1e-12 && interference,
          std::to_string(probes) + " probes, overlap-prediction error=" + sci(std::max(off, on)) +
              " (<= 1e-12), interference observed=" + (interference ? "yes" : "no")};
}

// 5
Outcome gradient_checks() {
  SplitMix64 rng(0x96ad);
  std::size_t checked = 0, failed = 0;
  double worst = 0.0;
  for (int cfg = 0; cfg < 100; ++cfg) {
    NetworkShape s = shape_of(1 + rng.next_index(12), 1 + rng.next_index(4),
                              rng.next_index(4), rng.next_index(3));
    s.output_activation = rng.next_index(2) ? Activation::sigmoid : Activation::identity;
    s.hidden_activation = rng.next_index(2) ? Activation::sigmoid : Activation::tanh;
    const std::uint64_t seed = rng();
    AugmentedNetwork net = make_network<AugmentedBinaryLayer>(s, seed);
    const Dataset d = synth_gen(seed, s.categories, s.numeric, 16, 0.2);
    const SgdConfig sgd{0.1, 15, seed};
    for (std::size_t i = 0; i < 15; ++i) {
      train_step(net, d.rows[i].category, d.rows[i].numeric, d.rows[i].target, sgd);
    }
    const auto& ex = d.rows[15];
    const ForwardCache cache = forward(net, ex.category, ex.numeric);
    const Gradients grads = compute_gradients(net, cache, ex.target);
    for (const auto& p : all_params(net)) {
      const double a = analytic_gradient(net, cache, grads, p);
      const double n = finite_diff_grad(net, ex.category, ex.numeric, ex.target, p);
      worst = std::max(worst, std::abs(a - n));
      ++checked;
      if (!gradients_agree(a, n, 1e-5, 1e-8)) ++failed;
    }
  }
  return {failed == 0, std::to_string(checked) + " parameters over 100 configs, failures=" +
                           std::to_string(failed) + ", max_abs_err=" + sci(worst)};
}

// 6
Outcome complexity_counters() {
  BenchConfig cfg;
  cfg.categories = {16, 256, 4096};
  cfg.width = 32;
  cfg.steps = 64;
  cfg.reps = 1;
  const BenchResult r = run_bench(cfg);
  bool rows_ok = r.rows.size() == 9;
  for (const auto& row : r.rows) {
    const std::uint64_t k = row.width;
    if (row.encoder == EncoderKind::onehot) {
      rows_ok &= row.fwd_dense == row.categories * k && row.updates == k;
    } else if (row.encoder == EncoderKind::augmented) {
      rows_ok &= row.fwd_dense == (2 * row.bits + 1) * k;
      rows_ok &= row.updates <= (2 * row.bits + 1) * k;
    }
  }
  return {rows_ok && r.counter_mismatches == 0 && r.dense_sparse_mismatches == 0,
          std::to_string(r.passes_checked) + " passes, counter mismatches=" +
              std::to_string(r.counter_mismatches) +
              ", dense/sparse mismatches=" + std::to_string(r.dense_sparse_mismatches)};
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("augbin_accept_" + name)).string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// 7
Outcome folded_agreement() {
  SplitMix64 rng(0xf01d);
  double worst = 0.0;
  for (int trial = 0; trial < 10000; ++trial) {
    const std::size_t n = 1 + rng.next_index(64);
    const std::size_t k = 1 + rng.next_index(8);
    const std::size_t d = rng.next_index(4);
    auto net = make_network<AugmentedBinaryLayer>(shape_of(n, k, d, 0), rng());
    auto& layer = net.encoder;
    for (double& v : layer.memo_a.data()) v = rng.next_uniform(-1.0, 1.0);
    for (double& v : layer.memo_b.data()) v = rng.next_uniform(-1.0, 1.0);
    for (double& v : layer.bias) v = rng.next_uniform(-1.0, 1.0);
    const CategoryId c = random_category(rng, n);
    const auto x = random_x(rng, d);
    worst = std::max(worst, max_abs_diff(layer.forward_per_term(c, x), layer.forward_folded(c, x)));
  }

  std::ostringstream sink;
  const std::string data = temp_path("folded.csv");
  const std::string a = temp_path("per_term.json");
  const std::string b = temp_path("folded.json");
  bool ran = cli::run({"gen", "--seed", "7", "--categories", "37", "--numeric", "3", "--rows",
                       "500", "--noise", "0.1", "--out", data},
                      sink, sink) == 0;
  const std::vector<std::string> train = {"train", "--data", data, "--encoding", "augmented",
                                          "--steps", "1000", "--hidden", "1", "--seed", "7"};
  auto with = [&](std::vector<std::string> extra) {
    std::vector<std::string> args = train;
    args.insert(args.end(), extra.begin(), extra.end());
    return args;
  };
  ran = ran && cli::run(with({"--report", a}), sink, sink) == 0;
  ran = ran && cli::run(with({"--folded", "--report", b}), sink, sink) == 0;
  double loss_gap = INFINITY;
  if (ran) {
    const Json ja = Json::parse(slurp(a));
    const Json jb = Json::parse(slurp(b));
    loss_gap = std::abs(ja["losses"].back().get<double>() - jb["losses"].back().get<double>());
  }
  for (const auto& p : {data, a, b}) std::filesystem::remove(p);
  return {worst <= 1e-12 && loss_gap <= 1e-10,
          "10000 evaluations max_diff=" + sci(worst) + " (<= 1e-12), --folded final loss gap=" +
              sci(loss_gap) + " (<= 1e-10)"};
}

// 8
Outcome bit_utilities() {
  bool ok = true;
  for (std::size_t n = 1; n <= 65535 && ok; ++n) {
    const std::size_t w = bit_width(n);
    ok = ((std::uint64_t{1} << w) - 1) >= n && ((std::uint64_t{1} << (w - 1)) - 1) < n;
  }
  // Every (c, width) pair reachable from some N <= 65535.
  for (std::uint32_t c = 1; c <= 65535 && ok; ++c) {
    for (std::size_t w = bit_width(c); w <= 16 && ok; ++w) {
      const BitCode code = encode(CategoryId{c}, w);
      ok = decode(code) == CategoryId{c} && code.width() == w;
    }
  }
  const BitCode thirteen = encode(CategoryId{13}, 4);
  const bool example = thirteen.positions() == std::vector<std::size_t>{1, 3, 4} &&
                       thirteen.vector() == std::vector<std::uint8_t>{1, 0, 1, 1};
  return {ok && example, std::string("exhaustive N <= 65535 ") + (ok ? "ok" : "FAILED") +
                             ", c=13 -> BR={1,3,4}, BRV=[1,0,1,1] " +
                             (example ? "ok" : "FAILED")};
}

// 9
Outcome brute_force_replay() {
  bool ok = true;
  double worst = 0.0;
  std::string failure;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    BruteForceConfig cfg;
    cfg.categories = 1 + (seed % 8);
    cfg.width = 1 + (seed % 4);
    if (seed >= 16) {
      cfg.categories = 8;
      cfg.width = 4;
    }
    cfg.steps = 50;
    cfg.seed = seed;
    cfg.tolerance = 1e-12;
    const BruteForceReport r = brute_force_check(cfg);
    worst = std::max(worst, r.max_error);
    if (!r.passed && ok) {
      ok = false;
      failure = " first failure seed=" + std::to_string(seed);
    }
  }
  return {ok, "20 seeds x 50 steps, max_error=" + sci(worst) + " (<= 1e-12)" + failure};
}

// 10
Outcome determinism() {
  std::ostringstream sink;
  const std::string a = temp_path("verify_a.json");
  const std::string b = temp_path("verify_b.json");
  const int ra = cli::run({"verify", "--seed", "3", "--report", a}, sink, sink);
  const int rb = cli::run({"verify", "--seed", "3", "--report", b}, sink, sink);
  const std::string ta = slurp(a);
  const std::string tb = slurp(b);
  std::filesystem::remove(a);
  std::filesystem::remove(b);
  const bool same = !ta.empty() && ta == tb;
  return {same && ra == rb, std::to_string(ta.size()) + " bytes, identical=" +
                                (same ? "yes" : "no") + ", exit codes " + std::to_string(ra) +
                                "/" + std::to_string(rb)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"twin_construction", twin_construction},
      {"lockstep_training", lockstep_training},
      {"isolation", isolation},
      {"negative_control", negative_control},
      {"gradient_checks", gradient_checks},
      {"complexity_counters", complexity_counters},
      {"folded_agreement", folded_agreement},
      {"bit_utilities", bit_utilities},
      {"brute_force_replay", brute_force_replay},
      {"determinism", determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o{false, ""};
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.passed) ++failures;
    std::cout << (o.passed ? "PASS " : "FAIL ") << (i + 1) << ' ' << criteria[i].first << ": "
              << o.detail << std::endl;
  }
  std::cout << (criteria.size() - failures) << '/' << criteria.size() << " criteria passed"
            << std::endl;
  return failures == 0 ? 0 : 1;
}
