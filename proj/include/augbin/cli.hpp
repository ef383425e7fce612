#pragma once

// `augbin` command line: gen, train, verify, bench.
//
// Exit codes: 0 success, 1 verification failure, 2 I/O error, 64 usage
// error, 65 data error.
//
// Every subcommand accepts `--config file.json`, an object whose keys are
// flag names without the leading dashes. Flags given on the command line
// override the file.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "augbin/bench.hpp"
#include "augbin/data_io.hpp"
#include "augbin/equivalence.hpp"
#include "augbin/errors.hpp"
#include "augbin/network.hpp"
#include "augbin/report.hpp"

namespace augbin::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitIo = 2;
inline constexpr int kExitUsage = 64;
inline constexpr int kExitData = 65;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

/// Turns a JSON config object into flag tokens.
inline std::vector<std::string> config_tokens(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config '" + path + "'");
  Json cfg;
  try {
    cfg = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw UsageError("config '" + path + "' is not valid JSON: " + e.what());
  }
  if (!cfg.is_object()) throw UsageError("config '" + path + "' must be a JSON object");
  std::vector<std::string> tokens;
  for (const auto& [key, value] : cfg.items()) {
    const std::string flag = "--" + key;
    if (value.is_boolean()) {
      if (value.get<bool>()) tokens.push_back(flag);
    } else if (value.is_string()) {
      tokens.push_back(flag);
      tokens.push_back(value.get<std::string>());
    } else if (value.is_array()) {
      std::string joined;
      for (const auto& e : value) {
        if (!joined.empty()) joined += ',';
        joined += e.is_string() ? e.get<std::string>() : e.dump();
      }
      tokens.push_back(flag);
      tokens.push_back(joined);
    } else {
      tokens.push_back(flag);
      tokens.push_back(value.dump());
    }
  }
  return tokens;
}

/// Expands `--config` into tokens placed before the remaining flags, so that
/// explicit flags (parsed later, last value wins) take precedence.
inline std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::vector<std::string> rest;
  std::vector<std::string> from_file;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw UsageError("--config needs a path");
      from_file = config_tokens(args[++i]);
    } else if (args[i].rfind("--config=", 0) == 0) {
      from_file = config_tokens(args[i].substr(9));
    } else {
      rest.push_back(args[i]);
    }
  }
  from_file.insert(from_file.end(), rest.begin(), rest.end());
  return from_file;
}

inline std::vector<std::size_t> parse_size_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(item, &pos);
    } catch (const std::exception&) {
      throw UsageError("cannot parse '" + item + "' as a count");
    }
    if (pos != item.size() || v == 0) throw UsageError("invalid category count '" + item + "'");
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

template <FirstLayerEncoder E>
double dataset_loss(const Network<E>& net, const Dataset& data) {
  double sum = 0.0;
  for (const auto& ex : data.rows) sum += instance_loss(net, ex.category, ex.numeric, ex.target);
  return sum / static_cast<double>(data.rows.size());
}

}  // namespace detail

// ---------------------------------------------------------------------------
// gen

struct GenOptions {
  std::uint64_t seed = 0;
  std::size_t categories = 4;
  std::size_t numeric = 0;
  std::size_t rows = 0;
  double noise = 0.0;
  std::string out;
};

inline int run_gen(const GenOptions& o, std::ostream& out) {
  if (o.rows == 0) throw UsageError("--rows must be positive");
  if (o.categories == 0) throw UsageError("--categories must be positive");
  if (!(o.noise >= 0.0)) throw UsageError("--noise must be non-negative");
  const Dataset data = synth_gen(o.seed, o.categories, o.numeric, o.rows, o.noise);
  save_csv(o.out, data);
  out << "wrote " << data.rows.size() << " rows to " << o.out << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------------------
// train

struct TrainOptions {
  std::string data;
  std::string encoding;
  bool folded = false;
  double lr = 0.1;
  std::size_t steps = 100;
  std::size_t hidden = 0;
  std::size_t width = 8;
  std::uint64_t seed = 0;
  std::string report;
  std::string eval;
  std::string category_column = "category";
  std::string target_column = "y";
  bool multi_label = false;
  bool timings = false;
};

namespace detail {

template <FirstLayerEncoder E>
RunReport train_with(const TrainOptions& o, const Dataset& data, const Dataset* eval) {
  NetworkShape shape;
  shape.categories = data.vocab.size();
  shape.numeric = data.numeric_width();
  shape.width = o.width;
  shape.hidden_layers = o.hidden;
  Network<E> net = make_network<E>(shape, o.seed);
  if constexpr (std::is_same_v<E, AugmentedBinaryLayer>) {
    if (o.folded) net.encoder.forward_rule = AugmentedForward::folded_bias;
  }
  const SgdConfig sgd{o.lr, o.steps, o.seed};

  RunReport report;
  report.command = "train";
  report.seeds = {o.seed};
  report.losses.push_back(dataset_loss(net, data));
  OpCounters totals;
  const auto start = std::chrono::steady_clock::now();
  for (std::size_t s = 0; s < o.steps; ++s) {
    const auto& ex = data.rows[s % data.rows.size()];
    train_step(net, ex.category, ex.numeric, ex.target, sgd, &totals);
    report.losses.push_back(dataset_loss(net, data));
  }
  const auto elapsed = std::chrono::steady_clock::now() - start;
  report.set_counters(totals);
  if (o.timings) {
    report.timings["train_ns"] =
        std::chrono::duration_cast<std::chrono::nanoseconds>(elapsed).count();
  }
  Verdict finite{true, Json::object()};
  finite.detail["final_loss"] = report.losses.back();
  report.verdicts.emplace_back("training_finite", finite);
  if (eval) {
    Verdict ev{true, Json::object()};
    ev.detail["mean_loss"] = dataset_loss(net, *eval);
    ev.detail["rows"] = eval->rows.size();
    report.verdicts.emplace_back("eval", ev);
  }
  return report;
}

}  // namespace detail

inline int run_train(const TrainOptions& o, std::ostream& out) {
  if (o.folded && o.encoding != "augmented") {
    throw UsageError("--folded only applies to --encoding augmented");
  }
  if (o.width == 0) throw UsageError("--k must be positive");
  SgdConfig{o.lr, o.steps, o.seed}.validate();

  DatasetSchema schema;
  schema.categorical = o.category_column;
  schema.target = o.target_column;
  schema.multi_label = o.multi_label;
  for (const auto& name : read_header(o.data)) {
    if (name != schema.categorical && name != schema.target) schema.numeric.push_back(name);
  }
  const Dataset data = load_csv(o.data, schema);
  std::optional<Dataset> eval;
  if (!o.eval.empty()) eval = load_csv(o.eval, schema, &data.vocab);

  RunReport report;
  const Dataset* eval_ptr = eval ? &*eval : nullptr;
  if (o.encoding == "onehot") {
    report = detail::train_with<OneHotLayer>(o, data, eval_ptr);
  } else if (o.encoding == "binary") {
    report = detail::train_with<BinaryLayer>(o, data, eval_ptr);
  } else if (o.encoding == "augmented") {
    report = detail::train_with<AugmentedBinaryLayer>(o, data, eval_ptr);
  } else {
    throw UsageError("unknown encoding '" + o.encoding + "'");
  }
  report.config = {{"data", o.data},   {"encoding", o.encoding}, {"folded", o.folded},
                   {"lr", o.lr},       {"steps", o.steps},       {"hidden", o.hidden},
                   {"k", o.width},     {"seed", o.seed},         {"categories", data.vocab.size()},
                   {"numeric", data.numeric_width()}, {"rows", data.rows.size()}};
  if (!o.report.empty()) write_report(o.report, report);
  out << "encoding=" << o.encoding << (o.folded ? " (folded)" : "") << " steps=" << o.steps
      << " initial_loss=" << report.losses.front() << " final_loss=" << report.losses.back()
      << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyOptions {
  std::uint64_t seed = 0;
  std::size_t categories = 37;
  std::size_t width = 8;
  std::size_t hidden = 1;
  std::size_t numeric = 3;
  std::size_t steps = 200;
  std::size_t probes = 100;
  std::size_t gradient_configs = 3;
  double tolerance = 1e-12;
  double lr = 0.1;
  std::string report;
};

/// Twin equivalence, lockstep training, isolation probes, the binary
/// negative control, brute-force replay and gradient checks. Runs
/// sequentially; the report contains no timings so identical arguments give
/// identical bytes.
inline RunReport verify_report(const VerifyOptions& o) {
  if (o.categories == 0 || o.width == 0) throw UsageError("--categories and --k must be positive");
  if (!(o.tolerance >= 0.0)) throw UsageError("--tolerance must be non-negative");
  NetworkShape shape;
  shape.categories = o.categories;
  shape.numeric = o.numeric;
  shape.width = o.width;
  shape.hidden_layers = o.hidden;
  const SgdConfig sgd{o.lr, o.steps, o.seed};
  const double tol = o.tolerance;

  RunReport report;
  report.command = "verify";
  report.seeds = {o.seed};
  report.config = {{"seed", o.seed},         {"categories", o.categories}, {"k", o.width},
                   {"hidden", o.hidden},     {"numeric", o.numeric},       {"steps", o.steps},
                   {"probes", o.probes},     {"tolerance", o.tolerance},   {"lr", o.lr}};

  // Warm-up so A and B are nonzero before anything is compared.
  const Dataset warmup = synth_gen(o.seed ^ 0x5eedULL, o.categories, o.numeric,
                                   std::max<std::size_t>(o.steps, 1), 0.1);
  auto warmed = [&]<FirstLayerEncoder E>(Network<E> net) {
    for (std::size_t s = 0; s < o.steps; ++s) {
      const auto& ex = warmup.rows[s];
      train_step(net, ex.category, ex.numeric, ex.target, sgd);
    }
    return net;
  };
  const AugmentedNetwork aug = warmed(make_network<AugmentedBinaryLayer>(shape, o.seed));

  // Twin construction.
  TwinPair pair = build_onehot_twin(aug);
  {
    SplitMix64 rng(o.seed ^ 0x7417ULL);
    double worst = 0.0;
    for (std::uint32_t c = 1; c <= o.categories; ++c) {
      for (int rep = 0; rep < 4; ++rep) {
        std::vector<double> x(o.numeric);
        for (double& v : x) v = rng.next_uniform(-1.0, 1.0);
        const auto a = forward(pair.augmented, CategoryId{c}, x).output();
        const auto b = forward(pair.onehot, CategoryId{c}, x).output();
        worst = std::max(worst, max_abs_diff(a, b));
      }
    }
    Verdict v{worst <= tol, Json::object()};
    v.detail["max_output_diff"] = worst;
    v.detail["threshold"] = tol;
    report.verdicts.emplace_back("twin_construction", v);
  }

  // Lockstep training.
  {
    const Dataset stream = synth_gen(o.seed, o.categories, o.numeric,
                                     std::max<std::size_t>(o.steps, 1), 0.1);
    std::span<const Example> rows(stream.rows.data(), o.steps);
    const DivergenceTrace trace = lockstep_train(pair, rows, sgd);
    bool ok = true;
    std::size_t first_bad = 0;
    for (std::size_t s = 0; s < trace.max_output_diff.size(); ++s) {
      const double budget = tol * static_cast<double>((1 + s) * (1 + s));
      if (!(trace.max_output_diff[s] <= budget) && ok) {
        ok = false;
        first_bad = s;
      }
    }
    report.divergence = trace.max_output_diff;
    report.losses = trace.loss_augmented;
    Verdict v{ok, Json::object()};
    double worst = 0.0;
    for (double d : trace.max_output_diff) worst = std::max(worst, d);
    v.detail["max_output_diff"] = worst;
    v.detail["final_parameter_distance"] = trace.final_parameter_distance;
    v.detail["budget"] = "tolerance * (1 + step)^2";
    if (!ok) v.detail["first_failing_step"] = first_bad;
    report.verdicts.emplace_back("lockstep", v);
  }

  // Isolation probes on the augmented encoder, interference probes on the
  // plain binary encoder.
  auto probe_suite = [&]<FirstLayerEncoder E>(Network<E> net, std::uint64_t salt,
                                               bool isolation) {
    SplitMix64 rng(o.seed ^ salt);
    ProbeErrors worst;
    for (std::size_t p = 0; p < o.probes; ++p) {
      const CategoryId c{static_cast<std::uint32_t>(1 + rng.next_index(o.categories))};
      std::vector<double> x(o.numeric);
      for (double& v : x) v = rng.next_uniform(-1.0, 1.0);
      const std::vector<double> target{rng.next_uniform(-2.0, 2.0)};
      const ProbeResult probe = isolation_probe(net, c, x, target, sgd);
      const ProbeErrors e = isolation ? isolation_errors(probe)
                                      : interference_errors(probe, net.encoder.bit_count());
      worst.off_category = std::max(worst.off_category, e.off_category);
      worst.on_category = std::max(worst.on_category, e.on_category);
      worst.any_nonzero_prediction_off_category |= e.any_nonzero_prediction_off_category;
      // Move to a new state for the next probe.
      train_step(net, c, x, target, sgd);
    }
    return worst;
  };
  {
    const ProbeErrors e = probe_suite(aug, 0x150ULL, true);
    Verdict v{e.off_category <= tol && e.on_category <= tol, Json::object()};
    v.detail["max_off_category_error"] = e.off_category;
    v.detail["max_on_category_error"] = e.on_category;
    v.detail["probes"] = o.probes;
    report.verdicts.emplace_back("isolation", v);
  }
  {
    const BinaryNetwork bin = warmed(make_network<BinaryLayer>(shape, o.seed));
    const ProbeErrors e = probe_suite(bin, 0xb1aULL, false);
    const bool needs_overlap = o.categories >= 3 && o.probes > 0;
    Verdict v{e.off_category <= tol && e.on_category <= tol &&
                  (!needs_overlap || e.any_nonzero_prediction_off_category),
              Json::object()};
    v.detail["max_off_category_error"] = e.off_category;
    v.detail["max_on_category_error"] = e.on_category;
    v.detail["interference_observed"] = e.any_nonzero_prediction_off_category;
    report.verdicts.emplace_back("negative_control", v);
  }

  // Brute-force replay at small scale.
  {
    BruteForceConfig bf;
    bf.categories = std::min<std::size_t>(o.categories, 8);
    bf.width = std::min<std::size_t>(o.width, 4);
    bf.steps = std::min<std::size_t>(o.steps, 50);
    bf.seed = o.seed;
    bf.learning_rate = o.lr;
    bf.tolerance = tol;
    const BruteForceReport r = brute_force_check(bf);
    Verdict v{r.passed, Json::object()};
    v.detail["steps_checked"] = r.steps_checked;
    v.detail["max_error"] = r.max_error;
    if (r.failure) {
      v.detail["failure"] = {{"step", r.failure->step},
                             {"quantity", r.failure->quantity},
                             {"category", r.failure->category},
                             {"bit", r.failure->bit},
                             {"k", r.failure->neuron}};
    }
    report.verdicts.emplace_back("brute_force_replay", v);
  }

  // Gradient checks against central differences, every parameter.
  {
    std::size_t checked = 0;
    std::size_t failed = 0;
    double worst_abs = 0.0;
    for (std::size_t g = 0; g < o.gradient_configs; ++g) {
      const std::uint64_t seed = o.seed + 1000 + g;
      NetworkShape gshape = shape;
      gshape.categories = std::min<std::size_t>(o.categories, 12);
      gshape.output_activation = Activation::sigmoid;
      AugmentedNetwork net = make_network<AugmentedBinaryLayer>(gshape, seed);
      const Dataset d = synth_gen(seed, gshape.categories, o.numeric, 21, 0.1);
      for (std::size_t s = 0; s < 20; ++s) {
        train_step(net, d.rows[s].category, d.rows[s].numeric, d.rows[s].target, sgd);
      }
      const auto& ex = d.rows[20];
      const ForwardCache cache = forward(net, ex.category, ex.numeric);
      const Gradients grads = compute_gradients(net, cache, ex.target);
      for (const auto& p : all_params(net)) {
        const double a = analytic_gradient(net, cache, grads, p);
        const double n = finite_diff_grad(net, ex.category, ex.numeric, ex.target, p);
        worst_abs = std::max(worst_abs, std::abs(a - n));
        ++checked;
        if (!gradients_agree(a, n)) ++failed;
      }
    }
    Verdict v{failed == 0, Json::object()};
    v.detail["parameters_checked"] = checked;
    v.detail["failures"] = failed;
    v.detail["max_abs_error"] = worst_abs;
    v.detail["rule"] = "|a - fd| <= max(1e-8, 1e-5 * max(|a|, |fd|)), h = 1e-6";
    report.verdicts.emplace_back("gradient_check", v);
  }
  return report;
}

inline int run_verify(const VerifyOptions& o, std::ostream& out) {
  const RunReport report = verify_report(o);
  if (!o.report.empty()) write_report(o.report, report);
  for (const auto& [name, v] : report.verdicts) {
    out << (v.passed ? "PASS " : "FAIL ") << name << '\n';
  }
  return report.all_passed() ? kExitOk : kExitFailed;
}

// ---------------------------------------------------------------------------
// bench

struct BenchOptions {
  std::string categories_list = "16,256,4096";
  std::size_t width = 32;
  std::size_t reps = 5;
  std::size_t steps = 64;
  std::uint64_t seed = 0;
  std::string out;
  std::string report;
};

inline int run_bench_command(const BenchOptions& o, std::ostream& out) {
  BenchConfig cfg;
  cfg.categories = detail::parse_size_list(o.categories_list);
  cfg.width = o.width;
  cfg.reps = o.reps;
  cfg.steps = o.steps;
  cfg.seed = o.seed;
  const BenchResult result = run_bench(cfg);

  if (o.out.empty()) {
    write_bench_csv(out, result);
  } else {
    std::ofstream file(o.out, std::ios::binary);
    if (!file) throw IoError("cannot open '" + o.out + "' for writing");
    write_bench_csv(file, result);
    if (!file) throw IoError("failed writing '" + o.out + "'");
  }

  const bool ok = result.counter_mismatches == 0 && result.dense_sparse_mismatches == 0;
  if (!o.report.empty()) {
    RunReport report;
    report.command = "bench";
    report.seeds = {o.seed};
    report.config = {{"categories-list", o.categories_list}, {"k", o.width},
                     {"reps", o.reps}, {"steps", o.steps}, {"seed", o.seed}};
    report.set_counters(result.totals);
    for (const auto& r : result.rows) {
      report.timings[std::string(to_string(r.encoder)) + "_N" + std::to_string(r.categories) +
                     "_median_ns"] = r.median_ns;
    }
    Verdict v{ok, Json::object()};
    v.detail["passes_checked"] = result.passes_checked;
    v.detail["counter_mismatches"] = result.counter_mismatches;
    v.detail["dense_sparse_mismatches"] = result.dense_sparse_mismatches;
    report.verdicts.emplace_back("counters_match_closed_form", v);
    write_report(o.report, report);
  }
  return ok ? kExitOk : kExitFailed;
}

// ---------------------------------------------------------------------------

/// Entry point; `args` excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"augmented binary encoding: data generation, training, verification, benchmarks",
               "augbin"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.set_help_all_flag("--help-all");

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "write a seeded synthetic dataset as CSV");
  gen_cmd->add_option("--seed", gen.seed);
  gen_cmd->add_option("--categories", gen.categories);
  gen_cmd->add_option("--numeric", gen.numeric);
  gen_cmd->add_option("--rows", gen.rows)->required();
  gen_cmd->add_option("--noise", gen.noise);
  gen_cmd->add_option("--out", gen.out)->required();

  TrainOptions train;
  auto* train_cmd = app.add_subcommand("train", "train one encoder on a CSV dataset");
  train_cmd->add_option("--data", train.data)->required();
  train_cmd->add_option("--encoding", train.encoding)
      ->required()
      ->check(CLI::IsMember({"onehot", "binary", "augmented"}));
  train_cmd->add_flag("--folded", train.folded, "fold A[c] - B BRV(c) into the bias");
  train_cmd->add_option("--lr", train.lr);
  train_cmd->add_option("--steps", train.steps);
  train_cmd->add_option("--hidden", train.hidden);
  train_cmd->add_option("--k", train.width);
  train_cmd->add_option("--seed", train.seed);
  train_cmd->add_option("--report", train.report);
  train_cmd->add_option("--eval", train.eval, "CSV scored with the training vocabulary");
  train_cmd->add_option("--category-column", train.category_column);
  train_cmd->add_option("--target-column", train.target_column);
  train_cmd->add_flag("--multi-label", train.multi_label);
  train_cmd->add_flag("--timings", train.timings);

  VerifyOptions verify;
  auto* verify_cmd = app.add_subcommand("verify", "run the equivalence and isolation suites");
  verify_cmd->add_option("--seed", verify.seed);
  verify_cmd->add_option("--categories", verify.categories);
  verify_cmd->add_option("--k", verify.width);
  verify_cmd->add_option("--hidden", verify.hidden);
  verify_cmd->add_option("--numeric", verify.numeric);
  verify_cmd->add_option("--steps", verify.steps);
  verify_cmd->add_option("--probes", verify.probes);
  verify_cmd->add_option("--tolerance", verify.tolerance);
  verify_cmd->add_option("--lr", verify.lr);
  verify_cmd->add_option("--report", verify.report);

  BenchOptions bench;
  auto* bench_cmd = app.add_subcommand("bench", "operation counts and timings per encoder");
  bench_cmd->add_option("--categories-list", bench.categories_list);
  bench_cmd->add_option("--k", bench.width);
  bench_cmd->add_option("--reps", bench.reps);
  bench_cmd->add_option("--steps", bench.steps);
  bench_cmd->add_option("--seed", bench.seed);
  bench_cmd->add_option("--out", bench.out);
  bench_cmd->add_option("--report", bench.report);

  try {
    std::vector<std::string> tokens;
    if (!args.empty()) {
      tokens.push_back(args.front());
      const auto expanded =
          detail::expand_config(std::vector<std::string>(args.begin() + 1, args.end()));
      tokens.insert(tokens.end(), expanded.begin(), expanded.end());
    }
    std::vector<std::string> reversed(tokens.rbegin(), tokens.rend());
    app.parse(reversed);

    if (gen_cmd->parsed()) return run_gen(gen, out);
    if (train_cmd->parsed()) return run_train(train, out);
    if (verify_cmd->parsed()) return run_verify(verify, out);
    if (bench_cmd->parsed()) return run_bench_command(bench, out);
    return kExitUsage;
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << '\n';
    return kExitIo;
  } catch (const DataError& e) {
    err << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const NumericError& e) {
    err << "numeric error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailed;
  }
}

}  // namespace augbin::cli
