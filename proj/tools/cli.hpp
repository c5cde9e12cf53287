#pragma once

// mcps command-line front end. Exit codes: 0 success, 1 internal error,
// 2 input/parse error, 3 capacity error.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mcps/mcps.hpp"

namespace mcps::cli {

namespace fs = std::filesystem;

enum ExitCode : int { kOk = 0, kInternal = 1, kInputError = 2, kCapacityError = 3 };

struct SolverOverrides {
  std::optional<std::size_t> sweeps;
  std::optional<std::size_t> samples;
  double beta_min = 0.01;
  double beta_max = 10.0;
  std::size_t threads = 1;
  std::optional<double> tabu_timeout;
  std::size_t tabu_tenure = 0;
  std::size_t random_samples = 0;
  std::optional<double> lambda;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--lambda", lambda, "Penalty weight (default: number of cars)");
    cmd->add_option("--sweeps", sweeps, "SA sweeps (default 10 N)");
    cmd->add_option("--samples", samples, "SA samples (default 20 N)");
    cmd->add_option("--beta-min", beta_min, "SA initial inverse temperature")->capture_default_str();
    cmd->add_option("--beta-max", beta_max, "SA final inverse temperature")->capture_default_str();
    cmd->add_option("--threads", threads, "SA sample worker threads")->capture_default_str();
    cmd->add_option("--timeout", tabu_timeout, "Tabu timeout in seconds (default max(1, floor(N/3)))");
    cmd->add_option("--tenure", tabu_tenure, "Tabu tenure (default ceil(n/10), at most 20)");
    cmd->add_option("--random-samples", random_samples, "Random solver draws (default 2 N)");
  }

  // Parameters are resolved per instance because the defaults scale with N.
  SolverConfig config(SolverKind kind, std::size_t n_cars) const {
    SolverConfig c;
    c.kind = kind;
    c.lambda = lambda;
    c.random_samples = random_samples;
    SaParams sa = SaParams::for_size(n_cars);
    if (sweeps) sa.n_sweeps = *sweeps;
    if (samples) sa.n_samples = *samples;
    sa.beta_min = beta_min;
    sa.beta_max = beta_max;
    sa.threads = threads;
    c.sa = sa;
    TabuParams tabu = TabuParams::for_size(n_cars);
    if (tabu_timeout) tabu.timeout = std::chrono::duration<double>(*tabu_timeout);
    tabu.tenure = tabu_tenure;
    c.tabu = tabu;
    return c;
  }
};

inline std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

inline bool wildcard_match(std::string_view pattern, std::string_view text) {
  std::size_t p = 0, t = 0, star = std::string_view::npos, mark = 0;
  while (t < text.size()) {
    if (p < pattern.size() && (pattern[p] == '?' || pattern[p] == text[t])) {
      ++p;
      ++t;
    } else if (p < pattern.size() && pattern[p] == '*') {
      star = p++;
      mark = t;
    } else if (star != std::string_view::npos) {
      p = star + 1;
      t = ++mark;
    } else {
      return false;
    }
  }
  while (p < pattern.size() && pattern[p] == '*') ++p;
  return p == pattern.size();
}

// A directory expands to its *.json files; otherwise the file-name part may
// contain '*' and '?'. Results are sorted.
inline std::vector<fs::path> expand_glob(const std::string& pattern) {
  std::vector<fs::path> out;
  const fs::path p(pattern);
  std::error_code ec;
  if (fs::is_directory(p, ec)) {
    for (const auto& entry : fs::directory_iterator(p)) {
      if (entry.is_regular_file() && entry.path().extension() == ".json") out.push_back(entry.path());
    }
  } else if (pattern.find_first_of("*?") == std::string::npos) {
    if (fs::is_regular_file(p, ec)) out.push_back(p);
  } else {
    const fs::path dir = p.has_parent_path() ? p.parent_path() : fs::path(".");
    const std::string name = p.filename().string();
    if (fs::is_directory(dir, ec)) {
      for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file() && wildcard_match(name, entry.path().filename().string())) {
          out.push_back(entry.path());
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline void ensure_directory(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (!fs::is_directory(dir)) throw IoError("cannot create output directory '" + dir.string() + "'");
}

inline std::string fmt_double(double v) { return format_number(v); }

// ---------------------------------------------------------------------------

class Cli {
 public:
  Cli(std::ostream& out, std::ostream& err) : out_(out), err_(err) { build(); }

  int run(int argc, const char* const* argv) {
    try {
      app_.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
      out_ << app_.help();
      return kOk;
    } catch (const CLI::CallForAllHelp&) {
      out_ << app_.help("", CLI::AppFormatMode::All);
      return kOk;
    } catch (const CLI::CallForVersion&) {
      out_ << "mcps 1.0\n";
      return kOk;
    } catch (const CLI::ParseError& e) {
      err_ << "error: " << e.what() << "\n";
      return kInputError;
    }
    try {
      return dispatch();
    } catch (const CapacityError& e) {
      err_ << "capacity error: " << e.what() << "\n";
      return kCapacityError;
    } catch (const InputError& e) {
      err_ << "input error: " << e.what() << "\n";
      return kInputError;
    } catch (const IoError& e) {
      err_ << "i/o error: " << e.what() << "\n";
      return kInputError;
    } catch (const std::exception& e) {
      err_ << "internal error: " << e.what() << "\n";
      return kInternal;
    }
  }

  int run(const std::vector<std::string>& args) {
    std::vector<const char*> argv{"mcps"};
    for (const auto& a : args) argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data());
  }

 private:
  void build() {
    app_.description("Multi-car paint shop solver and benchmark harness");
    app_.set_config("--config", "", "TOML/INI config file; command-line flags take precedence");
    app_.require_subcommand(1);

    gen_ = app_.add_subcommand("gen", "Generate synthetic instance files");
    gen_->add_option("--cars", gen_cars_, "Cars per instance")->required();
    gen_->add_option("--ensembles", gen_ensembles_, "Distinct ensembles (default max(1, N/5))");
    gen_->add_option("--count", gen_count_, "Number of instances")->capture_default_str();
    gen_->add_option("--quota", gen_quota_, "Quota policy: uniform|balanced")->capture_default_str();
    gen_->add_flag("--filter,!--no-filter", gen_filter_,
                   "Keep only instances with at least 70% non-fixed cars (default on)");

    add_common(gen_);

    part_ = app_.add_subcommand("partition", "Split a labeled car stream into fixed-size instances");
    part_->add_option("--in", part_in_, "Stream file {name, word, colors}; synthetic stream if omitted")
        ->check(CLI::ExistingFile);
    part_->add_option("--chunk", part_chunk_, "Cars per partition")->required();
    part_->add_option("--stream-cars", part_stream_cars_, "Synthetic stream length")->capture_default_str();
    part_->add_option("--stream-ensembles", part_stream_ensembles_, "Synthetic stream ensembles")
        ->capture_default_str();
    part_->add_option("--select", part_select_, "Write a seeded random subset of accepted partitions (0: all)")
        ->capture_default_str();
    part_->add_flag("--include-rejected", part_include_rejected_, "Also write partitions failing the 70% rule");
    part_->add_option("--save-stream", part_save_stream_, "Write the synthetic stream to this file");
    add_common(part_);

    enc_ = app_.add_subcommand("encode", "Encode an instance as an Ising or QUBO model");
    enc_->add_option("instance", enc_in_, "Instance file")->required()->check(CLI::ExistingFile);
    enc_->add_option("--lambda", enc_lambda_, "Penalty weight (default: number of cars)");
    enc_->add_flag("--condition", enc_condition_, "Eliminate cars with forced colors");
    enc_->add_option("--format", enc_format_, "ising|qubo")->capture_default_str();
    add_common(enc_);

    solve_ = app_.add_subcommand("solve", "Solve one instance");
    solve_->add_option("instance", solve_in_, "Instance file")->required()->check(CLI::ExistingFile);
    solve_->add_option("--solver", solve_solver_, "random|greedy|sa|tabu|exact")->capture_default_str();
    solve_->add_flag("--timing,!--no-timing", solve_timing_, "Print wall time (default on)");
    solve_overrides_.add_to(solve_);
    add_common(solve_);

    bench_ = app_.add_subcommand("bench", "Run the benchmark protocol over instance files");
    bench_->add_option("--instances", bench_globs_, "Instance files, directories or name globs")->required();
    bench_->add_option("--solvers", bench_solvers_, "Comma-separated solver list")->capture_default_str();
    bench_->add_option("--jobs", bench_jobs_, "Parallel workers; output does not depend on it")
        ->capture_default_str();
    bench_->add_option("--baseline", bench_baseline_, "Improvement reference: mean|best")->capture_default_str();
    bench_->add_flag("--timing", bench_timing_, "Fill the median_wall_time_ms column (not reproducible)");
    bench_overrides_.add_to(bench_);
    add_common(bench_);
  }

  void add_common(CLI::App* cmd) {
    cmd->add_option("--seed", seed_, "Master random seed")->capture_default_str();
    cmd->add_option("--out", out_path_, "Output path (directory for gen/partition/bench)");
  }

  int dispatch() {
    if (*gen_) return cmd_gen();
    if (*part_) return cmd_partition();
    if (*enc_) return cmd_encode();
    if (*solve_) return cmd_solve();
    if (*bench_) return cmd_bench();
    return kInputError;
  }

  int cmd_gen() {
    const fs::path dir = out_path_.empty() ? fs::path(".") : fs::path(out_path_);
    if (gen_count_ == 0) {
      out_ << "generated 0 instances\n";
      return kOk;
    }
    const std::size_t m = gen_ensembles_ ? *gen_ensembles_ : reference_ensembles(gen_cars_);
    const auto instances =
        synthetic_family(gen_cars_, m, parse_quota_policy(gen_quota_), gen_count_, seed_, gen_filter_);
    ensure_directory(dir);
    for (const auto& inst : instances) save_instance(inst, dir / (inst.name() + ".json"));
    out_ << "generated " << instances.size() << " instances of " << gen_cars_ << " cars in "
         << dir.string() << "\n";
    return kOk;
  }

  int cmd_partition() {
    LabeledStream stream;
    if (!part_in_.empty()) {
      stream = stream_from_json(detail::read_file(part_in_));
    } else {
      stream = generate_stream(part_stream_cars_, part_stream_ensembles_, seed_);
      if (!part_save_stream_.empty()) {
        detail::write_file(part_save_stream_, stream_to_json(stream, "synthetic_stream"));
      }
    }
    auto parts = partition_stream(stream, part_chunk_, "part");
    std::vector<const Partition*> accepted;
    for (const auto& p : parts) {
      if (p.stats.accepted) accepted.push_back(&p);
    }
    const double pct = parts.empty() ? 0.0 : 100.0 * accepted.size() / parts.size();
    char line[128];
    std::snprintf(line, sizeof line, "size %zu: %zu partitions, %zu instances (%.1f%%)\n", part_chunk_,
                  parts.size(), accepted.size(), pct);
    out_ << line;

    std::vector<const Partition*> chosen;
    if (part_include_rejected_) {
      for (const auto& p : parts) chosen.push_back(&p);
    } else {
      chosen = accepted;
    }
    if (part_select_ > 0 && part_select_ < chosen.size()) {
      Rng rng(derive_seed(seed_, {part_chunk_}));
      rng.shuffle(std::span<const Partition*>(chosen));
      chosen.resize(part_select_);
      std::sort(chosen.begin(), chosen.end(),
                [](const Partition* a, const Partition* b) { return a->offset < b->offset; });
    }
    if (!out_path_.empty()) {
      ensure_directory(out_path_);
      for (const Partition* p : chosen) {
        save_instance(p->instance, fs::path(out_path_) / (p->instance.name() + ".json"));
      }
      out_ << "wrote " << chosen.size() << " instances to " << out_path_ << "\n";
    }
    return kOk;
  }

  int cmd_encode() {
    const auto inst = load_instance(enc_in_);
    const PenaltyWeight lambda = enc_lambda_ ? PenaltyWeight(*enc_lambda_) : PenaltyWeight::for_instance(inst);
    IsingModel model = encode(inst, lambda);
    if (enc_condition_) model = condition(model, fixed_spin_assignments(inst));
    std::string text;
    if (enc_format_ == "ising") {
      text = model_to_json(model);
    } else if (enc_format_ == "qubo") {
      text = qubo_to_json(to_qubo(model), model.var_to_position());
    } else {
      throw InputError("unknown format '" + enc_format_ + "' (expected ising|qubo)");
    }
    if (out_path_.empty() || out_path_ == "-") {
      out_ << text;
    } else {
      detail::write_file(out_path_, text);
      out_ << "n_vars: " << model.n_vars() << "\n"
           << "linear_terms: " << model.linear().size() << "\n"
           << "quadratic_terms: " << model.quadratic().size() << "\n"
           << "lambda: " << fmt_double(lambda.value()) << "\n";
      if (!model.linear().empty() || !model.quadratic().empty()) {
        out_ << "precision_ratio: " << fmt_double(precision_ratio(model)) << "\n";
      }
    }
    return kOk;
  }

  int cmd_solve() {
    const auto inst = load_instance(solve_in_);
    const SolverKind kind = parse_solver(solve_solver_);
    const SolverConfig cfg = solve_overrides_.config(kind, inst.size());
    const SolveResult r = solve(inst, cfg, seed_);

    std::ostringstream os;
    os << "instance: " << inst.name() << "\n"
       << "cars: " << inst.size() << "\n"
       << "free_cars: " << free_count(inst) << "\n"
       << "solver: " << r.solver << "\n"
       << "seed: " << (r.seed ? std::to_string(*r.seed) : std::string("none")) << "\n";
    if (kind == SolverKind::Annealing) {
      os << "sa_sweeps: " << cfg.sa->n_sweeps << "\n"
         << "sa_samples: " << cfg.sa->n_samples << "\n"
         << "sa_beta: [" << fmt_double(cfg.sa->beta_min) << ", " << fmt_double(cfg.sa->beta_max) << "]\n";
    } else if (kind == SolverKind::Tabu) {
      os << "tabu_timeout_s: " << fmt_double(cfg.tabu->timeout.count()) << "\n";
    }
    os << "switches: " << r.switches << "\n"
       << "valid: " << (r.valid ? "true" : "false") << "\n"
       << "valid_raw: " << (r.valid_raw ? "true" : "false") << "\n"
       << "repaired: " << (r.repaired ? "true" : "false") << "\n"
       << "raw_valid_samples: " << r.raw_valid_samples << "/" << r.samples << "\n"
       << "energy: " << fmt_double(r.energy) << "\n"
       << "coloring: " << to_string(r.coloring) << "\n";
    if (solve_timing_) {
      os << "wall_time_ms: " << fmt_double(std::chrono::duration<double, std::milli>(r.wall_time).count())
         << "\n";
    }
    out_ << os.str();
    if (!out_path_.empty()) detail::write_file(out_path_, os.str());
    return kOk;
  }

  int cmd_bench() {
    std::vector<fs::path> files;
    for (const auto& g : bench_globs_) {
      auto more = expand_glob(g);
      files.insert(files.end(), more.begin(), more.end());
    }
    std::sort(files.begin(), files.end());
    files.erase(std::unique(files.begin(), files.end()), files.end());
    if (files.empty()) throw InputError("no instance files match the given --instances");

    std::vector<ProblemInstance> instances;
    instances.reserve(files.size());
    for (const auto& f : files) instances.push_back(load_instance(f));

    std::vector<SolverKind> kinds;
    for (const auto& name : split_list(bench_solvers_)) kinds.push_back(parse_solver(name));
    if (kinds.empty()) throw InputError("--solvers is empty");

    SuiteOptions opt;
    opt.jobs = bench_jobs_;
    if (bench_baseline_ == "mean") {
      opt.baseline = BaselineMode::Mean;
    } else if (bench_baseline_ == "best") {
      opt.baseline = BaselineMode::Best;
    } else {
      throw InputError("unknown baseline '" + bench_baseline_ + "' (expected mean|best)");
    }

    // Solver parameters depend on N, so instances are grouped by size.
    std::map<std::size_t, std::vector<std::size_t>> by_size;
    for (std::size_t i = 0; i < instances.size(); ++i) by_size[instances[i].size()].push_back(i);
    std::vector<BenchmarkRecord> records;
    for (const auto& [n, indices] : by_size) {
      std::vector<ProblemInstance> group;
      for (std::size_t i : indices) group.push_back(instances[i]);
      std::vector<SolverConfig> configs;
      for (SolverKind k : kinds) configs.push_back(bench_overrides_.config(k, n));
      auto recs = run_suite(group, configs, derive_seed(seed_, {n}), opt);
      records.insert(records.end(), recs.begin(), recs.end());
    }
    for (const auto& r : records) {
      if (r.error) err_ << "warning: " << r.solver << " on " << r.instance << ": " << *r.error << "\n";
    }
    bool any_tabu = false;
    for (SolverKind k : kinds) any_tabu |= is_timeout_bound(k);
    if (any_tabu) err_ << "note: tabu is wall-clock bounded; its results are not seed-reproducible\n";

    const auto rows = aggregate(records, bench_timing_);
    if (rows.empty()) throw InputError("every solver run failed; nothing to report");
    const auto baseline = median_baseline_by_size(records);
    const fs::path dir = out_path_.empty() ? fs::path(".") : fs::path(out_path_);
    ensure_directory(dir);
    emit_report(rows, ReportFormat::Csv, dir / "report.csv");
    emit_report(rows, ReportFormat::PlotData, dir / "plot.json", baseline);
    emit_report(rows, ReportFormat::Structured, dir / "report.json", baseline);
    out_ << format_table(rows, baseline);
    return kOk;
  }

  std::ostream& out_;
  std::ostream& err_;
  CLI::App app_{"mcps"};
  CLI::App* gen_ = nullptr;
  CLI::App* part_ = nullptr;
  CLI::App* enc_ = nullptr;
  CLI::App* solve_ = nullptr;
  CLI::App* bench_ = nullptr;

  Seed seed_ = 0;
  std::string out_path_;

  std::size_t gen_cars_ = 0;
  std::optional<std::size_t> gen_ensembles_;
  std::size_t gen_count_ = 1;
  std::string gen_quota_ = "uniform";
  bool gen_filter_ = true;

  std::string part_in_;
  std::size_t part_chunk_ = 0;
  std::size_t part_stream_cars_ = 104334;
  std::size_t part_stream_ensembles_ = 121;
  std::size_t part_select_ = 0;
  bool part_include_rejected_ = false;
  std::string part_save_stream_;

  std::string enc_in_;
  std::optional<double> enc_lambda_;
  bool enc_condition_ = false;
  std::string enc_format_ = "ising";

  std::string solve_in_;
  std::string solve_solver_ = "greedy";
  bool solve_timing_ = true;
  SolverOverrides solve_overrides_;

  std::vector<std::string> bench_globs_;
  std::string bench_solvers_ = "random,greedy,sa";
  std::size_t bench_jobs_ = 1;
  std::string bench_baseline_ = "mean";
  bool bench_timing_ = false;
  SolverOverrides bench_overrides_;
};

inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
  Cli cli(out, err);
  return cli.run(args);
}

}  // namespace mcps::cli
