/*
 * Copyright 2026 The oindex Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Command-line front end: compute, compare, watch, synth and plot.
//
// Exit codes: 0 success, 1 usage, 2 data/validation, 3 I/O.

#ifndef OINDEX_CLI_HPP_
#define OINDEX_CLI_HPP_

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "oi/core.hpp"
#include "oi/error.hpp"
#include "oi/format.hpp"
#include "oi/ingest.hpp"
#include "oi/report.hpp"
#include "oi/synth.hpp"

namespace oi::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;
inline constexpr int kExitIo = 3;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class InputFormat { kCsv, kJsonl };

// Flags shared by every subcommand that reads a run.
struct InputOptions {
  std::string format;  // "", "csv" or "jsonl".
  bool percent = false;
  std::vector<std::string> maps;

  FieldMapping Mapping() const {
    FieldMapping m;
    for (const std::string& kv : maps) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos || eq == 0 || eq + 1 == kv.size()) {
        throw UsageError("--map expects key=column, got '" + kv + "'");
      }
      try {
        m.Set(kv.substr(0, eq), kv.substr(eq + 1));
      } catch (const ConfigError& e) {
        throw UsageError(e.what());
      }
    }
    if (percent) m.accuracy_unit = AccuracyUnit::kPercent;
    try {
      m.Validate();
    } catch (const ConfigError& e) {
      throw UsageError(e.what());
    }
    return m;
  }

  InputFormat Resolve(const std::string& path) const {
    if (format == "csv") return InputFormat::kCsv;
    if (format == "jsonl") return InputFormat::kJsonl;
    if (!format.empty()) {
      throw UsageError("unknown input format '" + format +
                       "'; expected csv or jsonl");
    }
    if (path.empty() || path == "-") return InputFormat::kJsonl;
    const std::string ext = std::filesystem::path(path).extension().string();
    if (ext == ".csv") return InputFormat::kCsv;
    if (ext == ".jsonl" || ext == ".ndjson" || ext == ".json") {
      return InputFormat::kJsonl;
    }
    throw UsageError("cannot infer the format of '" + path +
                     "'; pass --format csv or --format jsonl");
  }
};

inline bool IsStdin(const std::string& path) {
  return path.empty() || path == "-";
}

inline std::string DisplayName(const std::string& path) {
  return IsStdin(path) ? "<stdin>" : path;
}

inline TrainingRun LoadRun(const std::string& path, const InputOptions& opts,
                           std::istream& stdin_stream) {
  const InputFormat fmt = opts.Resolve(path);
  const FieldMapping mapping = opts.Mapping();
  auto parse = [&](std::istream& in) {
    return fmt == InputFormat::kCsv ? parse_csv(in, mapping)
                                    : parse_jsonl(in, mapping);
  };
  TrainingRun run;
  if (IsStdin(path)) {
    run = parse(stdin_stream);
  } else {
    std::ifstream file(path);
    if (!file) throw IoError("cannot open '" + path + "' for reading");
    run = parse(file);
  }
  run.label = DisplayName(path);
  return run;
}

inline nlohmann::json ToJson(const OIResult& r) {
  nlohmann::json j;
  j["total"] = r.total;
  j["normalized"] = r.normalized;
  j["n_epochs"] = r.n_epochs;
  j["dominant_driver"] = std::string(ToString(dominant_driver(r)));
  nlohmann::json trace = nlohmann::json::array();
  for (const EpochPenalty& p : r.trace) {
    trace.push_back({{"epoch", p.epoch},
                     {"loss_gap", p.loss_gap},
                     {"acc_gap", p.acc_gap},
                     {"penalty", p.penalty},
                     {"contribution", p.contribution},
                     {"dominant", std::string(ToString(p.dominant))}});
  }
  j["trace"] = std::move(trace);
  return j;
}

inline nlohmann::json OptionalJson(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

inline void AddInputFlags(CLI::App* cmd, InputOptions& opts,
                          bool format_flag = true) {
  if (format_flag) {
    cmd->add_option("--format,--input-format", opts.format,
                    "Input format (csv or jsonl); default from extension");
  } else {
    cmd->add_option("--input-format", opts.format,
                    "Input format (csv or jsonl); default from extension");
  }
  cmd->add_flag("--percent", opts.percent,
                "Accuracies in the input are percentages");
  cmd->add_option("--map", opts.maps,
                  "Field mapping override key=column (repeatable)")
      ->allow_extra_args(false);
}

// ---------------------------------------------------------------------------

inline int CmdCompute(const std::string& input, const InputOptions& opts,
                      bool json, bool verbose, std::istream& in,
                      std::ostream& out) {
  const TrainingRun run = LoadRun(input, opts, in);
  const OIResult r = compute_oi(run);
  if (json) {
    nlohmann::json j = ToJson(r);
    j["input"] = run.label;
    out << j.dump() << "\n";
    return kExitOk;
  }
  out << "input: " << run.label << "\n"
      << "epochs: " << r.n_epochs << "\n"
      << "oi: " << FormatHuman(r.total) << "\n"
      << "normalized_oi: " << FormatHuman(r.normalized) << "\n"
      << "dominant_driver: " << ToString(dominant_driver(r)) << "\n";
  if (verbose) {
    out << "epoch,loss_gap,acc_gap,penalty,contribution,dominant\n";
    for (const EpochPenalty& p : r.trace) {
      out << p.epoch << "," << FormatHuman(p.loss_gap) << ","
          << FormatHuman(p.acc_gap) << "," << FormatHuman(p.penalty) << ","
          << FormatHuman(p.contribution) << "," << ToString(p.dominant)
          << "\n";
    }
  }
  return kExitOk;
}

inline int CmdCompare(const std::string& a, const std::string& b,
                      const InputOptions& opts, bool json, std::istream& in,
                      std::ostream& out) {
  if (IsStdin(a) && IsStdin(b)) {
    throw UsageError("compare: at most one input may be stdin");
  }
  const TrainingRun base_run = LoadRun(a, opts, in);
  const TrainingRun var_run = LoadRun(b, opts, in);
  const OIResult base = compute_oi(base_run);
  const OIResult var = compute_oi(var_run);
  const RunComparison c =
      compare(Score(base_run.label, base), Score(var_run.label, var));
  const char* larger = c.larger == Larger::kVariant    ? "variant"
                       : c.larger == Larger::kBaseline ? "baseline"
                                                       : "neither";
  if (json) {
    nlohmann::json j = {{"baseline_label", c.baseline_label},
                        {"variant_label", c.variant_label},
                        {"baseline_oi", c.baseline_oi},
                        {"variant_oi", c.variant_oi},
                        {"delta", c.delta},
                        {"ratio", OptionalJson(c.ratio)},
                        {"normalized_delta", OptionalJson(c.normalized_delta)},
                        {"more_overfit", larger}};
    out << j.dump() << "\n";
    return kExitOk;
  }
  out << "baseline: " << c.baseline_label << " oi=" << FormatHuman(c.baseline_oi)
      << " normalized=" << FormatHuman(base.normalized) << "\n"
      << "variant: " << c.variant_label << " oi=" << FormatHuman(c.variant_oi)
      << " normalized=" << FormatHuman(var.normalized) << "\n"
      << "delta: " << FormatHuman(c.delta) << "\n"
      << "ratio: " << (c.ratio ? FormatHuman(*c.ratio) : "undefined") << "\n"
      << "normalized_delta: "
      << (c.normalized_delta ? FormatHuman(*c.normalized_delta) : "undefined")
      << "\n"
      << "more_overfit: " << larger;
  if (c.larger == Larger::kVariant) out << " (" << c.variant_label << ")";
  if (c.larger == Larger::kBaseline) out << " (" << c.baseline_label << ")";
  out << "\n";
  return kExitOk;
}

// Yields newline-terminated lines. In follow mode it keeps polling after
// end of input until `idle_timeout` seconds pass with no new bytes
// (0 waits forever).
class LineSource {
 public:
  LineSource(std::istream& in, bool follow, double idle_timeout)
      : in_(in), follow_(follow), idle_timeout_(idle_timeout) {}

  bool Next(std::string& line) {
    using Clock = std::chrono::steady_clock;
    auto last_data = Clock::now();
    for (;;) {
      char c = 0;
      while (in_.get(c)) {
        last_data = Clock::now();
        if (c == '\n') {
          line = std::move(pending_);
          pending_.clear();
          return true;
        }
        pending_ += c;
      }
      in_.clear();
      const double idle =
          std::chrono::duration<double>(Clock::now() - last_data).count();
      if (!follow_ || (idle_timeout_ > 0 && idle >= idle_timeout_)) {
        if (pending_.empty()) return false;
        line = std::move(pending_);
        pending_.clear();
        return true;
      }
      std::this_thread::sleep_for(std::chrono::milliseconds(50));
    }
  }

 private:
  std::istream& in_;
  bool follow_;
  double idle_timeout_;
  std::string pending_;
};

inline int CmdWatch(const std::string& input, const InputOptions& opts,
                    bool json, bool follow, double idle_timeout,
                    std::istream& in, std::ostream& out, std::ostream& err) {
  if (!opts.format.empty() && opts.format != "jsonl") {
    throw UsageError("watch reads JSONL only");
  }
  const FieldMapping mapping = opts.Mapping();
  std::ifstream file;
  std::istream* stream = &in;
  if (!IsStdin(input)) {
    file.open(input);
    if (!file) throw IoError("cannot open '" + input + "' for reading");
    stream = &file;
  } else if (follow) {
    throw UsageError("--follow needs a file path");
  }

  LineSource lines(*stream, follow, idle_timeout);
  OIAccumulator acc;
  std::vector<EpochPenalty> trace;
  std::optional<long long> base;
  int status = kExitOk;
  std::string line;
  std::size_t line_no = 0;
  try {
    while (lines.Next(line)) {
      ++line_no;
      if (internal::Trim(line).empty()) continue;
      const RawRecord raw = ParseJsonlLine(line, line_no, mapping);
      if (!base) {
        if (raw.epoch > 1) throw SequencingError(1, raw.epoch);
        base = raw.epoch;
      }
      const long long expected_label = *base + acc.last_epoch;
      if (raw.epoch != expected_label) {
        throw SequencingError(expected_label, raw.epoch);
      }
      const EpochRecord rec =
          ToEpochRecord(raw, mapping, acc.last_epoch + 1);
      const EpochPenalty p = epoch_penalty(rec);
      acc = accumulate(acc, rec);
      trace.push_back(p);
      if (json) {
        out << nlohmann::json({{"epoch", rec.epoch},
                               {"source_epoch", raw.epoch},
                               {"penalty", p.penalty},
                               {"dominant", std::string(ToString(p.dominant))},
                               {"running_oi", acc.running_total}})
                   .dump()
            << std::endl;
      } else {
        out << "epoch=" << rec.epoch << " penalty=" << FormatHuman(p.penalty)
            << " oi=" << FormatHuman(acc.running_total) << std::endl;
      }
    }
  } catch (const Error& e) {
    err << "watch: line " << line_no << ": " << e.what() << "\n";
    status = kExitData;
  }

  const double normalized =
      acc.epochs_seen == 0 ? 0.0
                           : acc.running_total / EpochWeightSum(acc.epochs_seen);
  const std::string_view driver = ToString(dominant_driver(trace));
  if (json) {
    out << nlohmann::json({{"summary", true},
                           {"n_epochs", acc.epochs_seen},
                           {"total", acc.running_total},
                           {"normalized", normalized},
                           {"dominant_driver", std::string(driver)},
                           {"ok", status == kExitOk}})
               .dump()
        << std::endl;
  } else {
    out << "summary: epochs=" << acc.epochs_seen
        << " oi=" << FormatHuman(acc.running_total)
        << " normalized=" << FormatHuman(normalized) << " dominant=" << driver
        << std::endl;
  }
  return status;
}

// Explicit generator parameters; unset fields come from --preset.
struct SynthFlags {
  std::string preset;
  std::optional<long long> epochs;
  std::optional<double> train_loss_start;
  std::optional<double> train_loss_floor;
  std::optional<double> loss_decay;
  std::optional<long long> onset;
  std::optional<double> slope;
  std::optional<double> acc_train;
  std::optional<double> acc_val;
  std::optional<double> acc_rate;
  std::optional<std::uint64_t> seed;
  std::optional<double> noise;
  std::string output;
};

inline SynthSpec BuildSpec(const SynthFlags& f) {
  SynthSpec spec;
  if (!f.preset.empty()) {
    try {
      spec = preset(f.preset);
    } catch (const ConfigError& e) {
      throw UsageError(e.what());
    }
  } else {
    std::vector<std::string> missing;
    auto need = [&](bool present, const char* flag) {
      if (!present) missing.emplace_back(flag);
    };
    need(f.epochs.has_value(), "--epochs");
    need(f.train_loss_start.has_value(), "--train-loss-start");
    need(f.train_loss_floor.has_value(), "--train-loss-floor");
    need(f.loss_decay.has_value(), "--loss-decay");
    need(f.onset.has_value(), "--onset");
    need(f.slope.has_value(), "--slope");
    need(f.acc_train.has_value(), "--acc-train");
    need(f.acc_val.has_value(), "--acc-val");
    need(f.acc_rate.has_value(), "--acc-rate");
    if (!missing.empty()) {
      std::string msg = "synth needs --preset (" + PresetNameList() +
                        ") or all of the curve flags; missing:";
      for (const std::string& m : missing) msg += " " + m;
      throw UsageError(msg);
    }
  }
  if (f.epochs) spec.n_epochs = *f.epochs;
  if (f.train_loss_start) spec.train_loss_start = *f.train_loss_start;
  if (f.train_loss_floor) spec.train_loss_floor = *f.train_loss_floor;
  if (f.loss_decay) spec.loss_decay = *f.loss_decay;
  if (f.onset) spec.divergence_onset = *f.onset;
  if (f.slope) spec.divergence_slope = *f.slope;
  if (f.acc_train) spec.acc_ceiling_train = *f.acc_train;
  if (f.acc_val) spec.acc_ceiling_val = *f.acc_val;
  if (f.acc_rate) spec.acc_rate = *f.acc_rate;
  if (f.seed) spec.seed = *f.seed;
  if (f.noise) spec.noise_amplitude = *f.noise;
  try {
    ValidateSpec(spec);
  } catch (const ValidationError& e) {
    throw UsageError(e.what());
  }
  return spec;
}

inline void WriteOutput(const std::string& path, const std::string& content,
                        std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open '" + path + "' for writing");
  file << content;
  file.close();
  if (!file) throw IoError("failed writing '" + path + "'");
}

inline int CmdSynth(const SynthFlags& flags, std::ostream& out) {
  const SynthSpec spec = BuildSpec(flags);
  std::ostringstream doc;
  write_jsonl(generate(spec), doc);
  WriteOutput(flags.output, doc.str(), out);
  return kExitOk;
}

inline int CmdPlot(const std::string& input, const InputOptions& opts,
                   const std::string& metric, const std::string& window,
                   const std::string& format, const std::string& output,
                   std::istream& in, std::ostream& out) {
  Metric m;
  if (metric == "loss") {
    m = Metric::kLoss;
  } else if (metric == "accuracy" || metric == "acc") {
    m = Metric::kAccuracy;
  } else {
    throw UsageError("--metric must be loss or accuracy");
  }
  ChartFormat f;
  if (format == "svg") {
    f = ChartFormat::kSvg;
  } else if (format == "text") {
    f = ChartFormat::kText;
  } else {
    throw UsageError("--format must be svg or text");
  }
  PlotWindow w;
  if (window != "all") {
    long long n = 0;
    if (!internal::ParseInteger(window, n) || n < 1) {
      throw UsageError("--window must be a positive integer or 'all'");
    }
    w = static_cast<std::size_t>(n);
  }
  const TrainingRun run = LoadRun(input, opts, in);
  const std::string doc = plot(run, m, w, f);
  WriteOutput(output, doc, out);
  if (!output.empty() && output != "-") out << output << "\n";
  return kExitOk;
}

// Entry point shared by the binary and the tests. `args` excludes argv[0].
inline int RunCli(std::vector<std::string> args, std::istream& in,
                  std::ostream& out, std::ostream& err) {
  CLI::App app{"Overfitting Index diagnostics for training telemetry",
               "oindex"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  InputOptions compute_opts;
  std::string compute_input;
  bool compute_json = false;
  bool compute_verbose = false;
  CLI::App* compute = app.add_subcommand("compute", "Compute the OI of a run");
  compute->add_option("input", compute_input, "Run file ('-' for stdin)");
  AddInputFlags(compute, compute_opts);
  compute->add_flag("--json", compute_json, "Emit the OIResult as JSON");
  compute->add_flag("-v,--verbose", compute_verbose, "Print per-epoch trace");

  InputOptions compare_opts;
  std::string compare_a;
  std::string compare_b;
  bool compare_json = false;
  CLI::App* cmp =
      app.add_subcommand("compare", "Compare a baseline and a variant run");
  cmp->add_option("baseline", compare_a, "Baseline run file")->required();
  cmp->add_option("variant", compare_b, "Variant run file")->required();
  AddInputFlags(cmp, compare_opts);
  cmp->add_flag("--json", compare_json, "Emit JSON");

  InputOptions watch_opts;
  std::string watch_input;
  bool watch_json = false;
  bool watch_follow = false;
  double watch_idle = 0.0;
  CLI::App* watch =
      app.add_subcommand("watch", "Stream JSONL records and print running OI");
  watch->add_option("input", watch_input, "JSONL file (default stdin)");
  AddInputFlags(watch, watch_opts);
  watch->add_flag("--json", watch_json, "Emit JSON lines");
  watch->add_flag("-f,--follow", watch_follow,
                  "Keep reading as the file grows");
  watch->add_option("--idle-timeout", watch_idle,
                    "Seconds without new data before --follow stops "
                    "(0 = never)")
      ->check(CLI::NonNegativeNumber);

  SynthFlags sf;
  CLI::App* synth =
      app.add_subcommand("synth", "Write a synthetic run as JSONL");
  synth->add_option("--preset", sf.preset, "Preset: " + PresetNameList());
  synth->add_option("--epochs", sf.epochs, "Number of epochs");
  synth->add_option("--train-loss-start", sf.train_loss_start);
  synth->add_option("--train-loss-floor", sf.train_loss_floor);
  synth->add_option("--loss-decay", sf.loss_decay);
  synth->add_option("--onset", sf.onset, "Divergence onset epoch");
  synth->add_option("--slope", sf.slope, "Validation loss divergence per epoch");
  synth->add_option("--acc-train", sf.acc_train, "Train accuracy ceiling");
  synth->add_option("--acc-val", sf.acc_val, "Validation accuracy ceiling");
  synth->add_option("--acc-rate", sf.acc_rate);
  synth->add_option("--seed", sf.seed);
  synth->add_option("--noise", sf.noise, "Uniform noise amplitude");
  synth->add_option("-o,--output", sf.output, "Output path (default stdout)");

  InputOptions plot_opts;
  std::string plot_input;
  std::string plot_metric = "loss";
  std::string plot_window = std::to_string(kDefaultPlotWindow);
  std::string plot_format = "svg";
  std::string plot_output;
  CLI::App* plt = app.add_subcommand("plot", "Chart train vs validation");
  plt->add_option("input", plot_input, "Run file ('-' for stdin)");
  AddInputFlags(plt, plot_opts, /*format_flag=*/false);
  plt->add_option("--metric", plot_metric, "loss or accuracy");
  plt->add_option("--window", plot_window,
                  "Number of final epochs to plot, or 'all'");
  plt->add_option("--format", plot_format, "svg or text");
  plt->add_option("-o,--output", plot_output, "Output path (default stdout)");

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "oindex: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*compute) {
      return CmdCompute(compute_input, compute_opts, compute_json,
                        compute_verbose, in, out);
    }
    if (*cmp) {
      return CmdCompare(compare_a, compare_b, compare_opts, compare_json, in,
                        out);
    }
    if (*watch) {
      return CmdWatch(watch_input, watch_opts, watch_json, watch_follow,
                      watch_idle, in, out, err);
    }
    if (*synth) return CmdSynth(sf, out);
    if (*plt) {
      return CmdPlot(plot_input, plot_opts, plot_metric, plot_window,
                     plot_format, plot_output, in, out);
    }
  } catch (const UsageError& e) {
    err << "oindex: " << e.what() << "\n";
    return kExitUsage;
  } catch (const IoError& e) {
    err << "oindex: " << e.what() << "\n";
    return kExitIo;
  } catch (const Error& e) {
    err << "oindex: " << e.what() << "\n";
    return e.kind() == ErrorKind::kConfig ? kExitUsage : kExitData;
  }
  return kExitUsage;
}

}  // namespace oi::cli

#endif  // OINDEX_CLI_HPP_
