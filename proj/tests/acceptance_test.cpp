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

// Acceptance suite. Runs every exit criterion, prints one PASS/FAIL line per
// criterion with its wall time, and exits nonzero if any criterion fails.

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "oi/core.hpp"
#include "oi/ingest.hpp"
#include "oi/report.hpp"
#include "oi/synth.hpp"
#include "published_scores.hpp"
#include "test_util.hpp"

namespace {

using namespace oi;
using ::oi::testing::MakeRun;
using ::oi::testing::Metrics;

constexpr std::uint64_t kSeed = 0x0f17'2026;
constexpr int kRandomTrials = 200;  // >= 100 required.

struct Outcome {
  bool ok = true;
  std::string detail;

  void Require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

struct Criterion {
  std::string name;
  double time_limit_s;  // <= 0 means no limit stated.
  std::function<Outcome()> body;
};

// Randomized runs shared by the stream/batch, prefix and nonnegativity
// criteria.
std::vector<TrainingRun> RandomRuns() {
  std::mt19937_64 rng(kSeed);
  std::vector<TrainingRun> runs;
  for (int i = 0; i < kRandomTrials; ++i) {
    runs.push_back(::oi::testing::RandomRun(rng));
  }
  return runs;
}

std::string Shell(const std::string& cmd, int* exit_code = nullptr) {
  std::string out;
  FILE* p = ::popen(cmd.c_str(), "r");
  if (p == nullptr) return out;
  char buf[4096];
  std::size_t n = 0;
  while ((n = std::fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
  const int status = ::pclose(p);
  if (exit_code) *exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return out;
}

Outcome ZeroGapIdentity() {
  Outcome o;
  std::mt19937_64 rng(kSeed + 1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Metrics> m;
    const int n = 1 + static_cast<int>(u(rng) * 100);
    for (int e = 0; e < n; ++e) {
      const double loss = 3 * u(rng), acc = u(rng);
      m.push_back({loss, loss, acc, acc});
    }
    const OIResult r = compute_oi(MakeRun(m));
    o.Require(r.total == 0.0, "nonzero OI on zero-gap run");
  }
  o.Require(compute_oi(generate(preset(Preset::kWellGeneralized))).total == 0.0,
            "well-generalized preset has nonzero OI");
  return o;
}

Outcome HandOracle() {
  Outcome o;
  // 0.25 - 0.15 is exactly the double nearest 0.1.
  const OIResult r = compute_oi(MakeRun({{0.15, 0.25, 0.9, 0.9},
                                         {0.15, 0.25, 0.9, 0.9},
                                         {0.15, 0.25, 0.9, 0.9}}));
  o.Require(r.total == 0.1 * 1 + 0.1 * 2 + 0.1 * 3,
            "total differs from 0.1*1 + 0.1*2 + 0.1*3");
  o.Require(std::abs(r.total - 0.6) <= 1e-15, "total not 0.6");
  o.Require(std::abs(r.normalized - 0.1) <= 1e-15, "normalized not 0.1");
  return o;
}

Outcome ClosedFormOracle() {
  Outcome o;
  std::mt19937_64 rng(kSeed + 2);
  double worst = 0.0;
  for (int trial = 0; trial < kRandomTrials; ++trial) {
    const SynthSpec s = ::oi::testing::RandomSpec(rng);
    const double err = ::oi::testing::RelativeError(
        compute_oi(generate(s)).total, oracle_oi(s));
    worst = std::max(worst, err);
  }
  o.Require(worst <= 1e-9, "relative error " + std::to_string(worst));
  o.detail = o.ok ? "max relative error " + FormatHuman(worst) : o.detail;
  return o;
}

Outcome StreamBatchIdentity(const std::vector<TrainingRun>& runs) {
  Outcome o;
  for (const TrainingRun& run : runs) {
    OIAccumulator acc;
    for (const EpochRecord& r : run.records) acc = accumulate(acc, r);
    o.Require(acc.running_total == compute_oi(run).total,
              "accumulate differs from compute_oi");
    o.Require(acc.epochs_seen == run.size(), "epochs_seen mismatch");
  }
  return o;
}

Outcome PrefixMonotoneNonnegative(const std::vector<TrainingRun>& runs) {
  Outcome o;
  for (const TrainingRun& run : runs) {
    TrainingRun prefix;
    double prev = 0.0;
    for (const EpochRecord& r : run.records) {
      prefix.records.push_back(r);
      const double total = compute_oi(prefix).total;
      o.Require(total >= 0.0, "negative OI");
      o.Require(total >= prev, "prefix OI decreased");
      prev = total;
    }
  }
  return o;
}

Outcome EpochWeightOrdering() {
  Outcome o;
  std::mt19937_64 rng(kSeed + 3);
  std::uniform_real_distribution<double> penalty(0.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < kRandomTrials; ++trial) {
    const std::size_t n =
        std::uniform_int_distribution<std::size_t>(2, 30)(rng);
    std::vector<double> p(n);
    for (double& x : p) x = penalty(rng);
    std::uniform_int_distribution<std::size_t> idx(0, n - 1);
    std::size_t i = idx(rng), j = idx(rng);
    while (i == j) j = idx(rng);
    if (i > j) std::swap(i, j);
    if (p[i] > p[j]) std::swap(p[i], p[j]);
    if (p[i] == p[j]) continue;
    auto run_of = [](const std::vector<double>& ps) {
      std::vector<Metrics> m;
      for (double x : ps) m.push_back({0.0, x, 0.5, 0.5});
      return MakeRun(m);
    };
    std::vector<double> swapped = p;
    std::swap(swapped[i], swapped[j]);
    const double later = compute_oi(run_of(p)).total;
    const double earlier = compute_oi(run_of(swapped)).total;
    o.Require(later > earlier, "later placement did not increase OI");
    const double err = std::abs((later - earlier) -
                                (p[j] - p[i]) * static_cast<double>(j - i));
    worst = std::max(worst, err);
  }
  o.Require(worst <= 1e-12, "swap identity error " + FormatHuman(worst));
  if (o.ok) o.detail = "max abs error " + FormatHuman(worst);
  return o;
}

Outcome PublishedFixture() {
  Outcome o;
  std::vector<RunScore> scores;
  std::vector<RunComparison> pairs;
  for (const auto& p : ::oi::testing::kBusScores) {
    scores.push_back({std::string(p.model), p.without_augmentation, {}});
    pairs.push_back(compare({std::string(p.model), p.without_augmentation, {}},
                            {std::string(p.model), p.with_augmentation, {}}));
  }
  const Ranking r = rank(scores);
  const std::vector<std::string> want = {"MobileNet", "Darknet", "ResNet",
                                         "U-Net"};
  for (std::size_t i = 0; i < want.size(); ++i) {
    o.Require(r.entries[i].label == want[i], "rank order mismatch at " +
                                                 std::to_string(i));
  }
  const AugmentationSummary s = augmentation_effect(pairs);
  o.Require(s.reduced_count == 4 && s.pairs.size() == 4,
            "augmentation reduced " + std::to_string(s.reduced_count) +
                " of " + std::to_string(s.pairs.size()));
  o.Require(std::abs(pairs[0].delta - -2711.4350) <= 1e-9,
            "MobileNet delta mismatch");
  return o;
}

Outcome ParserRoundTrips() {
  Outcome o;
  std::mt19937_64 rng(kSeed + 4);
  for (int trial = 0; trial < kRandomTrials; ++trial) {
    const TrainingRun run = ::oi::testing::RandomRun(rng);
    std::ostringstream csv, jsonl;
    write_csv(run, csv);
    write_jsonl(run, jsonl);
    const TrainingRun from_csv = parse_csv(csv.str());
    const TrainingRun from_jsonl = parse_jsonl(jsonl.str());
    o.Require(from_csv == run, "CSV round trip changed the run");
    o.Require(from_jsonl == run, "JSONL round trip changed the run");
    o.Require(from_csv == from_jsonl, "CSV and JSONL parse differently");
  }
  return o;
}

Outcome CliEndToEnd() {
  Outcome o;
  const std::string bin = OINDEX_CLI_PATH;
  const double oracle = oracle_oi(preset(Preset::kOverfitLate));

  int code = -1;
  const std::string compute_out = Shell(
      bin + " synth --preset overfit-late | " + bin + " compute --json", &code);
  o.Require(code == 0, "compute pipeline exit " + std::to_string(code));
  double total = std::nan("");
  try {
    total = nlohmann::json::parse(compute_out)["total"].get<double>();
  } catch (const std::exception& e) {
    o.Require(false, std::string("compute output: ") + e.what());
  }
  o.Require(::oi::testing::RelativeError(total, oracle) <= 1e-9,
            "compute " + FormatRoundTrip(total) + " vs oracle " +
                FormatRoundTrip(oracle));

  const std::string watch_out = Shell(
      bin + " synth --preset overfit-late | " + bin + " watch --json", &code);
  o.Require(code == 0, "watch pipeline exit " + std::to_string(code));
  std::istringstream lines(watch_out);
  std::string line, last;
  std::size_t epoch_lines = 0;
  while (std::getline(lines, line)) {
    if (line.find("\"summary\"") == std::string::npos) ++epoch_lines;
    last = line;
  }
  try {
    o.Require(nlohmann::json::parse(last)["total"].get<double>() == total,
              "watch final total differs from compute");
  } catch (const std::exception& e) {
    o.Require(false, std::string("watch output: ") + e.what());
  }
  o.Require(epoch_lines == 10, "watch printed " + std::to_string(epoch_lines) +
                                   " epoch lines");

  const auto dir = std::filesystem::temp_directory_path() /
                   ("oindex_acceptance_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  const std::string nan_file = (dir / "nan.jsonl").string();
  std::ofstream(nan_file) << R"({"epoch":1,"train_loss":NaN,"val_loss":1.1,)"
                             R"("train_acc":0.6,"val_acc":0.55})" "\n";
  int usage = -1, data = -1, io = -1;
  Shell(bin + " compare " + nan_file + " 2>/dev/null", &usage);
  Shell(bin + " compute " + nan_file + " 2>/dev/null", &data);
  Shell(bin + " compute " + (dir / "absent.jsonl").string() + " 2>/dev/null",
        &io);
  std::filesystem::remove_all(dir);
  o.Require(usage == 1, "usage exit " + std::to_string(usage));
  o.Require(data == 2, "validation exit " + std::to_string(data));
  o.Require(io == 3, "I/O exit " + std::to_string(io));
  return o;
}

Outcome PlotDeterminism() {
  Outcome o;
  SynthSpec s = preset(Preset::kOverfitLate);
  s.n_epochs = 30;
  s.noise_amplitude = 0.02;
  s.seed = 9;
  const TrainingRun run = generate(s);
  const std::string a = plot(run, Metric::kLoss);
  const std::string b = plot(generate(s), Metric::kLoss);
  o.Require(a == b, "SVG output differs between identical inputs");
  const auto window = SelectWindow(run, kDefaultPlotWindow);
  o.Require(kDefaultPlotWindow == 10, "default window is not 10");
  o.Require(window.size() == 10 && window.front().epoch == 21 &&
                window.back().epoch == 30,
            "default window is not epochs 21..30");
  o.Require(a.find("epochs 21-30") != std::string::npos,
            "SVG title does not show epochs 21-30");
  std::size_t circles = 0;
  for (auto pos = a.find("<circle"); pos != std::string::npos;
       pos = a.find("<circle", pos + 1)) {
    ++circles;
  }
  o.Require(circles == 20, "expected 20 points, found " +
                               std::to_string(circles));
  return o;
}

}  // namespace

int main() {
  const std::vector<TrainingRun> runs = RandomRuns();
  const std::vector<Criterion> criteria = {
      {"zero-gap identity", 1.0, ZeroGapIdentity},
      {"hand-oracle equality (0.6)", 1.0, HandOracle},
      {"closed-form oracle (random synth specs, 1e-9 rel)", 5.0,
       ClosedFormOracle},
      {"stream/batch identity (bit-for-bit)", 5.0,
       [&] { return StreamBatchIdentity(runs); }},
      {"prefix monotonicity and nonnegativity", 0.0,
       [&] { return PrefixMonotoneNonnegative(runs); }},
      {"epoch-weight ordering (swap identity, 1e-12)", 0.0,
       EpochWeightOrdering},
      {"published fixture: ranking and augmentation effect", 1.0,
       PublishedFixture},
      {"parser round-trips and format equivalence", 0.0, ParserRoundTrips},
      {"CLI end-to-end (synth | compute, watch, exit codes)", 0.0,
       CliEndToEnd},
      {"plot determinism and default window", 0.0, PlotDeterminism},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - start)
                            .count();
    if (c.time_limit_s > 0 && secs >= c.time_limit_s) {
      o.ok = false;
      o.detail = "took " + FormatHuman(secs) + " s, limit " +
                 FormatHuman(c.time_limit_s) + " s";
    }
    failures += o.ok ? 0 : 1;
    std::printf("[%s] %s (%.3f s)%s%s\n", o.ok ? "PASS" : "FAIL",
                c.name.c_str(), secs, o.detail.empty() ? "" : ": ",
                o.detail.c_str());
  }
  std::printf("%zu criteria, %d failed\n", criteria.size(), failures);
  return failures == 0 ? 0 : 1;
}
