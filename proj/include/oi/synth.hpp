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

// Synthetic learning curves whose Overfitting Index has a closed form.
//
// Noise-free curves, for epoch e = 1..N:
//
//   train_loss(e) = floor + (start - floor) * exp(-decay * e)
//   val_loss(e)   = train_loss(e) + slope * max(0, e - onset)
//   train_acc(e)  = ceil_train * (1 - exp(-rate * e))
//   val_acc(e)    = min(train_acc(e), ceil_val * (1 - exp(-rate * e)))
//
// so the loss gap is slope * max(0, e - onset) and the accuracy gap is
// max(0, ceil_train - ceil_val) * (1 - exp(-rate * e)).

#ifndef OINDEX_SYNTH_HPP_
#define OINDEX_SYNTH_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>

#include "oi/core.hpp"
#include "oi/error.hpp"

namespace oi {

struct SynthSpec {
  long long n_epochs = 10;
  double train_loss_start = 2.0;
  double train_loss_floor = 0.2;
  double loss_decay = 0.3;
  long long divergence_onset = 0;
  double divergence_slope = 0.0;
  double acc_ceiling_train = 0.95;
  double acc_ceiling_val = 0.95;
  double acc_rate = 0.3;
  std::uint64_t seed = 0;
  double noise_amplitude = 0.0;

  friend bool operator==(const SynthSpec&, const SynthSpec&) = default;
};

enum class Preset { kWellGeneralized, kOverfitLate, kOverfitEarly, kAccuracyDriven };

inline constexpr std::array<std::pair<std::string_view, Preset>, 4>
    kPresetNames = {{
        {"well-generalized", Preset::kWellGeneralized},
        {"overfit-late", Preset::kOverfitLate},
        {"overfit-early", Preset::kOverfitEarly},
        {"accuracy-driven", Preset::kAccuracyDriven},
    }};

inline std::string PresetNameList() {
  std::string s;
  for (const auto& [name, p] : kPresetNames) {
    if (!s.empty()) s += ", ";
    s += name;
  }
  return s;
}

inline Preset PresetFromName(std::string_view name) {
  for (const auto& [n, p] : kPresetNames) {
    if (n == name) return p;
  }
  throw ConfigError("unknown preset '" + std::string(name) +
                    "'; known presets: " + PresetNameList());
}

inline void ValidateSpec(const SynthSpec& s) {
  auto fail = [](const std::string& field, const std::string& why) {
    throw ValidationError(field, "invalid synth spec: " + field + " " + why);
  };
  auto finite_nonneg = [&](const char* field, double v) {
    if (!std::isfinite(v) || v < 0.0) fail(field, "must be finite and >= 0");
  };
  auto positive = [&](const char* field, double v) {
    if (!std::isfinite(v) || v <= 0.0) fail(field, "must be finite and > 0");
  };
  auto fraction = [&](const char* field, double v) {
    if (!(v >= 0.0 && v <= 1.0)) fail(field, "must lie in [0, 1]");
  };
  if (s.n_epochs < 1) fail("n_epochs", "must be >= 1");
  finite_nonneg("train_loss_start", s.train_loss_start);
  finite_nonneg("train_loss_floor", s.train_loss_floor);
  positive("loss_decay", s.loss_decay);
  if (s.divergence_onset < 0) fail("divergence_onset", "must be >= 0");
  finite_nonneg("divergence_slope", s.divergence_slope);
  fraction("acc_ceiling_train", s.acc_ceiling_train);
  fraction("acc_ceiling_val", s.acc_ceiling_val);
  positive("acc_rate", s.acc_rate);
  finite_nonneg("noise_amplitude", s.noise_amplitude);
}

inline TrainingRun generate(const SynthSpec& spec) {
  ValidateSpec(spec);
  TrainingRun run;
  run.records.reserve(static_cast<std::size_t>(spec.n_epochs));
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> noise(-spec.noise_amplitude,
                                               spec.noise_amplitude);
  const bool noisy = spec.noise_amplitude > 0.0;
  for (long long e = 1; e <= spec.n_epochs; ++e) {
    const auto ed = static_cast<double>(e);
    const double saturation = 1.0 - std::exp(-spec.acc_rate * ed);
    EpochRecord r;
    r.epoch = e;
    r.train_loss = spec.train_loss_floor +
                   (spec.train_loss_start - spec.train_loss_floor) *
                       std::exp(-spec.loss_decay * ed);
    r.val_loss = r.train_loss +
                 spec.divergence_slope *
                     static_cast<double>(std::max(0LL, e - spec.divergence_onset));
    r.train_acc = spec.acc_ceiling_train * saturation;
    r.val_acc = std::min(r.train_acc, spec.acc_ceiling_val * saturation);
    if (noisy) {
      r.train_loss += noise(rng);
      r.val_loss += noise(rng);
      r.train_acc += noise(rng);
      r.val_acc += noise(rng);
    }
    r.train_loss = std::max(0.0, r.train_loss);
    r.val_loss = std::max(0.0, r.val_loss);
    r.train_acc = std::clamp(r.train_acc, 0.0, 1.0);
    r.val_acc = std::clamp(r.val_acc, 0.0, 1.0);
    run.records.push_back(r);
  }
  return run;
}

// Closed-form OI of the noise-free curve family. Sums the gap expressions
// directly; it never builds records or calls into the core computation.
inline double oracle_oi(const SynthSpec& spec) {
  ValidateSpec(spec);
  if (spec.noise_amplitude > 0.0) {
    throw UnsupportedError("oracle_oi has no closed form for noisy specs");
  }
  const double ceiling_gap =
      std::max(0.0, spec.acc_ceiling_train - spec.acc_ceiling_val);
  double total = 0.0;
  for (long long e = 1; e <= spec.n_epochs; ++e) {
    const auto ed = static_cast<double>(e);
    const double loss_gap =
        spec.divergence_slope *
        static_cast<double>(std::max(0LL, e - spec.divergence_onset));
    const double acc_gap = ceiling_gap * (1.0 - std::exp(-spec.acc_rate * ed));
    total += std::max(loss_gap, acc_gap) * ed;
  }
  return total;
}

// Fixed presets. Constants are listed in the README.
inline SynthSpec preset(Preset p) {
  SynthSpec s;
  s.n_epochs = 10;
  s.train_loss_start = 2.0;
  s.train_loss_floor = 0.2;
  s.loss_decay = 0.3;
  s.acc_ceiling_train = 0.95;
  s.acc_ceiling_val = 0.95;
  s.acc_rate = 0.3;
  switch (p) {
    case Preset::kWellGeneralized:
      s.n_epochs = 30;
      s.loss_decay = 0.15;
      s.divergence_onset = 0;
      s.divergence_slope = 0.0;
      break;
    case Preset::kOverfitLate:
      s.divergence_onset = 5;
      s.divergence_slope = 0.02;
      break;
    case Preset::kOverfitEarly:
      s.divergence_onset = 1;
      s.divergence_slope = 0.05;
      break;
    case Preset::kAccuracyDriven:
      s.acc_ceiling_train = 0.98;
      s.acc_ceiling_val = 0.85;
      break;
  }
  return s;
}

inline SynthSpec preset(std::string_view name) {
  return preset(PresetFromName(name));
}

}  // namespace oi

#endif  // OINDEX_SYNTH_HPP_
