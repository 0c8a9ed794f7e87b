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

// Overfitting Index (OI) over per-epoch training telemetry.
//
// For a run of N epochs the index is
//
//   OI = sum_{e=1..N} max(max(0, val_loss - train_loss),
//                         max(0, train_acc - val_acc)) * e
//
// i.e. each epoch contributes its worst clamped generalization gap, weighted
// by its 1-based ordinal so that late-training gaps count for more.

#ifndef OINDEX_CORE_HPP_
#define OINDEX_CORE_HPP_

#include <cmath>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "oi/error.hpp"

namespace oi {

struct EpochRecord {
  long long epoch = 1;  // 1-based ordinal.
  double train_loss = 0.0;
  double val_loss = 0.0;
  double train_acc = 0.0;  // Fraction in [0, 1].
  double val_acc = 0.0;    // Fraction in [0, 1].

  friend bool operator==(const EpochRecord&, const EpochRecord&) = default;
};

struct TrainingRun {
  std::vector<EpochRecord> records;
  std::string label;
  bool augmented = false;
  std::map<std::string, std::string> metadata;

  std::size_t size() const { return records.size(); }

  friend bool operator==(const TrainingRun&, const TrainingRun&) = default;
};

enum class Branch { kNone, kLoss, kAccuracy };

// Run-level summary of which branch of the max produced the penalties.
enum class Driver { kNone, kLoss, kAccuracy, kMixed };

struct EpochPenalty {
  long long epoch = 1;
  double loss_gap = 0.0;
  double acc_gap = 0.0;
  double penalty = 0.0;
  double contribution = 0.0;
  Branch dominant = Branch::kNone;

  friend bool operator==(const EpochPenalty&, const EpochPenalty&) = default;
};

struct OIResult {
  double total = 0.0;
  std::vector<EpochPenalty> trace;
  std::size_t n_epochs = 0;
  // total / (N(N+1)/2); a length-adjusted companion to `total`.
  double normalized = 0.0;
};

// Streaming form: running_total after k records equals compute_oi over the
// first k records, bit for bit.
struct OIAccumulator {
  double running_total = 0.0;
  std::size_t epochs_seen = 0;
  long long last_epoch = 0;

  friend bool operator==(const OIAccumulator&, const OIAccumulator&) = default;
};

inline std::string_view ToString(Branch b) {
  switch (b) {
    case Branch::kLoss:
      return "loss";
    case Branch::kAccuracy:
      return "accuracy";
    case Branch::kNone:
      break;
  }
  return "none";
}

inline std::string_view ToString(Driver d) {
  switch (d) {
    case Driver::kLoss:
      return "loss";
    case Driver::kAccuracy:
      return "accuracy";
    case Driver::kMixed:
      return "mixed";
    case Driver::kNone:
      break;
  }
  return "none";
}

namespace internal {

inline void CheckMetric(std::string_view field, double value, long long epoch,
                        bool is_accuracy) {
  const std::string where = " at epoch " + std::to_string(epoch);
  if (!std::isfinite(value)) {
    throw ValidationError(std::string(field),
                          std::string(field) + " is not finite" + where);
  }
  if (is_accuracy && (value < 0.0 || value > 1.0)) {
    throw ValidationError(std::string(field),
                          std::string(field) + " = " + std::to_string(value) +
                              " outside [0, 1]" + where);
  }
  if (!is_accuracy && value < 0.0) {
    throw ValidationError(std::string(field),
                          std::string(field) + " = " + std::to_string(value) +
                              " is negative" + where);
  }
}

}  // namespace internal

// Throws ValidationError naming the first offending field.
inline void ValidateRecord(const EpochRecord& r) {
  if (r.epoch < 1) {
    throw ValidationError("epoch", "epoch must be >= 1, got " +
                                       std::to_string(r.epoch));
  }
  internal::CheckMetric("train_loss", r.train_loss, r.epoch, false);
  internal::CheckMetric("val_loss", r.val_loss, r.epoch, false);
  internal::CheckMetric("train_acc", r.train_acc, r.epoch, true);
  internal::CheckMetric("val_acc", r.val_acc, r.epoch, true);
}

// Canonical runs are nonempty with epochs exactly 1..N in order.
inline void ValidateCanonicalRun(const TrainingRun& run) {
  if (run.records.empty()) {
    throw ValidationError("records", "training run has no epochs");
  }
  for (std::size_t i = 0; i < run.records.size(); ++i) {
    const EpochRecord& r = run.records[i];
    const auto expected = static_cast<long long>(i + 1);
    if (r.epoch != expected) {
      throw ValidationError(
          "epoch", "record " + std::to_string(i) + " has epoch " +
                       std::to_string(r.epoch) + ", expected canonical epoch " +
                       std::to_string(expected));
    }
    ValidateRecord(r);
  }
}

inline EpochPenalty epoch_penalty(const EpochRecord& record) {
  ValidateRecord(record);
  EpochPenalty p;
  p.epoch = record.epoch;
  p.loss_gap = record.val_loss > record.train_loss
                   ? record.val_loss - record.train_loss
                   : 0.0;
  p.acc_gap = record.train_acc > record.val_acc
                  ? record.train_acc - record.val_acc
                  : 0.0;
  // Ties between two positive gaps resolve to the loss branch.
  if (p.loss_gap > 0.0 && p.loss_gap >= p.acc_gap) {
    p.penalty = p.loss_gap;
    p.dominant = Branch::kLoss;
  } else if (p.acc_gap > 0.0) {
    p.penalty = p.acc_gap;
    p.dominant = Branch::kAccuracy;
  }
  p.contribution = p.penalty * static_cast<double>(record.epoch);
  return p;
}

inline double EpochWeightSum(std::size_t n) {
  const auto nd = static_cast<double>(n);
  return nd * (nd + 1.0) / 2.0;
}

inline OIResult compute_oi(const TrainingRun& run) {
  ValidateCanonicalRun(run);
  OIResult result;
  result.trace.reserve(run.records.size());
  for (const EpochRecord& r : run.records) {
    EpochPenalty p = epoch_penalty(r);
    result.total += p.contribution;
    result.trace.push_back(p);
  }
  result.n_epochs = run.records.size();
  result.normalized = result.total / EpochWeightSum(result.n_epochs);
  return result;
}

inline OIAccumulator accumulate(const OIAccumulator& acc,
                                const EpochRecord& record) {
  if (record.epoch != acc.last_epoch + 1) {
    throw SequencingError(acc.last_epoch + 1, record.epoch);
  }
  const EpochPenalty p = epoch_penalty(record);
  OIAccumulator next = acc;
  next.running_total += p.contribution;
  next.epochs_seen += 1;
  next.last_epoch = record.epoch;
  return next;
}

inline Driver dominant_driver(std::span<const EpochPenalty> trace) {
  bool any_loss = false;
  bool any_acc = false;
  for (const EpochPenalty& p : trace) {
    any_loss |= p.dominant == Branch::kLoss;
    any_acc |= p.dominant == Branch::kAccuracy;
  }
  if (any_loss && any_acc) return Driver::kMixed;
  if (any_loss) return Driver::kLoss;
  if (any_acc) return Driver::kAccuracy;
  return Driver::kNone;
}

inline Driver dominant_driver(const OIResult& result) {
  return dominant_driver(std::span<const EpochPenalty>(result.trace));
}

}  // namespace oi

#endif  // OINDEX_CORE_HPP_
