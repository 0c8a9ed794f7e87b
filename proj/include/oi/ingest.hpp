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

// Parsing, validation and canonicalization of per-epoch telemetry.
//
// Both readers accept UTF-8 text. CSV uses a comma delimiter with
// double-quote quoting ("" escapes a quote inside a quoted field). JSONL is
// one object per line; blank lines are skipped. Source epoch labels are
// sorted, checked for duplicates, and re-indexed densely to 1..N.

#ifndef OINDEX_INGEST_HPP_
#define OINDEX_INGEST_HPP_

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "json.hpp"
#include "oi/core.hpp"
#include "oi/error.hpp"
#include "oi/format.hpp"

namespace oi {

enum class AccuracyUnit { kFraction, kPercent };

struct FieldMapping {
  std::string epoch_key = "epoch";
  std::string train_loss_key = "train_loss";
  std::string val_loss_key = "val_loss";
  std::string train_acc_key = "train_acc";
  std::string val_acc_key = "val_acc";
  AccuracyUnit accuracy_unit = AccuracyUnit::kFraction;

  // Throws ConfigError unless the five keys are nonempty and distinct.
  void Validate() const {
    const std::array<const std::string*, 5> keys = {
        &epoch_key, &train_loss_key, &val_loss_key, &train_acc_key,
        &val_acc_key};
    std::set<std::string> seen;
    for (const std::string* k : keys) {
      if (k->empty()) throw ConfigError("field mapping has an empty key");
      if (!seen.insert(*k).second) {
        throw ConfigError("field mapping key '" + *k + "' is used twice");
      }
    }
  }

  // Sets a key by its canonical name ("epoch", "train_loss", ...).
  void Set(std::string_view canonical, std::string source) {
    if (canonical == "epoch") {
      epoch_key = std::move(source);
    } else if (canonical == "train_loss") {
      train_loss_key = std::move(source);
    } else if (canonical == "val_loss") {
      val_loss_key = std::move(source);
    } else if (canonical == "train_acc") {
      train_acc_key = std::move(source);
    } else if (canonical == "val_acc") {
      val_acc_key = std::move(source);
    } else {
      throw ConfigError("unknown field '" + std::string(canonical) +
                        "'; expected one of epoch, train_loss, val_loss, "
                        "train_acc, val_acc");
    }
  }
};

// Canonical metric names, in the order they appear in an EpochRecord.
inline constexpr std::array<std::string_view, 4> kMetricNames = {
    "train_loss", "val_loss", "train_acc", "val_acc"};

struct RawRecord {
  long long epoch = 0;
  // Keyed by canonical metric name.
  std::map<std::string, double, std::less<>> metrics;
  std::size_t source_line = 0;
};

enum class Severity { kWarning, kError };

enum class DiagnosticKind {
  kEmptyRun,
  kNonMonotoneEpoch,
  kNonCanonicalEpoch,
  kNonFinite,
  kOutOfRange,
  kSourceEpochGaps,
};

struct Diagnostic {
  Severity severity = Severity::kError;
  DiagnosticKind kind = DiagnosticKind::kEmptyRun;
  std::size_t record_index = 0;
  long long epoch = 0;
  std::string field;
  std::string message;
};

inline std::string_view ToString(DiagnosticKind k) {
  switch (k) {
    case DiagnosticKind::kEmptyRun:
      return "empty-run";
    case DiagnosticKind::kNonMonotoneEpoch:
      return "non-monotone-epoch";
    case DiagnosticKind::kNonCanonicalEpoch:
      return "non-canonical-epoch";
    case DiagnosticKind::kNonFinite:
      return "non-finite";
    case DiagnosticKind::kOutOfRange:
      return "out-of-range";
    case DiagnosticKind::kSourceEpochGaps:
      return "source-epoch-gaps";
  }
  return "unknown";
}

inline std::string FormatDiagnostic(const Diagnostic& d) {
  std::string s = d.severity == Severity::kError ? "error" : "warning";
  s += " [";
  s += ToString(d.kind);
  s += "] ";
  s += d.message;
  return s;
}

// Metadata key holding the original epoch labels when they were not 1..N.
inline constexpr std::string_view kSourceEpochsKey = "source_epochs";

namespace internal {

inline void CheckDiagnosticMetric(std::vector<Diagnostic>& out,
                                  std::size_t index, const EpochRecord& r,
                                  std::string_view field, double value,
                                  bool is_accuracy) {
  Diagnostic d;
  d.record_index = index;
  d.epoch = r.epoch;
  d.field = std::string(field);
  const std::string where = " at epoch " + std::to_string(r.epoch) +
                            " (record " + std::to_string(index) + ")";
  if (!std::isfinite(value)) {
    d.kind = DiagnosticKind::kNonFinite;
    d.message = d.field + " is not finite" + where;
    out.push_back(std::move(d));
  } else if ((is_accuracy && (value < 0.0 || value > 1.0)) || value < 0.0) {
    d.kind = DiagnosticKind::kOutOfRange;
    d.message = d.field + " = " + FormatRoundTrip(value) +
                (is_accuracy ? " outside [0, 1]" : " is negative") + where;
    out.push_back(std::move(d));
  }
}

}  // namespace internal

// One diagnostic per violated invariant; the run is never modified.
inline std::vector<Diagnostic> validate_run(const TrainingRun& run) {
  std::vector<Diagnostic> out;
  if (run.records.empty()) {
    out.push_back({Severity::kError, DiagnosticKind::kEmptyRun, 0, 0,
                   "records", "training run has no epochs"});
    return out;
  }
  for (std::size_t i = 0; i < run.records.size(); ++i) {
    const EpochRecord& r = run.records[i];
    if (i > 0 && r.epoch <= run.records[i - 1].epoch) {
      out.push_back({Severity::kError, DiagnosticKind::kNonMonotoneEpoch, i,
                     r.epoch, "epoch",
                     "epoch " + std::to_string(r.epoch) + " (record " +
                         std::to_string(i) + ") does not follow epoch " +
                         std::to_string(run.records[i - 1].epoch)});
    } else if (r.epoch != static_cast<long long>(i + 1)) {
      out.push_back({Severity::kError, DiagnosticKind::kNonCanonicalEpoch, i,
                     r.epoch, "epoch",
                     "record " + std::to_string(i) + " has epoch " +
                         std::to_string(r.epoch) + ", expected " +
                         std::to_string(i + 1)});
    }
    internal::CheckDiagnosticMetric(out, i, r, "train_loss", r.train_loss,
                                    false);
    internal::CheckDiagnosticMetric(out, i, r, "val_loss", r.val_loss, false);
    internal::CheckDiagnosticMetric(out, i, r, "train_acc", r.train_acc, true);
    internal::CheckDiagnosticMetric(out, i, r, "val_acc", r.val_acc, true);
  }
  if (auto it = run.metadata.find(std::string(kSourceEpochsKey));
      it != run.metadata.end()) {
    std::vector<long long> labels;
    std::stringstream ss(it->second);
    std::string tok;
    while (std::getline(ss, tok, ',')) labels.push_back(std::stoll(tok));
    for (std::size_t i = 1; i < labels.size(); ++i) {
      if (labels[i] != labels[i - 1] + 1) {
        out.push_back({Severity::kWarning, DiagnosticKind::kSourceEpochGaps, i,
                       static_cast<long long>(i + 1), "epoch",
                       "source epoch labels skip from " +
                           std::to_string(labels[i - 1]) + " to " +
                           std::to_string(labels[i])});
        break;
      }
    }
  }
  return out;
}

inline bool HasErrors(const std::vector<Diagnostic>& diags) {
  return std::any_of(diags.begin(), diags.end(), [](const Diagnostic& d) {
    return d.severity == Severity::kError;
  });
}

// Thrown by the parsers when the canonical run fails validate_run.
class RunValidationError : public ValidationError {
 public:
  explicit RunValidationError(std::vector<Diagnostic> diagnostics,
                              const std::string& message)
      : ValidationError(diagnostics.empty() ? "" : diagnostics.front().field,
                        message),
        diagnostics_(std::move(diagnostics)) {}

  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

namespace internal {

inline constexpr std::string_view kNanMarker = "\x01oi-nan";
inline constexpr std::string_view kPosInfMarker = "\x01oi-inf";
inline constexpr std::string_view kNegInfMarker = "\x01oi-neg-inf";

inline bool TokenAt(std::string_view s, std::size_t pos, std::string_view tok) {
  if (s.substr(pos, tok.size()) != tok) return false;
  const std::size_t end = pos + tok.size();
  return end == s.size() ||
         !(std::isalnum(static_cast<unsigned char>(s[end])) || s[end] == '_');
}

inline std::string JsonQuoted(std::string_view marker) {
  std::string q = "\"";
  for (char c : marker) {
    if (c == '\x01') {
      q += "\\u0001";
    } else {
      q += c;
    }
  }
  return q + "\"";
}

// Rewrites bare NaN / Infinity / -Infinity outside strings into marker
// strings so that a strict JSON parser accepts the line.
inline std::string RewriteNonFiniteTokens(std::string_view line) {
  std::string out;
  out.reserve(line.size());
  bool in_string = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (in_string) {
      out += c;
      if (c == '\\' && i + 1 < line.size()) {
        out += line[++i];
      } else if (c == '"') {
        in_string = false;
      }
      continue;
    }
    if (c == '"') {
      in_string = true;
      out += c;
    } else if (TokenAt(line, i, "NaN")) {
      out += JsonQuoted(kNanMarker);
      i += 2;
    } else if (TokenAt(line, i, "Infinity")) {
      out += JsonQuoted(kPosInfMarker);
      i += 7;
    } else if (TokenAt(line, i, "-Infinity")) {
      out += JsonQuoted(kNegInfMarker);
      i += 8;
    } else {
      out += c;
    }
  }
  return out;
}

inline std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' ||
                        s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

inline bool ParseDouble(std::string_view s, double& out) {
  s = Trim(s);
  if (s.empty()) return false;
  if (s.front() == '+') s.remove_prefix(1);
  const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

inline bool ParseInteger(std::string_view s, long long& out) {
  s = Trim(s);
  if (s.empty()) return false;
  if (s.front() == '+') s.remove_prefix(1);
  const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

inline std::array<std::string_view, 4> MetricSourceKeys(
    const FieldMapping& m) {
  return {m.train_loss_key, m.val_loss_key, m.train_acc_key, m.val_acc_key};
}

// Sorts, rejects duplicate labels, re-indexes densely to 1..N and validates.
inline TrainingRun Canonicalize(std::vector<RawRecord> raws,
                                const FieldMapping& mapping);

}  // namespace internal

// Converts one raw record into an EpochRecord with the given canonical
// epoch, applying the accuracy unit. Accuracies outside [0, 1] after
// conversion raise RangeError; other invariants are left to validate_run.
inline EpochRecord ToEpochRecord(const RawRecord& raw,
                                 const FieldMapping& mapping,
                                 long long canonical_epoch) {
  EpochRecord r;
  r.epoch = canonical_epoch;
  const double scale =
      mapping.accuracy_unit == AccuracyUnit::kPercent ? 100.0 : 1.0;
  auto get = [&](std::string_view name) {
    auto it = raw.metrics.find(name);
    if (it == raw.metrics.end()) {
      throw SchemaError(raw.source_line, std::string(name),
                        "missing required metric '" + std::string(name) + "'");
    }
    return it->second;
  };
  r.train_loss = get("train_loss");
  r.val_loss = get("val_loss");
  r.train_acc = get("train_acc") / scale;
  r.val_acc = get("val_acc") / scale;
  for (auto [name, value] :
       {std::pair{"train_acc", r.train_acc}, std::pair{"val_acc", r.val_acc}}) {
    if (std::isfinite(value) && (value < 0.0 || value > 1.0)) {
      throw RangeError(raw.source_line, name,
                       std::string(name) + " = " + FormatRoundTrip(value) +
                           " outside [0, 1] after unit conversion");
    }
  }
  return r;
}

// Parses one JSONL object. `line_no` is 1-based and used in errors.
inline RawRecord ParseJsonlLine(std::string_view line, std::size_t line_no,
                                const FieldMapping& mapping) {
  nlohmann::json obj;
  try {
    obj = nlohmann::json::parse(internal::RewriteNonFiniteTokens(line));
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(line_no, 0, std::string("malformed JSON: ") + e.what());
  }
  if (!obj.is_object()) {
    throw ParseError(line_no, 0, "expected a JSON object");
  }
  RawRecord raw;
  raw.source_line = line_no;

  auto epoch_it = obj.find(mapping.epoch_key);
  if (epoch_it == obj.end()) {
    throw SchemaError(line_no, mapping.epoch_key,
                      "missing required key '" + mapping.epoch_key + "'");
  }
  if (!epoch_it->is_number_integer()) {
    throw SchemaError(line_no, mapping.epoch_key,
                      "key '" + mapping.epoch_key + "' must be an integer");
  }
  raw.epoch = epoch_it->get<long long>();
  if (raw.epoch < 0) {
    throw RangeError(line_no, mapping.epoch_key,
                     "epoch " + std::to_string(raw.epoch) + " is negative");
  }

  const auto keys = internal::MetricSourceKeys(mapping);
  for (std::size_t k = 0; k < keys.size(); ++k) {
    const std::string key(keys[k]);
    auto it = obj.find(key);
    if (it == obj.end()) {
      throw SchemaError(line_no, key, "missing required key '" + key + "'");
    }
    double value = 0.0;
    if (it->is_number()) {
      value = it->get<double>();
    } else if (it->is_string() &&
               it->get_ref<const std::string&>() == internal::kNanMarker) {
      value = std::nan("");
    } else if (it->is_string() &&
               it->get_ref<const std::string&>() == internal::kPosInfMarker) {
      value = HUGE_VAL;
    } else if (it->is_string() &&
               it->get_ref<const std::string&>() == internal::kNegInfMarker) {
      value = -HUGE_VAL;
    } else {
      throw SchemaError(line_no, key, "key '" + key + "' must be a number");
    }
    raw.metrics.emplace(std::string(kMetricNames[k]), value);
  }
  return raw;
}

inline TrainingRun parse_jsonl(std::istream& in,
                               const FieldMapping& mapping = {}) {
  mapping.Validate();
  std::vector<RawRecord> raws;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (internal::Trim(line).empty()) continue;
    raws.push_back(ParseJsonlLine(line, line_no, mapping));
  }
  return internal::Canonicalize(std::move(raws), mapping);
}

inline TrainingRun parse_jsonl(std::string_view text,
                               const FieldMapping& mapping = {}) {
  std::istringstream in{std::string(text)};
  return parse_jsonl(in, mapping);
}

namespace internal {

// Minimal RFC 4180 style reader: comma delimiter, double-quote quoting,
// embedded newlines allowed in quoted fields, CRLF or LF row ends.
class CsvReader {
 public:
  explicit CsvReader(std::istream& in) : in_(in) {}

  // Reads the next row; returns false at end of input. `row_line` is the
  // 1-based line on which the row started.
  bool Next(std::vector<std::string>& fields, std::size_t& row_line) {
    fields.clear();
    if (in_.peek() == std::char_traits<char>::eof()) return false;
    ++line_;
    row_line = line_;
    std::string field;
    bool quoted = false;
    bool after_quote = false;
    for (;;) {
      const int ci = in_.get();
      if (ci == std::char_traits<char>::eof()) {
        if (quoted) {
          throw ParseError(row_line, fields.size() + 1,
                           "unterminated quoted field");
        }
        fields.push_back(std::move(field));
        return true;
      }
      const char c = static_cast<char>(ci);
      if (quoted) {
        if (c == '"') {
          if (in_.peek() == '"') {
            in_.get();
            field += '"';
          } else {
            quoted = false;
            after_quote = true;
          }
        } else {
          if (c == '\n') ++line_;
          field += c;
        }
        continue;
      }
      if (c == ',') {
        fields.push_back(std::move(field));
        field.clear();
        after_quote = false;
      } else if (c == '\n') {
        fields.push_back(std::move(field));
        return true;
      } else if (c == '\r' && in_.peek() == '\n') {
        // Swallowed; the '\n' ends the row.
      } else if (after_quote) {
        throw ParseError(row_line, fields.size() + 1,
                         "unexpected character after closing quote");
      } else if (c == '"' && Trim(field).empty()) {
        field.clear();
        quoted = true;
      } else {
        field += c;
      }
    }
  }

 private:
  std::istream& in_;
  std::size_t line_ = 0;
};

inline bool IsBlankRow(const std::vector<std::string>& fields) {
  return fields.size() == 1 && Trim(fields.front()).empty();
}

}  // namespace internal

inline TrainingRun parse_csv(std::istream& in,
                             const FieldMapping& mapping = {}) {
  mapping.Validate();
  internal::CsvReader reader(in);
  std::vector<std::string> fields;
  std::size_t row_line = 0;

  bool have_header = false;
  while (reader.Next(fields, row_line)) {
    if (!internal::IsBlankRow(fields)) {
      have_header = true;
      break;
    }
  }
  if (!have_header) {
    throw SchemaError(1, mapping.epoch_key, "missing CSV header row");
  }
  const std::size_t header_line = row_line;
  const std::size_t n_columns = fields.size();
  auto column_of = [&](const std::string& key) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (internal::Trim(fields[i]) == key) return i;
    }
    throw SchemaError(header_line, key,
                      "CSV header is missing column '" + key + "'");
  };
  const std::size_t epoch_col = column_of(mapping.epoch_key);
  const auto keys = internal::MetricSourceKeys(mapping);
  std::array<std::size_t, 4> metric_cols{};
  for (std::size_t k = 0; k < keys.size(); ++k) {
    metric_cols[k] = column_of(std::string(keys[k]));
  }

  std::vector<RawRecord> raws;
  while (reader.Next(fields, row_line)) {
    if (internal::IsBlankRow(fields)) continue;
    if (fields.size() != n_columns) {
      throw ParseError(row_line, 0,
                       "expected " + std::to_string(n_columns) +
                           " fields, found " + std::to_string(fields.size()));
    }
    RawRecord raw;
    raw.source_line = row_line;
    if (!internal::ParseInteger(fields[epoch_col], raw.epoch)) {
      throw ParseError(row_line, epoch_col + 1,
                       "epoch cell '" + fields[epoch_col] +
                           "' is not an integer");
    }
    if (raw.epoch < 0) {
      throw RangeError(row_line, mapping.epoch_key,
                       "epoch " + std::to_string(raw.epoch) + " is negative");
    }
    for (std::size_t k = 0; k < keys.size(); ++k) {
      double v = 0.0;
      const std::string& cell = fields[metric_cols[k]];
      if (!internal::ParseDouble(cell, v)) {
        throw ParseError(row_line, metric_cols[k] + 1,
                         "cell '" + cell + "' in column '" +
                             std::string(keys[k]) + "' is not a number");
      }
      raw.metrics.emplace(std::string(kMetricNames[k]), v);
    }
    raws.push_back(std::move(raw));
  }
  return internal::Canonicalize(std::move(raws), mapping);
}

inline TrainingRun parse_csv(std::string_view text,
                             const FieldMapping& mapping = {}) {
  std::istringstream in{std::string(text)};
  return parse_csv(in, mapping);
}

namespace internal {

inline TrainingRun Canonicalize(std::vector<RawRecord> raws,
                                const FieldMapping& mapping) {
  std::stable_sort(raws.begin(), raws.end(),
                   [](const RawRecord& a, const RawRecord& b) {
                     return a.epoch < b.epoch;
                   });
  for (std::size_t i = 1; i < raws.size(); ++i) {
    if (raws[i].epoch == raws[i - 1].epoch) {
      throw DuplicateEpochError(
          std::max(raws[i].source_line, raws[i - 1].source_line),
          raws[i].epoch);
    }
  }
  TrainingRun run;
  run.records.reserve(raws.size());
  bool relabeled = false;
  std::string labels;
  for (std::size_t i = 0; i < raws.size(); ++i) {
    const auto ordinal = static_cast<long long>(i + 1);
    run.records.push_back(ToEpochRecord(raws[i], mapping, ordinal));
    relabeled |= raws[i].epoch != ordinal;
    if (i > 0) labels += ',';
    labels += std::to_string(raws[i].epoch);
  }
  if (relabeled) run.metadata.emplace(std::string(kSourceEpochsKey), labels);

  std::vector<Diagnostic> diags = validate_run(run);
  if (HasErrors(diags)) {
    std::string message;
    for (const Diagnostic& d : diags) {
      if (d.severity != Severity::kError) continue;
      if (!message.empty()) message += "; ";
      if (d.kind != DiagnosticKind::kEmptyRun && d.record_index < raws.size()) {
        message += "line " + std::to_string(raws[d.record_index].source_line) +
                   ": ";
      }
      message += FormatDiagnostic(d);
    }
    throw RunValidationError(std::move(diags), message);
  }
  return run;
}

}  // namespace internal

// Writes one JSON object per record using the mapping's key names.
// Accuracies are written in the mapping's unit.
inline void write_jsonl(const TrainingRun& run, std::ostream& out,
                        const FieldMapping& mapping = {}) {
  const double scale =
      mapping.accuracy_unit == AccuracyUnit::kPercent ? 100.0 : 1.0;
  for (const EpochRecord& r : run.records) {
    out << "{" << nlohmann::json(mapping.epoch_key).dump() << ":" << r.epoch
        << "," << nlohmann::json(mapping.train_loss_key).dump() << ":"
        << FormatRoundTrip(r.train_loss) << ","
        << nlohmann::json(mapping.val_loss_key).dump() << ":"
        << FormatRoundTrip(r.val_loss) << ","
        << nlohmann::json(mapping.train_acc_key).dump() << ":"
        << FormatRoundTrip(r.train_acc * scale) << ","
        << nlohmann::json(mapping.val_acc_key).dump() << ":"
        << FormatRoundTrip(r.val_acc * scale) << "}\n";
  }
}

namespace internal {

inline std::string CsvField(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) {
    return std::string(s);
  }
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

inline std::string CsvNumber(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return FormatRoundTrip(v);
}

}  // namespace internal

inline void write_csv(const TrainingRun& run, std::ostream& out,
                      const FieldMapping& mapping = {}) {
  const double scale =
      mapping.accuracy_unit == AccuracyUnit::kPercent ? 100.0 : 1.0;
  out << internal::CsvField(mapping.epoch_key) << ','
      << internal::CsvField(mapping.train_loss_key) << ','
      << internal::CsvField(mapping.val_loss_key) << ','
      << internal::CsvField(mapping.train_acc_key) << ','
      << internal::CsvField(mapping.val_acc_key) << '\n';
  for (const EpochRecord& r : run.records) {
    out << r.epoch << ',' << internal::CsvNumber(r.train_loss) << ','
        << internal::CsvNumber(r.val_loss) << ','
        << internal::CsvNumber(r.train_acc * scale) << ','
        << internal::CsvNumber(r.val_acc * scale) << '\n';
  }
}

}  // namespace oi

#endif  // OINDEX_INGEST_HPP_
