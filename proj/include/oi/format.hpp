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

#ifndef OINDEX_FORMAT_HPP_
#define OINDEX_FORMAT_HPP_

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <string>

namespace oi {

// Shortest decimal string that parses back to exactly `value`.
inline std::string FormatRoundTrip(double value) {
  if (std::isnan(value)) return "NaN";
  if (std::isinf(value)) return value > 0 ? "Infinity" : "-Infinity";
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), res.ptr);
}

// Human-facing rendering with 10 significant digits.
inline std::string FormatHuman(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  std::snprintf(buf.data(), buf.size(), "%.10g", value);
  return std::string(buf.data());
}

// Fixed-point rendering used by chart labels.
inline std::string FormatFixed(double value, int decimals) {
  std::array<char, 64> buf{};
  std::snprintf(buf.data(), buf.size(), "%.*f", decimals, value);
  return std::string(buf.data());
}

}  // namespace oi

#endif  // OINDEX_FORMAT_HPP_
