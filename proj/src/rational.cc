// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "collab/rational.hpp"

#include <cctype>
#include <cmath>
#include <limits>

#include "collab/error.hpp"

namespace collab {
namespace {

BigInt parse_integer(std::string_view digits, std::string_view whole) {
  if (digits.empty()) {
    throw Error(ErrorCode::kParseError,
                "malformed rational '" + std::string(whole) + "'");
  }
  BigInt value = 0;
  for (char c : digits) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw Error(ErrorCode::kParseError,
                  "malformed rational '" + std::string(whole) + "'");
    }
    value = value * 10 + (c - '0');
  }
  return value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && body.front() == '-') {
    negative = true;
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  BigInt numerator;
  BigInt denominator = 1;
  if (slash == std::string_view::npos) {
    numerator = parse_integer(body, text);
  } else {
    numerator = parse_integer(body.substr(0, slash), text);
    denominator = parse_integer(body.substr(slash + 1), text);
    if (denominator == 0) {
      throw Error(ErrorCode::kParseError,
                  "zero denominator in '" + std::string(text) + "'");
    }
  }
  Rational value(numerator, denominator);
  return negative ? Rational(-value) : value;
}

std::string to_string(const Rational& value) {
  if (denominator(value) == 1) return numerator(value).str();
  return numerator(value).str() + "/" + denominator(value).str();
}

std::string to_fraction_string(const Rational& value) {
  return numerator(value).str() + "/" + denominator(value).str();
}

double lower_double(const Rational& value) {
  double d = value.convert_to<double>();
  while (std::isfinite(d) && Rational(d) > value) {
    d = std::nextafter(d, -std::numeric_limits<double>::infinity());
  }
  return d;
}

double upper_double(const Rational& value) {
  double d = value.convert_to<double>();
  while (std::isfinite(d) && Rational(d) < value) {
    d = std::nextafter(d, std::numeric_limits<double>::infinity());
  }
  return d;
}

}  // namespace collab
