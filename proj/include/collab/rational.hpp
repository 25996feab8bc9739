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

#ifndef COLLAB_RATIONAL_HPP_
#define COLLAB_RATIONAL_HPP_

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace collab {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Accepts "p/q" or "p" with an optional leading '-'. The result is reduced.
Rational parse_rational(std::string_view text);

// "p/q" in lowest terms; integers print without a denominator ("2").
std::string to_string(const Rational& value);

// Always "p/q", including integers ("2/1"). Used by the JSON encodings.
std::string to_fraction_string(const Rational& value);

// Nearest-below / nearest-above doubles; lo <= value <= hi is guaranteed.
double lower_double(const Rational& value);
double upper_double(const Rational& value);

}  // namespace collab

#endif  // COLLAB_RATIONAL_HPP_
