// Copyright 2026 The probrep developers
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

#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace probrep {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// 2^{-k} as an exact rational, k >= 0.
inline Rational pow2_inv(unsigned k) {
  BigInt den = 1;
  den <<= k;
  return Rational(1, den);
}

/// 2^k as an exact rational.
inline Rational pow2(unsigned k) {
  BigInt num = 1;
  num <<= k;
  return Rational(num);
}

/// "p/q" (or plain "p" for integers), the serialization used in CSV output.
inline std::string rational_to_string(const Rational& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

inline double rational_to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace probrep
