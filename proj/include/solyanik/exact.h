// Copyright 2026 The Solyanik Authors.
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

#ifndef SOLYANIK_EXACT_H_
#define SOLYANIK_EXACT_H_

// Scalar plumbing shared by the double and exact-rational code paths.

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>

#include <string>

namespace solyanik {

using Rational = boost::multiprecision::number<
    boost::multiprecision::gmp_rational, boost::multiprecision::et_off>;

// Exact rational equal to the shortest decimal string that round-trips `x`.
// 0.6 maps to 3/5, not to the binary neighbour of 0.6.
Rational to_rational(double x);

// Shortest round-trip decimal representation of `x`.
std::string shortest_repr(double x);

template <class Scalar>
Scalar scalar_from_double(double x);

template <>
inline double scalar_from_double<double>(double x) {
  return x;
}

template <>
inline Rational scalar_from_double<Rational>(double x) {
  return to_rational(x);
}

inline double to_double(double x) { return x; }
inline double to_double(const Rational& x) {
  return x.convert_to<double>();
}

// num / den > threshold with den > 0. For doubles the quotient is rounded
// once, so integer-valued sums compare exactly against decimal thresholds.
inline bool ratio_exceeds(double num, double den, double threshold) {
  return num / den > threshold;
}
inline bool ratio_exceeds(const Rational& num, const Rational& den,
                          const Rational& threshold) {
  return num > threshold * den;
}

// Relative-tolerance acceptance of `value <= bound` (bound >= 0).
inline bool leq_tol(double value, double bound, double rel_tol) {
  return value <= bound * (1.0 + rel_tol);
}

}  // namespace solyanik

#endif  // SOLYANIK_EXACT_H_
