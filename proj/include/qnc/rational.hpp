// Copyright 2026 The QNC Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#ifndef QNC_RATIONAL_HPP
#define QNC_RATIONAL_HPP

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace qnc {

/// Exact rational used for every shrinking factor and branch probability.
using Rational = mpq_class;

inline Rational rational(long num, long den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

/// Always "num/den", including "1/1" and "0/1".
std::string to_string(const Rational &r);
/// Accepts "num/den" or an integer. Throws std::invalid_argument otherwise.
Rational parse_rational(std::string_view text);

inline double to_double(const Rational &r) {
    return r.get_d();
}

}  // namespace qnc

#endif
