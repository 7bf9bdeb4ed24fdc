// Copyright 2026 The strwalk Authors
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

#pragma once

#include <cmath>
#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace strwalk {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// Natural log of |v|; -inf for zero. Works far beyond the range of long double.
inline double log_abs(const BigInt &v) {
    if (v == 0) {
        return -INFINITY;
    }
    BigInt a = BigInt(boost::multiprecision::abs(v));
    auto bits = static_cast<long>(boost::multiprecision::msb(a)) + 1;
    long shift = bits > 60 ? bits - 60 : 0;
    BigInt top = a >> shift;
    double mant = top.convert_to<double>();
    return std::log(mant) + static_cast<double>(shift) * std::log(2.0);
}

inline long double to_long_double(const BigInt &v) {
    return v.convert_to<long double>();
}

inline int sign_of(const BigInt &v) {
    return v.sign();
}

inline std::string to_string(const BigInt &v) {
    return v.str();
}

}  // namespace strwalk
