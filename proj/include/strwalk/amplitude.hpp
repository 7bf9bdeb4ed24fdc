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
#include <ostream>
#include <stdexcept>
#include <string>

#include "strwalk/big.hpp"

namespace strwalk {

/// An element (a + b*sqrt(2)) / 2^e of Z[1/sqrt(2)].
///
/// Kept reduced: either e == 0 or a, b are not both even. Zero is (0, 0, 0). The
/// reduced form is unique, so equality is structural.
class ExactAmplitude {
   public:
    ExactAmplitude() = default;
    ExactAmplitude(long long v) : a_(v) {
    }
    ExactAmplitude(BigInt a, BigInt b = 0, std::uint32_t e = 0) : a_(std::move(a)), b_(std::move(b)), e_(e) {
        reduce();
    }

    static ExactAmplitude sqrt2() {
        return {0, 1, 0};
    }
    static ExactAmplitude inv_sqrt2() {
        return {0, 1, 1};
    }

    /// sqrt(2)^n for n >= 0.
    static ExactAmplitude sqrt2_pow(std::uint64_t n) {
        BigInt p = BigInt(1) << static_cast<unsigned>(n / 2);
        if (n % 2 == 0) {
            return {p, 0, 0};
        }
        return {0, p, 0};
    }

    /// sqrt(2)^(-n) for n >= 0.
    static ExactAmplitude inv_sqrt2_pow(std::uint64_t n) {
        // 2^{-n/2} = sqrt2^n / 2^n
        auto r = sqrt2_pow(n);
        r.e_ += static_cast<std::uint32_t>(n);
        r.reduce();
        return r;
    }

    const BigInt &a() const {
        return a_;
    }
    const BigInt &b() const {
        return b_;
    }
    std::uint32_t e() const {
        return e_;
    }

    bool is_zero() const {
        return a_ == 0 && b_ == 0;
    }
    bool is_integer() const {
        return b_ == 0 && e_ == 0;
    }

    BigInt to_integer() const {
        if (!is_integer()) {
            throw std::domain_error("amplitude " + str() + " is not an integer");
        }
        return a_;
    }

    /// Sign of a + b*sqrt(2), decided exactly.
    int sign() const {
        int sa = a_.sign();
        int sb = b_.sign();
        if (sb == 0) {
            return sa;
        }
        if (sa == 0 || sa == sb) {
            return sa == 0 ? sb : sa;
        }
        // Opposite signs: compare a^2 with 2 b^2.
        BigInt lhs = a_ * a_;
        BigInt rhs = 2 * b_ * b_;
        if (lhs == rhs) {
            return 0;
        }
        return lhs > rhs ? sa : sb;
    }

    double to_double() const {
        return static_cast<double>(to_long_double());
    }

    long double to_long_double() const {
        long double v = a_.convert_to<long double>() + b_.convert_to<long double>() * std::sqrt(2.0L);
        return std::ldexp(v, -static_cast<int>(e_));
    }

    ExactAmplitude operator-() const {
        ExactAmplitude r = *this;
        r.a_ = -r.a_;
        r.b_ = -r.b_;
        return r;
    }

    ExactAmplitude &operator+=(const ExactAmplitude &o) {
        if (o.e_ > e_) {
            unsigned k = o.e_ - e_;
            a_ <<= k;
            b_ <<= k;
            e_ = o.e_;
            a_ += o.a_;
            b_ += o.b_;
        } else {
            unsigned k = e_ - o.e_;
            a_ += o.a_ << k;
            b_ += o.b_ << k;
        }
        reduce();
        return *this;
    }

    ExactAmplitude &operator-=(const ExactAmplitude &o) {
        return *this += -o;
    }

    ExactAmplitude &operator*=(const ExactAmplitude &o) {
        BigInt na = a_ * o.a_ + 2 * b_ * o.b_;
        BigInt nb = a_ * o.b_ + b_ * o.a_;
        a_ = std::move(na);
        b_ = std::move(nb);
        e_ += o.e_;
        reduce();
        return *this;
    }

    friend ExactAmplitude operator+(ExactAmplitude x, const ExactAmplitude &y) {
        return x += y;
    }
    friend ExactAmplitude operator-(ExactAmplitude x, const ExactAmplitude &y) {
        return x -= y;
    }
    friend ExactAmplitude operator*(ExactAmplitude x, const ExactAmplitude &y) {
        return x *= y;
    }

    bool operator==(const ExactAmplitude &o) const {
        return e_ == o.e_ && a_ == o.a_ && b_ == o.b_;
    }

    std::string str() const {
        std::string s = "(" + a_.str();
        s += b_.sign() < 0 ? " - " : " + ";
        s += BigInt(boost::multiprecision::abs(b_)).str() + "*sqrt2)";
        if (e_ > 0) {
            s += "/2^" + std::to_string(e_);
        }
        return s;
    }

    friend std::ostream &operator<<(std::ostream &out, const ExactAmplitude &v) {
        return out << v.str();
    }

   private:
    void reduce() {
        if (a_ == 0 && b_ == 0) {
            e_ = 0;
            return;
        }
        while (e_ > 0 && !boost::multiprecision::bit_test(a_, 0) && !boost::multiprecision::bit_test(b_, 0)) {
            a_ >>= 1;
            b_ >>= 1;
            e_--;
        }
    }

    BigInt a_ = 0;
    BigInt b_ = 0;
    std::uint32_t e_ = 0;
};

}  // namespace strwalk
