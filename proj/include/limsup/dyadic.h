// Copyright 2026 The Limsup Games Authors
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

#ifndef LIMSUP_DYADIC_H_
#define LIMSUP_DYADIC_H_

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

namespace limsup {

// Exact dyadic rational numerator / 2^exponent, always stored normalized:
// either the numerator is odd or the exponent is zero. Arithmetic throws
// std::overflow_error instead of wrapping.
class Dyadic {
 public:
  constexpr Dyadic() = default;
  Dyadic(std::int64_t numerator, std::uint32_t exponent = 0);  // NOLINT

  static Dyadic integer(std::int64_t z) { return Dyadic(z, 0); }

  std::int64_t numerator() const { return numerator_; }
  std::uint32_t exponent() const { return exponent_; }

  bool is_integer() const { return exponent_ == 0; }
  bool is_zero() const { return numerator_ == 0; }

  Dyadic operator-() const;
  friend Dyadic operator+(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator-(const Dyadic& a, const Dyadic& b);
  Dyadic& operator+=(const Dyadic& b) { return *this = *this + b; }
  Dyadic& operator-=(const Dyadic& b) { return *this = *this - b; }

  // Multiplication by an integer; used for comparing against 1/k bounds.
  Dyadic times(std::int64_t k) const;
  Dyadic abs() const { return numerator_ < 0 ? -*this : *this; }

  // 2^-n.
  static Dyadic pow2_neg(std::uint32_t n) { return Dyadic(1, n); }

  friend bool operator==(const Dyadic& a, const Dyadic& b) = default;
  friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b);

  // Least z * 2^-n that is >= *this.
  Dyadic ceil_to_grid(std::uint32_t n) const;
  bool on_grid(std::uint32_t n) const { return exponent_ <= n; }

  // "z/2^n", normalized.
  std::string to_string() const;
  // Accepts "z/2^n" (any n, normalized on read) and plain integers "z".
  static Dyadic parse(std::string_view text);

  double to_double() const;

 private:
  std::int64_t numerator_ = 0;
  std::uint32_t exponent_ = 0;
};

Dyadic min(const Dyadic& a, const Dyadic& b);
Dyadic max(const Dyadic& a, const Dyadic& b);
std::ostream& operator<<(std::ostream& os, const Dyadic& d);

// Dyadic extended by -inf and +inf. Houses cylinder infima that may be
// empty or unbounded.
class ExtValue {
 public:
  enum class Kind : std::uint8_t { kMinusInfinity, kFinite, kPlusInfinity };

  constexpr ExtValue() : kind_(Kind::kMinusInfinity) {}
  ExtValue(const Dyadic& d) : kind_(Kind::kFinite), value_(d) {}  // NOLINT

  static ExtValue minus_infinity() { return ExtValue(); }
  static ExtValue plus_infinity() {
    ExtValue v;
    v.kind_ = Kind::kPlusInfinity;
    return v;
  }

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::kFinite; }
  bool is_minus_infinity() const { return kind_ == Kind::kMinusInfinity; }
  bool is_plus_infinity() const { return kind_ == Kind::kPlusInfinity; }
  // Requires is_finite().
  const Dyadic& value() const;

  friend bool operator==(const ExtValue& a, const ExtValue& b);
  friend std::strong_ordering operator<=>(const ExtValue& a,
                                          const ExtValue& b);

  // -inf + x = -inf; mixing -inf and +inf throws.
  friend ExtValue operator+(const ExtValue& a, const ExtValue& b);

  std::string to_string() const;

 private:
  Kind kind_;
  Dyadic value_;
};

ExtValue min(const ExtValue& a, const ExtValue& b);
ExtValue max(const ExtValue& a, const ExtValue& b);
std::ostream& operator<<(std::ostream& os, const ExtValue& v);

}  // namespace limsup

template <>
struct std::hash<limsup::Dyadic> {
  std::size_t operator()(const limsup::Dyadic& d) const noexcept {
    return std::hash<std::int64_t>()(d.numerator()) * 31u + d.exponent();
  }
};

#endif  // LIMSUP_DYADIC_H_
