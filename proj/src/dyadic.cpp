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

#include "limsup/dyadic.h"

#include <charconv>
#include <limits>
#include <stdexcept>

namespace limsup {
namespace {

using Wide = __int128;

constexpr std::uint32_t kMaxShift = 62;

Wide shifted(std::int64_t numerator, std::uint32_t shift) {
  if (shift > kMaxShift) {
    if (numerator == 0) return 0;
    throw std::overflow_error("dyadic: exponent difference too large");
  }
  return static_cast<Wide>(numerator) * (static_cast<Wide>(1) << shift);
}

Dyadic from_wide(Wide numerator, std::uint32_t exponent) {
  while (exponent > 0 && numerator % 2 == 0) {
    numerator /= 2;
    --exponent;
  }
  if (numerator > std::numeric_limits<std::int64_t>::max() ||
      numerator < -std::numeric_limits<std::int64_t>::max()) {
    throw std::overflow_error("dyadic: numerator overflow");
  }
  return Dyadic(static_cast<std::int64_t>(numerator), exponent);
}

}  // namespace

Dyadic::Dyadic(std::int64_t numerator, std::uint32_t exponent)
    : numerator_(numerator), exponent_(exponent) {
  if (numerator_ == std::numeric_limits<std::int64_t>::min()) {
    throw std::overflow_error("dyadic: numerator out of range");
  }
  if (numerator_ == 0) {
    exponent_ = 0;
    return;
  }
  while (exponent_ > 0 && numerator_ % 2 == 0) {
    numerator_ /= 2;
    --exponent_;
  }
}

Dyadic Dyadic::operator-() const { return Dyadic(-numerator_, exponent_); }

Dyadic operator+(const Dyadic& a, const Dyadic& b) {
  const std::uint32_t e = std::max(a.exponent_, b.exponent_);
  return from_wide(shifted(a.numerator_, e - a.exponent_) +
                       shifted(b.numerator_, e - b.exponent_),
                   e);
}

Dyadic operator-(const Dyadic& a, const Dyadic& b) { return a + (-b); }

Dyadic Dyadic::times(std::int64_t k) const {
  return from_wide(static_cast<Wide>(numerator_) * k, exponent_);
}

std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
  if (a.exponent_ == b.exponent_) return a.numerator_ <=> b.numerator_;
  if ((a.numerator_ < 0) != (b.numerator_ < 0)) {
    return a.numerator_ <=> b.numerator_;
  }
  const std::uint32_t e = std::max(a.exponent_, b.exponent_);
  const Wide lhs = shifted(a.numerator_, e - a.exponent_);
  const Wide rhs = shifted(b.numerator_, e - b.exponent_);
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Dyadic Dyadic::ceil_to_grid(std::uint32_t n) const {
  if (exponent_ <= n) return *this;
  const std::uint32_t d = exponent_ - n;
  if (d > kMaxShift) return Dyadic(numerator_ > 0 ? 1 : 0, n);
  std::int64_t z = numerator_ >> d;  // floor
  if ((static_cast<Wide>(z) << d) != numerator_) ++z;
  return Dyadic(z, n);
}

std::string Dyadic::to_string() const {
  return std::to_string(numerator_) + "/2^" + std::to_string(exponent_);
}

Dyadic Dyadic::parse(std::string_view text) {
  auto fail = [&]() -> Dyadic {
    throw std::invalid_argument("malformed dyadic '" + std::string(text) +
                                "', expected z/2^n");
  };
  std::string_view num_part = text;
  std::string_view exp_part;
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    num_part = text.substr(0, slash);
    std::string_view rest = text.substr(slash + 1);
    if (rest.substr(0, 2) != "2^") return fail();
    exp_part = rest.substr(2);
    if (exp_part.empty()) return fail();
  }
  if (!num_part.empty() && num_part.front() == '+') num_part.remove_prefix(1);
  std::int64_t z = 0;
  auto [p, ec] = std::from_chars(num_part.data(),
                                 num_part.data() + num_part.size(), z);
  if (ec != std::errc() || p != num_part.data() + num_part.size() ||
      num_part.empty()) {
    return fail();
  }
  std::uint32_t e = 0;
  if (!exp_part.empty()) {
    auto [q, ec2] =
        std::from_chars(exp_part.data(), exp_part.data() + exp_part.size(), e);
    if (ec2 != std::errc() || q != exp_part.data() + exp_part.size()) {
      return fail();
    }
  }
  return Dyadic(z, e);
}

double Dyadic::to_double() const {
  double v = static_cast<double>(numerator_);
  for (std::uint32_t i = 0; i < exponent_; ++i) v /= 2.0;
  return v;
}

Dyadic min(const Dyadic& a, const Dyadic& b) { return b < a ? b : a; }
Dyadic max(const Dyadic& a, const Dyadic& b) { return a < b ? b : a; }

std::ostream& operator<<(std::ostream& os, const Dyadic& d) {
  return os << d.to_string();
}

const Dyadic& ExtValue::value() const {
  if (kind_ != Kind::kFinite) {
    throw std::logic_error("ExtValue::value() on an infinite value");
  }
  return value_;
}

bool operator==(const ExtValue& a, const ExtValue& b) {
  if (a.kind_ != b.kind_) return false;
  return a.kind_ != ExtValue::Kind::kFinite || a.value_ == b.value_;
}

std::strong_ordering operator<=>(const ExtValue& a, const ExtValue& b) {
  if (a.kind_ != b.kind_) {
    return static_cast<int>(a.kind_) <=> static_cast<int>(b.kind_);
  }
  if (a.kind_ != ExtValue::Kind::kFinite) return std::strong_ordering::equal;
  return a.value_ <=> b.value_;
}

ExtValue operator+(const ExtValue& a, const ExtValue& b) {
  if ((a.is_minus_infinity() && b.is_plus_infinity()) ||
      (a.is_plus_infinity() && b.is_minus_infinity())) {
    throw std::domain_error("ExtValue: -inf + +inf is undefined");
  }
  if (a.is_minus_infinity() || b.is_minus_infinity()) {
    return ExtValue::minus_infinity();
  }
  if (a.is_plus_infinity() || b.is_plus_infinity()) {
    return ExtValue::plus_infinity();
  }
  return ExtValue(a.value_ + b.value_);
}

std::string ExtValue::to_string() const {
  switch (kind_) {
    case Kind::kMinusInfinity:
      return "-inf";
    case Kind::kPlusInfinity:
      return "+inf";
    case Kind::kFinite:
      break;
  }
  return value_.to_string();
}

ExtValue min(const ExtValue& a, const ExtValue& b) { return b < a ? b : a; }
ExtValue max(const ExtValue& a, const ExtValue& b) { return a < b ? b : a; }

std::ostream& operator<<(std::ostream& os, const ExtValue& v) {
  return os << v.to_string();
}

}  // namespace limsup
