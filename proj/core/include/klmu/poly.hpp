// Copyright 2026 The klmu Authors
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

#ifndef KLMU_POLY_HPP
#define KLMU_POLY_HPP

#include <climits>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace klmu {

using BigInt = boost::multiprecision::cpp_int;

/// Dense polynomial in q with arbitrary-precision integer coefficients.
/// coeffs()[d] is the coefficient of q^d; the last stored coefficient is
/// never zero, so the zero polynomial has no coefficients at all.
class IntPoly {
 public:
  static constexpr int kZeroDegree = INT_MIN;

  IntPoly() = default;
  explicit IntPoly(std::vector<BigInt> coeffs);
  IntPoly(std::initializer_list<long long> coeffs);

  static IntPoly one() { return IntPoly({1}); }

  const std::vector<BigInt>& coeffs() const noexcept { return coeffs_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  /// kZeroDegree for the zero polynomial.
  int degree() const noexcept {
    return coeffs_.empty() ? kZeroDegree : static_cast<int>(coeffs_.size()) - 1;
  }
  /// Zero for d outside [0, degree].
  BigInt coefficient(int d) const;
  const BigInt& max_coefficient() const;

  /// *this += factor * q^power * source.
  IntPoly& add_shifted(const IntPoly& source, int power, const BigInt& factor);

  /// "a0,a1,...,ad"; "0" for the zero polynomial.
  std::string to_string() const;
  static IntPoly parse(std::string_view text);

  friend bool operator==(const IntPoly&, const IntPoly&) = default;

  template <typename H>
  friend H AbslHashValue(H h, const IntPoly& p) {
    for (const BigInt& c : p.coeffs_) {
      BigInt rest = boost::multiprecision::abs(c);
      h = H::combine(std::move(h), c.sign());
      do {
        h = H::combine(std::move(h), static_cast<unsigned long long>(rest & 0xffffffffffffffffULL));
        rest >>= 64;
      } while (rest != 0);
    }
    return H::combine(std::move(h), p.coeffs_.size());
  }

 private:
  void trim();

  std::vector<BigInt> coeffs_;
};

/// target + sign * q^power * source.
IntPoly shift_add(IntPoly target, const IntPoly& source, int power, int sign);

inline BigInt coefficient(const IntPoly& p, int d) { return p.coefficient(d); }
inline int degree(const IntPoly& p) { return p.degree(); }

}  // namespace klmu

#endif  // KLMU_POLY_HPP
