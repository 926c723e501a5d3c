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

#include "klmu/poly.hpp"

#include <cctype>

#include "klmu/error.hpp"

namespace klmu {

IntPoly::IntPoly(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

IntPoly::IntPoly(std::initializer_list<long long> coeffs) {
  coeffs_.reserve(coeffs.size());
  for (long long c : coeffs) coeffs_.emplace_back(c);
  trim();
}

void IntPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

BigInt IntPoly::coefficient(int d) const {
  if (d < 0 || d >= static_cast<int>(coeffs_.size())) return 0;
  return coeffs_[static_cast<std::size_t>(d)];
}

const BigInt& IntPoly::max_coefficient() const {
  static const BigInt zero = 0;
  if (coeffs_.empty()) return zero;
  const BigInt* best = &coeffs_.front();
  for (const BigInt& c : coeffs_) {
    if (c > *best) best = &c;
  }
  return *best;
}

IntPoly& IntPoly::add_shifted(const IntPoly& source, int power, const BigInt& factor) {
  if (power < 0) throw DomainError("shift_add: negative power");
  if (source.is_zero() || factor == 0) return *this;
  const std::size_t need = source.coeffs_.size() + static_cast<std::size_t>(power);
  if (coeffs_.size() < need) coeffs_.resize(need);
  for (std::size_t i = 0; i < source.coeffs_.size(); ++i) {
    coeffs_[i + static_cast<std::size_t>(power)] += factor * source.coeffs_[i];
  }
  trim();
  return *this;
}

std::string IntPoly::to_string() const {
  if (coeffs_.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (i) out += ',';
    out += coeffs_[i].str();
  }
  return out;
}

IntPoly IntPoly::parse(std::string_view text) {
  std::vector<BigInt> coeffs;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view tok = text.substr(start, end - start);
    while (!tok.empty() && std::isspace(static_cast<unsigned char>(tok.front()))) tok.remove_prefix(1);
    while (!tok.empty() && std::isspace(static_cast<unsigned char>(tok.back()))) tok.remove_suffix(1);
    std::string_view digits = tok;
    if (!digits.empty() && digits.front() == '-') digits.remove_prefix(1);
    if (digits.empty()) throw ParseError("polynomial: bad coefficient '" + std::string(tok) + "'");
    for (char c : digits) {
      if (!std::isdigit(static_cast<unsigned char>(c))) {
        throw ParseError("polynomial: bad coefficient '" + std::string(tok) + "'");
      }
    }
    coeffs.emplace_back(std::string(tok));
    start = end + 1;
  }
  return IntPoly(std::move(coeffs));
}

IntPoly shift_add(IntPoly target, const IntPoly& source, int power, int sign) {
  target.add_shifted(source, power, BigInt(sign));
  return target;
}

}  // namespace klmu
