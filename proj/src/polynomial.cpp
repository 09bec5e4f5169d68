#include "conley/polynomial.hpp"

#include <algorithm>

namespace conley {

Polynomial::Polynomial(std::initializer_list<std::int64_t> coeffs) : coeffs_(coeffs) { trim(); }

Polynomial::Polynomial(std::vector<std::int64_t> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

bool Polynomial::nonnegative() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](std::int64_t c) { return c >= 0; });
}

std::int64_t Polynomial::at_minus_one() const {
  std::int64_t sum = 0;
  for (std::size_t q = 0; q < coeffs_.size(); ++q) sum += (q % 2 == 0) ? coeffs_[q] : -coeffs_[q];
  return sum;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  if (coeffs_.size() < other.coeffs_.size()) coeffs_.resize(other.coeffs_.size(), 0);
  for (std::size_t q = 0; q < other.coeffs_.size(); ++q) coeffs_[q] += other.coeffs_[q];
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  if (coeffs_.size() < other.coeffs_.size()) coeffs_.resize(other.coeffs_.size(), 0);
  for (std::size_t q = 0; q < other.coeffs_.size(); ++q) coeffs_[q] -= other.coeffs_[q];
  trim();
  return *this;
}

Polynomial Polynomial::times_one_plus_t() const {
  std::vector<std::int64_t> out(coeffs_.size() + 1, 0);
  for (std::size_t q = 0; q < coeffs_.size(); ++q) {
    out[q] += coeffs_[q];
    out[q + 1] += coeffs_[q];
  }
  return Polynomial(std::move(out));
}

std::string Polynomial::str() const {
  if (coeffs_.empty()) return "0";
  std::string out;
  for (std::size_t q = 0; q < coeffs_.size(); ++q) {
    const std::int64_t c = coeffs_[q];
    if (c == 0) continue;
    if (!out.empty()) out += c < 0 ? "-" : "+";
    else if (c < 0) out += "-";
    const std::int64_t a = c < 0 ? -c : c;
    if (q == 0) {
      out += std::to_string(a);
      continue;
    }
    if (a != 1) out += std::to_string(a);
    out += "t";
    if (q > 1) out += "^" + std::to_string(q);
  }
  return out;
}

}  // namespace conley
