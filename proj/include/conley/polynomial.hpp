#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace conley {

/// Integer polynomial in t; coefficient of t^q at index q, trailing zeros trimmed.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(std::initializer_list<std::int64_t> coeffs);
  explicit Polynomial(std::vector<std::int64_t> coeffs);

  const std::vector<std::int64_t>& coeffs() const { return coeffs_; }
  std::int64_t operator[](std::size_t q) const { return q < coeffs_.size() ? coeffs_[q] : 0; }
  bool is_zero() const { return coeffs_.empty(); }
  bool nonnegative() const;
  std::int64_t at_minus_one() const;

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }

  /// (1 + t) * this
  Polynomial times_one_plus_t() const;

  bool operator==(const Polynomial&) const = default;

  /// Human-readable form such as "2+t^2"; "0" for the zero polynomial.
  std::string str() const;

 private:
  void trim();
  std::vector<std::int64_t> coeffs_;
};

}  // namespace conley
