#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

#include <boost/rational.hpp>

namespace shockmix {

/// Exact probabilities for drift verification. Magnitudes stay far from the
/// 64-bit range for every scan this library performs.
using Rational = boost::rational<std::int64_t>;

inline double to_double(double x) { return x; }
inline double to_double(const Rational& x) { return boost::rational_cast<double>(x); }

std::string to_string(const Rational& x);

/// Mixing parameter beta and exclusion parameter p (q = 1 - p).
///
/// Invariants: 0 <= beta <= 1, 0 <= p <= 1, and 0 < p < 1 whenever the
/// exclusion part is active (beta < 1).
template <class Scalar>
struct BasicModelParams {
  Scalar beta{};
  Scalar p{};

  Scalar q() const { return Scalar(1) - p; }
  void validate() const;
  bool is_voter() const { return beta == Scalar(1); }
};

using ModelParams = BasicModelParams<double>;
using ExactModelParams = BasicModelParams<Rational>;

template <>
void BasicModelParams<double>::validate() const;
template <>
void BasicModelParams<Rational>::validate() const;

ModelParams make_params(double beta, double p = 0.5);
ExactModelParams make_exact_params(Rational beta, Rational p = Rational(1, 2));
ModelParams to_double(const ExactModelParams& params);

/// A number given on the command line: "7/10" and "1" parse exactly,
/// "0.7" parses as a double.
using ParsedNumber = std::variant<Rational, double>;
ParsedNumber parse_number(std::string_view text);
double to_double(const ParsedNumber& x);

}  // namespace shockmix
