#include "shockmix/params.hpp"

#include <charconv>
#include <stdexcept>

namespace shockmix {

namespace {

template <class Scalar>
void validate_impl(const BasicModelParams<Scalar>& params) {
  const Scalar zero(0), one(1);
  if (params.beta < zero || params.beta > one) throw std::invalid_argument("beta must lie in [0, 1]");
  if (params.p < zero || params.p > one) throw std::invalid_argument("p must lie in [0, 1]");
  if (params.beta < one && (params.p <= zero || params.p >= one))
    throw std::invalid_argument("exclusion dynamics (beta < 1) requires 0 < p < 1");
}

std::int64_t parse_int(std::string_view sv) {
  std::int64_t v = 0;
  const char* end = sv.data() + sv.size();
  auto [ptr, ec] = std::from_chars(sv.data(), end, v);
  if (sv.empty() || ec != std::errc() || ptr != end) throw std::invalid_argument("not an integer: '" + std::string(sv) + "'");
  return v;
}

}  // namespace

template <>
void BasicModelParams<double>::validate() const { validate_impl(*this); }

template <>
void BasicModelParams<Rational>::validate() const { validate_impl(*this); }

std::string to_string(const Rational& x) {
  if (x.denominator() == 1) return std::to_string(x.numerator());
  return std::to_string(x.numerator()) + "/" + std::to_string(x.denominator());
}

ModelParams make_params(double beta, double p) {
  ModelParams params{beta, p};
  params.validate();
  return params;
}

ExactModelParams make_exact_params(Rational beta, Rational p) {
  ExactModelParams params{beta, p};
  params.validate();
  return params;
}

ModelParams to_double(const ExactModelParams& params) { return {to_double(params.beta), to_double(params.p)}; }

ParsedNumber parse_number(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text.empty()) throw std::invalid_argument("empty number");

  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const auto den = parse_int(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    return Rational(parse_int(text.substr(0, slash)), den);
  }
  if (text.find_first_of(".eE") == std::string_view::npos) return Rational(parse_int(text));

  double v = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) throw std::invalid_argument("not a number: '" + std::string(text) + "'");
  return v;
}

double to_double(const ParsedNumber& x) {
  return std::visit([](const auto& v) { return to_double(v); }, x);
}

}  // namespace shockmix
