#pragma once

// Helpers shared by the unit tests and the acceptance binary.

#include <algorithm>
#include <boost/multiprecision/cpp_dec_float.hpp>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <random>
#include <sstream>
#include <string>

#include "fischerlab/scalar.hpp"
#include "fischerlab/seq_lemma.hpp"

namespace fischerlab::testing {

using Dec50 = boost::multiprecision::cpp_dec_float_50;

// Rational value of a 50-digit decimal rounded to 30 significant digits, nudged
// one unit in the last place in the requested direction.
inline Rational directed_rational(const Dec50& x, bool round_up) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(29) << x;
  const std::string s = os.str();
  const auto e = s.find('e');
  std::string mantissa = s.substr(0, e);
  const long exponent = std::stol(s.substr(e + 1));
  mantissa.erase(mantissa.find('.'), 1);
  Rational q(Integer(mantissa, 10));
  const long shift = exponent - 29;
  Integer ten_pow;
  mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(shift)));
  const Rational unit = shift >= 0 ? Rational(ten_pow) : Rational(1) / Rational(ten_pow);
  q *= unit;
  return round_up ? Rational(q + unit) : Rational(q - unit);
}

// Draws a config from one of the two strict applying clauses.
inline LemmaConfig random_strict_config(std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> gap(1, 6);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  LemmaConfig c;
  const std::size_t n = 1 + gap(rng) % 3;
  for (std::size_t i = 0; i < n; ++i) c.gaps.insert(gap(rng));
  c.a = 1.0 + 5.0 * unit(rng);
  c.d = 3.0 * unit(rng);
  c.b0 = 0.2 + 2.0 * unit(rng);
  c.a0 = 0.5 + unit(rng);
  const bool negative = unit(rng) < 0.5;
  c.sigma = (negative && unit(rng) < 0.5 ? -1.0 : 1.0) * (0.3 + 3.0 * unit(rng));
  if (negative) {
    const double high = static_cast<double>(c.beta_high()) / c.sigma;
    c.alpha = std::min(0.0, high) - 0.05 - 3.0 * unit(rng);
  } else {
    c.sigma = std::fabs(c.sigma);
    const double low = static_cast<double>(c.beta_low()) / c.sigma;
    c.alpha = low * (0.02 + 0.95 * unit(rng));
  }
  return c;
}

}  // namespace fischerlab::testing
