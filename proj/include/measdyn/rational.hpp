#pragma once

// Exact rational scalar used throughout the library. All distances, weights
// and mixing coefficients are mpq_class values, so comparisons and equalities
// in the solvers are exact; no epsilon appears anywhere in the core.

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace measdyn {

using Rat = mpq_class;

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

inline Rat rat(long num, long den = 1) {
  if (den == 0) throw Error("rational with zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline double to_double(const Rat& r) { return r.get_d(); }

// Shortest readable form: integers stay bare, everything else is "p/q".
inline std::string rat_str(const Rat& r) { return r.get_str(); }

// Exact conversion; every binary64 value is a dyadic rational.
inline Rat rat_from_double(double v) {
  if (!std::isfinite(v)) throw Error("non-finite number is not rational");
  Rat r(v);
  r.canonicalize();
  return r;
}

// Parses "p/q", plain integers and decimal literals ("-0.25") exactly.
inline Rat rat_from_string(const std::string& text) {
  if (text.empty()) throw Error("empty string is not a number");
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    Rat r;
    if (r.set_str(text, 10) != 0) throw Error("bad rational literal: " + text);
    if (r.get_den() == 0) throw Error("rational with zero denominator: " + text);
    r.canonicalize();
    return r;
  }
  const auto dot = text.find('.');
  if (dot == std::string::npos) {
    Rat r;
    if (r.set_str(text, 10) != 0) throw Error("bad integer literal: " + text);
    return r;
  }
  std::string digits = text.substr(0, dot) + text.substr(dot + 1);
  const std::size_t frac_len = text.size() - dot - 1;
  if (frac_len == 0 || digits.empty()) throw Error("bad decimal literal: " + text);
  mpz_class num;
  if (num.set_str(digits, 10) != 0) throw Error("bad decimal literal: " + text);
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_len);
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline Rat rat_abs(const Rat& r) { return r < 0 ? Rat(-r) : r; }

inline Rat rat_min(const Rat& a, const Rat& b) { return a < b ? a : b; }
inline Rat rat_max(const Rat& a, const Rat& b) { return a > b ? a : b; }

// floor(num/den) as a machine integer; inputs at desk scale only.
inline long rat_floor(const Rat& r) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
  if (!q.fits_slong_p()) throw Error("floor overflows machine integer");
  return q.get_si();
}

inline long rat_ceil(const Rat& r) {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
  if (!q.fits_slong_p()) throw Error("ceil overflows machine integer");
  return q.get_si();
}

// Nearest integer with ties broken downward (toward the smaller value).
inline long rat_round_ties_down(const Rat& r) {
  const long f = rat_floor(r);
  const Rat frac = r - f;
  if (frac > rat(1, 2)) return f + 1;
  return f;
}

}  // namespace measdyn
