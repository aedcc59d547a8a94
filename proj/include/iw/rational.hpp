#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace iw {

// Exact rational arithmetic. mpq_class keeps values canonical; the helpers
// here pin the "p/q" text format used by every report and parser.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

inline std::string rat_str(const Rat& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rat parse_rat(const std::string& text);

// Largest integer m with m < q (used for strict pigeonhole thresholds).
inline long strict_floor(const Rat& q) {
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  if (f * q.get_den() == q.get_num()) f -= 1;  // q integral: step below it
  return static_cast<long>(f.get_si());
}

// A rational extended with a single point at infinity; submeasures on
// infinite sets evaluate to inf(), everything finite stays exact.
struct ExtRat {
  bool infinite = false;
  Rat value;

  ExtRat() : value(0) {}
  ExtRat(Rat v) : value(std::move(v)) {}
  static ExtRat inf() {
    ExtRat e;
    e.infinite = true;
    return e;
  }

  bool operator==(const ExtRat& o) const {
    if (infinite || o.infinite) return infinite == o.infinite;
    return value == o.value;
  }
  bool operator<(const ExtRat& o) const {
    if (infinite) return false;
    if (o.infinite) return true;
    return value < o.value;
  }
  bool operator<=(const ExtRat& o) const { return *this < o || *this == o; }

  ExtRat operator+(const ExtRat& o) const {
    if (infinite || o.infinite) return inf();
    return ExtRat(value + o.value);
  }
};

inline ExtRat ext_max(const ExtRat& a, const ExtRat& b) { return a < b ? b : a; }

inline std::string ext_str(const ExtRat& e) {
  return e.infinite ? "inf" : rat_str(e.value);
}

}  // namespace iw
