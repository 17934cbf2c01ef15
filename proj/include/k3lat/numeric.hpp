#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace k3lat {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

class error : public std::runtime_error {
public:
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

inline Int num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int den(const Rat& r) { return boost::multiprecision::denominator(r); }

inline int sign(const Int& a) { return a.sign(); }
inline int sign(const Rat& a) { return a.sign(); }

inline Int abs_int(const Int& a) { return a < 0 ? Int(-a) : a; }

// floor(a/b) for b != 0
inline Int floor_div(const Int& a, const Int& b) {
  Int q = a / b, r = a % b;
  if (r != 0 && ((r < 0) != (b < 0))) --q;
  return q;
}

inline Int floor_rat(const Rat& r) { return floor_div(num(r), den(r)); }
inline Int ceil_rat(const Rat& r) { return -floor_rat(-r); }

// floor(sqrt(n)), n >= 0
inline Int isqrt(const Int& n) {
  if (n < 0) throw error("isqrt of negative integer");
  return boost::multiprecision::sqrt(n);
}

// exact square root if n is a perfect square
inline std::optional<Int> perfect_sqrt(const Int& n) {
  if (n < 0) return std::nullopt;
  Int r = isqrt(n);
  if (r * r == n) return r;
  return std::nullopt;
}

inline std::optional<Rat> perfect_sqrt(const Rat& q) {
  auto n = perfect_sqrt(num(q));
  auto d = perfect_sqrt(den(q));
  if (!n || !d) return std::nullopt;
  return Rat(*n, *d);
}

// q reduced into [0, m) modulo m (m > 0), exact rational arithmetic
inline Rat mod_rat(const Rat& q, const Int& m) {
  Rat r = q - Rat(m) * Rat(floor_rat(q / Rat(m)));
  if (r < 0 || r >= Rat(m)) throw error("mod_rat internal inconsistency");
  return r;
}

inline std::string rat_str(const Rat& r) {
  if (den(r) == 1) return num(r).str();
  return num(r).str() + "/" + den(r).str();
}

inline Rat parse_rat(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(Int(s));
    Int n(s.substr(0, slash)), d(s.substr(slash + 1));
    if (d == 0) throw error("zero denominator in \"" + s + "\"");
    return Rat(n, d);
  } catch (const std::exception& e) {
    throw error("cannot parse rational \"" + s + "\": " + e.what());
  }
}

}  // namespace k3lat
