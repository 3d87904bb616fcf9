#pragma once

// Exact rational arithmetic and the planar primitives built on it. Every
// geometric predicate in the project goes through these helpers.

#include <gmpxx.h>

#include <compare>
#include <string>
#include <string_view>

namespace lefbench {

using Integer = mpz_class;
using Rational = mpq_class;

/// n/d in lowest terms. Use this instead of the two-argument mpq_class
/// constructor, which leaves the fraction uncanonicalized.
inline Rational ratio(long n, long d) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

/// Parses "p/q" or "p" (optional sign). Throws Error(ConfigError) on bad input
/// or a zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" form; integers are printed without the denominator.
std::string to_string(const Rational& value);

inline int sign(const Rational& value) { return sgn(value); }

/// Largest integer not exceeding value.
Integer floor_of(const Rational& value);

struct Point {
  Rational x;
  Rational y;

  friend bool operator==(const Point& a, const Point& b) { return a.x == b.x && a.y == b.y; }
  friend bool operator<(const Point& a, const Point& b) {
    if (a.x != b.x) return a.x < b.x;
    return a.y < b.y;
  }
};

inline Point operator+(const Point& a, const Point& b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(const Point& a, const Point& b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(const Rational& s, const Point& p) { return {s * p.x, s * p.y}; }

inline Rational cross(const Point& a, const Point& b) { return a.x * b.y - a.y * b.x; }
inline Rational dot(const Point& a, const Point& b) { return a.x * b.x + a.y * b.y; }
inline Rational norm2(const Point& a) { return dot(a, a); }

/// Sign of the turn a -> b -> c: +1 counterclockwise, -1 clockwise, 0 collinear.
inline int orient(const Point& a, const Point& b, const Point& c) { return sign(cross(b - a, c - a)); }

/// Rotation by a quarter turn counterclockwise.
inline Point rot90(const Point& p) { return {-p.y, p.x}; }

/// True when p lies on the closed segment [a, b].
bool on_segment(const Point& a, const Point& b, const Point& p);

/// True when the closed segments [a, b] and [c, d] share at least one point.
bool segments_touch(const Point& a, const Point& b, const Point& c, const Point& d);

std::string to_string(const Point& p);

}  // namespace lefbench
