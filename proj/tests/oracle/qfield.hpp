#pragma once

// Exact arithmetic in Q(sqrt2, sqrt3): numbers a + b sqrt2 + c sqrt3 + d sqrt6
// with 64-bit rational coefficients.  Every coordinate that appears while
// assembling unit-edge tilings whose edges point along multiples of 15
// degrees lives in this field, so positions compare exactly.

#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>

namespace tiling_oracle {

struct Rat {
  int64_t num = 0;
  int64_t den = 1;

  Rat() = default;
  Rat(int64_t n) : num(n), den(1) {}
  Rat(int64_t n, int64_t d) : num(n), den(d) { normalize(); }

  static int64_t checked(__int128 v) {
    if (v > INT64_MAX || v < INT64_MIN) {
      throw std::overflow_error("rational overflow in tiling oracle");
    }
    return static_cast<int64_t>(v);
  }

  void normalize() {
    if (den == 0) throw std::domain_error("zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
    if (num == 0) den = 1;
  }

  static Rat make(__int128 n, __int128 d) {
    if (d == 0) throw std::domain_error("zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    __int128 a = n < 0 ? -n : n;
    __int128 b = d;
    while (b) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    if (a > 1) {
      n /= a;
      d /= a;
    }
    Rat r;
    r.num = checked(n);
    r.den = checked(d);
    return r;
  }

  Rat operator+(const Rat& o) const {
    return make(static_cast<__int128>(num) * o.den + static_cast<__int128>(o.num) * den,
                static_cast<__int128>(den) * o.den);
  }
  Rat operator-(const Rat& o) const {
    return make(static_cast<__int128>(num) * o.den - static_cast<__int128>(o.num) * den,
                static_cast<__int128>(den) * o.den);
  }
  Rat operator*(const Rat& o) const {
    return make(static_cast<__int128>(num) * o.num, static_cast<__int128>(den) * o.den);
  }
  Rat operator/(const Rat& o) const {
    if (o.num == 0) throw std::domain_error("division by zero");
    return make(static_cast<__int128>(num) * o.den, static_cast<__int128>(den) * o.num);
  }
  Rat operator-() const {
    Rat r;
    r.num = -num;
    r.den = den;
    return r;
  }
  bool operator==(const Rat&) const = default;
  bool is_zero() const { return num == 0; }
  bool is_integer() const { return den == 1; }
  long double to_ld() const {
    return static_cast<long double>(num) / static_cast<long double>(den);
  }
  // Exact comparison.
  bool operator<(const Rat& o) const {
    return static_cast<__int128>(num) * o.den < static_cast<__int128>(o.num) * den;
  }
};

struct Q23 {
  Rat a, b, c, d; // a + b sqrt2 + c sqrt3 + d sqrt6

  Q23() = default;
  Q23(Rat ra) : a(ra) {}
  Q23(Rat ra, Rat rb, Rat rc, Rat rd) : a(ra), b(rb), c(rc), d(rd) {}

  static Q23 sqrt2() { return {Rat(0), Rat(1), Rat(0), Rat(0)}; }
  static Q23 sqrt3() { return {Rat(0), Rat(0), Rat(1), Rat(0)}; }
  static Q23 sqrt6() { return {Rat(0), Rat(0), Rat(0), Rat(1)}; }

  Q23 operator+(const Q23& o) const { return {a + o.a, b + o.b, c + o.c, d + o.d}; }
  Q23 operator-(const Q23& o) const { return {a - o.a, b - o.b, c - o.c, d - o.d}; }
  Q23 operator-() const { return {-a, -b, -c, -d}; }
  Q23 operator*(const Q23& o) const {
    // (a + b r2 + c r3 + d r6)(a' + b' r2 + c' r3 + d' r6)
    Rat na = a * o.a + Rat(2) * (b * o.b) + Rat(3) * (c * o.c) + Rat(6) * (d * o.d);
    Rat nb = a * o.b + b * o.a + Rat(3) * (c * o.d) + Rat(3) * (d * o.c);
    Rat nc = a * o.c + c * o.a + Rat(2) * (b * o.d) + Rat(2) * (d * o.b);
    Rat nd = a * o.d + d * o.a + b * o.c + c * o.b;
    return {na, nb, nc, nd};
  }
  Q23 scaled(const Rat& s) const { return {a * s, b * s, c * s, d * s}; }

  Q23 conj2() const { return {a, -b, c, -d}; } // sqrt2 -> -sqrt2
  Q23 conj3() const { return {a, b, -c, -d}; } // sqrt3 -> -sqrt3

  bool operator==(const Q23&) const = default;
  bool is_zero() const {
    return a.is_zero() && b.is_zero() && c.is_zero() && d.is_zero();
  }
  bool is_rational() const { return b.is_zero() && c.is_zero() && d.is_zero(); }

  Q23 inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero");
    // Multiply by the three conjugates: the product of all four is rational.
    Q23 c1 = conj2();
    Q23 c2 = conj3();
    Q23 c3 = conj2().conj3();
    Q23 top = c1 * c2 * c3;
    Q23 norm = *this * top;
    if (!norm.is_rational() || norm.a.is_zero()) {
      throw std::logic_error("field norm failed to be a nonzero rational");
    }
    return top.scaled(Rat(norm.a.den, norm.a.num));
  }
  Q23 operator/(const Q23& o) const { return *this * o.inverse(); }

  long double to_ld() const {
    static const long double r2 = std::sqrt(2.0L);
    static const long double r3 = std::sqrt(3.0L);
    return a.to_ld() + b.to_ld() * r2 + c.to_ld() * r3 + d.to_ld() * r2 * r3;
  }

  // Exact sign, guarded: when the numeric value is close to zero the element
  // must be exactly zero, otherwise the margin assertion fails loudly.
  int sign() const {
    if (is_zero()) return 0;
    long double v = to_ld();
    if (std::fabs(v) < 1e-9L) {
      throw std::logic_error("field sign: nonzero element numerically at zero");
    }
    return v > 0 ? 1 : -1;
  }
  bool operator<(const Q23& o) const { return (*this - o).sign() < 0; }

  // Deterministic total order on coefficients (not the numeric order).
  static int cmp_lex(const Q23& x, const Q23& y) {
    auto cr = [](const Rat& p, const Rat& q) {
      if (p.num != q.num) return p.num < q.num ? -1 : 1;
      if (p.den != q.den) return p.den < q.den ? -1 : 1;
      return 0;
    };
    if (int r = cr(x.a, y.a)) return r;
    if (int r = cr(x.b, y.b)) return r;
    if (int r = cr(x.c, y.c)) return r;
    return cr(x.d, y.d);
  }
};

struct Vec2 {
  Q23 x, y;
  Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  Vec2 operator-() const { return {-x, -y}; }
  Vec2 scaled(const Rat& s) const { return {x.scaled(s), y.scaled(s)}; }
  bool operator==(const Vec2&) const = default;
  Q23 dot(const Vec2& o) const { return x * o.x + y * o.y; }
  Q23 cross(const Vec2& o) const { return x * o.y - y * o.x; }
  Q23 norm2() const { return x * x + y * y; }
  static int cmp_lex(const Vec2& u, const Vec2& v) {
    if (int r = Q23::cmp_lex(u.x, v.x)) return r;
    return Q23::cmp_lex(u.y, v.y);
  }
};

struct Vec2Hash {
  static size_t mix(uint64_t h, int64_t v) {
    h ^= static_cast<uint64_t>(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    return h;
  }
  size_t operator()(const Vec2& v) const {
    uint64_t h = 0;
    for (const Rat* r : {&v.x.a, &v.x.b, &v.x.c, &v.x.d, &v.y.a, &v.y.b, &v.y.c, &v.y.d}) {
      h = mix(h, r->num);
      h = mix(h, r->den);
    }
    return h;
  }
};

// Unit vector at k * 15 degrees, exact.
inline Vec2 unit_direction(int k) {
  k = ((k % 24) + 24) % 24;
  // cos of 0..90 degrees in 15-degree steps.
  static const Q23 cos_table[7] = {
      Q23(Rat(1)),
      Q23(Rat(0), Rat(1, 4), Rat(0), Rat(1, 4)), // (sqrt6 + sqrt2)/4
      Q23(Rat(0), Rat(0), Rat(1, 2), Rat(0)),    // sqrt3/2
      Q23(Rat(0), Rat(1, 2), Rat(0), Rat(0)),    // sqrt2/2
      Q23(Rat(1, 2)),
      Q23(Rat(0), Rat(-1, 4), Rat(0), Rat(1, 4)), // (sqrt6 - sqrt2)/4
      Q23(Rat(0)),
  };
  auto cos_k = [&](int kk) { return cos_table[kk]; };
  auto sin_k = [&](int kk) { return cos_table[6 - kk]; };
  if (k <= 6) return {cos_k(k), sin_k(k)};
  if (k <= 12) return {-cos_k(12 - k), sin_k(12 - k)};
  if (k <= 18) return {-cos_k(k - 12), -sin_k(k - 12)};
  return {cos_k(24 - k), -sin_k(24 - k)};
}

} // namespace tiling_oracle
