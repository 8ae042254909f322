#include "strata/rational.hpp"

#include <cctype>

#include "strata/error.hpp"

namespace strata {

Rat make_rat(long num, long den) {
  if (den == 0) throw Error(ErrorKind::ParseError, "zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

Rat make_rat(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw Error(ErrorKind::ParseError, "zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

namespace {

bool valid_integer_text(std::string_view s, bool allow_sign) {
  if (s.empty()) return false;
  std::size_t i = 0;
  if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

Rat parse_rat(std::string_view text) {
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!valid_integer_text(num, true) || !valid_integer_text(den, false)) {
    throw Error(ErrorKind::ParseError, "not a rational: '" + std::string(text) + "'");
  }
  std::string n(num);
  if (n[0] == '+') n.erase(0, 1);
  return make_rat(mpz_class(n), mpz_class(std::string(den)));
}

std::string to_string(const Rat& value) { return value.get_str(); }

std::string to_string(std::span<const Rat> v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += v[i].get_str();
  }
  return out + ")";
}

bool is_integer(const Rat& value) { return value.get_den() == 1; }

RatVec make_vec(std::initializer_list<long> values) {
  RatVec v;
  v.reserve(values.size());
  for (long x : values) v.emplace_back(x);
  return v;
}

Rat dot(std::span<const Rat> a, std::span<const Rat> b) {
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) != 0 && sgn(b[i]) != 0) s += a[i] * b[i];
  }
  return s;
}

RatVec add(std::span<const Rat> a, std::span<const Rat> b) {
  RatVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

RatVec sub(std::span<const Rat> a, std::span<const Rat> b) {
  RatVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

RatVec scale(std::span<const Rat> a, const Rat& factor) {
  RatVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * factor;
  return r;
}

bool is_zero(std::span<const Rat> v) {
  for (const auto& x : v) {
    if (sgn(x) != 0) return false;
  }
  return true;
}

int compare(std::span<const Rat> a, std::span<const Rat> b) {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    const int c = cmp(a[i], b[i]);
    if (c != 0) return c < 0 ? -1 : 1;
  }
  if (a.size() == b.size()) return 0;
  return a.size() < b.size() ? -1 : 1;
}

Rat primitive_factor(std::span<const Rat> v) {
  mpz_class den_lcm = 1;
  for (const auto& x : v) {
    if (sgn(x) != 0) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), x.get_den_mpz_t());
  }
  mpz_class g = 0;
  for (const auto& x : v) {
    if (sgn(x) == 0) continue;
    mpz_class scaled = x.get_num() * (den_lcm / x.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), scaled.get_mpz_t());
  }
  if (g == 0) return Rat(1);
  return make_rat(den_lcm, g);
}

RatVec primitive_integer_multiple(std::span<const Rat> v) { return scale(v, primitive_factor(v)); }

RatVec centroid(std::span<const RatVec> points) {
  RatVec c(points.front().size());
  for (const auto& p : points) {
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += p[i];
  }
  const Rat n(static_cast<long>(points.size()));
  for (auto& x : c) x /= n;
  return c;
}

double to_double(const Rat& value) { return value.get_d(); }

}  // namespace strata
