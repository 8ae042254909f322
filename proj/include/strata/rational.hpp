#ifndef STRATA_RATIONAL_HPP
#define STRATA_RATIONAL_HPP

#include <gmpxx.h>

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace strata {

// GMP keeps mpq_class canonical after every arithmetic operation; values
// built from a raw numerator/denominator pair go through make_rat.
using Rat = mpq_class;
using RatVec = std::vector<Rat>;

Rat make_rat(long num, long den = 1);
Rat make_rat(const mpz_class& num, const mpz_class& den);

/// Parses "p", "-p" or "p/q"; throws Error(ParseError) otherwise.
Rat parse_rat(std::string_view text);

/// "p" for integers, "p/q" otherwise.
std::string to_string(const Rat& value);
std::string to_string(std::span<const Rat> v);

bool is_integer(const Rat& value);

RatVec make_vec(std::initializer_list<long> values);

Rat dot(std::span<const Rat> a, std::span<const Rat> b);
RatVec add(std::span<const Rat> a, std::span<const Rat> b);
RatVec sub(std::span<const Rat> a, std::span<const Rat> b);
RatVec scale(std::span<const Rat> a, const Rat& factor);
bool is_zero(std::span<const Rat> v);

/// Three-way lexicographic comparison (-1, 0, 1).
int compare(std::span<const Rat> a, std::span<const Rat> b);

/// Positive factor f such that f*v has coprime integer entries (1 for v = 0).
Rat primitive_factor(std::span<const Rat> v);
RatVec primitive_integer_multiple(std::span<const Rat> v);

RatVec centroid(std::span<const RatVec> points);

double to_double(const Rat& value);

}  // namespace strata

#endif
