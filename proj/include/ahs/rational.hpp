#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace ahs {

using Rational = mpq_class;
using Vec = std::vector<Rational>;

// always "num/den", also for integers
std::string to_fraction(const Rational& q);
// "1/6", "-1", "0"
std::string to_short(const Rational& q);
// accepts "a", "a/b", "-a/b"
Rational parse_rational(const std::string& s);

Rational make_q(long num, long den = 1);

bool is_zero(const Vec& v);
Vec add(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);
Vec scale(const Rational& c, const Vec& a);
void axpy(const Rational& c, const Vec& x, Vec& y);  // y += c x

}  // namespace ahs
