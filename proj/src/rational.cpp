#include "ahs/rational.hpp"

#include "ahs/errors.hpp"

namespace ahs {

std::string to_fraction(const Rational& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string to_short(const Rational& q) { return q.get_str(); }

Rational parse_rational(const std::string& s) {
    if (s.empty()) throw SchemaError("empty rational");
    Rational q;
    if (q.set_str(s, 10) != 0) throw SchemaError("not a rational: " + s);
    if (q.get_den() == 0) throw SchemaError("zero denominator: " + s);
    q.canonicalize();
    return q;
}

Rational make_q(long num, long den) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

bool is_zero(const Vec& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

Vec add(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw DimensionError("vector size mismatch");
    Vec r(a);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

Vec sub(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw DimensionError("vector size mismatch");
    Vec r(a);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}

Vec scale(const Rational& c, const Vec& a) {
    Vec r(a);
    for (auto& x : r) x *= c;
    return r;
}

void axpy(const Rational& c, const Vec& x, Vec& y) {
    if (x.size() != y.size()) throw DimensionError("vector size mismatch");
    if (c == 0) return;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] != 0) y[i] += c * x[i];
}

}  // namespace ahs
