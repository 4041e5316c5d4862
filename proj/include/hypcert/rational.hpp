#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace hypcert {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Int num(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Int den(const Rational& q) { return boost::multiprecision::denominator(q); }

inline int sign(const Rational& q) { return q.sign(); }
inline int sign(const Int& z) { return z.sign(); }

inline Rational rat_abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

/// 2^k as a Rational, k may be negative.
inline Rational pow2(long k) {
    Int one = 1;
    if (k >= 0) return Rational(one << k);
    return Rational(one, one << (-k));
}

inline Int floor_div(const Int& a, const Int& b) {
    Int q = a / b, r = a % b;
    if (r != 0 && ((r < 0) != (b < 0))) --q;
    return q;
}

inline Int rat_floor(const Rational& q) { return floor_div(num(q), den(q)); }
inline Int rat_ceil(const Rational& q) { return -floor_div(-num(q), den(q)); }

/// Nearest integer, ties to even.
inline Int round_half_even(const Rational& q) {
    Int f = rat_floor(q);
    Rational frac = q - Rational(f);
    if (frac < Rational(1, 2)) return f;
    if (frac > Rational(1, 2)) return f + 1;
    return (f % 2 == 0) ? f : f + 1;
}

/// Round q to a dyadic with `bits` fractional bits, ties to even.
inline Rational round_to_dyadic(const Rational& q, unsigned bits) {
    Int scaled = round_half_even(q * pow2(bits));
    return Rational(scaled) * pow2(-long(bits));
}

inline bool is_dyadic(const Rational& q) {
    Int d = den(q);
    return (d & (d - 1)) == 0;
}

/// Smallest multiple of 2^-bits that is >= q.
inline Rational ceil_to_dyadic(const Rational& q, unsigned bits) {
    Int scaled = rat_ceil(q * pow2(bits));
    return Rational(scaled) * pow2(-long(bits));
}

inline Int isqrt_floor(const Int& n) {
    if (n < 0) throw std::domain_error("isqrt of negative");
    return boost::multiprecision::sqrt(n);
}

/// Rational u with u >= sqrt(q), relative slack about 2^-prec.
inline Rational sqrt_upper_bound(const Rational& q, unsigned prec = 16) {
    if (q < 0) throw std::domain_error("sqrt_upper_bound of negative");
    if (q == 0) return Rational(0);
    // sqrt(a/b) = sqrt(a*b)/b <= (floor(sqrt(a*b*4^prec)) + 1) / (b*2^prec)
    Int a = num(q), b = den(q);
    Int s = isqrt_floor(a * b << (2 * prec)) + 1;
    return Rational(s, b << prec);
}

/// Rational l with 0 <= l <= sqrt(q).
inline Rational sqrt_lower_bound(const Rational& q, unsigned prec = 16) {
    if (q < 0) throw std::domain_error("sqrt_lower_bound of negative");
    if (q == 0) return Rational(0);
    Int a = num(q), b = den(q);
    Int s = isqrt_floor(a * b << (2 * prec));
    return Rational(s, b << prec);
}

/// Exact rational square root if q is a perfect square of a rational.
inline std::optional<Rational> exact_sqrt(const Rational& q) {
    if (q < 0) return std::nullopt;
    Int a = num(q), b = den(q);
    Int sa = isqrt_floor(a), sb = isqrt_floor(b);
    if (sa * sa == a && sb * sb == b) return Rational(sa, sb);
    return std::nullopt;
}

/// Parse "p", "p/q" (q > 0 after normalization). Throws std::invalid_argument.
inline Rational parse_rational(std::string_view s) {
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    auto slash = s.find('/');
    try {
        if (slash == std::string_view::npos) return Rational(Int(std::string(s)));
        Int p{std::string(s.substr(0, slash))};
        Int q{std::string(s.substr(slash + 1))};
        if (q == 0) throw std::invalid_argument("zero denominator");
        return Rational(p, q);
    } catch (const std::runtime_error& e) {
        throw std::invalid_argument("bad rational literal '" + std::string(s) + "': " + e.what());
    }
}

inline std::string to_string(const Rational& q) {
    if (den(q) == 1) return num(q).str();
    return num(q).str() + "/" + den(q).str();
}

/// Fixed-point decimal string with `digits` places, value within 10^-digits of q.
inline std::string decimal_string(const Rational& q, unsigned digits) {
    Int scale = 1;
    for (unsigned i = 0; i < digits; ++i) scale *= 10;
    Int r = round_half_even(q * Rational(scale));
    bool neg = r < 0;
    Int ar = neg ? Int(-r) : r;
    std::string ds = ar.str();
    if (ds.size() <= digits) ds.insert(0, digits + 1 - ds.size(), '0');
    if (digits > 0) ds.insert(ds.size() - digits, ".");
    return (neg ? "-" : "") + ds;
}

}  // namespace hypcert
