#pragma once

#include <stdexcept>

#include "hypcert/polynomial.hpp"
#include "hypcert/rational.hpp"

namespace hypcert {

/// Closed interval with rational endpoints.
struct QInterval {
    Rational lo, hi;

    QInterval() : lo(0), hi(0) {}
    QInterval(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h)) {
        if (lo > hi) throw std::logic_error("inverted interval");
    }
    static QInterval point(const Rational& v) { return {v, v}; }

    Rational width() const { return hi - lo; }
    Rational mid() const { return (lo + hi) / 2; }
    bool contains_zero() const { return lo <= 0 && 0 <= hi; }
    bool contains(const Rational& v) const { return lo <= v && v <= hi; }
    bool disjoint(const QInterval& o) const { return hi < o.lo || o.hi < lo; }

    friend QInterval operator+(const QInterval& a, const QInterval& b) {
        return {a.lo + b.lo, a.hi + b.hi};
    }
    friend QInterval operator-(const QInterval& a, const QInterval& b) {
        return {a.lo - b.hi, a.hi - b.lo};
    }
    friend QInterval operator-(const QInterval& a) { return {-a.hi, -a.lo}; }
    friend QInterval operator*(const QInterval& a, const QInterval& b) {
        Rational p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
        return {std::min(std::min(p1, p2), std::min(p3, p4)),
                std::max(std::max(p1, p2), std::max(p3, p4))};
    }
    /// Reciprocal; requires 0 outside the interval.
    QInterval recip() const {
        if (contains_zero()) throw std::domain_error("interval reciprocal spans zero");
        return {Rational(1) / hi, Rational(1) / lo};
    }
    /// Enclosure of sqrt; requires lo >= 0.
    QInterval sqrt_enclosure(unsigned prec = 24) const {
        return {sqrt_lower_bound(lo, prec), sqrt_upper_bound(hi, prec)};
    }
};

/// Interval Horner evaluation of p over I.
inline QInterval interval_eval(const RatPoly& p, const QInterval& I) {
    QInterval acc = QInterval::point(Rational(0));
    for (auto it = p.c.rbegin(); it != p.c.rend(); ++it)
        acc = acc * I + QInterval::point(*it);
    return acc;
}

}  // namespace hypcert
