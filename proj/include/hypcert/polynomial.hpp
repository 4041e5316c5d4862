#pragma once

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hypcert/rational.hpp"

namespace hypcert {

/// Dense univariate polynomial, coefficients stored low degree first.
/// The zero polynomial has an empty coefficient vector and degree -1.
template <class T>
struct Poly {
    std::vector<T> c;

    Poly() = default;
    explicit Poly(std::vector<T> coeffs) : c(std::move(coeffs)) { normalize(); }
    static Poly constant(const T& v) { return v == T(0) ? Poly{} : Poly{{v}}; }

    void normalize() {
        while (!c.empty() && c.back() == T(0)) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    int degree() const { return int(c.size()) - 1; }
    const T& leading() const {
        if (is_zero()) throw std::domain_error("leading coefficient of zero polynomial");
        return c.back();
    }
    T coeff(size_t i) const { return i < c.size() ? c[i] : T(0); }

    T operator()(const T& x) const {
        T acc(0);
        for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    Poly derivative() const {
        if (c.size() <= 1) return {};
        std::vector<T> d(c.size() - 1);
        for (size_t i = 1; i < c.size(); ++i) d[i - 1] = c[i] * T(long(i));
        return Poly(std::move(d));
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<T> r(std::max(a.c.size(), b.c.size()), T(0));
        for (size_t i = 0; i < a.c.size(); ++i) r[i] += a.c[i];
        for (size_t i = 0; i < b.c.size(); ++i) r[i] += b.c[i];
        return Poly(std::move(r));
    }
    friend Poly operator-(const Poly& a, const Poly& b) {
        std::vector<T> r(std::max(a.c.size(), b.c.size()), T(0));
        for (size_t i = 0; i < a.c.size(); ++i) r[i] += a.c[i];
        for (size_t i = 0; i < b.c.size(); ++i) r[i] -= b.c[i];
        return Poly(std::move(r));
    }
    friend Poly operator-(const Poly& a) {
        std::vector<T> r = a.c;
        for (auto& x : r) x = -x;
        return Poly(std::move(r));
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<T> r(a.c.size() + b.c.size() - 1, T(0));
        for (size_t i = 0; i < a.c.size(); ++i)
            for (size_t j = 0; j < b.c.size(); ++j) r[i + j] += a.c[i] * b.c[j];
        return Poly(std::move(r));
    }
    friend Poly operator*(const Poly& a, const T& s) {
        std::vector<T> r = a.c;
        for (auto& x : r) x = x * s;
        return Poly(std::move(r));
    }
    friend bool operator==(const Poly& a, const Poly& b) { return a.c == b.c; }
};

using RatPoly = Poly<Rational>;

/// Euclidean division over a field: a = q*b + r with deg r < deg b.
template <class T>
std::pair<Poly<T>, Poly<T>> poly_divmod(const Poly<T>& a, const Poly<T>& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    Poly<T> r = a;
    if (a.degree() < b.degree()) return {Poly<T>{}, r};
    std::vector<T> q(a.degree() - b.degree() + 1, T(0));
    T inv_lead = T(1) / b.leading();
    while (!r.is_zero() && r.degree() >= b.degree()) {
        int shift = r.degree() - b.degree();
        T factor = r.leading() * inv_lead;
        q[shift] = factor;
        for (size_t i = 0; i < b.c.size(); ++i) r.c[i + shift] -= factor * b.c[i];
        r.normalize();
    }
    return {Poly<T>(std::move(q)), r};
}

template <class T>
Poly<T> poly_mod(const Poly<T>& a, const Poly<T>& b) { return poly_divmod(a, b).second; }

template <class T>
Poly<T> make_monic(const Poly<T>& p) {
    if (p.is_zero()) return p;
    return p * (T(1) / p.leading());
}

// ---------------------------------------------------------------------------
// Integer-primitive machinery (content stripping keeps PRS coefficients small)
// ---------------------------------------------------------------------------

using ZPoly = std::vector<Int>;  // low degree first, no trailing zeros

inline void zp_normalize(ZPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline Int zp_content(const ZPoly& p) {
    Int g = 0;
    for (const auto& a : p) g = boost::multiprecision::gcd(g, a);
    return g;
}

/// Primitive integer image of a rational polynomial, positive leading coefficient
/// optional. Returns {} for the zero polynomial.
inline ZPoly to_primitive(const RatPoly& p, bool positive_lead = false) {
    if (p.is_zero()) return {};
    Int l = 1;
    for (const auto& q : p.c) l = boost::multiprecision::lcm(l, den(q));
    ZPoly z(p.c.size());
    for (size_t i = 0; i < p.c.size(); ++i) z[i] = num(p.c[i]) * (l / den(p.c[i]));
    Int g = zp_content(z);
    if (g > 1)
        for (auto& a : z) a /= g;
    if (positive_lead && z.back() < 0)
        for (auto& a : z) a = -a;
    return z;
}

inline RatPoly from_int(const ZPoly& z) {
    std::vector<Rational> c(z.size());
    for (size_t i = 0; i < z.size(); ++i) c[i] = Rational(z[i]);
    return RatPoly(std::move(c));
}

/// Sign of p at x, evaluated homogeneously: sign of sum p_i num^i den^(deg-i).
inline int zp_sign_at(const ZPoly& p, const Rational& x) {
    if (p.empty()) return 0;
    Int a = num(x), b = den(x);
    std::vector<Int> bpow(p.size());
    bpow[0] = 1;
    for (size_t i = 1; i < p.size(); ++i) bpow[i] = bpow[i - 1] * b;
    Int acc = 0;
    for (size_t i = p.size(); i-- > 0;) acc = acc * a + p[i] * bpow[p.size() - 1 - i];
    return acc.sign();
}

/// Pseudo-remainder scaled by a positive multiplier (sign-faithful).
inline ZPoly zp_srem(const ZPoly& a, const ZPoly& b) {
    ZPoly r = a;
    zp_normalize(r);
    Int lb = b.back();
    int db = int(b.size()) - 1;
    bool neg_mult = false;
    while (int(r.size()) - 1 >= db && !r.empty()) {
        Int lr = r.back();
        int shift = int(r.size()) - 1 - db;
        // r = lb*r - lr*x^shift*b
        ZPoly nr(r.size());
        for (size_t i = 0; i < r.size(); ++i) nr[i] = r[i] * lb;
        for (size_t i = 0; i < b.size(); ++i) nr[i + shift] -= lr * b[i];
        nr.pop_back();
        zp_normalize(nr);
        r = std::move(nr);
        if (lb < 0) neg_mult = !neg_mult;
    }
    if (neg_mult)
        for (auto& x : r) x = -x;
    return r;
}

inline ZPoly zp_primitive_part(ZPoly p) {
    zp_normalize(p);
    Int g = zp_content(p);
    if (g > 1)
        for (auto& a : p) a /= g;
    return p;
}

/// Monic gcd over Q via a primitive PRS on integer images.
inline RatPoly poly_gcd(const RatPoly& a, const RatPoly& b) {
    if (a.is_zero()) return make_monic(b);
    if (b.is_zero()) return make_monic(a);
    ZPoly f = to_primitive(a), g = to_primitive(b);
    if (f.size() < g.size()) std::swap(f, g);
    while (!g.empty()) {
        ZPoly r = zp_primitive_part(zp_srem(f, g));
        f = std::move(g);
        g = std::move(r);
    }
    return make_monic(from_int(f));
}

/// Monic p / gcd(p, p'): same real roots, all simple.
inline RatPoly squarefree_part(const RatPoly& p) {
    if (p.is_zero()) throw std::domain_error("squarefree_part of zero polynomial");
    if (p.degree() == 0) return RatPoly{{Rational(1)}};
    RatPoly g = poly_gcd(p, p.derivative());
    if (g.degree() == 0) return make_monic(p);
    return make_monic(poly_divmod(p, g).first);
}

/// Yun's algorithm: returns f_1, f_2, ..., f_k (monic, pairwise coprime) with
/// p ~ prod f_i^i. Entries may be constant 1.
inline std::vector<RatPoly> squarefree_decomposition(const RatPoly& p) {
    if (p.is_zero()) throw std::domain_error("squarefree decomposition of zero");
    std::vector<RatPoly> out;
    if (p.degree() == 0) return out;
    RatPoly a = make_monic(p);
    RatPoly g = poly_gcd(a, a.derivative());
    if (g.degree() == 0) {
        out.push_back(a);
        return out;
    }
    RatPoly w = poly_divmod(a, g).first;   // product of distinct factors
    RatPoly z = poly_divmod(a.derivative(), g).first - w.derivative();
    while (true) {
        RatPoly f = poly_gcd(w, z);
        out.push_back(make_monic(f));
        w = poly_divmod(w, f).first;
        if (w.degree() == 0) break;
        z = poly_divmod(z, f).first - w.derivative();
    }
    return out;
}

// ---------------------------------------------------------------------------
// Sturm sequences and root isolation
// ---------------------------------------------------------------------------

/// Sturm chain of a square-free rational polynomial, as primitive integer polys.
inline std::vector<ZPoly> sturm_chain(const RatPoly& p) {
    std::vector<ZPoly> chain;
    ZPoly f = to_primitive(p);
    if (f.empty()) return chain;
    chain.push_back(f);
    ZPoly d(f.size() - 1);
    for (size_t i = 1; i < f.size(); ++i) d[i - 1] = f[i] * Int(long(i));
    d = zp_primitive_part(std::move(d));
    if (d.empty()) return chain;
    chain.push_back(d);
    while (true) {
        const ZPoly& s0 = chain[chain.size() - 2];
        const ZPoly& s1 = chain[chain.size() - 1];
        ZPoly r = zp_srem(s0, s1);
        if (r.empty()) break;
        for (auto& x : r) x = -x;
        chain.push_back(zp_primitive_part(std::move(r)));
        if (chain.back().size() == 1) break;
    }
    return chain;
}

inline int sturm_variations_at(const std::vector<ZPoly>& chain, const Rational& x) {
    int var = 0, prev = 0;
    for (const auto& f : chain) {
        int s = zp_sign_at(f, x);
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++var;
        prev = s;
    }
    return var;
}

inline int sturm_variations_at_neg_inf(const std::vector<ZPoly>& chain) {
    int var = 0, prev = 0;
    for (const auto& f : chain) {
        int s = f.back().sign();
        if ((f.size() - 1) % 2 == 1) s = -s;
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++var;
        prev = s;
    }
    return var;
}

inline int sturm_variations_at_pos_inf(const std::vector<ZPoly>& chain) {
    int var = 0, prev = 0;
    for (const auto& f : chain) {
        int s = f.back().sign();
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++var;
        prev = s;
    }
    return var;
}

/// Number of real roots of the chain's square-free base in (a, b], a < b.
inline int sturm_count(const std::vector<ZPoly>& chain, const Rational& a, const Rational& b) {
    return sturm_variations_at(chain, a) - sturm_variations_at(chain, b);
}

/// Power-of-two Cauchy bound: all real roots lie in (-B, B).
inline Rational root_bound_pow2(const RatPoly& p) {
    ZPoly z = to_primitive(p);
    if (z.size() <= 1) return Rational(1);
    Int lead = boost::multiprecision::abs(z.back());
    Int mx = 0;
    for (size_t i = 0; i + 1 < z.size(); ++i) mx = std::max(mx, Int(boost::multiprecision::abs(z[i])));
    Rational bound = Rational(1) + Rational(mx, lead);
    Rational b(2);
    while (b < bound) b *= 2;
    return b;
}

/// Isolating interval: either lo == hi (exact rational root) or p(lo)*p(hi) < 0.
struct RootInterval {
    Rational lo, hi;
    bool exact() const { return lo == hi; }
};

namespace detail {

inline void isolate_rec(const std::vector<ZPoly>& chain, const ZPoly& zp,
                        const Rational& a, const Rational& b, int va, int vb,
                        std::vector<RootInterval>& out) {
    int count = va - vb;
    if (count <= 0) return;
    if (count == 1 && zp_sign_at(zp, a) * zp_sign_at(zp, b) < 0) {
        out.push_back({a, b});
        return;
    }
    Rational mid = (a + b) / 2;
    if (zp_sign_at(zp, mid) == 0) {
        out.push_back({mid, mid});
        // the exact root sits at the midpoint; shrink flanks until they
        // enclose no other root, then recurse on the outside parts
        Rational eps = (b - a) / 4;
        Rational ml, mr;
        while (true) {
            ml = mid - eps;
            mr = mid + eps;
            while (zp_sign_at(zp, ml) == 0) ml = (ml + mid) / 2;
            while (zp_sign_at(zp, mr) == 0) mr = (mr + mid) / 2;
            if (sturm_count(chain, ml, mr) == 1) break;
            eps /= 2;
        }
        isolate_rec(chain, zp, a, ml, va, sturm_variations_at(chain, ml), out);
        isolate_rec(chain, zp, mr, b, sturm_variations_at(chain, mr), vb, out);
        return;
    }
    int vm = sturm_variations_at(chain, mid);
    isolate_rec(chain, zp, a, mid, va, vm, out);
    isolate_rec(chain, zp, mid, b, vm, vb, out);
}

}  // namespace detail

/// Disjoint isolating intervals for all real roots of a square-free polynomial,
/// in increasing root order.
inline std::vector<RootInterval> isolate_squarefree(const RatPoly& p) {
    std::vector<RootInterval> out;
    if (p.is_zero()) throw std::domain_error("isolation of zero polynomial");
    if (p.degree() == 0) return out;
    auto chain = sturm_chain(p);
    ZPoly zp = to_primitive(p);
    Rational b = root_bound_pow2(p);
    detail::isolate_rec(chain, zp, -b, b, sturm_variations_at(chain, -b),
                        sturm_variations_at(chain, b), out);
    std::sort(out.begin(), out.end(),
              [](const RootInterval& x, const RootInterval& y) { return x.lo < y.lo; });
    return out;
}

/// p(x^2) — used to build square-root defining polynomials.
inline RatPoly compose_x_squared(const RatPoly& p) {
    if (p.is_zero()) return {};
    std::vector<Rational> c(2 * p.c.size() - 1, Rational(0));
    for (size_t i = 0; i < p.c.size(); ++i) c[2 * i] = p.c[i];
    return RatPoly(std::move(c));
}

/// p(x + s)
inline RatPoly shift_poly(const RatPoly& p, const Rational& s) {
    RatPoly result;
    RatPoly binom{{Rational(1)}};
    RatPoly lin{{s, Rational(1)}};
    for (size_t i = 0; i < p.c.size(); ++i) {
        result = result + binom * p.c[i];
        binom = binom * lin;
    }
    return result;
}

/// p(s*x), s != 0
inline RatPoly scale_poly(const RatPoly& p, const Rational& s) {
    std::vector<Rational> c = p.c;
    Rational f(1);
    for (size_t i = 0; i < c.size(); ++i) {
        c[i] *= f;
        f *= s;
    }
    return RatPoly(std::move(c));
}

/// x^deg * p(1/x), for root reciprocals; requires p(0) != 0.
inline RatPoly reverse_poly(const RatPoly& p) {
    std::vector<Rational> c(p.c.rbegin(), p.c.rend());
    return RatPoly(std::move(c));
}

}  // namespace hypcert
