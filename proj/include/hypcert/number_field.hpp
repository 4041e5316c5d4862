#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "hypcert/polynomial.hpp"
#include "hypcert/real_algebraic.hpp"

namespace hypcert {

/// Arithmetic context for Q[t]/(modulus) localized at a fixed real root.
/// The modulus starts as the root's defining polynomial (square-free, not
/// necessarily irreducible); zero tests and inversions may shrink it to the
/// factor actually vanishing at the root (dynamic evaluation). Elements are
/// reduced polynomial representatives.
class NumberField {
  public:
    using Elem = RatPoly;

    explicit NumberField(const RealAlgebraic& alpha)
        : modulus_(make_monic(alpha.minpoly())), root_(alpha) {}

    const RatPoly& modulus() const { return modulus_; }
    const RealAlgebraic& root() const { return root_; }
    int dim() const { return modulus_.degree(); }

    Elem reduce(const RatPoly& p) const { return poly_mod(p, modulus_); }
    Elem from_rational(const Rational& q) const { return RatPoly::constant(q); }
    Elem generator() const { return reduce(RatPoly{{Rational(0), Rational(1)}}); }

    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem mul(const Elem& a, const Elem& b) const { return reduce(a * b); }

    /// Exact sign of the element's value at the root.
    int sign(const Elem& a) const { return root_.sign_at(a); }
    bool is_zero(const Elem& a) const { return sign(a) == 0; }

    /// Multiplicative inverse of a nonzero element. May shrink the modulus
    /// when the representative shares a factor with it.
    Elem inverse(const Elem& a_in) {
        Elem a = reduce(a_in);
        while (true) {
            if (a.is_zero()) throw std::domain_error("inverse of zero in number field");
            auto [g, u] = half_xgcd(a, modulus_);
            if (g.degree() == 0) return reduce(u * (Rational(1) / g.c[0]));
            // g divides both a and the modulus; decide which side the root is on
            if (root_.sign_at(g) == 0)
                throw std::domain_error("inverse of zero in number field");
            modulus_ = make_monic(poly_divmod(modulus_, g).first);
            a = reduce(a);
        }
    }

    Elem div(const Elem& a, const Elem& b) { return mul(a, inverse(b)); }

    /// Monic rational annihilator of the element's value: the characteristic
    /// polynomial of multiplication by the element on Q[t]/(modulus).
    RatPoly annihilator(const Elem& a_in) const {
        Elem a = reduce(a_in);
        int d = dim();
        detail::RatMat M(d);
        Elem power = a;
        // columns: a * t^j mod modulus
        for (int j = 0; j < d; ++j) {
            Elem col = j == 0 ? a : power;
            for (int i = 0; i < d; ++i) M.at(i, j) = col.coeff(size_t(i));
            if (j + 1 < d) {
                // multiply by t
                std::vector<Rational> shifted(col.c.size() + 1, Rational(0));
                for (size_t i = 0; i < col.c.size(); ++i) shifted[i + 1] = col.c[i];
                power = reduce(RatPoly(std::move(shifted)));
            }
        }
        return detail::charpoly_newton_rat(M);
    }

    /// The element's value as a RealAlgebraic.
    RealAlgebraic value(const Elem& a_in) const {
        Elem a = reduce(a_in);
        if (a.is_zero()) return RealAlgebraic(0);
        if (a.degree() == 0) return RealAlgebraic(a.c[0]);
        if (root_.is_rational()) return RealAlgebraic(a(root_.rational_value()));
        RatPoly ann = annihilator(a);
        auto enclose = [this, a](int prec) {
            return interval_eval(a, root_.refine(pow2(-(2 + 2 * prec))));
        };
        return RealAlgebraic::select_root(ann, enclose);
    }

    /// Value of numer(root)/sqrt(norm2(root)); norm2 must be positive at the
    /// root. This is how orthonormalized eigenvector entries are produced
    /// without leaving a small extension.
    RealAlgebraic sqrt_quotient(const Elem& numer, const Elem& norm2) {
        int sg = sign(numer);
        if (sg == 0) return RealAlgebraic(0);
        if (sign(norm2) <= 0) throw std::domain_error("sqrt_quotient needs positive norm");
        // r = numer^2 / norm2 in the field; value = sign(numer) * sqrt(r)
        Elem r = mul(mul(numer, numer), inverse(norm2));
        RealAlgebraic rv = value(r);
        if (rv.is_rational()) {
            if (auto s = exact_sqrt(rv.rational_value()))
                return RealAlgebraic(sg > 0 ? *s : -*s);
        }
        RatPoly cand = compose_x_squared(rv.minpoly());
        auto enclose = [this, r, sg](int prec) {
            QInterval I = interval_eval(r, root_.refine(pow2(-(2 + 2 * prec))));
            if (I.lo < 0) I.lo = Rational(0);
            QInterval s = I.sqrt_enclosure(unsigned(8 + 2 * prec));
            return sg > 0 ? s : -s;
        };
        return RealAlgebraic::select_root(cand, enclose);
    }

  private:
    RatPoly modulus_;
    RealAlgebraic root_;

    /// Extended Euclid returning (g, u) with u*a = g (mod m), g = gcd(a, m).
    static std::pair<RatPoly, RatPoly> half_xgcd(const RatPoly& a, const RatPoly& m) {
        RatPoly r0 = m, r1 = a;
        RatPoly u0{}, u1{{Rational(1)}};
        while (!r1.is_zero()) {
            auto [q, r2] = poly_divmod(r0, r1);
            RatPoly u2 = u0 - q * u1;
            r0 = std::move(r1);
            r1 = std::move(r2);
            u0 = std::move(u1);
            u1 = std::move(u2);
        }
        return {r0, u0};
    }
};

}  // namespace hypcert
