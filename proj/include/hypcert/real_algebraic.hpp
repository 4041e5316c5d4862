#pragma once

#include <compare>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hypcert/interval.hpp"
#include "hypcert/polynomial.hpp"
#include "hypcert/rational.hpp"

namespace hypcert {

namespace detail {

/// Small dense rational matrix, just enough for multiplication-operator
/// characteristic polynomials.
struct RatMat {
    int n = 0;
    std::vector<Rational> a;  // row major

    RatMat() = default;
    explicit RatMat(int dim) : n(dim), a(size_t(dim) * dim, Rational(0)) {}
    Rational& at(int i, int j) { return a[size_t(i) * n + j]; }
    const Rational& at(int i, int j) const { return a[size_t(i) * n + j]; }
    static RatMat identity(int dim) {
        RatMat m(dim);
        for (int i = 0; i < dim; ++i) m.at(i, i) = 1;
        return m;
    }
    friend RatMat operator+(const RatMat& x, const RatMat& y) {
        RatMat r(x.n);
        for (size_t k = 0; k < x.a.size(); ++k) r.a[k] = x.a[k] + y.a[k];
        return r;
    }
    friend RatMat operator-(const RatMat& x, const RatMat& y) {
        RatMat r(x.n);
        for (size_t k = 0; k < x.a.size(); ++k) r.a[k] = x.a[k] - y.a[k];
        return r;
    }
    friend RatMat operator*(const RatMat& x, const RatMat& y) {
        RatMat r(x.n);
        for (int i = 0; i < x.n; ++i)
            for (int k = 0; k < x.n; ++k) {
                const Rational& v = x.at(i, k);
                if (v == 0) continue;
                for (int j = 0; j < x.n; ++j) r.at(i, j) += v * y.at(k, j);
            }
        return r;
    }
};

/// Characteristic polynomial (monic, degree n) via Newton's identities.
/// Traces of powers are computed on a common-denominator integer image.
inline RatPoly charpoly_newton_rat(const RatMat& M) {
    int n = M.n;
    if (n == 0) return RatPoly{{Rational(1)}};
    Int D = 1;
    for (const auto& q : M.a) D = boost::multiprecision::lcm(D, den(q));
    std::vector<Int> Z(M.a.size());
    for (size_t k = 0; k < M.a.size(); ++k) Z[k] = num(M.a[k]) * (D / den(M.a[k]));

    auto imul = [n](const std::vector<Int>& x, const std::vector<Int>& y) {
        std::vector<Int> r(x.size(), Int(0));
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) {
                const Int& v = x[size_t(i) * n + k];
                if (v == 0) continue;
                for (int j = 0; j < n; ++j) r[size_t(i) * n + j] += v * y[size_t(k) * n + j];
            }
        return r;
    };
    auto itrace = [n](const std::vector<Int>& x) {
        Int t = 0;
        for (int i = 0; i < n; ++i) t += x[size_t(i) * n + i];
        return t;
    };

    std::vector<Rational> s(n + 1);  // power sums s_k = tr(M^k)
    std::vector<Int> P = Z;
    Rational Dk(D);
    for (int k = 1; k <= n; ++k) {
        s[k] = Rational(itrace(P)) / Dk;
        if (k < n) {
            P = imul(P, Z);
            Dk *= D;
        }
    }
    // p_k = (s_k - sum_{j<k} p_j s_{k-j}) / k ; ch = z^n - p_1 z^{n-1} - ... - p_n
    std::vector<Rational> p(n + 1);
    for (int k = 1; k <= n; ++k) {
        Rational acc = s[k];
        for (int j = 1; j < k; ++j) acc -= p[j] * s[k - j];
        p[k] = acc / k;
    }
    std::vector<Rational> c(n + 1);
    c[n] = 1;
    for (int k = 1; k <= n; ++k) c[n - k] = -p[k];
    return RatPoly(std::move(c));
}

/// Companion matrix of the monic image of p.
inline RatMat companion(const RatPoly& p) {
    int d = p.degree();
    RatMat C(d);
    Rational lead = p.leading();
    for (int i = 1; i < d; ++i) C.at(i, i - 1) = 1;
    for (int i = 0; i < d; ++i) C.at(i, d - 1) = -p.c[i] / lead;
    return C;
}

/// Kronecker product.
inline RatMat kron(const RatMat& A, const RatMat& B) {
    RatMat R(A.n * B.n);
    for (int i = 0; i < A.n; ++i)
        for (int j = 0; j < A.n; ++j) {
            if (A.at(i, j) == 0) continue;
            for (int k = 0; k < B.n; ++k)
                for (int l = 0; l < B.n; ++l)
                    R.at(i * B.n + k, j * B.n + l) = A.at(i, j) * B.at(k, l);
        }
    return R;
}

}  // namespace detail

/// A real algebraic number: square-free defining polynomial with integer
/// primitive coefficients and positive leading coefficient, 1-based index
/// among the real roots, and an isolating interval. Rational values are kept
/// in the canonical degree-1 form. Values are immutable.
class RealAlgebraic {
    struct raw_t {};
    explicit RealAlgebraic(raw_t) {}

  public:
    RealAlgebraic() { assign_rational(Rational(0)); }
    RealAlgebraic(int v) { assign_rational(Rational(v)); }
    RealAlgebraic(long v) { assign_rational(Rational(v)); }
    RealAlgebraic(const Rational& v) { assign_rational(v); }

    static RealAlgebraic from_rational(const Rational& v) {
        RealAlgebraic x{raw_t{}};
        x.assign_rational(v);
        return x;
    }

    /// The k-th smallest real root (1-based) of the square-free part of p.
    static RealAlgebraic root_of(const RatPoly& p, int k);

    /// All real roots of p (square-free part), ascending, with multiplicities in p.
    struct Isolation {
        std::vector<RealAlgebraic> roots;
        std::vector<int> multiplicities;
    };
    static Isolation isolate_roots(const RatPoly& p);

    const RatPoly& minpoly() const { return minpoly_; }
    int root_index() const { return index_; }
    int degree() const { return minpoly_.degree(); }
    QInterval interval() const { return {lo_, hi_}; }

    bool is_rational() const { return minpoly_.degree() == 1; }
    Rational rational_value() const {
        if (!is_rational()) throw std::domain_error("not a rational value");
        return -minpoly_.c[0] / minpoly_.c[1];
    }

    /// Isolating interval of width <= w; does not mutate the value.
    QInterval refine(const Rational& w) const {
        if (w <= 0) throw std::domain_error("refine width must be positive");
        if (is_rational()) return QInterval::point(rational_value());
        Rational lo = lo_, hi = hi_;
        int slo = zp_sign_at(zp_, lo);
        while (hi - lo > w) {
            Rational mid = (lo + hi) / 2;
            int sm = zp_sign_at(zp_, mid);
            if (sm == 0) return QInterval::point(mid);  // landed on the root
            if (sm == slo) lo = mid; else hi = mid;
        }
        return {lo, hi};
    }

    int sgn() const {
        if (is_rational()) return sign(rational_value());
        if (zp_sign_at(zp_, Rational(0)) == 0 && lo_ <= 0 && 0 <= hi_) return 0;
        QInterval I = interval();
        Rational w = I.width();
        while (I.contains_zero()) {
            w /= 2;
            I = refine(w);
            if (I.lo == I.hi) return sign(I.lo);
        }
        return I.lo > 0 ? 1 : -1;
    }

    /// Sign of g(*this), exact. Decides zero through gcd splitting.
    int sign_at(const RatPoly& g) const;

    friend RealAlgebraic operator+(const RealAlgebraic& x, const RealAlgebraic& y);
    friend RealAlgebraic operator-(const RealAlgebraic& x, const RealAlgebraic& y);
    friend RealAlgebraic operator*(const RealAlgebraic& x, const RealAlgebraic& y);
    friend RealAlgebraic operator/(const RealAlgebraic& x, const RealAlgebraic& y);
    RealAlgebraic operator-() const;

    RealAlgebraic& operator+=(const RealAlgebraic& o) { return *this = *this + o; }
    RealAlgebraic& operator-=(const RealAlgebraic& o) { return *this = *this - o; }
    RealAlgebraic& operator*=(const RealAlgebraic& o) { return *this = *this * o; }
    RealAlgebraic& operator/=(const RealAlgebraic& o) { return *this = *this / o; }

    friend bool operator==(const RealAlgebraic& x, const RealAlgebraic& y) {
        return alg_compare(x, y) == 0;
    }
    friend std::strong_ordering operator<=>(const RealAlgebraic& x, const RealAlgebraic& y) {
        int c = alg_compare(x, y);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    /// -1/0/+1 comparison, exact.
    friend int alg_compare(const RealAlgebraic& x, const RealAlgebraic& y);

    /// Construct a value known to be a root of `annihilator` (not necessarily
    /// square-free), located by a shrinking rational enclosure. `enclose(k)`
    /// must return nested intervals converging to the value.
    static RealAlgebraic select_root(const RatPoly& annihilator,
                                     const std::function<QInterval(int)>& enclose);

    std::string decimal(unsigned digits) const {
        unsigned bits = (10 * digits) / 3 + 6;  // ~ digits * log2(10), plus slack
        QInterval I = refine(pow2(-long(bits)));
        return decimal_string(I.mid(), digits);
    }

  private:
    RatPoly minpoly_;
    ZPoly zp_;
    int index_ = 1;
    Rational lo_, hi_;

    void assign_rational(const Rational& v) {
        minpoly_ = RatPoly{{-v, Rational(1)}};
        zp_ = to_primitive(minpoly_, true);
        index_ = 1;
        lo_ = hi_ = v;
    }

    static RealAlgebraic make_from_isolating(const RatPoly& sqfree, const QInterval& iv);
    static std::optional<Rational> find_rational_root(const ZPoly& zp, const QInterval& iv);
    friend struct AlgebraicOps;
};

inline int alg_sign(const RealAlgebraic& x) { return x.sgn(); }

RealAlgebraic alg_sqrt(const RealAlgebraic& x);

// ---------------------------------------------------------------------------
// implementation
// ---------------------------------------------------------------------------

namespace detail {

/// Bounded rational-root finder: looks for a root p/q of zp inside iv using
/// trial divisor enumeration. Gives up (nullopt) when coefficients are huge;
/// that only costs us the canonical degree-1 form, never correctness.
inline std::optional<Rational> bounded_rational_root(const ZPoly& zp_in, const QInterval& iv) {
    if (zp_in.size() < 2 || zp_in.size() > 33) return std::nullopt;
    ZPoly zp = zp_in;
    if (zp.front() == 0) {
        if (iv.contains(Rational(0))) return Rational(0);
        while (zp.size() > 1 && zp.front() == 0) zp.erase(zp.begin());
        if (zp.size() < 2) return std::nullopt;
    }
    Int c0 = zp.front(), cd = zp.back();
    const Int limit("1000000000000000000000000");
    if (boost::multiprecision::abs(c0) > limit || boost::multiprecision::abs(cd) > limit)
        return std::nullopt;
    auto divisors = [](Int v) {
        v = boost::multiprecision::abs(v);
        std::vector<Int> ds;
        for (Int d = 1; d * d <= v && d < 100000; ++d)
            if (v % d == 0) {
                ds.push_back(d);
                ds.push_back(v / d);
            }
        return ds;
    };
    auto dn = divisors(c0), dd = divisors(cd);
    for (const Int& r : dn)
        for (const Int& s : dd) {
            for (int sgn : {1, -1}) {
                Rational cand(sgn * r, s);
                if (!iv.contains(cand)) continue;
                if (zp_sign_at(zp, cand) == 0) return cand;
            }
        }
    return std::nullopt;
}

}  // namespace detail

inline std::optional<Rational> RealAlgebraic::find_rational_root(const ZPoly& zp,
                                                                 const QInterval& iv) {
    return detail::bounded_rational_root(zp, iv);
}

inline RealAlgebraic RealAlgebraic::make_from_isolating(const RatPoly& sqfree,
                                                        const QInterval& iv) {
    RealAlgebraic x{raw_t{}};
    if (sqfree.degree() == 1) {
        return from_rational(-sqfree.c[0] / sqfree.c[1]);
    }
    ZPoly zp = to_primitive(sqfree, true);
    if (iv.lo == iv.hi) return from_rational(iv.lo);
    if (auto r = find_rational_root(zp, iv)) return from_rational(*r);
    x.minpoly_ = from_int(zp);
    x.zp_ = std::move(zp);
    x.lo_ = iv.lo;
    x.hi_ = iv.hi;
    // index among the real roots: count roots to the left, then ours
    auto chain = sturm_chain(x.minpoly_);
    Rational B = root_bound_pow2(x.minpoly_);
    x.index_ = sturm_count(chain, -B, x.hi_);
    return x;
}

inline RealAlgebraic RealAlgebraic::root_of(const RatPoly& p, int k) {
    RatPoly sf = squarefree_part(p);
    auto ivs = isolate_squarefree(sf);
    if (k < 1 || size_t(k) > ivs.size())
        throw std::domain_error("root index out of range");
    return make_from_isolating(sf, {ivs[size_t(k) - 1].lo, ivs[size_t(k) - 1].hi});
}

inline RealAlgebraic::Isolation RealAlgebraic::isolate_roots(const RatPoly& p) {
    if (p.is_zero()) throw std::domain_error("isolate_roots of zero polynomial");
    Isolation out;
    if (p.degree() == 0) return out;
    RatPoly sf = squarefree_part(p);
    auto ivs = isolate_squarefree(sf);
    auto yun = squarefree_decomposition(p);
    std::vector<std::pair<std::vector<ZPoly>, ZPoly>> chains;  // (sturm chain, primitive)
    for (const auto& f : yun)
        chains.emplace_back(f.degree() >= 1 ? sturm_chain(f) : std::vector<ZPoly>{},
                            f.degree() >= 1 ? to_primitive(f) : ZPoly{});
    for (size_t r = 0; r < ivs.size(); ++r) {
        RealAlgebraic root = make_from_isolating(sf, {ivs[r].lo, ivs[r].hi});
        // find the unique Yun factor holding this root; shrink until unambiguous
        int mult = 0;
        QInterval I = root.interval();
        Rational w = I.width() > 0 ? I.width() : Rational(1);
        while (mult == 0) {
            int hits = 0, which = -1;
            for (size_t k = 0; k < yun.size(); ++k) {
                if (yun[k].degree() < 1) continue;
                int cnt;
                if (I.lo == I.hi)
                    cnt = (zp_sign_at(chains[k].second, I.lo) == 0) ? 1 : 0;
                else
                    cnt = sturm_count(chains[k].first, I.lo, I.hi);
                if (cnt > 0) {
                    hits += cnt;
                    which = int(k);
                }
            }
            if (hits == 1) {
                mult = which + 1;
            } else {
                w /= 2;
                I = root.refine(w);
            }
        }
        out.roots.push_back(std::move(root));
        out.multiplicities.push_back(mult);
    }
    return out;
}

inline RealAlgebraic RealAlgebraic::select_root(const RatPoly& annihilator,
                                                const std::function<QInterval(int)>& enclose) {
    RatPoly sf = squarefree_part(annihilator);
    if (sf.degree() == 1) return from_rational(-sf.c[0] / sf.c[1]);
    auto ivs = isolate_squarefree(sf);
    ZPoly zp = to_primitive(sf, true);
    std::vector<QInterval> cand;
    cand.reserve(ivs.size());
    for (const auto& iv : ivs) cand.push_back({iv.lo, iv.hi});

    auto sign_at = [&](const Rational& q) { return zp_sign_at(zp, q); };
    std::vector<bool> alive(cand.size(), true);
    for (int prec = 0;; ++prec) {
        QInterval J = enclose(prec);
        // refine candidates to comparable width, drop the disjoint ones
        int count = 0, last = -1;
        for (size_t k = 0; k < cand.size(); ++k) {
            if (!alive[k]) continue;
            while (cand[k].lo != cand[k].hi && cand[k].width() > J.width()) {
                Rational mid = cand[k].mid();
                int sm = sign_at(mid);
                if (sm == 0) {
                    cand[k] = QInterval::point(mid);
                    break;
                }
                if (sm == sign_at(cand[k].lo)) cand[k].lo = mid; else cand[k].hi = mid;
            }
            if (cand[k].disjoint(J)) { alive[k] = false; continue; }
            ++count;
            last = int(k);
        }
        if (count == 1) {
            // intersect with J only when the root is exact; otherwise keep the
            // sign-change bracket
            return make_from_isolating(sf, cand[size_t(last)]);
        }
        if (count == 0) throw std::logic_error("select_root: enclosure excluded all roots");
    }
}

inline int RealAlgebraic::sign_at(const RatPoly& g) const {
    if (g.is_zero()) return 0;
    if (is_rational()) {
        Rational v = g(rational_value());
        return sign(v);
    }
    RatPoly d = poly_gcd(g, minpoly_);
    if (d.degree() >= 1) {
        // our root belongs to exactly one of d, minpoly/d
        RatPoly e = poly_divmod(minpoly_, d).first;
        ZPoly zd = to_primitive(d), ze = to_primitive(e);
        auto chd = sturm_chain(d);
        auto che = e.degree() >= 1 ? sturm_chain(e) : std::vector<ZPoly>{};
        QInterval I = interval();
        Rational w = I.width();
        while (true) {
            int cd = I.lo == I.hi ? (zp_sign_at(zd, I.lo) == 0 ? 1 : 0)
                                  : sturm_count(chd, I.lo, I.hi);
            int ce = 0;
            if (e.degree() >= 1)
                ce = I.lo == I.hi ? (zp_sign_at(ze, I.lo) == 0 ? 1 : 0)
                                  : sturm_count(che, I.lo, I.hi);
            if (cd + ce == 1) {
                if (cd == 1) return 0;  // g vanishes at our root
                break;
            }
            w /= 2;
            I = refine(w);
        }
    }
    // g(root) != 0: interval-evaluate until the sign is pinned
    QInterval I = interval();
    Rational w = I.width() > 0 ? I.width() : Rational(1);
    while (true) {
        QInterval val = interval_eval(g, I);
        if (!val.contains_zero()) return val.lo > 0 ? 1 : -1;
        w /= 2;
        I = refine(w);
        if (I.lo == I.hi) return sign(g(I.lo));
    }
}

// ---------------------------------------------------------------------------
// arithmetic
// ---------------------------------------------------------------------------

struct AlgebraicOps {
    enum class Kind { Add, Sub, Mul };

    static RealAlgebraic binary(const RealAlgebraic& x, const RealAlgebraic& y, Kind kind) {
        if (x.is_rational() && y.is_rational()) {
            Rational a = x.rational_value(), b = y.rational_value();
            switch (kind) {
                case Kind::Add: return RealAlgebraic::from_rational(a + b);
                case Kind::Sub: return RealAlgebraic::from_rational(a - b);
                case Kind::Mul: return RealAlgebraic::from_rational(a * b);
            }
        }
        if (x.is_rational()) {
            Rational a = x.rational_value();
            switch (kind) {
                case Kind::Add: return rational_shift(y, a);
                case Kind::Sub: return rational_shift(negate(y), a);
                case Kind::Mul: return rational_scale(y, a);
            }
        }
        if (y.is_rational()) {
            Rational b = y.rational_value();
            switch (kind) {
                case Kind::Add: return rational_shift(x, b);
                case Kind::Sub: return rational_shift(x, -b);
                case Kind::Mul: return rational_scale(x, b);
            }
        }
        // tensor algebra Q[s]/(p_x) (x) Q[t]/(p_y); the operation image is a
        // root of the characteristic polynomial of the multiplication operator
        detail::RatMat Cx = detail::companion(x.minpoly_);
        detail::RatMat Cy = detail::companion(y.minpoly_);
        detail::RatMat Ms = detail::kron(Cx, detail::RatMat::identity(Cy.n));
        detail::RatMat Mt = detail::kron(detail::RatMat::identity(Cx.n), Cy);
        detail::RatMat M;
        switch (kind) {
            case Kind::Add: M = Ms + Mt; break;
            case Kind::Sub: M = Ms - Mt; break;
            case Kind::Mul: M = Ms * Mt; break;
        }
        RatPoly ann = detail::charpoly_newton_rat(M);
        auto enclose = [&, kind](int prec) {
            Rational w = pow2(-(2 + 2 * prec));
            QInterval Ix = x.refine(w), Iy = y.refine(w);
            switch (kind) {
                case Kind::Add: return Ix + Iy;
                case Kind::Sub: return Ix - Iy;
                default: return Ix * Iy;
            }
        };
        return RealAlgebraic::select_root(ann, enclose);
    }

    static RealAlgebraic negate(const RealAlgebraic& x) {
        if (x.is_rational()) return RealAlgebraic::from_rational(-x.rational_value());
        RatPoly q = scale_poly(x.minpoly_, Rational(-1));
        return RealAlgebraic::make_from_isolating(squarefree_part(q), -x.interval());
    }

    static RealAlgebraic rational_shift(const RealAlgebraic& x, const Rational& s) {
        if (s == 0) return x;
        RatPoly q = shift_poly(x.minpoly_, -s);  // q(z) = p(z - s), roots shift by +s
        QInterval I = x.interval();
        return RealAlgebraic::make_from_isolating(squarefree_part(q),
                                                  {I.lo + s, I.hi + s});
    }

    static RealAlgebraic rational_scale(const RealAlgebraic& x, const Rational& s) {
        if (s == 0) return RealAlgebraic::from_rational(Rational(0));
        RatPoly q = scale_poly(x.minpoly_, Rational(1) / s);  // roots scale by s
        QInterval I = x.interval();
        QInterval J = s > 0 ? QInterval{I.lo * s, I.hi * s} : QInterval{I.hi * s, I.lo * s};
        return RealAlgebraic::make_from_isolating(squarefree_part(q), J);
    }

    static RealAlgebraic invert(const RealAlgebraic& y) {
        if (y.sgn() == 0) throw std::domain_error("division by zero algebraic number");
        if (y.is_rational()) return RealAlgebraic::from_rational(Rational(1) / y.rational_value());
        RatPoly p = y.minpoly_;
        if (p.c[0] == 0) {
            // strip the zero root; ours is nonzero
            std::vector<Rational> c(p.c.begin() + 1, p.c.end());
            p = RatPoly(std::move(c));
        }
        RatPoly q = reverse_poly(p);
        auto enclose = [&](int prec) {
            Rational w = pow2(-(2 + 2 * prec));
            QInterval I = y.refine(w);
            while (I.contains_zero()) {
                w /= 2;
                I = y.refine(w);
            }
            return I.recip();
        };
        return RealAlgebraic::select_root(q, enclose);
    }
};

inline RealAlgebraic operator+(const RealAlgebraic& x, const RealAlgebraic& y) {
    return AlgebraicOps::binary(x, y, AlgebraicOps::Kind::Add);
}
inline RealAlgebraic operator-(const RealAlgebraic& x, const RealAlgebraic& y) {
    return AlgebraicOps::binary(x, y, AlgebraicOps::Kind::Sub);
}
inline RealAlgebraic operator*(const RealAlgebraic& x, const RealAlgebraic& y) {
    return AlgebraicOps::binary(x, y, AlgebraicOps::Kind::Mul);
}
inline RealAlgebraic operator/(const RealAlgebraic& x, const RealAlgebraic& y) {
    return x * AlgebraicOps::invert(y);
}
inline RealAlgebraic RealAlgebraic::operator-() const { return AlgebraicOps::negate(*this); }

inline int alg_compare(const RealAlgebraic& x, const RealAlgebraic& y) {
    if (x.is_rational() && y.is_rational()) {
        Rational a = x.rational_value(), b = y.rational_value();
        return a < b ? -1 : (a > b ? 1 : 0);
    }
    if (x.minpoly_ == y.minpoly_ && x.index_ == y.index_) return 0;
    // cheap interval separation first
    QInterval Ix = x.interval(), Iy = y.interval();
    for (int round = 0; round < 8; ++round) {
        if (Ix.hi < Iy.lo) return -1;
        if (Iy.hi < Ix.lo) return 1;
        Rational w = std::min(Ix.width(), Iy.width()) / 2;
        if (w == 0) break;
        Ix = x.refine(w);
        Iy = y.refine(w);
    }
    return (x - y).sgn();
}

inline RealAlgebraic alg_sqrt(const RealAlgebraic& x) {
    int s = x.sgn();
    if (s < 0) throw std::domain_error("square root of a negative value");
    if (s == 0) return RealAlgebraic::from_rational(Rational(0));
    if (x.is_rational()) {
        if (auto r = exact_sqrt(x.rational_value())) return RealAlgebraic::from_rational(*r);
    }
    RatPoly q = compose_x_squared(x.minpoly());
    auto enclose = [&](int prec) {
        Rational w = pow2(-(2 + 2 * prec));
        QInterval I = x.refine(w);
        if (I.lo < 0) I.lo = Rational(0);
        return I.sqrt_enclosure(unsigned(8 + 2 * prec));
    };
    return RealAlgebraic::select_root(q, enclose);
}

/// Named operation dispatcher mirroring the arithmetic contract.
enum class AlgOp { Add, Sub, Mul, Div };
inline RealAlgebraic alg_arith(const RealAlgebraic& x, const RealAlgebraic& y, AlgOp op) {
    switch (op) {
        case AlgOp::Add: return x + y;
        case AlgOp::Sub: return x - y;
        case AlgOp::Mul: return x * y;
        case AlgOp::Div: return x / y;
    }
    throw std::logic_error("unreachable");
}

inline std::string alg_to_decimal(const RealAlgebraic& x, unsigned digits) {
    return x.decimal(digits);
}

/// Exact value of a bivariate polynomial F(x, y) = sum F[i][j] x^i y^j at a
/// pair of algebraic numbers, without chaining pairwise operations: the value
/// is a root of the characteristic polynomial of multiplication by F(s, t) on
/// the tensor algebra Q[s]/(p_x) (x) Q[t]/(p_y).
inline RealAlgebraic alg_eval_poly2(const std::vector<std::vector<Rational>>& F,
                                    const RealAlgebraic& x, const RealAlgebraic& y) {
    auto eval_enclosure = [&](const QInterval& Ix, const QInterval& Iy) {
        QInterval acc = QInterval::point(Rational(0));
        QInterval xp = QInterval::point(Rational(1));
        for (size_t i = 0; i < F.size(); ++i) {
            QInterval row = QInterval::point(Rational(0));
            QInterval yp = QInterval::point(Rational(1));
            for (size_t j = 0; j < F[i].size(); ++j) {
                row = row + QInterval::point(F[i][j]) * yp;
                yp = yp * Iy;
            }
            acc = acc + row * xp;
            xp = xp * Ix;
        }
        return acc;
    };
    if (x.is_rational()) {
        // collapse to g(t) = F(x, t) and Horner-evaluate at y
        Rational xq = x.rational_value();
        std::vector<Rational> g;
        for (const auto& row : F)
            if (row.size() > g.size()) g.resize(row.size(), Rational(0));
        Rational xpow(1);
        for (size_t i = 0; i < F.size(); ++i) {
            for (size_t j = 0; j < F[i].size(); ++j) g[j] += F[i][j] * xpow;
            xpow *= xq;
        }
        if (y.is_rational()) return RealAlgebraic(RatPoly(std::move(g))(y.rational_value()));
        RealAlgebraic val(0);
        for (size_t j = g.size(); j-- > 0;) val = val * y + RealAlgebraic(g[j]);
        return val;
    }
    if (y.is_rational()) {
        Rational yq = y.rational_value();
        std::vector<Rational> g(F.size(), Rational(0));
        for (size_t i = 0; i < F.size(); ++i) {
            Rational ypow(1);
            for (size_t j = 0; j < F[i].size(); ++j) {
                g[i] += F[i][j] * ypow;
                ypow *= yq;
            }
        }
        RealAlgebraic val(0);
        for (size_t i = g.size(); i-- > 0;) val = val * x + RealAlgebraic(g[i]);
        return val;
    }
    detail::RatMat Cx = detail::companion(x.minpoly());
    detail::RatMat Cy = detail::companion(y.minpoly());
    detail::RatMat Ms = detail::kron(Cx, detail::RatMat::identity(Cy.n));
    detail::RatMat Mt = detail::kron(detail::RatMat::identity(Cx.n), Cy);
    int D = Ms.n;
    // powers of Mt up to max j
    size_t maxj = 0;
    for (const auto& row : F) maxj = std::max(maxj, row.size());
    std::vector<detail::RatMat> typow;
    typow.push_back(detail::RatMat::identity(D));
    for (size_t j = 1; j < maxj; ++j) typow.push_back(typow.back() * Mt);
    detail::RatMat M(D);
    detail::RatMat xp = detail::RatMat::identity(D);
    for (size_t i = 0; i < F.size(); ++i) {
        detail::RatMat row(D);
        for (size_t j = 0; j < F[i].size(); ++j) {
            if (F[i][j] == 0) continue;
            for (size_t k = 0; k < row.a.size(); ++k) row.a[k] += F[i][j] * typow[j].a[k];
        }
        if (i > 0) xp = xp * Ms;
        detail::RatMat term = (i == 0) ? row : xp * row;
        for (size_t k = 0; k < M.a.size(); ++k) M.a[k] += term.a[k];
    }
    RatPoly ann = detail::charpoly_newton_rat(M);
    auto enclose = [&, eval_enclosure](int prec) {
        Rational w = pow2(-(2 + 2 * prec));
        return eval_enclosure(x.refine(w), y.refine(w));
    };
    return RealAlgebraic::select_root(ann, enclose);
}

}  // namespace hypcert
