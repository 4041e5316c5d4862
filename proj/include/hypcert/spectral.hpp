#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hypcert/exact_matrix.hpp"
#include "hypcert/number_field.hpp"
#include "hypcert/polynomial.hpp"
#include "hypcert/real_algebraic.hpp"

namespace hypcert {

/// Symbolic form of one orthonormalized eigenvector column: the entries are
/// numer_k(lambda)/sqrt(norm2(lambda)). Retained so exact residual and
/// orthogonality checks can work inside the small field Q(lambda) instead of
/// chained algebraic arithmetic.
struct ColumnTower {
    RatPoly modulus;                // defining polynomial in effect (post-splitting)
    RealAlgebraic lambda;
    std::vector<RatPoly> numer;
    RatPoly norm2;
};

struct SpectralDecomposition {
    std::vector<RealAlgebraic> eigenvalues;  // non-decreasing, with multiplicity
    ExactMatrix eigenvectors;                // orthonormal columns
    std::vector<ColumnTower> towers;         // parallel to columns; may be empty
                                             // for the generic entry path

    const RealAlgebraic& lambda_min() const { return eigenvalues.front(); }
    const RealAlgebraic& lambda_max() const { return eigenvalues.back(); }
};

namespace detail {

/// Gauss-Jordan kernel over a number field; returns basis vectors of elements.
/// Pivot order is the first nonzero entry scan, which fixes the basis
/// deterministically.
inline std::vector<std::vector<NumberField::Elem>> field_kernel(
    NumberField& F, std::vector<std::vector<NumberField::Elem>> M, int rows, int cols) {
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int pr = -1;
        for (int i = r; i < rows; ++i)
            if (!F.is_zero(M[size_t(i)][size_t(c)])) { pr = i; break; }
        if (pr < 0) continue;
        std::swap(M[size_t(pr)], M[size_t(r)]);
        NumberField::Elem inv = F.inverse(M[size_t(r)][size_t(c)]);
        for (int j = 0; j < cols; ++j) M[size_t(r)][size_t(j)] = F.mul(M[size_t(r)][size_t(j)], inv);
        for (int i = 0; i < rows; ++i) {
            if (i == r) continue;
            NumberField::Elem f = M[size_t(i)][size_t(c)];
            if (F.is_zero(f)) continue;
            for (int j = 0; j < cols; ++j)
                M[size_t(i)][size_t(j)] =
                    F.sub(M[size_t(i)][size_t(j)], F.mul(f, M[size_t(r)][size_t(j)]));
        }
        pivots.push_back(c);
        ++r;
    }
    std::vector<bool> is_pivot(size_t(cols), false);
    for (int p : pivots) is_pivot[size_t(p)] = true;
    std::vector<std::vector<NumberField::Elem>> basis;
    for (int c = 0; c < cols; ++c) {
        if (is_pivot[size_t(c)]) continue;
        std::vector<NumberField::Elem> v(size_t(cols));
        v[size_t(c)] = F.from_rational(Rational(1));
        for (size_t rr = 0; rr < pivots.size(); ++rr)
            v[size_t(pivots[rr])] = -M[rr][size_t(c)];
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Orthogonalize kernel vectors inside the field w.r.t. the inner product
/// <x,y> = x^T G y (G rational, symmetric positive definite on the span).
/// Returns unnormalized vectors plus their squared norms.
inline void field_gram_schmidt(NumberField& F, const RatMat& G,
                               std::vector<std::vector<NumberField::Elem>>& vs,
                               std::vector<NumberField::Elem>& norms2) {
    auto inner = [&](const std::vector<NumberField::Elem>& x,
                     const std::vector<NumberField::Elem>& y) {
        NumberField::Elem acc = F.from_rational(Rational(0));
        int n = int(x.size());
        for (int i = 0; i < n; ++i) {
            if (x[size_t(i)].is_zero()) continue;
            NumberField::Elem row = F.from_rational(Rational(0));
            for (int j = 0; j < n; ++j) {
                if (G.at(i, j) == 0) continue;
                row = F.add(row, F.mul(RatPoly::constant(G.at(i, j)), y[size_t(j)]));
            }
            acc = F.add(acc, F.mul(x[size_t(i)], row));
        }
        return acc;
    };
    norms2.clear();
    for (size_t k = 0; k < vs.size(); ++k) {
        for (size_t j = 0; j < k; ++j) {
            NumberField::Elem dot = inner(vs[k], vs[j]);
            if (F.is_zero(dot)) continue;
            NumberField::Elem f = F.div(dot, norms2[j]);
            for (size_t i = 0; i < vs[k].size(); ++i)
                vs[k][i] = F.sub(vs[k][i], F.mul(f, vs[j][i]));
        }
        norms2.push_back(inner(vs[k], vs[k]));
        if (F.is_zero(norms2.back()))
            throw std::logic_error("eigenspace basis degenerated during orthogonalization");
    }
}

/// Rational annihilator of all roots of a monic polynomial whose coefficients
/// are algebraic: characteristic polynomial of the companion matrix viewed as
/// a rational operator on Q^n tensored with the coefficient tower.
inline RatPoly apoly_root_annihilator(const std::vector<RealAlgebraic>& monic_coeffs) {
    int n = int(monic_coeffs.size()) - 1;
    std::vector<const RealAlgebraic*> gens;
    std::vector<int> gen_of_coeff(size_t(n), -1);
    long tower_dim = 1;
    for (int i = 0; i < n; ++i) {
        if (monic_coeffs[size_t(i)].is_rational()) continue;
        gen_of_coeff[size_t(i)] = int(gens.size());
        gens.push_back(&monic_coeffs[size_t(i)]);
        tower_dim *= monic_coeffs[size_t(i)].degree();
        if (tower_dim * n > 256)
            throw std::domain_error(
                "algebraic-coefficient eigenproblem exceeds the supported tower size");
    }
    int D = int(tower_dim);
    // multiplication operator of generator g on the tower
    auto gen_mult = [&](int g) {
        RatMat M = RatMat::identity(1);
        for (size_t k = 0; k < gens.size(); ++k) {
            RatMat blk = (int(k) == g) ? companion(gens[k]->minpoly())
                                       : RatMat::identity(gens[k]->degree());
            M = kron(M, blk);
        }
        return M;
    };
    // companion over the tower: big = n*D
    RatMat big(n * D);
    for (int i = 1; i < n; ++i)
        for (int d = 0; d < D; ++d) big.at(i * D + d, (i - 1) * D + d) = 1;
    for (int i = 0; i < n; ++i) {
        RatMat ci;
        if (gen_of_coeff[size_t(i)] >= 0) {
            ci = gen_mult(gen_of_coeff[size_t(i)]);
        } else {
            ci = RatMat::identity(D);
            Rational v = monic_coeffs[size_t(i)].rational_value();
            for (auto& x : ci.a) x *= v;
        }
        for (int r = 0; r < D; ++r)
            for (int c = 0; c < D; ++c)
                big.at(i * D + r, (n - 1) * D + c) = -ci.at(r, c);
    }
    return charpoly_newton_rat(big);
}

using APoly = Poly<RealAlgebraic>;

inline int apoly_sign_at(const APoly& p, const Rational& x) {
    RealAlgebraic acc(0);
    RealAlgebraic xa{x};
    for (size_t i = p.c.size(); i-- > 0;) acc = acc * xa + p.c[i];
    return acc.sgn();
}

inline std::vector<APoly> apoly_sturm_chain(const APoly& p) {
    std::vector<APoly> chain{p, p.derivative()};
    while (chain.back().degree() >= 1) {
        APoly r = poly_mod(chain[chain.size() - 2], chain.back());
        if (r.is_zero()) break;
        chain.push_back(-r);
    }
    return chain;
}

inline int apoly_variations(const std::vector<APoly>& chain, const Rational& x) {
    int var = 0, prev = 0;
    for (const auto& f : chain) {
        int s = apoly_sign_at(f, x);
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++var;
        prev = s;
    }
    return var;
}

/// Eigenvalues (ascending, distinct) of a monic algebraic-coefficient
/// polynomial with all-real roots, as RealAlgebraic values.
inline std::vector<RealAlgebraic> apoly_real_roots_distinct(APoly q) {
    // square-free reduction by field Euclid
    APoly d = q.derivative();
    APoly a = q, b = d;
    while (!b.is_zero() && b.degree() >= 1) {
        APoly r = poly_mod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    APoly sf = q;
    if (!b.is_zero() || a.degree() >= 1) {
        if (a.degree() >= 1) sf = poly_divmod(q, a).first;
    }
    sf = make_monic(sf);
    RatPoly ann = apoly_root_annihilator(sf.c);
    auto chain = apoly_sturm_chain(sf);
    // coefficient magnitude bound for a root radius
    Rational mx(0);
    for (size_t i = 0; i + 1 < sf.c.size(); ++i) {
        QInterval I = sf.c[i].refine(Rational(1, 16));
        mx = std::max(mx, std::max(rat_abs(I.lo), rat_abs(I.hi)));
    }
    Rational B(2);
    while (B < 1 + mx) B *= 2;
    ZPoly dummy;  // exact roots discovered below keep intervals as points
    struct Seg { Rational a, b; int va, vb; };
    std::vector<std::pair<Rational, Rational>> isolated;
    std::vector<Rational> exact;
    std::vector<Seg> stack{{-B, B, apoly_variations(chain, -B), apoly_variations(chain, B)}};
    while (!stack.empty()) {
        Seg s = stack.back();
        stack.pop_back();
        int count = s.va - s.vb;
        if (count <= 0) continue;
        if (count == 1 && apoly_sign_at(sf, s.a) * apoly_sign_at(sf, s.b) < 0) {
            isolated.emplace_back(s.a, s.b);
            continue;
        }
        Rational mid = (s.a + s.b) / 2;
        if (apoly_sign_at(sf, mid) == 0) {
            exact.push_back(mid);
            Rational eps = (s.b - s.a) / 4;
            Rational ml = mid - eps, mr = mid + eps;
            while (apoly_sign_at(sf, ml) == 0) ml = (ml + mid) / 2;
            while (apoly_sign_at(sf, mr) == 0) mr = (mr + mid) / 2;
            while (apoly_variations(chain, ml) - apoly_variations(chain, mr) != 1) {
                eps /= 2;
                ml = mid - eps;
                mr = mid + eps;
            }
            stack.push_back({s.a, ml, s.va, apoly_variations(chain, ml)});
            stack.push_back({mr, s.b, apoly_variations(chain, mr), s.vb});
            continue;
        }
        int vm = apoly_variations(chain, mid);
        stack.push_back({s.a, mid, s.va, vm});
        stack.push_back({mid, s.b, vm, s.vb});
    }
    std::vector<RealAlgebraic> roots;
    for (const Rational& r : exact) roots.push_back(RealAlgebraic(r));
    for (auto [a, b] : isolated) {
        auto enclose = [&chain, &sf, a, b](int prec) mutable {
            Rational lo = a, hi = b;
            for (int k = 0; k < 2 * (prec + 1); ++k) {
                Rational mid = (lo + hi) / 2;
                int sm = apoly_sign_at(sf, mid);
                if (sm == 0) return QInterval::point(mid);
                if (sm == apoly_sign_at(sf, lo)) lo = mid; else hi = mid;
            }
            return QInterval{lo, hi};
        };
        roots.push_back(RealAlgebraic::select_root(ann, enclose));
    }
    std::sort(roots.begin(), roots.end(),
              [](const RealAlgebraic& x, const RealAlgebraic& y) { return alg_compare(x, y) < 0; });
    return roots;
}

}  // namespace detail

/// Spectral decomposition of an exactly symmetric matrix: eigenvalues in
/// non-decreasing order with multiplicity and an exactly orthonormal
/// eigenvector basis. Rational matrices run through quotient-field
/// elimination; matrices with algebraic entries take a generic (small-size)
/// path.
inline SpectralDecomposition spectral_decompose(const ExactMatrix& A) {
    if (A.rows != A.cols) throw std::invalid_argument("spectral_decompose: non-square matrix");
    if (!A.is_symmetric()) throw std::invalid_argument("spectral_decompose: matrix not symmetric");
    int n = A.rows;
    SpectralDecomposition out;
    out.eigenvectors = ExactMatrix(n, n);

    if (A.all_rational()) {
        detail::RatMat Ar = A.to_rational();
        RatPoly ch = detail::charpoly_newton_rat(Ar);
        auto iso = RealAlgebraic::isolate_roots(ch);
        int col = 0;
        for (size_t r = 0; r < iso.roots.size(); ++r) {
            const RealAlgebraic& lam = iso.roots[r];
            int mult = iso.multiplicities[r];
            NumberField F(lam);
            // lambda*I - A as field elements
            std::vector<std::vector<NumberField::Elem>> M(size_t(n),
                                                          std::vector<NumberField::Elem>(size_t(n)));
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    RatPoly p = RatPoly::constant(-Ar.at(i, j));
                    if (i == j) p = p + RatPoly{{Rational(0), Rational(1)}};
                    M[size_t(i)][size_t(j)] = F.reduce(p);
                }
            auto kernel = detail::field_kernel(F, std::move(M), n, n);
            if (int(kernel.size()) != mult)
                throw std::logic_error("eigenspace dimension disagrees with multiplicity");
            std::vector<NumberField::Elem> norms2;
            detail::field_gram_schmidt(F, detail::RatMat::identity(n), kernel, norms2);
            for (int k = 0; k < mult; ++k) {
                // sign convention: first nonzero entry positive
                int lead = -1;
                for (int i = 0; i < n; ++i)
                    if (!F.is_zero(kernel[size_t(k)][size_t(i)])) { lead = i; break; }
                if (lead >= 0 && F.sign(kernel[size_t(k)][size_t(lead)]) < 0)
                    for (auto& x : kernel[size_t(k)]) x = -x;
                ColumnTower tower;
                tower.lambda = lam;
                tower.norm2 = norms2[size_t(k)];
                tower.numer = kernel[size_t(k)];
                for (int i = 0; i < n; ++i)
                    out.eigenvectors.at(i, col) =
                        F.sqrt_quotient(kernel[size_t(k)][size_t(i)], norms2[size_t(k)]);
                tower.modulus = F.modulus();
                out.towers.push_back(std::move(tower));
                out.eigenvalues.push_back(lam);
                ++col;
            }
        }
        return out;
    }

    // generic path for algebraic entries
    auto coeffs = charpoly_newton(A);
    bool rational_ch = true;
    for (const auto& c : coeffs) rational_ch = rational_ch && c.is_rational();
    std::vector<RealAlgebraic> distinct;
    if (rational_ch) {
        std::vector<Rational> c(coeffs.size());
        for (size_t i = 0; i < coeffs.size(); ++i) c[i] = coeffs[i].rational_value();
        auto iso = RealAlgebraic::isolate_roots(RatPoly(std::move(c)));
        distinct = iso.roots;
    } else {
        detail::APoly q{std::vector<RealAlgebraic>(coeffs.begin(), coeffs.end())};
        distinct = detail::apoly_real_roots_distinct(q);
    }
    int col = 0;
    for (const auto& lam : distinct) {
        ExactMatrix M(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                M.at(i, j) = (i == j) ? lam - A.at(i, j) : -A.at(i, j);
        auto kernel = null_space_basis(M);
        auto ortho = gram_schmidt(kernel);
        for (auto& v : ortho) {
            int lead = -1;
            for (int i = 0; i < n; ++i)
                if (v[size_t(i)].sgn() != 0) { lead = i; break; }
            if (lead >= 0 && v[size_t(lead)].sgn() < 0)
                for (auto& x : v) x = -x;
            for (int i = 0; i < n; ++i) out.eigenvectors.at(i, col) = v[size_t(i)];
            out.eigenvalues.push_back(lam);
            ++col;
        }
    }
    if (col != n) throw std::logic_error("eigenbasis incomplete");
    return out;
}

/// Spectral decomposition of the pencil mu*A - B (A symmetric positive
/// definite, B symmetric): ascending generalized eigenvalues mu with
/// multiplicity, the congruence T with T^T A T = I and T^T B T = diag(mu),
/// and its exact inverse.
struct PencilDecomposition {
    SpectralDecomposition a_spec;
    std::vector<RealAlgebraic> mu;  // non-decreasing, with multiplicity
    ExactMatrix T;
    ExactMatrix T_inv;
    std::vector<ColumnTower> towers;  // T columns in tower form (rational path)

    const RealAlgebraic& mu_min() const { return mu.front(); }
    const RealAlgebraic& mu_max() const { return mu.back(); }

    /// Eigenvector matrix of D^T L^T B L D (columns orthonormal), derived as
    /// Lambda^(1/2) L^T T. Computed on demand; the scheme itself runs on T.
    ExactMatrix w() const {
        int n = T.rows;
        ExactMatrix Lhalf(n, n);
        for (int i = 0; i < n; ++i) Lhalf.at(i, i) = alg_sqrt(a_spec.eigenvalues[size_t(i)]);
        return Lhalf * a_spec.eigenvectors.transpose() * T;
    }
};

inline PencilDecomposition pencil_decompose(const ExactMatrix& A, const ExactMatrix& B) {
    if (A.rows != A.cols || B.rows != B.cols || A.rows != B.rows)
        throw std::invalid_argument("pencil_decompose: shape mismatch");
    if (!A.is_symmetric() || !B.is_symmetric())
        throw std::invalid_argument("pencil_decompose: matrices must be symmetric");
    int n = A.rows;
    PencilDecomposition out;
    out.a_spec = spectral_decompose(A);
    if (out.a_spec.eigenvalues.front().sgn() <= 0)
        throw std::invalid_argument("pencil_decompose: A is not positive definite");
    out.T = ExactMatrix(n, n);
    out.T_inv = ExactMatrix(n, n);

    if (A.all_rational() && B.all_rational()) {
        detail::RatMat Ar = A.to_rational(), Br = B.to_rational();
        // generalized eigenvalues = eigenvalues of A^{-1}B
        ExactMatrix Ainv = mat_inverse(A);
        RatPoly ch = detail::charpoly_newton_rat((Ainv * B).to_rational());
        auto iso = RealAlgebraic::isolate_roots(ch);
        int col = 0;
        for (size_t r = 0; r < iso.roots.size(); ++r) {
            const RealAlgebraic& muk = iso.roots[r];
            int mult = iso.multiplicities[r];
            NumberField F(muk);
            // mu*A - B as field elements
            std::vector<std::vector<NumberField::Elem>> M(size_t(n),
                                                          std::vector<NumberField::Elem>(size_t(n)));
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    M[size_t(i)][size_t(j)] =
                        F.reduce(RatPoly{{-Br.at(i, j), Ar.at(i, j)}});
            auto kernel = detail::field_kernel(F, std::move(M), n, n);
            if (int(kernel.size()) != mult)
                throw std::logic_error("pencil eigenspace dimension disagrees with multiplicity");
            std::vector<NumberField::Elem> norms2;
            detail::field_gram_schmidt(F, Ar, kernel, norms2);  // A-inner product
            for (int k = 0; k < mult; ++k) {
                int lead = -1;
                for (int i = 0; i < n; ++i)
                    if (!F.is_zero(kernel[size_t(k)][size_t(i)])) { lead = i; break; }
                if (lead >= 0 && F.sign(kernel[size_t(k)][size_t(lead)]) < 0)
                    for (auto& x : kernel[size_t(k)]) x = -x;
                // column of T: u / sqrt(u^T A u); row of T_inv: (A u)^T / sqrt(.)
                for (int i = 0; i < n; ++i)
                    out.T.at(i, col) = F.sqrt_quotient(kernel[size_t(k)][size_t(i)],
                                                       norms2[size_t(k)]);
                for (int j = 0; j < n; ++j) {
                    NumberField::Elem au = F.from_rational(Rational(0));
                    for (int i = 0; i < n; ++i) {
                        if (Ar.at(j, i) == 0) continue;
                        au = F.add(au, F.mul(RatPoly::constant(Ar.at(j, i)),
                                             kernel[size_t(k)][size_t(i)]));
                    }
                    out.T_inv.at(col, j) = F.sqrt_quotient(au, norms2[size_t(k)]);
                }
                ColumnTower tower;
                tower.lambda = muk;
                tower.norm2 = norms2[size_t(k)];
                tower.numer = kernel[size_t(k)];
                tower.modulus = F.modulus();
                out.towers.push_back(std::move(tower));
                out.mu.push_back(muk);
                ++col;
            }
        }
        return out;
    }

    // generic path
    ExactMatrix Ainv = mat_inverse(A);
    ExactMatrix C = Ainv * B;
    auto coeffs = charpoly_newton(C);
    bool rational_ch = true;
    for (const auto& c : coeffs) rational_ch = rational_ch && c.is_rational();
    std::vector<RealAlgebraic> distinct;
    if (rational_ch) {
        std::vector<Rational> c(coeffs.size());
        for (size_t i = 0; i < coeffs.size(); ++i) c[i] = coeffs[i].rational_value();
        distinct = RealAlgebraic::isolate_roots(RatPoly(std::move(c))).roots;
    } else {
        distinct = detail::apoly_real_roots_distinct(
            detail::APoly{std::vector<RealAlgebraic>(coeffs.begin(), coeffs.end())});
    }
    int col = 0;
    for (const auto& muk : distinct) {
        ExactMatrix M(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) M.at(i, j) = muk * A.at(i, j) - B.at(i, j);
        auto kernel = null_space_basis(M);
        // A-orthonormalize
        std::vector<std::vector<RealAlgebraic>> ortho;
        std::vector<RealAlgebraic> norms2;
        auto inner = [&](const std::vector<RealAlgebraic>& x, const std::vector<RealAlgebraic>& y) {
            RealAlgebraic acc(0);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) acc += x[size_t(i)] * A.at(i, j) * y[size_t(j)];
            return acc;
        };
        for (auto& v : kernel) {
            std::vector<RealAlgebraic> u = v;
            for (size_t j = 0; j < ortho.size(); ++j) {
                RealAlgebraic f = inner(v, ortho[j]) / norms2[j];
                for (int i = 0; i < n; ++i) u[size_t(i)] -= f * ortho[j][size_t(i)];
            }
            RealAlgebraic n2 = inner(u, u);
            if (n2.sgn() <= 0) throw std::logic_error("pencil eigenvector with nonpositive A-norm");
            ortho.push_back(std::move(u));
            norms2.push_back(std::move(n2));
        }
        for (size_t k = 0; k < ortho.size(); ++k) {
            int lead = -1;
            for (int i = 0; i < n; ++i)
                if (ortho[k][size_t(i)].sgn() != 0) { lead = i; break; }
            if (lead >= 0 && ortho[k][size_t(lead)].sgn() < 0)
                for (auto& x : ortho[k]) x = -x;
            RealAlgebraic inv_norm = RealAlgebraic(1) / alg_sqrt(norms2[k]);
            for (int i = 0; i < n; ++i) out.T.at(i, col) = ortho[k][size_t(i)] * inv_norm;
            out.mu.push_back(muk);
            ++col;
        }
    }
    if (col != n) throw std::logic_error("pencil eigenbasis incomplete");
    out.T_inv = out.T.transpose() * A;
    return out;
}

}  // namespace hypcert
