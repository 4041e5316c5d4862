#pragma once

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hypcert/real_algebraic.hpp"

namespace hypcert {

/// Dense matrix over RealAlgebraic with exact arithmetic throughout.
struct ExactMatrix {
    int rows = 0, cols = 0;
    std::vector<RealAlgebraic> e;  // row major

    ExactMatrix() = default;
    ExactMatrix(int r, int c) : rows(r), cols(c), e(size_t(r) * c) {}

    RealAlgebraic& at(int i, int j) { return e[size_t(i) * cols + j]; }
    const RealAlgebraic& at(int i, int j) const { return e[size_t(i) * cols + j]; }

    static ExactMatrix identity(int n) {
        ExactMatrix m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = RealAlgebraic(1);
        return m;
    }
    static ExactMatrix diagonal(const std::vector<RealAlgebraic>& d) {
        ExactMatrix m(int(d.size()), int(d.size()));
        for (size_t i = 0; i < d.size(); ++i) m.at(int(i), int(i)) = d[i];
        return m;
    }
    static ExactMatrix from_rational(const detail::RatMat& r) {
        ExactMatrix m(r.n, r.n);
        for (int i = 0; i < r.n; ++i)
            for (int j = 0; j < r.n; ++j) m.at(i, j) = RealAlgebraic(r.at(i, j));
        return m;
    }

    ExactMatrix transpose() const {
        ExactMatrix t(cols, rows);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    bool all_rational() const {
        for (const auto& x : e)
            if (!x.is_rational()) return false;
        return true;
    }
    detail::RatMat to_rational() const {
        if (rows != cols) throw std::logic_error("to_rational expects square");
        detail::RatMat m(rows);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) m.at(i, j) = at(i, j).rational_value();
        return m;
    }

    bool is_symmetric() const {
        if (rows != cols) return false;
        for (int i = 0; i < rows; ++i)
            for (int j = i + 1; j < cols; ++j)
                if (alg_compare(at(i, j), at(j, i)) != 0) return false;
        return true;
    }

    friend ExactMatrix operator+(const ExactMatrix& a, const ExactMatrix& b) {
        if (a.rows != b.rows || a.cols != b.cols) throw std::invalid_argument("shape mismatch");
        ExactMatrix r(a.rows, a.cols);
        for (size_t k = 0; k < r.e.size(); ++k) r.e[k] = a.e[k] + b.e[k];
        return r;
    }
    friend ExactMatrix operator-(const ExactMatrix& a, const ExactMatrix& b) {
        if (a.rows != b.rows || a.cols != b.cols) throw std::invalid_argument("shape mismatch");
        ExactMatrix r(a.rows, a.cols);
        for (size_t k = 0; k < r.e.size(); ++k) r.e[k] = a.e[k] - b.e[k];
        return r;
    }
    friend ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b) {
        if (a.cols != b.rows) throw std::invalid_argument("shape mismatch");
        ExactMatrix r(a.rows, b.cols);
        for (int i = 0; i < a.rows; ++i)
            for (int k = 0; k < a.cols; ++k) {
                const RealAlgebraic& v = a.at(i, k);
                if (v.sgn() == 0) continue;
                for (int j = 0; j < b.cols; ++j)
                    r.at(i, j) += v * b.at(k, j);
            }
        return r;
    }
};

enum class MatOp { Add, Sub, Mul };
inline ExactMatrix mat_arith(const ExactMatrix& x, const ExactMatrix& y, MatOp op) {
    switch (op) {
        case MatOp::Add: return x + y;
        case MatOp::Sub: return x - y;
        case MatOp::Mul: return x * y;
    }
    throw std::logic_error("unreachable");
}

namespace detail {

/// Reduced row echelon form over Rational; returns pivot column per row.
inline std::vector<int> rref_rational(RatMat& M, int rows, int cols) {
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int pr = -1;
        for (int i = r; i < rows; ++i)
            if (M.a[size_t(i) * cols + c] != 0) { pr = i; break; }
        if (pr < 0) continue;
        for (int j = 0; j < cols; ++j)
            std::swap(M.a[size_t(pr) * cols + j], M.a[size_t(r) * cols + j]);
        Rational inv = Rational(1) / M.a[size_t(r) * cols + c];
        for (int j = 0; j < cols; ++j) M.a[size_t(r) * cols + j] *= inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r) continue;
            Rational f = M.a[size_t(i) * cols + c];
            if (f == 0) continue;
            for (int j = 0; j < cols; ++j)
                M.a[size_t(i) * cols + j] -= f * M.a[size_t(r) * cols + j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace detail

inline RealAlgebraic mat_det(const ExactMatrix& X) {
    if (X.rows != X.cols) throw std::invalid_argument("determinant of non-square matrix");
    int n = X.rows;
    ExactMatrix M = X;
    RealAlgebraic det(1);
    for (int c = 0; c < n; ++c) {
        int pr = -1;
        for (int i = c; i < n; ++i)
            if (M.at(i, c).sgn() != 0) { pr = i; break; }
        if (pr < 0) return RealAlgebraic(0);
        if (pr != c) {
            for (int j = 0; j < n; ++j) std::swap(M.at(pr, j), M.at(c, j));
            det = -det;
        }
        det = det * M.at(c, c);
        RealAlgebraic inv = RealAlgebraic(1) / M.at(c, c);
        for (int i = c + 1; i < n; ++i) {
            RealAlgebraic f = M.at(i, c) * inv;
            if (f.sgn() == 0) continue;
            for (int j = c; j < n; ++j) M.at(i, j) = M.at(i, j) - f * M.at(c, j);
        }
    }
    return det;
}

inline ExactMatrix mat_inverse(const ExactMatrix& X) {
    if (X.rows != X.cols) throw std::invalid_argument("inverse of non-square matrix");
    int n = X.rows;
    if (X.all_rational()) {
        detail::RatMat M(n);
        // augmented [X | I]
        detail::RatMat A(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) A.at(i, j) = X.at(i, j).rational_value();
        std::vector<Rational> aug(size_t(n) * 2 * n, Rational(0));
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) aug[size_t(i) * 2 * n + j] = A.at(i, j);
            aug[size_t(i) * 2 * n + n + i] = 1;
        }
        detail::RatMat W;
        W.n = 2 * n;  // abused as flat storage with explicit strides below
        W.a = std::move(aug);
        auto pivots = detail::rref_rational(W, n, 2 * n);
        if (int(pivots.size()) != n || pivots.back() >= n)
            throw std::domain_error("singular matrix");
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) M.at(i, j) = W.a[size_t(i) * 2 * n + n + j];
        return ExactMatrix::from_rational(M);
    }
    // generic Gauss-Jordan with exact pivot tests
    ExactMatrix M = X, Inv = ExactMatrix::identity(n);
    for (int c = 0; c < n; ++c) {
        int pr = -1;
        for (int i = c; i < n; ++i)
            if (M.at(i, c).sgn() != 0) { pr = i; break; }
        if (pr < 0) throw std::domain_error("singular matrix");
        if (pr != c)
            for (int j = 0; j < n; ++j) {
                std::swap(M.at(pr, j), M.at(c, j));
                std::swap(Inv.at(pr, j), Inv.at(c, j));
            }
        RealAlgebraic inv = RealAlgebraic(1) / M.at(c, c);
        for (int j = 0; j < n; ++j) {
            M.at(c, j) = M.at(c, j) * inv;
            Inv.at(c, j) = Inv.at(c, j) * inv;
        }
        for (int i = 0; i < n; ++i) {
            if (i == c) continue;
            RealAlgebraic f = M.at(i, c);
            if (f.sgn() == 0) continue;
            for (int j = 0; j < n; ++j) {
                M.at(i, j) = M.at(i, j) - f * M.at(c, j);
                Inv.at(i, j) = Inv.at(i, j) - f * Inv.at(c, j);
            }
        }
    }
    return Inv;
}

/// Exact basis of ker(X); empty when X is injective.
inline std::vector<std::vector<RealAlgebraic>> null_space_basis(const ExactMatrix& X) {
    int rows = X.rows, cols = X.cols;
    std::vector<std::vector<RealAlgebraic>> basis;
    if (X.all_rational()) {
        detail::RatMat W;
        W.n = cols;
        W.a.resize(size_t(rows) * cols);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) W.a[size_t(i) * cols + j] = X.at(i, j).rational_value();
        auto pivots = detail::rref_rational(W, rows, cols);
        std::vector<bool> is_pivot(cols, false);
        for (int p : pivots) is_pivot[size_t(p)] = true;
        for (int c = 0; c < cols; ++c) {
            if (is_pivot[size_t(c)]) continue;
            std::vector<RealAlgebraic> v(cols);
            v[size_t(c)] = RealAlgebraic(1);
            for (size_t r = 0; r < pivots.size(); ++r)
                v[size_t(pivots[r])] = RealAlgebraic(-W.a[r * cols + c]);
            basis.push_back(std::move(v));
        }
        return basis;
    }
    // generic elimination
    ExactMatrix M = X;
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int pr = -1;
        for (int i = r; i < rows; ++i)
            if (M.at(i, c).sgn() != 0) { pr = i; break; }
        if (pr < 0) continue;
        if (pr != r)
            for (int j = 0; j < cols; ++j) std::swap(M.at(pr, j), M.at(r, j));
        RealAlgebraic inv = RealAlgebraic(1) / M.at(r, c);
        for (int j = 0; j < cols; ++j) M.at(r, j) = M.at(r, j) * inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r) continue;
            RealAlgebraic f = M.at(i, c);
            if (f.sgn() == 0) continue;
            for (int j = 0; j < cols; ++j) M.at(i, j) = M.at(i, j) - f * M.at(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    std::vector<bool> is_pivot(cols, false);
    for (int p : pivots) is_pivot[size_t(p)] = true;
    for (int c = 0; c < cols; ++c) {
        if (is_pivot[size_t(c)]) continue;
        std::vector<RealAlgebraic> v(cols);
        v[size_t(c)] = RealAlgebraic(1);
        for (size_t rr = 0; rr < pivots.size(); ++rr)
            v[size_t(pivots[rr])] = -M.at(int(rr), c);
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Exact Gram-Schmidt with normalization; throws on dependent input.
inline std::vector<std::vector<RealAlgebraic>> gram_schmidt(
    const std::vector<std::vector<RealAlgebraic>>& vs) {
    std::vector<std::vector<RealAlgebraic>> ortho;    // unnormalized
    std::vector<RealAlgebraic> norms2;
    for (const auto& v : vs) {
        std::vector<RealAlgebraic> u = v;
        for (size_t j = 0; j < ortho.size(); ++j) {
            RealAlgebraic dot(0);
            for (size_t k = 0; k < u.size(); ++k) dot += v[k] * ortho[j][k];
            RealAlgebraic f = dot / norms2[j];
            for (size_t k = 0; k < u.size(); ++k) u[k] -= f * ortho[j][k];
        }
        RealAlgebraic n2(0);
        for (const auto& x : u) n2 += x * x;
        if (n2.sgn() == 0) throw std::domain_error("gram_schmidt: dependent input");
        ortho.push_back(std::move(u));
        norms2.push_back(std::move(n2));
    }
    for (size_t j = 0; j < ortho.size(); ++j) {
        RealAlgebraic inv_norm = RealAlgebraic(1) / alg_sqrt(norms2[j]);
        for (auto& x : ortho[j]) x *= inv_norm;
    }
    return ortho;
}

/// Rational upper bound on the Frobenius norm (hence on the spectral norm).
inline Rational frobenius_bound(const ExactMatrix& X, unsigned prec = 20) {
    Rational sum(0);
    for (const auto& x : X.e) {
        if (x.sgn() == 0) continue;
        if (x.is_rational()) {
            Rational v = x.rational_value();
            sum += v * v;
        } else {
            QInterval I = x.refine(pow2(-long(prec)));
            QInterval sq = I * I;
            sum += sq.hi;
        }
    }
    return sqrt_upper_bound(sum, prec);
}

/// Characteristic polynomial z^n - p_1 z^(n-1) - ... - p_n via Newton's
/// identities on the power sums tr(A^k); exact, monic, low degree first.
inline std::vector<RealAlgebraic> charpoly_newton(const ExactMatrix& A) {
    if (A.rows != A.cols) throw std::invalid_argument("charpoly of non-square matrix");
    int n = A.rows;
    if (A.all_rational()) {
        RatPoly ch = detail::charpoly_newton_rat(A.to_rational());
        std::vector<RealAlgebraic> out(ch.c.size());
        for (size_t i = 0; i < ch.c.size(); ++i) out[i] = RealAlgebraic(ch.c[i]);
        return out;
    }
    std::vector<RealAlgebraic> s(size_t(n) + 1);
    ExactMatrix P = A;
    for (int k = 1; k <= n; ++k) {
        RealAlgebraic tr(0);
        for (int i = 0; i < n; ++i) tr += P.at(i, i);
        s[size_t(k)] = tr;
        if (k < n) P = P * A;
    }
    std::vector<RealAlgebraic> p(size_t(n) + 1);
    for (int k = 1; k <= n; ++k) {
        RealAlgebraic acc = s[size_t(k)];
        for (int j = 1; j < k; ++j) acc -= p[size_t(j)] * s[size_t(k - j)];
        p[size_t(k)] = acc / RealAlgebraic(k);
    }
    std::vector<RealAlgebraic> c(size_t(n) + 1);
    c[size_t(n)] = RealAlgebraic(1);
    for (int k = 1; k <= n; ++k) c[size_t(n - k)] = -p[size_t(k)];
    return c;
}

/// Rational characteristic polynomial for all-rational matrices.
inline RatPoly charpoly_rational(const ExactMatrix& A) {
    return detail::charpoly_newton_rat(A.to_rational());
}

}  // namespace hypcert
