#include "stickel/linalg.hpp"

#include <algorithm>
#include <cstdlib>

namespace stk {

IntMat IntMat::identity(int n) {
    IntMat m(n, n);
    for (int i = 0; i < n; i++) m.at(i, i) = 1;
    return m;
}

static void swap_rows(IntMat& m, int i, int j) {
    if (i == j) return;
    for (int c = 0; c < m.cols; c++) std::swap(m.at(i, c), m.at(j, c));
}

static void negate_row(IntMat& m, int i) {
    for (int c = 0; c < m.cols; c++) m.at(i, c) = -m.at(i, c);
}

// row i -= q * row j
static void addmul_row(IntMat& m, int i, int j, const Int& q) {
    if (q == 0) return;
    for (int c = 0; c < m.cols; c++) m.at(i, c) -= q * m.at(j, c);
}

HnfResult hnf(const IntMat& m) {
    IntMat h = m;
    IntMat t = IntMat::identity(m.rows);
    int r = 0;  // next pivot row
    for (int c = 0; c < h.cols && r < h.rows; c++) {
        // kill everything below row r in column c
        for (;;) {
            int piv = -1;
            for (int i = r; i < h.rows; i++) {
                if (h.at(i, c) == 0) continue;
                if (piv < 0 || mpz_cmpabs(h.at(i, c).get_mpz_t(), h.at(piv, c).get_mpz_t()) < 0)
                    piv = i;
            }
            if (piv < 0) break;
            swap_rows(h, piv, r);
            swap_rows(t, piv, r);
            if (h.at(r, c) < 0) { negate_row(h, r); negate_row(t, r); }
            bool clean = true;
            for (int i = r + 1; i < h.rows; i++) {
                if (h.at(i, c) == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), h.at(i, c).get_mpz_t(), h.at(r, c).get_mpz_t());
                addmul_row(h, i, r, q);
                addmul_row(t, i, r, q);
                if (h.at(i, c) != 0) clean = false;
            }
            if (clean) break;
        }
        if (r < h.rows && h.at(r, c) != 0) {
            // reduce entries above the pivot into [0, pivot)
            for (int i = 0; i < r; i++) {
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), h.at(i, c).get_mpz_t(), h.at(r, c).get_mpz_t());
                addmul_row(h, i, r, q);
                addmul_row(t, i, r, q);
            }
            r++;
        }
    }
    return {h, t};
}

IntMat hnf_basis(const IntMat& m) {
    IntMat h = hnf(m).h;
    int nz = 0;
    for (int i = 0; i < h.rows; i++) {
        bool zero = true;
        for (int j = 0; j < h.cols; j++)
            if (h.at(i, j) != 0) { zero = false; break; }
        if (!zero) nz = i + 1;
    }
    IntMat out(nz, h.cols);
    for (int i = 0; i < nz; i++)
        for (int j = 0; j < h.cols; j++) out.at(i, j) = h.at(i, j);
    return out;
}

SnfResult snf_full(const IntMat& m) {
    IntMat a = m;
    IntMat u = IntMat::identity(m.rows);
    IntMat v = IntMat::identity(m.cols);

    auto swap_cols = [&](IntMat& x, int i, int j) {
        if (i == j) return;
        for (int r2 = 0; r2 < x.rows; r2++) std::swap(x.at(r2, i), x.at(r2, j));
    };
    auto negate_col = [&](IntMat& x, int j) {
        for (int r2 = 0; r2 < x.rows; r2++) x.at(r2, j) = -x.at(r2, j);
    };
    auto addmul_col = [&](IntMat& x, int i, int j, const Int& q) {
        if (q == 0) return;
        for (int r2 = 0; r2 < x.rows; r2++) x.at(r2, i) -= q * x.at(r2, j);
    };

    int n = std::min(a.rows, a.cols);
    for (int k = 0; k < n; k++) {
        for (;;) {
            // smallest nonzero entry in the trailing block -> (k,k)
            int bi = -1, bj = -1;
            for (int i = k; i < a.rows; i++)
                for (int j = k; j < a.cols; j++) {
                    if (a.at(i, j) == 0) continue;
                    if (bi < 0 || mpz_cmpabs(a.at(i, j).get_mpz_t(), a.at(bi, bj).get_mpz_t()) < 0) {
                        bi = i; bj = j;
                    }
                }
            if (bi < 0) { bi = bj = -1; break; }
            swap_rows(a, bi, k); swap_rows(u, bi, k);
            swap_cols(a, bj, k); swap_cols(v, bj, k);
            if (a.at(k, k) < 0) { negate_row(a, k); negate_row(u, k); }

            bool done = true;
            for (int i = k + 1; i < a.rows; i++) {
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), a.at(i, k).get_mpz_t(), a.at(k, k).get_mpz_t());
                addmul_row(a, i, k, q); addmul_row(u, i, k, q);
                if (a.at(i, k) != 0) done = false;
            }
            for (int j = k + 1; j < a.cols; j++) {
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), a.at(k, j).get_mpz_t(), a.at(k, k).get_mpz_t());
                addmul_col(a, j, k, q); addmul_col(v, j, k, q);
                if (a.at(k, j) != 0) done = false;
            }
            if (!done) continue;

            // divisibility: a(k,k) must divide the rest of the block
            bool div_ok = true;
            for (int i = k + 1; i < a.rows && div_ok; i++)
                for (int j = k + 1; j < a.cols && div_ok; j++)
                    if (a.at(i, j) % a.at(k, k) != 0) {
                        // fold row i into row k and restart
                        for (int c = 0; c < a.cols; c++) a.at(k, c) += a.at(i, c);
                        for (int c = 0; c < u.cols; c++) u.at(k, c) += u.at(i, c);
                        div_ok = false;
                    }
            if (div_ok) break;
        }
        if (a.at(k, k) == 0) break;
    }
    (void)negate_col;

    std::vector<Int> diag(static_cast<size_t>(std::min(a.rows, a.cols)));
    for (size_t i = 0; i < diag.size(); i++) diag[i] = a.at((int)i, (int)i);
    return {diag, u, v};
}

std::vector<Int> snf(const IntMat& m) { return snf_full(m).diag; }

bool lattice_contains(const IntMat& basis, const std::vector<Int>& v) {
    if ((int)v.size() != basis.cols)
        throw std::invalid_argument("lattice_contains: dimension mismatch");
    IntMat h = hnf_basis(basis);
    if (h.rows != h.cols) throw std::invalid_argument("degenerate lattice");
    // back-substitute against the upper triangular basis
    std::vector<Int> w = v;
    // pivot columns: h is square upper triangular with nonzero diagonal
    for (int i = 0; i < h.rows; i++) {
        // leading column of row i
        int c = i;
        if (h.at(i, c) == 0) throw std::invalid_argument("degenerate lattice");
    }
    for (int i = 0; i < h.rows; i++) {
        if (w[i] % h.at(i, i) != 0) return false;
        Int q = w[i] / h.at(i, i);
        for (int j = i; j < h.cols; j++) w[j] -= q * h.at(i, j);
    }
    for (int j = 0; j < h.cols; j++)
        if (w[j] != 0) return false;
    return true;
}

IntMat int_kernel(const IntMat& m) {
    // rows x of transform where the HNF row is zero form a kernel basis
    HnfResult r = hnf(m);
    std::vector<int> zrows;
    for (int i = 0; i < r.h.rows; i++) {
        bool zero = true;
        for (int j = 0; j < r.h.cols; j++)
            if (r.h.at(i, j) != 0) { zero = false; break; }
        if (zero) zrows.push_back(i);
    }
    IntMat k((int)zrows.size(), m.rows);
    for (size_t i = 0; i < zrows.size(); i++)
        for (int j = 0; j < m.rows; j++) k.at((int)i, j) = r.transform.at(zrows[i], j);
    return hnf_basis(k);
}

IntMat vstack(const IntMat& a, const IntMat& b) {
    if (a.cols != b.cols && a.rows != 0 && b.rows != 0)
        throw std::invalid_argument("vstack: column mismatch");
    int cols = a.rows ? a.cols : b.cols;
    IntMat out(a.rows + b.rows, cols);
    for (int i = 0; i < a.rows; i++)
        for (int j = 0; j < cols; j++) out.at(i, j) = a.at(i, j);
    for (int i = 0; i < b.rows; i++)
        for (int j = 0; j < cols; j++) out.at(a.rows + i, j) = b.at(i, j);
    return out;
}

IntMat preimage_lattice(const IntMat& p, const IntMat& lambda) {
    // x*p in L(lambda)  <=>  exists y: x*p - y*lambda = 0
    // kernel of the stacked matrix [p; lambda], projected to the x block.
    IntMat stacked = vstack(p, lambda);
    IntMat k = int_kernel(stacked);
    IntMat proj(k.rows, p.rows);
    for (int i = 0; i < k.rows; i++)
        for (int j = 0; j < p.rows; j++) proj.at(i, j) = k.at(i, j);
    return hnf_basis(proj);
}

IntMat lattice_intersection(const IntMat& a, const IntMat& b) {
    // x in L(a) n L(b): write x = y*a with y*a in L(b)
    IntMat pre = preimage_lattice(a, b);  // y such that y*a in L(b)
    IntMat out(pre.rows, a.cols);
    for (int i = 0; i < pre.rows; i++)
        for (int j = 0; j < a.cols; j++) {
            Int s = 0;
            for (int k = 0; k < a.rows; k++) s += pre.at(i, k) * a.at(k, j);
            out.at(i, j) = s;
        }
    return hnf_basis(out);
}

Int det(const IntMat& m) {
    if (m.rows != m.cols) throw std::invalid_argument("det: not square");
    int n = m.rows;
    if (n == 0) return 1;
    IntMat a = m;
    Int prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; k++) {
        if (a.at(k, k) == 0) {
            int p = -1;
            for (int i = k + 1; i < n; i++)
                if (a.at(i, k) != 0) { p = i; break; }
            if (p < 0) return 0;
            swap_rows(a, p, k);
            sign = -sign;
        }
        for (int i = k + 1; i < n; i++)
            for (int j = k + 1; j < n; j++) {
                Int num = a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j);
                a.at(i, j) = num / prev;  // exact by Bareiss
            }
        prev = a.at(k, k);
    }
    return sign > 0 ? a.at(n - 1, n - 1) : -a.at(n - 1, n - 1);
}

Rat rat_det(RatMat m) {
    if (m.rows != m.cols) throw std::invalid_argument("rat_det: not square");
    int n = m.rows;
    Rat d = 1;
    for (int k = 0; k < n; k++) {
        int p = -1;
        for (int i = k; i < n; i++)
            if (m.at(i, k) != 0) { p = i; break; }
        if (p < 0) return 0;
        if (p != k) {
            for (int j = 0; j < n; j++) std::swap(m.at(p, j), m.at(k, j));
            d = -d;
        }
        d *= m.at(k, k);
        Rat inv = 1 / m.at(k, k);
        for (int i = k + 1; i < n; i++) {
            Rat f = m.at(i, k) * inv;
            for (int j = k; j < n; j++) m.at(i, j) -= f * m.at(k, j);
        }
    }
    return d;
}

std::vector<Rat> rat_solve_left(const RatMat& m, const std::vector<Rat>& rhs) {
    // x * m = rhs  <=>  m^T x^T = rhs^T; do Gaussian elimination on m^T
    int n = m.rows;
    if (m.cols != n || (int)rhs.size() != n)
        throw std::invalid_argument("rat_solve_left: shape mismatch");
    RatMat a(n, n + 1);
    for (int i = 0; i < n; i++) {
        for (int j = 0; j < n; j++) a.at(i, j) = m.at(j, i);
        a.at(i, n) = rhs[i];
    }
    for (int k = 0; k < n; k++) {
        int p = -1;
        for (int i = k; i < n; i++)
            if (a.at(i, k) != 0) { p = i; break; }
        if (p < 0) throw std::invalid_argument("rat_solve_left: singular");
        if (p != k)
            for (int j = 0; j <= n; j++) std::swap(a.at(p, j), a.at(k, j));
        Rat inv = 1 / a.at(k, k);
        for (int j = k; j <= n; j++) a.at(k, j) *= inv;
        for (int i = 0; i < n; i++) {
            if (i == k || a.at(i, k) == 0) continue;
            Rat f = a.at(i, k);
            for (int j = k; j <= n; j++) a.at(i, j) -= f * a.at(k, j);
        }
    }
    std::vector<Rat> x(n);
    for (int i = 0; i < n; i++) x[i] = a.at(i, n);
    return x;
}

std::optional<std::vector<Rat>> rat_coordinates(const RatMat& basis, const std::vector<Rat>& v) {
    // solve x * basis = v by eliminating on [basis^T | v^T]
    int r = basis.rows, c = basis.cols;
    if ((int)v.size() != c) throw std::invalid_argument("rat_coordinates: dimension mismatch");
    RatMat a(c, r + 1);
    for (int i = 0; i < c; i++) {
        for (int j = 0; j < r; j++) a.at(i, j) = basis.at(j, i);
        a.at(i, r) = v[i];
    }
    std::vector<int> pivot_col;
    int row = 0;
    for (int col = 0; col < r && row < c; col++) {
        int p = -1;
        for (int i = row; i < c; i++)
            if (a.at(i, col) != 0) { p = i; break; }
        if (p < 0) continue;
        if (p != row)
            for (int j = 0; j <= r; j++) std::swap(a.at(p, j), a.at(row, j));
        Rat inv = 1 / a.at(row, col);
        for (int j = col; j <= r; j++) a.at(row, j) *= inv;
        for (int i = 0; i < c; i++) {
            if (i == row || a.at(i, col) == 0) continue;
            Rat f = a.at(i, col);
            for (int j = col; j <= r; j++) a.at(i, j) -= f * a.at(row, j);
        }
        pivot_col.push_back(col);
        row++;
    }
    // consistency: remaining rows must have zero rhs
    for (int i = row; i < c; i++)
        if (a.at(i, r) != 0) return std::nullopt;
    std::vector<Rat> x(r, Rat(0));
    for (int i = 0; i < row; i++) x[pivot_col[i]] = a.at(i, r);
    return x;
}

RatMat rat_inverse(const RatMat& m) {
    int n = m.rows;
    if (m.cols != n) throw std::invalid_argument("rat_inverse: not square");
    RatMat a(n, 2 * n);
    for (int i = 0; i < n; i++) {
        for (int j = 0; j < n; j++) a.at(i, j) = m.at(i, j);
        a.at(i, n + i) = 1;
    }
    for (int k = 0; k < n; k++) {
        int p = -1;
        for (int i = k; i < n; i++)
            if (a.at(i, k) != 0) { p = i; break; }
        if (p < 0) throw std::invalid_argument("rat_inverse: singular");
        if (p != k)
            for (int j = 0; j < 2 * n; j++) std::swap(a.at(p, j), a.at(k, j));
        Rat inv = 1 / a.at(k, k);
        for (int j = 0; j < 2 * n; j++) a.at(k, j) *= inv;
        for (int i = 0; i < n; i++) {
            if (i == k || a.at(i, k) == 0) continue;
            Rat f = a.at(i, k);
            for (int j = 0; j < 2 * n; j++) a.at(i, j) -= f * a.at(k, j);
        }
    }
    RatMat out(n, n);
    for (int i = 0; i < n; i++)
        for (int j = 0; j < n; j++) out.at(i, j) = a.at(i, n + j);
    return out;
}

std::optional<std::vector<Int>> int_solve_left(const IntMat& m, const std::vector<Int>& v) {
    if ((int)v.size() != m.cols) throw std::invalid_argument("int_solve_left: dimension mismatch");
    HnfResult r = hnf(m);
    std::vector<Int> w = v, coef(m.rows, Int(0));
    // pivots of distinct rows sit in strictly increasing columns with zeros
    // below, so a single forward pass reduces w completely
    for (int i = 0; i < r.h.rows; ++i) {
        int p = -1;
        for (int j = 0; j < r.h.cols; ++j)
            if (r.h.at(i, j) != 0) { p = j; break; }
        if (p < 0) continue;
        if (w[p] % r.h.at(i, p) != 0) return std::nullopt;
        Int q = w[p] / r.h.at(i, p);
        coef[i] = q;
        for (int j = p; j < r.h.cols; ++j) w[j] -= q * r.h.at(i, j);
    }
    for (const Int& x : w)
        if (x != 0) return std::nullopt;
    std::vector<Int> out(m.rows, Int(0));
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.rows; ++j) out[j] += coef[i] * r.transform.at(i, j);
    return out;
}

}  // namespace stk
