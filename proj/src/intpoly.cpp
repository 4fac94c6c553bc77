#include "stickel/intpoly.hpp"

#include <algorithm>
#include <stdexcept>

namespace stk {

std::vector<MultiIndex> binom_basis(int n, int m) {
    if (n < 1 || m < 0) throw std::invalid_argument("binom_basis: bad dimensions");
    std::vector<MultiIndex> out;
    MultiIndex cur(n, 0);
    // lexicographic successor among tuples of total degree <= m
    for (;;) {
        out.push_back(cur);
        int deg = total_degree(cur);
        if (deg < m) {
            cur[n - 1]++;
            continue;
        }
        // carry: zero the tail, bump the previous position
        int i = n - 1;
        while (i >= 0 && cur[i] == 0) i--;
        if (i <= 0) break;
        cur[i] = 0;
        cur[i - 1]++;
    }
    return out;
}

Rat binom_at(const std::vector<Rat>& x, const MultiIndex& m) {
    Rat v = 1;
    for (size_t i = 0; i < m.size(); i++) v *= binom(x[i], (unsigned long)m[i]);
    return v;
}

Int binom_at_int(const std::vector<Int>& x, const MultiIndex& m) {
    Int v = 1;
    for (size_t i = 0; i < m.size(); i++) v *= binom_int(x[i], (unsigned long)m[i]);
    return v;
}

std::vector<Rat> binom_interpolate(int n, int m, const std::vector<Rat>& values) {
    std::vector<MultiIndex> xi = binom_basis(n, m);
    if (values.size() != xi.size())
        throw std::invalid_argument("binom_interpolate: value count mismatch");
    // C(l,k) != 0 needs k <= l componentwise, hence k <= l in lex order:
    // the evaluation matrix is lower unitriangular, solve forward.
    std::vector<Rat> c(xi.size());
    for (size_t li = 0; li < xi.size(); li++) {
        std::vector<Int> pt(xi[li].begin(), xi[li].end());
        Rat acc = values[li];
        for (size_t ki = 0; ki < li; ki++) acc -= c[ki] * Rat(binom_at_int(pt, xi[ki]));
        c[li] = acc;  // diagonal C(l,l) = 1
    }
    return c;
}

Lattice Lattice::standard(int n) {
    Lattice l;
    l.n = n;
    l.basis = RatMat(n, n);
    for (int i = 0; i < n; i++) l.basis.at(i, i) = 1;
    return l;
}

Lattice Lattice::scaled(int n, const Rat& s) {
    Lattice l = standard(n);
    for (int i = 0; i < n; i++) l.basis.at(i, i) = s;
    return l;
}

std::vector<Rat> lattice_coords(const Lattice& l, const std::vector<Rat>& x) {
    return rat_solve_left(l.basis, x);
}

static bool all_integer(const std::vector<Rat>& v) {
    for (auto& c : v)
        if (c.get_den() != 1) return false;
    return true;
}

bool lattice_member(const Lattice& l, const std::vector<Rat>& x) {
    return all_integer(lattice_coords(l, x));
}

std::optional<IntMat> sublattice_matrix(const Lattice& lsub, const Lattice& lsup) {
    if (lsub.n != lsup.n) return std::nullopt;
    int n = lsub.n;
    IntMat m(n, n);
    for (int i = 0; i < n; i++) {
        std::vector<Rat> row(n);
        for (int j = 0; j < n; j++) row[j] = lsub.basis.at(i, j);
        std::vector<Rat> c = lattice_coords(lsup, row);
        if (!all_integer(c)) return std::nullopt;
        for (int j = 0; j < n; j++) m.at(i, j) = c[j].get_num();
    }
    return m;
}

std::vector<std::vector<Int>> coset_reps(const Lattice& lsub, const Lattice& lsup) {
    auto m = sublattice_matrix(lsub, lsup);
    if (!m) throw std::invalid_argument("coset_reps: not a sublattice");
    IntMat h = hnf_basis(*m);
    if (h.rows != h.cols) throw std::invalid_argument("degenerate lattice");
    int n = lsub.n;
    std::vector<std::vector<Int>> reps;
    std::vector<Int> cur(n, Int(0));
    for (;;) {
        reps.push_back(cur);
        int i = n - 1;
        while (i >= 0) {
            cur[(size_t)i] += 1;
            if (cur[(size_t)i] < h.at(i, i)) break;
            cur[(size_t)i] = 0;
            i--;
        }
        if (i < 0) break;
    }
    return reps;
}

static bool lattice_same(const Lattice& a, const Lattice& b) {
    if (a.n != b.n) return false;
    for (int i = 0; i < a.n; i++)
        for (int j = 0; j < a.n; j++)
            if (a.basis.at(i, j) != b.basis.at(i, j)) return false;
    return true;
}

static std::vector<Rat> frac_part(const std::vector<Rat>& v) {
    std::vector<Rat> out(v.size());
    for (size_t i = 0; i < v.size(); i++) {
        Int fl;
        mpz_fdiv_q(fl.get_mpz_t(), v[i].get_num_mpz_t(), v[i].get_den_mpz_t());
        out[i] = v[i] - Rat(fl);
    }
    return out;
}

// g(y) = P(y + t) in the binomial basis, via the Vandermonde identity
static std::map<MultiIndex, Rat> shift_coeffs(const std::map<MultiIndex, Rat>& coeffs,
                                              const std::vector<Int>& t) {
    std::map<MultiIndex, Rat> out;
    for (const auto& [mi, c] : coeffs) {
        std::vector<MultiIndex> subs = binom_basis((int)mi.size(), total_degree(mi));
        for (const auto& k : subs) {
            bool le = true;
            MultiIndex diff(mi.size());
            for (size_t i = 0; i < mi.size(); i++) {
                if (k[i] > mi[i]) { le = false; break; }
                diff[i] = mi[i] - k[i];
            }
            if (!le) continue;
            Rat term = c * Rat(binom_at_int(t, diff));
            if (term != 0) out[k] += term;
        }
    }
    return out;
}

IntPolyFn canonicalize(const IntPolyFn& f) {
    IntPolyFn out;
    out.lat = f.lat;
    out.degree_bound = f.degree_bound;
    std::map<std::vector<Rat>, std::map<MultiIndex, Rat>> merged;
    for (const auto& p : f.pieces) {
        std::vector<Rat> rep = frac_part(p.rep);
        // moving the rep from p.rep to rep shifts the coordinate origin by
        // the integer vector lam = p.rep - rep; compensate in the coeffs
        std::vector<Int> mt(p.rep.size(), Int(0));
        bool moved = false;
        for (size_t i = 0; i < p.rep.size(); i++) {
            Rat l = p.rep[i] - rep[i];
            mt[i] = -l.get_num();  // l is an integer
            if (mt[i] != 0) moved = true;
        }
        auto& tgt = merged[rep];
        const std::map<MultiIndex, Rat>& src = p.coeffs;
        std::map<MultiIndex, Rat> shifted;
        if (moved) shifted = shift_coeffs(src, mt);
        for (const auto& [mi, c] : (moved ? shifted : src))
            if (c != 0) tgt[mi] += c;
    }
    for (auto& [rep, coeffs] : merged) {
        std::map<MultiIndex, Rat> nz;
        for (auto& [mi, c] : coeffs)
            if (c != 0) nz[mi] = c;
        if (nz.empty()) continue;
        out.pieces.push_back({rep, std::move(nz)});
    }
    return out;
}

bool poly_equal(const IntPolyFn& a, const IntPolyFn& b) {
    if (!lattice_same(a.lat, b.lat)) return false;
    IntPolyFn ca = canonicalize(a), cb = canonicalize(b);
    if (ca.pieces.size() != cb.pieces.size()) return false;
    for (size_t i = 0; i < ca.pieces.size(); i++) {
        if (ca.pieces[i].rep != cb.pieces[i].rep) return false;
        if (ca.pieces[i].coeffs != cb.pieces[i].coeffs) return false;
    }
    return true;
}

Rat evaluate(const IntPolyFn& f, const std::vector<Rat>& x) {
    std::vector<Rat> c = lattice_coords(f.lat, x);
    for (const auto& p : f.pieces) {
        std::vector<Rat> off(c.size());
        for (size_t i = 0; i < c.size(); i++) off[i] = c[i] - p.rep[i];
        if (!all_integer(off)) continue;
        std::vector<Int> y(off.size());
        for (size_t i = 0; i < off.size(); i++) y[i] = off[i].get_num();
        Rat v = 0;
        for (const auto& [mi, coeff] : p.coeffs) v += coeff * Rat(binom_at_int(y, mi));
        return v;
    }
    return 0;
}

IntPolyFn translate(const IntPolyFn& f, const std::vector<Rat>& lam) {
    std::vector<Rat> lc = lattice_coords(f.lat, lam);
    if (!all_integer(lc)) throw std::invalid_argument("translation vector not in lattice");
    std::vector<Int> l(lc.size());
    for (size_t i = 0; i < lc.size(); i++) l[i] = lc[i].get_num();
    IntPolyFn out;
    out.lat = f.lat;
    out.degree_bound = f.degree_bound;
    for (const auto& p : f.pieces) {
        PolyPiece np;
        np.rep = p.rep;
        // C(X+l, m) = sum_{k <= m} C(X,k) C(l, m-k)
        for (const auto& [mi, c] : p.coeffs) {
            std::vector<MultiIndex> subs = binom_basis((int)mi.size(), total_degree(mi));
            for (const auto& k : subs) {
                bool le = true;
                MultiIndex diff(mi.size());
                for (size_t i = 0; i < mi.size(); i++) {
                    if (k[i] > mi[i]) { le = false; break; }
                    diff[i] = mi[i] - k[i];
                }
                if (!le) continue;
                Rat term = c * Rat(binom_at_int(l, diff));
                if (term != 0) np.coeffs[k] += term;
            }
        }
        out.pieces.push_back(std::move(np));
    }
    return canonicalize(out);
}

static Rat piece_value_at(const PolyPiece& p, const std::vector<Int>& y) {
    Rat v = 0;
    for (const auto& [mi, c] : p.coeffs) v += c * Rat(binom_at_int(y, mi));
    return v;
}

IntPolyFn poly_product(const IntPolyFn& f, const IntPolyFn& g) {
    if (!lattice_same(f.lat, g.lat)) throw std::invalid_argument("poly_product: lattice mismatch");
    IntPolyFn cf = canonicalize(f), cg = canonicalize(g);
    int n = f.lat.n;
    int m = f.degree_bound + g.degree_bound;
    std::vector<MultiIndex> xi = binom_basis(n, m);
    IntPolyFn out;
    out.lat = f.lat;
    out.degree_bound = m;
    for (const auto& pf : cf.pieces)
        for (const auto& pg : cg.pieces) {
            if (pf.rep != pg.rep) continue;
            std::vector<Rat> vals(xi.size());
            for (size_t i = 0; i < xi.size(); i++) {
                std::vector<Int> y(xi[i].begin(), xi[i].end());
                vals[i] = piece_value_at(pf, y) * piece_value_at(pg, y);
            }
            std::vector<Rat> c = binom_interpolate(n, m, vals);
            PolyPiece np;
            np.rep = pf.rep;
            for (size_t i = 0; i < xi.size(); i++)
                if (c[i] != 0) np.coeffs[xi[i]] = c[i];
            out.pieces.push_back(std::move(np));
        }
    return canonicalize(out);
}

IntPolyFn poly_add(const IntPolyFn& f, const IntPolyFn& g) {
    if (!lattice_same(f.lat, g.lat)) throw std::invalid_argument("poly_add: lattice mismatch");
    IntPolyFn out;
    out.lat = f.lat;
    out.degree_bound = std::max(f.degree_bound, g.degree_bound);
    out.pieces = f.pieces;
    for (const auto& p : g.pieces) out.pieces.push_back(p);
    return canonicalize(out);
}

IntPolyFn poly_scale(const IntPolyFn& f, const Rat& c) {
    IntPolyFn out = f;
    for (auto& p : out.pieces)
        for (auto& [mi, v] : p.coeffs) v *= c;
    return canonicalize(out);
}

IntPolyFn restrict_to_sublattice(const IntPolyFn& f, const Lattice& lsub) {
    auto mm = sublattice_matrix(lsub, f.lat);
    if (!mm) throw std::invalid_argument("restrict_to_sublattice: not a sublattice");
    const IntMat& m = *mm;
    int n = f.lat.n;
    std::vector<std::vector<Int>> reps = coset_reps(lsub, f.lat);
    std::vector<MultiIndex> xi = binom_basis(n, f.degree_bound);
    IntPolyFn cf = canonicalize(f);
    IntPolyFn out;
    out.lat = lsub;
    out.degree_bound = f.degree_bound;
    for (const auto& p : cf.pieces)
        for (const auto& a : reps) {
            // coset point in ambient space: (rep + a) * basis(L)
            std::vector<Rat> pt(n, Rat(0));
            for (int j = 0; j < n; j++)
                for (int i = 0; i < n; i++)
                    pt[(size_t)j] += (p.rep[(size_t)i] + Rat(a[(size_t)i])) * f.lat.basis.at(i, j);
            // values at sublattice offsets y = l: old coords X = a + l*m
            std::vector<Rat> vals(xi.size());
            for (size_t li = 0; li < xi.size(); li++) {
                std::vector<Int> x(n);
                for (int j = 0; j < n; j++) {
                    Int s = a[(size_t)j];
                    for (int i = 0; i < n; i++) s += Int(xi[li][(size_t)i]) * m.at(i, j);
                    x[(size_t)j] = s;
                }
                vals[li] = piece_value_at(p, x);
            }
            std::vector<Rat> c = binom_interpolate(n, f.degree_bound, vals);
            PolyPiece np;
            np.rep = lattice_coords(lsub, pt);
            for (size_t i = 0; i < xi.size(); i++)
                if (c[i] != 0) np.coeffs[xi[i]] = c[i];
            if (!np.coeffs.empty()) out.pieces.push_back(std::move(np));
        }
    return canonicalize(out);
}

IntPolyFn extend_by_zero(const IntPolyFn& f, const std::vector<std::vector<Rat>>& ambient_reps) {
    // validate: every piece coset must appear among the ambient cosets
    IntPolyFn cf = canonicalize(f);
    for (const auto& p : cf.pieces) {
        bool found = false;
        for (const auto& r : ambient_reps) {
            std::vector<Rat> rc = frac_part(lattice_coords(f.lat, r));
            if (rc == p.rep) { found = true; break; }
        }
        if (!found) throw std::invalid_argument("extend_by_zero: piece outside ambient cosets");
    }
    return cf;
}

IntPolyFn poly_on_zn(int n, int degree_bound, std::map<MultiIndex, Rat> coeffs) {
    IntPolyFn f;
    f.lat = Lattice::standard(n);
    f.degree_bound = degree_bound;
    PolyPiece p;
    p.rep.assign((size_t)n, Rat(0));
    p.coeffs = std::move(coeffs);
    f.pieces.push_back(std::move(p));
    return f;
}

}  // namespace stk
