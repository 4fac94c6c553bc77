#include "stickel/poldist.hpp"

#include <algorithm>

#include <stdexcept>

namespace stk {

static std::vector<Int> integer_coords(const Lattice& lat, const std::vector<Rat>& x,
                                       const char* err) {
    std::vector<Rat> c = lattice_coords(lat, x);
    std::vector<Int> out(c.size());
    for (size_t i = 0; i < c.size(); i++) {
        if (c[i].get_den() != 1) throw std::invalid_argument(err);
        out[i] = c[i].get_num();
    }
    return out;
}

TruncDist dirac(const std::vector<Rat>& lambda, const Lattice& lat, int m) {
    std::vector<Int> y = integer_coords(lat, lambda, "dirac: point not in lattice");
    TruncDist mu;
    mu.lat = lat;
    mu.m = m;
    std::vector<MultiIndex> xi = binom_basis(lat.n, m);
    mu.values.resize(xi.size());
    for (size_t i = 0; i < xi.size(); i++) mu.values[i] = Rat(binom_at_int(y, xi[i]));
    return mu;
}

GroupRingTrunc dist_to_groupring(const TruncDist& mu) {
    int n = mu.lat.n, m = mu.m;
    std::vector<MultiIndex> xi = binom_basis(n, m);
    // solve mu(C(.,l)) = sum_k a_k C(k,l); C(k,l) != 0 needs l <= k, so in
    // lex order the system is upper unitriangular: back-substitute.
    std::vector<Rat> a(xi.size());
    for (size_t li = xi.size(); li-- > 0;) {
        Rat acc = mu.values[li];
        for (size_t ki = li + 1; ki < xi.size(); ki++) {
            std::vector<Int> kpt(xi[ki].begin(), xi[ki].end());
            acc -= a[ki] * Rat(binom_at_int(kpt, xi[li]));
        }
        a[li] = acc;
    }
    // [k] = prod (1+t_i)^{k_i}: coefficient of t^mm is C(k, mm)
    GroupRingTrunc g;
    g.n = n;
    g.m = m;
    g.coeffs.assign(xi.size(), Rat(0));
    for (size_t ki = 0; ki < xi.size(); ki++) {
        if (a[ki] == 0) continue;
        std::vector<Int> kpt(xi[ki].begin(), xi[ki].end());
        for (size_t mi = 0; mi < xi.size(); mi++)
            g.coeffs[mi] += a[ki] * Rat(binom_at_int(kpt, xi[mi]));
    }
    return g;
}

TruncDist groupring_to_dist(const GroupRingTrunc& g, const Lattice& lat) {
    int n = g.n, m = g.m;
    std::vector<MultiIndex> xi = binom_basis(n, m);
    // t^mm = sum_{k <= mm} (-1)^{|mm-k|} C(mm,k) [k]
    std::vector<Rat> b(xi.size(), Rat(0));  // [k]-coefficients
    for (size_t mi = 0; mi < xi.size(); mi++) {
        if (g.coeffs[mi] == 0) continue;
        const MultiIndex& mm = xi[mi];
        std::vector<Int> mpt(mm.begin(), mm.end());
        for (size_t ki = 0; ki <= mi; ki++) {
            const MultiIndex& k = xi[ki];
            bool le = true;
            int diff = 0;
            for (size_t i = 0; i < k.size(); i++) {
                if (k[i] > mm[i]) { le = false; break; }
                diff += mm[i] - k[i];
            }
            if (!le) continue;
            Rat c = g.coeffs[mi] * Rat(binom_at_int(mpt, k));
            if (diff % 2) c = -c;
            b[ki] += c;
        }
    }
    TruncDist mu;
    mu.lat = lat;
    mu.m = m;
    mu.values.assign(xi.size(), Rat(0));
    for (size_t ki = 0; ki < xi.size(); ki++) {
        if (b[ki] == 0) continue;
        std::vector<Int> kpt(xi[ki].begin(), xi[ki].end());
        for (size_t li = 0; li < xi.size(); li++)
            mu.values[li] += b[ki] * Rat(binom_at_int(kpt, xi[li]));
    }
    return mu;
}

GroupRingTrunc gr_one(int n, int m) {
    GroupRingTrunc g;
    g.n = n;
    g.m = m;
    g.coeffs.assign(binom_basis(n, m).size(), Rat(0));
    g.coeffs[0] = 1;
    return g;
}

GroupRingTrunc gr_mul(const GroupRingTrunc& a, const GroupRingTrunc& b) {
    if (a.n != b.n || a.m != b.m) throw std::invalid_argument("gr_mul: level mismatch");
    std::vector<MultiIndex> xi = binom_basis(a.n, a.m);
    std::map<MultiIndex, size_t> pos;
    for (size_t i = 0; i < xi.size(); i++) pos[xi[i]] = i;
    GroupRingTrunc g;
    g.n = a.n;
    g.m = a.m;
    g.coeffs.assign(xi.size(), Rat(0));
    for (size_t i = 0; i < xi.size(); i++) {
        if (a.coeffs[i] == 0) continue;
        for (size_t j = 0; j < xi.size(); j++) {
            if (b.coeffs[j] == 0) continue;
            MultiIndex s(xi[i].size());
            int deg = 0;
            for (size_t t = 0; t < s.size(); t++) {
                s[t] = xi[i][t] + xi[j][t];
                deg += s[t];
            }
            if (deg > a.m) continue;  // truncation
            g.coeffs[pos[s]] += a.coeffs[i] * b.coeffs[j];
        }
    }
    return g;
}

GroupRingTrunc gr_add(const GroupRingTrunc& a, const GroupRingTrunc& b) {
    if (a.n != b.n || a.m != b.m) throw std::invalid_argument("gr_add: level mismatch");
    GroupRingTrunc g = a;
    for (size_t i = 0; i < g.coeffs.size(); i++) g.coeffs[i] += b.coeffs[i];
    return g;
}

TruncDist convolve(const TruncDist& a, const TruncDist& b) {
    if (a.lat.n != b.lat.n || a.m != b.m) throw std::invalid_argument("convolve: level mismatch");
    for (int i = 0; i < a.lat.n; i++)
        for (int j = 0; j < a.lat.n; j++)
            if (a.lat.basis.at(i, j) != b.lat.basis.at(i, j))
                throw std::invalid_argument("convolve: lattice mismatch");
    GroupRingTrunc g = gr_mul(dist_to_groupring(a), dist_to_groupring(b));
    TruncDist out = groupring_to_dist(g, a.lat);
    if (!a.coset_rep.empty() || !b.coset_rep.empty()) {
        std::vector<Rat> r(a.lat.n, Rat(0));
        for (int i = 0; i < a.lat.n; i++) {
            if (!a.coset_rep.empty()) r[(size_t)i] += a.coset_rep[(size_t)i];
            if (!b.coset_rep.empty()) r[(size_t)i] += b.coset_rep[(size_t)i];
        }
        out.coset_rep = r;
    }
    return out;
}

Int stirling2(int p, int q) {
    if (q < 0 || q > p) return 0;
    std::vector<std::vector<Int>> s((size_t)p + 1, std::vector<Int>((size_t)p + 1, Int(0)));
    s[0][0] = 1;
    for (int i = 1; i <= p; i++)
        for (int j = 1; j <= i; j++)
            s[(size_t)i][(size_t)j] = Int(j) * s[(size_t)i - 1][(size_t)j] + s[(size_t)i - 1][(size_t)j - 1];
    return s[(size_t)p][(size_t)q];
}

Int stirling1_signed(int l, int a) {
    if (a < 0 || a > l) return 0;
    std::vector<std::vector<Int>> s((size_t)l + 1, std::vector<Int>((size_t)l + 1, Int(0)));
    s[0][0] = 1;
    for (int i = 1; i <= l; i++)
        for (int j = 0; j <= i; j++) {
            Int v = -Int(i - 1) * s[(size_t)i - 1][(size_t)j];
            if (j > 0) v += s[(size_t)i - 1][(size_t)j - 1];
            s[(size_t)i][(size_t)j] = v;
        }
    return s[(size_t)l][(size_t)a];
}

Rat moment(const TruncDist& mu, const MultiIndex& a, const RatMat& xi) {
    int n = mu.lat.n, m = mu.m;
    if (total_degree(a) > m) throw std::invalid_argument("moment beyond truncation");
    // expand xi^a = prod_i (sum_j xi(i,j) X_j)^{a_i} into X-monomials
    std::map<MultiIndex, Rat> poly;
    poly[MultiIndex((size_t)n, 0)] = 1;
    for (int i = 0; i < n; i++) {
        for (int rep = 0; rep < a[(size_t)i]; rep++) {
            std::map<MultiIndex, Rat> next;
            for (const auto& [mono, c] : poly)
                for (int j = 0; j < n; j++) {
                    if (xi.at(i, j) == 0) continue;
                    MultiIndex mo = mono;
                    mo[(size_t)j]++;
                    next[mo] += c * xi.at(i, j);
                }
            poly = std::move(next);
        }
    }
    // X^b = sum_q prod_i S2(b_i, q_i) q_i! C(X_i, q_i)
    std::vector<MultiIndex> basis = binom_basis(n, m);
    std::map<MultiIndex, size_t> pos;
    for (size_t i = 0; i < basis.size(); i++) pos[basis[i]] = i;
    Rat out = 0;
    for (const auto& [b, c] : poly) {
        std::vector<MultiIndex> qs = binom_basis(n, total_degree(b));
        for (const auto& q : qs) {
            Rat f = c;
            bool zero = false;
            for (int i = 0; i < n && !zero; i++) {
                Int s2 = stirling2(b[(size_t)i], q[(size_t)i]);
                if (s2 == 0) { zero = true; break; }
                f *= Rat(s2 * factorial((unsigned long)q[(size_t)i]));
            }
            if (zero) continue;
            auto it = pos.find(q);
            if (it == pos.end()) throw std::invalid_argument("moment beyond truncation");
            out += f * mu.values[it->second];
        }
    }
    return out;
}

TruncDist moment_dist(const MultiIndex& a, const Lattice& lat, int m) {
    if (total_degree(a) > m) throw std::invalid_argument("moment beyond truncation");
    int n = lat.n;
    std::vector<MultiIndex> basis = binom_basis(n, m);
    TruncDist mu;
    mu.lat = lat;
    mu.m = m;
    mu.values.assign(basis.size(), Rat(0));
    // z^a(C(.,l)) = a! * [X^a] C(X,l) = prod a_i! s(l_i,a_i)/l_i!
    for (size_t li = 0; li < basis.size(); li++) {
        Rat v = 1;
        for (int i = 0; i < n; i++) {
            int l = basis[li][(size_t)i], ai = a[(size_t)i];
            Int s1 = stirling1_signed(l, ai);
            if (s1 == 0) { v = 0; break; }
            v *= Rat(factorial((unsigned long)ai) * s1) / Rat(factorial((unsigned long)l));
        }
        mu.values[li] = v;
    }
    return mu;
}

// ---- locally polynomial distributions at one finite level ----

static std::vector<Rat> ambient_point(const Lattice& lat, const std::vector<Int>& coords) {
    std::vector<Rat> p((size_t)lat.n, Rat(0));
    for (int j = 0; j < lat.n; j++)
        for (int i = 0; i < lat.n; i++) p[(size_t)j] += Rat(coords[(size_t)i]) * lat.basis.at(i, j);
    return p;
}

// reduce big-coordinates to the canonical box rep of big/small
static std::vector<Int> reduce_to_box(const IntMat& h, std::vector<Int> v) {
    for (int i = 0; i < h.rows; i++) {
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), v[(size_t)i].get_mpz_t(), h.at(i, i).get_mpz_t());
        for (int j = i; j < h.cols; j++) v[(size_t)j] -= q * h.at(i, j);
    }
    return v;
}

static size_t rep_index(const std::vector<std::vector<Int>>& reps, const std::vector<Int>& r) {
    for (size_t i = 0; i < reps.size(); i++)
        if (reps[i] == r) return i;
    throw std::logic_error("coset rep not found");
}

LocalDist local_dirac(const std::vector<Rat>& lambda, const Lattice& big, const Lattice& small,
                      int m) {
    auto sm = sublattice_matrix(small, big);
    if (!sm) throw std::invalid_argument("local_dirac: small is not a sublattice");
    IntMat h = hnf_basis(*sm);
    std::vector<Int> c = integer_coords(big, lambda, "local_dirac: point not in lattice");
    std::vector<std::vector<Int>> reps = coset_reps(small, big);
    std::vector<Int> box = reduce_to_box(h, c);
    size_t idx = rep_index(reps, box);
    // offset of lambda from the rep point, in small-coordinates
    std::vector<Rat> reppt = ambient_point(big, box);
    std::vector<Rat> off((size_t)big.n);
    for (int i = 0; i < big.n; i++) off[(size_t)i] = lambda[(size_t)i] - reppt[(size_t)i];
    std::vector<Int> y = integer_coords(small, off, "local_dirac: offset not in sublattice");
    std::vector<MultiIndex> xi = binom_basis(big.n, m);
    LocalDist mu;
    mu.big = big;
    mu.small = small;
    mu.m = m;
    mu.values.assign(reps.size(), std::vector<Rat>(xi.size(), Rat(0)));
    for (size_t i = 0; i < xi.size(); i++) mu.values[idx][i] = Rat(binom_at_int(y, xi[i]));
    return mu;
}

Rat local_eval(const LocalDist& mu, const IntPolyFn& f) {
    // f must live on mu.small with cosets inside mu.big
    IntPolyFn cf = canonicalize(f);
    std::vector<std::vector<Int>> reps = coset_reps(mu.small, mu.big);
    auto sm = sublattice_matrix(mu.small, mu.big);
    IntMat h = hnf_basis(*sm);
    std::vector<MultiIndex> xi = binom_basis(mu.big.n, mu.m);
    Rat out = 0;
    for (const auto& p : cf.pieces) {
        // locate the coset: rep point in big coordinates must be integral
        std::vector<Rat> pt((size_t)mu.big.n, Rat(0));
        for (int j = 0; j < mu.big.n; j++)
            for (int i = 0; i < mu.big.n; i++)
                pt[(size_t)j] += p.rep[(size_t)i] * mu.small.basis.at(i, j);
        std::vector<Int> bc = integer_coords(mu.big, pt, "local_eval: coset not in lattice");
        std::vector<Int> box = reduce_to_box(h, bc);
        size_t idx = rep_index(reps, box);
        // shift the piece so its rep is exactly the canonical box point
        std::vector<Rat> reppt = ambient_point(mu.big, box);
        std::vector<Rat> shift((size_t)mu.big.n);
        for (int i = 0; i < mu.big.n; i++) shift[(size_t)i] = pt[(size_t)i] - reppt[(size_t)i];
        // shift is in small (same coset); translate the polynomial
        IntPolyFn single;
        single.lat = mu.small;
        single.degree_bound = f.degree_bound;
        single.pieces.push_back(p);
        IntPolyFn shifted = translate(single, shift);
        for (const auto& sp : shifted.pieces)
            for (const auto& [mi, c] : sp.coeffs) {
                auto it = std::find(xi.begin(), xi.end(), mi);
                if (it == xi.end()) throw std::invalid_argument("local_eval: degree beyond level");
                out += c * mu.values[idx][(size_t)(it - xi.begin())];
            }
    }
    return out;
}

// matrix of extension by zero from level (l2, l2') to (l1, l1'); row index
// = (coset s of l1/l1', basis index), column = (coset t of l2/l2', index)
static RatMat change_matrix(const Lattice& l2, const Lattice& l2p, const Lattice& l1,
                            const Lattice& l1p, int m) {
    auto m21 = sublattice_matrix(l2, l1);
    auto m2p1p = sublattice_matrix(l2p, l1p);
    auto m2p2 = sublattice_matrix(l2p, l2);
    auto m1p1 = sublattice_matrix(l1p, l1);
    if (!m21 || !m2p1p || !m2p2 || !m1p1)
        throw std::invalid_argument("change_lattice_iso: inclusions do not hold");
    Int d = det(*m21);
    if (d < 0) d = -d;
    Int dp = det(*m2p1p);
    if (dp < 0) dp = -dp;
    if (d != dp) throw std::invalid_argument("change_lattice_iso: index condition fails");
    std::vector<std::vector<Int>> reps1 = coset_reps(l1p, l1);
    std::vector<std::vector<Int>> reps2 = coset_reps(l2p, l2);
    IntMat h1 = hnf_basis(*m1p1);
    std::vector<MultiIndex> xi = binom_basis(l1.n, m);
    size_t nb = xi.size();
    if (reps1.size() != reps2.size())
        throw std::invalid_argument("change_lattice_iso: index condition fails");
    RatMat mat((int)(reps1.size() * nb), (int)(reps2.size() * nb));

    // target coset containing each source coset; use the genuine
    // correspondence when it is a bijection, otherwise pair the canonical
    // enumerations (the indices match, so the pairing is well-defined)
    std::vector<size_t> target(reps2.size());
    std::vector<std::vector<Int>> boxes(reps2.size());
    {
        std::vector<int> hits(reps1.size(), 0);
        for (size_t t = 0; t < reps2.size(); t++) {
            std::vector<Rat> pt2 = ambient_point(l2, reps2[t]);
            std::vector<Int> bc(reps2[t].size());
            std::vector<Rat> c = lattice_coords(l1, pt2);
            for (size_t i = 0; i < c.size(); i++) {
                if (c[i].get_den() != 1)
                    throw std::invalid_argument("change_lattice_iso: inclusions do not hold");
                bc[i] = c[i].get_num();
            }
            boxes[t] = reduce_to_box(h1, bc);
            target[t] = rep_index(reps1, boxes[t]);
            hits[target[t]]++;
        }
        bool bijective = true;
        for (int hcount : hits)
            if (hcount != 1) bijective = false;
        if (!bijective)
            for (size_t t = 0; t < reps2.size(); t++) target[t] = t;
    }

    for (size_t t = 0; t < reps2.size(); t++) {
        std::vector<Rat> pt2 = ambient_point(l2, reps2[t]);
        const std::vector<Int>& box = boxes[t];
        size_t s = target[t];
        // offset u0 of pt2 from the l1-rep point, in l1'-coordinates
        std::vector<Rat> reppt = ambient_point(l1, box);
        std::vector<Rat> off((size_t)l1.n);
        for (int i = 0; i < l1.n; i++) off[(size_t)i] = pt2[(size_t)i] - reppt[(size_t)i];
        std::vector<Rat> u0r = lattice_coords(l1p, off);
        std::vector<Int> u0((size_t)l1.n);
        for (int i = 0; i < l1.n; i++) {
            if (u0r[(size_t)i].get_den() != 1)
                throw std::invalid_argument("change_lattice_iso: inclusions do not hold");
            u0[(size_t)i] = u0r[(size_t)i].get_num();
        }
        // restriction of the l1-basis function C(u, mm) to this l2-coset:
        // u = u0 + y * M with M = matrix of l2' in l1'
        for (size_t mi = 0; mi < nb; mi++) {
            std::vector<Rat> vals(nb);
            for (size_t li = 0; li < nb; li++) {
                std::vector<Int> u = u0;
                for (int j = 0; j < l1.n; j++)
                    for (int i2 = 0; i2 < l1.n; i2++)
                        u[(size_t)j] += Int(xi[li][(size_t)i2]) * m2p1p->at(i2, j);
                vals[li] = Rat(binom_at_int(u, xi[mi]));
            }
            std::vector<Rat> c = binom_interpolate(l1.n, m, vals);
            for (size_t ki = 0; ki < nb; ki++)
                mat.at((int)(s * nb + mi), (int)(t * nb + ki)) = c[ki];
        }
    }
    return mat;
}

Rat change_lattice_det(const Lattice& l2, const Lattice& l2p, const Lattice& l1,
                       const Lattice& l1p, int m) {
    return rat_det(change_matrix(l2, l2p, l1, l1p, m));
}

static bool unit_in_ring(Rat v, const std::vector<Int>& allowed_primes) {
    Int num = v.get_num(), den = v.get_den();
    if (num < 0) num = -num;
    for (const auto& p : allowed_primes) {
        while (num % p == 0) num /= p;
        while (den % p == 0) den /= p;
    }
    return num == 1 && den == 1;
}

LocalDist change_lattice_iso(const LocalDist& mu, const Lattice& l1, const Lattice& l1p,
                             const std::vector<Int>& allowed_primes) {
    RatMat mat = change_matrix(mu.big, mu.small, l1, l1p, mu.m);
    if (!unit_in_ring(rat_det(mat), allowed_primes))
        throw std::invalid_argument("index not invertible in R");
    size_t nb = binom_basis(l1.n, mu.m).size();
    std::vector<Rat> in;
    for (const auto& coset : mu.values) in.insert(in.end(), coset.begin(), coset.end());
    LocalDist out;
    out.big = l1;
    out.small = l1p;
    out.m = mu.m;
    size_t ncos = (size_t)mat.rows / nb;
    out.values.assign(ncos, std::vector<Rat>(nb, Rat(0)));
    for (int r = 0; r < mat.rows; r++) {
        Rat acc = 0;
        for (int c = 0; c < mat.cols; c++) acc += mat.at(r, c) * in[(size_t)c];
        out.values[(size_t)r / nb][(size_t)r % nb] = acc;
    }
    return out;
}

}  // namespace stk
