#include "stickel/stickring.hpp"

#include <algorithm>
#include <stdexcept>

#include "stickel/zetaval.hpp"

namespace stk {

namespace {

// labels are coordinates in the Smith basis, so the group law on them is
// componentwise addition modulo the invariant factors
std::vector<Int> lab_add(const AbGroup& g, const std::vector<Int>& a, const std::vector<Int>& b) {
    const auto& d = g.smith_diag();
    std::vector<Int> out(a.size());
    for (size_t i = 0; i < a.size(); i++) {
        Int s = a[i] + b[i];
        mpz_fdiv_r(out[i].get_mpz_t(), s.get_mpz_t(), d[i].get_mpz_t());
    }
    return out;
}

std::vector<Int> lab_neg(const AbGroup& g, const std::vector<Int>& a) {
    const auto& d = g.smith_diag();
    std::vector<Int> out(a.size());
    for (size_t i = 0; i < a.size(); i++) {
        Int s = -a[i];
        mpz_fdiv_r(out[i].get_mpz_t(), s.get_mpz_t(), d[i].get_mpz_t());
    }
    return out;
}

void prune(GroupRingElem& x) {
    for (auto it = x.coeffs.begin(); it != x.coeffs.end();)
        it = it->second == 0 ? x.coeffs.erase(it) : std::next(it);
}

size_t element_index(const std::vector<std::vector<Int>>& labels, const std::vector<Int>& lab) {
    auto it = std::lower_bound(labels.begin(), labels.end(), lab);
    if (it == labels.end() || *it != lab) throw std::logic_error("element_index: unknown label");
    return (size_t)(it - labels.begin());
}

}  // namespace

GroupRingElem gr_zero(const AbGroup& g) { return GroupRingElem{&g, {}}; }

GroupRingElem gr_basis(const AbGroup& g, const std::vector<Int>& label, const Rat& c) {
    GroupRingElem x{&g, {}};
    if (c != 0) x.coeffs[label] = c;
    return x;
}

GroupRingElem gr_add(const GroupRingElem& a, const GroupRingElem& b) {
    GroupRingElem out = a;
    for (auto& [l, c] : b.coeffs) out.coeffs[l] += c;
    prune(out);
    return out;
}

GroupRingElem gr_sub(const GroupRingElem& a, const GroupRingElem& b) {
    GroupRingElem out = a;
    for (auto& [l, c] : b.coeffs) out.coeffs[l] -= c;
    prune(out);
    return out;
}

GroupRingElem gr_scale(const Rat& c, const GroupRingElem& a) {
    GroupRingElem out{a.g, {}};
    if (c == 0) return out;
    for (auto& [l, v] : a.coeffs) out.coeffs[l] = c * v;
    return out;
}

GroupRingElem gr_mul(const GroupRingElem& a, const GroupRingElem& b) {
    GroupRingElem out{a.g, {}};
    for (auto& [la, ca] : a.coeffs)
        for (auto& [lb, cb] : b.coeffs) out.coeffs[lab_add(*a.g, la, lb)] += ca * cb;
    prune(out);
    return out;
}

bool gr_equal(const GroupRingElem& a, const GroupRingElem& b) {
    GroupRingElem x = a, y = b;
    prune(x);
    prune(y);
    return x.coeffs == y.coeffs;
}

bool gr_is_integral(const GroupRingElem& a) {
    for (auto& [l, c] : a.coeffs) {
        (void)l;
        if (c.get_den() != 1) return false;
    }
    return true;
}

GroupRingElem gr_involution(const GroupRingElem& a) {
    GroupRingElem out{a.g, {}};
    for (auto& [l, c] : a.coeffs) out.coeffs[lab_neg(*a.g, l)] = c;
    return out;
}

GroupRingIdeal gri_make(const AbGroup& g, std::vector<GroupRingElem> gens) {
    for (auto& x : gens)
        if (!gr_is_integral(x)) throw std::invalid_argument("gri_make: generators must be integral");
    return GroupRingIdeal{&g, std::move(gens), nullptr};
}

GroupRingIdeal gri_principal(const AbGroup& g, const GroupRingElem& x) {
    return gri_make(g, {x});
}

const IntMat& gri_lattice(const GroupRingIdeal& ideal) {
    if (ideal.basis) return *ideal.basis;
    const AbGroup& g = *ideal.g;
    auto labels = g.elements();  // odometer order = sorted
    int n = (int)labels.size();
    IntMat rows((int)ideal.gens.size() * n, n);
    int r = 0;
    for (auto& x : ideal.gens) {
        for (auto& s : labels) {
            for (auto& [l, c] : x.coeffs)
                rows.at(r, (int)element_index(labels, lab_add(g, s, l))) = c.get_num();
            r++;
        }
    }
    ideal.basis = std::make_shared<IntMat>(hnf_basis(rows));
    return *ideal.basis;
}

bool membership(const GroupRingElem& x, const GroupRingIdeal& ideal,
                const std::vector<Int>& denominator_allowance) {
    for (auto& [l, c] : x.coeffs) {
        (void)l;
        if (!denominator_supported(c, denominator_allowance))
            throw std::invalid_argument("non-integral outside allowance");
    }
    const AbGroup& g = *ideal.g;
    auto labels = g.elements();
    std::vector<Rat> v(labels.size(), Rat(0));
    for (auto& [l, c] : x.coeffs) v[element_index(labels, l)] = c;
    const IntMat& b = gri_lattice(ideal);
    if (b.rows == 0) {
        for (auto& c : v)
            if (c != 0) return false;
        return true;
    }
    RatMat rb(b.rows, b.cols);
    for (int i = 0; i < b.rows; i++)
        for (int j = 0; j < b.cols; j++) rb.at(i, j) = Rat(b.at(i, j));
    auto coords = rat_coordinates(rb, v);
    if (!coords) return false;
    // b is a Z-basis, so membership over Z[1/allowance] is exactly a
    // denominator-support condition on the coordinates
    for (auto& c : *coords)
        if (!denominator_supported(c, denominator_allowance)) return false;
    return true;
}

GroupRingIdeal ideal_product(const std::vector<GroupRingIdeal>& ideals) {
    if (ideals.empty()) throw std::invalid_argument("ideal_product: empty input");
    const AbGroup& g = *ideals[0].g;
    auto labels = g.elements();
    GroupRingIdeal acc = ideals[0];
    for (size_t i = 1; i < ideals.size(); i++) {
        std::vector<GroupRingElem> prods;
        for (auto& a : acc.gens)
            for (auto& b : ideals[i].gens) prods.push_back(gr_mul(a, b));
        GroupRingIdeal raw = gri_make(g, std::move(prods));
        // re-express by the lattice basis to cap generator growth; the span
        // is G-stable, so the rows generate the same ideal
        const IntMat& basis = gri_lattice(raw);
        std::vector<GroupRingElem> gens;
        for (int r = 0; r < basis.rows; r++) {
            GroupRingElem x{&g, {}};
            for (int j = 0; j < basis.cols; j++)
                if (basis.at(r, j) != 0) x.coeffs[labels[(size_t)j]] = Rat(basis.at(r, j));
            gens.push_back(std::move(x));
        }
        acc = GroupRingIdeal{&g, std::move(gens), raw.basis};
    }
    return acc;
}

GroupRingElem delta_T(const AbGroup& g,
                      const std::vector<std::pair<Int, std::vector<Int>>>& places, unsigned k) {
    GroupRingElem out = gr_basis(g, g.zero_label());
    for (auto& [norm, sigma] : places) {
        GroupRingElem f = gr_sub(gr_basis(g, g.zero_label()),
                                 gr_basis(g, lab_neg(g, sigma), Rat(int_pow(norm, k + 1))));
        out = gr_mul(out, f);
    }
    return out;
}

GroupRingIdeal ideal_Iv_finite(const AbGroup& g, const std::vector<std::vector<Int>>& inertia_gens,
                               const std::vector<Int>& frobenius, const Int& norm, unsigned k) {
    int n = g.ngens();
    AbGroup gbar(n, subgroup_lattice(g, inertia_gens));
    auto labels = g.elements();
    auto blabels = gbar.elements();
    int N = (int)labels.size(), M = (int)blabels.size();
    IntMat proj(N, M);
    for (int i = 0; i < N; i++)
        proj.at(i, (int)element_index(blabels, gbar.label(g.rep(labels[(size_t)i])))) = 1;
    // Z-span of ([sigma_v] - N^k) Z[Gbar]; this orientation makes the Euler
    // factor (1 - N^k [sigma_v^{-1}]) vanish in the quotient ring
    std::vector<Int> frob = gbar.label(frobenius);
    Int nk = int_pow(norm, k);
    IntMat rel(M, M);
    for (int t = 0; t < M; t++) {
        rel.at(t, (int)element_index(blabels, lab_add(gbar, blabels[(size_t)t], frob))) += 1;
        rel.at(t, t) -= nk;
    }
    IntMat relbasis = hnf_basis(rel);
    IntMat ker = relbasis.rows == 0 ? int_kernel(proj) : preimage_lattice(proj, relbasis);
    std::vector<GroupRingElem> gens;
    for (int r = 0; r < ker.rows; r++) {
        GroupRingElem x{&g, {}};
        for (int j = 0; j < N; j++)
            if (ker.at(r, j) != 0) x.coeffs[labels[(size_t)j]] = Rat(ker.at(r, j));
        gens.push_back(std::move(x));
    }
    GroupRingIdeal out = gri_make(g, std::move(gens));
    out.basis = std::make_shared<IntMat>(hnf_basis(ker));  // kernel is already G-stable
    return out;
}

GroupRingIdeal ideal_Iv_arch(const AbGroup& g, const std::vector<Int>& sigma_v, unsigned k) {
    GroupRingElem gen = gr_add(gr_basis(g, sigma_v),
                               gr_basis(g, g.zero_label(), Rat(k % 2 == 1 ? 1 : -1)));
    return gri_principal(g, gen);
}

// ---- base field Q ----

namespace {

struct ReducedQ {
    QExtension ext1;
    std::map<std::vector<Int>, std::vector<Int>> to_parent;  // ext1.gal label -> ext.gal label
};

ReducedQ reduce_with_map(const QExtension& ext, const Int& f1) {
    ReducedQ out{q_reduce(ext, f1), {}};
    const Int& f = ext.units.f;
    for (Int a(1); a <= f; a += 1) {
        Int g;
        mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), f.get_mpz_t());
        if (g != 1) continue;
        out.to_parent.emplace(q_class(out.ext1, a), q_class(ext, a));
    }
    return out;
}

Int s_part(const Int& f, const std::vector<Int>& S) {
    Int out(1);
    for (auto& [p, e] : factorize(f)) {
        bool in = false;
        for (auto& q : S)
            if (q == p) in = true;
        if (in) out *= int_pow(p, (unsigned long)e);
    }
    return out;
}

}  // namespace

GroupRingElem stickelberger_q(const QExtension& ext, const std::vector<Int>& S, unsigned k) {
    Int f0 = q_conductor(ext);
    for (auto& [p, e] : factorize(f0)) {
        (void)e;
        bool in = false;
        for (auto& q : S)
            if (q == p) in = true;
        if (!in) throw std::invalid_argument("S must contain ramified places");
    }
    Int f1 = s_part(ext.units.f, S);
    ReducedQ red = reduce_with_map(ext, f1);
    GroupRingElem theta = gr_zero(ext.gal);
    for (Int a(1); a <= f1; a += 1) {
        Int g;
        mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), f1.get_mpz_t());
        if (g != 1) continue;
        std::vector<Int> sigma = red.to_parent.at(q_class(red.ext1, a));
        theta = gr_add(theta, gr_basis(ext.gal, lab_neg(ext.gal, sigma), partial_zeta_q(f1, a, k)));
    }
    // primes of S away from the modulus enter through their Euler factors
    for (auto& p : S) {
        if (f1 % p == 0) continue;
        std::vector<Int> sp = red.to_parent.at(q_class(red.ext1, p));
        GroupRingElem factor = gr_sub(gr_basis(ext.gal, ext.gal.zero_label()),
                                      gr_basis(ext.gal, lab_neg(ext.gal, sp), Rat(int_pow(p, k))));
        theta = gr_mul(theta, factor);
    }
    return theta;
}

GroupRingElem stickelberger_q_smoothed(const QExtension& ext, const std::vector<Int>& S,
                                       const std::vector<Int>& T, unsigned k) {
    Int f0 = q_conductor(ext);
    std::vector<std::pair<Int, std::vector<Int>>> places;
    for (auto& q : T) {
        for (auto& p : S)
            if (p == q) throw std::invalid_argument("T intersects S");
        if (f0 % q == 0) throw std::invalid_argument("T must avoid ramified places");
        std::vector<Int> sq;
        if (ext.units.f % q == 0) {
            Int fq = ext.units.f;
            while (fq % q == 0) fq /= q;
            if (fq % f0 != 0) throw std::logic_error("unramified prime divides the conductor");
            ReducedQ red = reduce_with_map(ext, fq);
            sq = red.to_parent.at(q_class(red.ext1, q));
        } else {
            sq = q_class(ext, q);
        }
        places.emplace_back(q, sq);
    }
    return gr_mul(delta_T(ext.gal, places, k), stickelberger_q(ext, S, k));
}

AnnihilatorJX annihilator_JX(const QExtension& ext, const std::vector<Int>& X, unsigned k) {
    Int w = q_torsion_w(ext, k);
    Int f0 = q_conductor(ext);
    std::vector<GroupRingElem> gens;
    for (auto& q : X) {
        if (w % q == 0 || f0 % q == 0) throw std::invalid_argument("X intersects forbidden primes");
        std::vector<Int> sq;
        if (ext.units.f % q == 0) {
            Int fq = ext.units.f;
            while (fq % q == 0) fq /= q;
            ReducedQ red = reduce_with_map(ext, fq);
            sq = red.to_parent.at(q_class(red.ext1, q));
        } else {
            sq = q_class(ext, q);
        }
        gens.push_back(gr_sub(gr_basis(ext.gal, ext.gal.zero_label()),
                              gr_basis(ext.gal, lab_neg(ext.gal, sq), Rat(int_pow(q, k + 1)))));
    }
    return AnnihilatorJX{gri_make(ext.gal, std::move(gens)), w};
}

// ---- real quadratic base field ----

GroupRingElem stickelberger_quad(const ExtensionSpec& ext, const std::vector<Ideal>& S, unsigned k) {
    const QuadField& f = ext.rcg.field;
    // S-supported part of the defining modulus
    Ideal mprime = ideal_whole(f);
    for (auto& [p, e] : ideal_factor(f, ext.rcg.mod)) {
        bool in = false;
        for (auto& q : S)
            if (ideal_equal(q, p)) in = true;
        if (in) mprime = ideal_mul(f, mprime, ideal_pow(f, p, e));
    }
    RayClassGroup rg1 = ray_class_group(f, mprime);
    int n = ext.rcg.grp.ngens(), n1 = rg1.grp.ngens();
    IntMat images(n, n1);
    for (int i = 0; i < n; i++) {
        auto v = ray_dlog(rg1, ext.rcg.gens[(size_t)i]);
        for (int j = 0; j < n1; j++) images.at(i, j) = v[(size_t)j];
    }
    AbHom psi(&ext.rcg.grp, &rg1.grp, images);
    // the classes killed by passing to the smaller modulus must already be
    // killed by H, otherwise a ramified place is missing from S
    IntMat ker = psi.kernel_lattice();
    for (int i = 0; i < ker.rows; i++) {
        std::vector<Int> row(n);
        for (int j = 0; j < n; j++) row[(size_t)j] = ker.at(i, j);
        for (auto& c : ext.G.label(row))
            if (c != 0) throw std::invalid_argument("S must contain ramified places");
    }
    // G presented on rg1's generators: divide by the image of H
    IntMat hrows((int)ext.kernel_gens.size(), n1);
    for (size_t i = 0; i < ext.kernel_gens.size(); i++) {
        std::vector<Int> img(n1, Int(0));
        for (int j = 0; j < n1; j++)
            for (int t = 0; t < n; t++) img[(size_t)j] += ext.kernel_gens[i][(size_t)t] * images.at(t, j);
        for (int j = 0; j < n1; j++) hrows.at((int)i, j) = img[(size_t)j];
    }
    AbGroup gal1(n1, vstack(rg1.grp.relations(), hrows));
    if (gal1.order() != ext.G.order()) throw std::logic_error("quotient order changed across moduli");
    // match gal1 labels with the original G labels through the full ray group
    std::map<std::vector<Int>, std::vector<Int>> to_parent;
    for (auto& c : ext.rcg.grp.elements()) {
        auto v = ext.rcg.grp.rep(c);
        std::vector<Int> img(n1, Int(0));
        for (int j = 0; j < n1; j++)
            for (int t = 0; t < n; t++) img[(size_t)j] += v[(size_t)t] * images.at(t, j);
        to_parent.emplace(gal1.label(img), ext.G.label(v));
    }
    GroupRingElem theta = gr_zero(ext.G);
    for (auto& c1 : rg1.grp.elements()) {
        Rat val = partial_zeta_quad(rg1, c1, k);
        std::vector<Int> sigma = to_parent.at(gal1.label(rg1.grp.rep(c1)));
        theta = gr_add(theta, gr_basis(ext.G, lab_neg(ext.G, sigma), val));
    }
    for (auto& q : S) {
        if (ideal_divides(f, q, ext.rcg.mod)) continue;
        std::vector<Int> sq = galois_label(ext, q);
        Int nq = ideal_norm(q).get_num();
        GroupRingElem factor = gr_sub(gr_basis(ext.G, ext.G.zero_label()),
                                      gr_basis(ext.G, lab_neg(ext.G, sq), Rat(int_pow(nq, k))));
        theta = gr_mul(theta, factor);
    }
    return theta;
}

GroupRingElem stickelberger_quad_smoothed(const ExtensionSpec& ext, const std::vector<Ideal>& S,
                                          const std::vector<Ideal>& T, unsigned k) {
    const QuadField& f = ext.rcg.field;
    std::vector<std::pair<Int, std::vector<Int>>> places;
    for (auto& q : T) {
        for (auto& p : S)
            if (ideal_equal(p, q)) throw std::invalid_argument("T intersects S");
        if (ideal_divides(f, q, ext.rcg.mod))
            throw std::invalid_argument("T must be coprime to the modulus");
        places.emplace_back(ideal_norm(q).get_num(), galois_label(ext, q));
    }
    return gr_mul(delta_T(ext.G, places, k), stickelberger_quad(ext, S, k));
}

Injectivity injectivity_check(const std::vector<Int>& residue_chars, unsigned k, unsigned degree) {
    for (size_t i = 0; i < residue_chars.size(); i++)
        for (size_t j = i + 1; j < residue_chars.size(); j++)
            if (residue_chars[i] != residue_chars[j]) return Injectivity::proven;
    if (k == 0)
        for (auto& p : residue_chars)
            if (p > Int(degree) + 1) return Injectivity::proven;
    return Injectivity::unknown;
}

GroupRingElem stick_rhs_cor53(const GroupRingElem& theta_Sq, unsigned degree, const Int& norm_q,
                              const std::vector<Int>& sigma_q, unsigned k) {
    Rat scale = Rat(degree % 2 == 0 ? 1 : -1) / rat_pow(Rat(norm_q), (long)k);
    return gr_scale(scale, gr_mul(gr_basis(*theta_Sq.g, sigma_q), theta_Sq));
}

}  // namespace stk
