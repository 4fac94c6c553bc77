#include "stickel/rayclass.hpp"

#include <algorithm>
#include <set>

namespace stk {

static QuadElem q_one() { return {Rat(1), Rat(0)}; }

static bool coprime_to(const QuadField& f, const Ideal& a, const Ideal& m) {
    return ideal_equal(ideal_add(f, a, m), ideal_whole(f));
}

Int class_number(const QuadField& f) {
    // every ideal class contains an integral ideal of norm <= sqrt(disc)/2
    Int mb;
    mpz_sqrt(mb.get_mpz_t(), f.disc.get_mpz_t());
    mb = mb / 2 + 1;
    std::vector<Ideal> reps;
    for (const auto& a : ideals_norm_upto(f, mb)) {
        bool known = false;
        for (const auto& r : reps)
            if (principal_gen(f, ideal_mul(f, a, ideal_inv(f, r))).has_value()) {
                known = true;
                break;
            }
        if (!known) reps.push_back(a);
    }
    return Int((long)reps.size());
}

Int narrow_class_number(const QuadField& f) {
    // units have sign patterns {(+,+),(-,-)} iff N(eps0) = +1, in which case
    // the narrow class group doubles
    return class_number(f) * (f.eps0_norm == -1 ? 1 : 2);
}

static std::vector<QuadElem> residue_reps(const QuadField& f, const Ideal& m) {
    if (!ideal_is_integral(m)) throw std::invalid_argument("modulus must be integral");
    Int a = m.hnf.at(0, 0), c = m.hnf.at(1, 1);
    std::vector<QuadElem> out;
    for (Int i(0); i < a; i += 1)
        for (Int j(0); j < c; j += 1) out.push_back(from_omega_coords(f, Rat(i), Rat(j)));
    return out;
}

Int phi_ideal(const QuadField& f, const Ideal& m) {
    if (ideal_equal(m, ideal_whole(f))) return 1;
    Int count(0);
    for (const auto& x : residue_reps(f, m)) {
        if (x.a == 0 && x.b == 0) continue;
        if (coprime_to(f, ideal_principal(f, x), m)) count += 1;
    }
    return count;
}

QuadElem reduce_mod_ideal(const QuadField& f, const Ideal& m, const QuadElem& x) {
    auto [u, v] = omega_coords(f, x);
    if (u.get_den() != 1 || v.get_den() != 1)
        throw std::invalid_argument("reduce_mod_ideal: element not integral");
    Int uu = u.get_num(), vv = v.get_num(), q;
    const Int& a = m.hnf.at(0, 0);
    const Int& b = m.hnf.at(0, 1);
    const Int& c = m.hnf.at(1, 1);
    mpz_fdiv_q(q.get_mpz_t(), uu.get_mpz_t(), a.get_mpz_t());
    uu -= q * a;
    vv -= q * b;
    mpz_fdiv_r(vv.get_mpz_t(), vv.get_mpz_t(), c.get_mpz_t());
    return from_omega_coords(f, Rat(uu), Rat(vv));
}

Int residue_order(const QuadField& f, const Ideal& m, const QuadElem& x) {
    if (!coprime_to(f, ideal_principal(f, x), m))
        throw std::invalid_argument("residue_order: element not coprime to modulus");
    QuadElem p = reduce_mod_ideal(f, m, x);
    Int t(1);
    Int cap = phi_ideal(f, m) + 1;
    while (!ideal_contains(f, m, qsub(p, q_one()))) {
        p = reduce_mod_ideal(f, m, qmul(f, p, x));
        t += 1;
        if (t > cap) throw std::runtime_error("residue_order: no order found");
    }
    return t;
}

static QuadElem totally_positive_unit(const QuadField& f) {
    return f.eps0_norm == 1 ? f.eps0 : qmul(f, f.eps0, f.eps0);
}

QuadElem ray_unit(const QuadField& f, const Ideal& m) {
    QuadElem eta = totally_positive_unit(f);
    Int t = residue_order(f, m, eta);
    return qpow(f, eta, t.get_si());
}

static std::vector<Ideal> prime_pool(const QuadField& f, const Ideal& m, long bound) {
    std::vector<Ideal> out;
    for (long p = 2; p <= bound; ++p) {
        bool isp = p >= 2;
        for (long d = 2; d * d <= p; ++d)
            if (p % d == 0) { isp = false; break; }
        if (!isp) continue;
        for (const auto& pf : prime_split(f, Int(p))) {
            if (ideal_norm(pf.ideal) > Rat(Int(bound))) continue;
            if (!coprime_to(f, pf.ideal, m)) continue;
            out.push_back(pf.ideal);
        }
    }
    std::sort(out.begin(), out.end(), [](const Ideal& x, const Ideal& y) {
        if (ideal_norm(x) != ideal_norm(y)) return ideal_norm(x) < ideal_norm(y);
        return x.hnf.a < y.hnf.a;
    });
    return out;
}

// exponent vector of an integral ideal over the generator list, or nullopt
// if some prime factor is not a generator
static std::optional<std::vector<Int>> factor_over(const QuadField& f,
                                                   const std::vector<Ideal>& gens,
                                                   const Ideal& a) {
    Int maxnorm(1);
    for (const auto& g : gens) {
        Int gn = ideal_norm(g).get_num();
        if (gn > maxnorm) maxnorm = gn;
    }
    // cheap rejection: a rational prime above the generator norms cannot
    // contribute a generator prime
    for (auto& [p, v] : factorize(ideal_norm(a).get_num())) {
        (void)v;
        if (p > maxnorm) return std::nullopt;
    }
    std::vector<Int> e(gens.size(), Int(0));
    for (auto& [p, v] : ideal_factor(f, a)) {
        bool hit = false;
        for (size_t i = 0; i < gens.size(); ++i)
            if (ideal_equal(p, gens[i])) {
                e[i] += v;
                hit = true;
                break;
            }
        if (!hit) return std::nullopt;
    }
    return e;
}

RayClassGroup ray_class_group(const QuadField& f, const Ideal& m) {
    if (!ideal_is_integral(m)) throw std::invalid_argument("modulus must be integral");
    QuadElem eta = totally_positive_unit(f);
    Int target = narrow_class_number(f) * phi_ideal(f, m) / residue_order(f, m, eta);

    for (long gen_bound = 30; gen_bound <= 120; gen_bound += 30) {
        std::vector<Ideal> gens = prime_pool(f, m, gen_bound);
        int n = (int)gens.size();
        if (n == 0) {
            if (target == 1) {
                RayClassGroup rg{f, m, {}, AbGroup(0, IntMat(0, 0)), Int(1)};
                return rg;
            }
            continue;
        }
        std::set<std::vector<Int>> rels;
        Int ms;
        mpz_sqrt(ms.get_mpz_t(), ideal_norm(m).get_num().get_mpz_t());
        Rat box(2 * ms + 4);
        for (int round = 0; round < 8; ++round, box = box * 2) {
            for (const auto& mu : ideal_box(f, m, box, box)) {
                QuadElem x = qadd(q_one(), mu);
                if (qnorm(f, x) == 0 || !totally_positive(f, x)) continue;
                auto e = factor_over(f, gens, ideal_principal(f, x));
                if (e) rels.insert(*e);
            }
            IntMat rm((int)rels.size(), n);
            int i = 0;
            for (const auto& r : rels) {
                for (int j = 0; j < n; ++j) rm.at(i, j) = r[j];
                ++i;
            }
            IntMat h = hnf_basis(rm);
            if (h.rows != n) continue;
            Int order(1);
            for (int j = 0; j < n; ++j) order *= h.at(j, j);
            if (order == target) {
                RayClassGroup rg{f, m, gens, AbGroup(n, h), order};
                return rg;
            }
            if (order < target) break;  // generators do not generate; widen the pool
        }
    }
    throw std::runtime_error("relation search incomplete; raise bound");
}

// class of a prime ideal coprime to the modulus, by smooth splitting of a
// principal multiple with a certified generator
static std::vector<Int> dlog_prime(const RayClassGroup& rg, const Ideal& p) {
    const QuadField& f = rg.field;
    int n = (int)rg.gens.size();
    auto hit = rg.prime_cache.find(p.hnf.a);
    if (hit != rg.prime_cache.end()) return hit->second;
    for (size_t i = 0; i < rg.gens.size(); ++i)
        if (ideal_equal(p, rg.gens[i])) {
            std::vector<Int> e(n, Int(0));
            e[i] = 1;
            return e;
        }
    Ideal pm = ideal_mul(f, p, rg.mod);
    QuadElem x0 = reduce_mod_ideal(f, pm, idempotent_split(f, p, rg.mod));
    Int ps;
    mpz_sqrt(ps.get_mpz_t(), ideal_norm(pm).get_num().get_mpz_t());
    Rat box(2 * ps + 4);
    for (int round = 0; round < 8; ++round, box = box * 2) {
        for (const auto& z : ideal_box(f, pm, box, box)) {
            QuadElem x = qadd(x0, z);
            if (qnorm(f, x) == 0 || !totally_positive(f, x)) continue;
            Ideal b = ideal_mul(f, ideal_principal(f, x), ideal_inv(f, p));
            auto e = factor_over(f, rg.gens, b);
            if (!e) continue;
            for (auto& c : *e) c = -c;
            rg.prime_cache[p.hnf.a] = *e;
            return *e;
        }
    }
    throw std::runtime_error("relation search incomplete; raise bound");
}

std::vector<Int> ray_dlog(const RayClassGroup& rg, const Ideal& a) {
    const QuadField& f = rg.field;
    if (!coprime_to(f, a, rg.mod) || !coprime_to(f, ideal_principal(f, QuadElem(Rat(a.den), Rat(0))), rg.mod))
        throw std::invalid_argument("ideal not coprime to modulus");
    std::vector<Int> out(rg.gens.size(), Int(0));
    Ideal num;
    num.hnf = a.hnf;
    num.den = 1;
    for (auto& [p, e] : ideal_factor(f, num)) {
        auto d = dlog_prime(rg, p);
        for (size_t j = 0; j < out.size(); ++j) out[j] += Int(e) * d[j];
    }
    for (auto& [p, e] : ideal_factor(f, ideal_principal(f, QuadElem(Rat(a.den), Rat(0))))) {
        auto d = dlog_prime(rg, p);
        for (size_t j = 0; j < out.size(); ++j) out[j] -= Int(e) * d[j];
    }
    return out;
}

Ideal class_representative(const RayClassGroup& rg, const std::vector<Int>& label) {
    const QuadField& f = rg.field;
    for (Int nn(1); nn <= 2000; nn += 1) {
        auto cands = ideals_of_norm(f, nn);
        std::sort(cands.begin(), cands.end(),
                  [](const Ideal& x, const Ideal& y) { return x.hnf.a < y.hnf.a; });
        for (const auto& a : cands) {
            if (!coprime_to(f, a, rg.mod)) continue;
            if (rg.grp.label(ray_dlog(rg, a)) == label) return a;
        }
    }
    throw std::runtime_error("no small representative found in ray class");
}

ExtensionSpec make_extension(RayClassGroup rcg, std::vector<std::vector<Int>> kernel_gens) {
    int n = rcg.grp.ngens();
    for (const auto& g : kernel_gens)
        if ((int)g.size() != n) throw std::invalid_argument("kernel generator has wrong length");
    IntMat lat = subgroup_lattice(rcg.grp, kernel_gens);
    AbGroup G(n, lat);
    return ExtensionSpec{std::move(rcg), std::move(kernel_gens), std::move(G)};
}

std::vector<Int> galois_label(const ExtensionSpec& ext, const Ideal& a) {
    return ext.G.label(ray_dlog(ext.rcg, a));
}

Place finite_place(const Ideal& prime_ideal) {
    Place v;
    v.infinite = false;
    v.prime = prime_ideal;
    v.norm = ideal_norm(prime_ideal).get_num();
    return v;
}

Place infinite_place(int index) {
    Place v;
    v.infinite = true;
    v.inf_index = index;
    v.norm = 1;
    return v;
}

PlaceData decomposition_data(const ExtensionSpec& ext, const Place& v) {
    const QuadField& f = ext.rcg.field;
    const AbGroup& G = ext.G;
    int n = G.ngens();
    PlaceData out;
    out.place = v;
    if (v.infinite) {
        // sign pattern (-1 at v, +1 at the other real place) on x = 1 mod m
        Int ms;
        mpz_sqrt(ms.get_mpz_t(), ideal_norm(ext.rcg.mod).get_num().get_mpz_t());
        Rat box(2 * ms + 4);
        for (int round = 0; round < 10; ++round, box = box * 2) {
            for (const auto& mu : ideal_box(f, ext.rcg.mod, box, box)) {
                QuadElem x = qadd(q_one(), mu);
                if (qnorm(f, x) == 0) continue;
                int s0 = qsign(f, x), s1 = qsign(f, qconj(x));
                int sv = v.inf_index == 0 ? s0 : s1;
                int sw = v.inf_index == 0 ? s1 : s0;
                if (sv == -1 && sw == 1) {
                    out.frobenius = ray_dlog(ext.rcg, ideal_principal(f, x));
                    out.G_mod_Iv = G;
                    out.inertia_order = 1;
                    return out;
                }
            }
        }
        throw std::runtime_error("sign search exhausted; raise bound");
    }
    if (coprime_to(f, v.prime, ext.rcg.mod)) {
        out.frobenius = ray_dlog(ext.rcg, v.prime);
        out.G_mod_Iv = G;
        out.inertia_order = 1;
        return out;
    }
    // v divides the modulus: inertia is the image in G of the kernel of the
    // surjection onto the ray class group at m / v^{m_v}
    int mv = 0;
    Ideal mprime = ext.rcg.mod;
    while (ideal_divides(f, v.prime, mprime)) {
        mprime = ideal_mul(f, mprime, ideal_inv(f, v.prime));
        ++mv;
    }
    RayClassGroup rgp = ray_class_group(f, mprime);
    int np = rgp.grp.ngens();
    IntMat images(n, np);
    for (int i = 0; i < n; ++i) {
        auto d = ray_dlog(rgp, ext.rcg.gens[i]);
        for (int j = 0; j < np; ++j) images.at(i, j) = d[j];
    }
    AbHom psi(&ext.rcg.grp, &rgp.grp, images);
    IntMat ker = psi.kernel_lattice();
    for (int i = 0; i < ker.rows; ++i) {
        std::vector<Int> row(n);
        for (int j = 0; j < n; ++j) row[j] = ker.at(i, j);
        out.inertia_gens.push_back(std::move(row));
    }
    IntMat qlat = hnf_basis(vstack(G.relations(), ker));
    out.G_mod_Iv = AbGroup(n, qlat);
    out.inertia_order = G.order() / out.G_mod_Iv.order();
    // Frobenius: class of v in the smaller ray class group, pulled back
    // through the surjection (solvable since the generators surject)
    auto dv = ray_dlog(rgp, v.prime);
    IntMat sys = vstack(images, rgp.grp.relations());
    auto sol = int_solve_left(sys, dv);
    if (!sol) throw std::runtime_error("frobenius pullback failed");
    out.frobenius.assign(sol->begin(), sol->begin() + n);
    return out;
}

}  // namespace stk
