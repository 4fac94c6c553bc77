#include "stickel/cyclotomic.hpp"

#include <stdexcept>

namespace stk {

namespace {

Int mod_pow(const Int& b, const Int& e, const Int& m) {
    Int r;
    mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
    return r;
}

Int crt_lift(const Int& a, const Int& q, const Int& f) {
    // residue mod f that is a mod q and 1 mod f/q (q, f/q coprime)
    Int rest = f / q;
    Int inv;
    if (mpz_invert(inv.get_mpz_t(), rest.get_mpz_t(), q.get_mpz_t()) == 0)
        throw std::logic_error("crt_lift: moduli not coprime");
    Int x = 1 + ((a - 1) * inv % q) * rest;
    mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), f.get_mpz_t());
    return x;
}

Int primitive_root(const Int& pe, const Int& p) {
    Int phi = pe / p * (p - 1);
    auto fac = factorize(phi);
    for (Int g(2); g < pe; g += 1) {
        if (g % p == 0) continue;
        bool ok = true;
        for (auto& [q, e] : fac) {
            (void)e;
            if (mod_pow(g, phi / q, pe) == 1) {
                ok = false;
                break;
            }
        }
        if (ok) return g;
    }
    throw std::logic_error("primitive_root: none found");
}

}  // namespace

UnitsModF units_mod_f(const Int& f) {
    if (f <= 0) throw std::invalid_argument("units_mod_f: modulus must be positive");
    UnitsModF u;
    u.f = f;
    for (auto& [p, e] : factorize(f)) {
        Int pe = int_pow(p, (unsigned long)e);
        if (p == 2) {
            if (e == 1) continue;
            u.gens.push_back(crt_lift(pe - 1, pe, f));
            u.orders.push_back(Int(2));
            if (e >= 3) {
                u.gens.push_back(crt_lift(Int(5), pe, f));
                u.orders.push_back(pe / 4);
            }
        } else {
            u.gens.push_back(crt_lift(primitive_root(pe, p), pe, f));
            u.orders.push_back(pe / p * (p - 1));
        }
    }
    int r = (int)u.gens.size();
    IntMat rels(r, r);
    for (int i = 0; i < r; i++) rels.at(i, i) = u.orders[(size_t)i];
    u.grp = AbGroup(r, rels);
    return u;
}

std::vector<Int> units_dlog(const UnitsModF& u, const Int& a) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), u.f.get_mpz_t());
    if (g != 1) throw std::invalid_argument("units_dlog: residue not coprime to modulus");
    Int x;
    mpz_fdiv_r(x.get_mpz_t(), a.get_mpz_t(), u.f.get_mpz_t());
    // walk exponent vectors in odometer order until the product matches;
    // group orders stay tiny at the conductors this artifact targets
    std::vector<Int> exps(u.gens.size(), Int(0));
    for (;;) {
        if (units_residue(u, exps) == x) return exps;
        size_t i = u.gens.size();
        for (;;) {
            if (i == 0) throw std::logic_error("units_dlog: exhausted group");
            i--;
            exps[i] += 1;
            if (exps[i] < u.orders[i]) break;
            exps[i] = 0;
        }
    }
}

Int units_residue(const UnitsModF& u, const std::vector<Int>& v) {
    Int prod(1);
    for (size_t i = 0; i < u.gens.size(); i++) {
        Int e;
        mpz_fdiv_r(e.get_mpz_t(), v[i].get_mpz_t(), u.orders[i].get_mpz_t());
        prod = prod * mod_pow(u.gens[i], e, u.f) % u.f;
    }
    return prod % u.f;
}

QExtension q_extension(const Int& f, const std::vector<std::vector<Int>>& kernel_gens) {
    QExtension e;
    e.units = units_mod_f(f);
    e.kernel = kernel_gens;
    int n = e.units.grp.ngens();
    IntMat rels = e.units.grp.relations();
    IntMat all(rels.rows + (int)kernel_gens.size(), n);
    for (int i = 0; i < rels.rows; i++)
        for (int j = 0; j < n; j++) all.at(i, j) = rels.at(i, j);
    for (size_t i = 0; i < kernel_gens.size(); i++) {
        if ((int)kernel_gens[i].size() != n)
            throw std::invalid_argument("q_extension: kernel generator dimension");
        for (int j = 0; j < n; j++) all.at(rels.rows + (int)i, j) = kernel_gens[i][(size_t)j];
    }
    e.gal = AbGroup(n, all);
    return e;
}

std::vector<Int> q_class(const QExtension& e, const Int& a) {
    return e.gal.label(units_dlog(e.units, a));
}

Int q_conductor(const QExtension& e) {
    const Int& f = e.units.f;
    for (Int f0(1); f0 <= f; f0 += 1) {
        if (f % f0 != 0) continue;
        bool ok = true;
        for (Int a(1); a <= f && ok; a += 1) {
            Int g;
            mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), f.get_mpz_t());
            if (g != 1 || a % f0 != 1 % f0) continue;
            std::vector<Int> lab = q_class(e, a);
            for (auto& c : lab)
                if (c != 0) ok = false;
        }
        if (ok) return f0;
    }
    throw std::logic_error("q_conductor: no divisor works");
}

QExtension q_reduce(const QExtension& e, const Int& f0) {
    const Int& f = e.units.f;
    if (f % f0 != 0) throw std::invalid_argument("q_reduce: target does not divide modulus");
    // everything trivial mod f0 must already fix K
    for (Int a(1); a <= f; a += 1) {
        Int g;
        mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), f.get_mpz_t());
        if (g != 1 || a % f0 != 1 % f0) continue;
        std::vector<Int> lab = q_class(e, a);
        for (auto& c : lab)
            if (c != 0) throw std::invalid_argument("q_reduce: conductor does not divide target");
    }
    UnitsModF u0 = units_mod_f(f0);
    std::vector<std::vector<Int>> ker0;
    for (auto& v : e.kernel) ker0.push_back(units_dlog(u0, units_residue(e.units, v) % f0));
    QExtension r = q_extension(f0, ker0);
    if (r.gal.order() != e.gal.order())
        throw std::logic_error("q_reduce: quotient order changed");
    return r;
}

std::vector<Int> q_sigma_inf(const QExtension& e) {
    if (e.units.f <= 2) return e.gal.zero_label();
    return q_class(e, e.units.f - 1);
}

Int q_torsion_w(const QExtension& e, unsigned k) {
    const Int& f = e.units.f;
    // candidate primes: l - 1 must divide k+1 unless l divides f
    std::vector<Int> cands;
    for (auto& [p, ex] : factorize(f)) {
        (void)ex;
        cands.push_back(p);
    }
    for (Int l(2); l <= Int(k) + 2; l += 1) {
        if (mpz_probab_prime_p(l.get_mpz_t(), 40) == 0) continue;
        if (f % l != 0) cands.push_back(l);
    }
    auto holds = [&](const Int& m) {
        Int M;
        mpz_lcm(M.get_mpz_t(), f.get_mpz_t(), m.get_mpz_t());
        for (Int u(1); u <= M; u += 1) {
            Int g;
            mpz_gcd(g.get_mpz_t(), u.get_mpz_t(), M.get_mpz_t());
            if (g != 1) continue;
            std::vector<Int> lab = q_class(e, u % f == 0 ? f : u % f);
            bool trivial = true;
            for (auto& c : lab)
                if (c != 0) trivial = false;
            if (!trivial) continue;
            if (mod_pow(u, Int(k) + 1, m) != 1 % m) return false;
        }
        return true;
    };
    Int w(1);
    for (auto& l : cands) {
        Int m = l;
        while (holds(m)) {
            w *= l;
            m *= l;
        }
    }
    return w;
}

}  // namespace stk
