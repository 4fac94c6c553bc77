#include "stickel/zetaval.hpp"

namespace stk {

Rat partial_zeta_q(const Int& f, const Int& a, unsigned k) {
    if (f <= 0 || a <= 0 || a > f) throw std::invalid_argument("residue out of range");
    Int g;
    mpz_gcd(g.get_mpz_t(), f.get_mpz_t(), a.get_mpz_t());
    if (g != 1) throw std::invalid_argument("residue not coprime to modulus");
    return rat_pow(Rat(f), k) * (-bernoulli_poly_at(k + 1, Rat(a) / Rat(f)) / Rat(k + 1));
}

Rat dedekind_minus1(const Int& D) {
    if (!is_squarefree(D) || D <= 1) throw std::invalid_argument("D not squarefree");
    Int disc = (D % 4 == 1) ? D : 4 * D;
    Rat total(0);
    for (Int b(0); b * b < disc; b += 1) {
        if ((disc - b * b) % 4 != 0) continue;
        Int n = (disc - b * b) / 4;
        Int s1(0);
        for (Int d(1); d <= n; d += 1)
            if (n % d == 0) s1 += d;
        total += Rat(s1) * (b == 0 ? 1 : 2);
    }
    return total / 60;
}

// truncated power series in u with coefficients in Q(sqrt D)
namespace {

struct QSeries {
    std::vector<QuadElem> c;  // c[j] = coefficient of u^j
};

QSeries qs_const(const QuadElem& x, unsigned len) {
    QSeries s;
    s.c.assign(len, QuadElem(Rat(0), Rat(0)));
    s.c[0] = x;
    return s;
}

QSeries qs_mul(const QuadField& f, const QSeries& a, const QSeries& b) {
    unsigned len = (unsigned)a.c.size();
    QSeries out = qs_const(QuadElem(Rat(0), Rat(0)), len);
    for (unsigned i = 0; i < len; ++i)
        for (unsigned j = 0; i + j < len; ++j)
            out.c[i + j] = qadd(out.c[i + j], qmul(f, a.c[i], b.c[j]));
    return out;
}

QSeries qs_inv(const QuadField& f, const QSeries& a) {
    unsigned len = (unsigned)a.c.size();
    if (qnorm(f, a.c[0]) == 0) throw std::invalid_argument("series not invertible");
    QSeries out = qs_const(QuadElem(Rat(0), Rat(0)), len);
    QuadElem inv0 = qdiv(f, QuadElem(Rat(1), Rat(0)), a.c[0]);
    out.c[0] = inv0;
    for (unsigned j = 1; j < len; ++j) {
        QuadElem acc(Rat(0), Rat(0));
        for (unsigned i = 1; i <= j; ++i) acc = qadd(acc, qmul(f, a.c[i], out.c[j - i]));
        out.c[j] = qmul(f, QuadElem(Rat(-1), Rat(0)), qmul(f, inv0, acc));
    }
    return out;
}

// b_n(x) = B_n(1 - x) / n!
Rat shintani_b(unsigned n, const Rat& x) {
    return bernoulli_poly_at(n, Rat(1) - x) / Rat(factorial(n));
}

}  // namespace

Rat cone_zeta_value(const QuadField& f, const QuadElem& v1, const QuadElem& v2,
                    const Rat& x1, const Rat& x2, unsigned k) {
    if (!totally_positive(f, v1) || !totally_positive(f, v2))
        throw std::invalid_argument("cone generators must be totally positive");
    if (x1 <= 0 || x1 > 1 || x2 <= 0 || x2 > 1)
        throw std::invalid_argument("cone shift outside (0,1]^2");
    unsigned len = k + 1;
    // c_i(u) = v_i^(1) + u v_i^(2); the second embedding order contributes the
    // conjugate coefficient, so summing both orders takes the trace
    auto lin = [&](const QuadElem& v) {
        QSeries s = qs_const(v, len);
        QuadElem vc = qconj(v);
        if (len > 1) s.c[1] = vc;
        // first embedding: coefficients (v^(1), v^(2)) as the pair (v, conj v)
        return s;
    };
    QSeries c1 = lin(v1), c2 = lin(v2);
    std::vector<QSeries> p1(2 * k + 4, qs_const(QuadElem(Rat(1), Rat(0)), len));
    std::vector<QSeries> p2 = p1;
    p1[0] = qs_inv(f, c1);
    p2[0] = qs_inv(f, c2);
    for (unsigned j = 2; j < 2 * k + 4; ++j) {
        p1[j] = qs_mul(f, p1[j - 1], c1);
        p2[j] = qs_mul(f, p2[j - 1], c2);
    }
    // p_i[j] = c_i^{j-1}
    QuadElem coeff(Rat(0), Rat(0));
    for (unsigned n1 = 0; n1 <= 2 * k + 2; ++n1) {
        unsigned n2 = 2 * k + 2 - n1;
        Rat b = shintani_b(n1, x1) * shintani_b(n2, x2);
        if (b == 0) continue;
        QSeries term = qs_mul(f, p1[n1], p2[n2]);
        coeff = qadd(coeff, qmul(f, QuadElem(b, Rat(0)), term.c[k]));
    }
    // (k!)^2/2 * trace(coeff)
    Rat kf(factorial(k));
    return kf * kf * coeff.a;
}

Rat ray_zeta_value(const QuadField& f, const QuadElem& g, const Rat& x0, unsigned k) {
    if (!totally_positive(f, g)) throw std::invalid_argument("ray generator must be totally positive");
    if (x0 <= 0 || x0 > 1) throw std::invalid_argument("ray shift outside (0,1]");
    return rat_pow(qnorm(f, g), k) * (-bernoulli_poly_at(2 * k + 1, x0) / Rat(2 * k + 1));
}

Rat partial_zeta_quad(const RayClassGroup& rg, const std::vector<Int>& label, unsigned k,
                      int unit_power) {
    const QuadField& f = rg.field;
    if (unit_power < 1) throw std::invalid_argument("unit power must be positive");
    // integral representative of the inverse class, coprime to the modulus
    Ideal c = class_representative(rg, rg.grp.neg(rg.grp.rep(label)));
    QuadElem eps = qpow(f, ray_unit(f, rg.mod), unit_power);
    // lattice of the coset: v0 + c*m with v0 in c, v0 = 1 mod m
    Ideal L = ideal_mul(f, c, rg.mod);
    QuadElem v0 = idempotent_split(f, c, rg.mod);
    const Int& A = L.hnf.at(0, 0);
    const Int& B = L.hnf.at(0, 1);
    const Int& C = L.hnf.at(1, 1);
    Int gBC;
    mpz_gcd(gBC.get_mpz_t(), B.get_mpz_t(), C.get_mpz_t());
    // g1: generator of L on the rational ray (coords (c1,0))
    Int c1 = A * (C / gBC);
    QuadElem g1(Rat(c1), Rat(0));
    // g2: smallest positive multiple of eps lying in L
    auto [ep, eq] = omega_coords(f, eps);
    Int p = ep.get_num(), q = eq.get_num();
    Int d0;
    mpz_gcd(d0.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
    Int pp = p / d0, qq = q / d0;
    Int mmax = A * C;  // the index [O : L] bounds the search
    QuadElem g2;
    bool found = false;
    for (Int mm(1); mm <= mmax; mm += 1)
        if (lattice_contains(L.hnf, {mm * pp, mm * qq})) {
            g2 = from_omega_coords(f, Rat(mm * pp), Rat(mm * qq));
            found = true;
            break;
        }
    if (!found) throw std::runtime_error("no lattice point on the unit ray");
    // enumerate coset points in the half-open parallelepiped (0,1]^2 on (g1,g2)
    auto [g2u, g2v] = omega_coords(f, g2);
    RatMat gm(2, 2);
    gm.at(0, 0) = Rat(c1);
    gm.at(0, 1) = Rat(0);
    gm.at(1, 0) = g2u;
    gm.at(1, 1) = g2v;
    auto [u0, w0] = omega_coords(f, v0);
    // one coset point per class of L / <g1, g2>, folded into the half-open
    // parallelepiped by reducing both parallelepiped coordinates into (0,1]
    auto lcoords = [&](const Rat& zu, const Rat& zv) {
        // integer coordinates w.r.t. the rows (A,B), (0,C)
        Rat x = zu / Rat(A);
        Rat y = (zv - x * Rat(B)) / Rat(C);
        if (x.get_den() != 1 || y.get_den() != 1)
            throw std::runtime_error("point not in coset lattice");
        return std::pair<Int, Int>(x.get_num(), y.get_num());
    };
    auto [s00, s01] = lcoords(Rat(c1), Rat(0));
    auto [s10, s11] = lcoords(g2u, g2v);
    IntMat sm(2, 2);
    sm.at(0, 0) = s00;
    sm.at(0, 1) = s01;
    sm.at(1, 0) = s10;
    sm.at(1, 1) = s11;
    IntMat sh = hnf(sm).h;
    auto frac01 = [](const Rat& t) {  // representative of t + Z in (0,1]
        Rat r = t - Rat(rat_floor(t));
        return r == 0 ? Rat(1) : r;
    };
    Rat total(0);
    for (Int i(0); i < sh.at(0, 0); i += 1)
        for (Int j(0); j < sh.at(1, 1); j += 1) {
            Rat zu = u0 + Rat(i) * Rat(A);
            Rat zv = w0 + Rat(i) * Rat(B) + Rat(j) * Rat(C);
            auto ab = rat_solve_left(gm, {zu, zv});
            total += cone_zeta_value(f, g1, g2, frac01(ab[0]), frac01(ab[1]), k);
        }
    // coset points on the rational ray: second omega-coordinate zero
    // w0 + x*B + y*C = 0 solvable iff gcd(B,C) | w0
    Int w0i = w0.get_num();
    if (w0i % gBC == 0) {
        // find one solution of x*B = -w0 (mod C), then the first coordinates
        // form a progression of step c1
        Int Bg = B / gBC, Cg = C / gBC, Wg = w0i / gBC, inv;
        if (Cg == 1) {
            inv = 0;
        } else if (mpz_invert(inv.get_mpz_t(), Bg.get_mpz_t(), Cg.get_mpz_t()) == 0) {
            throw std::runtime_error("ray congruence not invertible");
        }
        Int xs = (-Wg * inv) % Cg;
        Rat t0 = (u0 + Rat(xs) * Rat(A)) / Rat(c1);
        // shift t0 into (0,1]: the progression is t0 + Z
        Rat frac = t0 - Rat(rat_floor(t0));
        if (frac == 0) frac = 1;
        total += ray_zeta_value(f, g1, frac, k);
    }
    Rat nc = ideal_norm(c);
    return total / rat_pow(nc, k) / Rat(unit_power);
}

}  // namespace stk
