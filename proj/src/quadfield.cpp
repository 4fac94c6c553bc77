#include "stickel/quadfield.hpp"

#include <algorithm>
#include <cmath>

namespace stk {

QuadElem qadd(const QuadElem& x, const QuadElem& y) { return {x.a + y.a, x.b + y.b}; }
QuadElem qsub(const QuadElem& x, const QuadElem& y) { return {x.a - y.a, x.b - y.b}; }

QuadElem qmul(const QuadField& f, const QuadElem& x, const QuadElem& y) {
    return {x.a * y.a + x.b * y.b * Rat(f.D), x.a * y.b + x.b * y.a};
}

QuadElem qconj(const QuadElem& x) { return {x.a, -x.b}; }
Rat qnorm(const QuadField& f, const QuadElem& x) { return x.a * x.a - x.b * x.b * Rat(f.D); }
Rat qtrace(const QuadElem& x) { return 2 * x.a; }

QuadElem qdiv(const QuadField& f, const QuadElem& x, const QuadElem& y) {
    Rat n = qnorm(f, y);
    if (n == 0) throw std::invalid_argument("division by zero");
    QuadElem z = qmul(f, x, qconj(y));
    return {z.a / n, z.b / n};
}

QuadElem qpow(const QuadField& f, QuadElem x, long e) {
    if (e < 0) {
        x = qdiv(f, QuadElem(Rat(1), Rat(0)), x);
        e = -e;
    }
    QuadElem r(Rat(1), Rat(0));
    while (e > 0) {
        if (e & 1) r = qmul(f, r, x);
        x = qmul(f, x, x);
        e >>= 1;
    }
    return r;
}

int qsign(const QuadField& f, const QuadElem& x) {
    int sa = sgn(x.a), sb = sgn(x.b);
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // sign of a + b*sqrt(D) with a, b of opposite signs: compare a^2 vs b^2 D
    int c = cmp(x.a * x.a, x.b * x.b * Rat(f.D));
    if (c == 0) return 0;
    return c > 0 ? sa : sb;
}

bool totally_positive(const QuadField& f, const QuadElem& x) {
    return qsign(f, x) > 0 && qsign(f, qconj(x)) > 0;
}

Int qfloor(const QuadField& f, const QuadElem& x) {
    double approx = mpq_get_d(x.a.get_mpq_t()) +
                    mpq_get_d(x.b.get_mpq_t()) * std::sqrt(mpz_get_d(f.D.get_mpz_t()));
    Int n(static_cast<long>(std::floor(approx)));
    auto above = [&](const Int& m) {  // x >= m ?
        return qsign(f, {x.a - Rat(m), x.b}) >= 0;
    };
    while (!above(n)) n -= 1;
    while (above(n + 1)) n += 1;
    return n;
}

std::pair<Rat, Rat> omega_coords(const QuadField& f, const QuadElem& x) {
    if (f.d1mod4) return {x.a - x.b, 2 * x.b};
    return {x.a, x.b};
}

QuadElem from_omega_coords(const QuadField& f, const Rat& u, const Rat& v) {
    return {u + v * f.omega.a, v * f.omega.b};
}

bool is_integral(const QuadField& f, const QuadElem& x) {
    auto [u, v] = omega_coords(f, x);
    return u.get_den() == 1 && v.get_den() == 1;
}

static QuadElem fundamental_unit(const QuadField& f, int& norm_out) {
    // continued fraction of omega; units arise as p - q * conj(omega)
    QuadElem alpha = f.omega;
    QuadElem wbar = qconj(f.omega);
    Int p0(0), p1(1), q0(1), q1(0);
    for (int it = 0; it < 1000; ++it) {
        Int a = qfloor(f, alpha);
        Int p = a * p1 + p0, q = a * q1 + q0;
        p0 = p1; p1 = p; q0 = q1; q1 = q;
        QuadElem eps = qsub(QuadElem(Rat(p), Rat(0)), qmul(f, QuadElem(Rat(q), Rat(0)), wbar));
        Rat n = qnorm(f, eps);
        if ((n == 1 || n == -1) && qsign(f, qsub(eps, QuadElem(Rat(1), Rat(0)))) > 0) {
            norm_out = (n == 1) ? 1 : -1;
            return eps;
        }
        QuadElem frac = qsub(alpha, QuadElem(Rat(a), Rat(0)));
        alpha = qdiv(f, QuadElem(Rat(1), Rat(0)), frac);
    }
    throw std::runtime_error("fundamental unit search did not terminate");
}

QuadField field_init(const Int& D) {
    if (D <= 1) throw std::invalid_argument("D must exceed 1");
    if (!is_squarefree(D)) throw std::invalid_argument("D not squarefree");
    QuadField f;
    f.D = D;
    f.d1mod4 = (D % 4 == 1);
    f.disc = f.d1mod4 ? D : 4 * D;
    f.omega = f.d1mod4 ? QuadElem(Rat(1) / Rat(2), Rat(1) / Rat(2)) : QuadElem(Rat(0), Rat(1));
    f.eps0 = fundamental_unit(f, f.eps0_norm);
    return f;
}

static Ideal normalize_ideal(IntMat h, Int den) {
    if (den < 0) { den = -den; for (auto& e : h.a) e = -e; }
    Int g = den;
    for (auto& e : h.a) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.get_mpz_t());
    if (g > 1) {
        den /= g;
        for (auto& e : h.a) e /= g;
    }
    Ideal out;
    out.hnf = hnf(h).h;
    out.den = den;
    return out;
}

Ideal ideal_whole(const QuadField&) {
    Ideal a;
    a.hnf = IntMat::identity(2);
    a.den = 1;
    return a;
}

Ideal ideal_from_gens(const QuadField& f, const std::vector<QuadElem>& gens) {
    std::vector<std::pair<Rat, Rat>> rows;
    for (const auto& g : gens) {
        rows.push_back(omega_coords(f, g));
        rows.push_back(omega_coords(f, qmul(f, g, f.omega)));
    }
    Int den(1);
    for (auto& [u, v] : rows) {
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), u.get_den().get_mpz_t());
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.get_den().get_mpz_t());
    }
    IntMat m(static_cast<int>(rows.size()), 2);
    for (int i = 0; i < m.rows; ++i) {
        Rat u = rows[i].first * Rat(den), v = rows[i].second * Rat(den);
        m.at(i, 0) = u.get_num();
        m.at(i, 1) = v.get_num();
    }
    IntMat h = hnf_basis(m);
    if (h.rows != 2) throw std::invalid_argument("ideal must be nonzero");
    return normalize_ideal(h, den);
}

Ideal ideal_principal(const QuadField& f, const QuadElem& x) {
    return ideal_from_gens(f, {x});
}

std::array<QuadElem, 2> ideal_basis(const QuadField& f, const Ideal& a) {
    Rat d(a.den);
    return {from_omega_coords(f, Rat(a.hnf.at(0, 0)) / d, Rat(a.hnf.at(0, 1)) / d),
            from_omega_coords(f, Rat(a.hnf.at(1, 0)) / d, Rat(a.hnf.at(1, 1)) / d)};
}

Ideal ideal_mul(const QuadField& f, const Ideal& a, const Ideal& b) {
    auto ba = ideal_basis(f, a), bb = ideal_basis(f, b);
    std::vector<QuadElem> gens;
    for (const auto& x : ba)
        for (const auto& y : bb) gens.push_back(qmul(f, x, y));
    return ideal_from_gens(f, gens);
}

Rat ideal_norm(const Ideal& a) {
    Int d = a.hnf.at(0, 0) * a.hnf.at(1, 1);
    return Rat(abs(d)) / (Rat(a.den) * Rat(a.den));
}

Ideal ideal_inv(const QuadField& f, const Ideal& a) {
    // a * conj(a) = N(a) * O, so a^{-1} = conj(a) / N(a)
    Rat n = ideal_norm(a);
    auto ba = ideal_basis(f, a);
    QuadElem c0 = qconj(ba[0]), c1 = qconj(ba[1]);
    return ideal_from_gens(f, {{c0.a / n, c0.b / n}, {c1.a / n, c1.b / n}});
}

Ideal ideal_add(const QuadField& f, const Ideal& a, const Ideal& b) {
    auto ba = ideal_basis(f, a), bb = ideal_basis(f, b);
    return ideal_from_gens(f, {ba[0], ba[1], bb[0], bb[1]});
}

Ideal ideal_pow(const QuadField& f, const Ideal& a, long e) {
    Ideal base = e < 0 ? ideal_inv(f, a) : a;
    unsigned long k = e < 0 ? -static_cast<unsigned long>(e) : static_cast<unsigned long>(e);
    Ideal r = ideal_whole(f);
    while (k > 0) {
        if (k & 1) r = ideal_mul(f, r, base);
        base = ideal_mul(f, base, base);
        k >>= 1;
    }
    return r;
}

bool ideal_equal(const Ideal& a, const Ideal& b) { return a.den == b.den && a.hnf == b.hnf; }

bool ideal_contains(const QuadField& f, const Ideal& a, const QuadElem& x) {
    auto [u, v] = omega_coords(f, x);
    Rat su = u * Rat(a.den), sv = v * Rat(a.den);
    if (su.get_den() != 1 || sv.get_den() != 1) return false;
    return lattice_contains(a.hnf, {su.get_num(), sv.get_num()});
}

bool ideal_is_integral(const Ideal& a) { return a.den == 1; }

bool ideal_divides(const QuadField& f, const Ideal& a, const Ideal& b) {
    // a | b  <=>  b subset a  <=>  b * a^{-1} integral
    return ideal_is_integral(ideal_mul(f, b, ideal_inv(f, a)));
}

bool ideals_coprime(const QuadField& f, const Ideal& a, const Ideal& b) {
    return ideal_equal(ideal_add(f, a, b), ideal_whole(f));
}

std::vector<PrimeFactor> prime_split(const QuadField& f, const Int& p) {
    // omega satisfies x^2 - t*x - n with t = Tr(omega), n = -N(omega)
    Int t = f.d1mod4 ? 1 : 0;
    Int n = f.d1mod4 ? (f.D - 1) / 4 : f.D;
    QuadElem pe(Rat(p), Rat(0));
    std::vector<PrimeFactor> out;
    int kron = mpz_kronecker(f.disc.get_mpz_t(), p.get_mpz_t());
    if (kron == -1) {
        PrimeFactor pf;
        pf.ideal = ideal_principal(f, pe);
        pf.res_deg = 2;
        pf.ram_idx = 1;
        out.push_back(pf);
        return out;
    }
    std::vector<Int> roots;
    for (Int r(0); r < p; r += 1)
        if ((r * r - t * r - n) % p == 0) roots.push_back(r);
    for (const Int& r : roots) {
        QuadElem gen = qsub(f.omega, QuadElem(Rat(r), Rat(0)));
        PrimeFactor pf;
        pf.ideal = ideal_from_gens(f, {pe, gen});
        pf.res_deg = 1;
        pf.ram_idx = (kron == 0) ? 2 : 1;
        out.push_back(pf);
    }
    if (kron == 0 && out.size() != 1) throw std::runtime_error("ramified split inconsistent");
    if (kron == 1 && out.size() != 2) throw std::runtime_error("split factorization inconsistent");
    return out;
}

std::vector<std::pair<Ideal, int>> ideal_factor(const QuadField& f, const Ideal& a) {
    if (!ideal_is_integral(a)) throw std::invalid_argument("ideal_factor requires an integral ideal");
    std::vector<std::pair<Ideal, int>> out;
    Rat nr = ideal_norm(a);
    Ideal rem = a;
    for (auto& [p, e] : factorize(nr.get_num())) {
        (void)e;
        for (const auto& pf : prime_split(f, p)) {
            int v = 0;
            while (ideal_divides(f, pf.ideal, rem)) {
                rem = ideal_mul(f, rem, ideal_inv(f, pf.ideal));
                ++v;
            }
            if (v > 0) out.push_back({pf.ideal, v});
        }
    }
    if (!ideal_equal(rem, ideal_whole(f))) throw std::runtime_error("ideal factorization incomplete");
    return out;
}

std::vector<Ideal> ideals_of_norm(const QuadField& f, const Int& n) {
    if (n <= 0) return {};
    std::vector<Ideal> out{ideal_whole(f)};
    for (auto& [p, e] : factorize(n)) {
        auto split = prime_split(f, p);
        // all ideals supported above p with norm p^e
        std::vector<Ideal> local;
        if (split.size() == 1 && split[0].res_deg == 2) {
            if (e % 2 == 0) local.push_back(ideal_pow(f, split[0].ideal, e / 2));
        } else if (split.size() == 1) {
            local.push_back(ideal_pow(f, split[0].ideal, e));
        } else {
            for (int i = 0; i <= e; ++i)
                local.push_back(ideal_mul(f, ideal_pow(f, split[0].ideal, i),
                                          ideal_pow(f, split[1].ideal, e - i)));
        }
        std::vector<Ideal> next;
        for (const auto& a : out)
            for (const auto& b : local) next.push_back(ideal_mul(f, a, b));
        out = std::move(next);
    }
    return out;
}

std::vector<Ideal> ideals_norm_upto(const QuadField& f, const Int& n) {
    std::vector<Ideal> out;
    for (Int k(1); k <= n; k += 1)
        for (auto& a : ideals_of_norm(f, k)) out.push_back(a);
    return out;
}

static double q_to_d(const Rat& q) { return mpq_get_d(q.get_mpq_t()); }

static double emb_d(const QuadField& f, const QuadElem& x, int which) {
    double s = std::sqrt(mpz_get_d(f.D.get_mpz_t()));
    return q_to_d(x.a) + (which == 0 ? 1.0 : -1.0) * q_to_d(x.b) * s;
}

static bool abs_emb_le(const QuadField& f, const QuadElem& x, const Rat& bound, int which) {
    QuadElem y = which == 0 ? x : qconj(x);
    // |y| <= bound  <=>  bound - y >= 0 and bound + y >= 0
    return qsign(f, {Rat(bound) - y.a, -y.b}) >= 0 && qsign(f, {Rat(bound) + y.a, y.b}) >= 0;
}

std::vector<QuadElem> ideal_box(const QuadField& f, const Ideal& a, const Rat& b1, const Rat& b2) {
    auto bas = ideal_basis(f, a);
    // invert the real embedding matrix numerically to bound the coordinates,
    // then filter exactly
    double e00 = emb_d(f, bas[0], 0), e01 = emb_d(f, bas[0], 1);
    double e10 = emb_d(f, bas[1], 0), e11 = emb_d(f, bas[1], 1);
    double det = e00 * e11 - e01 * e10;
    double db1 = q_to_d(b1), db2 = q_to_d(b2);
    double m_bound = (std::abs(e11) * db1 + std::abs(e10) * db2) / std::abs(det);
    double n_bound = (std::abs(e01) * db1 + std::abs(e00) * db2) / std::abs(det);
    long M = static_cast<long>(std::floor(m_bound)) + 2;
    long N = static_cast<long>(std::floor(n_bound)) + 2;
    std::vector<QuadElem> out;
    for (long m = -M; m <= M; ++m)
        for (long n = -N; n <= N; ++n) {
            QuadElem x = qadd(qmul(f, QuadElem(Rat(Int(m)), Rat(0)), bas[0]),
                              qmul(f, QuadElem(Rat(Int(n)), Rat(0)), bas[1]));
            if (abs_emb_le(f, x, b1, 0) && abs_emb_le(f, x, b2, 1)) out.push_back(x);
        }
    return out;
}

QuadElem idempotent_split(const QuadField& f, const Ideal& a, const Ideal& b) {
    if (!ideal_is_integral(a) || !ideal_is_integral(b))
        throw std::invalid_argument("idempotent_split requires integral ideals");
    if (!ideals_coprime(f, a, b)) throw std::invalid_argument("ideals not coprime");
    IntMat stk = vstack(a.hnf, b.hnf);
    HnfResult hr = hnf(stk);
    // the row of the Hermite form equal to (1, 0) is the element 1 = c + d
    // with c in a, d in b
    for (int i = 0; i < hr.h.rows; ++i) {
        if (hr.h.at(i, 0) == 1 && hr.h.at(i, 1) == 0) {
            Rat u(0), v(0);
            for (int j = 0; j < 2; ++j) {
                u += Rat(hr.transform.at(i, j)) * Rat(a.hnf.at(j, 0));
                v += Rat(hr.transform.at(i, j)) * Rat(a.hnf.at(j, 1));
            }
            QuadElem c = from_omega_coords(f, u, v);
            if (!ideal_contains(f, a, c)) throw std::runtime_error("split element not in ideal");
            if (!ideal_contains(f, b, qsub(c, QuadElem(Rat(1), Rat(0)))))
                throw std::runtime_error("split element not 1 mod complement");
            return c;
        }
    }
    throw std::runtime_error("idempotent split failed");
}

std::optional<QuadElem> principal_gen(const QuadField& f, const Ideal& a) {
    // scale to an integral ideal; any generator can be unit-normalized into
    // sqrt(N) <= x^(1) <= sqrt(N) * eps0, |x^(2)| <= sqrt(N)
    Ideal ai;
    ai.hnf = a.hnf;
    ai.den = 1;
    Int nrm = ideal_norm(ai).get_num();
    Int s;
    mpz_sqrt(s.get_mpz_t(), nrm.get_mpz_t());
    s += 1;
    double ed = emb_d(f, f.eps0, 0);
    Int ec(static_cast<long>(std::ceil(ed)) + 1);
    Rat b1 = Rat(s) * Rat(ec), b2 = Rat(s);
    for (const auto& x : ideal_box(f, ai, b1, b2)) {
        if (x.a == 0 && x.b == 0) continue;
        Rat n = qnorm(f, x);
        if (abs(n.get_num()) != nrm || n.get_den() != 1) continue;
        if (ideal_equal(ideal_principal(f, x), ai)) {
            Rat d(a.den);
            return QuadElem(x.a / d, x.b / d);
        }
    }
    return std::nullopt;
}

std::optional<QuadElem> narrow_principal_gen(const QuadField& f, const Ideal& a) {
    auto g = principal_gen(f, a);
    if (!g) return std::nullopt;
    std::vector<QuadElem> cands{*g, qsub(QuadElem(Rat(0), Rat(0)), *g)};
    QuadElem ge = qmul(f, *g, f.eps0);
    cands.push_back(ge);
    cands.push_back(qsub(QuadElem(Rat(0), Rat(0)), ge));
    for (const auto& c : cands)
        if (totally_positive(f, c)) return c;
    return std::nullopt;
}

}  // namespace stk
