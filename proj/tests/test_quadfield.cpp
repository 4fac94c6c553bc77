#include "doctest.h"

#include <map>
#include <random>

#include "stickel/bernoulli.hpp"
#include "stickel/quadfield.hpp"

using namespace stk;

// Pell-style oracle: smallest unit > 1 by brute force over omega-coordinates
static QuadElem unit_oracle(const QuadField& f, long coord_bound) {
    QuadElem best(Rat(0), Rat(0));
    bool found = false;
    for (long u = -coord_bound; u <= coord_bound; ++u)
        for (long v = -coord_bound; v <= coord_bound; ++v) {
            QuadElem x = from_omega_coords(f, Rat(Int(u)), Rat(Int(v)));
            Rat n = qnorm(f, x);
            if (n != 1 && n != -1) continue;
            if (qsign(f, qsub(x, QuadElem(Rat(1), Rat(0)))) <= 0) continue;
            if (!found || qsign(f, qsub(best, x)) > 0) {
                best = x;
                found = true;
            }
        }
    REQUIRE(found);
    return best;
}

// Legendre symbol by brute-force search for square roots mod p
static int legendre_oracle(const Int& a, const Int& p) {
    Int r = ((a % p) + p) % p;
    if (r == 0) return 0;
    for (Int x(0); x < p; x += 1)
        if ((x * x - r) % p == 0) return 1;
    return -1;
}

TEST_CASE("bernoulli numbers and polynomials") {
    CHECK(bernoulli_number(0) == 1);
    CHECK(bernoulli_number(1) == Rat(-1) / Rat(2));
    CHECK(bernoulli_number(2) == Rat(1) / Rat(6));
    CHECK(bernoulli_number(3) == 0);
    CHECK(bernoulli_number(4) == Rat(-1) / Rat(30));
    CHECK(bernoulli_number(12) == Rat(-691) / Rat(2730));
    // recurrence oracle: sum_{k<n} C(n,k) B_k = 0 for n >= 2
    for (unsigned n = 2; n <= 20; ++n) {
        Rat s(0);
        for (unsigned k = 0; k < n; ++k) s += Rat(binom_int(Int(n), k)) * bernoulli_number(k);
        CHECK(s == 0);
    }
    // B_n(x+1) - B_n(x) = n x^{n-1} at sample points
    for (unsigned n = 1; n <= 8; ++n)
        for (int x = -3; x <= 3; ++x) {
            Rat lhs = bernoulli_poly_at(n, Rat(x + 1)) - bernoulli_poly_at(n, Rat(x));
            CHECK(lhs == Rat(n) * rat_pow(Rat(x), n - 1));
        }
    CHECK(bernoulli_poly_at(3, Rat(1) / Rat(2)) == 0);
}

TEST_CASE("fundamental units match spec examples and Pell oracle") {
    auto f5 = field_init(Int(5));
    CHECK(f5.eps0 == QuadElem(Rat(1) / Rat(2), Rat(1) / Rat(2)));
    CHECK(f5.eps0_norm == -1);

    auto f2 = field_init(Int(2));
    CHECK(f2.eps0 == QuadElem(Rat(1), Rat(1)));
    CHECK(f2.eps0_norm == -1);

    auto f3 = field_init(Int(3));
    CHECK(f3.eps0 == QuadElem(Rat(2), Rat(1)));
    CHECK(f3.eps0_norm == 1);

    for (long D : {2, 3, 5, 6, 7, 10, 11, 13, 14, 15, 17, 19, 21, 29, 33}) {
        auto f = field_init(Int(D));
        // box sized to cover the claimed unit; the oracle then certifies that
        // no smaller unit > 1 exists with coordinates in that box
        auto [cu, cv] = omega_coords(f, f.eps0);
        Int cb = std::max({Int(abs(cu.get_num())), Int(abs(cv.get_num())), Int(10)}) + 1;
        QuadElem oracle = unit_oracle(f, cb.get_si());
        CHECK(f.eps0 == oracle);
        Rat n = qnorm(f, f.eps0);
        CHECK((n == 1 || n == -1));
        CHECK(n == Rat(f.eps0_norm));
    }
    CHECK_THROWS_WITH(field_init(Int(12)), "D not squarefree");
}

TEST_CASE("element arithmetic, signs, floors") {
    auto f = field_init(Int(13));
    QuadElem x(Rat(3) / Rat(2), Rat(1) / Rat(2));  // (3+sqrt(13))/2
    CHECK(qnorm(f, x) == -1);
    CHECK(qtrace(x) == 3);
    CHECK(qmul(f, x, qconj(x)) == QuadElem(Rat(-1), Rat(0)));
    CHECK(qdiv(f, QuadElem(Rat(1), Rat(0)), x) == qmul(f, qconj(x), QuadElem(Rat(-1), Rat(0))));
    CHECK(qpow(f, x, 2) == qmul(f, x, x));
    CHECK(qpow(f, x, -1) == qdiv(f, QuadElem(Rat(1), Rat(0)), x));
    CHECK(qsign(f, x) == 1);
    CHECK(qsign(f, qconj(x)) == -1);
    CHECK_FALSE(totally_positive(f, x));
    CHECK(totally_positive(f, qmul(f, x, x)));
    CHECK(qfloor(f, x) == 3);              // (3+sqrt13)/2 = 3.30...
    CHECK(qfloor(f, qconj(x)) == -1);      // (3-sqrt13)/2 = -0.30...
    CHECK(qfloor(f, QuadElem(Rat(7), Rat(0))) == 7);
    CHECK(qfloor(f, QuadElem(Rat(-7) / Rat(2), Rat(0))) == -4);
    // omega coordinates round trip
    auto [u, v] = omega_coords(f, x);
    CHECK(from_omega_coords(f, u, v) == x);
    CHECK(u == 1);
    CHECK(v == 1);
    CHECK(is_integral(f, x));
    CHECK_FALSE(is_integral(f, QuadElem(Rat(1) / Rat(2), Rat(0))));
}

TEST_CASE("prime splitting versus the Legendre oracle") {
    for (long D : {2, 3, 5, 13, 17, 21}) {
        auto f = field_init(Int(D));
        for (long p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29}) {
            Int P(p);
            auto split = prime_split(f, P);
            int kron = (p == 2) ? mpz_kronecker(f.disc.get_mpz_t(), P.get_mpz_t())
                                : legendre_oracle(f.disc, P);
            if (p != 2) CHECK(mpz_kronecker(f.disc.get_mpz_t(), P.get_mpz_t()) == kron);
            if (kron == -1) {
                REQUIRE(split.size() == 1);
                CHECK(split[0].res_deg == 2);
                CHECK(ideal_norm(split[0].ideal) == Rat(P) * Rat(P));
            } else if (kron == 0) {
                REQUIRE(split.size() == 1);
                CHECK(split[0].ram_idx == 2);
                CHECK(ideal_norm(split[0].ideal) == Rat(P));
                CHECK(ideal_equal(ideal_pow(f, split[0].ideal, 2), ideal_principal(f, QuadElem(Rat(P), Rat(0)))));
            } else {
                REQUIRE(split.size() == 2);
                CHECK(ideal_norm(split[0].ideal) == Rat(P));
                CHECK(ideal_norm(split[1].ideal) == Rat(P));
                CHECK_FALSE(ideal_equal(split[0].ideal, split[1].ideal));
                CHECK(ideal_equal(ideal_mul(f, split[0].ideal, split[1].ideal),
                                  ideal_principal(f, QuadElem(Rat(P), Rat(0)))));
            }
            // product over the splitting always recovers (p)
            Ideal prod = ideal_whole(f);
            for (auto& pf : split) prod = ideal_mul(f, prod, ideal_pow(f, pf.ideal, pf.ram_idx));
            CHECK(ideal_equal(prod, ideal_principal(f, QuadElem(Rat(P), Rat(0)))));
        }
    }
    // spec examples over Q(sqrt 5)
    auto f5 = field_init(Int(5));
    CHECK(prime_split(f5, Int(11)).size() == 2);
    CHECK(prime_split(f5, Int(2))[0].res_deg == 2);
    CHECK(prime_split(f5, Int(5))[0].ram_idx == 2);
}

TEST_CASE("ideal arithmetic: norms multiplicative, inverses, membership") {
    std::mt19937_64 rng(7);
    for (long D : {2, 5, 13, 17}) {
        auto f = field_init(Int(D));
        auto rand_elem = [&](int span) {
            return from_omega_coords(f, Rat(Int((long)(rng() % (2 * span)) - span)),
                                     Rat(Int((long)(rng() % (2 * span)) - span)));
        };
        for (int trial = 0; trial < 125; ++trial) {
            QuadElem x = rand_elem(8), y = rand_elem(8);
            if (qnorm(f, x) == 0 || qnorm(f, y) == 0) continue;
            Ideal a = ideal_from_gens(f, {x, rand_elem(8)});
            Ideal b = ideal_from_gens(f, {y, rand_elem(8)});
            Ideal ab = ideal_mul(f, a, b);
            CHECK(ideal_norm(ab) == ideal_norm(a) * ideal_norm(b));
            CHECK(ideal_equal(ideal_mul(f, a, ideal_inv(f, a)), ideal_whole(f)));
            // membership: products of the generators lie in the product ideal
            CHECK(ideal_contains(f, ab, qmul(f, x, y)));
            CHECK(ideal_divides(f, a, ab));
            CHECK(ideal_divides(f, b, ab));
            // principal ideal of a product = product of principal ideals
            CHECK(ideal_equal(ideal_principal(f, qmul(f, x, y)),
                              ideal_mul(f, ideal_principal(f, x), ideal_principal(f, y))));
        }
    }
}

TEST_CASE("ideal factorization and enumeration by norm") {
    for (long D : {5, 13, 17}) {
        auto f = field_init(Int(D));
        for (const auto& a : ideals_norm_upto(f, Int(30))) {
            auto fac = ideal_factor(f, a);
            Ideal prod = ideal_whole(f);
            for (auto& [p, e] : fac) prod = ideal_mul(f, prod, ideal_pow(f, p, e));
            CHECK(ideal_equal(prod, a));
        }
        // count of ideals of norm n equals sum over the Dedekind zeta coefficients:
        // cross-check small multiplicative structure directly for split/inert/ramified primes
        for (long p : {2, 3, 5, 7, 11, 13}) {
            int kron = mpz_kronecker(f.disc.get_mpz_t(), Int(p).get_mpz_t());
            size_t expect = kron == 1 ? 2 : 1;
            CHECK(ideals_of_norm(f, Int(p)).size() == (kron == -1 ? 0 : expect));
        }
    }
}

TEST_CASE("principal generators and coprime splitting") {
    auto f = field_init(Int(5));
    QuadElem x = from_omega_coords(f, Rat(3), Rat(1));
    auto g = principal_gen(f, ideal_principal(f, x));
    REQUIRE(g.has_value());
    CHECK(ideal_equal(ideal_principal(f, *g), ideal_principal(f, x)));
    auto ng = narrow_principal_gen(f, ideal_principal(f, x));
    REQUIRE(ng.has_value());
    CHECK(totally_positive(f, *ng));

    // Q(sqrt 10) has class number 2: the prime over 2 is not principal
    auto f10 = field_init(Int(10));
    auto p2 = prime_split(f10, Int(2))[0].ideal;
    CHECK_FALSE(principal_gen(f10, p2).has_value());
    CHECK(principal_gen(f10, ideal_pow(f10, p2, 2)).has_value());

    for (long D : {5, 13}) {
        auto fd = field_init(Int(D));
        auto p2d = prime_split(fd, Int(2))[0].ideal;  // inert when D=5,13
        auto p3 = prime_split(fd, Int(3))[0].ideal;
        QuadElem c = idempotent_split(fd, p2d, p3);
        CHECK(ideal_contains(fd, p2d, c));
        CHECK(ideal_contains(fd, p3, qsub(c, QuadElem(Rat(1), Rat(0)))));
    }
}
