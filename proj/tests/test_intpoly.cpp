#include "doctest.h"
#include "stickel/intpoly.hpp"

#include <random>

using namespace stk;

TEST_CASE("binomial basis enumeration") {
    CHECK(binom_basis(2, 2).size() == 6);
    CHECK(binom_basis(1, 0) == std::vector<MultiIndex>{{0}});
    auto b31 = binom_basis(3, 1);
    CHECK(b31 == std::vector<MultiIndex>{{0, 0, 0}, {0, 0, 1}, {0, 1, 0}, {1, 0, 0}});
    // lex-sorted and size C(m+n, m)
    auto b34 = binom_basis(3, 4);
    CHECK(b34.size() == 35);
    for (size_t i = 0; i + 1 < b34.size(); i++) CHECK(b34[i] < b34[i + 1]);
}

TEST_CASE("evaluation in the binomial basis") {
    IntPolyFn f = poly_on_zn(1, 2, {{{2}, Rat(1)}});  // C(X,2)
    CHECK(evaluate(f, {Rat(4)}) == 6);
    CHECK(evaluate(f, {Rat(-1)}) == 1);
    CHECK(evaluate(f, {Rat(0)}) == 0);

    // piece on the coset 1/2 + Z, coefficient 1 on C(X,1)
    IntPolyFn g;
    g.lat = Lattice::standard(1);
    g.degree_bound = 1;
    g.pieces.push_back({{Rat(1, 2)}, {{{1}, Rat(1)}}});
    CHECK(evaluate(g, {Rat(5, 2)}) == 2);
    CHECK(evaluate(g, {Rat(3)}) == 0);  // off the coset: extension by zero
}

TEST_CASE("translation") {
    IntPolyFn f = poly_on_zn(1, 2, {{{2}, Rat(1)}});
    IntPolyFn t1 = translate(f, {Rat(1)});
    CHECK(poly_equal(t1, poly_on_zn(1, 2, {{{2}, Rat(1)}, {{1}, Rat(1)}})));
    CHECK(poly_equal(translate(f, {Rat(0)}), f));
    IntPolyFn g = poly_on_zn(1, 1, {{{1}, Rat(1)}});
    CHECK(poly_equal(translate(g, {Rat(-1)}),
                     poly_on_zn(1, 1, {{{1}, Rat(1)}, {{0}, Rat(-1)}})));
    CHECK_THROWS_WITH(translate(f, {Rat(1, 2)}), "translation vector not in lattice");
}

TEST_CASE("translation composes and respects products") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> d(-4, 4);
    for (int trial = 0; trial < 40; trial++) {
        int n = 1 + (int)(rng() % 2);
        int m = 2;
        auto xi = binom_basis(n, m);
        std::map<MultiIndex, Rat> cf, cg;
        for (const auto& mi : xi) {
            cf[mi] = Rat(d(rng));
            cg[mi] = Rat(d(rng));
        }
        IntPolyFn f = poly_on_zn(n, m, cf), g = poly_on_zn(n, m, cg);
        std::vector<Rat> lam((size_t)n), mu((size_t)n), both((size_t)n);
        for (int i = 0; i < n; i++) {
            lam[(size_t)i] = Rat(d(rng));
            mu[(size_t)i] = Rat(d(rng));
            both[(size_t)i] = lam[(size_t)i] + mu[(size_t)i];
        }
        CHECK(poly_equal(translate(translate(f, lam), mu), translate(f, both)));
        CHECK(poly_equal(translate(poly_product(f, g), lam),
                         poly_product(translate(f, lam), translate(g, lam))));
    }
}

TEST_CASE("product by grid interpolation") {
    // C(X,1) * C(X,1) = X^2 = 2 C(X,2) + C(X,1)
    IntPolyFn x = poly_on_zn(1, 1, {{{1}, Rat(1)}});
    IntPolyFn sq = poly_product(x, x);
    CHECK(poly_equal(sq, poly_on_zn(1, 2, {{{2}, Rat(2)}, {{1}, Rat(1)}})));
    for (int v = -5; v <= 5; v++)
        CHECK(evaluate(sq, {Rat(v)}) == Rat(v) * Rat(v));
}

TEST_CASE("integrality of integer-coefficient functions") {
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> d(-10, 10);
    auto xi = binom_basis(2, 3);
    for (int trial = 0; trial < 20; trial++) {
        std::map<MultiIndex, Rat> cf;
        for (const auto& mi : xi) cf[mi] = Rat(d(rng));
        IntPolyFn f = poly_on_zn(2, 3, cf);
        for (int pts = 0; pts < 200; pts++) {
            Rat v = evaluate(f, {Rat(d(rng)), Rat(d(rng))});
            CHECK(v.get_den() == 1);
        }
    }
}

TEST_CASE("restriction to a sublattice") {
    // C(X,1) on Z restricted to 2Z: on rep r, value r + 2*C(Y,1)
    IntPolyFn f = poly_on_zn(1, 1, {{{1}, Rat(1)}});
    Lattice two = Lattice::scaled(1, Rat(2));
    IntPolyFn r = restrict_to_sublattice(f, two);
    CHECK(r.pieces.size() == 2);
    for (int v = -4; v <= 4; v++)
        CHECK(evaluate(r, {Rat(v)}) == evaluate(f, {Rat(v)}));

    // restricting to the lattice itself is the identity
    IntPolyFn same = restrict_to_sublattice(f, f.lat);
    CHECK(poly_equal(same, f));

    // constants restrict to constants on each coset
    IntPolyFn one = poly_on_zn(1, 0, {{{0}, Rat(1)}});
    IntPolyFn rone = restrict_to_sublattice(one, Lattice::scaled(1, Rat(3)));
    CHECK(rone.pieces.size() == 3);
    for (const auto& p : rone.pieces) {
        CHECK(p.coeffs.size() == 1);
        CHECK(p.coeffs.at(MultiIndex{0}) == 1);
    }
}

TEST_CASE("restriction commutes with evaluation, dimension 2") {
    std::mt19937 rng(42);
    std::uniform_int_distribution<int> d(-5, 5);
    for (int trial = 0; trial < 25; trial++) {
        auto xi = binom_basis(2, 2);
        std::map<MultiIndex, Rat> cf;
        for (const auto& mi : xi) cf[mi] = Rat(d(rng));
        IntPolyFn f = poly_on_zn(2, 2, cf);
        // a random full-rank sublattice of Z^2 with small index
        Lattice sub;
        sub.n = 2;
        sub.basis = RatMat(2, 2);
        do {
            for (int i = 0; i < 2; i++)
                for (int j = 0; j < 2; j++) sub.basis.at(i, j) = Rat(d(rng));
        } while (rat_det(sub.basis) == 0);
        IntPolyFn r = restrict_to_sublattice(f, sub);
        for (int px = -3; px <= 3; px++)
            for (int py = -3; py <= 3; py++)
                CHECK(evaluate(r, {Rat(px), Rat(py)}) == evaluate(f, {Rat(px), Rat(py)}));
    }
}

TEST_CASE("restriction matrix determinant has prime support in the index") {
    // the single-coset-0 component of restriction, as a matrix on binomial
    // coefficients; its determinant must be supported on primes dividing d
    std::mt19937 rng(123);
    std::uniform_int_distribution<int> d(1, 7);
    for (int trial = 0; trial < 20; trial++) {
        int n = 1 + (int)(rng() % 2);
        int m = (n == 1) ? 4 : 3;
        Lattice sub;
        sub.n = n;
        sub.basis = RatMat(n, n);
        Rat dd;
        do {
            for (int i = 0; i < n; i++)
                for (int j = 0; j < n; j++) sub.basis.at(i, j) = Rat(i == j ? d(rng) : d(rng) - 4);
            dd = rat_det(sub.basis);
        } while (dd == 0 || dd > 50 || dd < -50);
        auto xi = binom_basis(n, m);
        RatMat mat((int)xi.size(), (int)xi.size());
        for (size_t col = 0; col < xi.size(); col++) {
            std::map<MultiIndex, Rat> cf;
            cf[xi[col]] = 1;
            IntPolyFn f = poly_on_zn(n, m, cf);
            IntPolyFn r = restrict_to_sublattice(f, sub);
            // the component on the coset of 0
            for (const auto& p : r.pieces) {
                bool zero_rep = true;
                for (const auto& c : p.rep)
                    if (c != 0) zero_rep = false;
                if (!zero_rep) continue;
                for (size_t row = 0; row < xi.size(); row++) {
                    auto it = p.coeffs.find(xi[row]);
                    mat.at((int)row, (int)col) = (it == p.coeffs.end()) ? Rat(0) : it->second;
                }
            }
        }
        Rat mdet = rat_det(mat);
        REQUIRE(mdet != 0);
        Int num = mdet.get_num(), den = mdet.get_den();
        if (num < 0) num = -num;
        Int index = dd.get_num();
        if (index < 0) index = -index;
        for (auto& [p, e] : factorize(index)) {
            (void)e;
            while (num % p == 0) num /= p;
            while (den % p == 0) den /= p;
        }
        CHECK(num == 1);
        CHECK(den == 1);
    }
}

TEST_CASE("extension by zero") {
    IntPolyFn f = poly_on_zn(1, 1, {{{1}, Rat(1)}});
    std::vector<std::vector<Rat>> ambient{{Rat(0)}, {Rat(1, 2)}};
    IntPolyFn e = extend_by_zero(f, ambient);
    CHECK(evaluate(e, {Rat(3)}) == 3);
    CHECK(evaluate(e, {Rat(1, 2)}) == 0);
    CHECK_THROWS(extend_by_zero(f, {{Rat(1, 3)}}));
    IntPolyFn z;
    z.lat = Lattice::standard(1);
    z.degree_bound = 1;
    CHECK(poly_equal(extend_by_zero(z, ambient), z));
}
