#include "doctest.h"
#include "stickel/linalg.hpp"

#include <random>

using namespace stk;

static IntMat make(int r, int c, std::vector<long> v) {
    IntMat m(r, c);
    for (int i = 0; i < r; i++)
        for (int j = 0; j < c; j++) m.at(i, j) = v[static_cast<size_t>(i) * c + j];
    return m;
}

// Oracle: plain fraction-free row echelon over Q, then scale rows to a
// primitive integer form and reduce upwards. Slow but independent of the
// pivot strategy in hnf().
static IntMat hnf_oracle(const IntMat& m) {
    // run the brute approach: repeatedly gcd out each column via extended
    // euclid on whole rows.
    IntMat h = m;
    int r = 0;
    for (int c = 0; c < h.cols && r < h.rows; c++) {
        for (;;) {
            int nz = -1;
            for (int i = r; i < h.rows; i++)
                if (h.at(i, c) != 0) { nz = i; break; }
            if (nz < 0) break;
            // combine row nz into row r by extended gcd
            if (nz != r)
                for (int j = 0; j < h.cols; j++) std::swap(h.at(nz, j), h.at(r, j));
            bool again = false;
            for (int i = r + 1; i < h.rows; i++) {
                if (h.at(i, c) == 0) continue;
                Int g, s, t;
                mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(),
                           h.at(r, c).get_mpz_t(), h.at(i, c).get_mpz_t());
                Int ar = h.at(r, c) / g, ai = h.at(i, c) / g;
                for (int j = 0; j < h.cols; j++) {
                    Int nr = s * h.at(r, j) + t * h.at(i, j);
                    Int ni = ar * h.at(i, j) - ai * h.at(r, j);
                    h.at(r, j) = nr;
                    h.at(i, j) = ni;
                }
                again = true;
            }
            if (!again) break;
        }
        if (h.at(r, c) != 0) {
            if (h.at(r, c) < 0)
                for (int j = 0; j < h.cols; j++) h.at(r, j) = -h.at(r, j);
            for (int i = 0; i < r; i++) {
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), h.at(i, c).get_mpz_t(), h.at(r, c).get_mpz_t());
                for (int j = 0; j < h.cols; j++) h.at(i, j) -= q * h.at(r, j);
            }
            r++;
        }
    }
    return h;
}

TEST_CASE("hermite form canonical cases") {
    IntMat id = IntMat::identity(2);
    auto r = hnf(id);
    CHECK(r.h == id);
    CHECK(r.transform == id);

    IntMat m = make(2, 2, {4, 2, 2, 3});
    auto r2 = hnf(m);
    CHECK(r2.h == make(2, 2, {2, 3, 0, 4}));
    // h = transform * m
    for (int i = 0; i < 2; i++)
        for (int j = 0; j < 2; j++) {
            Int s = 0;
            for (int k = 0; k < 2; k++) s += r2.transform.at(i, k) * m.at(k, j);
            CHECK(s == r2.h.at(i, j));
        }

    IntMat z(3, 2);
    CHECK(hnf(z).h == z);
}

TEST_CASE("hermite form is idempotent and unimodular-invariant") {
    std::mt19937 rng(20240817);
    std::uniform_int_distribution<int> d(-6, 6);
    for (int trial = 0; trial < 200; trial++) {
        IntMat m(3, 3);
        for (int i = 0; i < 3; i++)
            for (int j = 0; j < 3; j++) m.at(i, j) = d(rng);
        IntMat h = hnf(m).h;
        CHECK(hnf(h).h == h);
        CHECK(h == hnf_oracle(m));

        // multiply by a random unimodular matrix (product of elementary ops)
        IntMat u = IntMat::identity(3);
        for (int s = 0; s < 6; s++) {
            int i = rng() % 3, j = rng() % 3;
            if (i == j) continue;
            Int q = d(rng);
            for (int c = 0; c < 3; c++) u.at(i, c) += q * u.at(j, c);
        }
        IntMat um(3, 3);
        for (int i = 0; i < 3; i++)
            for (int j = 0; j < 3; j++) {
                Int s = 0;
                for (int k = 0; k < 3; k++) s += u.at(i, k) * m.at(k, j);
                um.at(i, j) = s;
            }
        CHECK(hnf(um).h == h);
    }
}

// Oracle: exhaustive unimodular row/column reduction by gcd of all entries.
static std::vector<Int> snf_oracle(IntMat a) {
    std::vector<Int> out;
    int n = std::min(a.rows, a.cols);
    for (int k = 0; k < n; k++) {
        // gcd of the trailing block is the next invariant factor times
        // the previous gcds; use the classical determinantal recipe only
        // for small sizes via gcd of k x k minors.
        (void)k;
    }
    // determinantal divisors: d_k = gcd of all k-minors, invariant factor
    // s_k = d_k / d_{k-1}
    Int prev = 1;
    for (int k = 1; k <= n; k++) {
        // enumerate k-subsets of rows and columns
        std::vector<int> ri(k), ci(k);
        for (int i = 0; i < k; i++) ri[i] = i;
        Int g = 0;
        auto next_subset = [](std::vector<int>& s, int limit) {
            int k2 = (int)s.size();
            int i = k2 - 1;
            while (i >= 0 && s[i] == limit - k2 + i) i--;
            if (i < 0) return false;
            s[i]++;
            for (int j = i + 1; j < k2; j++) s[j] = s[j - 1] + 1;
            return true;
        };
        do {
            for (int i = 0; i < k; i++) ci[i] = i;
            do {
                IntMat sub(k, k);
                for (int i = 0; i < k; i++)
                    for (int j = 0; j < k; j++) sub.at(i, j) = a.at(ri[i], ci[j]);
                Int dd = det(sub);
                mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), dd.get_mpz_t());
            } while (next_subset(ci, a.cols));
        } while (next_subset(ri, a.rows));
        if (g == 0) { out.push_back(0); continue; }
        out.push_back(g / prev);
        prev = g;
    }
    // trailing zeros stay zero
    for (size_t i = 0; i + 1 < out.size(); i++)
        if (out[i] == 0) out[i + 1] = 0;
    return out;
}

TEST_CASE("smith form") {
    CHECK(snf(make(2, 2, {2, 0, 0, 4})) == std::vector<Int>{2, 4});
    CHECK(snf(make(2, 2, {2, 1, 0, 2})) == std::vector<Int>{1, 4});
    CHECK(snf(IntMat::identity(4)) == std::vector<Int>(4, Int(1)));
}

TEST_CASE("smith form matches determinantal-divisor oracle") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> d(-5, 5);
    for (int trial = 0; trial < 150; trial++) {
        IntMat m(3, 3);
        for (int i = 0; i < 3; i++)
            for (int j = 0; j < 3; j++) m.at(i, j) = d(rng);
        auto s = snf(m);
        CHECK(s == snf_oracle(m));
        for (size_t i = 0; i + 1 < s.size(); i++) {
            CHECK(s[i] >= 0);
            if (s[i] != 0 && s[i + 1] != 0) CHECK(s[i + 1] % s[i] == 0);
        }
        // transforms: diag = u * m * v
        auto f = snf_full(m);
        for (int i = 0; i < 3; i++)
            for (int j = 0; j < 3; j++) {
                Int acc = 0;
                for (int k = 0; k < 3; k++)
                    for (int l = 0; l < 3; l++) acc += f.u.at(i, k) * m.at(k, l) * f.v.at(l, j);
                CHECK(acc == (i == j ? f.diag[(size_t)i] : Int(0)));
            }
        Int du = det(f.u), dv = det(f.v);
        CHECK((du == 1 || du == -1));
        CHECK((dv == 1 || dv == -1));
    }
}

TEST_CASE("lattice membership basics") {
    IntMat b = make(2, 2, {2, 3, 0, 4});
    CHECK(lattice_contains(b, {Int(2), Int(3)}));
    CHECK(!lattice_contains(b, {Int(1), Int(0)}));
    CHECK(lattice_contains(IntMat::identity(3), {Int(-7), Int(5), Int(100)}));
    IntMat deg = make(2, 2, {1, 2, 2, 4});
    CHECK_THROWS_WITH(lattice_contains(deg, {Int(1), Int(2)}), "degenerate lattice");
}

TEST_CASE("lattice membership agrees with coefficient enumeration") {
    std::mt19937 rng(99);
    std::uniform_int_distribution<int> d(-3, 3), dv(-9, 9);
    int tested = 0;
    for (int trial = 0; trial < 4000 && tested < 600; trial++) {
        IntMat m(3, 3);
        for (int i = 0; i < 3; i++)
            for (int j = 0; j < 3; j++) m.at(i, j) = d(rng);
        if (det(m) == 0) continue;
        tested++;
        std::vector<Int> v{Int(dv(rng)), Int(dv(rng)), Int(dv(rng))};
        bool got = lattice_contains(m, v);
        // brute force: coefficients bounded by |det| * 9 * (row bound) is
        // overkill; a box of [-60,60] is ample for these sizes.
        bool brute = false;
        IntMat h = hnf_basis(m);
        // solve over Q and check integrality -- independent of hnf back
        // substitution order inside lattice_contains
        RatMat rb(3, 3);
        for (int i = 0; i < 3; i++)
            for (int j = 0; j < 3; j++) rb.at(i, j) = Rat(m.at(i, j));
        std::vector<Rat> rv{Rat(v[0]), Rat(v[1]), Rat(v[2])};
        auto x = rat_coordinates(rb, rv);
        if (x) {
            brute = true;
            for (auto& xi : *x)
                if (xi.get_den() != 1) brute = false;
        }
        CHECK(got == brute);
        (void)h;
    }
    CHECK(tested >= 600);
}

TEST_CASE("kernel, preimage, intersection") {
    // kernel of the map Z^2 -> Z, (x,y) -> 2x - y ... as rows acting on a
    // 2x1 matrix
    IntMat m = make(2, 1, {2, -1});
    IntMat k = int_kernel(m);
    REQUIRE(k.rows == 1);
    CHECK(k.at(0, 0) * 2 + k.at(0, 1) * (-1) == 0);

    std::mt19937 rng(3);
    std::uniform_int_distribution<int> d(-4, 4);
    for (int trial = 0; trial < 100; trial++) {
        IntMat p(3, 2);
        for (int i = 0; i < 3; i++)
            for (int j = 0; j < 2; j++) p.at(i, j) = d(rng);
        IntMat kk = int_kernel(p);
        // every kernel row maps to zero
        for (int i = 0; i < kk.rows; i++)
            for (int j = 0; j < 2; j++) {
                Int s = 0;
                for (int l = 0; l < 3; l++) s += kk.at(i, l) * p.at(l, j);
                CHECK(s == 0);
            }
        // rank-nullity
        IntMat rowbasis = hnf_basis(p);
        CHECK(kk.rows + rowbasis.rows == 3);
    }

    // intersection of 2Z^2 and the lattice spanned by (1,1),(0,3)
    IntMat a = make(2, 2, {2, 0, 0, 2});
    IntMat b = make(2, 2, {1, 1, 0, 3});
    IntMat inter = lattice_intersection(a, b);
    // index check: [Z^2 : A]=4, [Z^2 : B]=3, intersection has index 12
    CHECK(det(inter) == 12);
    for (int i = 0; i < inter.rows; i++) {
        std::vector<Int> row{inter.at(i, 0), inter.at(i, 1)};
        CHECK(lattice_contains(a, row));
        CHECK(lattice_contains(b, row));
    }

    // preimage: x * p in 5Z (p: 2x1 matrix (1,2)^T rows)
    IntMat pp = make(2, 1, {1, 2});
    IntMat lam = make(1, 1, {5});
    IntMat pre = preimage_lattice(pp, lam);
    CHECK(det(pre) == 5);
    for (int i = 0; i < pre.rows; i++)
        CHECK((pre.at(i, 0) + 2 * pre.at(i, 1)) % 5 == 0);
}

TEST_CASE("rational solve and inverse") {
    RatMat m(2, 2);
    m.at(0, 0) = 2; m.at(0, 1) = 3;
    m.at(1, 0) = 0; m.at(1, 1) = 4;
    CHECK(rat_det(m) == 8);
    auto x = rat_solve_left(m, {Rat(2), Rat(7)});
    // x * m = (2,7): x0*2 = 2, x0*3 + x1*4 = 7 -> x = (1, 1)
    CHECK(x[0] == 1);
    CHECK(x[1] == 1);
    RatMat inv = rat_inverse(m);
    for (int i = 0; i < 2; i++)
        for (int j = 0; j < 2; j++) {
            Rat s = 0;
            for (int k = 0; k < 2; k++) s += m.at(i, k) * inv.at(k, j);
            CHECK(s == (i == j ? 1 : 0));
        }
    auto c = rat_coordinates(m, {Rat(2), Rat(7)});
    REQUIRE(c.has_value());
    CHECK((*c)[0] == 1);
    CHECK((*c)[1] == 1);
    RatMat one_row(1, 2);
    one_row.at(0, 0) = 1; one_row.at(0, 1) = 2;
    CHECK(!rat_coordinates(one_row, {Rat(1), Rat(3)}).has_value());
    auto c2 = rat_coordinates(one_row, {Rat(2), Rat(4)});
    REQUIRE(c2.has_value());
    CHECK((*c2)[0] == 2);
}
