#ifndef ZETASTICK_POLDIST_HPP
#define ZETASTICK_POLDIST_HPP

#include <vector>

#include "stickel/intpoly.hpp"

namespace stk {

// Linear functional on degree-<= m polynomial functions on a lattice
// (or on a coset rep + L), stored by its values on the binomial basis in
// the lex order of binom_basis(n, m).
struct TruncDist {
    Lattice lat;
    int m = 0;
    std::vector<Rat> values;   // size C(m+n, m)
    std::vector<Rat> coset_rep;  // empty: distribution on L itself
};

// Class in R[L]/I(L)^{m+1} written in the t-monomial basis, t_i = [e_i]-1,
// coefficients in the same lex order.
struct GroupRingTrunc {
    int n = 0;
    int m = 0;
    std::vector<Rat> coeffs;
};

TruncDist dirac(const std::vector<Rat>& lambda, const Lattice& lat, int m);

// the degree-truncated isomorphism with R[L]/I(L)^{m+1}: solve the
// unitriangular system mu(C(.,l)) = sum_k a_k C(k,l) by back-substitution,
// then rewrite [k] = prod (1+t_i)^{k_i}
GroupRingTrunc dist_to_groupring(const TruncDist& mu);
TruncDist groupring_to_dist(const GroupRingTrunc& g, const Lattice& lat);

GroupRingTrunc gr_mul(const GroupRingTrunc& a, const GroupRingTrunc& b);
GroupRingTrunc gr_add(const GroupRingTrunc& a, const GroupRingTrunc& b);
GroupRingTrunc gr_one(int n, int m);

TruncDist convolve(const TruncDist& a, const TruncDist& b);

// value of mu on the monomial xi^a, where the rows of xi are linear forms
// in the lattice coordinates; throws "moment beyond truncation" if the
// total degree of a exceeds m
Rat moment(const TruncDist& mu, const MultiIndex& a, const RatMat& xi);

// the moment distribution z^a for the dual-basis forms: z^a(xi^b) = a! [a=b]
TruncDist moment_dist(const MultiIndex& a, const Lattice& lat, int m);

// Distribution on the lattice `big`, polynomial of degree <= m on each
// coset of `small` <= big. Coset order is the canonical box order of
// coset_reps(small, big); values[c] are binomial-basis values on coset c.
struct LocalDist {
    Lattice big, small;
    int m = 0;
    std::vector<std::vector<Rat>> values;
};

LocalDist local_dirac(const std::vector<Rat>& lambda, const Lattice& big, const Lattice& small,
                      int m);
Rat local_eval(const LocalDist& mu, const IntPolyFn& f);

// Extension by zero between nested pairs: mu lives on (l2 >= l2'), the
// result on (l1 >= l1') with l2 <= l1, l2' <= l1', l2' = l2 cap l1' and
// [l1:l2] = [l1':l2']. The matrix of the map is square; its determinant
// must be a unit in the coefficient ring declared by allowed_primes,
// otherwise "index not invertible in R" is thrown.
LocalDist change_lattice_iso(const LocalDist& mu, const Lattice& l1, const Lattice& l1p,
                             const std::vector<Int>& allowed_primes);

// determinant of that matrix without applying it (for invertibility tests)
Rat change_lattice_det(const Lattice& l2, const Lattice& l2p, const Lattice& l1,
                       const Lattice& l1p, int m);

// Stirling helpers (exact): x^p = sum_q S2(p,q) q! C(x,q);
// C(x,l) = (1/l!) sum_a s(l,a) x^a with s signed of the first kind
Int stirling2(int p, int q);
Int stirling1_signed(int l, int a);

}  // namespace stk

#endif
