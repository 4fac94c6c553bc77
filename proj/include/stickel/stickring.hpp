#ifndef ZETASTICK_STICKRING_HPP
#define ZETASTICK_STICKRING_HPP

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <vector>

#include "stickel/cyclotomic.hpp"
#include "stickel/rayclass.hpp"

namespace stk {

// element of Q[G] for a finite abelian G, keyed by canonical labels
struct GroupRingElem {
    const AbGroup* g = nullptr;
    std::map<std::vector<Int>, Rat> coeffs;  // only nonzero entries stored
};

GroupRingElem gr_zero(const AbGroup& g);
GroupRingElem gr_basis(const AbGroup& g, const std::vector<Int>& label, const Rat& c = Rat(1));
GroupRingElem gr_add(const GroupRingElem& a, const GroupRingElem& b);
GroupRingElem gr_sub(const GroupRingElem& a, const GroupRingElem& b);
GroupRingElem gr_scale(const Rat& c, const GroupRingElem& a);
GroupRingElem gr_mul(const GroupRingElem& a, const GroupRingElem& b);
bool gr_equal(const GroupRingElem& a, const GroupRingElem& b);
bool gr_is_integral(const GroupRingElem& a);
// coefficientwise transport along sigma -> sigma^{-1}; a ring automorphism here
GroupRingElem gr_involution(const GroupRingElem& a);

// finitely generated ideal of Z[G]; the Z-lattice spanned by {sigma * gen}
// in the |G|-dimensional coefficient space is cached on first membership query
struct GroupRingIdeal {
    const AbGroup* g = nullptr;
    std::vector<GroupRingElem> gens;  // integral coefficients
    mutable std::shared_ptr<IntMat> basis;  // HNF rows, filled lazily
};

GroupRingIdeal gri_make(const AbGroup& g, std::vector<GroupRingElem> gens);
GroupRingIdeal gri_principal(const AbGroup& g, const GroupRingElem& x);
const IntMat& gri_lattice(const GroupRingIdeal& i);

// x in I tensor Z[1/allowance]? denominators of x outside the allowance are
// rejected; membership decided exactly through the cached Z-basis
bool membership(const GroupRingElem& x, const GroupRingIdeal& i, const std::vector<Int>& denominator_allowance);

// ideal generated by all pairwise products, lattice-reduced at each step
GroupRingIdeal ideal_product(const std::vector<GroupRingIdeal>& ideals);

// smoothing factor delta_T(-k) = prod over T of (1 - N^{1+k} [sigma^{-1}]),
// with places given as (norm, galois label) pairs
GroupRingElem delta_T(const AbGroup& g, const std::vector<std::pair<Int, std::vector<Int>>>& places, unsigned k);

// the ideal attached to a place: at finite v the kernel of
// Z[G] -> Z[G/I_v] / ([sigma_v] - N(v)^k), at infinite v the principal
// ideal ([sigma_v] + (-1)^{k+1})
GroupRingIdeal ideal_Iv_finite(const AbGroup& g, const std::vector<std::vector<Int>>& inertia_gens,
                               const std::vector<Int>& frobenius, const Int& norm, unsigned k);
GroupRingIdeal ideal_Iv_arch(const AbGroup& g, const std::vector<Int>& sigma_v, unsigned k);

// ---- base field Q (cyclotomic presentation) ----

// Theta_S(K/Q, -k); S lists rational primes and must contain every prime
// ramified in K
GroupRingElem stickelberger_q(const QExtension& ext, const std::vector<Int>& S, unsigned k);
// Theta_{S,T}: T rational primes, unramified in K and disjoint from S
GroupRingElem stickelberger_q_smoothed(const QExtension& ext, const std::vector<Int>& S,
                                       const std::vector<Int>& T, unsigned k);

// Lemma 6.7-style annihilator ideal generated by {1 - q^{k+1}[sigma_q^{-1}]}
struct AnnihilatorJX {
    GroupRingIdeal ideal;
    Int w;  // order of the twisted torsion module the ideal annihilates
};
AnnihilatorJX annihilator_JX(const QExtension& ext, const std::vector<Int>& X, unsigned k);

// ---- real quadratic base field ----

// Theta_S(K/F, -k); S lists finite prime ideals and must contain every finite
// prime ramified in K; partial zetas are assembled at the S-supported part of
// the defining modulus
GroupRingElem stickelberger_quad(const ExtensionSpec& ext, const std::vector<Ideal>& S, unsigned k);
// Theta_{S,T}: T prime ideals coprime to the modulus and disjoint from S
GroupRingElem stickelberger_quad_smoothed(const ExtensionSpec& ext, const std::vector<Ideal>& S,
                                          const std::vector<Ideal>& T, unsigned k);

enum class Injectivity { proven, unknown };

// sufficient conditions only: two residue characteristics in T, or k = 0 with
// one residue characteristic exceeding degree + 1
Injectivity injectivity_check(const std::vector<Int>& residue_chars, unsigned k, unsigned degree);

// (-1)^degree N(q)^{-k} [sigma_q] * Theta_{S,q}(-k): the zeta side of the
// q-smoothed cap-product identity
GroupRingElem stick_rhs_cor53(const GroupRingElem& theta_Sq, unsigned degree, const Int& norm_q,
                              const std::vector<Int>& sigma_q, unsigned k);

}  // namespace stk

#endif
