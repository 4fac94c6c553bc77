#ifndef ZETASTICK_CYCLOTOMIC_HPP
#define ZETASTICK_CYCLOTOMIC_HPP

#include <vector>

#include "stickel/abelian.hpp"
#include "stickel/rational.hpp"

namespace stk {

// (Z/f)^* with one canonical generator list built prime power by prime power:
// odd p^e contributes its smallest primitive root, 4 contributes -1, and
// 2^e (e >= 3) contributes -1 and 5; all lifted to residues mod f by CRT.
struct UnitsModF {
    Int f = 1;
    std::vector<Int> gens;    // residues mod f
    std::vector<Int> orders;  // matching component orders
    AbGroup grp;              // Z^r / diag(orders)
};

UnitsModF units_mod_f(const Int& f);

// exponent vector of a (coprime to f) over the canonical generators
std::vector<Int> units_dlog(const UnitsModF& u, const Int& a);

// residue mod f of a product of generator powers
Int units_residue(const UnitsModF& u, const std::vector<Int>& v);

// abelian extension K of Q inside the f-th cyclotomic field, cut out by the
// subgroup H of (Z/f)^* generated by the given exponent vectors; Gal(K/Q)
// is the quotient (Z/f)^*/H
struct QExtension {
    UnitsModF units;
    std::vector<std::vector<Int>> kernel;  // exponent vectors generating H
    AbGroup gal;
};

QExtension q_extension(const Int& f, const std::vector<std::vector<Int>>& kernel_gens);

// label in gal of the class of a (coprime to f)
std::vector<Int> q_class(const QExtension& e, const Int& a);

// smallest f0 | f with K contained in the f0-th cyclotomic field
Int q_conductor(const QExtension& e);

// the same extension presented at modulus f0 (requires conductor | f0 | f)
QExtension q_reduce(const QExtension& e, const Int& f0);

// class of -1: restriction of complex conjugation; zero label iff K is real
std::vector<Int> q_sigma_inf(const QExtension& e);

// w = largest integer such that Gal(Qbar/K) acts trivially on the w-th roots
// of unity twisted by the (k+1)-st power of the cyclotomic character
Int q_torsion_w(const QExtension& e, unsigned k);

}  // namespace stk

#endif
