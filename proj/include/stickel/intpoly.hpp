#ifndef ZETASTICK_INTPOLY_HPP
#define ZETASTICK_INTPOLY_HPP

#include <map>
#include <vector>

#include "stickel/linalg.hpp"

namespace stk {

// multi-index (m_1,...,m_n); vector's lexicographic order is the order
// used everywhere for bases and matrices
using MultiIndex = std::vector<int>;

inline int total_degree(const MultiIndex& m) {
    int s = 0;
    for (int v : m) s += v;
    return s;
}

// all multi-indices of total degree <= m in ascending lexicographic order;
// length C(m+n, m)
std::vector<MultiIndex> binom_basis(int n, int m);

// prod_i C(x_i, m_i)
Rat binom_at(const std::vector<Rat>& x, const MultiIndex& m);
Int binom_at_int(const std::vector<Int>& x, const MultiIndex& m);

// Given values v[l] for l in binom_basis(n,m) (as points), find coeffs c
// with sum_k c[k]*C(l,k) = v[l]. The matrix is unitriangular in lex order,
// so this is a forward substitution.
std::vector<Rat> binom_interpolate(int n, int m, const std::vector<Rat>& values);

// full-rank lattice in Q^n; rows of `basis` are the basis vectors, and
// the basis order is part of the lattice's identity
struct Lattice {
    int n = 0;
    RatMat basis;

    static Lattice standard(int n);
    static Lattice scaled(int n, const Rat& s);  // s * Z^n
};

// coordinates of x in the lattice basis (exact solve)
std::vector<Rat> lattice_coords(const Lattice& l, const std::vector<Rat>& x);
bool lattice_member(const Lattice& l, const std::vector<Rat>& x);

// Is lsub a finite-index sublattice of lsup? If so, return the integer
// matrix M with basis(lsub) = M * basis(lsup).
std::optional<IntMat> sublattice_matrix(const Lattice& lsub, const Lattice& lsup);

// canonical coset representatives of lsup/lsub, as lsup-coordinate vectors
// in the HNF box; count = index
std::vector<std::vector<Int>> coset_reps(const Lattice& lsub, const Lattice& lsup);

// R-valued polynomial function of degree <= degree_bound on finitely many
// cosets of a lattice, in the binomial basis per coset. Zero outside the
// listed cosets.
struct PolyPiece {
    std::vector<Rat> rep;             // canonical: lattice coords in [0,1)^n
    std::map<MultiIndex, Rat> coeffs;
};

struct IntPolyFn {
    Lattice lat;
    int degree_bound = 0;
    std::vector<PolyPiece> pieces;
};

// drop zero coefficients, move reps to the canonical coset representative,
// merge duplicate cosets, sort by rep
IntPolyFn canonicalize(const IntPolyFn& f);
bool poly_equal(const IntPolyFn& a, const IntPolyFn& b);

Rat evaluate(const IntPolyFn& f, const std::vector<Rat>& x);

// (tau_lam f)(v) = f(v + lam); lam must lie in the lattice
IntPolyFn translate(const IntPolyFn& f, const std::vector<Rat>& lam);

// pointwise product via grid evaluation + binomial re-interpolation
IntPolyFn poly_product(const IntPolyFn& f, const IntPolyFn& g);
IntPolyFn poly_add(const IntPolyFn& f, const IntPolyFn& g);
IntPolyFn poly_scale(const IntPolyFn& f, const Rat& c);

// re-express f on a full-rank sublattice of its lattice; same function,
// finer coset decomposition
IntPolyFn restrict_to_sublattice(const IntPolyFn& f, const Lattice& lsub);

// the ambient coset list only gates validity: pieces stay as they are,
// evaluation is zero off the listed cosets by construction
IntPolyFn extend_by_zero(const IntPolyFn& f, const std::vector<std::vector<Rat>>& ambient_reps);

// convenience: single-coset function on the standard lattice
IntPolyFn poly_on_zn(int n, int degree_bound, std::map<MultiIndex, Rat> coeffs);

}  // namespace stk

#endif
