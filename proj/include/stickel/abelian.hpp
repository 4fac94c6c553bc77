#ifndef ZETASTICK_ABELIAN_HPP
#define ZETASTICK_ABELIAN_HPP

#include <vector>

#include "stickel/linalg.hpp"

namespace stk {

// Finite abelian group presented as Z^n / (row lattice of rels).
// Elements are handled in two coordinate systems:
//   - "vectors": exponent vectors in Z^n w.r.t. the n presentation generators
//   - "labels":  canonical tuples (y_1 mod d_1, ..., y_n mod d_n) in the
//     Smith basis; equal labels <=> equal group elements.
// The relation lattice must have full rank n (the group is finite).
class AbGroup {
public:
    AbGroup() = default;
    AbGroup(int ngens, IntMat rels);

    int ngens() const { return n_; }
    const Int& order() const { return order_; }
    const std::vector<Int>& smith_diag() const { return diag_; }

    std::vector<Int> label(const std::vector<Int>& v) const;
    // a representative exponent vector for a label
    std::vector<Int> rep(const std::vector<Int>& lab) const;

    std::vector<Int> add(const std::vector<Int>& a, const std::vector<Int>& b) const;
    std::vector<Int> neg(const std::vector<Int>& a) const;
    std::vector<Int> zero_label() const;
    bool is_zero(const std::vector<Int>& v) const;
    Int element_order(const std::vector<Int>& v) const;

    // all element labels; order() must fit comfortably in memory
    std::vector<std::vector<Int>> elements() const;

    const IntMat& relations() const { return rels_; }

private:
    int n_ = 0;
    IntMat rels_;      // HNF basis, n x n
    std::vector<Int> diag_;
    IntMat v_, vinv_;  // Smith column transform and its inverse
    Int order_ = 1;
};

// A homomorphism A -> B given by the images (exponent vectors in B) of
// A's presentation generators. Checked for well-definedness on construction.
class AbHom {
public:
    AbHom(const AbGroup* dom, const AbGroup* cod, IntMat gen_images);

    std::vector<Int> apply(const std::vector<Int>& v) const;

    // lattice K with rels(A) <= K <= Z^n; K/rels(A) is the kernel
    IntMat kernel_lattice() const;
    // lattice generated by the images together with rels(B)
    IntMat image_lattice() const;

    const AbGroup* domain() const { return dom_; }
    const AbGroup* codomain() const { return cod_; }

private:
    const AbGroup* dom_;
    const AbGroup* cod_;
    IntMat images_;  // ngens(A) x ngens(B)
};

// Subgroup of A generated by the given exponent vectors, returned as a
// full-rank lattice between rels(A) and Z^n. Quotient A/that is then just
// AbGroup(n, lattice).
IntMat subgroup_lattice(const AbGroup& g, const std::vector<std::vector<Int>>& gens);

}  // namespace stk

#endif
