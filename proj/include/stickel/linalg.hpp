#ifndef ZETASTICK_LINALG_HPP
#define ZETASTICK_LINALG_HPP

#include <optional>
#include <stdexcept>
#include <vector>

#include "stickel/rational.hpp"

namespace stk {

// Dense integer matrix, row-major. Rows are lattice generators everywhere
// in this project.
struct IntMat {
    int rows = 0, cols = 0;
    std::vector<Int> a;

    IntMat() = default;
    IntMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}

    Int& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    const Int& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    static IntMat identity(int n);
    bool operator==(const IntMat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};

struct HnfResult {
    IntMat h;          // canonical Hermite normal form (same shape as input)
    IntMat transform;  // unimodular, h = transform * m
};

// Row-style HNF: echelon with positive pivots, entries above each pivot
// reduced into [0, pivot). Pivot selection is smallest absolute value in
// the current column, so output growth stays moderate and the result is
// deterministic.
HnfResult hnf(const IntMat& m);

// HNF with zero rows dropped (basis of the row lattice).
IntMat hnf_basis(const IntMat& m);

// Smith normal form diagonal, d1 | d2 | ..., non-negative.
std::vector<Int> snf(const IntMat& m);

struct SnfResult {
    std::vector<Int> diag;
    IntMat u, v;  // diag(d) = u * m * v with u, v unimodular
};
SnfResult snf_full(const IntMat& m);

// v in the row lattice of `basis`? basis must have full column rank.
// Throws std::invalid_argument("degenerate lattice") otherwise.
bool lattice_contains(const IntMat& basis, const std::vector<Int>& v);

// Basis (rows) of { x in Z^k : x * m = 0 }.
IntMat int_kernel(const IntMat& m);

// Basis of { x in Z^k : x * p lies in the row lattice of lambda }.
IntMat preimage_lattice(const IntMat& p, const IntMat& lambda);

// Basis of the intersection of two row lattices (same ambient dim).
IntMat lattice_intersection(const IntMat& a, const IntMat& b);

// Stack rows of a on top of rows of b.
IntMat vstack(const IntMat& a, const IntMat& b);

// integer solution x with x * m = v, if one exists (m need not be square)
std::optional<std::vector<Int>> int_solve_left(const IntMat& m, const std::vector<Int>& v);

Int det(const IntMat& m);  // Bareiss, exact

// ---- exact rational matrices (small, for change-of-basis work) ----

struct RatMat {
    int rows = 0, cols = 0;
    std::vector<Rat> a;

    RatMat() = default;
    RatMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}
    Rat& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    const Rat& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }
};

Rat rat_det(RatMat m);

// Solve x * m = rhs for a row vector x (m square, invertible).
std::vector<Rat> rat_solve_left(const RatMat& m, const std::vector<Rat>& rhs);

// Coordinates of v in the row space of `basis` (any rank), or nullopt if
// v is outside the span. Returns one solution; unique when rows are
// independent.
std::optional<std::vector<Rat>> rat_coordinates(const RatMat& basis, const std::vector<Rat>& v);

RatMat rat_inverse(const RatMat& m);

}  // namespace stk

#endif
