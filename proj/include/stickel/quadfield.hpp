#ifndef ZETASTICK_QUADFIELD_HPP
#define ZETASTICK_QUADFIELD_HPP

#include <array>
#include <vector>

#include "stickel/linalg.hpp"

namespace stk {

// element a + b*sqrt(D) of a real quadratic field
struct QuadElem {
    Rat a, b;

    QuadElem() : a(0), b(0) {}
    QuadElem(Rat a_, Rat b_) : a(std::move(a_)), b(std::move(b_)) {}

    bool operator==(const QuadElem& o) const { return a == o.a && b == o.b; }
};

struct QuadField {
    Int D;         // squarefree > 1
    Int disc;      // D if D = 1 mod 4, else 4D
    bool d1mod4 = false;
    QuadElem omega;  // (1+sqrt(D))/2 or sqrt(D); O = Z + Z*omega
    QuadElem eps0;   // fundamental unit, > 1 in the first embedding
    int eps0_norm = 0;
};

QuadField field_init(const Int& D);

QuadElem qadd(const QuadElem& x, const QuadElem& y);
QuadElem qsub(const QuadElem& x, const QuadElem& y);
QuadElem qmul(const QuadField& f, const QuadElem& x, const QuadElem& y);
QuadElem qdiv(const QuadField& f, const QuadElem& x, const QuadElem& y);
QuadElem qconj(const QuadElem& x);
Rat qnorm(const QuadField& f, const QuadElem& x);
Rat qtrace(const QuadElem& x);
QuadElem qpow(const QuadField& f, QuadElem x, long e);  // e may be negative

// sign of a + b*sqrt(D) (exact); second embedding = sign of the conjugate
int qsign(const QuadField& f, const QuadElem& x);
bool totally_positive(const QuadField& f, const QuadElem& x);
Int qfloor(const QuadField& f, const QuadElem& x);

// coordinates (u, v) with x = u + v*omega
std::pair<Rat, Rat> omega_coords(const QuadField& f, const QuadElem& x);
QuadElem from_omega_coords(const QuadField& f, const Rat& u, const Rat& v);
bool is_integral(const QuadField& f, const QuadElem& x);

// fractional ideal: (1/den) * (row lattice of hnf over the basis {1, omega});
// hnf is the canonical 2x2 Hermite form, den > 0, normalized so that no
// rational integer > 1 divides both den and all hnf entries
struct Ideal {
    IntMat hnf;
    Int den = 1;
};

Ideal ideal_whole(const QuadField& f);
Ideal ideal_from_gens(const QuadField& f, const std::vector<QuadElem>& gens);
Ideal ideal_principal(const QuadField& f, const QuadElem& x);
Ideal ideal_mul(const QuadField& f, const Ideal& a, const Ideal& b);
Ideal ideal_inv(const QuadField& f, const Ideal& a);
Ideal ideal_add(const QuadField& f, const Ideal& a, const Ideal& b);  // gcd
Ideal ideal_pow(const QuadField& f, const Ideal& a, long e);
Rat ideal_norm(const Ideal& a);
bool ideal_equal(const Ideal& a, const Ideal& b);
bool ideal_contains(const QuadField& f, const Ideal& a, const QuadElem& x);
bool ideal_is_integral(const Ideal& a);
bool ideal_divides(const QuadField& f, const Ideal& a, const Ideal& b);  // a | b
bool ideals_coprime(const QuadField& f, const Ideal& a, const Ideal& b);

// Z-basis of an integral ideal as field elements (rows of hnf / den)
std::array<QuadElem, 2> ideal_basis(const QuadField& f, const Ideal& a);

struct PrimeFactor {
    Ideal ideal;
    int res_deg = 1;   // f
    int ram_idx = 1;   // e
};
std::vector<PrimeFactor> prime_split(const QuadField& f, const Int& p);

// factor an integral ideal into primes (via the norm); returns (prime, exponent)
std::vector<std::pair<Ideal, int>> ideal_factor(const QuadField& f, const Ideal& a);

// all integral ideals of norm exactly n / at most n
std::vector<Ideal> ideals_of_norm(const QuadField& f, const Int& n);
std::vector<Ideal> ideals_norm_upto(const QuadField& f, const Int& n);

// elements x of the fractional ideal a with |x^(1)| <= b1 and |x^(2)| <= b2
std::vector<QuadElem> ideal_box(const QuadField& f, const Ideal& a, const Rat& b1, const Rat& b2);

// smallest positive rational integer in a + Z (i.e. in the ideal) is not
// needed; but an element c of ideal `a` with c = 1 mod ideal `b` is
// (requires a + b = O)
QuadElem idempotent_split(const QuadField& f, const Ideal& a, const Ideal& b);

// is a = (x) for some x, and if so return a generator; narrow variant
// requires a totally positive generator
std::optional<QuadElem> principal_gen(const QuadField& f, const Ideal& a);
std::optional<QuadElem> narrow_principal_gen(const QuadField& f, const Ideal& a);

}  // namespace stk

#endif
