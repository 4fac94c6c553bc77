#ifndef ZETASTICK_ZETAVAL_HPP
#define ZETASTICK_ZETAVAL_HPP

#include "stickel/bernoulli.hpp"
#include "stickel/rayclass.hpp"

namespace stk {

// sum over n > 0, n = a mod f of n^{-s} at s = -k, as an exact rational
Rat partial_zeta_q(const Int& f, const Int& a, unsigned k);

// zeta_F(-1) for F = Q(sqrt D) by the divisor-sum lattice formula
Rat dedekind_minus1(const Int& D);

// continuation at s = -k of sum over z in (x1 + m) v1 + (x2 + n) v2, m,n >= 0,
// of N(z)^{-s}; v1, v2 totally positive, x1, x2 in (0,1]
Rat cone_zeta_value(const QuadField& f, const QuadElem& v1, const QuadElem& v2,
                    const Rat& x1, const Rat& x2, unsigned k);

// continuation at s = -k of sum over z = (x0 + n) g, n >= 0, of N(z)^{-s};
// g totally positive, x0 in (0,1]
Rat ray_zeta_value(const QuadField& f, const QuadElem& g, const Rat& x0, unsigned k);

// zeta(m, A, -k) for the narrow ray class with the given label; unit_power
// replaces the ray unit eps by eps^t (same value, subdivided domain)
Rat partial_zeta_quad(const RayClassGroup& rg, const std::vector<Int>& label, unsigned k,
                      int unit_power = 1);

}  // namespace stk

#endif
