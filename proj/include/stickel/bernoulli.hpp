#ifndef ZETASTICK_BERNOULLI_HPP
#define ZETASTICK_BERNOULLI_HPP

#include <vector>

#include "stickel/rational.hpp"

namespace stk {

// B_n with the B_1 = -1/2 convention (so zeta(-k) = -B_{k+1}/(k+1))
Rat bernoulli_number(unsigned n);

// coefficients of B_n(x), constant term first
std::vector<Rat> bernoulli_poly(unsigned n);

Rat bernoulli_poly_at(unsigned n, const Rat& x);

}  // namespace stk

#endif
