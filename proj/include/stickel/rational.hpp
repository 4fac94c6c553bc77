#ifndef ZETASTICK_RATIONAL_HPP
#define ZETASTICK_RATIONAL_HPP

#include <gmpxx.h>
#include <string>
#include <vector>

namespace stk {

// All arithmetic in this project is exact: arbitrary-precision integers
// and rationals throughout, no floating point anywhere.
using Int = mpz_class;
using Rat = mpq_class;

inline Int int_pow(const Int& b, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

inline Rat rat_pow(const Rat& b, long e) {
    if (e < 0) return rat_pow(Rat(1) / b, -e);
    Rat r = 1;
    for (long i = 0; i < e; ++i) r *= b;
    return r;
}

// C(x, m) for rational (or integral) x and m >= 0.
inline Rat binom(const Rat& x, unsigned long m) {
    Rat num = 1;
    for (unsigned long i = 0; i < m; ++i) num *= x - Rat(static_cast<long>(i));
    Int fac;
    mpz_fac_ui(fac.get_mpz_t(), m);
    return num / Rat(fac);
}

inline Int binom_int(const Int& n, unsigned long m) {
    Rat b = binom(Rat(n), m);
    return b.get_num();  // always integral for integer n
}

inline Int rat_floor(const Rat& q) {
    Int r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return r;
}

inline Int factorial(unsigned long n) {
    Int f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return f;
}

// "p/q" with q omitted when 1; used in all machine-readable reports.
inline std::string rat_str(const Rat& r) {
    Rat c = r;
    c.canonicalize();
    if (c.get_den() == 1) return c.get_num().get_str();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

// Prime factorization by trial division (desk-scale inputs only).
std::vector<std::pair<Int, int>> inline factorize(Int n) {
    std::vector<std::pair<Int, int>> out;
    if (n < 0) n = -n;
    for (Int p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p == 0) {
            int e = 0;
            while (n % p == 0) { n /= p; ++e; }
            out.emplace_back(p, e);
        }
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

inline bool is_squarefree(const Int& n) {
    for (auto& [p, e] : factorize(n))
        if (e > 1) return false;
    return true;
}

// Denominator support check: den(r) divisible only by primes in `allowed`.
inline bool denominator_supported(const Rat& r, const std::vector<Int>& allowed) {
    Int d = r.get_den();
    for (const Int& p : allowed)
        while (d % p == 0) d /= p;
    return d == 1;
}

}  // namespace stk

#endif
