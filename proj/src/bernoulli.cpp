#include "stickel/bernoulli.hpp"

#include <mutex>

namespace stk {

// Akiyama-Tanigawa gives B_n with B_1 = +1/2; flip the sign of B_1 for the
// zeta-friendly convention (all other odd B_n vanish anyway).
static std::vector<Rat> g_bern{Rat(1), Rat(-1, 2)};
static std::mutex g_bern_mu;

Rat bernoulli_number(unsigned n) {
    std::lock_guard<std::mutex> lock(g_bern_mu);
    while (g_bern.size() <= n) {
        unsigned target = (unsigned)g_bern.size();
        std::vector<Rat> row((size_t)target + 1);
        for (unsigned j = 0; j <= target; j++) row[j] = Rat(1, (signed long)j + 1);
        for (unsigned i = 1; i <= target; i++)
            for (unsigned j = 0; j <= target - i; j++)
                row[j] = Rat((signed long)j + 1) * (row[j] - row[j + 1]);
        Rat b = row[0];  // B_target with B_1 = +1/2
        if (target == 1) b = -b;
        g_bern.push_back(b);
    }
    return g_bern[n];
}

std::vector<Rat> bernoulli_poly(unsigned n) {
    // B_n(x) = sum_k C(n,k) B_k x^{n-k}
    std::vector<Rat> c((size_t)n + 1, Rat(0));
    for (unsigned k = 0; k <= n; k++)
        c[n - k] = Rat(binom_int(Int(n), k)) * bernoulli_number(k);
    return c;
}

Rat bernoulli_poly_at(unsigned n, const Rat& x) {
    std::vector<Rat> c = bernoulli_poly(n);
    Rat v = 0;
    for (size_t i = c.size(); i-- > 0;) v = v * x + c[i];
    return v;
}

}  // namespace stk
