#pragma once

#include "qtheta/report.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace qtheta {

struct EtaPowResult {
    long n = 1;              // corollary parameter
    Rat order;
    std::vector<Int> coeffs; // coefficient of q^k for 0 <= k < order
    std::string method;      // "euler" | "cor-q1" | "cor-q2"
};

// oracle route: (q^base; q^base)_infty^e by exact integer self-convolution,
// e positive and even
EtaPowResult euler_pow(long e, long base, const Rat& order);

// (q; q)_infty^{2n} from the pi/(4n)-specialized circular sum:
// q^{-m^2 n} (q^{2n}; q^{2n})_infty * sum over s in Z^{2n}, sum s = 2mn, of
// q^{(1/2) sum s_j^2} e^{(pi i/2n) sum (s_l - s_{n+l})(2l-1)}
EtaPowResult cor_q1(long n, const Rat& order);
EtaPowResult cor_q1_m(long n, long m, const Rat& order); // m-independent family

// (q^{2n}; q^{2n})_infty^{2n} from the (pi tau)/(4n)-specialized sum:
// q^{-m^2 n^2/2} (q; q)_infty * sum over s in Z^{2n}, sum s = mn, of
// q^{n sum s_j^2 + (1/2) sum (s_l - s_{n+l})(2l-1)}
EtaPowResult cor_q2(long n, const Rat& order);
EtaPowResult cor_q2_m(long n, long m, const Rat& order);

// runs all three methods (concurrently) and compares coefficient tables
CheckReport crosscheck(long n, const Rat& order);

// columns: k, euler, cor_q1, cor_q2, agree; `agree` is 1 when each
// corollary matches its own oracle at that k
void write_csv(std::ostream& os, const EtaPowResult& euler1, const EtaPowResult& q1,
               const EtaPowResult& euler2n, const EtaPowResult& q2);

} // namespace qtheta
