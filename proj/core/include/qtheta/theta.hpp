#pragma once

#include "qtheta/series.hpp"

#include <complex>
#include <vector>

namespace qtheta {

enum class ThetaKind { theta1 = 1, theta2 = 2, theta3 = 3, theta4 = 4 };

ThetaKind theta_kind(int k); // validates 1..4

// sign * q^qexp * x^xvec with sign in {-1, +1}
struct Monomial {
    int sign{1};
    Rat qexp;
    XVec xvec;
};

// Truncated Jacobi theta series from the defining sums, with the argument
// shift and nome scaling folded into the walk (the only sound way to apply
// b != 0 shifts to an unbounded x-range).  Exact below `order`.
QxSeries theta(ThetaKind kind, const ArgSpec& arg, const Rat& order);

// Same function through the triple-product route; used to cross-check.
QxSeries theta_product(ThetaKind kind, const ArgSpec& arg, const Rat& order);

// (z; q^base)_infty for a monomial z, base > 0
QxSeries pochhammer(const Monomial& z, const Rat& base, const Rat& order);
// (c0 * q^e0 * x^v0; q^base)_infty for an arbitrary exact coefficient c0
QxSeries pochhammer_general(const CycloNum& c0, const Rat& e0, const XVec& v0,
                            const Rat& base, const Rat& order);

// Ramanujan's two-variable series f(a, b), qexp(a) + qexp(b) > 0
QxSeries f_ab(const Monomial& a, const Monomial& b, const Rat& order);

// phi(sign*q) = f(sq, sq) and psi(sign*q) = f(sq, sq^3), sign in {-1, +1}
QxSeries phi(int sign, const Rat& order);
QxSeries psi(int sign, const Rat& order);

// exact minimum q-exponent of theta(kind, {linear, {a, b}, tau_scale}, .)
// over the full summation range (independent of a and linear)
Rat theta_min_qexp(ThetaKind kind, const Rat& tau_scale, const Rat& b);

// minimum q-exponent of (c0 q^e0 x; q^base)_infty, i.e. the (negative)
// total of the negative factor exponents
Rat pochhammer_min_qexp(const Rat& e0, const Rat& base);

struct EvalResult {
    std::complex<double> value;
    double tail_bound;
};

// Numeric embedding at z-values and tau (Im tau > 0).  Fractional nome
// powers are computed as exp(2*pi*i*tau*e) directly from tau, never from a
// principal-branch power of q.
EvalResult eval_complex(const QxSeries& A, const std::vector<std::complex<double>>& zvals,
                        std::complex<double> tau);

} // namespace qtheta
