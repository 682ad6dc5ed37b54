#pragma once

#include "qtheta/rational.hpp"

#include <complex>
#include <string>
#include <vector>

namespace qtheta {

unsigned euler_phi(unsigned n);

// Coefficients of the N-th cyclotomic polynomial, ascending degree.
// Computed by exact division of x^N - 1 by the lower-order polynomials,
// memoized, safe for concurrent use.
const std::vector<Int>& cyclotomic_poly(unsigned N);

/*
 * Element of the cyclotomic field Q(zeta_N), stored in the power basis
 * 1, zeta, ..., zeta^{phi(N)-1} with reduction mod Phi_N.  Representation
 * is canonical within a fixed N, so equality of coordinate vectors decides
 * equality of values.  Mixed-order arithmetic promotes both operands to
 * the lcm order; no demotion is ever attempted.
 */
class CycloNum {
public:
    CycloNum() : order_(1), c_{Rat()} {}
    CycloNum(const Rat& r) : order_(1), c_{r} {}
    CycloNum(int n) : CycloNum(Rat(n)) {}
    CycloNum(long n) : CycloNum(Rat(n)) {}

    // zeta_N^k (k any integer, reduced mod N)
    static CycloNum root(unsigned N, long k);
    // e^{i pi t} for rational t, as a root of unity
    static CycloNum pi_phase(const Rat& t);
    // reduce raw power-basis coefficients (any degree) mod Phi_N
    static CycloNum from_powers(unsigned N, std::vector<Rat> raw);

    unsigned order() const { return order_; }
    const std::vector<Rat>& coeffs() const { return c_; }

    // same value as an element of Q(zeta_M); requires order | M
    CycloNum promoted(unsigned M) const;
    bool is_zero() const;
    bool is_rational() const;
    Rat rational_value() const; // throws std::domain_error when not rational
    std::complex<double> to_complex() const;
    // power-basis rendering, e.g. "1 - z8^2"
    std::string str() const;

    CycloNum operator-() const;
    friend CycloNum operator+(const CycloNum& a, const CycloNum& b);
    friend CycloNum operator-(const CycloNum& a, const CycloNum& b);
    friend CycloNum operator*(const CycloNum& a, const CycloNum& b);
    CycloNum& operator+=(const CycloNum& o) { return *this = *this + o; }
    CycloNum& operator-=(const CycloNum& o) { return *this = *this - o; }
    CycloNum& operator*=(const CycloNum& o) { return *this = *this * o; }
    friend bool operator==(const CycloNum& a, const CycloNum& b);
    friend bool operator!=(const CycloNum& a, const CycloNum& b) { return !(a == b); }

private:
    CycloNum(unsigned order, std::vector<Rat> c) : order_(order), c_(std::move(c)) {}

    unsigned order_;
    std::vector<Rat> c_; // length phi(order_)
};

} // namespace qtheta
