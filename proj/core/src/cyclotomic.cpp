#include "qtheta/cyclotomic.hpp"

#include <map>
#include <mutex>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace qtheta {

unsigned euler_phi(unsigned n) {
    if (n == 0) throw std::invalid_argument("euler_phi: n must be positive");
    unsigned result = n;
    unsigned m = n;
    for (unsigned p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            result -= result / p;
            while (m % p == 0) m /= p;
        }
    }
    if (m > 1) result -= result / m;
    return result;
}

namespace {

// exact quotient of two ascending-coefficient polynomials, divisor monic
std::vector<Int> poly_div_exact(std::vector<Int> num, const std::vector<Int>& den) {
    const size_t dn = num.size() - 1;
    const size_t dd = den.size() - 1;
    std::vector<Int> quot(dn - dd + 1);
    for (size_t i = dn + 1; i-- > dd;) {
        Int c = num[i];
        quot[i - dd] = c;
        if (c == 0) continue;
        for (size_t j = 0; j <= dd; ++j) num[i - dd + j] -= c * den[j];
    }
    for (const Int& c : num)
        if (c != 0) throw std::logic_error("cyclotomic_poly: division not exact");
    return quot;
}

std::mutex phi_mutex;
std::map<unsigned, std::vector<Int>> phi_memo;

const std::vector<Int>& phi_unlocked(unsigned N) {
    auto it = phi_memo.find(N);
    if (it != phi_memo.end()) return it->second;
    std::vector<Int> p(N + 1);
    p[0] = -1;
    p[N] = 1;
    for (unsigned d = 1; d < N; ++d)
        if (N % d == 0) p = poly_div_exact(std::move(p), phi_unlocked(d));
    return phi_memo.emplace(N, std::move(p)).first->second;
}

} // namespace

const std::vector<Int>& cyclotomic_poly(unsigned N) {
    if (N == 0) throw std::invalid_argument("cyclotomic_poly: N must be positive");
    std::scoped_lock lock(phi_mutex);
    return phi_unlocked(N);
}

CycloNum CycloNum::from_powers(unsigned N, std::vector<Rat> raw) {
    const std::vector<Int>& phi = cyclotomic_poly(N);
    const size_t d = phi.size() - 1;
    if (raw.size() < d) raw.resize(d);
    for (size_t i = raw.size(); i-- > d;) {
        if (raw[i].is_zero()) continue;
        Rat c = raw[i];
        raw[i] = Rat();
        // x^i = -x^{i-d} * (Phi_N - x^d)
        for (size_t j = 0; j < d; ++j) raw[i - d + j] -= c * Rat(phi[j]);
    }
    raw.resize(d);
    return CycloNum(N, std::move(raw));
}

CycloNum CycloNum::root(unsigned N, long k) {
    if (N == 0) throw std::invalid_argument("cyclo_root: order must be positive");
    long e = k % static_cast<long>(N);
    if (e < 0) e += static_cast<long>(N);
    std::vector<Rat> raw(static_cast<size_t>(e) + 1);
    raw[static_cast<size_t>(e)] = Rat(1);
    return from_powers(N, std::move(raw));
}

CycloNum CycloNum::pi_phase(const Rat& t) {
    // e^{i pi p/r} = zeta_{2r}^p
    Int den = t.den();
    if (!den.fits_uint_p())
        throw std::domain_error("pi_phase: denominator too large");
    unsigned N = 2 * static_cast<unsigned>(den.get_ui());
    Int num = t.num();
    unsigned long k = mpz_fdiv_ui(num.get_mpz_t(), N);
    return root(N, static_cast<long>(k));
}

CycloNum CycloNum::promoted(unsigned M) const {
    if (M == order_) return *this;
    if (M == 0 || M % order_ != 0)
        throw std::domain_error("cyclo_promote: current order does not divide target order");
    const unsigned t = M / order_;
    std::vector<Rat> raw((c_.size() - 1) * t + 1);
    for (size_t j = 0; j < c_.size(); ++j) raw[j * t] = c_[j];
    return from_powers(M, std::move(raw));
}

bool CycloNum::is_zero() const {
    for (const Rat& c : c_)
        if (!c.is_zero()) return false;
    return true;
}

bool CycloNum::is_rational() const {
    for (size_t j = 1; j < c_.size(); ++j)
        if (!c_[j].is_zero()) return false;
    return true;
}

Rat CycloNum::rational_value() const {
    if (!is_rational()) throw std::domain_error("CycloNum: value is not rational");
    return c_[0];
}

std::complex<double> CycloNum::to_complex() const {
    std::complex<double> acc;
    for (size_t j = 0; j < c_.size(); ++j) {
        if (c_[j].is_zero()) continue;
        double ang = 2.0 * std::numbers::pi * static_cast<double>(j) / order_;
        acc += c_[j].to_double() * std::polar(1.0, ang);
    }
    return acc;
}

std::string CycloNum::str() const {
    if (is_zero()) return "0";
    std::string out;
    bool first = true;
    for (size_t j = 0; j < c_.size(); ++j) {
        if (c_[j].is_zero()) continue;
        const bool neg = c_[j].sign() < 0;
        const Rat a = neg ? -c_[j] : c_[j];
        std::string body;
        if (j == 0) {
            body = a.str();
        } else {
            std::string var = "z" + std::to_string(order_);
            if (j > 1) var += "^" + std::to_string(j);
            body = (a == Rat(1)) ? var : a.str() + "*" + var;
        }
        if (first) {
            out = (neg ? "-" : "") + body;
            first = false;
        } else {
            out += (neg ? " - " : " + ") + body;
        }
    }
    return out;
}

CycloNum CycloNum::operator-() const {
    std::vector<Rat> c(c_.size());
    for (size_t j = 0; j < c_.size(); ++j) c[j] = -c_[j];
    return CycloNum(order_, std::move(c));
}

CycloNum operator+(const CycloNum& a, const CycloNum& b) {
    if (a.order_ != b.order_) {
        const unsigned L = std::lcm(a.order_, b.order_);
        return a.promoted(L) + b.promoted(L);
    }
    std::vector<Rat> c(a.c_.size());
    for (size_t j = 0; j < c.size(); ++j) c[j] = a.c_[j] + b.c_[j];
    return CycloNum(a.order_, std::move(c));
}

CycloNum operator-(const CycloNum& a, const CycloNum& b) { return a + (-b); }

CycloNum operator*(const CycloNum& a, const CycloNum& b) {
    const unsigned L = std::lcm(a.order_, b.order_);
    // rational scalars multiply coordinatewise after promotion
    if (a.is_rational() || b.is_rational()) {
        const CycloNum& scal = a.is_rational() ? a : b;
        const CycloNum& full = a.is_rational() ? b : a;
        const Rat s = scal.c_[0];
        CycloNum r = full.promoted(L);
        for (Rat& c : r.c_) c *= s;
        return r;
    }
    const CycloNum pa = a.promoted(L);
    const CycloNum pb = b.promoted(L);
    std::vector<Rat> conv(pa.c_.size() + pb.c_.size() - 1);
    for (size_t i = 0; i < pa.c_.size(); ++i) {
        if (pa.c_[i].is_zero()) continue;
        for (size_t j = 0; j < pb.c_.size(); ++j) {
            if (pb.c_[j].is_zero()) continue;
            conv[i + j] += pa.c_[i] * pb.c_[j];
        }
    }
    return CycloNum::from_powers(L, std::move(conv));
}

bool operator==(const CycloNum& a, const CycloNum& b) {
    if (a.order_ == b.order_) return a.c_ == b.c_;
    const unsigned L = std::lcm(a.order_, b.order_);
    return a.promoted(L).c_ == b.promoted(L).c_;
}

} // namespace qtheta
