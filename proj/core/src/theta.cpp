#include "qtheta/theta.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qtheta {

ThetaKind theta_kind(int k) {
    if (k < 1 || k > 4) throw std::invalid_argument("theta: kind must be 1..4");
    return static_cast<ThetaKind>(k);
}

namespace {

// visit every integer n with alpha*n^2 + beta*n + gamma < order, walking
// outward from the parabola vertex (alpha > 0)
template <class F>
void parabola_walk(const Rat& alpha, const Rat& beta, const Rat& gamma,
                   const Rat& order, F&& emit) {
    const Rat vertex = -beta / (alpha * Rat(2));
    const Int n0z = vertex.floor();
    if (!n0z.fits_slong_p())
        throw std::domain_error("theta: parabola vertex out of range");
    const long n0 = n0z.get_si();
    for (long n = n0;; --n) {
        const Rat q = (alpha * Rat(n) + beta) * Rat(n) + gamma;
        if (!(q < order)) break;
        emit(n, q);
    }
    for (long n = n0 + 1;; ++n) {
        const Rat q = (alpha * Rat(n) + beta) * Rat(n) + gamma;
        if (!(q < order)) break;
        emit(n, q);
    }
}

XVec scaled_linear(const std::vector<int>& linear, long f) {
    XVec xv(linear.size());
    for (size_t i = 0; i < linear.size(); ++i)
        xv[i] = static_cast<int>(linear[i] * f);
    return xv;
}

void check_arg(const ArgSpec& arg) {
    if (!(arg.tau_scale > Rat(0)))
        throw std::invalid_argument("theta: tau scale must be positive");
}

} // namespace

QxSeries theta(ThetaKind kind, const ArgSpec& arg, const Rat& order) {
    check_arg(arg);
    const Rat c = arg.tau_scale;
    const Rat a = arg.shift.a;
    const Rat b = arg.shift.b;
    const int dim = static_cast<int>(arg.linear.size());
    QxSeries r(dim, OrderBound(order));
    const Rat half(1, 2);
    switch (kind) {
    case ThetaKind::theta3:
    case ThetaKind::theta4:
        // sum_n (+-1)^n q^{c n^2/2 + b n} e^{2 i n (a pi)} x^{2 n L}
        parabola_walk(c * half, b, Rat(0), order, [&](long n, const Rat& q) {
            Rat t = a * Rat(2 * n);
            if (kind == ThetaKind::theta4) t += Rat(n);
            r.add_term(q, scaled_linear(arg.linear, 2 * n), CycloNum::pi_phase(t));
        });
        break;
    case ThetaKind::theta1:
    case ThetaKind::theta2:
        // sum_n s_n q^{c(1/8 + n(n+1)/2) + b(2n+1)/2} e^{(2n+1) i (a pi)} x^{(2n+1) L}
        // with s_n = -i(-1)^n for theta1 and 1 for theta2
        parabola_walk(c * half, c * half + b, c * Rat(1, 8) + b * half, order,
                      [&](long n, const Rat& q) {
                          Rat t = a * Rat(2 * n + 1);
                          if (kind == ThetaKind::theta1) t += Rat(n) - half;
                          r.add_term(q, scaled_linear(arg.linear, 2 * n + 1),
                                     CycloNum::pi_phase(t));
                      });
        break;
    }
    return r;
}

Rat theta_min_qexp(ThetaKind kind, const Rat& tau_scale, const Rat& b) {
    const Rat c = tau_scale;
    const Rat half(1, 2);
    Rat alpha, beta, gamma;
    if (kind == ThetaKind::theta3 || kind == ThetaKind::theta4) {
        alpha = c * half;
        beta = b;
    } else {
        alpha = c * half;
        beta = c * half + b;
        gamma = c * Rat(1, 8) + b * half;
    }
    const Rat vertex = -beta / (alpha * Rat(2));
    auto at = [&](const Int& n) {
        const Rat rn(n);
        return (alpha * rn + beta) * rn + gamma;
    };
    return min(at(vertex.floor()), at(vertex.ceil()));
}

Rat pochhammer_min_qexp(const Rat& e0, const Rat& base) {
    Rat total;
    for (Rat e = e0; e < Rat(0); e += base) total += e;
    return total;
}

QxSeries pochhammer_general(const CycloNum& c0, const Rat& e0, const XVec& v0,
                            const Rat& base, const Rat& order) {
    if (!(base > Rat(0)))
        throw std::invalid_argument("pochhammer: base exponent must be positive");
    const int dim = static_cast<int>(v0.size());
    if (c0.is_zero())
        return QxSeries::constant(dim, CycloNum(1)).truncated(OrderBound(order));
    // negative factor exponents lower exponents in the partial products;
    // start beyond the target by their total so the final truncation is exact
    const Rat neg_total = pochhammer_min_qexp(e0, base);
    QxSeries p = QxSeries::constant(dim, CycloNum(1)).truncated(OrderBound(order - neg_total));
    for (long k = 0;; ++k) {
        const Rat e = e0 + base * Rat(k);
        if (e.sign() > 0) {
            // the factor (1 - c0 q^e x^v0) only touches exponents >= e + mu(p)
            const OrderBound reach = p.min_qexp() + e;
            if (!(reach < p.order())) break;
        }
        p = p - p.scaled(c0, e, v0);
    }
    return p;
}

QxSeries pochhammer(const Monomial& z, const Rat& base, const Rat& order) {
    if (z.sign != 1 && z.sign != -1)
        throw std::invalid_argument("pochhammer: monomial sign must be +-1");
    return pochhammer_general(CycloNum(z.sign), z.qexp, z.xvec, base, order);
}

QxSeries theta_product(ThetaKind kind, const ArgSpec& arg, const Rat& order) {
    check_arg(arg);
    const Rat c = arg.tau_scale;
    const Rat a = arg.shift.a;
    const Rat b = arg.shift.b;
    const int dim = static_cast<int>(arg.linear.size());
    const XVec x2p = scaled_linear(arg.linear, 2);
    const XVec x2m = scaled_linear(arg.linear, -2);
    const CycloNum up = CycloNum::pi_phase(a * Rat(2));
    const CycloNum dn = CycloNum::pi_phase(a * Rat(-2));

    struct Fac {
        CycloNum c0;
        Rat e0;
        XVec v0;
    };
    std::vector<Fac> fs;
    CycloNum pre_c(1);
    Rat pre_dq;
    XVec pre_dx(static_cast<size_t>(dim), 0);
    const Rat half(1, 2);
    switch (kind) {
    case ThetaKind::theta3:
        fs = {{CycloNum(1), c, pre_dx}, {-up, c * half + b, x2p}, {-dn, c * half - b, x2m}};
        break;
    case ThetaKind::theta4:
        fs = {{CycloNum(1), c, pre_dx}, {up, c * half + b, x2p}, {dn, c * half - b, x2m}};
        break;
    case ThetaKind::theta2:
        fs = {{CycloNum(1), c, pre_dx}, {-up, b, x2p}, {-dn, c - b, x2m}};
        pre_c = CycloNum::pi_phase(-a);
        pre_dq = c * Rat(1, 8) - b * half;
        pre_dx = scaled_linear(arg.linear, -1);
        break;
    case ThetaKind::theta1:
        fs = {{CycloNum(1), c, pre_dx}, {up, b, x2p}, {dn, c - b, x2m}};
        pre_c = CycloNum::pi_phase(half - a);
        pre_dq = c * Rat(1, 8) - b * half;
        pre_dx = scaled_linear(arg.linear, -1);
        break;
    }

    const Rat target = order - pre_dq;
    Rat mu[3];
    for (int j = 0; j < 3; ++j) mu[j] = pochhammer_min_qexp(fs[j].e0, c);
    QxSeries prod = QxSeries::constant(dim, CycloNum(1));
    for (int j = 0; j < 3; ++j) {
        Rat oj = target;
        for (int k = 0; k < 3; ++k)
            if (k != j) oj -= mu[k];
        prod = prod * pochhammer_general(fs[j].c0, fs[j].e0, fs[j].v0, c, oj);
    }
    return prod.scaled(pre_c, pre_dq, pre_dx).truncated(OrderBound(order));
}

QxSeries f_ab(const Monomial& a, const Monomial& b, const Rat& order) {
    if (a.xvec.size() != b.xvec.size())
        throw std::invalid_argument("f_ab: dimension mismatch");
    if ((a.sign != 1 && a.sign != -1) || (b.sign != 1 && b.sign != -1))
        throw std::invalid_argument("f_ab: monomial sign must be +-1");
    const Rat s = a.qexp + b.qexp;
    if (!(s > Rat(0)))
        throw std::invalid_argument("f_ab: qexp(a) + qexp(b) must be positive");
    const int dim = static_cast<int>(a.xvec.size());
    QxSeries r(dim, OrderBound(order));
    const Rat half(1, 2);
    // sum_n a^{n(n+1)/2} b^{n(n-1)/2}
    parabola_walk(s * half, (a.qexp - b.qexp) * half, Rat(0), order,
                  [&](long n, const Rat& q) {
                      const long long t = static_cast<long long>(n) * (n + 1) / 2;
                      const long long u = static_cast<long long>(n) * (n - 1) / 2;
                      int sign = 1;
                      if (a.sign < 0 && (t & 1)) sign = -sign;
                      if (b.sign < 0 && (u & 1)) sign = -sign;
                      XVec xv(a.xvec.size());
                      for (size_t i = 0; i < xv.size(); ++i)
                          xv[i] = static_cast<int>(t * a.xvec[i] + u * b.xvec[i]);
                      r.add_term(q, xv, CycloNum(sign));
                  });
    return r;
}

QxSeries phi(int sign, const Rat& order) {
    if (sign != 1 && sign != -1) throw std::invalid_argument("phi: sign must be +-1");
    return f_ab({sign, Rat(1), {}}, {sign, Rat(1), {}}, order);
}

QxSeries psi(int sign, const Rat& order) {
    if (sign != 1 && sign != -1) throw std::invalid_argument("psi: sign must be +-1");
    return f_ab({sign, Rat(1), {}}, {sign, Rat(3), {}}, order);
}

EvalResult eval_complex(const QxSeries& A, const std::vector<std::complex<double>>& zvals,
                        std::complex<double> tau) {
    if (tau.imag() <= 0.0)
        throw std::invalid_argument("eval_complex: Im(tau) must be positive");
    if (static_cast<int>(zvals.size()) != A.dim())
        throw std::invalid_argument("eval_complex: wrong number of z values");
    const std::complex<double> i2pi_tau =
        std::complex<double>(0.0, 1.0) * 2.0 * std::numbers::pi * tau;
    std::complex<double> value;
    double max_coeff = 0.0;
    for (const auto& [k, c] : A.terms()) {
        std::complex<double> zpart;
        for (size_t v = 0; v < zvals.size(); ++v)
            zpart += static_cast<double>(k.second[v]) * zvals[v];
        const std::complex<double> term =
            c.to_complex() * std::exp(i2pi_tau * k.first.to_double() +
                                      std::complex<double>(0.0, 1.0) * zpart);
        value += term;
        max_coeff = std::max(max_coeff, std::abs(c.to_complex()));
    }
    double tail = 0.0;
    if (!A.order().is_infinite()) {
        const double qabs = std::exp(-2.0 * std::numbers::pi * tau.imag());
        tail = std::pow(qabs, A.order().value().to_double()) / (1.0 - qabs) *
               std::max(max_coeff, 1.0);
    }
    return {value, tail};
}

} // namespace qtheta
