#include "qtheta/etapower.hpp"

#include "qtheta/theta.hpp"

#include <chrono>
#include <functional>
#include <future>
#include <ostream>
#include <stdexcept>

namespace qtheta {

namespace {

// number of integer exponents in [0, order)
long table_size(const Rat& order) {
    Int k = order.ceil();
    if (!k.fits_slong_p() || k.get_si() < 0)
        throw std::invalid_argument("etapow: order out of range");
    return k.get_si();
}

// dense integer coefficient table of a series asserted to be integral
std::vector<Int> integer_table(const QxSeries& s, const Rat& order, const char* what) {
    std::vector<Int> out(static_cast<size_t>(table_size(order)));
    for (const auto& [k, c] : s.terms()) {
        if (!(k.first < order)) break;
        if (!k.first.is_integer())
            throw std::logic_error(std::string(what) + ": non-integer exponent survived at q^" +
                                   k.first.str());
        if (!c.is_rational() || !c.rational_value().is_integer())
            throw std::logic_error(std::string(what) + ": phase failed to collapse to an integer at q^" +
                                   k.first.str());
        const Int idx = k.first.num();
        if (idx >= 0 && idx < Int(static_cast<long>(out.size())))
            out[idx.get_ui()] = c.rational_value().num();
    }
    return out;
}

long sqrt_radius(const Rat& v) {
    if (v.sign() <= 0) return 1;
    Int f = v.floor();
    Int r;
    mpz_sqrt(r.get_mpz_t(), f.get_mpz_t());
    return r.get_si() + 1;
}

} // namespace

EtaPowResult euler_pow(long e, long base, const Rat& order) {
    if (e < 2 || e % 2 != 0)
        throw std::invalid_argument("euler_pow: exponent must be positive and even");
    if (base < 1) throw std::invalid_argument("euler_pow: base must be positive");
    const long K = table_size(order);
    std::vector<Int> p(static_cast<size_t>(K));
    {
        QxSeries euler = pochhammer({1, Rat(base), {}}, Rat(base), order);
        p = integer_table(euler, order, "euler_pow");
    }
    std::vector<Int> acc(static_cast<size_t>(K));
    if (K > 0) acc[0] = 1;
    for (long rep = 0; rep < e; ++rep) {
        std::vector<Int> next(static_cast<size_t>(K));
        for (long i = 0; i < K; ++i) {
            if (acc[i] == 0) continue;
            for (long j = 0; i + j < K; ++j) {
                if (p[j] == 0) continue;
                next[i + j] += acc[i] * p[j];
            }
        }
        acc = std::move(next);
    }
    EtaPowResult r;
    r.n = e / 2;
    r.order = order;
    r.coeffs = std::move(acc);
    r.method = "euler";
    return r;
}

EtaPowResult cor_q1_m(long n, long m, const Rat& order) {
    if (n < 1 || m < 1) throw std::invalid_argument("cor_q1: n and m must be positive");
    const long dim = 2 * n;
    const Rat half(1, 2);
    const Rat pre = -Rat(m * m * n); // exponent shift q^{-m^2 n}
    QxSeries lattice(0, OrderBound(order));
    // (1/2) sum s_j^2 <= order + m^2 n + 1
    const Rat budget = order - pre + Rat(1);
    std::vector<long> s(static_cast<size_t>(dim), 0);
    std::function<void(long, long, const Rat&)> walk = [&](long j, long need,
                                                           const Rat& left) {
        if (j + 1 == dim) {
            s[static_cast<size_t>(j)] = need;
            const Rat g = half * Rat(need) * Rat(need);
            if (g > left) return;
            Rat qexp = pre;
            long phase = 0;
            for (long l = 0; l < dim; ++l) {
                qexp += half * Rat(s[l]) * Rat(s[l]);
                const long odd = 2 * (l % n) + 1;
                phase += (l < n ? odd : -odd) * s[l];
            }
            lattice.add_term(qexp, {}, CycloNum::pi_phase(Rat(phase, 2 * n)));
            return;
        }
        const long radius = sqrt_radius(left * Rat(2));
        for (long v = -radius; v <= radius; ++v) {
            const Rat g = half * Rat(v) * Rat(v);
            if (g > left) continue;
            s[static_cast<size_t>(j)] = v;
            walk(j + 1, need - v, left - g);
        }
    };
    walk(0, 2 * m * n, budget);

    const Rat mu = lattice.min_qexp().is_infinite() ? Rat(0)
                                                    : min(lattice.min_qexp().value(), Rat(0));
    QxSeries prod = lattice * pochhammer({1, Rat(2 * n), {}}, Rat(2 * n), order - mu);
    EtaPowResult r;
    r.n = n;
    r.order = order;
    r.coeffs = integer_table(prod, order, "cor-q1");
    r.method = "cor-q1";
    return r;
}

EtaPowResult cor_q1(long n, const Rat& order) { return cor_q1_m(n, 1, order); }

EtaPowResult cor_q2_m(long n, long m, const Rat& order) {
    if (n < 1 || m < 1) throw std::invalid_argument("cor_q2: n and m must be positive");
    const long dim = 2 * n;
    const Rat half(1, 2);
    const Rat pre = -Rat(m * m * n * n, 2); // exponent shift q^{-m^2 n^2/2}
    const Rat rn(n);
    // per-coordinate completed-square offsets c_j = +-(2l-1)/2
    std::vector<Rat> cs(static_cast<size_t>(dim));
    Rat csq_total;
    for (long l = 0; l < dim; ++l) {
        const long odd = 2 * (l % n) + 1;
        cs[static_cast<size_t>(l)] = Rat(l < n ? odd : -odd, 2);
        csq_total += cs[static_cast<size_t>(l)] * cs[static_cast<size_t>(l)] / (rn * Rat(4));
    }
    // n sum (s_j + c_j/(2n))^2 <= order - pre + sum c_j^2/(4n) + 1
    const Rat budget = order - pre + csq_total + Rat(1);
    QxSeries lattice(0, OrderBound(order));
    std::vector<long> s(static_cast<size_t>(dim), 0);
    std::function<void(long, long, const Rat&)> walk = [&](long j, long need,
                                                           const Rat& left) {
        const Rat& cj = cs[static_cast<size_t>(j)];
        auto gain = [&](long v) {
            const Rat d = Rat(v) + cj / (rn * Rat(2));
            return rn * d * d;
        };
        if (j + 1 == dim) {
            s[static_cast<size_t>(j)] = need;
            if (gain(need) > left) return;
            Rat qexp = pre;
            for (long l = 0; l < dim; ++l)
                qexp += rn * Rat(s[l]) * Rat(s[l]) + cs[static_cast<size_t>(l)] * Rat(s[l]);
            lattice.add_term(qexp, {}, CycloNum(1));
            return;
        }
        const long radius = sqrt_radius(left / rn) + 1;
        for (long v = -radius; v <= radius; ++v) {
            const Rat g = gain(v);
            if (g > left) continue;
            s[static_cast<size_t>(j)] = v;
            walk(j + 1, need - v, left - g);
        }
    };
    walk(0, m * n, budget);

    const Rat mu = lattice.min_qexp().is_infinite() ? Rat(0)
                                                    : min(lattice.min_qexp().value(), Rat(0));
    QxSeries prod = lattice * pochhammer({1, Rat(1), {}}, Rat(1), order - mu);
    EtaPowResult r;
    r.n = n;
    r.order = order;
    r.coeffs = integer_table(prod, order, "cor-q2");
    r.method = "cor-q2";
    return r;
}

EtaPowResult cor_q2(long n, const Rat& order) { return cor_q2_m(n, 1, order); }

CheckReport crosscheck(long n, const Rat& order) {
    const auto t0 = std::chrono::steady_clock::now();
    auto fe1 = std::async(std::launch::async, [&] { return euler_pow(2 * n, 1, order); });
    auto fq1 = std::async(std::launch::async, [&] { return cor_q1(n, order); });
    auto fe2 = std::async(std::launch::async, [&] { return euler_pow(2 * n, 2 * n, order); });
    auto fq2 = std::async(std::launch::async, [&] { return cor_q2(n, order); });
    const EtaPowResult e1 = fe1.get(), q1 = fq1.get(), e2 = fe2.get(), q2 = fq2.get();

    CheckReport rep;
    rep.name = "etapow";
    rep.params = "n=" + std::to_string(n);
    rep.order = order;
    rep.verdict = Verdict::pass;
    auto compare = [&](const EtaPowResult& oracle, const EtaPowResult& cor) {
        for (size_t k = 0; k < oracle.coeffs.size() && rep.verdict == Verdict::pass; ++k) {
            if (oracle.coeffs[k] != cor.coeffs[k]) {
                rep.verdict = Verdict::fail;
                rep.first_bad = FirstBad{Rat(static_cast<long>(k)), {},
                                         CycloNum(Rat(cor.coeffs[k] - oracle.coeffs[k]))};
                rep.message = cor.method + " disagrees with euler oracle";
            }
        }
    };
    compare(e1, q1);
    if (rep.verdict == Verdict::pass) compare(e2, q2);
    rep.wall_time_sec =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

void write_csv(std::ostream& os, const EtaPowResult& euler1, const EtaPowResult& q1,
               const EtaPowResult& euler2n, const EtaPowResult& q2) {
    os << "k,euler,cor_q1,cor_q2,agree\n";
    const size_t K = euler1.coeffs.size();
    for (size_t k = 0; k < K; ++k) {
        const bool ok = euler1.coeffs[k] == q1.coeffs[k] && euler2n.coeffs[k] == q2.coeffs[k];
        os << k << "," << euler1.coeffs[k].get_str() << "," << q1.coeffs[k].get_str() << ","
           << q2.coeffs[k].get_str() << "," << (ok ? 1 : 0) << "\n";
    }
}

} // namespace qtheta
