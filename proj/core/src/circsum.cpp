#include "qtheta/circsum.hpp"

#include <chrono>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace qtheta {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

size_t y_dim(const LatticeSumSpec& spec) {
    return spec.ys.empty() ? 0 : spec.ys[0].linear.size();
}

void validate(const LatticeSumSpec& spec) {
    if (spec.m < 1 || spec.n < 1)
        throw std::invalid_argument("lattice spec: m and n must be positive");
    if ((spec.m * spec.n) % 2 != 0)
        throw std::invalid_argument("lattice spec: m*n must be even, the sum is not circular otherwise");
    if (static_cast<long>(spec.ys.size()) != spec.n)
        throw std::invalid_argument("lattice spec: need exactly n offsets");
    const size_t ylen = y_dim(spec);
    std::vector<long> lsum(ylen, 0);
    Rat asum, bsum;
    for (const YSpec& y : spec.ys) {
        if (y.linear.size() != ylen)
            throw std::invalid_argument("lattice spec: offsets disagree on variable count");
        for (size_t v = 0; v < ylen; ++v) lsum[v] += y.linear[v];
        asum += y.shift.a;
        bsum += y.shift.b;
    }
    for (long s : lsum)
        if (s != 0) throw std::invalid_argument("lattice spec: offsets must sum to zero");
    if (!asum.is_zero() || !bsum.is_zero())
        throw std::invalid_argument("lattice spec: offsets must sum to zero");
}

// floor(sqrt(max(v, 0))) + 1 as a long, a safe outer radius for lattice walks
long sqrt_radius(const Rat& v) {
    if (v.sign() <= 0) return 1;
    Int f = v.floor();
    Int r;
    mpz_sqrt(r.get_mpz_t(), f.get_mpz_t());
    if (!r.fits_slong_p()) throw std::domain_error("lattice walk: radius out of range");
    return r.get_si() + 1;
}

// plain odometer enumeration of H for all-zero offsets; kept deliberately
// separate from the pruned search in h_coeff so the two can cross-check
QxSeries h_simple(long m, long n, const Rat& order) {
    const long mn = m * n;
    const Rat base = -Rat(mn * m, 8);
    QxSeries r(0, OrderBound(order));
    const Rat half(1, 2);
    const long radius = sqrt_radius((order - base) * Rat(2));
    std::vector<long> s(static_cast<size_t>(n), -radius);
    const size_t free_coords = static_cast<size_t>(n) - 1;
    while (true) {
        long partial = 0;
        for (size_t j = 0; j < free_coords; ++j) partial += s[j];
        s[free_coords] = mn / 2 - partial;
        Rat sq;
        for (size_t j = 0; j < static_cast<size_t>(n); ++j) sq += Rat(s[j] * s[j]);
        r.add_term(base + half * sq, {}, CycloNum(mn));
        size_t j = 0;
        for (; j < free_coords; ++j) {
            if (++s[j] <= radius) break;
            s[j] = -radius;
        }
        if (j == free_coords) break;
        if (free_coords == 0) break;
    }
    return r;
}

struct Factor {
    std::function<QxSeries(const Rat&)> gen;
    Rat mu; // lower bound on the factor's minimal q-exponent
};

// multiply generated factors so the result is certified at least to `order`
QxSeries product_to(const Rat& order, const std::vector<Factor>& fs) {
    Rat mu_total;
    for (const Factor& f : fs) mu_total += f.mu;
    QxSeries prod(0, OrderBound::infinity());
    bool first = true;
    for (const Factor& f : fs) {
        QxSeries s = f.gen(order - (mu_total - f.mu));
        prod = first ? std::move(s) : prod * s;
        first = false;
    }
    return prod;
}

} // namespace

QxSeries build_lhs(const LatticeSumSpec& spec) {
    validate(spec);
    const long mn = spec.m * spec.n;
    const int ylen = static_cast<int>(y_dim(spec));
    const int dim = 1 + ylen;
    std::vector<Rat> mus(spec.ys.size());
    for (size_t j = 0; j < spec.ys.size(); ++j)
        mus[j] = theta_min_qexp(ThetaKind::theta3, Rat(1), spec.ys[j].shift.b);
    QxSeries sum(dim, OrderBound(spec.order));
    for (long k = 0; k < mn; ++k) {
        std::vector<Factor> fs;
        for (size_t j = 0; j < spec.ys.size(); ++j) {
            ArgSpec arg;
            arg.linear.assign(static_cast<size_t>(dim), 0);
            arg.linear[0] = 1;
            for (int v = 0; v < ylen; ++v) arg.linear[1 + v] = spec.ys[j].linear[v];
            arg.shift = ShiftSpec{spec.ys[j].shift.a + Rat(k, mn), spec.ys[j].shift.b};
            fs.push_back({[arg](const Rat& o) { return theta(ThetaKind::theta3, arg, o); },
                          mus[j]});
        }
        QxSeries prod = product_to(spec.order, fs);
        sum = sum + (k % 2 ? -prod : prod);
    }
    return sum;
}

QxSeries h_coeff(const LatticeSumSpec& spec) {
    validate(spec);
    const long mn = spec.m * spec.n;
    const long n = spec.n;
    const int ylen = static_cast<int>(y_dim(spec));
    const Rat base = -Rat(mn * spec.m, 8);
    const Rat half(1, 2);
    QxSeries r(ylen, OrderBound(spec.order));
    // full budget for (1/2) sum (s_j + b_j)^2, one unit of margin
    Rat budget = spec.order - base + Rat(1);
    for (const YSpec& y : spec.ys) budget += half * y.shift.b * y.shift.b;

    std::vector<long> s(static_cast<size_t>(n), 0);
    // depth-first over s_0..s_{n-2}; the last coordinate is forced by the sum
    std::function<void(size_t, long, const Rat&)> walk =
        [&](size_t j, long need, const Rat& left) {
            const Rat& bj = spec.ys[j].shift.b;
            if (j + 1 == static_cast<size_t>(n)) {
                s[j] = need;
                const Rat d = Rat(need) + bj;
                if (half * d * d > left) return;
                Rat qexp = base;
                CycloNum coeff(mn);
                XVec xv(static_cast<size_t>(ylen), 0);
                for (size_t l = 0; l < static_cast<size_t>(n); ++l) {
                    const Rat sl(s[l]);
                    qexp += half * sl * sl + sl * spec.ys[l].shift.b;
                    coeff *= CycloNum::pi_phase(Rat(2) * spec.ys[l].shift.a * sl);
                    for (int v = 0; v < ylen; ++v)
                        xv[static_cast<size_t>(v)] +=
                            static_cast<int>(2 * s[l] * spec.ys[l].linear[v]);
                }
                r.add_term(qexp, xv, coeff);
                return;
            }
            const long radius = sqrt_radius(left * Rat(2));
            const long lo = (-bj - Rat(radius)).ceil().get_si();
            const long hi = (-bj + Rat(radius)).floor().get_si();
            for (long v = lo; v <= hi; ++v) {
                const Rat d = Rat(v) + bj;
                const Rat g = half * d * d;
                if (g > left) continue;
                s[j] = v;
                walk(j + 1, need - v, left - g);
            }
        };
    walk(0, mn / 2, budget);
    return r;
}

QxSeries h_m2_closed(long m, const Rat& order) {
    if (m < 1) throw std::invalid_argument("h_m2_closed: m must be positive");
    const ThetaKind kind = (m % 2) ? ThetaKind::theta2 : ThetaKind::theta3;
    return theta(kind, ArgSpec{{2}, {}, Rat(2)}, order).scaled(CycloNum(2 * m));
}

CheckReport verify_fund(const LatticeSumSpec& spec) {
    const auto t0 = Clock::now();
    validate(spec);
    const long mn = spec.m * spec.n;
    const Rat mu_theta2 = Rat(spec.m * mn, 8);
    QxSeries lhs = build_lhs(spec);

    LatticeSumSpec hspec = spec;
    hspec.order = spec.order - mu_theta2;
    QxSeries h = h_coeff(hspec).insert_var(0);
    const Rat mu_h = h.min_qexp().is_infinite() ? Rat(0) : h.min_qexp().value();
    ArgSpec arg;
    arg.linear.assign(1 + y_dim(spec), 0);
    arg.linear[0] = static_cast<int>(mn);
    arg.tau_scale = Rat(spec.m * mn);
    QxSeries rhs = h * theta(ThetaKind::theta2, arg, spec.order - mu_h);

    return diff_report("fund", spec_str(spec), lhs - rhs, spec.order, seconds_since(t0));
}

std::vector<std::string> catalog_names() {
    return {"fund",   "boona",  "gc",    "theta1-sum", "2m1",
            "prop-m1", "prop-4z", "mod-a", "mod-b",      "mod-c",
            "mod-d",  "mod-e",  "mod-f", "q1-prod",    "q2-prod"};
}

std::map<std::string, long> catalog_default_params(const std::string& name) {
    if (name == "fund") return {{"m", 2}, {"n", 1}};
    if (name == "boona") return {{"m", 2}};
    if (name == "gc" || name == "theta1-sum") return {{"n", 1}};
    if (name == "2m1") return {{"m", 1}};
    if (name == "q1-prod" || name == "q2-prod") return {{"n", 1}};
    if (name == "prop-m1" || name == "prop-4z" || name.rfind("mod-", 0) == 0) return {};
    throw std::invalid_argument("unknown catalog identity: " + name);
}

Rat catalog_default_order(const std::string& name) {
    return name.rfind("mod-", 0) == 0 ? Rat(100) : Rat(30);
}

std::string param_str(const std::map<std::string, long>& params) {
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, v] : params) {
        if (!first) os << " ";
        first = false;
        os << k << "=" << v;
    }
    return os.str();
}

namespace {

std::string yspec_str(const YSpec& y) {
    std::ostringstream os;
    bool any = false;
    auto join = [&](const std::string& part) {
        if (any) os << "+";
        os << part;
        any = true;
    };
    for (size_t v = 0; v < y.linear.size(); ++v) {
        if (y.linear[v] == 0) continue;
        std::string var = y.linear.size() == 1 ? "y" : "y" + std::to_string(v + 1);
        join(y.linear[v] == 1 ? var : std::to_string(y.linear[v]) + var);
    }
    if (!y.shift.a.is_zero()) join(y.shift.a.str() + "pi");
    if (!y.shift.b.is_zero()) join(y.shift.b.str() + "pitau");
    if (!any) return "0";
    return os.str();
}

// shared builders ------------------------------------------------------

QxSeries theta_z(ThetaKind kind, int zcoef, const Rat& a_shift, const Rat& tau_scale,
                 const Rat& order) {
    return theta(kind, ArgSpec{{zcoef}, ShiftSpec{a_shift, Rat(0)}, tau_scale}, order);
}

QxSeries phi_at(int sign, long r, const Rat& order) {
    return phi(sign, order / Rat(r)).scale_tau(Rat(r));
}

QxSeries psi_at(int sign, long r, const Rat& order) {
    return psi(sign, order / Rat(r)).scale_tau(Rat(r));
}

QxSeries series_pow(const QxSeries& base, long e, const Rat& order) {
    QxSeries r = base;
    for (long i = 1; i < e; ++i) r = (r * base).truncated(OrderBound(order));
    return r;
}

} // namespace

std::string spec_str(const LatticeSumSpec& spec) {
    std::ostringstream os;
    os << "m=" << spec.m << " n=" << spec.n << " y=[";
    for (size_t j = 0; j < spec.ys.size(); ++j) {
        if (j) os << ", ";
        os << yspec_str(spec.ys[j]);
    }
    os << "]";
    return os.str();
}

std::pair<QxSeries, QxSeries> catalog_sides(const std::string& name,
                                            const std::map<std::string, long>& params,
                                            const Rat& order) {
    std::map<std::string, long> p = catalog_default_params(name);
    for (const auto& [k, v] : params) {
        if (!p.count(k))
            throw std::invalid_argument("identity " + name + " takes no parameter '" + k + "'");
        p[k] = v;
    }
    const Rat O = order;
    const Rat half(1, 2);

    if (name == "fund") {
        const long m = p.at("m"), n = p.at("n");
        LatticeSumSpec s{m, n, std::vector<YSpec>(static_cast<size_t>(n)), O};
        QxSeries lhs = build_lhs(s);
        const long mn = m * n;
        QxSeries h = h_simple(m, n, O - Rat(m * mn, 8)).insert_var(0);
        const Rat mu_h = h.min_qexp().is_infinite() ? Rat(0) : h.min_qexp().value();
        QxSeries rhs = h * theta_z(ThetaKind::theta2, static_cast<int>(mn), Rat(0),
                                   Rat(m * mn), O - mu_h);
        return {lhs, rhs};
    }
    if (name == "boona") {
        const long m = p.at("m");
        QxSeries lhs(1, OrderBound(O));
        for (long k = 0; k < 2 * m; ++k) {
            QxSeries t = theta_z(ThetaKind::theta3, 1, Rat(k, 2 * m), Rat(1), O);
            lhs = lhs + (k % 2 ? -t : t);
        }
        QxSeries rhs = theta_z(ThetaKind::theta2, static_cast<int>(2 * m), Rat(0),
                               Rat(4 * m * m), O)
                           .scaled(CycloNum(2 * m));
        return {lhs, rhs};
    }
    if (name == "gc" || name == "theta1-sum") {
        const long n = p.at("n");
        const bool alternating = (name == "gc");
        const ThetaKind lk = alternating ? ThetaKind::theta3 : ThetaKind::theta1;
        const Rat mu = alternating ? Rat(0) : Rat(1, 8);
        QxSeries lhs(1, OrderBound(O));
        for (long k = 0; k < 2 * n; ++k) {
            QxSeries base = theta_z(lk, 1, Rat(k, 2 * n), Rat(1), O - Rat(2 * n - 1) * mu);
            QxSeries t = series_pow(base, 2 * n, O);
            lhs = lhs + (alternating && (k % 2) ? -t : t);
        }
        QxSeries h = h_simple(1, 2 * n, O).insert_var(0);
        const Rat mu_h = h.min_qexp().is_infinite() ? Rat(0) : h.min_qexp().value();
        const ThetaKind rk = alternating ? ThetaKind::theta2 : ThetaKind::theta3;
        QxSeries rhs =
            h * theta_z(rk, static_cast<int>(2 * n), Rat(0), Rat(2 * n), O - mu_h);
        return {lhs, rhs};
    }
    if (name == "2m1") {
        const long m = p.at("m");
        QxSeries lhs(2, OrderBound(O));
        for (long k = 0; k < 2 * m; ++k) {
            const Rat a(k, 2 * m);
            QxSeries t = theta(ThetaKind::theta3, ArgSpec{{1, 1}, ShiftSpec{a, Rat(0)}, Rat(1)}, O) *
                         theta(ThetaKind::theta3, ArgSpec{{1, -1}, ShiftSpec{a, Rat(0)}, Rat(1)}, O);
            lhs = lhs + (k % 2 ? -t : t);
        }
        const Rat mu_z = Rat(m * m, 4); // theta2(2mz | 2m^2 tau)
        QxSeries h = h_m2_closed(m, O - mu_z).insert_var(0);
        const Rat mu_h = h.min_qexp().is_infinite() ? Rat(0) : h.min_qexp().value();
        QxSeries rhs = h * theta(ThetaKind::theta2,
                                 ArgSpec{{static_cast<int>(2 * m), 0}, ShiftSpec{}, Rat(2 * m * m)},
                                 O - mu_h);
        return {lhs, rhs};
    }
    if (name == "prop-m1") {
        auto pair_prod = [&](ThetaKind k) {
            return theta(k, ArgSpec{{1, 1}, ShiftSpec{}, Rat(1)}, O) *
                   theta(k, ArgSpec{{1, -1}, ShiftSpec{}, Rat(1)}, O);
        };
        QxSeries lhs = pair_prod(ThetaKind::theta3) - pair_prod(ThetaKind::theta4);
        const Rat quarter(1, 4);
        QxSeries rhs = theta(ThetaKind::theta2, ArgSpec{{0, 2}, ShiftSpec{}, Rat(2)}, O - quarter) *
                       theta(ThetaKind::theta2, ArgSpec{{2, 0}, ShiftSpec{}, Rat(2)}, O - quarter);
        rhs = rhs.scaled(CycloNum(2));
        return {lhs, rhs};
    }
    if (name == "prop-4z") {
        auto pair_prod = [&](ThetaKind k, const Rat& a) {
            return theta(k, ArgSpec{{1, 1}, ShiftSpec{a, Rat(0)}, Rat(1)}, O) *
                   theta(k, ArgSpec{{1, -1}, ShiftSpec{a, Rat(0)}, Rat(1)}, O);
        };
        const Rat quarter(1, 4);
        QxSeries lhs = pair_prod(ThetaKind::theta3, Rat(0)) - pair_prod(ThetaKind::theta3, quarter) +
                       pair_prod(ThetaKind::theta4, Rat(0)) - pair_prod(ThetaKind::theta4, quarter);
        QxSeries rhs = theta(ThetaKind::theta3, ArgSpec{{0, 2}, ShiftSpec{}, Rat(2)}, O - Rat(1)) *
                       theta(ThetaKind::theta2, ArgSpec{{4, 0}, ShiftSpec{}, Rat(8)}, O);
        rhs = rhs.scaled(CycloNum(4));
        return {lhs, rhs};
    }
    if (name == "mod-a")
        return {phi(1, O) * psi_at(1, 2, O), psi(1, O) * psi(1, O)};
    if (name == "mod-b")
        return {phi(1, O) - phi(-1, O), psi_at(1, 8, O - Rat(1)).scaled(CycloNum(4), Rat(1))};
    if (name == "mod-c")
        return {phi(1, O) + phi(-1, O), phi_at(1, 4, O).scaled(CycloNum(2))};
    if (name == "mod-d") {
        QxSeries p4 = psi_at(1, 4, O - Rat(1));
        return {phi(1, O) * phi(1, O) - phi(-1, O) * phi(-1, O),
                (p4 * p4).scaled(CycloNum(8), Rat(1))};
    }
    if (name == "mod-e") {
        QxSeries rhs = (psi_at(1, 2, O - Rat(1)) * psi_at(1, 8, O - Rat(1)))
                           .scaled(CycloNum(4), Rat(1));
        return {psi(1, O) * psi(1, O) - phi(-1, O) * psi_at(1, 2, O), rhs};
    }
    if (name == "mod-f") {
        QxSeries rhs = (psi_at(1, 2, O) * phi_at(1, 4, O)).scaled(CycloNum(2));
        return {psi(1, O) * psi(1, O) + phi(-1, O) * psi_at(1, 2, O), rhs};
    }
    if (name == "q1-prod") {
        const long n = p.at("n");
        QxSeries lhs = pochhammer({1, Rat(2 * n), {0}}, Rat(2 * n), O);
        for (long j = 1; j <= n; ++j) {
            const Rat a(2 * j - 1, 4 * n);
            lhs = lhs * theta_z(ThetaKind::theta3, 1, a, Rat(1), O);
            lhs = lhs * theta_z(ThetaKind::theta3, 1, -a, Rat(1), O);
        }
        QxSeries rhs = series_pow(pochhammer({1, Rat(1), {0}}, Rat(1), O), 2 * n, O) *
                       theta_z(ThetaKind::theta3, static_cast<int>(2 * n), Rat(0), Rat(2 * n), O);
        return {lhs, rhs};
    }
    if (name == "q2-prod") {
        const long n = p.at("n");
        std::vector<Factor> fs;
        fs.push_back({[n](const Rat& o) {
                          return pochhammer({1, Rat(1, 2 * n), {0}}, Rat(1, 2 * n), o);
                      },
                      Rat(0)});
        for (long j = 1; j <= n; ++j) {
            const Rat b(2 * j - 1, 4 * n);
            for (int sgn : {1, -1}) {
                const Rat bs = b * Rat(sgn);
                fs.push_back({[bs](const Rat& o) {
                                  return theta(ThetaKind::theta3,
                                               ArgSpec{{1}, ShiftSpec{Rat(0), bs}, Rat(1)}, o);
                              },
                              theta_min_qexp(ThetaKind::theta3, Rat(1), bs)});
            }
        }
        QxSeries lhs = product_to(O, fs);
        QxSeries rhs = series_pow(pochhammer({1, Rat(1), {0}}, Rat(1), O), 2 * n, O) *
                       theta(ThetaKind::theta3, ArgSpec{{1}, ShiftSpec{}, Rat(1, 2 * n)}, O);
        return {lhs, rhs};
    }
    throw std::invalid_argument("unknown catalog identity: " + name);
}

CheckReport verify_named(const std::string& name,
                         const std::map<std::string, long>& params, const Rat& order) {
    const auto t0 = Clock::now();
    std::map<std::string, long> merged = catalog_default_params(name);
    for (const auto& [k, v] : params) {
        if (!merged.count(k))
            throw std::invalid_argument("identity " + name + " takes no parameter '" + k + "'");
        merged[k] = v;
    }
    auto [lhs, rhs] = catalog_sides(name, params, order);
    return diff_report(name, param_str(merged), lhs - rhs, order, seconds_since(t0));
}

} // namespace qtheta
