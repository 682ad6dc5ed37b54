#pragma once

#include "qtheta/cyclotomic.hpp"
#include "qtheta/rational.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qtheta {

// multiplicative x-exponent vector, one entry per formal variable
using XVec = std::vector<int>;

// argument shift z -> z + a*pi + b*pi*tau
struct ShiftSpec {
    Rat a;
    Rat b;
    bool is_zero() const { return a.is_zero() && b.is_zero(); }
};

// theta argument: (sum_v linear[v]*z_v) + a*pi + b*pi*tau, nome tau_scale*tau
struct ArgSpec {
    std::vector<int> linear;
    ShiftSpec shift;
    Rat tau_scale{1};
};

/*
 * Exactness bound of a truncated series: either a finite rational order
 * (terms with q-exponent strictly below it are exact and complete) or
 * infinite (the series is known exactly; polynomials only).
 */
class OrderBound {
public:
    OrderBound() = default;
    OrderBound(const Rat& v) : inf_(false), v_(v) {}
    static OrderBound infinity() {
        OrderBound o;
        o.inf_ = true;
        return o;
    }

    bool is_infinite() const { return inf_; }
    const Rat& value() const {
        if (inf_) throw std::logic_error("OrderBound: no finite value");
        return v_;
    }
    // is the exponent e strictly inside the certified range?
    bool covers(const Rat& e) const { return inf_ || e < v_; }

    OrderBound operator+(const Rat& d) const { return inf_ ? *this : OrderBound(v_ + d); }
    OrderBound operator+(const OrderBound& o) const {
        if (inf_ || o.inf_) return infinity();
        return OrderBound(v_ + o.v_);
    }
    OrderBound scaled(const Rat& c) const { return inf_ ? *this : OrderBound(v_ * c); }

    friend bool operator<(const OrderBound& x, const OrderBound& y) {
        if (y.inf_) return !x.inf_;
        if (x.inf_) return false;
        return x.v_ < y.v_;
    }
    friend bool operator==(const OrderBound& x, const OrderBound& y) {
        return x.inf_ == y.inf_ && (x.inf_ || x.v_ == y.v_);
    }
    static const OrderBound& min(const OrderBound& x, const OrderBound& y) {
        return y < x ? y : x;
    }

private:
    bool inf_ = false;
    Rat v_;
};

struct SeriesTerm {
    Rat qexp;
    XVec xvec;
    CycloNum coeff;
};

/*
 * Sparse truncated series in fractional powers of q and multiplicative
 * x-variables, coefficients in cyclotomic fields.  Terms are keyed by
 * (q-exponent, x-vector), lexicographic, stored coefficients nonzero,
 * every stored q-exponent strictly below the order bound.
 *
 * Arithmetic tracks exactness: order(A*B) = min(order(A) + mu(B),
 * order(B) + mu(A)) with mu the minimal stored q-exponent (infinite for
 * an empty series).  shift_var/eval_var with b != 0 recompute the order
 * from the stored x-range; generators with unbounded x-range fold such
 * shifts into construction instead (see theta()).
 */
class QxSeries {
public:
    using Key = std::pair<Rat, XVec>;
    using TermMap = std::map<Key, CycloNum>;

    explicit QxSeries(int dim, OrderBound order = OrderBound::infinity())
        : dim_(dim), order_(order) {
        if (dim < 0) throw std::invalid_argument("QxSeries: negative dimension");
    }

    static QxSeries zero(int dim) { return QxSeries(dim); }
    static QxSeries constant(int dim, const CycloNum& c) {
        QxSeries r(dim);
        r.add_term(Rat(), XVec(static_cast<size_t>(dim), 0), c);
        return r;
    }
    static QxSeries monomial(int dim, const CycloNum& c, const Rat& qexp, XVec xv) {
        QxSeries r(dim);
        if (static_cast<int>(xv.size()) != dim)
            throw std::invalid_argument("QxSeries: x-vector length != dimension");
        r.add_term(qexp, xv, c);
        return r;
    }

    int dim() const { return dim_; }
    const OrderBound& order() const { return order_; }
    const TermMap& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }

    // minimal stored q-exponent; infinite when there are no terms
    OrderBound min_qexp() const {
        if (terms_.empty()) return OrderBound::infinity();
        return OrderBound(terms_.begin()->first.first);
    }

    // accumulate a term; silently drops exponents at or beyond the order
    void add_term(const Rat& qexp, const XVec& xv, const CycloNum& c);

    // order clamped to min(current, o), terms beyond the new order dropped
    QxSeries truncated(const OrderBound& o) const;

    QxSeries operator-() const;
    friend QxSeries operator+(const QxSeries& a, const QxSeries& b);
    friend QxSeries operator-(const QxSeries& a, const QxSeries& b);
    friend QxSeries operator*(const QxSeries& a, const QxSeries& b);

    // c * q^dq * x^dx * A; empty dx means the zero vector
    QxSeries scaled(const CycloNum& c, const Rat& dq = Rat(), const XVec& dx = {}) const;

    // substitute z_v -> z_v + a*pi + b*pi*tau
    QxSeries shift_var(int v, const ShiftSpec& s) const;
    // substitute z_v -> a*pi + b*pi*tau and drop the variable
    QxSeries eval_var(int v, const ShiftSpec& s) const;
    // substitute tau -> c*tau, c > 0 (q-exponents scale by c)
    QxSeries scale_tau(const Rat& c) const;
    // add a fresh formal variable (exponent 0 everywhere) at `position`
    QxSeries insert_var(int position) const;

    // coefficient of q^e x^xv; requires e strictly below the order
    CycloNum coeff_at(const Rat& e, const XVec& xv) const;
    // requires O <= order
    bool is_zero_to_order(const Rat& O) const;
    std::optional<SeriesTerm> first_nonzero_below(const Rat& O) const;

    // one line per term: "(3/8, [2]) -> 1 - z8^2"
    std::string render() const;

private:
    int dim_;
    OrderBound order_;
    TermMap terms_;
};

} // namespace qtheta
