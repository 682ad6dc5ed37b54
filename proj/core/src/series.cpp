#include "qtheta/series.hpp"

#include <sstream>
#include <stdexcept>

namespace qtheta {

namespace {

XVec xvec_add(const XVec& a, const XVec& b) {
    XVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

} // namespace

void QxSeries::add_term(const Rat& qexp, const XVec& xv, const CycloNum& c) {
    if (static_cast<int>(xv.size()) != dim_)
        throw std::invalid_argument("QxSeries: x-vector length != dimension");
    if (!order_.covers(qexp) || c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(Key(qexp, xv), c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

QxSeries QxSeries::truncated(const OrderBound& o) const {
    QxSeries r(dim_, OrderBound::min(order_, o));
    for (const auto& [k, c] : terms_) {
        if (!r.order_.covers(k.first)) break;
        r.terms_.emplace(k, c);
    }
    return r;
}

QxSeries QxSeries::operator-() const {
    QxSeries r(dim_, order_);
    for (const auto& [k, c] : terms_) r.terms_.emplace(k, -c);
    return r;
}

QxSeries operator+(const QxSeries& a, const QxSeries& b) {
    if (a.dim_ != b.dim_)
        throw std::invalid_argument("series_add: dimension mismatch");
    QxSeries r(a.dim_, OrderBound::min(a.order_, b.order_));
    for (const auto& [k, c] : a.terms_) r.add_term(k.first, k.second, c);
    for (const auto& [k, c] : b.terms_) r.add_term(k.first, k.second, c);
    return r;
}

QxSeries operator-(const QxSeries& a, const QxSeries& b) { return a + (-b); }

QxSeries operator*(const QxSeries& a, const QxSeries& b) {
    if (a.dim_ != b.dim_)
        throw std::invalid_argument("series_mul: dimension mismatch");
    const OrderBound order =
        OrderBound::min(a.order_ + b.min_qexp(), b.order_ + a.min_qexp());
    QxSeries r(a.dim_, order);
    for (const auto& [ka, ca] : a.terms_) {
        for (const auto& [kb, cb] : b.terms_) {
            const Rat e = ka.first + kb.first;
            // keys ascend in q-exponent first, so the tail is all beyond order
            if (!order.covers(e)) break;
            r.add_term(e, xvec_add(ka.second, kb.second), ca * cb);
        }
    }
    return r;
}

QxSeries QxSeries::scaled(const CycloNum& c, const Rat& dq, const XVec& dx) const {
    XVec shift = dx;
    if (shift.empty()) shift.assign(static_cast<size_t>(dim_), 0);
    if (static_cast<int>(shift.size()) != dim_)
        throw std::invalid_argument("series_scale: x-vector length != dimension");
    QxSeries r(dim_, order_ + dq);
    if (c.is_zero()) return r;
    for (const auto& [k, coeff] : terms_)
        r.add_term(k.first + dq, xvec_add(k.second, shift), coeff * c);
    return r;
}

QxSeries QxSeries::shift_var(int v, const ShiftSpec& s) const {
    if (v < 0 || v >= dim_)
        throw std::invalid_argument("shift_var: variable index out of range");
    if (s.b.is_zero()) {
        // pure phase twist, exponents unchanged
        QxSeries r(dim_, order_);
        for (const auto& [k, c] : terms_)
            r.add_term(k.first, k.second, c * CycloNum::pi_phase(s.a * Rat(k.second[v])));
        return r;
    }
    if (terms_.empty()) return *this;
    // each x_v-exponent m gains b*m/2 in q; the certified order gains the
    // minimum over the stored x-range
    Rat min_gain;
    bool have = false;
    for (const auto& [k, c] : terms_) {
        const Rat g = s.b * Rat(k.second[v]) / Rat(2);
        if (!have || g < min_gain) {
            min_gain = g;
            have = true;
        }
    }
    QxSeries r(dim_, order_ + min_gain);
    for (const auto& [k, c] : terms_) {
        const int m = k.second[v];
        r.add_term(k.first + s.b * Rat(m) / Rat(2), k.second,
                   c * CycloNum::pi_phase(s.a * Rat(m)));
    }
    return r;
}

QxSeries QxSeries::eval_var(int v, const ShiftSpec& s) const {
    if (v < 0 || v >= dim_)
        throw std::invalid_argument("eval_var: variable index out of range");
    Rat min_gain;
    bool have = false;
    if (!s.b.is_zero()) {
        for (const auto& [k, c] : terms_) {
            const Rat g = s.b * Rat(k.second[v]) / Rat(2);
            if (!have || g < min_gain) {
                min_gain = g;
                have = true;
            }
        }
    }
    QxSeries r(dim_ - 1, have ? order_ + min_gain : order_);
    for (const auto& [k, c] : terms_) {
        const int m = k.second[v];
        XVec xv;
        xv.reserve(k.second.size() - 1);
        for (size_t i = 0; i < k.second.size(); ++i)
            if (static_cast<int>(i) != v) xv.push_back(k.second[i]);
        r.add_term(k.first + s.b * Rat(m) / Rat(2), xv,
                   c * CycloNum::pi_phase(s.a * Rat(m)));
    }
    return r;
}

QxSeries QxSeries::scale_tau(const Rat& c) const {
    if (!(c > Rat(0)))
        throw std::invalid_argument("scale_tau: factor must be positive");
    QxSeries r(dim_, order_.scaled(c));
    for (const auto& [k, coeff] : terms_) r.add_term(k.first * c, k.second, coeff);
    return r;
}

QxSeries QxSeries::insert_var(int position) const {
    if (position < 0 || position > dim_)
        throw std::invalid_argument("insert_var: position out of range");
    QxSeries r(dim_ + 1, order_);
    for (const auto& [k, c] : terms_) {
        XVec xv = k.second;
        xv.insert(xv.begin() + position, 0);
        r.terms_.emplace(Key(k.first, std::move(xv)), c);
    }
    return r;
}

CycloNum QxSeries::coeff_at(const Rat& e, const XVec& xv) const {
    if (static_cast<int>(xv.size()) != dim_)
        throw std::invalid_argument("coeff_at: x-vector length != dimension");
    if (!order_.covers(e))
        throw std::domain_error("coeff_at: exponent at or beyond the certified order");
    auto it = terms_.find(Key(e, xv));
    return it == terms_.end() ? CycloNum() : it->second;
}

bool QxSeries::is_zero_to_order(const Rat& O) const {
    if (!order_.is_infinite() && order_.value() < O)
        throw std::domain_error("is_zero_to_order: claim exceeds the certified order");
    for (const auto& [k, c] : terms_) {
        if (!(k.first < O)) break;
        if (!c.is_zero()) return false;
    }
    return true;
}

std::optional<SeriesTerm> QxSeries::first_nonzero_below(const Rat& O) const {
    for (const auto& [k, c] : terms_) {
        if (!(k.first < O)) break;
        if (!c.is_zero()) return SeriesTerm{k.first, k.second, c};
    }
    return std::nullopt;
}

std::string QxSeries::render() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : terms_) {
        if (!first) os << "\n";
        first = false;
        os << "(" << k.first.str() << ", [";
        for (size_t i = 0; i < k.second.size(); ++i) {
            if (i) os << ", ";
            os << k.second[i];
        }
        os << "]) -> " << c.str();
    }
    return os.str();
}

} // namespace qtheta
