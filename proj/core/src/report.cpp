#include "qtheta/report.hpp"

#include <nlohmann/json.hpp>

#include <sstream>

namespace qtheta {

std::string verdict_name(Verdict v) {
    switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::error: return "error";
    }
    return "error";
}

std::string report_json(const CheckReport& r) {
    nlohmann::json j;
    j["name"] = r.name;
    j["params"] = r.params;
    j["order"] = r.order.str();
    j["verdict"] = verdict_name(r.verdict);
    if (r.first_bad) {
        nlohmann::json fb;
        fb["qexp"] = r.first_bad->qexp.str();
        fb["xvec"] = r.first_bad->xvec;
        std::vector<std::string> basis;
        for (const Rat& c : r.first_bad->coeff.coeffs()) basis.push_back(c.str());
        fb["coeff_basis"] = basis;
        fb["cyclo_order"] = r.first_bad->coeff.order();
        j["firstBad"] = fb;
    }
    j["wallTimeSec"] = r.wall_time_sec;
    if (r.verdict == Verdict::error && !r.message.empty()) j["message"] = r.message;
    return j.dump();
}

std::string report_line(const CheckReport& r) {
    std::ostringstream os;
    os << verdict_name(r.verdict) << "  " << r.name;
    if (!r.params.empty()) os << " (" << r.params << ")";
    os << "  order=" << r.order.str();
    if (r.first_bad) {
        os << "  firstBad: q^" << r.first_bad->qexp.str() << " x[";
        for (size_t i = 0; i < r.first_bad->xvec.size(); ++i) {
            if (i) os << ",";
            os << r.first_bad->xvec[i];
        }
        os << "] coeff " << r.first_bad->coeff.str();
    }
    if (r.verdict == Verdict::error && !r.message.empty()) os << "  (" << r.message << ")";
    os << "  " << r.wall_time_sec << "s";
    return os.str();
}

CheckReport diff_report(const std::string& name, const std::string& params,
                        const QxSeries& diff, const Rat& requested, double wall_sec) {
    CheckReport rep;
    rep.name = name;
    rep.params = params;
    rep.wall_time_sec = wall_sec;
    if (!diff.order().is_infinite() && diff.order().value() < requested) {
        rep.order = requested;
        rep.verdict = Verdict::error;
        rep.message = "order not certifiable: got " + diff.order().value().str();
        return rep;
    }
    if (diff.order().is_infinite()) {
        // the difference is exact; every stored term is a genuine mismatch
        rep.order = requested;
        if (diff.empty()) {
            rep.verdict = Verdict::pass;
        } else {
            rep.verdict = Verdict::fail;
            const auto& [k, c] = *diff.terms().begin();
            rep.first_bad = FirstBad{k.first, k.second, c};
        }
        return rep;
    }
    const Rat certified = diff.order().value();
    rep.order = certified;
    if (diff.is_zero_to_order(certified)) {
        rep.verdict = Verdict::pass;
    } else {
        rep.verdict = Verdict::fail;
        auto bad = diff.first_nonzero_below(certified);
        rep.first_bad = FirstBad{bad->qexp, bad->xvec, bad->coeff};
    }
    return rep;
}

} // namespace qtheta
