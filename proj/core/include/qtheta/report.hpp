#pragma once

#include "qtheta/series.hpp"

#include <optional>
#include <string>

namespace qtheta {

enum class Verdict { pass, fail, error };

std::string verdict_name(Verdict v);

struct FirstBad {
    Rat qexp;
    XVec xvec;
    CycloNum coeff;
};

struct CheckReport {
    std::string name;
    std::string params;
    Rat order;
    Verdict verdict = Verdict::error;
    std::optional<FirstBad> first_bad;
    double wall_time_sec = 0.0;
    std::string message; // diagnostics, error verdicts only

    bool ok() const { return verdict == Verdict::pass; }
};

// stable schema: name, params, order ("p/q"), verdict, firstBad
// { qexp, xvec, coeff_basis, cyclo_order } on fail, wallTimeSec
std::string report_json(const CheckReport& r);
// human-readable single line
std::string report_line(const CheckReport& r);

// Verdict for lhs == rhs from the difference series: certifies at least
// `requested`, reports at the full certified order of the difference.
CheckReport diff_report(const std::string& name, const std::string& params,
                        const QxSeries& diff, const Rat& requested, double wall_sec);

} // namespace qtheta
