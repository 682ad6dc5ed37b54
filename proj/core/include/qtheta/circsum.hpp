#pragma once

#include "qtheta/report.hpp"
#include "qtheta/theta.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace qtheta {

// One summand offset y_j = (linear . y-vars) + a*pi + b*pi*tau.  `linear`
// ranges over the formal y-variables only (z is always variable 0 of the
// assembled series and is not listed here).
struct YSpec {
    std::vector<int> linear;
    ShiftSpec shift;
};

struct LatticeSumSpec {
    long m = 1;
    long n = 1;
    std::vector<YSpec> ys; // size n; sum of linear parts and shifts must vanish
    Rat order;
};

// alternating circular sum
//   sum_{k=0}^{mn-1} (-1)^k prod_{j=1}^{n} theta3(z + y_j + k*pi/(mn) | tau)
// as a series in z (variable 0) and the formal y-variables
QxSeries build_lhs(const LatticeSumSpec& spec);

// lattice-enumerated coefficient
//   H(y|tau) = mn q^{-m^2 n/8} sum_{s: sum = mn/2} q^{(1/2) sum s_j^2} e^{2 i sum s_j y_j},
// a q-only-plus-formal-y series (no z slot; callers insert one as needed)
QxSeries h_coeff(const LatticeSumSpec& spec);

// closed form of the n = 2, (y, -y) coefficient:
// 2m * theta2(2y|2tau) for odd m, 2m * theta3(2y|2tau) for even m
QxSeries h_m2_closed(long m, const Rat& order);

// checks build_lhs(spec) == h_coeff(spec) * theta2(mn z | m^2 n tau)
CheckReport verify_fund(const LatticeSumSpec& spec);

std::vector<std::string> catalog_names();
std::map<std::string, long> catalog_default_params(const std::string& name);
Rat catalog_default_order(const std::string& name);

// both sides of a named identity, built from its displayed form
std::pair<QxSeries, QxSeries> catalog_sides(const std::string& name,
                                            const std::map<std::string, long>& params,
                                            const Rat& order);

// named-identity check; coefficient sides use an enumerator independent of
// h_coeff, so this never certifies h_coeff against itself
CheckReport verify_named(const std::string& name,
                         const std::map<std::string, long>& params, const Rat& order);

std::string param_str(const std::map<std::string, long>& params);
std::string spec_str(const LatticeSumSpec& spec);

} // namespace qtheta
