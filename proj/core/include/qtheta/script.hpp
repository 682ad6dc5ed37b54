#pragma once

#include "qtheta/circsum.hpp"
#include "qtheta/report.hpp"
#include "qtheta/theta.hpp"

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace qtheta::dsl {

struct SourcePos {
    int line = 0;
    int col = 0;
};

struct ParseError : std::runtime_error {
    ParseError(SourcePos p, const std::string& msg)
        : std::runtime_error(msg), pos(p) {}
    SourcePos pos;
};

// one additive term of a theta argument: sign * (atoms product / divisor)
// * {variable | pi | pi*tau}; atoms are integer literals and sum-index names
struct ArgTerm {
    int sign = 1;
    std::vector<std::variant<long, std::string>> atoms;
    long divisor = 1;
    std::string var; // nonempty for variable terms
    bool has_pi = false;
    bool has_tau = false;

    bool operator==(const ArgTerm&) const = default;
};

struct Expr;
using ExprP = std::shared_ptr<const Expr>;

struct SumSig {
    std::string index;
    long lo = 0;
    long hi = 0;
    bool alternating = false;

    bool operator==(const SumSig&) const = default;
};

struct Expr {
    enum class Kind { rat, qpow, theta, phi, psi, poch, f, sum, add, sub, mul, pow };

    Kind kind;
    SourcePos pos;
    Rat value;      // rat: the constant; qpow: the exponent
    int tkind = 0;  // theta: 1..4
    std::vector<ArgTerm> arg;
    Rat tau_scale{1};
    int sign1 = 1; // phi/psi/poch/f: sign of the (first) q-monomial
    Rat r1;        // phi/psi/poch/f: exponent of the (first) q-monomial
    int sign2 = 1; // f: sign of the second monomial
    Rat r2;        // poch: base exponent; f: second exponent
    SumSig sum;
    ExprP a, b;     // add/sub/mul: both; pow and sum body: a
    long power = 0; // pow
};

struct IdentityStmt {
    std::string name;
    Rat order;
    std::vector<std::string> vars;
    ExprP lhs, rhs;
    SourcePos pos;
};

struct Script {
    std::vector<IdentityStmt> statements;
};

Script parse(std::string_view text);
// standalone expression, e.g. for the `expand` subcommand
ExprP parse_expr(std::string_view text, const std::vector<std::string>& vars);

std::string print(const Script& s);
std::string print(const Expr& e);

bool ast_equal(const Expr& a, const Expr& b);
bool ast_equal(const Script& a, const Script& b);

// evaluate with the same internal working-order budgeting the native
// checks use; exact below `order`
QxSeries eval_expr(const Expr& e, const std::vector<std::string>& vars, const Rat& order);

struct RunOptions {
    std::optional<Rat> order_override;
    int jobs = 1;
};

// statement -> report; evaluation errors become `error` verdicts
CheckReport run_statement(const IdentityStmt& stmt, const RunOptions& opts);
std::vector<CheckReport> run(const Script& s, const RunOptions& opts);

// comma-separated offsets for h-coeff, e.g. "y,-y" or "pi/4,-pi/4"
std::vector<YSpec> parse_yspecs(const std::string& text);

} // namespace qtheta::dsl
