#include "qtheta/script.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <functional>
#include <map>
#include <sstream>
#include <thread>

namespace qtheta::dsl {

namespace {

// ---------------------------------------------------------------- lexing

struct Tok {
    enum class T { ident, number, punct, eof };
    T t = T::eof;
    std::string s; // raw text
    Rat num;
    SourcePos pos;
    int end_col = 0;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::vector<Tok> lex(std::string_view text) {
    std::vector<Tok> out;
    int line = 1, col = 1;
    size_t i = 0;
    auto advance = [&](size_t k) {
        for (size_t j = 0; j < k; ++j) {
            if (text[i + j] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        i += k;
    };
    while (i < text.size()) {
        const char c = text[i];
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            advance(1);
            continue;
        }
        if (c == '#') {
            size_t j = i;
            while (j < text.size() && text[j] != '\n') ++j;
            advance(j - i);
            continue;
        }
        Tok t;
        t.pos = {line, col};
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t j = i;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
            size_t k = j;
            // rational literal: INT/INT, consumed greedily
            if (j < text.size() && text[j] == '/' && j + 1 < text.size() &&
                std::isdigit(static_cast<unsigned char>(text[j + 1]))) {
                k = j + 1;
                while (k < text.size() && std::isdigit(static_cast<unsigned char>(text[k]))) ++k;
            }
            t.t = Tok::T::number;
            t.s = std::string(text.substr(i, k - i));
            if (k > j) {
                const Int num(std::string(text.substr(i, j - i)));
                const Int den(std::string(text.substr(j + 1, k - j - 1)));
                if (den == 0) throw ParseError(t.pos, "zero denominator in rational literal");
                t.num = Rat(num, den);
            } else {
                t.num = Rat(Int(t.s));
            }
            advance(k - i);
            t.end_col = col;
            out.push_back(std::move(t));
            continue;
        }
        if (ident_start(c)) {
            size_t j = i;
            while (j < text.size() && ident_char(text[j])) ++j;
            t.t = Tok::T::ident;
            t.s = std::string(text.substr(i, j - i));
            advance(j - i);
            t.end_col = col;
            out.push_back(std::move(t));
            continue;
        }
        auto punct = [&](const std::string& p) {
            t.t = Tok::T::punct;
            t.s = p;
            advance(p.size());
            t.end_col = col;
            out.push_back(t);
        };
        if (c == '=' ) {
            if (i + 1 < text.size() && text[i + 1] == '=') {
                punct("==");
                continue;
            }
            throw ParseError(t.pos, "stray '=', use '==' to separate the two sides");
        }
        if (c == '.') {
            if (i + 1 < text.size() && text[i + 1] == '.') {
                punct("..");
                continue;
            }
            throw ParseError(t.pos, "stray '.', ranges use '..'");
        }
        if (std::string("{}();,+-*^|:/").find(c) != std::string::npos) {
            punct(std::string(1, c));
            continue;
        }
        throw ParseError(t.pos, std::string("unexpected character '") + c + "'");
    }
    Tok eof;
    eof.t = Tok::T::eof;
    eof.pos = {line, col};
    eof.end_col = col;
    out.push_back(std::move(eof));
    return out;
}

const char* const kReserved[] = {"identity", "order", "vars",  "sum",    "in",
                                 "sign",     "q",     "pi",    "tau",    "phi",
                                 "psi",      "poch",  "f",     "theta1", "theta2",
                                 "theta3",   "theta4"};

bool is_reserved(const std::string& s) {
    for (const char* r : kReserved)
        if (s == r) return true;
    return false;
}

// --------------------------------------------------------------- parsing

class Parser {
public:
    explicit Parser(std::string_view text) : toks_(lex(text)) {}

    Script parse_script() {
        Script s;
        while (!at_eof()) {
            expect_ident("identity");
            IdentityStmt stmt = parse_identity();
            for (const IdentityStmt& prev : s.statements)
                if (prev.name == stmt.name)
                    throw ParseError(stmt.pos, "duplicate identity name '" + stmt.name + "'");
            s.statements.push_back(std::move(stmt));
        }
        return s;
    }

    ExprP parse_bare_expr(const std::vector<std::string>& vars) {
        vars_ = vars;
        ExprP e = parse_expr();
        if (!at_eof()) throw ParseError(cur().pos, "trailing input after expression");
        return e;
    }

    std::vector<ArgTerm> parse_bare_arg(const std::vector<std::string>& vars) {
        vars_ = vars;
        std::vector<ArgTerm> terms = parse_arg();
        if (!at_eof()) throw ParseError(cur().pos, "trailing input after offset");
        return terms;
    }

private:
    std::vector<Tok> toks_;
    size_t i_ = 0;
    std::vector<std::string> vars_;
    std::vector<std::string> indices_;

    const Tok& cur() const { return toks_[i_]; }
    const Tok& peek() const { return toks_[std::min(i_ + 1, toks_.size() - 1)]; }
    bool at_eof() const { return cur().t == Tok::T::eof; }
    void next() { if (!at_eof()) ++i_; }

    bool is_punct(const std::string& p) const {
        return cur().t == Tok::T::punct && cur().s == p;
    }
    bool is_ident(const std::string& s) const {
        return cur().t == Tok::T::ident && cur().s == s;
    }
    void expect_punct(const std::string& p) {
        if (!is_punct(p)) throw ParseError(cur().pos, "expected '" + p + "'");
        next();
    }
    void expect_ident(const std::string& s) {
        if (!is_ident(s)) throw ParseError(cur().pos, "expected '" + s + "'");
        next();
    }
    std::string take_ident(const char* what) {
        if (cur().t != Tok::T::ident) throw ParseError(cur().pos, std::string("expected ") + what);
        std::string s = cur().s;
        next();
        return s;
    }
    Rat take_number(const char* what) {
        if (cur().t != Tok::T::number)
            throw ParseError(cur().pos, std::string("expected ") + what);
        Rat r = cur().num;
        next();
        return r;
    }
    long take_integer(const char* what) {
        const SourcePos p = cur().pos;
        bool neg = false;
        if (is_punct("-")) {
            neg = true;
            next();
        }
        Rat r = take_number(what);
        if (!r.is_integer() || !r.num().fits_slong_p())
            throw ParseError(p, std::string("expected ") + what);
        long v = r.num().get_si();
        return neg ? -v : v;
    }

    // identity names may contain '-' and digits; glue adjacent tokens
    std::string parse_name() {
        if (cur().t != Tok::T::ident && cur().t != Tok::T::number)
            throw ParseError(cur().pos, "expected identity name");
        std::string name = cur().s;
        SourcePos pos = cur().pos;
        int line = pos.line, end = cur().end_col;
        next();
        while ((cur().t == Tok::T::ident || cur().t == Tok::T::number ||
                (cur().t == Tok::T::punct && cur().s == "-")) &&
               cur().pos.line == line && cur().pos.col == end) {
            name += cur().s;
            end = cur().end_col;
            next();
        }
        return name;
    }

    IdentityStmt parse_identity() {
        IdentityStmt stmt;
        stmt.pos = cur().pos;
        stmt.name = parse_name();
        expect_punct("{");
        expect_ident("order");
        const SourcePos opos = cur().pos;
        stmt.order = take_number("order value");
        if (!(stmt.order > Rat(0))) throw ParseError(opos, "order must be positive");
        expect_punct(";");
        vars_.clear();
        if (is_ident("vars")) {
            next();
            while (true) {
                const SourcePos vpos = cur().pos;
                std::string v = take_ident("variable name");
                if (is_reserved(v))
                    throw ParseError(vpos, "'" + v + "' is reserved and cannot be a variable");
                if (std::find(vars_.begin(), vars_.end(), v) != vars_.end())
                    throw ParseError(vpos, "duplicate variable '" + v + "'");
                vars_.push_back(std::move(v));
                if (!is_punct(",")) break;
                next();
            }
            expect_punct(";");
        }
        stmt.vars = vars_;
        stmt.lhs = parse_expr();
        expect_punct("==");
        stmt.rhs = parse_expr();
        expect_punct("}");
        return stmt;
    }

    ExprP node(Expr e) { return std::make_shared<Expr>(std::move(e)); }

    ExprP parse_expr() {
        ExprP e = parse_term();
        while (is_punct("+") || is_punct("-")) {
            Expr n;
            n.kind = is_punct("+") ? Expr::Kind::add : Expr::Kind::sub;
            n.pos = cur().pos;
            next();
            n.a = e;
            n.b = parse_term();
            e = node(std::move(n));
        }
        return e;
    }

    ExprP parse_term() {
        ExprP e = parse_factor();
        while (is_punct("*")) {
            Expr n;
            n.kind = Expr::Kind::mul;
            n.pos = cur().pos;
            next();
            n.a = e;
            n.b = parse_factor();
            e = node(std::move(n));
        }
        return e;
    }

    ExprP parse_factor() {
        ExprP e = parse_primary();
        if (is_punct("^")) {
            Expr n;
            n.kind = Expr::Kind::pow;
            n.pos = cur().pos;
            next();
            const SourcePos ppos = cur().pos;
            Rat p = take_number("integer power");
            if (!p.is_integer() || p.sign() <= 0 || !p.num().fits_slong_p())
                throw ParseError(ppos, "power must be a positive integer");
            n.a = e;
            n.power = p.num().get_si();
            e = node(std::move(n));
        }
        return e;
    }

    // sign * q^r, the exponent defaulting to 1
    std::pair<int, Rat> parse_signed_q(const char* what) {
        int sign = 1;
        if (is_punct("-")) {
            sign = -1;
            next();
        }
        if (!is_ident("q"))
            throw ParseError(cur().pos, std::string(what) + " must be of the form [-]q[^RAT]");
        next();
        Rat r(1);
        if (is_punct("^")) {
            next();
            r = take_number("exponent");
        }
        return {sign, r};
    }

    ExprP parse_primary() {
        Expr e;
        e.pos = cur().pos;
        if (cur().t == Tok::T::number) {
            e.kind = Expr::Kind::rat;
            e.value = cur().num;
            next();
            return node(std::move(e));
        }
        if (is_punct("(")) {
            next();
            ExprP inner = parse_expr();
            expect_punct(")");
            return inner;
        }
        if (cur().t != Tok::T::ident)
            throw ParseError(cur().pos, "expected an expression");
        const std::string name = cur().s;
        if (name == "q") {
            next();
            e.kind = Expr::Kind::qpow;
            e.value = Rat(1);
            if (is_punct("^")) {
                next();
                e.value = take_number("exponent");
            }
            return node(std::move(e));
        }
        if (name.rfind("theta", 0) == 0) {
            if (name.size() != 6 || name[5] < '1' || name[5] > '4')
                throw ParseError(e.pos, "unknown function '" + name + "' (theta kinds are theta1..theta4)");
            next();
            e.kind = Expr::Kind::theta;
            e.tkind = name[5] - '0';
            expect_punct("(");
            e.arg = parse_arg();
            expect_punct("|");
            e.tau_scale = parse_tau();
            expect_punct(")");
            return node(std::move(e));
        }
        if (name == "phi" || name == "psi") {
            next();
            e.kind = name == "phi" ? Expr::Kind::phi : Expr::Kind::psi;
            expect_punct("(");
            const SourcePos apos = cur().pos;
            std::tie(e.sign1, e.r1) = parse_signed_q("argument");
            if (!(e.r1 > Rat(0)))
                throw ParseError(apos, name + " argument must have a positive exponent");
            expect_punct(")");
            return node(std::move(e));
        }
        if (name == "poch") {
            next();
            e.kind = Expr::Kind::poch;
            expect_punct("(");
            std::tie(e.sign1, e.r1) = parse_signed_q("first argument");
            expect_punct(";");
            const SourcePos bpos = cur().pos;
            auto [bsign, base] = parse_signed_q("base");
            if (bsign != 1 || !(base > Rat(0)))
                throw ParseError(bpos, "pochhammer base must be q^RAT with a positive exponent");
            e.r2 = base;
            expect_punct(")");
            return node(std::move(e));
        }
        if (name == "f") {
            next();
            e.kind = Expr::Kind::f;
            expect_punct("(");
            std::tie(e.sign1, e.r1) = parse_signed_q("first argument");
            expect_punct(",");
            std::tie(e.sign2, e.r2) = parse_signed_q("second argument");
            if (!(e.r1 + e.r2 > Rat(0)))
                throw ParseError(e.pos, "f arguments must satisfy qexp(a) + qexp(b) > 0");
            expect_punct(")");
            return node(std::move(e));
        }
        if (name == "sum") {
            next();
            e.kind = Expr::Kind::sum;
            const SourcePos ipos = cur().pos;
            e.sum.index = take_ident("summation index");
            if (is_reserved(e.sum.index))
                throw ParseError(ipos, "'" + e.sum.index + "' is reserved and cannot be an index");
            if (std::find(vars_.begin(), vars_.end(), e.sum.index) != vars_.end() ||
                std::find(indices_.begin(), indices_.end(), e.sum.index) != indices_.end())
                throw ParseError(ipos, "index '" + e.sum.index + "' shadows an existing name");
            expect_ident("in");
            e.sum.lo = take_integer("range bound");
            expect_punct("..");
            e.sum.hi = take_integer("range bound");
            if (e.sum.lo > e.sum.hi) throw ParseError(ipos, "empty summation range");
            if (is_ident("sign")) {
                next();
                expect_punct("(");
                expect_punct("-");
                const SourcePos spos = cur().pos;
                if (take_number("1") != Rat(1))
                    throw ParseError(spos, "sign factor must be (-1)^index");
                expect_punct(")");
                expect_punct("^");
                const SourcePos xpos = cur().pos;
                if (take_ident("index") != e.sum.index)
                    throw ParseError(xpos, "sign exponent must match the summation index");
                e.sum.alternating = true;
            }
            expect_punct(":");
            indices_.push_back(e.sum.index);
            e.a = parse_factor();
            indices_.pop_back();
            return node(std::move(e));
        }
        throw ParseError(e.pos, "unknown name '" + name + "' in expression");
    }

    std::vector<ArgTerm> parse_arg() {
        std::vector<ArgTerm> terms;
        int sign = 1;
        if (is_punct("-")) {
            sign = -1;
            next();
        }
        while (true) {
            ArgTerm t = parse_arg_term();
            t.sign = sign;
            terms.push_back(std::move(t));
            if (is_punct("+")) {
                sign = 1;
                next();
            } else if (is_punct("-")) {
                sign = -1;
                next();
            } else {
                break;
            }
        }
        return terms;
    }

    ArgTerm parse_arg_term() {
        ArgTerm t;
        bool any = false;
        while (true) {
            const SourcePos apos = cur().pos;
            if (cur().t == Tok::T::number) {
                const Rat r = cur().num;
                next();
                // a rational literal p/r scales by p and divides by r
                if (!r.num().fits_slong_p() || !r.den().fits_slong_p())
                    throw ParseError(apos, "coefficient out of range");
                t.atoms.emplace_back(r.num().get_si());
                t.divisor *= r.den().get_si();
            } else if (cur().t == Tok::T::ident) {
                const std::string name = cur().s;
                if (name == "pi") {
                    if (t.has_pi || !t.var.empty())
                        throw ParseError(apos, "argument term may contain at most one of a variable or pi");
                    t.has_pi = true;
                    next();
                } else if (name == "tau") {
                    if (!t.has_pi || t.has_tau)
                        throw ParseError(apos, "tau may only follow pi within an argument term");
                    t.has_tau = true;
                    next();
                } else if (std::find(vars_.begin(), vars_.end(), name) != vars_.end()) {
                    if (!t.var.empty() || t.has_pi)
                        throw ParseError(apos, "argument term may contain at most one of a variable or pi");
                    t.var = name;
                    next();
                } else if (std::find(indices_.begin(), indices_.end(), name) != indices_.end()) {
                    t.atoms.emplace_back(name);
                    next();
                } else {
                    throw ParseError(apos, "unknown name '" + name + "' in argument");
                }
            } else {
                throw ParseError(apos, "expected an argument term");
            }
            any = true;
            if (is_punct("*")) {
                next();
                continue;
            }
            break;
        }
        if (is_punct("/")) {
            next();
            const SourcePos dpos = cur().pos;
            const Rat d = take_number("integer divisor");
            if (!d.is_integer() || d.sign() <= 0 || !d.num().fits_slong_p())
                throw ParseError(dpos, "divisor must be a positive integer");
            t.divisor *= d.num().get_si();
        }
        if (t.var.empty() && !t.has_pi) {
            // only an exact literal zero is meaningful without a unit
            const bool zero = any && t.atoms.size() == 1 &&
                              std::holds_alternative<long>(t.atoms[0]) &&
                              std::get<long>(t.atoms[0]) == 0;
            if (!zero)
                throw ParseError(cur().pos, "argument term needs a variable or pi");
        }
        return t;
    }

    Rat parse_tau() {
        Rat scale(1);
        if (cur().t == Tok::T::number) {
            scale = cur().num;
            next();
            expect_punct("*");
        }
        expect_ident("tau");
        if (is_punct("/")) {
            next();
            const SourcePos dpos = cur().pos;
            const Rat d = take_number("integer divisor");
            if (!d.is_integer() || d.sign() <= 0)
                throw ParseError(dpos, "divisor must be a positive integer");
            scale /= d;
        }
        if (!(scale > Rat(0)))
            throw ParseError(cur().pos, "tau scale must be positive");
        return scale;
    }
};

// ------------------------------------------------------------- printing

int level(const Expr& e) {
    switch (e.kind) {
    case Expr::Kind::add:
    case Expr::Kind::sub: return 0;
    case Expr::Kind::mul: return 1;
    case Expr::Kind::pow:
    case Expr::Kind::sum:
    case Expr::Kind::qpow: return 2;
    default: return 3;
    }
}

std::string signed_q(int sign, const Rat& r) {
    std::string s = sign < 0 ? "-q" : "q";
    if (r != Rat(1)) s += "^" + r.str();
    return s;
}

std::string arg_str(const std::vector<ArgTerm>& terms) {
    std::string out;
    for (size_t i = 0; i < terms.size(); ++i) {
        const ArgTerm& t = terms[i];
        if (i == 0) {
            if (t.sign < 0) out += "-";
        } else {
            out += t.sign < 0 ? " - " : " + ";
        }
        std::string body;
        for (const auto& a : t.atoms) {
            if (!body.empty()) body += "*";
            body += std::holds_alternative<long>(a) ? std::to_string(std::get<long>(a))
                                                    : std::get<std::string>(a);
        }
        std::string unit;
        if (!t.var.empty()) unit = t.var;
        else if (t.has_pi) unit = t.has_tau ? "pi*tau" : "pi";
        if (!unit.empty()) body = body.empty() ? unit : body + "*" + unit;
        if (t.divisor != 1) body += "/" + std::to_string(t.divisor);
        out += body;
    }
    return out;
}

std::string tau_str(const Rat& scale) {
    if (scale == Rat(1)) return "tau";
    if (scale.is_integer()) return scale.str() + "*tau";
    if (scale.num() == 1) return "tau/" + scale.den().get_str();
    return scale.str() + "*tau";
}

void pr(const Expr& e, int min_level, std::ostream& os);

void pr_wrapped(const Expr& e, int min_level, std::ostream& os) {
    if (level(e) < min_level) {
        os << "(";
        pr(e, 0, os);
        os << ")";
    } else {
        pr(e, 0, os);
    }
}

void pr(const Expr& e, int, std::ostream& os) {
    switch (e.kind) {
    case Expr::Kind::rat:
        os << e.value.str();
        return;
    case Expr::Kind::qpow:
        os << "q";
        if (e.value != Rat(1)) os << "^" << e.value.str();
        return;
    case Expr::Kind::theta:
        os << "theta" << e.tkind << "(" << arg_str(e.arg) << " | " << tau_str(e.tau_scale)
           << ")";
        return;
    case Expr::Kind::phi:
    case Expr::Kind::psi:
        os << (e.kind == Expr::Kind::phi ? "phi" : "psi") << "(" << signed_q(e.sign1, e.r1)
           << ")";
        return;
    case Expr::Kind::poch:
        os << "poch(" << signed_q(e.sign1, e.r1) << "; " << signed_q(1, e.r2) << ")";
        return;
    case Expr::Kind::f:
        os << "f(" << signed_q(e.sign1, e.r1) << ", " << signed_q(e.sign2, e.r2) << ")";
        return;
    case Expr::Kind::add:
    case Expr::Kind::sub:
        pr_wrapped(*e.a, 0, os);
        os << (e.kind == Expr::Kind::add ? " + " : " - ");
        pr_wrapped(*e.b, 1, os);
        return;
    case Expr::Kind::mul:
        pr_wrapped(*e.a, 1, os);
        os << " * ";
        pr_wrapped(*e.b, 2, os);
        return;
    case Expr::Kind::pow:
        pr_wrapped(*e.a, 3, os);
        os << "^" << e.power;
        return;
    case Expr::Kind::sum:
        os << "sum " << e.sum.index << " in " << e.sum.lo << ".." << e.sum.hi;
        if (e.sum.alternating) os << " sign (-1)^" << e.sum.index;
        os << " : ";
        pr_wrapped(*e.a, 2, os);
        return;
    }
}

// ------------------------------------------------------------ evaluation

using Env = std::map<std::string, long>;

Rat fold_coef(const ArgTerm& t, const Env& env, const SourcePos& pos) {
    Rat c(t.sign);
    for (const auto& a : t.atoms) {
        if (std::holds_alternative<long>(a)) {
            c *= Rat(std::get<long>(a));
        } else {
            auto it = env.find(std::get<std::string>(a));
            if (it == env.end())
                throw ParseError(pos, "unbound index '" + std::get<std::string>(a) + "'");
            c *= Rat(it->second);
        }
    }
    return c / Rat(t.divisor);
}

ArgSpec arg_spec(const Expr& e, const std::vector<std::string>& vars, const Env& env) {
    ArgSpec spec;
    spec.linear.assign(vars.size(), 0);
    spec.tau_scale = e.tau_scale;
    for (const ArgTerm& t : e.arg) {
        const Rat c = fold_coef(t, env, e.pos);
        if (!t.var.empty()) {
            if (!c.is_integer() || !c.num().fits_slong_p())
                throw ParseError(e.pos, "variable coefficient must be an integer, got " + c.str());
            const auto it = std::find(vars.begin(), vars.end(), t.var);
            spec.linear[static_cast<size_t>(it - vars.begin())] +=
                static_cast<int>(c.num().get_si());
        } else if (t.has_tau) {
            spec.shift.b += c;
        } else if (t.has_pi) {
            spec.shift.a += c;
        }
    }
    return spec;
}

Rat f_min_qexp(const Rat& r1, const Rat& r2) {
    const Rat half(1, 2);
    const Rat alpha = (r1 + r2) * half;
    const Rat beta = (r1 - r2) * half;
    const Rat vertex = -beta / (alpha * Rat(2));
    auto at = [&](const Int& n) {
        const Rat rn(n);
        return (alpha * rn + beta) * rn;
    };
    return min(at(vertex.floor()), at(vertex.ceil()));
}

// sound lower bound on the minimal q-exponent of the value of e
Rat mu_bound(const Expr& e, const std::vector<std::string>& vars, Env& env) {
    switch (e.kind) {
    case Expr::Kind::rat: return Rat(0);
    case Expr::Kind::qpow: return e.value;
    case Expr::Kind::theta: {
        const ArgSpec spec = arg_spec(e, vars, env);
        return theta_min_qexp(theta_kind(e.tkind), spec.tau_scale, spec.shift.b);
    }
    case Expr::Kind::phi:
    case Expr::Kind::psi: return Rat(0);
    case Expr::Kind::poch: return pochhammer_min_qexp(e.r1, e.r2);
    case Expr::Kind::f: return f_min_qexp(e.r1, e.r2);
    case Expr::Kind::add:
    case Expr::Kind::sub:
        return min(mu_bound(*e.a, vars, env), mu_bound(*e.b, vars, env));
    case Expr::Kind::mul:
        return mu_bound(*e.a, vars, env) + mu_bound(*e.b, vars, env);
    case Expr::Kind::pow: return Rat(e.power) * mu_bound(*e.a, vars, env);
    case Expr::Kind::sum: {
        Rat m;
        bool first = true;
        for (long k = e.sum.lo; k <= e.sum.hi; ++k) {
            env[e.sum.index] = k;
            const Rat b = mu_bound(*e.a, vars, env);
            if (first || b < m) m = b;
            first = false;
        }
        env.erase(e.sum.index);
        return m;
    }
    }
    return Rat(0);
}

QxSeries eval(const Expr& e, const std::vector<std::string>& vars, Env& env,
              const Rat& order) {
    const int dim = static_cast<int>(vars.size());
    const XVec zeros(vars.size(), 0);
    switch (e.kind) {
    case Expr::Kind::rat:
        return QxSeries::constant(dim, CycloNum(e.value));
    case Expr::Kind::qpow:
        return QxSeries::monomial(dim, CycloNum(1), e.value, zeros);
    case Expr::Kind::theta:
        return theta(theta_kind(e.tkind), arg_spec(e, vars, env), order);
    case Expr::Kind::phi:
    case Expr::Kind::psi: {
        QxSeries s = (e.kind == Expr::Kind::phi ? phi(e.sign1, order / e.r1)
                                                : psi(e.sign1, order / e.r1))
                         .scale_tau(e.r1);
        for (int v = 0; v < dim; ++v) s = s.insert_var(0);
        return s;
    }
    case Expr::Kind::poch:
        return pochhammer({e.sign1, e.r1, zeros}, e.r2, order);
    case Expr::Kind::f:
        return f_ab({e.sign1, e.r1, zeros}, {e.sign2, e.r2, zeros}, order);
    case Expr::Kind::add:
        return eval(*e.a, vars, env, order) + eval(*e.b, vars, env, order);
    case Expr::Kind::sub:
        return eval(*e.a, vars, env, order) - eval(*e.b, vars, env, order);
    case Expr::Kind::mul: {
        const Rat ma = mu_bound(*e.a, vars, env);
        const Rat mb = mu_bound(*e.b, vars, env);
        return eval(*e.a, vars, env, order - mb) * eval(*e.b, vars, env, order - ma);
    }
    case Expr::Kind::pow: {
        const Rat mu = mu_bound(*e.a, vars, env);
        QxSeries base = eval(*e.a, vars, env, order - Rat(e.power - 1) * mu);
        QxSeries r = base;
        for (long i = 1; i < e.power; ++i) r = (r * base).truncated(OrderBound(order));
        return r;
    }
    case Expr::Kind::sum: {
        QxSeries acc(dim, OrderBound(order));
        for (long k = e.sum.lo; k <= e.sum.hi; ++k) {
            env[e.sum.index] = k;
            QxSeries t = eval(*e.a, vars, env, order);
            const bool negate = e.sum.alternating && (((k % 2) + 2) % 2 == 1);
            acc = acc + (negate ? -t : t);
        }
        env.erase(e.sum.index);
        return acc;
    }
    }
    throw std::logic_error("eval: unhandled node");
}

bool expr_equal(const Expr& a, const Expr& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
    case Expr::Kind::rat:
    case Expr::Kind::qpow: return a.value == b.value;
    case Expr::Kind::theta:
        return a.tkind == b.tkind && a.arg == b.arg && a.tau_scale == b.tau_scale;
    case Expr::Kind::phi:
    case Expr::Kind::psi: return a.sign1 == b.sign1 && a.r1 == b.r1;
    case Expr::Kind::poch: return a.sign1 == b.sign1 && a.r1 == b.r1 && a.r2 == b.r2;
    case Expr::Kind::f:
        return a.sign1 == b.sign1 && a.r1 == b.r1 && a.sign2 == b.sign2 && a.r2 == b.r2;
    case Expr::Kind::add:
    case Expr::Kind::sub:
    case Expr::Kind::mul:
        return expr_equal(*a.a, *b.a) && expr_equal(*a.b, *b.b);
    case Expr::Kind::pow: return a.power == b.power && expr_equal(*a.a, *b.a);
    case Expr::Kind::sum: return a.sum == b.sum && expr_equal(*a.a, *b.a);
    }
    return false;
}

} // namespace

Script parse(std::string_view text) { return Parser(text).parse_script(); }

ExprP parse_expr(std::string_view text, const std::vector<std::string>& vars) {
    for (const std::string& v : vars)
        if (is_reserved(v))
            throw ParseError({0, 0}, "'" + v + "' is reserved and cannot be a variable");
    return Parser(text).parse_bare_expr(vars);
}

std::string print(const Expr& e) {
    std::ostringstream os;
    pr(e, 0, os);
    return os.str();
}

std::string print(const Script& s) {
    std::ostringstream os;
    for (size_t i = 0; i < s.statements.size(); ++i) {
        const IdentityStmt& st = s.statements[i];
        if (i) os << "\n";
        os << "identity " << st.name << " {\n";
        os << "  order " << st.order.str() << ";\n";
        if (!st.vars.empty()) {
            os << "  vars ";
            for (size_t v = 0; v < st.vars.size(); ++v) {
                if (v) os << ", ";
                os << st.vars[v];
            }
            os << ";\n";
        }
        os << "  " << print(*st.lhs) << " == " << print(*st.rhs) << "\n";
        os << "}\n";
    }
    return os.str();
}

bool ast_equal(const Expr& a, const Expr& b) { return expr_equal(a, b); }

bool ast_equal(const Script& a, const Script& b) {
    if (a.statements.size() != b.statements.size()) return false;
    for (size_t i = 0; i < a.statements.size(); ++i) {
        const IdentityStmt& x = a.statements[i];
        const IdentityStmt& y = b.statements[i];
        if (x.name != y.name || x.order != y.order || x.vars != y.vars) return false;
        if (!expr_equal(*x.lhs, *y.lhs) || !expr_equal(*x.rhs, *y.rhs)) return false;
    }
    return true;
}

QxSeries eval_expr(const Expr& e, const std::vector<std::string>& vars, const Rat& order) {
    Env env;
    return eval(e, vars, env, order);
}

CheckReport run_statement(const IdentityStmt& stmt, const RunOptions& opts) {
    const Rat order = opts.order_override.value_or(stmt.order);
    const auto t0 = std::chrono::steady_clock::now();
    try {
        Env env;
        QxSeries lhs = eval(*stmt.lhs, stmt.vars, env, order);
        QxSeries rhs = eval(*stmt.rhs, stmt.vars, env, order);
        const double dt =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return diff_report(stmt.name, "", lhs - rhs, order, dt);
    } catch (const std::exception& ex) {
        CheckReport rep;
        rep.name = stmt.name;
        rep.order = order;
        rep.verdict = Verdict::error;
        rep.message = ex.what();
        rep.wall_time_sec =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return rep;
    }
}

std::vector<CheckReport> run(const Script& s, const RunOptions& opts) {
    std::vector<CheckReport> out(s.statements.size());
    const int jobs = std::max(1, opts.jobs);
    if (jobs == 1 || s.statements.size() <= 1) {
        for (size_t i = 0; i < s.statements.size(); ++i)
            out[i] = run_statement(s.statements[i], opts);
        return out;
    }
    std::atomic<size_t> next{0};
    auto worker = [&] {
        while (true) {
            const size_t i = next.fetch_add(1);
            if (i >= s.statements.size()) break;
            out[i] = run_statement(s.statements[i], opts);
        }
    };
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
    return out;
}

std::vector<YSpec> parse_yspecs(const std::string& text) {
    std::vector<std::vector<ArgTerm>> parsed;
    size_t start = 0;
    while (start <= text.size()) {
        size_t comma = text.find(',', start);
        const std::string piece =
            text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        parsed.push_back(Parser(piece).parse_bare_arg({"y"}));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    bool uses_y = false;
    for (const auto& terms : parsed)
        for (const ArgTerm& t : terms)
            if (!t.var.empty()) uses_y = true;
    std::vector<YSpec> out;
    const Env env;
    for (const auto& terms : parsed) {
        Expr probe;
        probe.kind = Expr::Kind::theta;
        probe.arg = terms;
        const ArgSpec spec = arg_spec(probe, {"y"}, env);
        YSpec y;
        if (uses_y) y.linear = {spec.linear[0]};
        y.shift = spec.shift;
        out.push_back(std::move(y));
    }
    return out;
}

} // namespace qtheta::dsl
