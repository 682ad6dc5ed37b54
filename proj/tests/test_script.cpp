#include "qtheta/script.hpp"

#include <doctest.h>

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

using qtheta::CycloNum;
using qtheta::OrderBound;
using qtheta::QxSeries;
using qtheta::Rat;
using qtheta::Verdict;
namespace dsl = qtheta::dsl;

namespace {

bool same_terms(const QxSeries& a, const QxSeries& b) {
    return a.dim() == b.dim() && a.terms() == b.terms();
}

std::string slurp(const char* path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

dsl::ParseError parse_failure(const std::string& text) {
    try {
        dsl::parse(text);
    } catch (const dsl::ParseError& e) {
        return e;
    }
    FAIL("no parse error raised for: " << text);
    throw std::logic_error("unreachable");
}

} // namespace

TEST_SUITE("script") {

TEST_CASE("minimal statement parses and verifies") {
    const dsl::Script s =
        dsl::parse("identity t { order 5; vars z; theta3(z|tau) == theta3(z + 2*pi|tau) }");
    REQUIRE(s.statements.size() == 1);
    const dsl::IdentityStmt& st = s.statements[0];
    CHECK(st.name == "t");
    CHECK(st.order == Rat(5));
    CHECK(st.vars == std::vector<std::string>{"z"});

    const qtheta::CheckReport rep = dsl::run_statement(st, {});
    CHECK(rep.ok());
    CHECK(rep.name == "t");
    CHECK(rep.order == Rat(5));
}

TEST_CASE("comments and layout are ignored") {
    const char* commented =
        "# alternate form of the pi period\n"
        "identity t {\n"
        "  order 5;      # checked exactly below this exponent\n"
        "  vars z;\n"
        "  theta3(z | tau) == theta3(z + 2*pi | tau)\n"
        "}\n";
    const dsl::Script a = dsl::parse(commented);
    const dsl::Script b =
        dsl::parse("identity t { order 5; vars z; theta3(z|tau) == theta3(z + 2*pi|tau) }");
    CHECK(dsl::ast_equal(a, b));
}

TEST_CASE("parse errors carry positions") {
    dsl::ParseError e = parse_failure("identity a { order 5; theta5(0|tau) == 1 }");
    CHECK(std::string(e.what()).find("theta1..theta4") != std::string::npos);
    CHECK(e.pos.line == 1);
    CHECK(e.pos.col == 23);

    e = parse_failure("identity a {\n  order 0;\n  1 == 1\n}");
    CHECK(e.pos.line == 2);

    // zeroth powers, stray '=', dangling text
    CHECK_THROWS_AS(dsl::parse("identity a { order 5; phi(q)^0 == 1 }"), dsl::ParseError);
    CHECK_THROWS_AS(dsl::parse("identity a { order 5; 1 = 1 }"), dsl::ParseError);
    CHECK_THROWS_AS(dsl::parse("identity a { order 5; 1 == 1 } extra"), dsl::ParseError);
    CHECK_THROWS_AS(dsl::parse("identity a { vars z; theta3(z|tau) == 1 }"), dsl::ParseError);

    // name and variable bookkeeping
    CHECK_THROWS_AS(dsl::parse("identity a { order 5; 1 == 1 }\n"
                               "identity a { order 5; 1 == 1 }"),
                    dsl::ParseError);
    CHECK_THROWS_AS(dsl::parse("identity a { order 5; vars q; 1 == 1 }"), dsl::ParseError);
    CHECK_THROWS_AS(dsl::parse("identity a { order 5; vars z, z; 1 == 1 }"),
                    dsl::ParseError);
    CHECK_THROWS_AS(dsl::parse("identity a { order 5; theta3(w|tau) == 1 }"),
                    dsl::ParseError);

    // sum headers
    CHECK_THROWS_AS(
        dsl::parse("identity a { order 5; vars z; sum z in 0..1 : q^1 == 2*q^1 }"),
        dsl::ParseError);
    CHECK_THROWS_AS(
        dsl::parse("identity a { order 5; sum k in 0..1 sign (-1)^j : q^1 == 0 }"),
        dsl::ParseError);
    CHECK_THROWS_AS(dsl::parse("identity a { order 5; sum k in 1..0 : q^1 == 0 }"),
                    dsl::ParseError);
}

TEST_CASE("printing is canonical and round-trips") {
    const dsl::Script s =
        dsl::parse("identity t { order 5; vars z; theta3(z|tau) == theta3(z + 2*pi|tau) }");
    CHECK(dsl::print(s) ==
          "identity t {\n"
          "  order 5;\n"
          "  vars z;\n"
          "  theta3(z | tau) == theta3(z + 2*pi | tau)\n"
          "}\n");

    CHECK(dsl::print(*dsl::parse_expr("2*theta2(2*z|4*tau)", {"z"})) ==
          "2 * theta2(2*z | 4*tau)");
    CHECK(dsl::print(*dsl::parse_expr("8 * q * psi(q^4)^2", {})) == "8 * q * psi(q^4)^2");
    CHECK(dsl::print(*dsl::parse_expr("poch(q^1/2; q^1/2)", {})) == "poch(q^1/2; q^1/2)");
    CHECK(dsl::print(*dsl::parse_expr("f(-q^1/2, q^5/2)", {})) == "f(-q^1/2, q^5/2)");
    CHECK(dsl::print(*dsl::parse_expr("theta3(z | tau/2)", {"z"})) == "theta3(z | tau/2)");
    CHECK(dsl::print(*dsl::parse_expr("(phi(q) + phi(-q)) * 2", {})) ==
          "(phi(q) + phi(-q)) * 2");
    CHECK(dsl::print(*dsl::parse_expr(
              "sum k in 0..3 sign (-1)^k : theta3(z + k*pi/4 | tau)", {"z"})) ==
          "sum k in 0..3 sign (-1)^k : theta3(z + k*pi/4 | tau)");
}

TEST_CASE("bundled catalog round-trips through the printer") {
    const std::string text = slurp(CATALOG_THID);
    const dsl::Script s1 = dsl::parse(text);
    CHECK(s1.statements.size() == 15);
    const std::string printed = dsl::print(s1);
    const dsl::Script s2 = dsl::parse(printed);
    CHECK(dsl::ast_equal(s1, s2));
    CHECK(dsl::print(s2) == printed);
}

TEST_CASE("bundled catalog mirrors the native catalog") {
    const dsl::Script s = dsl::parse(slurp(CATALOG_THID));
    const std::vector<std::string> names = qtheta::catalog_names();
    REQUIRE(s.statements.size() == names.size());
    for (size_t i = 0; i < names.size(); ++i) {
        CHECK(s.statements[i].name == names[i]);
        CHECK(s.statements[i].order == qtheta::catalog_default_order(names[i]));
    }
}

TEST_CASE("scripted verdicts match the native checks") {
    const dsl::Script s = dsl::parse(slurp(CATALOG_THID));
    for (const dsl::IdentityStmt& st : s.statements) {
        const Rat O = st.name.rfind("mod-", 0) == 0 ? Rat(40) : Rat(16);
        dsl::RunOptions opts;
        opts.order_override = O;
        const qtheta::CheckReport scripted = dsl::run_statement(st, opts);
        const qtheta::CheckReport native = qtheta::verify_named(st.name, {}, O);
        CAPTURE(st.name);
        CHECK(scripted.verdict == native.verdict);
        CHECK(scripted.ok());
        CHECK(scripted.name == st.name);
    }
}

TEST_CASE("a perturbed identity fails at its first divergent coefficient") {
    const dsl::Script s = dsl::parse(
        "identity mod-a-perturbed { order 30; phi(q) * psi(q^2) == 2 * psi(q)^2 }");
    const qtheta::CheckReport rep = dsl::run_statement(s.statements[0], {});
    CHECK(rep.verdict == Verdict::fail);
    REQUIRE(rep.first_bad.has_value());
    CHECK(rep.first_bad->qexp == Rat(0));
    CHECK(rep.first_bad->xvec.empty());
    CHECK(rep.first_bad->coeff == CycloNum(-1));
}

TEST_CASE("evaluation failures surface as error verdicts") {
    const dsl::Script s = dsl::parse(
        "identity halfz { order 5; vars z; theta3(z/2 | tau) == theta3(z/2 | tau) }");
    const qtheta::CheckReport rep = dsl::run_statement(s.statements[0], {});
    CHECK(rep.verdict == Verdict::error);
    CHECK(!rep.message.empty());
}

TEST_CASE("expression evaluation is exact below the working order") {
    const QxSeries prod = dsl::eval_expr(*dsl::parse_expr("phi(q) * phi(q)", {}), {}, Rat(10));
    const QxSeries native = qtheta::phi(1, Rat(10)) * qtheta::phi(1, Rat(10));
    REQUIRE(prod.order() == OrderBound(Rat(10)));
    CHECK(same_terms(prod, native));

    const QxSeries mono = dsl::eval_expr(*dsl::parse_expr("q^3/2", {}), {}, Rat(5));
    CHECK(mono.term_count() == 1);
    CHECK(!(mono.order() < OrderBound(Rat(5))));
    CHECK(mono.coeff_at(Rat(3, 2), {}) == CycloNum(1));

    const QxSeries unrolled = dsl::eval_expr(
        *dsl::parse_expr("sum k in 0..1 : theta3(z + k*pi/2 | tau)", {"z"}), {"z"}, Rat(8));
    const QxSeries direct =
        qtheta::theta(qtheta::ThetaKind::theta3, qtheta::ArgSpec{{1}, {}, Rat(1)}, Rat(8)) +
        qtheta::theta(qtheta::ThetaKind::theta3,
                      qtheta::ArgSpec{{1}, qtheta::ShiftSpec{Rat(1, 2), Rat(0)}, Rat(1)},
                      Rat(8));
    CHECK(same_terms(unrolled.truncated(OrderBound(Rat(8))),
                     direct.truncated(OrderBound(Rat(8)))));

    const QxSeries cancelled = dsl::eval_expr(
        *dsl::parse_expr("sum k in 0..3 sign (-1)^k : q^2", {}), {}, Rat(5));
    CHECK(cancelled.empty());
}

TEST_CASE("parallel runs keep the statement order") {
    const dsl::Script s = dsl::parse(slurp(CATALOG_THID));
    dsl::RunOptions seq;
    seq.order_override = Rat(10);
    seq.jobs = 1;
    dsl::RunOptions par = seq;
    par.jobs = 4;
    const std::vector<qtheta::CheckReport> a = dsl::run(s, seq);
    const std::vector<qtheta::CheckReport> b = dsl::run(s, par);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].name == b[i].name);
        CHECK(a[i].verdict == b[i].verdict);
        CHECK(a[i].ok());
    }
}

TEST_CASE("offset lists for the coefficient search") {
    std::vector<qtheta::YSpec> ys = dsl::parse_yspecs("y,-y");
    REQUIRE(ys.size() == 2);
    CHECK(ys[0].linear == std::vector<int>{1});
    CHECK(ys[1].linear == std::vector<int>{-1});
    CHECK(ys[0].shift.a.is_zero());
    CHECK(ys[1].shift.b.is_zero());

    ys = dsl::parse_yspecs("pi/4,-pi/4");
    REQUIRE(ys.size() == 2);
    CHECK(ys[0].linear.empty());
    CHECK(ys[0].shift.a == Rat(1, 4));
    CHECK(ys[1].shift.a == Rat(-1, 4));

    ys = dsl::parse_yspecs("y+pi*tau/2,-y-pi*tau/2");
    REQUIRE(ys.size() == 2);
    CHECK(ys[0].linear == std::vector<int>{1});
    CHECK(ys[0].shift.b == Rat(1, 2));
    CHECK(ys[1].shift.b == Rat(-1, 2));

    ys = dsl::parse_yspecs("0,0,0,0");
    REQUIRE(ys.size() == 4);
    CHECK(ys[2].linear.empty());
    CHECK(ys[3].shift.a.is_zero());

    CHECK_THROWS_AS(dsl::parse_yspecs("q"), dsl::ParseError);
    CHECK_THROWS_AS(dsl::parse_yspecs("y,"), dsl::ParseError);
}

} // TEST_SUITE
