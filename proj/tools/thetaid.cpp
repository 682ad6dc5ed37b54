// thetaid: command-line front end for the qtheta engine.
//
// Exit status: 0 all checks pass, 1 any check fails or errors,
// 2 usage or input errors.

#include "qtheta/circsum.hpp"
#include "qtheta/etapower.hpp"
#include "qtheta/script.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using qtheta::CheckReport;
using qtheta::Rat;

Rat parse_order(const std::string& s) {
    mpq_class q;
    try {
        q = mpq_class(s, 10);
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("invalid order '" + s + "', expected INT or INT/INT");
    }
    q.canonicalize();
    Rat r(qtheta::Int(q.get_num()), qtheta::Int(q.get_den()));
    if (!(r > Rat(0))) throw std::invalid_argument("order must be positive");
    return r;
}

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, ',')) {
        // trim surrounding blanks
        const auto b = cur.find_first_not_of(" \t");
        const auto e = cur.find_last_not_of(" \t");
        if (b == std::string::npos) continue;
        out.push_back(cur.substr(b, e - b + 1));
    }
    return out;
}

// single-line polynomial rendering, terms in (qexp, xvec) order
std::string pretty(const qtheta::QxSeries& s, const std::vector<std::string>& vars) {
    std::ostringstream os;
    bool first = true;
    for (const auto& [key, c] : s.terms()) {
        std::string coeff;
        bool neg = false;
        if (c.is_rational()) {
            Rat r = c.rational_value();
            if (r.sign() < 0) {
                neg = true;
                r = -r;
            }
            coeff = r.str();
        } else {
            coeff = "(" + c.str() + ")";
        }
        std::string mono;
        if (!key.first.is_zero()) mono = key.first == Rat(1) ? "q" : "q^" + key.first.str();
        for (size_t v = 0; v < key.second.size(); ++v) {
            const int k = key.second[v];
            if (k == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += v < vars.size() ? vars[v] : "x" + std::to_string(v);
            if (k != 1) mono += "^" + std::to_string(k);
        }
        std::string term;
        if (mono.empty()) term = coeff;
        else if (coeff == "1") term = mono;
        else term = coeff + "*" + mono;
        os << (first ? (neg ? "-" : "") : (neg ? " - " : " + ")) << term;
        first = false;
    }
    if (first) os << "0";
    if (!s.order().is_infinite()) os << " + O(q^" << s.order().value().str() << ")";
    return os.str();
}

int emit_reports(const std::vector<CheckReport>& reports, const std::string& report_path) {
    bool all_ok = true;
    for (const CheckReport& r : reports) {
        std::cout << qtheta::report_line(r) << "\n";
        all_ok = all_ok && r.ok();
    }
    if (!report_path.empty()) {
        std::ofstream out(report_path);
        if (!out) {
            std::cerr << "thetaid: cannot write '" << report_path << "'\n";
            return 2;
        }
        out << "[";
        for (size_t i = 0; i < reports.size(); ++i) {
            if (i) out << ",";
            out << "\n  " << qtheta::report_json(reports[i]);
        }
        out << (reports.empty() ? "]" : "\n]") << "\n";
    }
    return all_ok ? 0 : 1;
}

int cmd_verify(const std::string& file, const std::string& order, const std::string& report,
               int jobs) {
    std::ifstream in(file);
    if (!in) {
        std::cerr << "thetaid: cannot open '" << file << "'\n";
        return 2;
    }
    std::stringstream ss;
    ss << in.rdbuf();
    qtheta::dsl::Script script;
    try {
        script = qtheta::dsl::parse(ss.str());
    } catch (const qtheta::dsl::ParseError& e) {
        std::cerr << file << ":" << e.pos.line << ":" << e.pos.col << ": error: " << e.what()
                  << "\n";
        return 2;
    }
    qtheta::dsl::RunOptions opts;
    if (!order.empty()) opts.order_override = parse_order(order);
    opts.jobs = jobs;
    return emit_reports(qtheta::dsl::run(script, opts), report);
}

int cmd_catalog(const std::string& only, const std::string& order) {
    const std::vector<std::string> known = qtheta::catalog_names();
    std::vector<std::string> names = only.empty() ? known : split_csv(only);
    for (const std::string& nm : names)
        if (std::find(known.begin(), known.end(), nm) == known.end())
            throw std::invalid_argument("unknown catalog identity: " + nm);
    std::optional<Rat> override;
    if (!order.empty()) override = parse_order(order);
    std::vector<CheckReport> reports;
    for (const std::string& nm : names) {
        const Rat ord = override.value_or(qtheta::catalog_default_order(nm));
        CheckReport rep;
        try {
            rep = qtheta::verify_named(nm, {}, ord);
        } catch (const std::exception& ex) {
            rep.name = nm;
            rep.order = ord;
            rep.verdict = qtheta::Verdict::error;
            rep.message = ex.what();
        }
        reports.push_back(std::move(rep));
    }
    return emit_reports(reports, "");
}

int cmd_expand(const std::string& expr, const std::string& order, const std::string& vars_csv) {
    const std::vector<std::string> vars = split_csv(vars_csv);
    qtheta::dsl::ExprP e;
    try {
        e = qtheta::dsl::parse_expr(expr, vars);
    } catch (const qtheta::dsl::ParseError& pe) {
        std::cerr << "<expr>:" << pe.pos.line << ":" << pe.pos.col << ": error: " << pe.what()
                  << "\n";
        return 2;
    }
    const qtheta::QxSeries s = qtheta::dsl::eval_expr(*e, vars, parse_order(order));
    std::cout << pretty(s, vars) << "\n";
    return 0;
}

int cmd_hcoeff(long m, long n, const std::string& yspec, const std::string& order) {
    qtheta::LatticeSumSpec spec;
    spec.m = m;
    spec.n = n;
    spec.order = parse_order(order);
    if (yspec.empty()) {
        spec.ys.assign(static_cast<size_t>(std::max<long>(n, 0)), qtheta::YSpec{});
    } else {
        try {
            spec.ys = qtheta::dsl::parse_yspecs(yspec);
        } catch (const qtheta::dsl::ParseError& pe) {
            std::cerr << "--y:" << pe.pos.col << ": error: " << pe.what() << "\n";
            return 2;
        }
    }
    const qtheta::QxSeries h = qtheta::h_coeff(spec);
    std::cout << pretty(h, {"y"}) << "\n";
    return 0;
}

int cmd_etapow(long n, const std::string& order, const std::string& method,
               const std::string& csv) {
    const Rat ord = parse_order(order);
    if (method == "euler") {
        const qtheta::EtaPowResult r = qtheta::euler_pow(2 * n, 1, ord);
        for (size_t k = 0; k < r.coeffs.size(); ++k)
            std::cout << k << " " << r.coeffs[k].get_str() << "\n";
        return 0;
    }
    if (method == "cor-q1" || method == "cor-q2") {
        const qtheta::EtaPowResult r =
            method == "cor-q1" ? qtheta::cor_q1(n, ord) : qtheta::cor_q2(n, ord);
        for (size_t k = 0; k < r.coeffs.size(); ++k)
            std::cout << k << " " << r.coeffs[k].get_str() << "\n";
        return 0;
    }
    if (method != "all") throw std::invalid_argument("unknown method '" + method + "'");
    const qtheta::EtaPowResult euler1 = qtheta::euler_pow(2 * n, 1, ord);
    const qtheta::EtaPowResult q1 = qtheta::cor_q1(n, ord);
    const qtheta::EtaPowResult euler2n = qtheta::euler_pow(2 * n, 2 * n, ord);
    const qtheta::EtaPowResult q2 = qtheta::cor_q2(n, ord);
    std::ostringstream table;
    qtheta::write_csv(table, euler1, q1, euler2n, q2);
    std::cout << table.str();
    if (!csv.empty()) {
        std::ofstream out(csv);
        if (!out) {
            std::cerr << "thetaid: cannot write '" << csv << "'\n";
            return 2;
        }
        out << table.str();
    }
    const CheckReport rep = qtheta::crosscheck(n, ord);
    std::cout << qtheta::report_line(rep) << "\n";
    return rep.ok() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact q-series verification of theta-function identities"};
    app.require_subcommand(1);

    std::string file, order, report, only, expr, vars_csv, yspec, method = "all", csv;
    long m = 1, n = 1;
    int jobs = 1;

    CLI::App* verify = app.add_subcommand("verify", "run every identity in a .thid script");
    verify->add_option("file", file, "script file")->required();
    verify->add_option("--order", order, "override every statement's order (INT or INT/INT)");
    verify->add_option("--report", report, "write a JSON report array to this path");
    verify->add_option("--jobs", jobs, "number of worker threads")->check(CLI::PositiveNumber);

    CLI::App* catalog = app.add_subcommand("catalog", "run the built-in identity catalog");
    catalog->add_option("--only", only, "comma-separated identity names");
    catalog->add_option("--order", order, "override the per-identity default orders");

    CLI::App* expand = app.add_subcommand("expand", "print the series of one expression");
    expand->add_option("expr", expr, "expression in the identity language")->required();
    expand->add_option("--order", order, "truncation order")->required();
    expand->add_option("--vars", vars_csv, "comma-separated formal variables");

    CLI::App* hcoeff = app.add_subcommand("h-coeff", "print the lattice coefficient H_{m,n}(y|tau)");
    hcoeff->add_option("--m", m, "theorem parameter m")->required();
    hcoeff->add_option("--n", n, "theorem parameter n")->required();
    hcoeff->add_option("--y", yspec, "comma-separated offsets, e.g. \"y,-y\" or \"pi/4,-pi/4\"");
    hcoeff->add_option("--order", order, "truncation order")->required();

    CLI::App* etapow = app.add_subcommand("etapow", "Euler-product powers vs lattice formulas");
    etapow->add_option("--n", n, "corollary parameter n")->required()->check(CLI::PositiveNumber);
    etapow->add_option("--order", order, "coefficient table size")->required();
    etapow->add_option("--method", method, "euler | cor-q1 | cor-q2 | all");
    etapow->add_option("--csv", csv, "write the agreement table to this path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (verify->parsed()) return cmd_verify(file, order, report, jobs);
        if (catalog->parsed()) return cmd_catalog(only, order);
        if (expand->parsed()) return cmd_expand(expr, order, vars_csv);
        if (hcoeff->parsed()) return cmd_hcoeff(m, n, yspec, order);
        if (etapow->parsed()) return cmd_etapow(n, order, method, csv);
    } catch (const std::invalid_argument& ex) {
        std::cerr << "thetaid: " << ex.what() << "\n";
        return 2;
    } catch (const std::exception& ex) {
        std::cerr << "thetaid: " << ex.what() << "\n";
        return 1;
    }
    return 2;
}
