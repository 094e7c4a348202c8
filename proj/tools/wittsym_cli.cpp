/*
 * Copyright 2026 The wittsym Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// wittsym: command-line front end.
//
//   wittsym fold     [expr]           reduce a product of symbols, print the trace
//   wittsym witt     [op operands]    one Witt vector computation
//   wittsym pi       --beta B --x X --length M
//   wittsym realize  [symbol]         structure constants of one symbol
//   wittsym check    [--seed N] [--trials N]
//   wittsym validate [trace.json]     replay a JSON trace
//
// Common flags: --prime P, --vars t,s,..., --json. A missing expression is
// read from stdin. Exit status: 0 success, 1 domain error, 2 usage or parse
// error, 3 internal error.

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <wittsym/calculus.hpp>
#include <wittsym/derham.hpp>
#include <wittsym/io.hpp>
#include <wittsym/realize.hpp>
#include <wittsym/trace_json.hpp>

using namespace wittsym;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kDomain = 1;
constexpr int kUsage = 2;
constexpr int kInternal = 3;

struct Options {
    std::uint32_t prime = 2;
    std::string vars = "t,s,u,v,w,z";
    bool json = false;
    std::vector<std::string> input;
    std::string beta, x;
    unsigned length = 1;
    std::uint64_t seed = 1;
    int trials = 20;
};

class usage_error : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

ContextPtr make_context(const Options& o) {
    std::vector<std::string> names;
    std::stringstream ss(o.vars);
    for (std::string item; std::getline(ss, item, ',');) {
        const auto b = item.find_first_not_of(" \t");
        const auto e = item.find_last_not_of(" \t");
        if (b == std::string::npos) throw usage_error("empty name in --vars");
        item = item.substr(b, e - b + 1);
        if (!std::isalpha(static_cast<unsigned char>(item[0])) && item[0] != '_')
            throw usage_error("indeterminate name must start with a letter: " + item);
        for (char c : item)
            if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_')
                throw usage_error("bad character in indeterminate name: " + item);
        names.push_back(item);
    }
    try {
        return FieldContext::make(o.prime, names);
    } catch (const domain_error& e) {
        throw usage_error(e.what());
    }
}

/// Positional text, or all of stdin when there is none.
std::string input_text(const Options& o) {
    if (!o.input.empty() && !(o.input.size() == 1 && o.input[0] == "-")) {
        std::string s;
        for (const auto& part : o.input) s += (s.empty() ? "" : " ") + part;
        return s;
    }
    return std::string(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
}

void print_step(std::ostream& out, const RewriteStep& s, const std::string& number, int indent) {
    const std::string pad(static_cast<std::size_t>(indent), ' ');
    out << pad << number << " " << rule_name(s.rule);
    if (!s.targets.empty()) {
        out << " @";
        for (auto t : s.targets) out << " " << t;
    }
    for (const auto& w : s.witnesses) out << "  " << w.name << "=" << w.to_string();
    out << "\n" << pad << "    " << s.before.to_string() << "\n" << pad << "  = " << s.after.to_string() << "\n";
    for (std::size_t i = 0; i < s.substeps.size(); ++i)
        print_step(out, s.substeps[i], number + "." + std::to_string(i + 1), indent + 2);
}

void print_trace(std::ostream& out, const DerivationTrace& t) {
    for (std::size_t i = 0; i < t.size(); ++i) print_step(out, t[i], std::to_string(i + 1), 0);
}

int run_fold(const Options& o) {
    const auto ctx = make_context(o);
    const auto expr = parse_expression(input_text(o), ctx);
    const auto res = albert_reduce(expr);
    if (res.complete) {
        if (o.json) {
            std::cout << trace_report(ctx, res.trace, res.cyclic->to_string()).dump(2) << "\n";
        } else {
            print_trace(std::cout, res.trace);
            const auto check = validate_trace(res.trace);
            std::cout << "result: " << res.cyclic->to_string() << "\nvalid: " << (check.valid ? "yes" : "no") << "\n";
        }
        return kOk;
    }
    if (o.json) {
        auto r = trace_report(ctx, res.certificate, res.b_expr.to_string());
        r["halt"] = {{"b", res.b_expr.to_string()},
                     {"factor", res.factor->to_string()},
                     {"p_power", res.p_power->to_string()},
                     {"reason", res.reason}};
        std::cout << r.dump(2) << "\n";
    } else {
        std::cout << "halt: " << res.reason << "\n"
                  << "class of A^p: " << res.p_power->to_string() << "\n"
                  << "A = " << res.factor->to_string() << " * B with\nB = " << res.b_expr.to_string() << "\n"
                  << "certificate that B^p is split:\n";
        print_trace(std::cout, res.certificate);
        std::cout << "certificate valid: " << (res.certificate_valid ? "yes" : "no") << "\n";
    }
    return kOk;
}

int run_witt(const Options& o) {
    const auto ctx = make_context(o);
    const std::string text = input_text(o);
    Cursor cur(text);
    const auto op = cur.identifier();
    ElementParser parser(ctx, cur);
    std::vector<WittF> args;
    while (!cur.at_end()) args.push_back(parser.witt());
    auto need = [&](std::size_t n) {
        if (args.size() != n)
            throw parse_error(op + " takes " + std::to_string(n) + " operand(s), got " + std::to_string(args.size()), 0);
    };
    WittF out = witt_zero(ctx->prime(), 1, FieldElem(ctx));
    if (op == "add" || op == "sub" || op == "mul") {
        need(2);
        out = op == "add" ? args[0] + args[1] : op == "sub" ? args[0] - args[1] : args[0] * args[1];
    } else if (op == "neg" || op == "frob" || op == "wp" || op == "inv" || op == "mulp" || op == "shift") {
        need(1);
        const auto& a = args[0];
        out = op == "neg" ? -a : op == "frob" ? witt_frobenius(a) : op == "wp" ? wp_map(a) : op == "inv" ? witt_inverse(a)
              : op == "mulp" ? mul_by_p(a) : verschiebung(a);
    } else {
        throw parse_error("unknown Witt operation '" + op + "' (add sub mul neg frob wp inv mulp shift)", 0);
    }
    if (o.json) {
        json args_json = json::array();
        for (const auto& a : args) args_json.push_back(a.to_string());
        std::cout << json{{"prime", ctx->prime().value()}, {"vars", ctx->names()}, {"op", op}, {"args", args_json},
                          {"result", out.to_string()}}
                         .dump(2)
                  << "\n";
    } else {
        std::cout << out.to_string() << "\n";
    }
    return kOk;
}

int run_pi(const Options& o) {
    const auto ctx = make_context(o);
    if (o.length == 0) throw usage_error("--length must be at least 1");
    const auto beta = parse_elem(o.beta, ctx);
    const auto x = parse_elem(o.x, ctx);
    const auto sol = solve_pi(beta, x, ctx->prime(), o.length);
    if (o.json) {
        json steps = json::array();
        for (const auto& s : sol.derivation) steps.push_back({{"rule", s.rule}, {"detail", s.detail}});
        std::cout << json{{"prime", ctx->prime().value()}, {"vars", ctx->names()},     {"beta", beta.to_string()},
                          {"x", x.to_string()},            {"length", o.length},        {"shifted", sol.shifted.to_string()},
                          {"mu", sol.mu.to_string()},      {"pi", sol.pi.to_string()}, {"steps", steps},
                          {"valid", true}}
                         .dump(2)
                  << "\n";
    } else {
        for (const auto& s : sol.derivation) std::cout << s.rule << ": " << s.detail << "\n";
        std::cout << "d[" << sol.shifted << "] = " << sol.mu << " d[" << beta << "]\n"
                  << "pi = " << sol.pi << "\n";
    }
    return kOk;
}

int run_realize(const Options& o) {
    const auto ctx = make_context(o);
    const auto expr = parse_expression(input_text(o), ctx);
    if (expr.size() != 1) throw parse_error("realize takes exactly one symbol", 0);
    const auto& sym = expr.factors[0];
    const auto alg = realize_symbol(sym);
    const auto check = check_relations(alg, presentation_of(sym));
    const auto centre = center_basis(alg);
    if (o.json) {
        json table = json::array();
        for (std::size_t i = 0; i < alg.dim; ++i)
            for (std::size_t j = 0; j < alg.dim; ++j)
                for (const auto& [k, v] : alg.product(i, j)) table.push_back({{"i", i}, {"j", j}, {"k", k}, {"value", v.to_string()}});
        std::cout << json{{"prime", ctx->prime().value()}, {"vars", ctx->names()}, {"symbol", sym.to_string()},
                          {"dimension", alg.dim},         {"basis", alg.labels},   {"table", table},
                          {"relations_ok", check.ok},     {"center_rank", centre.size()}}
                         .dump(2)
                  << "\n";
    } else {
        std::cout << "symbol: " << sym.to_string() << "\ndimension: " << alg.dim << "\n";
        for (std::size_t i = 0; i < alg.dim; ++i)
            for (std::size_t j = 0; j < alg.dim; ++j) {
                std::string rhs;
                for (const auto& [k, v] : alg.product(i, j))
                    rhs += (rhs.empty() ? "" : " + ") + ("(" + v.to_string() + ")*" + alg.labels[k]);
                std::cout << alg.labels[i] << " . " << alg.labels[j] << " = " << (rhs.empty() ? "0" : rhs) << "\n";
            }
        std::cout << "relations: " << (check.ok ? "ok" : "FAILED: " + check.failure) << "\ncenter rank: " << centre.size()
                  << "\n";
    }
    return check.ok ? kOk : kDomain;
}

int run_validate(const Options& o) {
    const auto ctx = make_context(o);
    std::string text;
    if (!o.input.empty() && o.input[0] != "-") {
        std::ifstream in(o.input[0]);
        if (!in) throw usage_error("cannot read " + o.input[0]);
        text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    } else {
        text = input_text(o);
    }
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw parse_error(std::string("invalid JSON: ") + e.what(), e.byte);
    }
    const auto trace = trace_from_json(j, ctx);
    const auto check = validate_trace(trace);
    if (o.json) {
        json r = {{"valid", check.valid}, {"failing_step", nullptr}, {"steps", trace.size()}};
        if (check.failing_step) r["failing_step"] = *check.failing_step;
        if (!check.valid) r["reason"] = check.reason;
        std::cout << r.dump(2) << "\n";
    } else if (check.valid) {
        std::cout << "valid (" << trace.size() << " steps)\n";
    } else {
        std::cout << "invalid at step " << *check.failing_step << ": " << check.reason << "\n";
    }
    return check.valid ? kOk : kDomain;
}

// ---- self-check suites -----------------------------------------------------

FieldElem random_elem(const ContextPtr& ctx, std::mt19937_64& rng, bool allow_den) {
    std::uniform_int_distribution<std::uint32_t> coef(0, ctx->prime().value() - 1);
    std::uniform_int_distribution<int> deg(0, 2);
    std::bernoulli_distribution den(0.3);
    auto poly = [&] {
        FieldElem acc(ctx);
        for (int k = 0; k < 3; ++k) {
            FieldElem term = FieldElem::constant(ctx, coef(rng));
            for (std::size_t v = 0; v < ctx->nvars(); ++v) term = term * FieldElem::variable(ctx, v).pow(deg(rng));
            acc = acc + term;
        }
        return acc;
    };
    FieldElem e = poly();
    if (allow_den && den(rng)) {
        const auto d = poly();
        if (!d.is_zero()) e = e / d;
    }
    return e;
}

FieldElem random_generator(const ContextPtr& ctx, std::mt19937_64& rng) {
    while (true) {
        auto e = random_elem(ctx, rng, true);
        if (!e.is_zero() && !e.is_pth_power(1)) return e;
    }
}

WittF random_witt(const ContextPtr& ctx, std::mt19937_64& rng, unsigned m) {
    std::vector<FieldElem> c;
    for (unsigned i = 0; i < m; ++i) c.push_back(random_elem(ctx, rng, false));
    return WittF(ctx->prime(), std::move(c));
}

struct Suite {
    std::string name;
    std::function<std::string(std::mt19937_64&, int)> run;  // empty string = pass
};

std::vector<Suite> suites() {
    std::vector<Suite> out;
    out.push_back({"witt-ring-axioms", [](std::mt19937_64& rng, int trials) -> std::string {
                       for (std::uint32_t p : {2u, 3u}) {
                           auto ctx = FieldContext::make(p, {"t", "s"});
                           for (unsigned m = 1; m <= 3; ++m)
                               for (int i = 0; i < trials; ++i) {
                                   const auto a = random_witt(ctx, rng, m), b = random_witt(ctx, rng, m), c = random_witt(ctx, rng, m);
                                   if (!((a + b) + c == a + (b + c)) || !(a + b == b + a) || !((a * b) * c == a * (b * c)) ||
                                       !(a * b == b * a) || !(a * (b + c) == a * b + a * c) || !(a + (-a)).is_zero() ||
                                       !(mul_by_p(a) == integer_multiple(p, a)))
                                       return "p=" + std::to_string(p) + " m=" + std::to_string(m) + " a=" + a.to_string();
                               }
                       }
                       return "";
                   }});
    out.push_back({"ghost-identities", [](std::mt19937_64&, int) -> std::string {
                       for (std::uint32_t p : {2u, 3u, 5u})
                           for (unsigned m = 1; m <= 3; ++m) {
                               const auto u = universal_polys(Prime(p), m);
                               std::vector<PolyQ> a, b;
                               for (unsigned i = 0; i < m; ++i) {
                                   a.push_back(PolyQ::variable(Rationals{}, 2 * m, i));
                                   b.push_back(PolyQ::variable(Rationals{}, 2 * m, m + i));
                               }
                               for (unsigned n = 1; n <= m; ++n) {
                                   const auto ga = ghost_component(p, n, a), gb = ghost_component(p, n, b);
                                   if (!(ghost_component(p, n, u->sum) == ga + gb) ||
                                       !(ghost_component(p, n, u->product) == ga * gb) ||
                                       !(ghost_component(p, n, u->negation) == -ga))
                                       return "p=" + std::to_string(p) + " m=" + std::to_string(m) + " n=" + std::to_string(n);
                               }
                           }
                       return "";
                   }});
    out.push_back({"pi-laws", [](std::mt19937_64& rng, int trials) -> std::string {
                       for (std::uint32_t p : {2u, 3u}) {
                           auto ctx = FieldContext::make(p, {"t", "s"});
                           for (unsigned m = 1; m <= 2; ++m)
                               for (int i = 0; i < trials; ++i) {
                                   const auto beta = random_generator(ctx, rng);
                                   const auto x = random_elem(ctx, rng, false);
                                   const auto delta = beta + x.pow(static_cast<std::int64_t>(Prime(p).power(m)));
                                   if (delta.is_zero() || delta.is_pth_power(1)) continue;
                                   const auto one = solve_pi(beta, x, Prime(p), m);
                                   const auto two = solve_pi(delta, -x, Prime(p), m);
                                   if (!one.pi[0].is_one() || !(one.pi * two.pi == witt_unit(Prime(p), m, beta)))
                                       return "beta=" + beta.to_string() + " x=" + x.to_string();
                               }
                       }
                       return "";
                   }});
    out.push_back({"shift-round-trip", [](std::mt19937_64& rng, int trials) -> std::string {
                       for (std::uint32_t p : {2u, 3u}) {
                           auto ctx = FieldContext::make(p, {"t", "s"});
                           for (unsigned m = 1; m <= 2; ++m)
                               for (int i = 0; i < trials; ++i) {
                                   const auto beta = random_generator(ctx, rng);
                                   const auto x = random_elem(ctx, rng, false);
                                   const auto delta = beta + x.pow(static_cast<std::int64_t>(Prime(p).power(m)));
                                   if (delta.is_zero() || delta.is_pth_power(1)) continue;
                                   const CyclicSymbol s(random_witt(ctx, rng, m), beta);
                                   if (!(proposition_shift(proposition_shift(s, x).first, -x).first == s)) return s.to_string();
                               }
                       }
                       return "";
                   }});
    out.push_back({"fold-traces", [](std::mt19937_64& rng, int trials) -> std::string {
                       auto ctx = FieldContext::make(2, {"t", "s", "u"});
                       for (int i = 0; i < trials; ++i) {
                           std::vector<CyclicSymbol> syms;
                           for (int k = 0; k < 2; ++k) syms.emplace_back(random_witt(ctx, rng, 1), random_generator(ctx, rng));
                           try {
                               const auto [sym, trace] = fold_prime_list(syms);
                               const auto check = validate_trace(trace);
                               if (!check.valid || sym.level() != 2) return check.reason;
                           } catch (const domain_error&) {
                               // degenerate or non-reducible instance, skipped
                           }
                       }
                       return "";
                   }});
    out.push_back({"print-parse", [](std::mt19937_64& rng, int trials) -> std::string {
                       auto ctx = FieldContext::make(3, {"t", "s"});
                       std::uniform_int_distribution<unsigned> level(1, 3);
                       for (int i = 0; i < trials; ++i) {
                           BrauerExpr e;
                           for (int k = 0; k < 2; ++k) e.factors.emplace_back(random_witt(ctx, rng, level(rng)), random_generator(ctx, rng));
                           if (!(parse_expression(e.to_string(), ctx) == e)) return e.to_string();
                       }
                       return "";
                   }});
    out.push_back({"realize", [](std::mt19937_64& rng, int) -> std::string {
                       for (std::uint32_t p : {2u, 3u}) {
                           auto ctx = FieldContext::make(p, {"t", "s"});
                           const CyclicSymbol s(random_witt(ctx, rng, 1), random_generator(ctx, rng));
                           const auto a = realize_symbol(s);
                           const auto check = check_relations(a, presentation_of(s));
                           if (!check.ok) return check.failure;
                           if (center_basis(a).size() != 1) return "center rank of " + s.to_string();
                       }
                       return "";
                   }});
    return out;
}

int run_check(const Options& o) {
    std::mt19937_64 rng(o.seed);
    bool all = true;
    json results = json::array();
    for (const auto& suite : suites()) {
        const auto t0 = std::chrono::steady_clock::now();
        std::string failure;
        try {
            failure = suite.run(rng, o.trials);
        } catch (const std::exception& e) {
            failure = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        all = all && failure.empty();
        if (o.json)
            results.push_back({{"suite", suite.name}, {"pass", failure.empty()}, {"detail", failure}, {"seconds", secs}});
        else
            std::cout << (failure.empty() ? "PASS " : "FAIL ") << suite.name << (failure.empty() ? "" : ": " + failure)
                      << "\n";
    }
    if (o.json) std::cout << json{{"seed", o.seed}, {"trials", o.trials}, {"suites", results}, {"pass", all}}.dump(2) << "\n";
    return all ? kOk : kDomain;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"wittsym: Witt vectors, cyclic p-algebra symbols and derivation traces"};
    app.require_subcommand(1);
    Options o;
    app.add_option("--prime,-p", o.prime, "characteristic of the base field")->capture_default_str();
    app.add_option("--vars", o.vars, "comma-separated indeterminates")->capture_default_str();
    app.add_flag("--json", o.json, "emit JSON");

    auto* fold = app.add_subcommand("fold", "reduce a product of symbols to one symbol (or halt with a report)");
    fold->add_option("expr", o.input, "expression, e.g. \"[(w), t)_{2} * [(s), u)_{2}\"; stdin if absent");
    auto* witt = app.add_subcommand("witt", "Witt vector arithmetic: add|sub|mul|neg|frob|wp|inv|mulp|shift operands");
    witt->add_option("args", o.input, "operation and operands, e.g. add (t,0) (s,0)");
    auto* pi = app.add_subcommand("pi", "solve pi * d[beta + x^(p^m)] = d[beta]");
    pi->add_option("--beta", o.beta, "beta")->required();
    pi->add_option("--x", o.x, "x")->required();
    pi->add_option("--length,-m", o.length, "Witt length m")->capture_default_str();
    auto* realize = app.add_subcommand("realize", "structure constants of the algebra of one symbol");
    realize->add_option("expr", o.input, "symbol; stdin if absent");
    auto* check = app.add_subcommand("check", "run the self-check property suites");
    check->add_option("--seed", o.seed, "random seed")->capture_default_str();
    check->add_option("--trials", o.trials, "trials per case")->capture_default_str()->check(CLI::PositiveNumber);
    auto* validate = app.add_subcommand("validate", "replay a JSON derivation trace");
    validate->add_option("file", o.input, "trace file; stdin if absent");

    for (auto* sub : {fold, witt, pi, realize, check, validate}) {
        sub->add_option("--prime,-p", o.prime, "characteristic of the base field");
        sub->add_option("--vars", o.vars, "comma-separated indeterminates");
        sub->add_flag("--json", o.json, "emit JSON");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*fold) return run_fold(o);
        if (*witt) return run_witt(o);
        if (*pi) return run_pi(o);
        if (*realize) return run_realize(o);
        if (*check) return run_check(o);
        if (*validate) return run_validate(o);
    } catch (const usage_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const parse_error& e) {
        std::cerr << "parse error at " << e.position() << ": " << e.what() << "\n";
        return kUsage;
    } catch (const domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kDomain;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kInternal;
    }
    return kUsage;
}
