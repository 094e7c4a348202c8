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

/**
 * @file calculus.hpp
 * @brief Derived symbol manipulations: the beta shift, neat pairs, the merge
 * of a level-m symbol with a level-1 symbol, folding lists of degree-p
 * symbols, and the exponent recursion for mixed products.
 *
 * Every operation returns the DerivationTrace that justifies it; traces are
 * built from apply_identity and so replay under validate_trace.
 */
#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "derham.hpp"
#include "symbol.hpp"

namespace wittsym {

/// Class of s^p: [(w_1^p, .., w_{m-1}^p), beta)_{p^(m-1)}, or nullopt (split) at level 1.
inline std::optional<CyclicSymbol> mul_class_by_p(const CyclicSymbol& s) {
    if (s.level() == 1) return std::nullopt;
    const WittF pw = mul_by_p(s.omega());
    std::vector<FieldElem> rest(pw.coords().begin() + 1, pw.coords().end());
    return CyclicSymbol(WittF(s.prime(), std::move(rest)), s.beta());
}

/// [omega, beta) -> [omega * [1 + x^q/beta] * pi, beta + x^q) with q = p^m.
inline std::pair<CyclicSymbol, RewriteStep> proposition_shift(const CyclicSymbol& s, const FieldElem& x) {
    auto step = apply_identity(Rule::prop_shift, BrauerExpr{{s}}, {0}, {{"x", x}});
    return {step.after.factors.at(0), std::move(step)};
}

struct NeatPair {
    FieldElem x;
    FieldElem delta;
    WittF tau;
    DerivationTrace steps;  // over the expression a * b
};

/// For a = [omega, beta)_{p^m} and b = [(alpha), gamma)_p, rewrites the pair to
/// [tau, delta)_{p^m} * [(delta), gamma)_p with x = alpha - beta.
inline NeatPair neat_pair(const CyclicSymbol& a, const CyclicSymbol& b) {
    if (b.level() != 1) throw pattern_mismatch("neat_pair: second symbol must have level 1");
    if (!same_context(a.context(), b.context())) throw mismatch("neat_pair: symbols over different fields");
    const Prime p = a.prime();
    const unsigned m = a.level();
    const FieldElem& alpha = b.omega()[0];
    const FieldElem x = alpha - a.beta();
    const FieldElem delta = a.beta() + x.pow(static_cast<std::int64_t>(p.power(m)));
    if (delta.is_zero()) throw degenerate_shift("neat_pair: delta = beta + (alpha - beta)^" + std::to_string(p.power(m)) + " = 0");

    FieldElem y(a.context());
    for (unsigned i = 0; i < m; ++i) y = y + x.pow(static_cast<std::int64_t>(p.power(i)));

    NeatPair out{x, delta, a.omega(), {}};
    const BrauerExpr start{{a, b}};
    out.steps.push_back(apply_identity(Rule::prop_shift, start, {0}, {{"x", x}}));
    out.steps.push_back(apply_identity(Rule::as_shift, out.steps.back().after, {1}, {{"tau", WittF(p, {y})}}));
    const auto& end = out.steps.back().after.factors;
    out.tau = end[0].omega();
    if (!(end[0].beta() == delta) || !(end[1].omega()[0] == delta))
        throw internal_error("neat_pair: rewritten pair does not share delta");
    return out;
}

/// [tau, delta)_{p^m} * [(delta), gamma)_p  ->  [(delta, tau), delta gamma^(p^m))_{p^(m+1)}.
/// The trace has four steps: norm-twist, pad, a merge-omega chain, merge-beta.
inline std::pair<CyclicSymbol, DerivationTrace> merge_step(const CyclicSymbol& a, const CyclicSymbol& b) {
    if (b.level() != 1) throw pattern_mismatch("merge_step: second symbol must have level 1");
    if (!(b.omega()[0] == a.beta())) throw pattern_mismatch("merge_step: second omega " + b.omega().to_string() +
                                                            " is not (" + a.beta().to_string() + ")");
    const Prime p = a.prime();
    const unsigned m = a.level();
    const FieldElem& delta = a.beta();
    const FieldElem& gamma = b.beta();

    DerivationTrace trace;
    trace.push_back(apply_identity(Rule::norm_twist, BrauerExpr{{a, b}}, {0}, {{"gamma", gamma}}));
    trace.push_back(apply_identity(Rule::pad, trace.back().after, {0}, {{"form", std::string("shift")}}));

    DerivationTrace chain;
    BrauerExpr cur = trace.back().after;
    for (unsigned i = 0; i < m; ++i) {
        chain.push_back(apply_identity(Rule::pad, cur, {1}, {{"form", std::string("power")}}));
        cur = chain.back().after;
    }
    chain.push_back(apply_identity(Rule::split, cur, {2},
                                   {{"mode", std::string("insert")}, {"beta", delta}, {"level", std::int64_t(m + 1)}}));
    chain.push_back(apply_identity(Rule::merge_omega, chain.back().after, {1, 2}, {}));
    trace.push_back(composite(Rule::merge_omega, std::move(chain), {1}, {{"delta", delta}}));

    trace.push_back(apply_identity(Rule::merge_beta, trace.back().after, {0, 1}, {}));

    std::vector<FieldElem> coords{delta};
    coords.insert(coords.end(), a.omega().coords().begin(), a.omega().coords().end());
    const CyclicSymbol expected(WittF(p, std::move(coords)), delta * gamma.pow(static_cast<std::int64_t>(p.power(m))));
    const auto& out = trace.back().after;
    if (out.size() != 1 || !(out.factors[0] == expected))
        throw internal_error("merge_step: result " + out.to_string() + " differs from " + expected.to_string());
    return {expected, std::move(trace)};
}

/// Left fold of degree-p symbols into one symbol of level n.
inline std::pair<CyclicSymbol, DerivationTrace> fold_prime_list(const std::vector<CyclicSymbol>& symbols) {
    if (symbols.empty()) throw domain_error("fold of an empty list");
    for (const auto& s : symbols)
        if (s.level() != 1) throw pattern_mismatch("fold: symbol " + s.to_string() + " does not have level 1");
    DerivationTrace trace;
    CyclicSymbol acc = symbols[0];
    for (std::size_t k = 1; k < symbols.size(); ++k) {
        const std::vector<CyclicSymbol> rest(symbols.begin() + static_cast<std::ptrdiff_t>(k + 1), symbols.end());
        NeatPair np = [&] {
            try {
                return neat_pair(acc, symbols[k]);
            } catch (const degenerate_shift& e) {
                throw degenerate_shift("fold step " + std::to_string(k) + ": " + e.what());
            }
        }();
        DerivationTrace inner;
        for (auto& s : np.steps) inner.push_back(with_suffix(std::move(s), rest));
        trace.push_back(composite(Rule::neat, std::move(inner), {0, 1},
                                  {{"x", np.x}, {"delta", np.delta}, {"tau", np.tau}}));
        const auto& pair = trace.back().after.factors;
        auto [merged, steps] = merge_step(pair[0], pair[1]);
        DerivationTrace lifted;
        for (auto& s : steps) lifted.push_back(with_suffix(std::move(s), rest));
        trace.push_back(composite(Rule::merge_step, std::move(lifted), {0, 1}, {}));
        acc = merged;
    }
    return {acc, std::move(trace)};
}

struct AlbertResult {
    bool complete = false;
    // complete: the input as one cyclic symbol
    std::optional<CyclicSymbol> cyclic;
    DerivationTrace trace;
    // halt: A = factor * B with B of exponent p
    BrauerExpr b_expr;
    std::optional<CyclicSymbol> factor;     // [(w*, 0), b*)_{p^(t+1)}
    std::optional<CyclicSymbol> p_power;    // [w*, b*)_{p^t}, the class of A^p
    DerivationTrace certificate;            // B^p -> 1
    bool certificate_valid = false;
    std::string reason;
};

namespace detail {

/// Steps taking every factor to its p-th power class: mul-p, then unpad or
/// split. Appends to `trace`, starting from `expr` with `tail` after it.
inline BrauerExpr power_steps(const BrauerExpr& expr, const std::vector<CyclicSymbol>& tail, DerivationTrace& trace) {
    BrauerExpr cur = expr;
    for (std::size_t i = 0; i < expr.size(); ++i) {
        auto step = apply_identity(Rule::mul_p, cur, {i}, {});
        cur = step.after;
        trace.push_back(with_suffix(std::move(step), tail));
    }
    std::size_t i = 0;
    while (i < cur.size()) {
        const bool split = cur.factors[i].level() == 1;
        auto step = split ? apply_identity(Rule::split, cur, {i}, {{"mode", std::string("remove")}})
                          : apply_identity(Rule::unpad, cur, {i}, {{"form", std::string("shift")}});
        cur = step.after;
        trace.push_back(with_suffix(std::move(step), tail));
        if (!split) ++i;
    }
    return cur;
}

}  // namespace detail

/// Reduces a product to one cyclic symbol when possible. Mixed products stop
/// after one round of the exponent recursion with a report on B.
inline AlbertResult albert_reduce(const BrauerExpr& expr) {
    if (expr.empty()) throw domain_error("albert_reduce of the empty product");
    AlbertResult res;
    if (expr.size() == 1) {
        res.complete = true;
        res.cyclic = expr.factors[0];
        return res;
    }
    if (expr.max_level() == 1) {
        auto [sym, trace] = fold_prime_list(expr.factors);
        res.complete = true;
        res.cyclic = sym;
        res.trace = std::move(trace);
        return res;
    }

    // Class of A^p, then recurse on it.
    DerivationTrace scratch;
    const BrauerExpr powered = detail::power_steps(expr, {}, scratch);
    AlbertResult inner = albert_reduce(powered);
    if (!inner.complete) {
        inner.reason = "inner recursion: " + inner.reason;
        return inner;
    }
    const CyclicSymbol star = *inner.cyclic;
    const unsigned t = star.level();

    const WittF padded = extend_zero(star.omega(), t + 1);
    const CyclicSymbol twist(-padded, star.beta());
    res.factor = CyclicSymbol(padded, star.beta());
    res.p_power = star;
    res.b_expr = expr;
    res.b_expr.factors.push_back(twist);

    // Certificate that B^p is split: the twist factor first, then A, then the
    // recursion's own trace, and finally the Artin-Schreier cancellation.
    DerivationTrace cert;
    const std::size_t last = expr.size();
    cert.push_back(apply_identity(Rule::mul_p, res.b_expr, {last}, {}));
    cert.push_back(apply_identity(Rule::unpad, cert.back().after, {last}, {{"form", std::string("shift")}}));
    const CyclicSymbol twist_u = cert.back().after.factors.back();
    detail::power_steps(expr, {twist_u}, cert);
    for (const auto& s : inner.trace) cert.push_back(with_suffix(s, {twist_u}));
    cert.push_back(apply_identity(Rule::merge_beta, cert.back().after, {0, 1}, {}));
    cert.push_back(apply_identity(Rule::as_shift, cert.back().after, {0}, {{"tau", star.omega()}}));
    cert.push_back(apply_identity(Rule::split, cert.back().after, {0}, {{"mode", std::string("remove")}}));
    if (!cert.back().after.empty()) throw internal_error("albert certificate does not end in the split class");

    res.certificate = std::move(cert);
    res.certificate_valid = validate_trace(res.certificate).valid;
    res.reason = "exponent-p remainder has no constructive degree-p decomposition";
    return res;
}

}  // namespace wittsym
