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
 * @file symbol.hpp
 * @brief Cyclic symbols [omega, beta)_{p^m}, their identities as rewrite rules,
 * and trace replay.
 *
 * A BrauerExpr is a formal tensor product of symbols; the empty product is the
 * split class and prints as "1". Every rewrite produces a RewriteStep carrying
 * enough witnesses to be re-executed by validate_trace. The identities are
 * taken as axioms: replay checks patterns and witness arithmetic, not Brauer
 * equivalence.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "derham.hpp"
#include "error.hpp"
#include "field.hpp"
#include "witt.hpp"

namespace wittsym {

class CyclicSymbol {
public:
    CyclicSymbol(WittF omega, FieldElem beta) : omega_(std::move(omega)), beta_(std::move(beta)) {
        if (beta_.is_zero()) throw domain_error("symbol with beta = 0");
        if (omega_.length() == 0) throw domain_error("symbol with empty omega");
        if (!(omega_.prime() == beta_.prime())) throw mismatch("omega and beta over different primes");
        for (const auto& c : omega_.coords())
            if (!same_context(c.context(), beta_.context())) throw mismatch("omega and beta over different fields");
    }

    [[nodiscard]] const WittF& omega() const noexcept { return omega_; }
    [[nodiscard]] const FieldElem& beta() const noexcept { return beta_; }
    [[nodiscard]] unsigned level() const noexcept { return omega_.length(); }
    [[nodiscard]] Prime prime() const { return beta_.prime(); }
    [[nodiscard]] const ContextPtr& context() const noexcept { return beta_.context(); }
    /// p^level.
    [[nodiscard]] std::uint64_t degree() const { return prime().power(level()); }

    [[nodiscard]] std::string to_string() const {
        return "[" + omega_.to_string() + ", " + beta_.to_string() + ")_{" + std::to_string(degree()) + "}";
    }

    friend bool operator==(const CyclicSymbol& a, const CyclicSymbol& b) {
        return a.omega_ == b.omega_ && a.beta_ == b.beta_;
    }

private:
    WittF omega_;
    FieldElem beta_;
};

struct BrauerExpr {
    std::vector<CyclicSymbol> factors;

    [[nodiscard]] bool empty() const noexcept { return factors.empty(); }
    [[nodiscard]] std::size_t size() const noexcept { return factors.size(); }
    [[nodiscard]] unsigned max_level() const {
        unsigned m = 0;
        for (const auto& f : factors) m = std::max(m, f.level());
        return m;
    }
    [[nodiscard]] std::string to_string() const {
        if (factors.empty()) return "1";
        std::string out;
        for (const auto& f : factors) {
            if (!out.empty()) out += " * ";
            out += f.to_string();
        }
        return out;
    }
    friend bool operator==(const BrauerExpr&, const BrauerExpr&) = default;
};

enum class Rule { split, as_shift, norm_twist, pad, unpad, merge_omega, merge_beta, prop_shift, neat, merge_step, mul_p };

inline std::string_view rule_name(Rule r) {
    switch (r) {
        case Rule::split: return "split";
        case Rule::as_shift: return "as-shift";
        case Rule::norm_twist: return "norm-twist";
        case Rule::pad: return "pad";
        case Rule::unpad: return "unpad";
        case Rule::merge_omega: return "merge-omega";
        case Rule::merge_beta: return "merge-beta";
        case Rule::prop_shift: return "prop-shift";
        case Rule::neat: return "neat";
        case Rule::merge_step: return "merge-step";
        case Rule::mul_p: return "mul-p";
    }
    return "?";
}

inline std::optional<Rule> rule_from_name(std::string_view name) {
    for (Rule r : {Rule::split, Rule::as_shift, Rule::norm_twist, Rule::pad, Rule::unpad, Rule::merge_omega,
                   Rule::merge_beta, Rule::prop_shift, Rule::neat, Rule::merge_step, Rule::mul_p})
        if (rule_name(r) == name) return r;
    return std::nullopt;
}

/// A named witness value. Text covers mode switches such as "insert".
struct Witness {
    std::string name;
    std::variant<FieldElem, WittF, std::string, std::int64_t> value;

    [[nodiscard]] std::string to_string() const {
        return std::visit(
            [](const auto& v) -> std::string {
                using T = std::decay_t<decltype(v)>;
                if constexpr (std::is_same_v<T, std::string>)
                    return v;
                else if constexpr (std::is_same_v<T, std::int64_t>)
                    return std::to_string(v);
                else
                    return v.to_string();
            },
            value);
    }
    friend bool operator==(const Witness& a, const Witness& b) { return a.name == b.name && a.value == b.value; }
};

struct RewriteStep {
    Rule rule = Rule::split;
    BrauerExpr before, after;
    std::vector<std::size_t> targets;
    std::vector<Witness> witnesses;
    std::vector<RewriteStep> substeps;  // composite steps only

    [[nodiscard]] const Witness* find(std::string_view name) const {
        for (const auto& w : witnesses)
            if (w.name == name) return &w;
        return nullptr;
    }
};

using DerivationTrace = std::vector<RewriteStep>;

namespace detail {

template <class T>
const T& witness_as(const RewriteStep& s, std::string_view name) {
    const Witness* w = s.find(name);
    if (!w) throw pattern_mismatch(std::string(rule_name(s.rule)) + " needs witness '" + std::string(name) + "'");
    const T* v = std::get_if<T>(&w->value);
    if (!v) throw pattern_mismatch("witness '" + std::string(name) + "' has the wrong kind");
    return *v;
}

inline const CyclicSymbol& target_factor(const BrauerExpr& e, const std::vector<std::size_t>& targets, std::size_t k) {
    if (k >= targets.size()) throw pattern_mismatch("missing target index");
    if (targets[k] >= e.size()) throw pattern_mismatch("target index " + std::to_string(targets[k]) + " out of range");
    return e.factors[targets[k]];
}

inline void need_targets(const RewriteStep& s, std::size_t n) {
    if (s.targets.size() != n) throw pattern_mismatch(std::string(rule_name(s.rule)) + " takes " + std::to_string(n) + " target(s)");
    if (n == 2 && s.targets[0] == s.targets[1]) throw pattern_mismatch("the two targets coincide");
}

/// True for [(b,0,..,0), b) and for omega = 0.
inline bool is_split_pattern(const CyclicSymbol& s) {
    return s.omega().is_zero() || s.omega() == teichmuller(s.prime(), s.beta(), s.level());
}

/// Mutates s.after according to the rule; s.before, targets and witnesses are inputs.
inline void execute(RewriteStep& s) {
    BrauerExpr e = s.before;
    switch (s.rule) {
        case Rule::split: {
            const auto& mode = witness_as<std::string>(s, "mode");
            need_targets(s, 1);
            if (mode == "remove") {
                const auto& f = target_factor(e, s.targets, 0);
                if (!is_split_pattern(f)) throw pattern_mismatch("split: " + f.to_string() + " is not [(b,0,..,0), b)");
                e.factors.erase(e.factors.begin() + static_cast<std::ptrdiff_t>(s.targets[0]));
            } else if (mode == "insert") {
                const auto& beta = witness_as<FieldElem>(s, "beta");
                const auto level = witness_as<std::int64_t>(s, "level");
                if (level < 1 || level > 16) throw pattern_mismatch("split: bad level");
                if (s.targets[0] > e.size()) throw pattern_mismatch("split: insert position out of range");
                CyclicSymbol f(teichmuller(beta.prime(), beta, static_cast<unsigned>(level)), beta);
                if (!e.empty() && !same_context(e.factors[0].context(), beta.context()))
                    throw mismatch("split: inserted factor over a different field");
                e.factors.insert(e.factors.begin() + static_cast<std::ptrdiff_t>(s.targets[0]), std::move(f));
            } else {
                throw pattern_mismatch("split: unknown mode " + mode);
            }
            break;
        }
        case Rule::as_shift: {
            need_targets(s, 1);
            const auto& f = target_factor(e, s.targets, 0);
            const auto& tau = witness_as<WittF>(s, "tau");
            if (tau.length() != f.level()) throw pattern_mismatch("as-shift: witness length differs from level");
            e.factors[s.targets[0]] = CyclicSymbol(f.omega() + wp_map(tau), f.beta());
            break;
        }
        case Rule::norm_twist: {
            need_targets(s, 1);
            const auto& f = target_factor(e, s.targets, 0);
            const auto& gamma = witness_as<FieldElem>(s, "gamma");
            if (gamma.is_zero()) throw pattern_mismatch("norm-twist: gamma = 0");
            e.factors[s.targets[0]] = CyclicSymbol(f.omega(), f.beta() * gamma.pow(static_cast<std::int64_t>(f.degree())));
            break;
        }
        case Rule::pad: {
            need_targets(s, 1);
            const auto& f = target_factor(e, s.targets, 0);
            const auto& form = witness_as<std::string>(s, "form");
            if (form == "shift")
                e.factors[s.targets[0]] = CyclicSymbol(verschiebung(f.omega()), f.beta());
            else if (form == "power")
                e.factors[s.targets[0]] = CyclicSymbol(extend_zero(f.omega(), f.level() + 1), f.beta().pow(f.prime().value()));
            else
                throw pattern_mismatch("pad: unknown form " + form);
            break;
        }
        case Rule::unpad: {
            need_targets(s, 1);
            const auto& f = target_factor(e, s.targets, 0);
            if (f.level() < 2) throw pattern_mismatch("unpad: level 1 symbol");
            if (!f.omega()[0].is_zero()) throw pattern_mismatch("unpad: first coordinate of omega is nonzero");
            std::vector<FieldElem> rest(f.omega().coords().begin() + 1, f.omega().coords().end());
            e.factors[s.targets[0]] = CyclicSymbol(WittF(f.prime(), std::move(rest)), f.beta());
            break;
        }
        case Rule::merge_beta:
        case Rule::merge_omega: {
            need_targets(s, 2);
            const auto& a = target_factor(e, s.targets, 0);
            const auto& b = target_factor(e, s.targets, 1);
            if (a.level() != b.level()) throw pattern_mismatch("merge: levels differ");
            CyclicSymbol merged = a;
            if (s.rule == Rule::merge_beta) {
                if (!(a.beta() == b.beta())) throw pattern_mismatch("merge-beta: betas differ");
                merged = CyclicSymbol(a.omega() + b.omega(), a.beta());
            } else {
                if (!(a.omega() == b.omega())) throw pattern_mismatch("merge-omega: omegas differ");
                merged = CyclicSymbol(a.omega(), a.beta() * b.beta());
            }
            e.factors[s.targets[0]] = std::move(merged);
            e.factors.erase(e.factors.begin() + static_cast<std::ptrdiff_t>(s.targets[1]));
            break;
        }
        case Rule::prop_shift: {
            need_targets(s, 1);
            const auto& f = target_factor(e, s.targets, 0);
            const auto& x = witness_as<FieldElem>(s, "x");
            const auto sol = solve_pi(f.beta(), x, f.prime(), f.level());
            if (const Witness* w = s.find("pi"); w && !(w->value == decltype(w->value)(sol.pi)))
                throw pattern_mismatch("prop-shift: recorded pi differs from the recomputed one");
            const auto q = static_cast<std::int64_t>(f.degree());
            const auto lead = FieldElem::constant(f.context(), 1) + x.pow(q) / f.beta();
            e.factors[s.targets[0]] = CyclicSymbol(f.omega() * teichmuller(f.prime(), lead, f.level()) * sol.pi, sol.shifted);
            break;
        }
        case Rule::mul_p: {
            need_targets(s, 1);
            const auto& f = target_factor(e, s.targets, 0);
            const WittF pw = mul_by_p(f.omega());
            if (!(pw == integer_multiple(f.prime().value(), f.omega())))
                throw internal_error("mul-p: p * omega disagrees with repeated addition");
            e.factors[s.targets[0]] = CyclicSymbol(pw, f.beta());
            break;
        }
        case Rule::neat:
        case Rule::merge_step:
            throw pattern_mismatch(std::string(rule_name(s.rule)) + " is a composite rule");
    }
    s.after = std::move(e);
}

}  // namespace detail

/// Applies one identity to `expr`. Throws pattern_mismatch when the target
/// factors do not have the rule's shape.
inline RewriteStep apply_identity(Rule rule, const BrauerExpr& expr, std::vector<std::size_t> targets,
                                  std::vector<Witness> witnesses) {
    RewriteStep s{rule, expr, {}, std::move(targets), std::move(witnesses), {}};
    detail::execute(s);
    if (rule == Rule::prop_shift && !s.find("pi")) {
        const auto& f = expr.factors[s.targets[0]];
        s.witnesses.push_back({"pi", solve_pi(f.beta(), std::get<FieldElem>(s.find("x")->value), f.prime(), f.level()).pi});
    }
    return s;
}

/// Wraps `inner` as a composite step named `rule`.
inline RewriteStep composite(Rule rule, DerivationTrace inner, std::vector<std::size_t> targets,
                             std::vector<Witness> witnesses) {
    if (inner.empty()) throw internal_error("composite step without substeps");
    RewriteStep s{rule, inner.front().before, inner.back().after, std::move(targets), std::move(witnesses), std::move(inner)};
    return s;
}

/// Appends `extra` to the expressions of every step (recursively). Target
/// indices stay valid because the extra factors come last.
inline RewriteStep with_suffix(RewriteStep s, const std::vector<CyclicSymbol>& extra) {
    s.before.factors.insert(s.before.factors.end(), extra.begin(), extra.end());
    s.after.factors.insert(s.after.factors.end(), extra.begin(), extra.end());
    for (auto& sub : s.substeps) sub = with_suffix(std::move(sub), extra);
    return s;
}

struct TraceCheck {
    bool valid = true;
    std::optional<std::size_t> failing_step;
    std::string reason;
};

namespace detail {

inline std::optional<std::string> check_step(const RewriteStep& s) {
    try {
        if (!s.substeps.empty()) {
            if (s.rule != Rule::neat && s.rule != Rule::merge_step && s.rule != Rule::merge_omega)
                return std::string(rule_name(s.rule)) + " cannot have substeps";
            if (!(s.substeps.front().before == s.before)) return "first substep does not start at the step's input";
            if (!(s.substeps.back().after == s.after)) return "last substep does not end at the step's output";
            for (std::size_t i = 0; i < s.substeps.size(); ++i) {
                if (i > 0 && !(s.substeps[i - 1].after == s.substeps[i].before))
                    return "substep " + std::to_string(i) + " does not chain";
                if (auto r = check_step(s.substeps[i])) return "substep " + std::to_string(i) + ": " + *r;
            }
            return std::nullopt;
        }
        RewriteStep replay{s.rule, s.before, {}, s.targets, s.witnesses, {}};
        execute(replay);
        if (!(replay.after == s.after)) return "replayed output differs: " + replay.after.to_string();
        return std::nullopt;
    } catch (const error& e) {
        return std::string(e.what());
    }
}

}  // namespace detail

/// Re-executes every step and checks that consecutive steps chain.
inline TraceCheck validate_trace(const DerivationTrace& trace) {
    for (std::size_t i = 0; i < trace.size(); ++i) {
        if (i > 0 && !(trace[i - 1].after == trace[i].before)) return {false, i, "step does not start where the previous one ended"};
        if (auto r = detail::check_step(trace[i])) return {false, i, *r};
    }
    return {};
}

}  // namespace wittsym
