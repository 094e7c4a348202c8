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
 * @file derham.hpp
 * @brief Reduction of de Rham-Witt 1-forms onto a single generator.
 *
 * A OneForm is a formal sum of terms n * c * dV^j[h] with c in W_m(F). Given a
 * generator g, reduce_form rewrites the sum as mu * d[g] and returns mu.
 *
 * Each atom h is first written as h = sum_r g^r C_r with 0 <= r < p^m and
 * every C_r a p^m-th power, so d[C_r] = 0. A single piece reduces by
 *
 *     dV^j[g^r C]  ->  r * V^j[g^(r-1) C] * d[g]
 *
 * in coordinates (the product of V^j[.] with d[g] is taken coordinatewise).
 * Several pieces are split with Teichmuller carries,
 *
 *     [X_1 + ... + X_k] = [X_1] + ... + [X_k] - sum_{i>=1} V^i[s_{i+1}(X)],
 *
 * where (s_1, s_2, ...) is the Witt sum of the [X_i]. The carries are
 * polynomials in the pieces, so they expand over g again and the reduction
 * recurses one level deeper. Depth j >= m vanishes, so this terminates.
 *
 * The generator must not be a p-th power; otherwise the exponent r is not
 * determined by the atom.
 *
 * Anything that does not fit is reported through not_reducible together with
 * the stuck term.
 */
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "error.hpp"
#include "field.hpp"
#include "witt.hpp"

namespace wittsym {

/// atom = sum over entries of g^exponent * piece.
using Expansion = std::vector<std::pair<std::int64_t, FieldElem>>;

struct FormTerm {
    std::int64_t multiplier = 1;
    unsigned depth = 0;
    WittF coef;
    FieldElem atom;
    Expansion expansion;  // optional hint, checked against the generator
};

/// One line of a reduction log.
struct FormStep {
    std::string rule;
    std::string detail;
};
using FormLog = std::vector<FormStep>;

inline std::string depth_label(unsigned j) {
    if (j == 0) return "d";
    if (j == 1) return "dV";
    return "dV^" + std::to_string(j);
}

class OneForm {
public:
    OneForm(Prime p, unsigned m, ContextPtr ctx) : p_(p), m_(m), ctx_(std::move(ctx)) {
        if (m == 0) throw domain_error("Witt length must be at least 1");
    }

    [[nodiscard]] Prime prime() const noexcept { return p_; }
    [[nodiscard]] unsigned length() const noexcept { return m_; }
    [[nodiscard]] const ContextPtr& context() const noexcept { return ctx_; }
    [[nodiscard]] const std::vector<FormTerm>& terms() const noexcept { return terms_; }
    [[nodiscard]] bool empty() const noexcept { return terms_.empty(); }

    /// Adds a term; trivially zero terms are dropped.
    void add(FormTerm t) {
        if (t.coef.length() != m_ || !(t.coef.prime() == p_)) throw mismatch("form term has the wrong Witt length or prime");
        if (!same_context(t.atom.context(), ctx_)) throw mismatch("form term from a different field");
        const auto pm = static_cast<std::int64_t>(p_.power(m_));
        t.multiplier %= pm;
        if (t.multiplier == 0 || t.depth >= m_ || t.atom.is_zero() || t.coef.is_zero()) return;
        terms_.push_back(std::move(t));
    }

    OneForm& operator+=(const OneForm& o) {
        check(o);
        for (const auto& t : o.terms_) add(t);
        return *this;
    }
    friend OneForm operator+(OneForm a, const OneForm& b) { return a += b; }
    friend OneForm operator-(const OneForm& a) {
        OneForm r(a.p_, a.m_, a.ctx_);
        for (auto t : a.terms_) {
            t.multiplier = -t.multiplier;
            r.add(std::move(t));
        }
        return r;
    }
    friend OneForm operator-(OneForm a, const OneForm& b) { return a += -b; }

    /// w * form, multiplying every coefficient.
    friend OneForm operator*(const WittF& w, const OneForm& f) {
        OneForm r(f.p_, f.m_, f.ctx_);
        for (auto t : f.terms_) {
            t.coef = w * t.coef;
            r.add(std::move(t));
        }
        return r;
    }

    [[nodiscard]] std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string out;
        for (const auto& t : terms_) {
            if (!out.empty()) out += " + ";
            out += std::to_string(t.multiplier) + " * " + t.coef.to_string() + " " + depth_label(t.depth) + "[" +
                   t.atom.to_string() + "]";
        }
        return out;
    }

private:
    Prime p_;
    unsigned m_;
    ContextPtr ctx_;
    std::vector<FormTerm> terms_;

    void check(const OneForm& o) const {
        if (!(o.p_ == p_) || o.m_ != m_ || !same_context(o.ctx_, ctx_)) throw mismatch("1-forms over different rings");
    }
};

/// n * dV^j[atom] with unit coefficient.
inline OneForm d_atom(Prime p, unsigned m, const FieldElem& atom, unsigned depth = 0, Expansion expansion = {},
                      std::int64_t n = 1) {
    OneForm f(p, m, atom.context());
    f.add(FormTerm{n, depth, witt_unit(p, m, atom), atom, std::move(expansion)});
    return f;
}

/// d of a Witt vector via its telescope: sum_j dV^j[a_{j+1}].
inline OneForm d_of_witt(const WittF& w) {
    OneForm f(w.prime(), w.length(), w[0].context());
    for (const auto& [j, a] : telescope(w)) f += d_atom(w.prime(), w.length(), a, j);
    return f;
}

enum class ReductionOrder {
    term_by_term,      // terms in the order given
    grouped_reversed,  // like atoms merged first, then processed back to front
};

namespace detail {

/// Witt sum of k generic Teichmuller lifts at length len, as polynomials in
/// X_1..X_k. Cached per key.
inline const std::vector<PolyP>& teichmuller_sum_polys(Prime p, std::size_t k, unsigned len) {
    static std::mutex mutex;
    static std::map<std::tuple<std::uint32_t, std::size_t, unsigned>, std::vector<PolyP>> cache;
    const auto key = std::make_tuple(p.value(), k, len);
    {
        std::lock_guard lock(mutex);
        if (auto it = cache.find(key); it != cache.end()) return it->second;
    }
    std::vector<std::string> names;
    for (std::size_t i = 0; i < k; ++i) names.push_back("X" + std::to_string(i + 1));
    const auto ctx = FieldContext::make(p, names);
    auto acc = witt_zero(p, len, FieldElem(ctx));
    for (std::size_t i = 0; i < k; ++i) acc = acc + teichmuller(p, FieldElem::variable(ctx, i), len);
    std::vector<PolyP> out;
    for (const auto& c : acc.coords()) out.push_back(c.numerator());
    std::lock_guard lock(mutex);
    return cache.try_emplace(key, std::move(out)).first->second;
}

class FormReducer {
public:
    FormReducer(Prime p, unsigned m, FieldElem g, FormLog* log) : p_(p), m_(m), pm_(p.power(m)), g_(std::move(g)), log_(log) {
        if (g_.is_zero()) throw domain_error("generator must be nonzero");
        // For a p-th power g the exponent in g^a * C is not unique.
        if (g_.is_pth_power(1)) throw domain_error("generator " + g_.to_string() + " is a p-th power");
    }

    WittF reduce(const OneForm& f, ReductionOrder order) {
        std::vector<FormTerm> terms = f.terms();
        if (order == ReductionOrder::grouped_reversed) {
            std::vector<FormTerm> grouped;
            for (auto& t : terms) {
                auto it = std::find_if(grouped.begin(), grouped.end(), [&](const FormTerm& u) {
                    return u.depth == t.depth && u.atom == t.atom;
                });
                const WittF scaled = integer_multiple(t.multiplier, t.coef);
                if (it == grouped.end()) {
                    t.coef = scaled;
                    t.multiplier = 1;
                    grouped.push_back(std::move(t));
                } else {
                    it->coef = it->coef + scaled;
                }
            }
            std::reverse(grouped.begin(), grouped.end());
            terms = std::move(grouped);
            note("group", std::to_string(terms.size()) + " grouped terms, reversed");
        }
        auto mu = witt_zero(p_, m_, g_);
        for (const auto& t : terms) {
            if (t.coef.is_zero() || t.atom.is_zero()) continue;
            mu = mu + t.coef * integer_multiple(t.multiplier, reduce_atom(t.depth, expand(t)));
        }
        return mu;
    }

private:
    Prime p_;
    unsigned m_;
    std::uint64_t pm_;
    FieldElem g_;
    FormLog* log_;

    void note(std::string rule, std::string detail) {
        if (log_) log_->push_back({std::move(rule), std::move(detail)});
    }

    /// Brings every exponent into [0, p^m) and merges equal exponents.
    Expansion normalize(const Expansion& in) const {
        std::map<std::int64_t, FieldElem> by_r;
        const auto pm = static_cast<std::int64_t>(pm_);
        for (const auto& [a, c] : in) {
            if (c.is_zero()) continue;
            const std::int64_t r = ((a % pm) + pm) % pm;
            const FieldElem piece = (a == r) ? c : c * g_.pow(a - r);
            auto [it, fresh] = by_r.try_emplace(r, piece);
            if (!fresh) it->second = it->second + piece;
        }
        Expansion out;
        for (auto& [r, c] : by_r)
            if (!c.is_zero()) out.emplace_back(r, std::move(c));
        return out;
    }

    [[nodiscard]] bool valid(const Expansion& e, const FieldElem& atom) const {
        FieldElem sum(atom.context());
        for (const auto& [a, c] : e) {
            if (a < 0 || !c.is_pth_power(m_)) return false;
            sum = sum + g_.pow(a) * c;
        }
        return sum == atom;
    }

    Expansion expand(const FormTerm& t) {
        if (!t.expansion.empty()) {
            auto e = normalize(t.expansion);
            if (valid(e, t.atom)) return e;
        }
        // A single piece g^a * C.
        for (std::uint64_t a = 0; a < pm_; ++a) {
            const FieldElem c = t.atom / g_.pow(static_cast<std::int64_t>(a));
            if (c.is_pth_power(m_)) return {{static_cast<std::int64_t>(a), c}};
        }
        // The generator is an indeterminate: collect the numerator by powers of it.
        if (auto var = generator_variable()) {
            const auto& ctx = t.atom.context();
            const PolyP& num = t.atom.numerator();
            const PolyP& den = t.atom.denominator();
            if (den.degree_in(*var) == 0) {
                Expansion e;
                const FieldElem dinv = FieldElem::from_polynomial(ctx, den).inverse();
                for (std::uint32_t k = 0; k <= num.degree_in(*var); ++k) {
                    const PolyP ck = num.coefficient_in(*var, k);
                    if (!ck.is_zero()) e.emplace_back(k, FieldElem::from_polynomial(ctx, ck) * dinv);
                }
                e = normalize(e);
                if (valid(e, t.atom)) return e;
            }
        }
        throw not_reducible(depth_label(t.depth) + "[" + t.atom.to_string() + "]");
    }

    [[nodiscard]] std::optional<std::size_t> generator_variable() const {
        if (!g_.is_polynomial() || g_.numerator().terms().size() != 1) return std::nullopt;
        const auto& [mono, c] = g_.numerator().terms().front();
        if (c != 1 || mono.degree() != 1) return std::nullopt;
        for (std::size_t i = 0; i < g_.context()->nvars(); ++i)
            if (mono.exp[i] == 1) return i;
        return std::nullopt;
    }

    /// dV^j[g^r C] -> r * V^j[g^(r-1) C].
    WittF reduce_piece(unsigned j, std::int64_t r, const FieldElem& c) {
        const FieldElem atom = g_.pow(r) * c;
        if (r == 0) {
            note("p-power", depth_label(j) + "[" + atom.to_string() + "] -> 0");
            return witt_zero(p_, m_, g_);
        }
        const WittF v = integer_multiple(r, shifted_teichmuller(p_, g_.pow(r - 1) * c, j, m_));
        note("leibniz", depth_label(j) + "[" + atom.to_string() + "] -> " + v.to_string() + " d[" + g_.to_string() + "]");
        return v;
    }

    WittF reduce_atom(unsigned j, const Expansion& e) {
        auto mu = witt_zero(p_, m_, g_);
        if (j >= m_ || e.empty()) return mu;
        for (const auto& [r, c] : e) mu = mu + reduce_piece(j, r, c);
        const unsigned len = m_ - j;
        if (e.size() == 1 || len == 1) return mu;
        if (e.size() > 8) throw not_reducible("too many pieces in " + depth_label(j) + " atom");
        const auto& s = teichmuller_sum_polys(p_, e.size(), len);
        note("telescope", depth_label(j) + " atom with " + std::to_string(e.size()) + " pieces");
        for (unsigned i = 1; i < len; ++i) {
            const Expansion carry = normalize(substitute(s[i], e));
            mu = mu - reduce_atom(j + i, carry);
        }
        return mu;
    }

    /// Replaces X_i by g^(r_i) C_i, keeping the result split by powers of g.
    Expansion substitute(const PolyP& s, const Expansion& e) const {
        Expansion out;
        const auto& ctx = g_.context();
        for (const auto& [mono, coeff] : s.terms()) {
            std::int64_t a = 0;
            FieldElem c = FieldElem::constant(ctx, coeff);
            for (std::size_t i = 0; i < e.size(); ++i) {
                if (mono.exp[i] == 0) continue;
                a += e[i].first * mono.exp[i];
                c = c * e[i].second.pow(mono.exp[i]);
            }
            out.emplace_back(a, std::move(c));
        }
        return out;
    }
};

}  // namespace detail

/// mu with f = mu * d[generator]. Throws not_reducible on a stuck term.
inline WittF reduce_form(const OneForm& f, const FieldElem& generator,
                         ReductionOrder order = ReductionOrder::term_by_term, FormLog* log = nullptr) {
    if (!same_context(generator.context(), f.context())) throw mismatch("generator from a different field");
    detail::FormReducer r(f.prime(), f.length(), generator, log);
    return r.reduce(f, order);
}

struct PiSolution {
    WittF pi;
    WittF mu;          // inverse of pi, d[shifted] = mu * d[target]
    FieldElem target;  // beta
    FieldElem shifted; // beta + x^(p^m)
    FormLog derivation;
};

/// The unit pi with pi * d[beta + x^(p^m)] = d[beta] in W_m.
inline PiSolution solve_pi(const FieldElem& beta, const FieldElem& x, Prime p, unsigned m) {
    if (beta.is_zero()) throw domain_error("solve_pi needs a nonzero beta");
    if (!same_context(beta.context(), x.context())) throw mismatch("beta and x from different fields");
    const std::int64_t q = static_cast<std::int64_t>(p.power(m));
    const FieldElem xq = x.pow(q);
    const FieldElem delta = beta + xq;
    if (delta.is_zero()) throw degenerate_shift("beta + x^" + std::to_string(q) + " = 0");

    PiSolution sol{witt_unit(p, m, beta), witt_unit(p, m, beta), beta, delta, {}};
    auto& log = sol.derivation;
    const WittF carry = teichmuller(p, beta, m) + teichmuller(p, xq, m);
    log.push_back({"carry", "[" + beta.to_string() + "] + [" + xq.to_string() + "] = " + carry.to_string()});
    if (!(carry[0] == delta)) throw internal_error("carry vector does not start with beta + x^q");

    const OneForm form = d_atom(p, m, delta, 0, {{1, FieldElem::constant(beta.context(), 1)}, {0, xq}});
    sol.mu = reduce_form(form, beta, ReductionOrder::term_by_term, &log);
    sol.pi = witt_inverse(sol.mu);
    log.push_back({"inverse", "pi = inv(" + sol.mu.to_string() + ") = " + sol.pi.to_string()});

    if (!sol.pi[0].is_one()) throw internal_error("pi does not start with 1");
    const OneForm check = sol.pi * form - d_atom(p, m, beta);
    if (!reduce_form(check, beta).is_zero()) throw internal_error("pi fails its defining relation");
    return sol;
}

}  // namespace wittsym
