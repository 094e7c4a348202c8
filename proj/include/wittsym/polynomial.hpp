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
 * @file polynomial.hpp
 * @brief Sparse multivariate polynomials over F_p or Q.
 *
 * Terms are kept sorted by decreasing graded-lexicographic order with no zero
 * coefficients stored, so two polynomials are equal iff their term lists are.
 * The coefficient domain is a small policy object (ModP carries p at runtime,
 * Rationals is stateless) stored alongside the terms.
 */
#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "error.hpp"

namespace wittsym {

inline constexpr std::size_t kMaxVars = 12;

/// Exponent vector. Unused slots stay zero.
struct Monomial {
    std::array<std::uint16_t, kMaxVars> exp{};

    [[nodiscard]] std::uint32_t degree() const noexcept {
        std::uint32_t d = 0;
        for (auto e : exp) d += e;
        return d;
    }

    [[nodiscard]] bool is_one() const noexcept {
        return std::all_of(exp.begin(), exp.end(), [](auto e) { return e == 0; });
    }

    [[nodiscard]] bool divides(const Monomial& other) const noexcept {
        for (std::size_t i = 0; i < kMaxVars; ++i)
            if (exp[i] > other.exp[i]) return false;
        return true;
    }

    static Monomial variable(std::size_t index, std::uint32_t power = 1) {
        Monomial m;
        m.set(index, power);
        return m;
    }

    void set(std::size_t index, std::uint64_t power) {
        if (power > 0xFFFF) throw internal_error("monomial exponent overflow");
        exp[index] = static_cast<std::uint16_t>(power);
    }

    friend Monomial operator*(const Monomial& a, const Monomial& b) {
        Monomial r;
        for (std::size_t i = 0; i < kMaxVars; ++i) r.set(i, std::uint32_t{a.exp[i]} + b.exp[i]);
        return r;
    }

    /// Requires b | a.
    friend Monomial operator/(const Monomial& a, const Monomial& b) noexcept {
        Monomial r;
        for (std::size_t i = 0; i < kMaxVars; ++i) r.exp[i] = static_cast<std::uint16_t>(a.exp[i] - b.exp[i]);
        return r;
    }

    friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Graded-lex: higher total degree first, ties broken lexicographically with
/// variable 0 most significant.
inline bool grlex_greater(const Monomial& a, const Monomial& b) noexcept {
    const auto da = a.degree(), db = b.degree();
    if (da != db) return da > db;
    for (std::size_t i = 0; i < kMaxVars; ++i)
        if (a.exp[i] != b.exp[i]) return a.exp[i] > b.exp[i];
    return false;
}

/// Prime field F_p with p known at runtime.
struct ModP {
    using value_type = std::uint32_t;
    std::uint32_t p = 2;

    [[nodiscard]] value_type zero() const noexcept { return 0; }
    [[nodiscard]] value_type one() const noexcept { return 1 % p; }
    [[nodiscard]] bool is_zero(value_type a) const noexcept { return a == 0; }
    [[nodiscard]] value_type add(value_type a, value_type b) const noexcept { return (a + b) % p; }
    [[nodiscard]] value_type sub(value_type a, value_type b) const noexcept { return (a + p - b) % p; }
    [[nodiscard]] value_type neg(value_type a) const noexcept { return a == 0 ? 0 : p - a; }
    [[nodiscard]] value_type mul(value_type a, value_type b) const noexcept {
        return static_cast<value_type>((std::uint64_t{a} * b) % p);
    }
    [[nodiscard]] value_type pow(value_type a, std::uint64_t e) const noexcept {
        std::uint64_t r = 1 % p, b = a;
        while (e) {
            if (e & 1) r = r * b % p;
            b = b * b % p;
            e >>= 1;
        }
        return static_cast<value_type>(r);
    }
    [[nodiscard]] value_type inv(value_type a) const {
        if (a == 0) throw division_by_zero();
        return pow(a, p - 2);
    }
    [[nodiscard]] value_type from_int(std::int64_t v) const noexcept {
        auto r = v % static_cast<std::int64_t>(p);
        return static_cast<value_type>(r < 0 ? r + p : r);
    }
    [[nodiscard]] value_type from_mpz(const mpz_class& v) const {
        mpz_class r = v % p;
        if (r < 0) r += p;
        return static_cast<value_type>(r.get_ui());
    }
    [[nodiscard]] std::string to_string(value_type a) const { return std::to_string(a); }
    friend bool operator==(const ModP&, const ModP&) = default;
};

/// The rationals, backed by GMP.
struct Rationals {
    using value_type = mpq_class;

    [[nodiscard]] value_type zero() const { return 0; }
    [[nodiscard]] value_type one() const { return 1; }
    [[nodiscard]] bool is_zero(const value_type& a) const { return sgn(a) == 0; }
    [[nodiscard]] value_type add(const value_type& a, const value_type& b) const { return a + b; }
    [[nodiscard]] value_type sub(const value_type& a, const value_type& b) const { return a - b; }
    [[nodiscard]] value_type neg(const value_type& a) const { return -a; }
    [[nodiscard]] value_type mul(const value_type& a, const value_type& b) const { return a * b; }
    [[nodiscard]] value_type inv(const value_type& a) const {
        if (sgn(a) == 0) throw division_by_zero();
        return 1 / a;
    }
    [[nodiscard]] value_type from_int(std::int64_t v) const { return mpq_class(mpz_class(static_cast<long>(v))); }
    [[nodiscard]] std::string to_string(const value_type& a) const { return a.get_str(); }
    friend bool operator==(const Rationals&, const Rationals&) = default;
};

template <class Domain>
class Polynomial {
public:
    using value_type = typename Domain::value_type;
    using Term = std::pair<Monomial, value_type>;

    Polynomial() = default;
    Polynomial(Domain dom, std::size_t nvars) : dom_(std::move(dom)), nvars_(nvars) {
        if (nvars > kMaxVars) throw internal_error("too many indeterminates");
    }

    static Polynomial constant(Domain dom, std::size_t nvars, value_type c) {
        Polynomial r(std::move(dom), nvars);
        if (!r.dom_.is_zero(c)) r.terms_.emplace_back(Monomial{}, std::move(c));
        return r;
    }
    static Polynomial variable(Domain dom, std::size_t nvars, std::size_t index) {
        if (index >= nvars) throw internal_error("variable index out of range");
        Polynomial r(std::move(dom), nvars);
        r.terms_.emplace_back(Monomial::variable(index), r.dom_.one());
        return r;
    }
    static Polynomial monomial(Domain dom, std::size_t nvars, Monomial m, value_type c) {
        Polynomial r(std::move(dom), nvars);
        if (!r.dom_.is_zero(c)) r.terms_.emplace_back(m, std::move(c));
        return r;
    }
    /// Builds from arbitrary (possibly repeated, unsorted) terms.
    static Polynomial from_terms(Domain dom, std::size_t nvars, std::vector<Term> terms) {
        Polynomial r(std::move(dom), nvars);
        r.terms_ = std::move(terms);
        r.canonicalize();
        return r;
    }

    [[nodiscard]] const Domain& domain() const noexcept { return dom_; }
    [[nodiscard]] std::size_t nvars() const noexcept { return nvars_; }
    [[nodiscard]] const std::vector<Term>& terms() const noexcept { return terms_; }
    [[nodiscard]] std::size_t size() const noexcept { return terms_.size(); }
    [[nodiscard]] bool is_zero() const noexcept { return terms_.empty(); }
    [[nodiscard]] bool is_constant() const noexcept {
        return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_one());
    }
    [[nodiscard]] bool is_one() const {
        return terms_.size() == 1 && terms_[0].first.is_one() && terms_[0].second == dom_.one();
    }
    [[nodiscard]] value_type constant_term() const {
        if (!terms_.empty() && terms_.back().first.is_one()) return terms_.back().second;
        return dom_.zero();
    }
    [[nodiscard]] const Term& leading() const { return terms_.front(); }
    [[nodiscard]] value_type leading_coefficient() const { return terms_.empty() ? dom_.zero() : terms_.front().second; }
    [[nodiscard]] std::uint32_t total_degree() const noexcept { return terms_.empty() ? 0 : terms_.front().first.degree(); }

    [[nodiscard]] std::uint32_t degree_in(std::size_t var) const noexcept {
        std::uint32_t d = 0;
        for (const auto& [m, c] : terms_) d = std::max<std::uint32_t>(d, m.exp[var]);
        return d;
    }

    Polynomial operator-() const {
        Polynomial r = *this;
        for (auto& t : r.terms_) t.second = dom_.neg(t.second);
        return r;
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) { return merge(a, b, false); }
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return merge(a, b, true); }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        Polynomial r(a.dom_, std::max(a.nvars_, b.nvars_));
        if (a.is_zero() || b.is_zero()) return r;
        if (b.terms_.size() == 1) return a.mul_term(b.terms_[0].first, b.terms_[0].second);
        if (a.terms_.size() == 1) return b.mul_term(a.terms_[0].first, a.terms_[0].second);
        r.terms_.reserve(a.terms_.size() * b.terms_.size());
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) r.terms_.emplace_back(ma * mb, a.dom_.mul(ca, cb));
        r.canonicalize();
        return r;
    }

    Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
    Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

    [[nodiscard]] Polynomial scale(const value_type& c) const {
        if (dom_.is_zero(c)) return Polynomial(dom_, nvars_);
        Polynomial r = *this;
        for (auto& t : r.terms_) t.second = dom_.mul(t.second, c);
        return r;
    }

    /// Multiplies by c·m; order is preserved because grlex is a monomial order.
    [[nodiscard]] Polynomial mul_term(const Monomial& m, const value_type& c) const {
        Polynomial r(dom_, nvars_);
        if (dom_.is_zero(c)) return r;
        r.terms_.reserve(terms_.size());
        for (const auto& [tm, tc] : terms_) {
            auto prod = dom_.mul(tc, c);
            if (!dom_.is_zero(prod)) r.terms_.emplace_back(tm * m, std::move(prod));
        }
        return r;
    }

    [[nodiscard]] Polynomial pow(std::uint64_t e) const {
        Polynomial result = constant(dom_, nvars_, dom_.one());
        Polynomial base = *this;
        while (e) {
            if (e & 1) result = result * base;
            e >>= 1;
            if (e) base = base * base;
        }
        return result;
    }

    /// Exact quotient, or nullopt when `d` does not divide `*this`.
    [[nodiscard]] std::optional<Polynomial> divide_exact(const Polynomial& d) const {
        if (d.is_zero()) throw division_by_zero();
        if (d.terms_.size() == 1) {
            const auto& [dm, dc] = d.terms_[0];
            const auto inv = dom_.inv(dc);
            Polynomial q(dom_, nvars_);
            q.terms_.reserve(terms_.size());
            for (const auto& [m, c] : terms_) {
                if (!dm.divides(m)) return std::nullopt;
                q.terms_.emplace_back(m / dm, dom_.mul(c, inv));
            }
            return q;
        }
        Polynomial rem = *this;
        std::vector<Term> quot;
        const auto& [lm, lc] = d.terms_.front();
        const auto lc_inv = dom_.inv(lc);
        while (!rem.is_zero()) {
            const auto& [rm, rc] = rem.terms_.front();
            if (!lm.divides(rm)) return std::nullopt;
            Monomial qm = rm / lm;
            value_type qc = dom_.mul(rc, lc_inv);
            quot.emplace_back(qm, qc);
            rem = rem - d.mul_term(qm, qc);
        }
        Polynomial q(dom_, nvars_);
        q.terms_ = std::move(quot);
        return q;
    }

    /// Scales so the grlex-leading coefficient is one (field domains only).
    [[nodiscard]] Polynomial monic() const {
        if (is_zero()) return *this;
        return scale(dom_.inv(leading_coefficient()));
    }

    /// Coefficient of var^k, as a polynomial free of var.
    [[nodiscard]] Polynomial coefficient_in(std::size_t var, std::uint32_t k) const {
        Polynomial r(dom_, nvars_);
        for (const auto& [m, c] : terms_)
            if (m.exp[var] == k) {
                Monomial mm = m;
                mm.exp[var] = 0;
                r.terms_.emplace_back(mm, c);
            }
        // Removing one variable's exponent can reorder terms of equal original degree.
        r.canonicalize();
        return r;
    }

    /// Maps every exponent e to e*k (the coefficient map is left to the caller).
    [[nodiscard]] Polynomial inflate(std::uint32_t k) const {
        Polynomial r = *this;
        for (auto& t : r.terms_)
            for (auto& e : t.first.exp) {
                const std::uint64_t v = std::uint64_t{e} * k;
                if (v > 0xFFFF) throw internal_error("monomial exponent overflow");
                e = static_cast<std::uint16_t>(v);
            }
        return r;
    }

    /// Re-embeds into a ring with `nvars` variables; `mapping[i]` is the new
    /// index of old variable i.
    [[nodiscard]] Polynomial remap(std::size_t nvars, std::span<const std::size_t> mapping) const {
        std::vector<Term> ts;
        ts.reserve(terms_.size());
        for (const auto& [m, c] : terms_) {
            Monomial mm;
            for (std::size_t i = 0; i < nvars_; ++i)
                if (m.exp[i]) mm.set(mapping[i], mm.exp[mapping[i]] + std::uint32_t{m.exp[i]});
            ts.emplace_back(mm, c);
        }
        return from_terms(dom_, nvars, std::move(ts));
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }

private:
    Domain dom_{};
    std::size_t nvars_ = 0;
    std::vector<Term> terms_;

    void canonicalize() {
        std::sort(terms_.begin(), terms_.end(),
                  [](const Term& x, const Term& y) { return grlex_greater(x.first, y.first); });
        std::vector<Term> out;
        out.reserve(terms_.size());
        for (auto& t : terms_) {
            if (!out.empty() && out.back().first == t.first)
                out.back().second = dom_.add(out.back().second, t.second);
            else {
                if (!out.empty() && dom_.is_zero(out.back().second)) out.pop_back();
                out.push_back(std::move(t));
            }
        }
        if (!out.empty() && dom_.is_zero(out.back().second)) out.pop_back();
        terms_ = std::move(out);
    }

    static Polynomial merge(const Polynomial& a, const Polynomial& b, bool subtract) {
        Polynomial r(a.nvars_ || a.terms_.size() ? a.dom_ : b.dom_, std::max(a.nvars_, b.nvars_));
        const auto& dom = r.dom_;
        r.terms_.reserve(a.terms_.size() + b.terms_.size());
        std::size_t i = 0, j = 0;
        while (i < a.terms_.size() || j < b.terms_.size()) {
            if (j == b.terms_.size() ||
                (i < a.terms_.size() && grlex_greater(a.terms_[i].first, b.terms_[j].first))) {
                r.terms_.push_back(a.terms_[i++]);
            } else if (i == a.terms_.size() || grlex_greater(b.terms_[j].first, a.terms_[i].first)) {
                r.terms_.emplace_back(b.terms_[j].first, subtract ? dom.neg(b.terms_[j].second) : b.terms_[j].second);
                ++j;
            } else {
                auto c = subtract ? dom.sub(a.terms_[i].second, b.terms_[j].second)
                                  : dom.add(a.terms_[i].second, b.terms_[j].second);
                if (!dom.is_zero(c)) r.terms_.emplace_back(a.terms_[i].first, std::move(c));
                ++i;
                ++j;
            }
        }
        return r;
    }
};

using PolyP = Polynomial<ModP>;
using PolyQ = Polynomial<Rationals>;

namespace detail {

/// gcd of a single term with a polynomial: the common monomial part.
inline PolyP monomial_gcd(const PolyP& single, const PolyP& other) {
    Monomial g = single.leading().first;
    for (const auto& [m, c] : other.terms())
        for (std::size_t i = 0; i < kMaxVars; ++i) g.exp[i] = std::min(g.exp[i], m.exp[i]);
    return PolyP::monomial(single.domain(), std::max(single.nvars(), other.nvars()), g, single.domain().one());
}

inline PolyP gcd_impl(const PolyP& a, const PolyP& b);

inline PolyP content_in(const PolyP& a, std::size_t var) {
    const auto deg = a.degree_in(var);
    PolyP g(a.domain(), a.nvars());
    for (std::uint32_t k = 0; k <= deg; ++k) {
        PolyP c = a.coefficient_in(var, k);
        if (c.is_zero()) continue;
        g = g.is_zero() ? c.monic() : gcd_impl(g, c);
        if (g.is_one()) break;
    }
    return g;
}

inline PolyP exact(const PolyP& a, const PolyP& d) {
    auto q = a.divide_exact(d);
    if (!q) throw internal_error("expected exact polynomial division");
    return *std::move(q);
}

/// Pseudo-remainder of a by b with respect to var.
inline PolyP pseudo_remainder(PolyP a, const PolyP& b, std::size_t var) {
    const auto db = b.degree_in(var);
    const PolyP lb = b.coefficient_in(var, db);
    while (!a.is_zero()) {
        const auto da = a.degree_in(var);
        if (da < db) break;
        const PolyP la = a.coefficient_in(var, da);
        a = lb * a - (la * b).mul_term(Monomial::variable(var, da - db), a.domain().one());
    }
    return a;
}

inline PolyP gcd_impl(const PolyP& a, const PolyP& b) {
    if (a.is_zero()) return b.monic();
    if (b.is_zero()) return a.monic();
    if (a.is_constant() || b.is_constant()) return PolyP::constant(a.domain(), a.nvars(), a.domain().one());
    if (a.size() == 1) return monomial_gcd(a, b);
    if (b.size() == 1) return monomial_gcd(b, a);
    if (a == b) return a.monic();

    std::size_t var = kMaxVars;
    for (std::size_t i = 0; i < a.nvars(); ++i)
        if (a.degree_in(i) || b.degree_in(i)) {
            var = i;
            break;
        }
    if (a.degree_in(var) == 0) return gcd_impl(a, content_in(b, var));
    if (b.degree_in(var) == 0) return gcd_impl(content_in(a, var), b);

    const PolyP ca = content_in(a, var), cb = content_in(b, var);
    PolyP x = exact(a, ca), y = exact(b, cb);
    const PolyP c = gcd_impl(ca, cb);
    if (x.degree_in(var) < y.degree_in(var)) std::swap(x, y);
    while (true) {
        PolyP r = pseudo_remainder(x, y, var);
        if (r.is_zero()) break;
        if (r.degree_in(var) == 0) return c;
        x = std::move(y);
        y = exact(r, content_in(r, var));
    }
    y = exact(y, content_in(y, var));
    return (c * y).monic();
}

}  // namespace detail

/// Monic gcd over F_p (recursive primitive remainder sequence).
inline PolyP gcd(const PolyP& a, const PolyP& b) { return detail::gcd_impl(a, b); }

/// Reduces an integer-coefficient polynomial modulo p; throws if any
/// coefficient is not integral.
inline PolyP reduce_mod_p(const PolyQ& q, std::uint32_t p) {
    ModP dom{p};
    std::vector<PolyP::Term> ts;
    for (const auto& [m, c] : q.terms()) {
        if (c.get_den() != 1) throw internal_error("non-integral coefficient " + c.get_str());
        ts.emplace_back(m, dom.from_mpz(c.get_num()));
    }
    return PolyP::from_terms(dom, q.nvars(), std::move(ts));
}

/// Substitutes polynomials for the variables of `f`.
template <class Domain>
Polynomial<Domain> compose(const Polynomial<Domain>& f, std::span<const Polynomial<Domain>> args) {
    const std::size_t nv = args.empty() ? 0 : args[0].nvars();
    Polynomial<Domain> result(f.domain(), nv);
    std::vector<std::vector<Polynomial<Domain>>> powers(f.nvars());
    for (const auto& [m, c] : f.terms()) {
        auto term = Polynomial<Domain>::constant(f.domain(), nv, c);
        for (std::size_t i = 0; i < f.nvars(); ++i) {
            const auto e = m.exp[i];
            if (!e) continue;
            auto& pw = powers[i];
            if (pw.empty()) pw.push_back(args[i]);
            while (pw.size() < e) pw.push_back(pw.back() * args[i]);
            term = term * pw[e - 1];
        }
        result += term;
    }
    return result;
}

}  // namespace wittsym
