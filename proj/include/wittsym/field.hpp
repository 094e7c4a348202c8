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
 * @file field.hpp
 * @brief The rational function field F_p(t_1, ..., t_n).
 *
 * Elements are stored as reduced fractions whose denominator is monic under
 * graded-lex order. With that normal form, equality of values is equality of
 * representations.
 */
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "polynomial.hpp"
#include "prime.hpp"

namespace wittsym {

/// Characteristic plus the ordered list of indeterminate names.
class FieldContext {
public:
    FieldContext(Prime p, std::vector<std::string> names) : p_(p), names_(std::move(names)) {
        if (names_.size() > kMaxVars) throw domain_error("at most " + std::to_string(kMaxVars) + " indeterminates");
        for (std::size_t i = 0; i < names_.size(); ++i)
            for (std::size_t j = 0; j < i; ++j)
                if (names_[i] == names_[j]) throw domain_error("duplicate indeterminate " + names_[i]);
    }

    static std::shared_ptr<const FieldContext> make(std::uint32_t p, std::vector<std::string> names) {
        return std::make_shared<const FieldContext>(Prime(p), std::move(names));
    }

    [[nodiscard]] Prime prime() const noexcept { return p_; }
    [[nodiscard]] ModP domain() const noexcept { return ModP{p_.value()}; }
    [[nodiscard]] const std::vector<std::string>& names() const noexcept { return names_; }
    [[nodiscard]] std::size_t nvars() const noexcept { return names_.size(); }

    [[nodiscard]] std::optional<std::size_t> index_of(const std::string& name) const {
        for (std::size_t i = 0; i < names_.size(); ++i)
            if (names_[i] == name) return i;
        return std::nullopt;
    }

    friend bool operator==(const FieldContext& a, const FieldContext& b) {
        return a.p_ == b.p_ && a.names_ == b.names_;
    }

private:
    Prime p_;
    std::vector<std::string> names_;
};

using ContextPtr = std::shared_ptr<const FieldContext>;

inline bool same_context(const ContextPtr& a, const ContextPtr& b) { return a == b || (a && b && *a == *b); }

inline std::string to_string(const PolyP& poly, const FieldContext& ctx);

class FieldElem {
public:
    FieldElem() = default;

    /// Zero of the given field.
    explicit FieldElem(ContextPtr ctx)
        : ctx_(std::move(ctx)), num_(ctx_->domain(), ctx_->nvars()),
          den_(PolyP::constant(ctx_->domain(), ctx_->nvars(), 1)) {}

    /// num/den, normalized. Throws division_by_zero for a zero denominator.
    FieldElem(ContextPtr ctx, PolyP num, PolyP den) : ctx_(std::move(ctx)), num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw division_by_zero();
        normalize();
    }

    static FieldElem constant(ContextPtr ctx, std::int64_t c) {
        const auto dom = ctx->domain();
        const auto n = ctx->nvars();
        return FieldElem(std::move(ctx), PolyP::constant(dom, n, dom.from_int(c)), PolyP::constant(dom, n, 1), Normalized{});
    }
    static FieldElem variable(ContextPtr ctx, std::size_t index) {
        const auto dom = ctx->domain();
        const auto n = ctx->nvars();
        return FieldElem(std::move(ctx), PolyP::variable(dom, n, index), PolyP::constant(dom, n, 1), Normalized{});
    }
    static FieldElem variable(const ContextPtr& ctx, const std::string& name) {
        auto idx = ctx->index_of(name);
        if (!idx) throw domain_error("unknown indeterminate " + name);
        return variable(ctx, *idx);
    }
    static FieldElem from_polynomial(ContextPtr ctx, PolyP num) {
        const auto dom = ctx->domain();
        const auto n = ctx->nvars();
        return FieldElem(std::move(ctx), std::move(num), PolyP::constant(dom, n, 1), Normalized{});
    }

    [[nodiscard]] const ContextPtr& context() const noexcept { return ctx_; }
    [[nodiscard]] Prime prime() const { return ctx_->prime(); }
    [[nodiscard]] const PolyP& numerator() const noexcept { return num_; }
    [[nodiscard]] const PolyP& denominator() const noexcept { return den_; }
    [[nodiscard]] bool is_zero() const noexcept { return num_.is_zero(); }
    [[nodiscard]] bool is_one() const { return num_.is_one() && den_.is_one(); }
    [[nodiscard]] bool is_polynomial() const { return den_.is_one(); }
    [[nodiscard]] bool is_constant() const { return num_.is_constant() && den_.is_one(); }

    FieldElem operator-() const { return FieldElem(ctx_, -num_, den_, Normalized{}); }

    friend FieldElem operator+(const FieldElem& a, const FieldElem& b) { return combine(a, b, false); }
    friend FieldElem operator-(const FieldElem& a, const FieldElem& b) { return combine(a, b, true); }

    friend FieldElem operator*(const FieldElem& a, const FieldElem& b) {
        check(a, b);
        if (a.is_zero() || b.is_zero()) return FieldElem(a.ctx_);
        if (a.den_.is_one() && b.den_.is_one()) return FieldElem(a.ctx_, a.num_ * b.num_, a.den_, Normalized{});
        // Cross-cancel; the factors stay coprime so no further gcd is needed.
        PolyP an = a.num_, ad = a.den_, bn = b.num_, bd = b.den_;
        if (!bd.is_one()) {
            const PolyP g = gcd(an, bd);
            if (!g.is_one()) {
                an = detail::exact(an, g);
                bd = detail::exact(bd, g);
            }
        }
        if (!ad.is_one()) {
            const PolyP g = gcd(bn, ad);
            if (!g.is_one()) {
                bn = detail::exact(bn, g);
                ad = detail::exact(ad, g);
            }
        }
        return FieldElem(a.ctx_, an * bn, ad * bd, MonicFix{});
    }

    friend FieldElem operator/(const FieldElem& a, const FieldElem& b) { return a * b.inverse(); }

    FieldElem& operator+=(const FieldElem& o) { return *this = *this + o; }
    FieldElem& operator-=(const FieldElem& o) { return *this = *this - o; }
    FieldElem& operator*=(const FieldElem& o) { return *this = *this * o; }

    [[nodiscard]] FieldElem inverse() const {
        if (is_zero()) throw division_by_zero();
        return FieldElem(ctx_, den_, num_, MonicFix{});
    }

    /// Integer power; negative exponents invert.
    [[nodiscard]] FieldElem pow(std::int64_t e) const {
        if (e < 0) return inverse().pow(-e);
        if (e == 0) return constant(ctx_, 1);
        return FieldElem(ctx_, num_.pow(static_cast<std::uint64_t>(e)), den_.pow(static_cast<std::uint64_t>(e)), MonicFix{});
    }

    /// a^(p^k). Coefficients in F_p are fixed by Frobenius, so only exponents move.
    [[nodiscard]] FieldElem frobenius(unsigned k = 1) const {
        const auto q = static_cast<std::uint32_t>(ctx_->prime().power(k));
        return FieldElem(ctx_, num_.inflate(q), den_.inflate(q), Normalized{});
    }

    /// True when the element is a (p^k)-th power in F_p(t_1..t_n).
    [[nodiscard]] bool is_pth_power(unsigned k) const {
        const auto q = ctx_->prime().power(k);
        auto ok = [q](const PolyP& poly) {
            for (const auto& [m, c] : poly.terms())
                for (auto e : m.exp)
                    if (e % q) return false;
            return true;
        };
        return ok(num_) && ok(den_);
    }

    /// The (p^k)-th root; requires is_pth_power(k).
    [[nodiscard]] FieldElem pth_root(unsigned k) const {
        if (!is_pth_power(k)) throw domain_error("not a p-power");
        const auto q = static_cast<std::uint16_t>(ctx_->prime().power(k));
        auto root = [q](const PolyP& poly) {
            std::vector<PolyP::Term> ts;
            for (auto [m, c] : poly.terms()) {
                for (auto& e : m.exp) e = static_cast<std::uint16_t>(e / q);
                ts.emplace_back(m, c);
            }
            return PolyP::from_terms(poly.domain(), poly.nvars(), std::move(ts));
        };
        return FieldElem(ctx_, root(num_), root(den_), Normalized{});
    }

    /// Evaluates at a point of F_p^n. Throws pole_error when the denominator vanishes.
    [[nodiscard]] std::uint32_t specialize(std::span<const std::uint32_t> point) const {
        if (point.size() != ctx_->nvars()) throw domain_error("assignment must cover every indeterminate");
        const auto dom = ctx_->domain();
        auto eval = [&](const PolyP& poly) {
            std::uint32_t acc = 0;
            for (const auto& [m, c] : poly.terms()) {
                std::uint32_t v = c;
                for (std::size_t i = 0; i < point.size(); ++i) v = dom.mul(v, dom.pow(point[i] % dom.p, m.exp[i]));
                acc = dom.add(acc, v);
            }
            return acc;
        };
        const auto d = eval(den_);
        if (d == 0) throw pole_error();
        return dom.mul(eval(num_), dom.inv(d));
    }

    [[nodiscard]] std::string to_string() const;

    friend bool operator==(const FieldElem& a, const FieldElem& b) {
        return same_context(a.ctx_, b.ctx_) && a.num_ == b.num_ && a.den_ == b.den_;
    }

private:
    struct Normalized {};
    struct MonicFix {};

    ContextPtr ctx_;
    PolyP num_;
    PolyP den_;

    FieldElem(ContextPtr ctx, PolyP num, PolyP den, Normalized)
        : ctx_(std::move(ctx)), num_(std::move(num)), den_(std::move(den)) {
        if (num_.is_zero()) den_ = PolyP::constant(ctx_->domain(), ctx_->nvars(), 1);
    }
    /// Coprime inputs; only the denominator's leading coefficient needs fixing.
    FieldElem(ContextPtr ctx, PolyP num, PolyP den, MonicFix)
        : ctx_(std::move(ctx)), num_(std::move(num)), den_(std::move(den)) {
        fix_leading();
    }

    static void check(const FieldElem& a, const FieldElem& b) {
        if (!same_context(a.ctx_, b.ctx_)) throw mismatch("field elements from different fields");
    }

    void fix_leading() {
        if (num_.is_zero()) {
            den_ = PolyP::constant(ctx_->domain(), ctx_->nvars(), 1);
            return;
        }
        const auto lc = den_.leading_coefficient();
        if (lc != 1) {
            const auto inv = ctx_->domain().inv(lc);
            num_ = num_.scale(inv);
            den_ = den_.scale(inv);
        }
    }

    void normalize() {
        if (!den_.is_constant()) {
            const PolyP g = gcd(num_, den_);
            if (!g.is_one()) {
                num_ = detail::exact(num_, g);
                den_ = detail::exact(den_, g);
            }
        }
        fix_leading();
    }

    static FieldElem combine(const FieldElem& a, const FieldElem& b, bool subtract) {
        check(a, b);
        const PolyP& bn = b.num_;
        if (a.den_ == b.den_) {
            PolyP n = subtract ? a.num_ - bn : a.num_ + bn;
            if (a.den_.is_one()) return FieldElem(a.ctx_, std::move(n), a.den_, Normalized{});
            return FieldElem(a.ctx_, std::move(n), a.den_);
        }
        // With one denominator equal to 1 the result is already reduced.
        if (a.den_.is_one()) {
            PolyP n = a.num_ * b.den_;
            n = subtract ? n - bn : n + bn;
            return FieldElem(a.ctx_, std::move(n), b.den_, Normalized{});
        }
        if (b.den_.is_one()) {
            PolyP n = bn * a.den_;
            n = subtract ? a.num_ - n : a.num_ + n;
            return FieldElem(a.ctx_, std::move(n), a.den_, Normalized{});
        }
        const PolyP g = gcd(a.den_, b.den_);
        const PolyP ad = detail::exact(a.den_, g), bd = detail::exact(b.den_, g);
        PolyP n = subtract ? a.num_ * bd - bn * ad : a.num_ * bd + bn * ad;
        return FieldElem(a.ctx_, std::move(n), ad * b.den_);
    }
};

inline std::string to_string(const PolyP& poly, const FieldContext& ctx) {
    if (poly.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : poly.terms()) {
        if (!first) os << '+';
        first = false;
        bool wrote = false;
        if (c != 1 || m.is_one()) {
            os << c;
            wrote = true;
        }
        for (std::size_t i = 0; i < ctx.nvars(); ++i) {
            if (!m.exp[i]) continue;
            if (wrote) os << '*';
            os << ctx.names()[i];
            if (m.exp[i] > 1) os << '^' << m.exp[i];
            wrote = true;
        }
    }
    return os.str();
}

inline std::string FieldElem::to_string() const {
    std::string n = wittsym::to_string(num_, *ctx_);
    if (den_.is_one()) return n;
    std::string d = wittsym::to_string(den_, *ctx_);
    if (num_.size() > 1) n = "(" + n + ")";
    if (den_.size() > 1 || d.find('*') != std::string::npos) d = "(" + d + ")";
    return n + "/" + d;
}

inline std::ostream& operator<<(std::ostream& os, const FieldElem& a) { return os << a.to_string(); }

}  // namespace wittsym
