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
 * @file witt.hpp
 * @brief Truncated Witt vectors W_m(R).
 *
 * Coordinates are 0-based in code; coordinate 0 is the one written first,
 * so V pads at the front: V(a_1, ..., a_m) = (0, a_1, ..., a_m).
 *
 * Arithmetic evaluates the universal polynomials. Over a ring of
 * characteristic p the mod-p reductions are used; over Q[...] (the ghost
 * oracle ring) the integer polynomials are composed directly.
 */
#pragma once

#include <cstdint>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "field.hpp"
#include "universal.hpp"

namespace wittsym {

/// Coefficient-ring adapter. Specialized for FieldElem and PolyQ here and for
/// algebra elements in realize.hpp.
template <class R>
struct WittRing;

/// Evaluates a mod-p polynomial at ring elements by plain power caching.
/// `one` fixes the ring; `scalar(c)` must return c * one.
template <class R, class Scalar>
R evaluate_polynomial(const PolyP& f, std::span<const R> args, const R& zero, Scalar scalar) {
    R result = zero;
    std::vector<std::vector<R>> powers(f.nvars());
    for (const auto& [m, c] : f.terms()) {
        R term = scalar(c);
        for (std::size_t i = 0; i < f.nvars(); ++i) {
            const auto e = m.exp[i];
            if (!e) continue;
            auto& pw = powers[i];
            if (pw.empty()) pw.push_back(args[i]);
            while (pw.size() < e) pw.push_back(pw.back() * args[i]);
            term = term * pw[e - 1];
        }
        result = result + term;
    }
    return result;
}

template <>
struct WittRing<FieldElem> {
    static FieldElem zero(const FieldElem& like) { return FieldElem(like.context()); }
    static FieldElem from_int(const FieldElem& like, std::int64_t c) { return FieldElem::constant(like.context(), c); }
    static std::uint32_t characteristic(const FieldElem& like) { return like.prime().value(); }
    static bool compatible(const FieldElem& a, const FieldElem& b) { return same_context(a.context(), b.context()); }
    static std::string to_string(const FieldElem& a) { return a.to_string(); }
    static FieldElem pth_power(const FieldElem& a) { return a.frobenius(1); }

    /// Clears all denominators up front so the sum is formed over polynomials
    /// and normalized once.
    static FieldElem eval(const PolyP& f, std::span<const FieldElem> args) {
        const auto& ctx = args[0].context();
        const auto dom = ctx->domain();
        const auto nv = ctx->nvars();
        const std::size_t k = f.nvars();
        std::vector<std::uint32_t> maxdeg(k, 0);
        for (std::size_t i = 0; i < k; ++i) maxdeg[i] = f.degree_in(i);
        bool plain = true;
        for (std::size_t i = 0; i < k; ++i)
            if (maxdeg[i] && !args[i].is_polynomial()) plain = false;

        std::vector<std::vector<PolyP>> npow(k), dpow(k);
        auto power = [&](std::vector<PolyP>& cache, const PolyP& base, std::uint32_t e) -> const PolyP& {
            if (cache.empty()) cache.push_back(PolyP::constant(dom, nv, 1));
            while (cache.size() <= e) cache.push_back(cache.back() * base);
            return cache[e];
        };
        PolyP sum(dom, nv);
        for (const auto& [m, c] : f.terms()) {
            PolyP term = PolyP::constant(dom, nv, c);
            for (std::size_t i = 0; i < k; ++i) {
                if (!maxdeg[i]) continue;
                const auto e = m.exp[i];
                if (e) term = term * power(npow[i], args[i].numerator(), e);
                if (!plain && maxdeg[i] > e) term = term * power(dpow[i], args[i].denominator(), maxdeg[i] - e);
            }
            sum += term;
        }
        if (plain) return FieldElem::from_polynomial(ctx, std::move(sum));
        PolyP den = PolyP::constant(dom, nv, 1);
        for (std::size_t i = 0; i < k; ++i)
            if (maxdeg[i]) den = den * power(dpow[i], args[i].denominator(), maxdeg[i]);
        return FieldElem(ctx, std::move(sum), std::move(den));
    }
};

template <>
struct WittRing<PolyQ> {
    static PolyQ zero(const PolyQ& like) { return PolyQ(Rationals{}, like.nvars()); }
    static PolyQ from_int(const PolyQ& like, std::int64_t c) {
        return PolyQ::constant(Rationals{}, like.nvars(), Rationals{}.from_int(c));
    }
    static std::uint32_t characteristic(const PolyQ&) { return 0; }
    static bool compatible(const PolyQ& a, const PolyQ& b) { return a.nvars() == b.nvars(); }
    static std::string to_string(const PolyQ& a) {
        std::ostringstream os;
        bool first = true;
        for (const auto& [m, c] : a.terms()) {
            if (!first) os << " + ";
            first = false;
            os << c.get_str();
            for (std::size_t i = 0; i < a.nvars(); ++i)
                if (m.exp[i]) os << "*x" << i << '^' << m.exp[i];
        }
        return first ? "0" : os.str();
    }
    static PolyQ eval(const PolyQ& f, std::span<const PolyQ> args) { return compose(f, args); }
};

template <class R>
class WittVector {
public:
    WittVector() = default;
    WittVector(Prime p, std::vector<R> coords) : p_(p), coords_(std::move(coords)) {
        if (coords_.empty()) throw domain_error("Witt vectors have length at least 1");
        for (const auto& c : coords_)
            if (!WittRing<R>::compatible(c, coords_[0])) throw mismatch("Witt coordinates from different rings");
    }

    [[nodiscard]] Prime prime() const noexcept { return p_; }
    [[nodiscard]] unsigned length() const noexcept { return static_cast<unsigned>(coords_.size()); }
    [[nodiscard]] const std::vector<R>& coords() const noexcept { return coords_; }
    [[nodiscard]] const R& operator[](std::size_t i) const { return coords_.at(i); }

    [[nodiscard]] bool is_zero() const {
        const R z = WittRing<R>::zero(coords_[0]);
        for (const auto& c : coords_)
            if (!(c == z)) return false;
        return true;
    }

    [[nodiscard]] std::string to_string() const {
        std::string s = "(";
        for (std::size_t i = 0; i < coords_.size(); ++i) {
            if (i) s += ", ";
            s += WittRing<R>::to_string(coords_[i]);
        }
        return s + ")";
    }

    friend bool operator==(const WittVector& a, const WittVector& b) {
        return a.p_ == b.p_ && a.coords_ == b.coords_;
    }

private:
    Prime p_{2};
    std::vector<R> coords_;
};

using WittF = WittVector<FieldElem>;
using WittQ = WittVector<PolyQ>;

template <class R>
std::ostream& operator<<(std::ostream& os, const WittVector<R>& w) {
    return os << w.to_string();
}

namespace detail {

template <class R>
void check_pair(const WittVector<R>& a, const WittVector<R>& b) {
    if (!(a.prime() == b.prime())) throw mismatch("Witt vectors over different primes");
    if (a.length() != b.length()) throw mismatch("Witt vectors of different lengths");
    if (!WittRing<R>::compatible(a[0], b[0])) throw mismatch("Witt vectors over different rings");
}

template <class R>
R eval_universal(const UniversalWittPolys& u, bool mod_p, std::size_t n, int which, std::span<const R> args) {
    if constexpr (requires { WittRing<R>::eval(std::declval<const PolyQ&>(), args); }) {
        if (!mod_p) {
            const PolyQ& f = which == 0 ? u.sum[n] : which == 1 ? u.product[n] : u.negation[n];
            return WittRing<R>::eval(f, args);
        }
    }
    if constexpr (requires { WittRing<R>::eval(std::declval<const PolyP&>(), args); }) {
        const PolyP& f = which == 0 ? u.sum_p[n] : which == 1 ? u.product_p[n] : u.negation_p[n];
        return WittRing<R>::eval(f, args);
    } else {
        throw internal_error("ring cannot evaluate mod-p polynomials");
    }
}

template <class R>
WittVector<R> binary(const WittVector<R>& a, const WittVector<R>& b, int which) {
    check_pair(a, b);
    const unsigned m = a.length();
    const auto u = universal_polys(a.prime(), m);
    const bool mod_p = WittRing<R>::characteristic(a[0]) != 0;
    std::vector<R> args(a.coords());
    args.insert(args.end(), b.coords().begin(), b.coords().end());
    std::vector<R> out;
    out.reserve(m);
    for (unsigned n = 0; n < m; ++n) out.push_back(eval_universal<R>(*u, mod_p, n, which, args));
    return WittVector<R>(a.prime(), std::move(out));
}

}  // namespace detail

template <class R>
WittVector<R> operator+(const WittVector<R>& a, const WittVector<R>& b) {
    return detail::binary(a, b, 0);
}

template <class R>
WittVector<R> operator*(const WittVector<R>& a, const WittVector<R>& b) {
    return detail::binary(a, b, 1);
}

template <class R>
WittVector<R> operator-(const WittVector<R>& a) {
    const unsigned m = a.length();
    const auto u = universal_polys(a.prime(), m);
    const bool mod_p = WittRing<R>::characteristic(a[0]) != 0;
    std::vector<R> args(a.coords());
    // Negation polynomials live in 2m variables; the b-half is unused.
    args.insert(args.end(), a.coords().begin(), a.coords().end());
    std::vector<R> out;
    for (unsigned n = 0; n < m; ++n) out.push_back(detail::eval_universal<R>(*u, mod_p, n, 2, args));
    return WittVector<R>(a.prime(), std::move(out));
}

template <class R>
WittVector<R> operator-(const WittVector<R>& a, const WittVector<R>& b) {
    return a + (-b);
}

/// Zero vector of length m over the ring of `like`.
template <class R>
WittVector<R> witt_zero(Prime p, unsigned m, const R& like) {
    return WittVector<R>(p, std::vector<R>(m, WittRing<R>::zero(like)));
}

/// Teichmuller lift [a] = (a, 0, ..., 0).
template <class R>
WittVector<R> teichmuller(Prime p, const R& a, unsigned m) {
    std::vector<R> c(m, WittRing<R>::zero(a));
    c[0] = a;
    return WittVector<R>(p, std::move(c));
}

/// The ring unit (1, 0, ..., 0).
template <class R>
WittVector<R> witt_unit(Prime p, unsigned m, const R& like) {
    return teichmuller(p, WittRing<R>::from_int(like, 1), m);
}

/// V(a_1..a_m) = (0, a_1, ..., a_m), of length m+1.
template <class R>
WittVector<R> verschiebung(const WittVector<R>& a) {
    std::vector<R> c;
    c.reserve(a.length() + 1);
    c.push_back(WittRing<R>::zero(a[0]));
    c.insert(c.end(), a.coords().begin(), a.coords().end());
    return WittVector<R>(a.prime(), std::move(c));
}

/// V^j applied to a Teichmuller lift, truncated to length m: coordinate j is `a`.
template <class R>
WittVector<R> shifted_teichmuller(Prime p, const R& a, unsigned depth, unsigned m) {
    std::vector<R> c(m, WittRing<R>::zero(a));
    if (depth < m) c[depth] = a;
    return WittVector<R>(p, std::move(c));
}

/// The decomposition a = sum_j V^j[a_{j+1}] as data: (depth j, entry).
template <class R>
std::vector<std::pair<unsigned, R>> telescope(const WittVector<R>& a) {
    std::vector<std::pair<unsigned, R>> out;
    for (unsigned j = 0; j < a.length(); ++j) out.emplace_back(j, a[j]);
    return out;
}

/// First `len` coordinates.
template <class R>
WittVector<R> truncate(const WittVector<R>& a, unsigned len) {
    if (len == 0 || len > a.length()) throw domain_error("invalid truncation length");
    return WittVector<R>(a.prime(), std::vector<R>(a.coords().begin(), a.coords().begin() + len));
}

/// Appends zero coordinates up to length `len`: (a, 0, ..., 0).
template <class R>
WittVector<R> extend_zero(const WittVector<R>& a, unsigned len) {
    std::vector<R> c = a.coords();
    while (c.size() < len) c.push_back(WittRing<R>::zero(a[0]));
    return WittVector<R>(a.prime(), std::move(c));
}

/// Coordinatewise p-th power; this is the Witt Frobenius in characteristic p.
template <class R>
WittVector<R> witt_frobenius(const WittVector<R>& a) {
    if (WittRing<R>::characteristic(a[0]) == 0) throw domain_error("coordinatewise Frobenius needs characteristic p");
    std::vector<R> c;
    for (const auto& x : a.coords()) c.push_back(WittRing<R>::pth_power(x));
    return WittVector<R>(a.prime(), std::move(c));
}

/// The Artin-Schreier-Witt map F(a) - a.
template <class R>
WittVector<R> wp_map(const WittVector<R>& a) {
    return witt_frobenius(a) - a;
}

/// p * a = V F a = (0, a_1^p, ..., a_{m-1}^p).
template <class R>
WittVector<R> mul_by_p(const WittVector<R>& a) {
    if (WittRing<R>::characteristic(a[0]) == 0) throw domain_error("mul_by_p shortcut needs characteristic p");
    std::vector<R> c;
    c.push_back(WittRing<R>::zero(a[0]));
    for (unsigned i = 0; i + 1 < a.length(); ++i) c.push_back(WittRing<R>::pth_power(a[i]));
    return WittVector<R>(a.prime(), std::move(c));
}

/// n * a by double-and-add (n may be negative).
template <class R>
WittVector<R> integer_multiple(std::int64_t n, const WittVector<R>& a) {
    if (n < 0) return integer_multiple(-n, -a);
    WittVector<R> result = witt_zero(a.prime(), a.length(), a[0]);
    WittVector<R> base = a;
    auto k = static_cast<std::uint64_t>(n);
    while (k) {
        if (k & 1) result = result + base;
        k >>= 1;
        if (k) base = base + base;
    }
    return result;
}

/// Unit inverse, solved one coordinate at a time: the n-th product polynomial
/// is affine in b_n with slope a_1^(p^(n-1)).
template <class R>
WittVector<R> witt_inverse(const WittVector<R>& a) {
    const R zero = WittRing<R>::zero(a[0]);
    const R one = WittRing<R>::from_int(a[0], 1);
    if (a[0] == zero) throw non_unit("Witt vector with zero first coordinate is not a unit: " + a.to_string());
    const unsigned m = a.length();
    const auto u = universal_polys(a.prime(), m);
    const bool mod_p = WittRing<R>::characteristic(a[0]) != 0;
    std::vector<R> b(m, zero);
    if constexpr (requires(R x) { one / x; }) {
        b[0] = one / a[0];
    } else {
        throw domain_error("ring has no division");
    }
    std::vector<R> args(a.coords());
    args.insert(args.end(), b.begin(), b.end());
    for (unsigned n = 1; n < m; ++n) {
        args[m + n] = zero;
        const R at0 = detail::eval_universal<R>(*u, mod_p, n, 1, args);
        args[m + n] = one;
        const R at1 = detail::eval_universal<R>(*u, mod_p, n, 1, args);
        const R slope = at1 - at0;
        if constexpr (requires(R x) { x / x; }) b[n] = (zero - at0) / slope;
        args[m + n] = b[n];
    }
    return WittVector<R>(a.prime(), std::move(b));
}

/// Ghost components w_1..w_m (characteristic 0 only).
inline std::vector<PolyQ> ghost(const WittQ& a) {
    std::vector<PolyQ> out;
    for (unsigned n = 1; n <= a.length(); ++n) out.push_back(ghost_component(a.prime().value(), n, a.coords()));
    return out;
}

}  // namespace wittsym
