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
 * @file universal.hpp
 * @brief Universal Witt polynomials, solved from the ghost recursion over Q.
 *
 * For length m the sum, product and negation polynomials S_n, M_n, N_n are
 * the unique integer polynomials with
 *
 *     w_n(S(a,b)) = w_n(a) + w_n(b),   w_n(M(a,b)) = w_n(a) w_n(b),
 *     w_n(N(a))   = -w_n(a),
 *
 * where w_n(x) = sum_{i<=n} p^(i-1) x_i^(p^(n-i)). They are obtained one
 * coordinate at a time by dividing the ghost defect by p^(n-1); integrality of
 * every coefficient is checked before the mod-p reduction is formed.
 *
 * Variable layout: a_1..a_m are variables 0..m-1 and b_1..b_m are m..2m-1.
 */
#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <utility>
#include <vector>

#include "polynomial.hpp"
#include "prime.hpp"

namespace wittsym {

struct UniversalWittPolys {
    std::uint32_t p = 2;
    unsigned m = 1;
    std::vector<PolyQ> sum, product, negation;              // over Q, integral
    std::vector<PolyP> sum_p, product_p, negation_p;        // reduced mod p
};

/// w_n of the coordinate list `x` (1-based n, n <= x.size()).
inline PolyQ ghost_component(std::uint32_t p, unsigned n, std::span<const PolyQ> x) {
    PolyQ w(Rationals{}, x[0].nvars());
    mpz_class weight = 1;
    for (unsigned i = 1; i <= n; ++i) {
        std::uint64_t e = 1;
        for (unsigned k = i; k < n; ++k) e *= p;
        w += x[i - 1].pow(e).scale(mpq_class(weight));
        weight *= p;
    }
    return w;
}

namespace detail {

inline std::vector<PolyQ> witt_variables(std::size_t nvars, std::size_t offset, unsigned m) {
    std::vector<PolyQ> v;
    for (unsigned i = 0; i < m; ++i) v.push_back(PolyQ::variable(Rationals{}, nvars, offset + i));
    return v;
}

/// Solves w_n(out) = target(n) for n = 1..m, one coordinate at a time.
template <class Target>
std::vector<PolyQ> solve_ghost(std::uint32_t p, unsigned m, std::size_t nvars, Target target) {
    std::vector<PolyQ> out;
    mpz_class pn = 1;
    for (unsigned n = 1; n <= m; ++n) {
        PolyQ defect = target(n);
        mpz_class weight = 1;
        for (unsigned i = 1; i < n; ++i) {
            std::uint64_t e = 1;
            for (unsigned k = i; k < n; ++k) e *= p;
            defect -= out[i - 1].pow(e).scale(mpq_class(weight));
            weight *= p;
        }
        PolyQ coord = defect.scale(mpq_class(1, 1) / mpq_class(pn));
        for (const auto& [mono, c] : coord.terms())
            if (c.get_den() != 1)
                throw internal_error("non-integral universal Witt coefficient " + c.get_str());
        out.push_back(PolyQ::from_terms(Rationals{}, nvars, coord.terms()));
        pn *= p;
    }
    return out;
}

inline std::shared_ptr<const UniversalWittPolys> build_universal(std::uint32_t p, unsigned m) {
    auto u = std::make_shared<UniversalWittPolys>();
    u->p = p;
    u->m = m;
    const std::size_t nv = 2 * m;
    const auto a = witt_variables(nv, 0, m), b = witt_variables(nv, m, m);
    auto ga = [&](unsigned n) { return ghost_component(p, n, a); };
    auto gb = [&](unsigned n) { return ghost_component(p, n, b); };
    u->sum = solve_ghost(p, m, nv, [&](unsigned n) { return ga(n) + gb(n); });
    u->product = solve_ghost(p, m, nv, [&](unsigned n) { return ga(n) * gb(n); });
    u->negation = solve_ghost(p, m, nv, [&](unsigned n) { return -ga(n); });
    for (unsigned n = 0; n < m; ++n) {
        u->sum_p.push_back(reduce_mod_p(u->sum[n], p));
        u->product_p.push_back(reduce_mod_p(u->product[n], p));
        u->negation_p.push_back(reduce_mod_p(u->negation[n], p));
    }
    return u;
}

}  // namespace detail

/// Universal polynomials for (p, m), computed once per key and shared.
inline std::shared_ptr<const UniversalWittPolys> universal_polys(Prime p, unsigned m) {
    if (m == 0) throw domain_error("Witt length must be at least 1");
    static std::mutex mutex;
    static std::map<std::pair<std::uint32_t, unsigned>, std::shared_ptr<const UniversalWittPolys>> cache;
    const auto key = std::make_pair(p.value(), m);
    {
        std::lock_guard lock(mutex);
        if (auto it = cache.find(key); it != cache.end()) return it->second;
    }
    auto built = detail::build_universal(p.value(), m);
    std::lock_guard lock(mutex);
    return cache.try_emplace(key, std::move(built)).first->second;
}

/// Integer Frobenius polynomials F_1..F_m in variables x_1..x_{m+1},
/// characterized by w_n(F(x)) = w_{n+1}(x).
inline std::vector<PolyQ> frobenius_polys(Prime p, unsigned m) {
    const std::size_t nv = m + 1;
    const auto x = detail::witt_variables(nv, 0, m + 1);
    return detail::solve_ghost(p.value(), m, nv,
                               [&](unsigned n) { return ghost_component(p.value(), n + 1, x); });
}

}  // namespace wittsym
