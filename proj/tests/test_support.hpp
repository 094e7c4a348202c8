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
#pragma once

#include <random>
#include <string>
#include <vector>

#include <wittsym/field.hpp>
#include <wittsym/witt.hpp>

namespace wittsym::testkit {

/// Random polynomial with total degree <= max_deg and a few terms.
inline PolyP random_poly(const ContextPtr& ctx, std::mt19937_64& rng, unsigned max_deg, unsigned max_terms = 3) {
    const auto dom = ctx->domain();
    std::uniform_int_distribution<unsigned> nterms(1, max_terms), coef(0, dom.p - 1), deg(0, max_deg),
        var(0, static_cast<unsigned>(ctx->nvars() - 1));
    std::vector<PolyP::Term> ts;
    const unsigned k = nterms(rng);
    for (unsigned i = 0; i < k; ++i) {
        Monomial m;
        const unsigned d = deg(rng);
        for (unsigned j = 0; j < d; ++j) {
            const auto v = var(rng);
            m.set(v, m.exp[v] + 1u);
        }
        ts.emplace_back(m, coef(rng));
    }
    return PolyP::from_terms(dom, ctx->nvars(), std::move(ts));
}

/// Random element; with probability `frac` it gets a nonconstant denominator.
inline FieldElem random_elem(const ContextPtr& ctx, std::mt19937_64& rng, unsigned max_deg = 2, double frac = 0.3) {
    PolyP num = random_poly(ctx, rng, max_deg);
    std::bernoulli_distribution use_den(frac);
    if (use_den(rng)) {
        PolyP den = random_poly(ctx, rng, max_deg, 2);
        if (!den.is_zero()) return FieldElem(ctx, std::move(num), std::move(den));
    }
    return FieldElem::from_polynomial(ctx, std::move(num));
}

inline FieldElem random_nonzero(const ContextPtr& ctx, std::mt19937_64& rng, unsigned max_deg = 2, double frac = 0.3) {
    while (true) {
        FieldElem e = random_elem(ctx, rng, max_deg, frac);
        if (!e.is_zero()) return e;
    }
}

inline WittF random_witt(const ContextPtr& ctx, std::mt19937_64& rng, unsigned m, unsigned max_deg = 1,
                         double frac = 0.0) {
    std::vector<FieldElem> c;
    for (unsigned i = 0; i < m; ++i) c.push_back(random_elem(ctx, rng, max_deg, frac));
    return WittF(ctx->prime(), std::move(c));
}

}  // namespace wittsym::testkit
