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
#include <gtest/gtest.h>

#include <random>

#include <wittsym/polynomial.hpp>

#include "test_support.hpp"

using namespace wittsym;

namespace {

PolyP var(std::uint32_t p, std::size_t n, std::size_t i) { return PolyP::variable(ModP{p}, n, i); }
PolyP cst(std::uint32_t p, std::size_t n, std::int64_t c) { return PolyP::constant(ModP{p}, n, ModP{p}.from_int(c)); }

}  // namespace

TEST(Polynomial, ArithmeticCancelsToZero) {
    const auto t = var(3, 2, 0), s = var(3, 2, 1);
    const auto f = (t + s) * (t - s);
    EXPECT_EQ(f, t * t - s * s);
    EXPECT_TRUE((f - f).is_zero());
    EXPECT_EQ((t + cst(3, 2, 1)).pow(3), t.pow(3) + cst(3, 2, 1));
}

TEST(Polynomial, ExactDivision) {
    const auto t = var(2, 2, 0), s = var(2, 2, 1);
    const auto a = t * t + t * s + s;
    const auto b = t + s * s;
    auto q = (a * b).divide_exact(b);
    ASSERT_TRUE(q);
    EXPECT_EQ(*q, a);
    EXPECT_FALSE(a.divide_exact(b));
    EXPECT_THROW((void)a.divide_exact(PolyP(ModP{2}, 2)), division_by_zero);
}

TEST(Polynomial, GcdRecoversPlantedFactor) {
    auto ctx = FieldContext::make(3, {"t", "s", "u"});
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 60; ++trial) {
        const auto a = testkit::random_poly(ctx, rng, 3);
        const auto b = testkit::random_poly(ctx, rng, 3);
        const auto c = testkit::random_poly(ctx, rng, 2);
        if (a.is_zero() || b.is_zero() || c.is_zero()) continue;
        const auto g = gcd(a * c, b * c);
        // c divides the gcd, and the gcd divides both inputs.
        EXPECT_TRUE(g.divide_exact(c.monic()).has_value());
        EXPECT_TRUE((a * c).divide_exact(g).has_value());
        EXPECT_TRUE((b * c).divide_exact(g).has_value());
        EXPECT_EQ(g.leading_coefficient(), 1u);
        // After removing g the cofactors are coprime.
        const auto ra = *(a * c).divide_exact(g), rb = *(b * c).divide_exact(g);
        EXPECT_TRUE(gcd(ra, rb).is_one());
    }
}

TEST(Polynomial, ReduceModPRejectsFractions) {
    auto q = PolyQ::constant(Rationals{}, 1, mpq_class(1, 2));
    EXPECT_THROW((void)reduce_mod_p(q, 2), internal_error);
    auto z = PolyQ::constant(Rationals{}, 1, mpq_class(-4));
    EXPECT_EQ(reduce_mod_p(z, 3), cst(3, 1, 2));
}
