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

#include <wittsym/expression.hpp>
#include <wittsym/symbol.hpp>

using namespace wittsym;

namespace {

struct F2 {
    ContextPtr ctx = FieldContext::make(2, {"t", "s", "u"});
    FieldElem e(const char* text) const { return parse_elem(text, ctx); }
    WittF w(const char* text) const { return parse_witt(text, ctx); }
    CyclicSymbol sym(const char* omega, const char* beta) const { return CyclicSymbol(w(omega), e(beta)); }
};

}  // namespace

TEST(CyclicSymbol, Construction) {
    F2 f;
    const auto s = f.sym("(t, 0)", "s");
    EXPECT_EQ(s.level(), 2u);
    EXPECT_EQ(s.degree(), 4u);
    EXPECT_EQ(s.to_string(), "[(t, 0), s)_{4}");
    EXPECT_THROW(f.sym("(t)", "0"), domain_error);
    EXPECT_EQ(BrauerExpr{}.to_string(), "1");
    EXPECT_EQ((BrauerExpr{{s, f.sym("(u)", "t")}}).to_string(), "[(t, 0), s)_{4} * [(u), t)_{2}");
}

TEST(RuleNames, RoundTrip) {
    for (Rule r : {Rule::split, Rule::as_shift, Rule::norm_twist, Rule::pad, Rule::unpad, Rule::merge_omega,
                   Rule::merge_beta, Rule::prop_shift, Rule::neat, Rule::merge_step, Rule::mul_p})
        EXPECT_EQ(rule_from_name(rule_name(r)), r);
    EXPECT_FALSE(rule_from_name("bogus"));
}

TEST(Identities, Split) {
    F2 f;
    const BrauerExpr e{{f.sym("(s, 0)", "s")}};
    const auto step = apply_identity(Rule::split, e, {0}, {{"mode", std::string("remove")}});
    EXPECT_TRUE(step.after.empty());
    EXPECT_THROW(apply_identity(Rule::split, BrauerExpr{{f.sym("(s, 1)", "s")}}, {0}, {{"mode", std::string("remove")}}),
                 pattern_mismatch);
    const auto ins = apply_identity(Rule::split, BrauerExpr{}, {0},
                                    {{"mode", std::string("insert")}, {"beta", f.e("u")}, {"level", std::int64_t(2)}});
    ASSERT_EQ(ins.after.size(), 1u);
    EXPECT_EQ(ins.after.factors[0], f.sym("(u, 0)", "u"));
}

TEST(Identities, AsShift) {
    F2 f;
    const auto step = apply_identity(Rule::as_shift, BrauerExpr{{f.sym("(t)", "s")}}, {0}, {{"tau", f.w("(s)")}});
    // wp((s)) = s^2 - s = s^2 + s in characteristic 2.
    EXPECT_EQ(step.after.factors[0], f.sym("(t+s^2+s)", "s"));
    EXPECT_THROW(apply_identity(Rule::as_shift, BrauerExpr{{f.sym("(t)", "s")}}, {0}, {{"tau", f.w("(s, 0)")}}),
                 pattern_mismatch);
}

TEST(Identities, NormTwist) {
    F2 f;
    const auto step = apply_identity(Rule::norm_twist, BrauerExpr{{f.sym("(t, 0)", "s")}}, {0}, {{"gamma", f.e("u")}});
    EXPECT_EQ(step.after.factors[0], f.sym("(t, 0)", "s*u^4"));
    EXPECT_THROW(apply_identity(Rule::norm_twist, BrauerExpr{{f.sym("(t)", "s")}}, {0}, {{"gamma", f.e("0")}}),
                 pattern_mismatch);
}

TEST(Identities, PadAndUnpad) {
    F2 f;
    const BrauerExpr e{{f.sym("(t)", "s")}};
    const auto shift = apply_identity(Rule::pad, e, {0}, {{"form", std::string("shift")}});
    EXPECT_EQ(shift.after.factors[0], f.sym("(0, t)", "s"));
    const auto power = apply_identity(Rule::pad, e, {0}, {{"form", std::string("power")}});
    EXPECT_EQ(power.after.factors[0], f.sym("(t, 0)", "s^2"));
    const auto back = apply_identity(Rule::unpad, shift.after, {0}, {{"form", std::string("shift")}});
    EXPECT_EQ(back.after, e);
    EXPECT_THROW(apply_identity(Rule::unpad, power.after, {0}, {}), pattern_mismatch);
    EXPECT_THROW(apply_identity(Rule::unpad, e, {0}, {}), pattern_mismatch);
}

TEST(Identities, Merges) {
    F2 f;
    const BrauerExpr e{{f.sym("(t)", "s"), f.sym("(u)", "s")}};
    EXPECT_EQ(apply_identity(Rule::merge_beta, e, {0, 1}, {}).after, (BrauerExpr{{f.sym("(t+u)", "s")}}));
    EXPECT_THROW(apply_identity(Rule::merge_omega, e, {0, 1}, {}), pattern_mismatch);
    const BrauerExpr g{{f.sym("(t, 0)", "s"), f.sym("(t, 0)", "u")}};
    EXPECT_EQ(apply_identity(Rule::merge_omega, g, {0, 1}, {}).after, (BrauerExpr{{f.sym("(t, 0)", "s*u")}}));
    EXPECT_THROW(apply_identity(Rule::merge_beta, g, {0, 1}, {}), pattern_mismatch);
    EXPECT_THROW(apply_identity(Rule::merge_beta, e, {0, 0}, {}), pattern_mismatch);
    // Witt addition at level 2 carries: (t,0) + (u,0) = (t+u, t*u).
    const BrauerExpr h{{f.sym("(t, 0)", "s"), f.sym("(u, 0)", "s")}};
    EXPECT_EQ(apply_identity(Rule::merge_beta, h, {0, 1}, {}).after.factors[0], f.sym("(t+u, t*u)", "s"));
}

TEST(Identities, MulP) {
    F2 f;
    const auto step = apply_identity(Rule::mul_p, BrauerExpr{{f.sym("(t, u)", "s")}}, {0}, {});
    EXPECT_EQ(step.after.factors[0], f.sym("(0, t^2)", "s"));
}

TEST(Identities, PropShiftRecordsPi) {
    auto ctx = FieldContext::make(2, {"b", "x", "w"});
    const CyclicSymbol s(parse_witt("(w, 0)", ctx), parse_elem("b", ctx));
    const auto step = apply_identity(Rule::prop_shift, BrauerExpr{{s}}, {0}, {{"x", parse_elem("x", ctx)}});
    ASSERT_NE(step.find("pi"), nullptr);
    EXPECT_EQ(std::get<WittF>(step.find("pi")->value), parse_witt("(1, x^4)", ctx));
    EXPECT_EQ(step.after.factors[0].beta(), parse_elem("b + x^4", ctx));
    // omega * (1 + x^4/b, 0) * (1, x^4), product by Witt arithmetic.
    const auto lead = teichmuller(Prime(2), parse_elem("1 + x^4/b", ctx), 2);
    EXPECT_EQ(step.after.factors[0].omega(), s.omega() * lead * parse_witt("(1, x^4)", ctx));
}

TEST(ValidateTrace, AcceptsAndRejects) {
    F2 f;
    EXPECT_TRUE(validate_trace({}).valid);
    DerivationTrace t;
    t.push_back(apply_identity(Rule::as_shift, BrauerExpr{{f.sym("(t)", "s")}}, {0}, {{"tau", f.w("(s)")}}));
    t.push_back(apply_identity(Rule::pad, t.back().after, {0}, {{"form", std::string("shift")}}));
    EXPECT_TRUE(validate_trace(t).valid);

    auto bad = t;
    bad[0].witnesses[0].value = f.w("(u)");
    const auto r = validate_trace(bad);
    EXPECT_FALSE(r.valid);
    EXPECT_EQ(r.failing_step, 0u);

    auto broken = t;
    broken[1].before = BrauerExpr{{f.sym("(u)", "s")}};
    EXPECT_EQ(validate_trace(broken).failing_step, 1u);

    auto composite_bad = t;
    composite_bad[1].substeps = {t[0]};
    EXPECT_FALSE(validate_trace(composite_bad).valid);
}
