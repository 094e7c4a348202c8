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

#include <wittsym/io.hpp>
#include <wittsym/realize.hpp>

using namespace wittsym;

namespace {

std::size_t label_index(const StructureConstantAlgebra& a, const std::string& label) {
    for (std::size_t i = 0; i < a.dim; ++i)
        if (a.labels[i] == label) return i;
    ADD_FAILURE() << "no basis element " << label;
    return 0;
}

/// b_i * b_j as a label -> coefficient map.
std::map<std::string, FieldElem> product(const StructureConstantAlgebra& a, const std::string& x, const std::string& y) {
    std::map<std::string, FieldElem> out;
    for (const auto& [k, v] : a.product(label_index(a, x), label_index(a, y))) out.emplace(a.labels[k], v);
    return out;
}

/// M_2(F) on E11, E12, E21, E22.
StructureConstantAlgebra matrix_table(const ContextPtr& ctx) {
    StructureConstantAlgebra a{ctx, 4, {"E11", "E12", "E21", "E22"}, std::vector<SparseVec>(16), 0};
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t k = 0; k < 2; ++k)
                for (std::size_t l = 0; l < 2; ++l)
                    if (j == k) a.table[(2 * i + j) * 4 + (2 * k + l)] = {{2 * i + l, FieldElem::constant(ctx, 1)}};
    return a;
}

/// F[x]/(x^4).
StructureConstantAlgebra truncated_poly_table(const ContextPtr& ctx) {
    StructureConstantAlgebra a{ctx, 4, {"1", "x", "x^2", "x^3"}, std::vector<SparseVec>(16), 0};
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            if (i + j < 4) a.table[i * 4 + j] = {{i + j, FieldElem::constant(ctx, 1)}};
    return a;
}

}  // namespace

TEST(Realize, DegreeTwo) {
    auto ctx = FieldContext::make(2, {"t", "s"});
    const auto sym = parse_symbol("[(t), s)_{2}", ctx);
    const auto a = realize_symbol(sym);
    EXPECT_EQ(a.dim, 4u);
    EXPECT_EQ(a.labels, (std::vector<std::string>{"1", "u", "y", "u*y"}));
    const auto one = FieldElem::constant(ctx, 1);
    // u^2 = u + t, y^2 = s, y u = (u + 1) y
    EXPECT_EQ(product(a, "u", "u"), (std::map<std::string, FieldElem>{{"1", parse_elem("t", ctx)}, {"u", one}}));
    EXPECT_EQ(product(a, "y", "y"), (std::map<std::string, FieldElem>{{"1", parse_elem("s", ctx)}}));
    EXPECT_EQ(product(a, "y", "u"), (std::map<std::string, FieldElem>{{"y", one}, {"u*y", one}}));
    EXPECT_TRUE(check_relations(a, presentation_of(sym)));
    EXPECT_EQ(center_basis(a).size(), 1u);
}

TEST(Realize, DegreeThree) {
    auto ctx = FieldContext::make(3, {"t", "s"});
    const auto sym = parse_symbol("[(t), s)_{3}", ctx);
    const auto a = realize_symbol(sym);
    EXPECT_EQ(a.dim, 9u);
    const auto one = FieldElem::constant(ctx, 1);
    EXPECT_EQ(product(a, "y", "u"), (std::map<std::string, FieldElem>{{"y", one}, {"u*y", one}}));
    EXPECT_TRUE(check_relations(a, presentation_of(sym)));
    const auto centre = center_basis(a);
    ASSERT_EQ(centre.size(), 1u);
    EXPECT_TRUE(centre[0][0].is_one());
}

TEST(Realize, LevelTwo) {
    auto ctx = FieldContext::make(2, {"d", "a", "g"});
    const auto sym = parse_symbol("[(d, a), g)_{4}", ctx);
    const auto a = realize_symbol(sym);
    EXPECT_EQ(a.dim, 16u);
    const auto one = FieldElem::constant(ctx, 1);
    EXPECT_EQ(product(a, "u1", "u1"), (std::map<std::string, FieldElem>{{"1", parse_elem("d", ctx)}, {"u1", one}}));
    // (u1^2, u2^2) = (d, a) + (u1, u2) = (d + u1, a + u2 + d*u1) in characteristic 2
    EXPECT_EQ(product(a, "u2", "u2"),
              (std::map<std::string, FieldElem>{{"1", parse_elem("a", ctx)}, {"u1", parse_elem("d", ctx)}, {"u2", one}}));
    const auto check = check_relations(a, presentation_of(sym));
    EXPECT_TRUE(check.ok) << check.failure;
    EXPECT_EQ(center_basis(a).size(), 1u);
}

TEST(Realize, CorruptedEntryIsCaught) {
    auto ctx = FieldContext::make(2, {"t", "s"});
    const auto sym = parse_symbol("[(t), s)_{2}", ctx);
    auto a = realize_symbol(sym);
    a.table[1 * a.dim + 2] = {{3, parse_elem("t", ctx)}};
    EXPECT_FALSE(check_relations(a, presentation_of(sym)));
}

TEST(Realize, SameInputSameTable) {
    auto ctx = FieldContext::make(3, {"t", "s"});
    const auto a = realize_symbol(parse_symbol("[(t+s), s)_{3}", ctx));
    const auto b = realize_symbol(parse_symbol("[(s+t), s)_{3}", ctx));
    EXPECT_EQ(a.table, b.table);
}

TEST(Realize, Unsupported) {
    auto ctx = FieldContext::make(3, {"t", "s"});
    EXPECT_THROW(realize_symbol(parse_symbol("[(t, s), s)_{9}", ctx)), domain_error);
}

TEST(Centre, Controls) {
    auto ctx = FieldContext::make(2, {"t"});
    EXPECT_EQ(center_basis(matrix_table(ctx)).size(), 1u);
    EXPECT_EQ(center_basis(truncated_poly_table(ctx)).size(), 4u);
}
