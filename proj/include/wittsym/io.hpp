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
 * @file io.hpp
 * @brief Text form of symbols and products.
 *
 *     symbol := '[' witt ',' elem ')' '_' '{' integer '}'
 *     expr   := '1' | symbol ('*' symbol)*
 *
 * The braced integer is the degree p^m; m must match the length of omega.
 * Printing (CyclicSymbol::to_string, BrauerExpr::to_string) produces text
 * this parser reads back.
 */
#pragma once

#include <string>
#include <string_view>

#include "expression.hpp"
#include "symbol.hpp"

namespace wittsym {

namespace detail {

inline CyclicSymbol parse_symbol_at(Cursor& cur, const ContextPtr& ctx) {
    const auto start = cur.position();
    cur.expect('[');
    ElementParser parser(ctx, cur);
    WittF omega = parser.witt();
    cur.expect(',');
    const auto beta_at = cur.position();
    FieldElem beta = parser.sum();
    cur.expect(')');
    cur.expect('_');
    cur.expect('{');
    const auto deg_at = cur.position();
    const std::string digits = cur.digits();
    cur.expect('}');
    if (digits.size() > 18) throw parse_error("degree too large", deg_at);
    const std::uint64_t q = std::stoull(digits);
    const std::uint64_t p = ctx->prime().value();
    unsigned m = 0;
    std::uint64_t v = q;
    while (v > 1 && v % p == 0) {
        v /= p;
        ++m;
    }
    if (v != 1 || m == 0) throw parse_error(digits + " is not a positive power of " + std::to_string(p), deg_at);
    if (omega.length() != m)
        throw parse_error("omega has length " + std::to_string(omega.length()) + " but the degree " + digits +
                              " needs length " + std::to_string(m),
                          start);
    if (beta.is_zero()) throw parse_error("beta must be nonzero", beta_at);
    return CyclicSymbol(std::move(omega), std::move(beta));
}

}  // namespace detail

/// Parses one symbol "[(e1,..,em), b)_{p^m}".
inline CyclicSymbol parse_symbol(std::string_view text, const ContextPtr& ctx) {
    Cursor cur(text);
    auto s = detail::parse_symbol_at(cur, ctx);
    if (!cur.at_end()) cur.fail("unexpected trailing input");
    return s;
}

/// Parses a product of symbols; "1" is the empty product.
inline BrauerExpr parse_expression(std::string_view text, const ContextPtr& ctx) {
    Cursor cur(text);
    BrauerExpr e;
    if (cur.peek() == '1') {
        cur.expect('1');
    } else {
        e.factors.push_back(detail::parse_symbol_at(cur, ctx));
        while (cur.accept('*')) e.factors.push_back(detail::parse_symbol_at(cur, ctx));
    }
    if (!cur.at_end()) cur.fail("unexpected trailing input");
    return e;
}

}  // namespace wittsym
