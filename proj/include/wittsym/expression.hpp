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
 * @file expression.hpp
 * @brief Recursive-descent parser for field elements and Witt vectors.
 *
 * Grammar:
 *
 *     sum     := product (('+' | '-') product)*
 *     product := unary (('*' | '/') unary)*
 *     unary   := '-' unary | power
 *     power   := atom ('^' ['-'] integer)?
 *     atom    := integer | identifier | '(' sum ')'
 *     witt    := '(' sum (',' sum)* ')'
 *
 * Integer literals are reduced mod p. Identifiers must be indeterminates of
 * the field context.
 */
#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "field.hpp"
#include "witt.hpp"

namespace wittsym {

/// Character cursor shared by the element, Witt vector and symbol parsers.
class Cursor {
public:
    explicit Cursor(std::string_view text) : text_(text) {}

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    [[nodiscard]] char peek() {
        skip_space();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }
    [[nodiscard]] bool at_end() { return peek() == '\0'; }
    bool accept(char c) {
        if (peek() != c) return false;
        ++pos_;
        return true;
    }
    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }
    [[noreturn]] void fail(const std::string& what) const {
        const std::string found = pos_ < text_.size() ? std::string("'") + text_[pos_] + "'" : "end of input";
        throw parse_error(what + ", found " + found, pos_);
    }
    [[nodiscard]] std::size_t position() const noexcept { return pos_; }

    /// Decimal digits as a string (no sign).
    std::string digits() {
        skip_space();
        const auto start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) fail("expected integer");
        return std::string(text_.substr(start, pos_ - start));
    }
    std::string identifier() {
        skip_space();
        const auto start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        return std::string(text_.substr(start, pos_ - start));
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
};

class ElementParser {
public:
    ElementParser(ContextPtr ctx, Cursor& cur) : ctx_(std::move(ctx)), cur_(cur) {}

    FieldElem sum() {
        FieldElem acc = product();
        while (true) {
            if (cur_.accept('+'))
                acc = acc + product();
            else if (cur_.accept('-'))
                acc = acc - product();
            else
                return acc;
        }
    }

    WittF witt() {
        cur_.expect('(');
        std::vector<FieldElem> coords{sum()};
        while (cur_.accept(',')) coords.push_back(sum());
        cur_.expect(')');
        return WittF(ctx_->prime(), std::move(coords));
    }

private:
    ContextPtr ctx_;
    Cursor& cur_;

    FieldElem product() {
        FieldElem acc = unary();
        while (true) {
            if (cur_.accept('*')) {
                acc = acc * unary();
            } else if (cur_.peek() == '/') {
                const auto at = cur_.position();
                cur_.accept('/');
                FieldElem d = unary();
                if (d.is_zero()) throw parse_error("division by zero", at);
                acc = acc / d;
            } else {
                return acc;
            }
        }
    }

    FieldElem unary() {
        if (cur_.accept('-')) return -unary();
        return power();
    }

    FieldElem power() {
        FieldElem base = atom();
        if (!cur_.accept('^')) return base;
        const bool negative = cur_.accept('-');
        const auto at = cur_.position();
        const std::string d = cur_.digits();
        if (d.size() > 9) throw parse_error("exponent too large", at);
        const std::int64_t e = std::stoll(d);
        if (negative && base.is_zero()) throw parse_error("division by zero", at);
        return base.pow(negative ? -e : e);
    }

    FieldElem atom() {
        const char c = cur_.peek();
        if (c == '(') {
            cur_.accept('(');
            FieldElem inner = sum();
            cur_.expect(')');
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            const std::string d = cur_.digits();
            std::int64_t r = 0;
            const std::int64_t p = ctx_->prime().value();
            for (char ch : d) r = (r * 10 + (ch - '0')) % p;
            return FieldElem::constant(ctx_, r);
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const auto at = cur_.position();
            const std::string name = cur_.identifier();
            const auto idx = ctx_->index_of(name);
            if (!idx) throw parse_error("unknown indeterminate '" + name + "'", at);
            return FieldElem::variable(ctx_, *idx);
        }
        cur_.fail("expected expression");
    }
};

/// Parses a complete field-element expression.
inline FieldElem parse_elem(std::string_view text, const ContextPtr& ctx) {
    Cursor cur(text);
    ElementParser parser(ctx, cur);
    FieldElem v = parser.sum();
    if (!cur.at_end()) cur.fail("unexpected trailing input");
    return v;
}

/// Parses "(c1, ..., cm)".
inline WittF parse_witt(std::string_view text, const ContextPtr& ctx) {
    Cursor cur(text);
    ElementParser parser(ctx, cur);
    WittF v = parser.witt();
    if (!cur.at_end()) cur.fail("unexpected trailing input");
    return v;
}

}  // namespace wittsym
