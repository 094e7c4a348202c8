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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wittsym {

/// Base class for all errors raised by the library.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input text. `position` is a 0-based offset into the parsed string.
class parse_error : public error {
public:
    parse_error(const std::string& what, std::size_t position)
        : error(what + " at position " + std::to_string(position)), position_(position) {}

    [[nodiscard]] std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/// Mathematical failures: division by zero, non-unit inversion, degenerate
/// shifts, irreducible forms, pattern mismatches.
class domain_error : public error {
public:
    using error::error;
};

class division_by_zero : public domain_error {
public:
    division_by_zero() : domain_error("division by zero") {}
};

class non_unit : public domain_error {
public:
    using domain_error::domain_error;
};

class degenerate_shift : public domain_error {
public:
    using domain_error::domain_error;
};

/// A one-form term that the reduction rules could not rewrite over the
/// requested generator. `term` is the printed stuck term.
class not_reducible : public domain_error {
public:
    explicit not_reducible(std::string term)
        : domain_error("form is not reducible over the generator; stuck term: " + term),
          term_(std::move(term)) {}

    [[nodiscard]] const std::string& term() const noexcept { return term_; }

private:
    std::string term_;
};

class pattern_mismatch : public domain_error {
public:
    using domain_error::domain_error;
};

/// Operands built over different primes, lengths or field contexts.
class mismatch : public domain_error {
public:
    using domain_error::domain_error;
};

/// Evaluation hit a vanishing denominator; retry at another point.
class pole_error : public domain_error {
public:
    pole_error() : domain_error("denominator vanishes at the evaluation point") {}
};

/// Internal invariant violated (e.g. a non-integral universal coefficient).
class internal_error : public error {
public:
    using error::error;
};

}  // namespace wittsym
