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

#include <cstdint>
#include <string>

#include "error.hpp"

namespace wittsym {

/// Characteristic of the base field. Primality is checked on construction.
class Prime {
public:
    explicit Prime(std::uint32_t p) : p_(p) {
        if (p < 2 || p > 65521) throw domain_error("prime out of supported range: " + std::to_string(p));
        for (std::uint32_t d = 2; d * d <= p; ++d)
            if (p % d == 0) throw domain_error(std::to_string(p) + " is not prime");
    }

    [[nodiscard]] std::uint32_t value() const noexcept { return p_; }
    operator std::uint32_t() const noexcept { return p_; }

    /// p^k as a 64-bit integer (callers keep k small).
    [[nodiscard]] std::uint64_t power(unsigned k) const noexcept {
        std::uint64_t r = 1;
        for (unsigned i = 0; i < k; ++i) r *= p_;
        return r;
    }

    friend bool operator==(Prime a, Prime b) noexcept { return a.p_ == b.p_; }

private:
    std::uint32_t p_;
};

}  // namespace wittsym
