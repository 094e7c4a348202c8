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
 * @file realize.hpp
 * @brief Structure constants for the algebra of a cyclic symbol.
 *
 * [omega, beta)_{p^m} is generated by u_1..u_m and y with
 *
 *     (u_1^p, .., u_m^p) - (u_1, .., u_m) = omega     (Witt subtraction)
 *     y^(p^m) = beta
 *     y u y^-1 = u + (1, 0, .., 0)                      (Witt addition)
 *
 * The basis is u^e y^j with 0 <= e_k < p and 0 <= j < p^m. The u_k commute;
 * u_k^p is rewritten with the k-th universal sum polynomial evaluated at
 * (omega, u), which involves u_k linearly and only u_i, i < k, otherwise, so
 * the rewriting terminates. Conjugation by y acts on u-monomials through the
 * universal sum polynomials evaluated at (u, (1,0,..,0)).
 */
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "field.hpp"
#include "symbol.hpp"
#include "universal.hpp"
#include "witt.hpp"

namespace wittsym {

/// Sparse coordinate vector: (basis index, nonzero coefficient), sorted by index.
using SparseVec = std::vector<std::pair<std::size_t, FieldElem>>;

struct StructureConstantAlgebra {
    ContextPtr ctx;
    std::size_t dim = 0;
    std::vector<std::string> labels;
    std::vector<SparseVec> table;  // table[i * dim + j] = b_i * b_j
    std::size_t unit = 0;          // index of the unit basis element

    [[nodiscard]] const SparseVec& product(std::size_t i, std::size_t j) const { return table.at(i * dim + j); }
};

struct GeneratorPresentation {
    Prime p{2};
    WittF omega;
    FieldElem beta;
    [[nodiscard]] unsigned m() const { return omega.length(); }
};

/// Dense element of a structure-constant algebra.
class AlgElem {
public:
    AlgElem(const StructureConstantAlgebra* alg, std::vector<FieldElem> c) : alg_(alg), c_(std::move(c)) {}

    static AlgElem zero(const StructureConstantAlgebra& a) {
        return AlgElem(&a, std::vector<FieldElem>(a.dim, FieldElem(a.ctx)));
    }
    static AlgElem basis(const StructureConstantAlgebra& a, std::size_t i) {
        auto z = zero(a);
        z.c_[i] = FieldElem::constant(a.ctx, 1);
        return z;
    }
    static AlgElem scalar(const StructureConstantAlgebra& a, const FieldElem& f) {
        auto z = zero(a);
        z.c_[a.unit] = f;
        return z;
    }

    [[nodiscard]] const std::vector<FieldElem>& coords() const noexcept { return c_; }
    [[nodiscard]] bool is_zero() const {
        for (const auto& x : c_)
            if (!x.is_zero()) return false;
        return true;
    }

    friend AlgElem operator+(AlgElem a, const AlgElem& b) {
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            if (!b.c_[i].is_zero()) a.c_[i] = a.c_[i] + b.c_[i];
        return a;
    }
    friend AlgElem operator-(AlgElem a, const AlgElem& b) {
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            if (!b.c_[i].is_zero()) a.c_[i] = a.c_[i] - b.c_[i];
        return a;
    }
    friend AlgElem operator*(const AlgElem& a, const AlgElem& b) {
        const auto& alg = *a.alg_;
        auto r = zero(alg);
        for (std::size_t i = 0; i < alg.dim; ++i) {
            if (a.c_[i].is_zero()) continue;
            for (std::size_t j = 0; j < alg.dim; ++j) {
                if (b.c_[j].is_zero()) continue;
                const FieldElem ab = a.c_[i] * b.c_[j];
                for (const auto& [k, v] : alg.product(i, j)) r.c_[k] = r.c_[k] + ab * v;
            }
        }
        return r;
    }
    friend bool operator==(const AlgElem& a, const AlgElem& b) { return a.c_ == b.c_; }

private:
    const StructureConstantAlgebra* alg_;
    std::vector<FieldElem> c_;
};

namespace detail {

/// The commutative subalgebra F[u_1..u_m] with u_k^p rewritten.
class URing {
public:
    URing(Prime p, const WittF& omega) : p_(p), m_(omega.length()), ctx_(omega[0].context()) {
        size_ = 1;
        for (unsigned k = 0; k < m_; ++k) size_ *= p_.value();
        const auto u = universal_polys(p_, m_);
        std::vector<Vec> args;
        for (unsigned k = 0; k < m_; ++k) args.push_back(constant(omega[k]));
        for (unsigned k = 0; k < m_; ++k) args.push_back(variable(k));
        // relation k uses only relations i < k while being evaluated
        for (unsigned k = 0; k < m_; ++k) relations_.push_back(eval(u->sum_p[k], args));
    }

    using Vec = std::vector<FieldElem>;

    [[nodiscard]] std::size_t size() const noexcept { return size_; }
    [[nodiscard]] std::vector<unsigned> exponents(std::size_t idx) const {
        std::vector<unsigned> e(m_);
        for (unsigned k = 0; k < m_; ++k) {
            e[k] = static_cast<unsigned>(idx % p_.value());
            idx /= p_.value();
        }
        return e;
    }
    [[nodiscard]] std::size_t index(const std::vector<unsigned>& e) const {
        std::size_t idx = 0;
        for (unsigned k = m_; k-- > 0;) idx = idx * p_.value() + e[k];
        return idx;
    }

    [[nodiscard]] Vec zero() const { return Vec(size_, FieldElem(ctx_)); }
    [[nodiscard]] Vec constant(const FieldElem& f) const {
        auto z = zero();
        z[0] = f;
        return z;
    }
    [[nodiscard]] Vec variable(unsigned k) const {
        std::vector<unsigned> e(m_, 0);
        e[k] = 1;
        auto z = zero();
        z[index(e)] = FieldElem::constant(ctx_, 1);
        return z;
    }

    Vec add(const Vec& a, const Vec& b) const {
        Vec r = a;
        for (std::size_t i = 0; i < size_; ++i)
            if (!b[i].is_zero()) r[i] = r[i] + b[i];
        return r;
    }
    Vec mul(const Vec& a, const Vec& b) {
        Vec r = zero();
        for (std::size_t i = 0; i < size_; ++i) {
            if (a[i].is_zero()) continue;
            const auto ei = exponents(i);
            for (std::size_t j = 0; j < size_; ++j) {
                if (b[j].is_zero()) continue;
                auto e = ei;
                const auto ej = exponents(j);
                for (unsigned k = 0; k < m_; ++k) e[k] += ej[k];
                const FieldElem ab = a[i] * b[j];
                for (const auto& [idx, v] : monomial(e)) r[idx] = r[idx] + ab * v;
            }
        }
        return r;
    }

    Vec eval(const PolyP& f, const std::vector<Vec>& args) {
        Vec acc = zero();
        for (const auto& [mono, c] : f.terms()) {
            Vec term = constant(FieldElem::constant(ctx_, c));
            for (std::size_t i = 0; i < args.size(); ++i)
                for (unsigned e = 0; e < mono.exp[i]; ++e) term = mul(term, args[i]);
            acc = add(acc, term);
        }
        return acc;
    }

private:
    Prime p_;
    unsigned m_;
    ContextPtr ctx_;
    std::size_t size_ = 1;
    std::vector<Vec> relations_;  // u_k^p
    std::map<std::vector<unsigned>, SparseVec> memo_;

    /// u^e with arbitrary exponents, rewritten into the basis.
    const SparseVec& monomial(const std::vector<unsigned>& e) {
        if (auto it = memo_.find(e); it != memo_.end()) return it->second;
        SparseVec out;
        unsigned k = m_;
        for (unsigned i = m_; i-- > 0;)
            if (e[i] >= p_.value()) {
                k = i;
                break;
            }
        if (k == m_) {
            out.emplace_back(index(e), FieldElem::constant(ctx_, 1));
        } else {
            if (k >= relations_.size()) throw internal_error("u-relation used before it is known");
            auto rest = e;
            rest[k] -= p_.value();
            Vec acc = zero();
            const Vec rel = relations_[k];
            for (std::size_t j = 0; j < size_; ++j) {
                if (rel[j].is_zero()) continue;
                auto f = rest;
                const auto ej = exponents(j);
                for (unsigned i = 0; i < m_; ++i) f[i] += ej[i];
                const SparseVec sub = monomial(f);
                for (const auto& [idx, v] : sub) acc[idx] = acc[idx] + rel[j] * v;
            }
            for (std::size_t i = 0; i < size_; ++i)
                if (!acc[i].is_zero()) out.emplace_back(i, acc[i]);
        }
        return memo_.emplace(e, std::move(out)).first->second;
    }
};

inline std::string basis_label(const std::vector<unsigned>& e, unsigned j) {
    std::string out;
    auto put = [&](const std::string& name, unsigned k) {
        if (k == 0) return;
        if (!out.empty()) out += "*";
        out += name;
        if (k > 1) out += "^" + std::to_string(k);
    };
    for (std::size_t k = 0; k < e.size(); ++k) put(e.size() == 1 ? "u" : "u" + std::to_string(k + 1), e[k]);
    put("y", j);
    return out.empty() ? "1" : out;
}

}  // namespace detail

inline GeneratorPresentation presentation_of(const CyclicSymbol& s) { return {s.prime(), s.omega(), s.beta()}; }

/// Structure constants for [omega, beta)_{p^m}. Supported: m = 1 with p <= 7,
/// m = 2 with p = 2.
inline StructureConstantAlgebra realize_symbol(const CyclicSymbol& s) {
    const Prime p = s.prime();
    const unsigned m = s.level();
    if (!((m == 1 && p.value() <= 7) || (m == 2 && p.value() == 2)))
        throw domain_error("realization supports m = 1 with p <= 7 and m = 2 with p = 2, not p = " +
                           std::to_string(p.value()) + ", m = " + std::to_string(m));
    detail::URing K(p, s.omega());
    const std::size_t nk = K.size();
    const std::size_t ny = p.power(m);

    // sigma^j of every u-monomial
    std::vector<detail::URing::Vec> sigma_u;
    {
        const auto u = universal_polys(p, m);
        std::vector<detail::URing::Vec> args;
        for (unsigned k = 0; k < m; ++k) args.push_back(K.variable(k));
        for (unsigned k = 0; k < m; ++k) args.push_back(K.constant(FieldElem::constant(s.context(), k == 0 ? 1 : 0)));
        for (unsigned k = 0; k < m; ++k) sigma_u.push_back(K.eval(u->sum_p[k], args));
    }
    // images[j][f] = sigma^j(u^f)
    std::vector<std::vector<detail::URing::Vec>> images(ny, std::vector<detail::URing::Vec>(nk));
    for (std::size_t f = 0; f < nk; ++f) images[0][f] = K.zero(), images[0][f][f] = FieldElem::constant(s.context(), 1);
    std::vector<detail::URing::Vec> gens = sigma_u;  // sigma^j(u_k)
    for (std::size_t j = 1; j < ny; ++j) {
        for (std::size_t f = 0; f < nk; ++f) {
            const auto e = K.exponents(f);
            auto v = K.constant(FieldElem::constant(s.context(), 1));
            for (unsigned k = 0; k < m; ++k)
                for (unsigned r = 0; r < e[k]; ++r) v = K.mul(v, gens[k]);
            images[j][f] = v;
        }
        // sigma^(j+1)(u_k) = sigma^j(sigma(u_k)): substitute sigma^j(u) into sigma(u_k)
        std::vector<detail::URing::Vec> next;
        for (unsigned k = 0; k < m; ++k) {
            auto acc = K.zero();
            for (std::size_t f = 0; f < nk; ++f)
                if (!sigma_u[k][f].is_zero()) {
                    const auto& img = images[j][f];
                    for (std::size_t g = 0; g < nk; ++g)
                        if (!img[g].is_zero()) acc[g] = acc[g] + sigma_u[k][f] * img[g];
                }
            next.push_back(acc);
        }
        gens = std::move(next);
    }

    StructureConstantAlgebra alg;
    alg.ctx = s.context();
    alg.dim = nk * ny;
    alg.unit = 0;
    alg.table.resize(alg.dim * alg.dim);
    for (std::size_t j = 0; j < ny; ++j)
        for (std::size_t e = 0; e < nk; ++e) alg.labels.push_back(detail::basis_label(K.exponents(e), static_cast<unsigned>(j)));

    for (std::size_t j = 0; j < ny; ++j)
        for (std::size_t e = 0; e < nk; ++e)
            for (std::size_t l = 0; l < ny; ++l)
                for (std::size_t f = 0; f < nk; ++f) {
                    // u^e y^j u^f y^l = u^e sigma^j(u^f) y^(j+l)
                    auto ue = K.zero();
                    ue[e] = FieldElem::constant(s.context(), 1);
                    const auto prod = K.mul(ue, images[j][f]);
                    std::size_t jl = j + l;
                    FieldElem scale = FieldElem::constant(s.context(), 1);
                    if (jl >= ny) {
                        jl -= ny;
                        scale = s.beta();
                    }
                    SparseVec entry;
                    for (std::size_t g = 0; g < nk; ++g)
                        if (!prod[g].is_zero()) entry.emplace_back(jl * nk + g, prod[g] * scale);
                    alg.table[(j * nk + e) * alg.dim + (l * nk + f)] = std::move(entry);
                }
    return alg;
}

struct RelationCheck {
    bool ok = true;
    std::string failure;
    explicit operator bool() const noexcept { return ok; }
};

/// Evaluates the defining relations inside the table, the unit law, and
/// associativity (all triples for dim <= 16, else 200 seeded random triples).
inline RelationCheck check_relations(const StructureConstantAlgebra& a, const GeneratorPresentation& g) {
    const unsigned m = g.m();
    const std::size_t nk = g.p.power(m);
    if (a.dim != nk * nk) return {false, "dimension " + std::to_string(a.dim) + " is not p^(2m)"};
    auto basis = [&](std::size_t i) { return AlgElem::basis(a, i); };
    const auto zero = AlgElem::zero(a);
    auto scalar = [&](std::uint32_t c) { return AlgElem::scalar(a, FieldElem::constant(a.ctx, c)); };

    // generators: u_k = basis index p^k, y = basis index nk
    std::vector<AlgElem> u;
    std::size_t stride = 1;
    for (unsigned k = 0; k < m; ++k, stride *= g.p.value()) u.push_back(basis(stride));
    const AlgElem y = basis(nk);

    for (std::size_t i = 0; i < a.dim; ++i) {
        if (!(basis(a.unit) * basis(i) == basis(i)) || !(basis(i) * basis(a.unit) == basis(i)))
            return {false, "unit law fails at " + a.labels[i]};
    }

    const auto polys = universal_polys(g.p, m);
    // (u^p) - u, as u^p + N(u)
    std::vector<AlgElem> up, negargs;
    for (const auto& x : u) {
        AlgElem v = x;
        for (std::uint32_t r = 1; r < g.p.value(); ++r) v = v * x;
        up.push_back(v);
    }
    negargs = u;
    for (unsigned k = 0; k < m; ++k) negargs.push_back(zero);
    std::vector<AlgElem> neg;
    for (unsigned k = 0; k < m; ++k)
        neg.push_back(evaluate_polynomial<AlgElem>(polys->negation_p[k], negargs, zero, scalar));
    std::vector<AlgElem> diffargs = up;
    diffargs.insert(diffargs.end(), neg.begin(), neg.end());
    for (unsigned k = 0; k < m; ++k) {
        const auto lhs = evaluate_polynomial<AlgElem>(polys->sum_p[k], diffargs, zero, scalar);
        if (!(lhs == AlgElem::scalar(a, g.omega[k])))
            return {false, "relation wp(u)_" + std::to_string(k + 1) + " = omega_" + std::to_string(k + 1) + " fails"};
    }

    AlgElem yq = y;
    for (std::size_t r = 1; r < nk; ++r) yq = yq * y;
    if (!(yq == AlgElem::scalar(a, g.beta))) return {false, "relation y^(p^m) = beta fails"};

    std::vector<AlgElem> shiftargs = u;
    for (unsigned k = 0; k < m; ++k) shiftargs.push_back(k == 0 ? scalar(1) : zero);
    for (unsigned k = 0; k < m; ++k) {
        const auto su = evaluate_polynomial<AlgElem>(polys->sum_p[k], shiftargs, zero, scalar);
        if (!(y * u[k] == su * y)) return {false, "conjugation relation for u_" + std::to_string(k + 1) + " fails"};
    }

    auto assoc = [&](std::size_t i, std::size_t j, std::size_t k) {
        return (basis(i) * basis(j)) * basis(k) == basis(i) * (basis(j) * basis(k));
    };
    if (a.dim <= 16) {
        for (std::size_t i = 0; i < a.dim; ++i)
            for (std::size_t j = 0; j < a.dim; ++j)
                for (std::size_t k = 0; k < a.dim; ++k)
                    if (!assoc(i, j, k))
                        return {false, "associativity fails at (" + a.labels[i] + ", " + a.labels[j] + ", " + a.labels[k] + ")"};
    } else {
        std::mt19937_64 rng(0x5eed);
        std::uniform_int_distribution<std::size_t> pick(0, a.dim - 1);
        for (int t = 0; t < 200; ++t) {
            const auto i = pick(rng), j = pick(rng), k = pick(rng);
            if (!assoc(i, j, k))
                return {false, "associativity fails at (" + a.labels[i] + ", " + a.labels[j] + ", " + a.labels[k] + ")"};
        }
    }
    return {};
}

/// Basis of the centre {z : z b = b z for all basis b}, by Gaussian elimination.
inline std::vector<std::vector<FieldElem>> center_basis(const StructureConstantAlgebra& a) {
    const std::size_t d = a.dim;
    // rows: for each basis k and output coordinate c, sum_i z_i (T[i,k]_c - T[k,i]_c) = 0
    std::vector<std::vector<FieldElem>> rows;
    for (std::size_t k = 0; k < d; ++k) {
        std::vector<std::vector<FieldElem>> block(d, std::vector<FieldElem>(d, FieldElem(a.ctx)));
        for (std::size_t i = 0; i < d; ++i) {
            for (const auto& [c, v] : a.product(i, k)) block[c][i] = block[c][i] + v;
            for (const auto& [c, v] : a.product(k, i)) block[c][i] = block[c][i] - v;
        }
        for (auto& r : block) {
            bool nz = false;
            for (const auto& x : r) nz = nz || !x.is_zero();
            if (nz) rows.push_back(std::move(r));
        }
    }
    // reduced row echelon form
    std::vector<std::size_t> pivots;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < d && rank < rows.size(); ++col) {
        std::size_t piv = rank;
        while (piv < rows.size() && rows[piv][col].is_zero()) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[rank]);
        const FieldElem inv = rows[rank][col].inverse();
        for (auto& x : rows[rank]) x = x * inv;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == rank || rows[r][col].is_zero()) continue;
            const FieldElem f = rows[r][col];
            for (std::size_t c = col; c < d; ++c)
                if (!rows[rank][c].is_zero()) rows[r][c] = rows[r][c] - f * rows[rank][c];
        }
        pivots.push_back(col);
        ++rank;
    }
    std::vector<std::vector<FieldElem>> out;
    for (std::size_t free = 0; free < d; ++free) {
        if (std::find(pivots.begin(), pivots.end(), free) != pivots.end()) continue;
        std::vector<FieldElem> z(d, FieldElem(a.ctx));
        z[free] = FieldElem::constant(a.ctx, 1);
        for (std::size_t r = 0; r < pivots.size(); ++r) z[pivots[r]] = -rows[r][free];
        out.push_back(std::move(z));
    }
    return out;
}

}  // namespace wittsym
