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
 * @file trace_json.hpp
 * @brief JSON form of derivation traces (requires nlohmann/json).
 *
 * A step is
 *
 *     {"rule": "as-shift", "before": "...", "after": "...", "targets": [0],
 *      "witnesses": {"tau": "(s)"}, "substeps": [...]}
 *
 * Witness values are strings except "level", which is an integer. The kind
 * of each witness follows from its name: x, gamma, beta and delta are field
 * elements; pi and tau are Witt vectors; everything else is text.
 */
#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "io.hpp"
#include "symbol.hpp"

namespace wittsym {

inline nlohmann::json step_to_json(const RewriteStep& s) {
    nlohmann::json w = nlohmann::json::object();
    for (const auto& wit : s.witnesses) {
        if (const auto* n = std::get_if<std::int64_t>(&wit.value))
            w[wit.name] = *n;
        else
            w[wit.name] = wit.to_string();
    }
    nlohmann::json sub = nlohmann::json::array();
    for (const auto& x : s.substeps) sub.push_back(step_to_json(x));
    return {{"rule", std::string(rule_name(s.rule))},
            {"before", s.before.to_string()},
            {"after", s.after.to_string()},
            {"targets", s.targets},
            {"witnesses", std::move(w)},
            {"substeps", std::move(sub)}};
}

inline nlohmann::json trace_to_json(const DerivationTrace& t) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& s : t) out.push_back(step_to_json(s));
    return out;
}

namespace detail {

inline Witness witness_from_json(const std::string& name, const nlohmann::json& v, const ContextPtr& ctx) {
    if (name == "level") {
        if (!v.is_number_integer()) throw parse_error("witness 'level' must be an integer", 0);
        return {name, v.get<std::int64_t>()};
    }
    if (!v.is_string()) throw parse_error("witness '" + name + "' must be a string", 0);
    const auto text = v.get<std::string>();
    if (name == "x" || name == "gamma" || name == "beta" || name == "delta") return {name, parse_elem(text, ctx)};
    if (name == "pi" || name == "tau") return {name, parse_witt(text, ctx)};
    return {name, text};
}

}  // namespace detail

inline RewriteStep step_from_json(const nlohmann::json& j, const ContextPtr& ctx) {
    if (!j.is_object()) throw parse_error("trace step must be an object", 0);
    RewriteStep s;
    try {
        const auto rule = rule_from_name(j.at("rule").get<std::string>());
        if (!rule) throw parse_error("unknown rule " + j.at("rule").get<std::string>(), 0);
        s.rule = *rule;
        s.before = parse_expression(j.at("before").get<std::string>(), ctx);
        s.after = parse_expression(j.at("after").get<std::string>(), ctx);
        if (j.contains("targets"))
            for (const auto& t : j.at("targets")) s.targets.push_back(t.get<std::size_t>());
        if (j.contains("witnesses"))
            for (const auto& [k, v] : j.at("witnesses").items()) s.witnesses.push_back(detail::witness_from_json(k, v, ctx));
        if (j.contains("substeps"))
            for (const auto& sub : j.at("substeps")) s.substeps.push_back(step_from_json(sub, ctx));
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("malformed trace step: ") + e.what(), 0);
    }
    return s;
}

inline DerivationTrace trace_from_json(const nlohmann::json& j, const ContextPtr& ctx) {
    const nlohmann::json& steps = j.is_object() ? j.at("steps") : j;
    if (!steps.is_array()) throw parse_error("trace must be an array of steps", 0);
    DerivationTrace t;
    for (const auto& s : steps) t.push_back(step_from_json(s, ctx));
    return t;
}

/// The report emitted by the command-line tool.
inline nlohmann::json trace_report(const ContextPtr& ctx, const DerivationTrace& t, const std::string& result) {
    const auto check = validate_trace(t);
    nlohmann::json r = {{"prime", ctx->prime().value()},
                        {"vars", ctx->names()},
                        {"steps", trace_to_json(t)},
                        {"result", result},
                        {"valid", check.valid},
                        {"failing_step", nullptr}};
    if (check.failing_step) r["failing_step"] = *check.failing_step;
    if (!check.valid) r["reason"] = check.reason;
    return r;
}

}  // namespace wittsym
