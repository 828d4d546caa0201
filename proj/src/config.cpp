// rugscan: EVM bytecode rug-pull backdoor analyzer
// Copyright 2026 The rugscan Authors.
// SPDX-License-Identifier: Apache-2.0
#include "rugscan/config.hpp"

#include <fstream>
#include <nlohmann/json.hpp>
#include <stdexcept>

namespace rugscan {

AnalyzerConfig AnalyzerConfig::from_json_text(const std::string& text) {
    AnalyzerConfig cfg;
    nlohmann::json j = nlohmann::json::parse(text);
    if (j.contains("fee_divisors")) {
        cfg.fee_divisors.clear();
        for (const auto& d : j["fee_divisors"]) cfg.fee_divisors.insert(d.get<uint64_t>());
    }
    if (j.contains("owner_guard")) {
        std::string g = j["owner_guard"].get<std::string>();
        if (g == "storage-only")
            cfg.owner_guard = OwnerGuard::storage_only;
        else if (g == "storage-or-constant")
            cfg.owner_guard = OwnerGuard::storage_or_constant;
        else
            throw std::runtime_error("config: unknown owner_guard '" + g + "'");
    }
    if (j.contains("max_entry_states")) cfg.max_entry_states = j["max_entry_states"].get<int>();
    if (j.contains("max_stack_depth")) cfg.max_stack_depth = j["max_stack_depth"].get<int>();
    if (j.contains("rpc")) {
        const auto& r = j["rpc"];
        if (r.contains("retries")) cfg.rpc.retries = r["retries"].get<int>();
        if (r.contains("backoff_ms")) cfg.rpc.backoff_ms = r["backoff_ms"].get<int>();
        if (r.contains("min_interval_ms"))
            cfg.rpc.min_interval_ms = r["min_interval_ms"].get<int>();
        if (r.contains("timeout_sec")) cfg.rpc.timeout_sec = r["timeout_sec"].get<int>();
    }
    return cfg;
}

AnalyzerConfig AnalyzerConfig::from_json_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("config: cannot open " + path);
    std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    return from_json_text(text);
}

}  // namespace rugscan
