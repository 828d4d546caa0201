// rugscan: EVM bytecode rug-pull backdoor analyzer
// Copyright 2026 The rugscan Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <set>
#include <string>

namespace rugscan {

enum class OwnerGuard {
    storage_only,         // owner compared against a storage-loaded value
    storage_or_constant,  // also accept a hardcoded 20-byte constant
};

struct RpcConfig {
    int retries = 3;
    int backoff_ms = 200;        // doubled per retry
    int min_interval_ms = 0;     // per-endpoint rate limit
    int timeout_sec = 15;
};

struct AnalyzerConfig {
    // Divisors recognized as fee-rate denominators (percent / per-mille /
    // basis points).
    std::set<uint64_t> fee_divisors = {100, 1000, 10000};
    OwnerGuard owner_guard = OwnerGuard::storage_or_constant;
    // Distinct symbolic entry states kept per block before collapsing.
    int max_entry_states = 16;
    int max_stack_depth = 32;
    RpcConfig rpc;

    static AnalyzerConfig from_json_file(const std::string& path);
    static AnalyzerConfig from_json_text(const std::string& text);
};

}  // namespace rugscan
