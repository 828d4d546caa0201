// rugscan: EVM bytecode rug-pull backdoor analyzer
// Copyright 2026 The rugscan Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "rugscan/cfg.hpp"
#include "rugscan/config.hpp"
#include "rugscan/facts.hpp"

namespace rugscan {

enum class FindingKind {
    HiddenMint,
    LimitingSellOrder,
    LeakingTokenDirect,
    LeakingTokenFee,
    ProxyRisk,
};

std::string_view to_string(FindingKind k);
std::optional<FindingKind> finding_kind_from_string(std::string_view s);

enum class Severity { high, medium };

struct EvidenceFact {
    std::string predicate;
    std::vector<std::string> args;
    std::vector<uint32_t> offsets;  // instruction offsets appearing in args
};

struct Finding {
    FindingKind kind;
    std::string function;                 // "0x<selector>", "fallback" or "receive"
    std::optional<std::string> variable;  // storage variable for (f, v) detectors
    Severity severity = Severity::high;
    std::vector<EvidenceFact> evidence;   // one entry per rule premise
};

struct ReportStats {
    size_t code_size = 0;
    size_t metadata_trailer_len = 0;
    size_t instruction_count = 0;
    size_t block_count = 0;
    size_t reachable_block_count = 0;
    size_t function_count = 0;
    size_t unresolved_jump_count = 0;
    size_t fact_count = 0;
};

struct Report {
    std::string analyzer_version;
    std::string code_hash;  // keccak-256 of the input bytes
    ReportStats stats;
    std::vector<Finding> findings;

    bool has_high_severity() const;
    nlohmann::json to_json() const;
    std::string to_text() const;
};

struct InvalidInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Individual detectors over an evaluated fact store.
std::vector<Finding> detect_hidden_mint(const FactStore& store);
std::vector<Finding> detect_limiting_sell(const FactStore& store);
std::vector<Finding> detect_leaking_token(const FactStore& store);
std::vector<Finding> detect_proxy_risk(const Cfg& cfg);

struct AnalysisResult {
    Report report;
    Cfg cfg;                // for --dump-cfg
    FactStore facts;        // evaluated store, for --dump-facts
};

/// Full pipeline over raw runtime bytecode. Total: any byte sequence
/// analyzes without error.
AnalysisResult analyze(const Bytes& raw, const AnalyzerConfig& config);

/// Hex front end; throws InvalidInput on odd-length or non-hex text.
AnalysisResult analyze_hex(const std::string& hex, const AnalyzerConfig& config);

}  // namespace rugscan
