// rugscan: EVM bytecode rug-pull backdoor analyzer
// Copyright 2026 The rugscan Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "rugscan/config.hpp"
#include "rugscan/detectors.hpp"

namespace rugscan {

struct ManifestEntry {
    std::string target;  // hex file path (relative to the manifest) or 0x address
    std::set<FindingKind> expected;
};

struct CorpusManifest {
    std::string name;
    std::string base_dir;
    std::vector<ManifestEntry> entries;

    static CorpusManifest from_json_file(const std::string& path);
};

struct KindMetrics {
    int tp = 0, fp = 0, fn = 0;
    double precision() const { return tp + fp == 0 ? 1.0 : double(tp) / (tp + fp); }
    double recall() const { return tp + fn == 0 ? 1.0 : double(tp) / (tp + fn); }
    double f1() const {
        double p = precision(), r = recall();
        return p + r == 0 ? 0.0 : 2 * p * r / (p + r);
    }
};

struct TargetOutcome {
    std::string target;
    std::string error;  // nonempty when the target failed to analyze
    std::set<FindingKind> expected;
    std::set<FindingKind> reported;  // high-severity kinds only
    Report report;
};

struct BatchResult {
    std::vector<TargetOutcome> outcomes;
    std::map<FindingKind, KindMetrics> per_kind;  // ProxyRisk excluded
    KindMetrics overall;
    int failures = 0;

    nlohmann::json to_json(bool include_reports) const;
    std::string to_text() const;
};

struct BatchOptions {
    int jobs = 0;  // 0 = available parallelism
    std::string cache_dir;
    std::string rpc_url;
    std::string report_dir;  // when set, per-target reports are written here
};

/// Analyzes every manifest target (up to `jobs` in parallel) and scores
/// the reported high-severity kinds against the expected labels.
BatchResult run_batch(const CorpusManifest& manifest, const AnalyzerConfig& config,
                      const BatchOptions& options);

}  // namespace rugscan
