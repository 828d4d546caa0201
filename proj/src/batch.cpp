// rugscan: EVM bytecode rug-pull backdoor analyzer
// Copyright 2026 The rugscan Authors.
// SPDX-License-Identifier: Apache-2.0
#include "rugscan/batch.hpp"

#include <atomic>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <nlohmann/json.hpp>
#include <sstream>
#include <thread>

#include "rugscan/rpc.hpp"

namespace rugscan {

namespace fs = std::filesystem;
using nlohmann::json;

CorpusManifest CorpusManifest::from_json_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open manifest " + path);
    json j = json::parse(f);
    CorpusManifest m;
    m.base_dir = fs::path(path).parent_path().string();
    m.name = j.value("name", fs::path(path).stem().string());
    const json& entries = j.is_array() ? j : j.at("entries");
    for (const json& je : entries) {
        ManifestEntry e;
        e.target = je.at("target").get<std::string>();
        for (const json& k : je.value("expected", json::array())) {
            auto kind = finding_kind_from_string(k.get<std::string>());
            if (!kind)
                throw std::runtime_error("manifest: unknown finding kind " + k.dump());
            e.expected.insert(*kind);
        }
        m.entries.push_back(std::move(e));
    }
    return m;
}

namespace {

std::string read_file(const fs::path& p) {
    std::ifstream f(p);
    if (!f) throw std::runtime_error("cannot open " + p.string());
    return std::string((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
}

}  // namespace

BatchResult run_batch(const CorpusManifest& manifest, const AnalyzerConfig& config,
                      const BatchOptions& options) {
    BatchResult result;
    result.outcomes.resize(manifest.entries.size());

    std::unique_ptr<RpcClient> rpc;
    if (!options.rpc_url.empty())
        rpc = std::make_unique<RpcClient>(options.rpc_url, config.rpc, options.cache_dir);

    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= manifest.entries.size()) return;
            const ManifestEntry& entry = manifest.entries[i];
            TargetOutcome& out = result.outcomes[i];
            out.target = entry.target;
            out.expected = entry.expected;
            try {
                Bytes code;
                if (is_address(entry.target)) {
                    if (!rpc) throw std::runtime_error("address target but no RPC endpoint");
                    code = rpc->fetch_code(entry.target);
                } else {
                    fs::path p = entry.target;
                    if (p.is_relative()) p = fs::path(manifest.base_dir) / p;
                    auto bytes = hex_decode([&] {
                        std::string text = read_file(p);
                        std::string trimmed;
                        for (char c : text)
                            if (!isspace(uint8_t(c))) trimmed.push_back(c);
                        return trimmed;
                    }());
                    if (!bytes) throw InvalidInput("not valid hex: " + p.string());
                    code = std::move(*bytes);
                }
                AnalysisResult ar = analyze(code, config);
                out.report = std::move(ar.report);
                for (const Finding& f : out.report.findings)
                    if (f.severity == Severity::high) out.reported.insert(f.kind);
            } catch (const std::exception& e) {
                out.error = e.what();
            }
        }
    };

    int jobs = options.jobs > 0 ? options.jobs
                                : int(std::max(1u, std::thread::hardware_concurrency()));
    jobs = std::min<int>(jobs, int(manifest.entries.size()) > 0 ? int(manifest.entries.size()) : 1);
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    static const FindingKind kScored[] = {FindingKind::HiddenMint, FindingKind::LimitingSellOrder,
                                          FindingKind::LeakingTokenDirect,
                                          FindingKind::LeakingTokenFee};
    for (FindingKind k : kScored) result.per_kind[k];  // ensure rows exist

    for (const TargetOutcome& out : result.outcomes) {
        if (!out.error.empty()) {
            ++result.failures;
            continue;
        }
        for (FindingKind k : kScored) {
            bool expected = out.expected.count(k) > 0;
            bool reported = out.reported.count(k) > 0;
            KindMetrics& m = result.per_kind[k];
            if (expected && reported) {
                ++m.tp;
                ++result.overall.tp;
            } else if (!expected && reported) {
                ++m.fp;
                ++result.overall.fp;
            } else if (expected && !reported) {
                ++m.fn;
                ++result.overall.fn;
            }
        }
    }

    if (!options.report_dir.empty()) {
        fs::create_directories(options.report_dir);
        for (const TargetOutcome& out : result.outcomes) {
            std::string stem = fs::path(out.target).stem().string();
            if (stem.empty()) stem = out.target;
            std::ofstream f(fs::path(options.report_dir) / (stem + ".report.json"));
            if (out.error.empty())
                f << out.report.to_json().dump(2) << "\n";
            else
                f << json{{"target", out.target}, {"error", out.error}}.dump(2) << "\n";
        }
    }
    return result;
}

nlohmann::json BatchResult::to_json(bool include_reports) const {
    json j;
    auto metrics_json = [](const KindMetrics& m) {
        return json{{"tp", m.tp},           {"fp", m.fp},
                    {"fn", m.fn},           {"precision", m.precision()},
                    {"recall", m.recall()}, {"f1", m.f1()}};
    };
    j["per_kind"] = json::object();
    for (const auto& [kind, m] : per_kind)
        j["per_kind"][std::string(to_string(kind))] = metrics_json(m);
    j["overall"] = metrics_json(overall);
    j["failures"] = failures;
    j["targets"] = json::array();
    for (const TargetOutcome& out : outcomes) {
        json jt;
        jt["target"] = out.target;
        if (!out.error.empty()) jt["error"] = out.error;
        jt["expected"] = json::array();
        for (FindingKind k : out.expected) jt["expected"].push_back(std::string(to_string(k)));
        jt["reported"] = json::array();
        for (FindingKind k : out.reported) jt["reported"].push_back(std::string(to_string(k)));
        if (include_reports && out.error.empty()) jt["report"] = out.report.to_json();
        j["targets"].push_back(std::move(jt));
    }
    return j;
}

std::string BatchResult::to_text() const {
    std::ostringstream os;
    os << std::fixed << std::setprecision(3);
    os << "kind                 tp   fp   fn   precision  recall  f1\n";
    auto row = [&](const std::string& name, const KindMetrics& m) {
        os << std::left << std::setw(20) << name << std::right << std::setw(3) << m.tp
           << std::setw(5) << m.fp << std::setw(5) << m.fn << std::setw(12) << m.precision()
           << std::setw(8) << m.recall() << std::setw(7) << m.f1() << "\n";
    };
    for (const auto& [kind, m] : per_kind) row(std::string(to_string(kind)), m);
    row("overall", overall);
    if (failures) os << failures << " target(s) failed to analyze\n";
    int mismatched = 0;
    for (const TargetOutcome& out : outcomes)
        if (out.error.empty() && out.expected != out.reported) ++mismatched;
    if (mismatched) {
        os << mismatched << " target(s) with label mismatches:\n";
        for (const TargetOutcome& out : outcomes) {
            if (!out.error.empty() || out.expected == out.reported) continue;
            os << "  " << out.target << ": expected {";
            bool first = true;
            for (FindingKind k : out.expected) {
                if (!first) os << ",";
                os << to_string(k);
                first = false;
            }
            os << "} reported {";
            first = true;
            for (FindingKind k : out.reported) {
                if (!first) os << ",";
                os << to_string(k);
                first = false;
            }
            os << "}\n";
        }
    }
    return os.str();
}

}  // namespace rugscan
