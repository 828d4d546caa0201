// rugscan: EVM bytecode rug-pull backdoor analyzer
// Copyright 2026 The rugscan Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: analyze a single contract (hex file or on-chain
// address) or run a labeled batch and print precision/recall metrics.

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>

#include "rugscan/batch.hpp"
#include "rugscan/cfg.hpp"
#include "rugscan/detectors.hpp"
#include "rugscan/rpc.hpp"
#include "rugscan/version.hpp"

namespace {

std::string env_rpc_url() {
    const char* v = std::getenv("RUGSCAN_RPC_URL");
    return v ? v : "";
}

std::string read_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    return std::string((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rugscan: detects owner-controlled backdoors in EVM token bytecode"};
    app.set_version_flag("--version", rugscan::kAnalyzerVersion);
    app.require_subcommand(1);

    std::string target, rpc_url, format = "json", dump_facts_dir, config_path, cache_dir;
    bool dump_cfg = false;
    auto* analyze_cmd = app.add_subcommand("analyze", "analyze one hex file or 0xADDRESS");
    analyze_cmd->add_option("target", target, "bytecode hex file or 0xADDRESS")->required();
    analyze_cmd->add_option("--rpc-url", rpc_url, "JSON-RPC endpoint for address targets");
    analyze_cmd->add_option("--format", format, "json or text")
        ->check(CLI::IsMember({"json", "text"}));
    analyze_cmd->add_flag("--dump-cfg", dump_cfg, "print the CFG edge list");
    analyze_cmd->add_option("--dump-facts", dump_facts_dir, "write relation TSV files here");
    analyze_cmd->add_option("--config", config_path, "analyzer config JSON");
    analyze_cmd->add_option("--cache", cache_dir, "bytecode cache directory");

    std::string manifest_path, out_dir;
    int jobs = 0;
    auto* batch_cmd = app.add_subcommand("batch", "analyze a labeled corpus manifest");
    batch_cmd->add_option("manifest", manifest_path, "manifest JSON")->required();
    batch_cmd->add_option("--jobs", jobs, "parallel analyses (default: hardware)");
    batch_cmd->add_option("--cache", cache_dir, "bytecode cache directory");
    batch_cmd->add_option("--rpc-url", rpc_url, "JSON-RPC endpoint for address targets");
    batch_cmd->add_option("--format", format, "json or text")
        ->check(CLI::IsMember({"json", "text"}));
    batch_cmd->add_option("--config", config_path, "analyzer config JSON");
    batch_cmd->add_option("--out", out_dir, "write per-target reports to this directory");

    CLI11_PARSE(app, argc, argv);

    try {
        rugscan::AnalyzerConfig config;
        if (!config_path.empty()) config = rugscan::AnalyzerConfig::from_json_file(config_path);
        if (rpc_url.empty()) rpc_url = env_rpc_url();

        if (analyze_cmd->parsed()) {
            rugscan::Bytes code;
            if (rugscan::is_address(target)) {
                if (rpc_url.empty()) {
                    std::cerr << "error: address target needs --rpc-url or RUGSCAN_RPC_URL\n";
                    return 1;
                }
                rugscan::RpcClient rpc(rpc_url, config.rpc, cache_dir);
                code = rpc.fetch_code(target);
            } else {
                std::string text = read_file(target);
                std::string trimmed;
                for (char c : text)
                    if (!isspace(uint8_t(c))) trimmed.push_back(c);
                auto bytes = rugscan::hex_decode(trimmed);
                if (!bytes) throw rugscan::InvalidInput("not valid hex: " + target);
                code = std::move(*bytes);
            }

            rugscan::AnalysisResult res = rugscan::analyze(code, config);
            if (dump_cfg) std::cout << rugscan::dump_edges(res.cfg) << "\n";
            if (!dump_facts_dir.empty()) res.facts.export_tsv(dump_facts_dir);
            if (format == "json")
                std::cout << res.report.to_json().dump(2) << "\n";
            else
                std::cout << res.report.to_text();
            return res.report.has_high_severity() ? 2 : 0;
        }

        // batch
        rugscan::CorpusManifest manifest = rugscan::CorpusManifest::from_json_file(manifest_path);
        rugscan::BatchOptions opts;
        opts.jobs = jobs;
        opts.cache_dir = cache_dir;
        opts.rpc_url = rpc_url;
        opts.report_dir = out_dir;
        rugscan::BatchResult result = rugscan::run_batch(manifest, config, opts);
        if (format == "json")
            std::cout << result.to_json(false).dump(2) << "\n";
        else
            std::cout << result.to_text();
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
