// rugscan: EVM bytecode rug-pull backdoor analyzer
// Copyright 2026 The rugscan Authors.
// SPDX-License-Identifier: Apache-2.0
#include "rugscan/rpc.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

namespace rugscan {

namespace fs = std::filesystem;
using nlohmann::json;

bool is_address(const std::string& s) {
    if (s.size() != 42 || s[0] != '0' || (s[1] != 'x' && s[1] != 'X')) return false;
    return hex_decode(s).has_value();
}

namespace {

std::string lower(std::string s) {
    for (char& c : s) c = char(tolower(uint8_t(c)));
    return s;
}

long long now_ms() {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

}  // namespace

RpcClient::RpcClient(std::string rpc_url, RpcConfig config, std::string cache_dir)
    : url_(std::move(rpc_url)), config_(config), cache_dir_(std::move(cache_dir)) {
    std::string rest = url_;
    if (rest.rfind("https://", 0) == 0) {
        https_ = true;
        port_ = 443;
        rest = rest.substr(8);
    } else if (rest.rfind("http://", 0) == 0) {
        rest = rest.substr(7);
    }
    size_t slash = rest.find('/');
    std::string hostport = slash == std::string::npos ? rest : rest.substr(0, slash);
    path_ = slash == std::string::npos ? "/" : rest.substr(slash);
    size_t colon = hostport.find(':');
    if (colon == std::string::npos) {
        host_ = hostport;
    } else {
        host_ = hostport.substr(0, colon);
        port_ = std::stoi(hostport.substr(colon + 1));
    }
}

void RpcClient::rate_limit() {
    if (config_.min_interval_ms <= 0) return;
    long long now = now_ms();
    long long wait = last_request_ms_ + config_.min_interval_ms - now;
    if (wait > 0) std::this_thread::sleep_for(std::chrono::milliseconds(wait));
    last_request_ms_ = now_ms();
}

std::string RpcClient::rpc_json_call(const std::string& method, const std::string& params_json) {
    std::string body =
        R"({"jsonrpc":"2.0","id":1,"method":")" + method + R"(","params":)" + params_json + "}";
    std::string last_error;
    int backoff = config_.backoff_ms;
    for (int attempt = 0; attempt <= config_.retries; ++attempt) {
        if (attempt > 0) {
            std::this_thread::sleep_for(std::chrono::milliseconds(backoff));
            backoff *= 2;
        }
        rate_limit();
        httplib::Client cli(host_, port_);
        cli.set_connection_timeout(config_.timeout_sec);
        cli.set_read_timeout(config_.timeout_sec);
        auto res = cli.Post(path_, body, "application/json");
        if (!res) {
            last_error = "connection failed (" + httplib::to_string(res.error()) + ")";
            continue;
        }
        if (res->status != 200) {
            last_error = "HTTP " + std::to_string(res->status);
            if (res->status >= 400 && res->status < 500) break;  // not transient
            continue;
        }
        json j;
        try {
            j = json::parse(res->body);
        } catch (const json::parse_error&) {
            throw RpcError("malformed JSON-RPC response: " + res->body.substr(0, 120));
        }
        if (j.contains("error") && !j["error"].is_null()) {
            throw RpcError("JSON-RPC error: " + j["error"].dump().substr(0, 200));
        }
        if (!j.contains("result")) throw RpcError("JSON-RPC response has no result");
        if (!j["result"].is_string())
            throw RpcError("unexpected result type: " + j["result"].dump().substr(0, 120));
        return j["result"].get<std::string>();
    }
    throw RpcError("RPC call " + method + " failed after retries: " + last_error);
}

std::optional<uint64_t> RpcClient::fetch_chain_id() {
    if (chain_id_) return chain_id_;
    try {
        std::string hex = rpc_json_call("eth_chainId", "[]");
        chain_id_ = std::stoull(hex, nullptr, 16);
    } catch (const std::exception&) {
        return std::nullopt;
    }
    return chain_id_;
}

std::optional<Bytes> RpcClient::cached_code(const std::string& address) {
    if (cache_dir_.empty()) return std::nullopt;
    std::string addr = lower(address);
    std::error_code ec;
    if (!fs::exists(cache_dir_, ec)) return std::nullopt;
    // Chain id may be unknown offline; scan per-chain directories.
    for (const auto& chain_dir : fs::directory_iterator(cache_dir_, ec)) {
        fs::path p = chain_dir.path() / (addr + ".json");
        std::ifstream f(p);
        if (!f) continue;
        try {
            json j = json::parse(f);
            auto code = hex_decode(j.at("code").get<std::string>());
            if (code) return code;
        } catch (const std::exception&) {
            continue;
        }
    }
    return std::nullopt;
}

Bytes RpcClient::fetch_code(const std::string& address) {
    if (!is_address(address)) throw RpcError("malformed address: " + address);
    std::lock_guard<std::mutex> lock(mutex_);
    std::string addr = lower(address);

    std::string result;
    try {
        result = rpc_json_call("eth_getCode", R"([")" + addr + R"(","latest"])");
    } catch (const RpcError&) {
        if (auto cached = cached_code(addr)) return *cached;
        throw;
    }
    auto code = hex_decode(result);
    if (!code) throw RpcError("eth_getCode returned non-hex payload");
    if (code->empty()) throw EmptyCode("address " + addr + " has no code");

    if (!cache_dir_.empty()) {
        uint64_t chain = fetch_chain_id().value_or(0);
        fs::path dir = fs::path(cache_dir_) / std::to_string(chain);
        std::error_code ec;
        fs::create_directories(dir, ec);
        json j = {{"address", addr},
                  {"chain_id", chain},
                  {"code", "0x" + hex_encode(*code)},
                  {"source", url_}};
        std::ofstream f(dir / (addr + ".json"));
        f << j.dump(2) << "\n";
    }
    return *code;
}

}  // namespace rugscan
