// rugscan: EVM bytecode rug-pull backdoor analyzer
// Copyright 2026 The rugscan Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>

#include "rugscan/config.hpp"
#include "rugscan/hex.hpp"

namespace rugscan {

struct RpcError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The address exists but holds no code (externally owned account).
struct EmptyCode : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// JSON-RPC eth_getCode client with retries, exponential backoff, a
/// per-endpoint rate limit and an on-disk cache keyed by
/// (chain id, address) so corpus runs reproduce offline.
class RpcClient {
  public:
    RpcClient(std::string rpc_url, RpcConfig config, std::string cache_dir);

    /// Runtime bytecode at `address` ("0x" + 40 hex). Throws RpcError or
    /// EmptyCode.
    Bytes fetch_code(const std::string& address);

    /// Cache lookup only; used when the endpoint is unreachable.
    std::optional<Bytes> cached_code(const std::string& address);

  private:
    std::string rpc_json_call(const std::string& method, const std::string& params_json);
    std::optional<uint64_t> fetch_chain_id();
    void rate_limit();

    std::string url_;
    std::string host_;
    int port_ = 80;
    std::string path_ = "/";
    bool https_ = false;
    RpcConfig config_;
    std::string cache_dir_;
    std::optional<uint64_t> chain_id_;
    std::mutex mutex_;  // serializes requests per endpoint
    long long last_request_ms_ = 0;
};

bool is_address(const std::string& s);

}  // namespace rugscan
