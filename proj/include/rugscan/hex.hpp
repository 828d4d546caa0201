// rugscan: EVM bytecode rug-pull backdoor analyzer
// Copyright 2026 The rugscan Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rugscan {

using Bytes = std::vector<uint8_t>;

/// Decodes a hex string (with or without "0x" prefix, case-insensitive).
/// Returns nullopt for odd-length or non-hex input.
std::optional<Bytes> hex_decode(std::string_view hex);

std::string hex_encode(const uint8_t* data, size_t len);
std::string hex_encode(const Bytes& data);

}  // namespace rugscan
