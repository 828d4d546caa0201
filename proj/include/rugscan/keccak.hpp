// rugscan: EVM bytecode rug-pull backdoor analyzer
// Copyright 2026 The rugscan Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <cstddef>
#include <string>
#include <string_view>

#include "rugscan/hex.hpp"

namespace rugscan {

/// Keccak-256 as used by the EVM (original Keccak padding, not NIST SHA-3).
std::array<uint8_t, 32> keccak256(const uint8_t* data, size_t len);
std::array<uint8_t, 32> keccak256(const Bytes& data);
std::array<uint8_t, 32> keccak256(std::string_view data);

/// First 4 bytes of keccak256 of a canonical function signature, as a big-endian word.
uint32_t selector_of(std::string_view signature);

std::string keccak256_hex(const Bytes& data);

}  // namespace rugscan
