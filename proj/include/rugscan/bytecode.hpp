// rugscan: EVM bytecode rug-pull backdoor analyzer
// Copyright 2026 The rugscan Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <vector>

#include "rugscan/hex.hpp"
#include "rugscan/opcodes.hpp"

namespace rugscan {

using u256 = boost::multiprecision::uint256_t;

/// Runtime bytecode with the Solidity CBOR metadata trailer identified.
/// Disassembly covers bytes[0 .. size() - metadata_trailer_len).
struct Bytecode {
    Bytes bytes;
    size_t metadata_trailer_len = 0;

    size_t code_len() const { return bytes.size() - metadata_trailer_len; }
};

/// One decoded instruction. `immediate` holds the raw inline bytes for
/// PUSH1..PUSH32 (possibly shorter than declared when the code is
/// truncated, in which case `truncated` is set and the instruction is
/// treated as invalid).
struct Instruction {
    uint32_t offset = 0;
    const Opcode* opcode = nullptr;
    Bytes immediate;
    bool truncated = false;

    u256 immediate_value() const {
        u256 v = 0;
        for (uint8_t b : immediate) v = (v << 8) | b;
        return v;
    }
    OpCategory category() const {
        return truncated ? OpCategory::invalid : opcode->category;
    }
    uint8_t byte() const { return opcode->byte; }
    uint32_t size() const { return uint32_t(1 + immediate.size()); }
    uint32_t next_offset() const { return offset + size(); }
};

/// Detects and records the Solidity CBOR metadata trailer (a CBOR map
/// containing "ipfs", "bzzr0"/"bzzr1" or "solc", followed by its 2-byte
/// big-endian length). Detection is best-effort; the code bytes are
/// never altered.
Bytecode strip_metadata(Bytes raw);

/// Linear-sweep disassembly over the code region. Total: undefined bytes
/// decode as invalid single-byte instructions, a PUSH running past the
/// end of code is truncated and marked invalid.
std::vector<Instruction> disassemble(const Bytecode& code);

/// Re-encodes an instruction sequence; inverse of disassemble over the
/// code region.
Bytes reencode(const std::vector<Instruction>& instrs);

}  // namespace rugscan
