// rugscan: EVM bytecode rug-pull backdoor analyzer
// Copyright 2026 The rugscan Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <string_view>

namespace rugscan {

enum class OpCategory : uint8_t {
    arithmetic,
    comparison,
    hash,
    environment,
    storage,
    memory,
    control,
    call,
    log,
    system,
    invalid,
};

std::string_view to_string(OpCategory c);

/// Static description of one opcode byte: mnemonic, immediate width,
/// stack arity and coarse category. The table covers the Shanghai
/// instruction set (PUSH0 included); undefined bytes are `invalid`.
struct Opcode {
    uint8_t byte = 0;
    std::string_view mnemonic = "UNKNOWN";
    uint8_t immediate_len = 0;  // bytes of inline data, PUSH1..PUSH32 only
    uint8_t stack_in = 0;
    uint8_t stack_out = 0;
    OpCategory category = OpCategory::invalid;
    bool defined = false;

    constexpr bool is_push() const { return byte >= 0x5f && byte <= 0x7f; }
    constexpr bool terminates() const { return category == OpCategory::control && byte != 0x5b; }
};

// Byte values used throughout the analysis.
namespace op {
constexpr uint8_t STOP = 0x00, ADD = 0x01, MUL = 0x02, SUB = 0x03, DIV = 0x04, SDIV = 0x05,
                  MOD = 0x06, SMOD = 0x07, ADDMOD = 0x08, MULMOD = 0x09, EXP = 0x0a,
                  SIGNEXTEND = 0x0b;
constexpr uint8_t LT = 0x10, GT = 0x11, SLT = 0x12, SGT = 0x13, EQ = 0x14, ISZERO = 0x15,
                  AND = 0x16, OR = 0x17, XOR = 0x18, NOT = 0x19, BYTE = 0x1a, SHL = 0x1b,
                  SHR = 0x1c, SAR = 0x1d;
constexpr uint8_t KECCAK256 = 0x20;
constexpr uint8_t ADDRESS = 0x30, BALANCE = 0x31, ORIGIN = 0x32, CALLER = 0x33, CALLVALUE = 0x34,
                  CALLDATALOAD = 0x35, CALLDATASIZE = 0x36, CALLDATACOPY = 0x37, CODESIZE = 0x38,
                  CODECOPY = 0x39, GASPRICE = 0x3a, EXTCODESIZE = 0x3b, EXTCODECOPY = 0x3c,
                  RETURNDATASIZE = 0x3d, RETURNDATACOPY = 0x3e, EXTCODEHASH = 0x3f;
constexpr uint8_t BLOCKHASH = 0x40, COINBASE = 0x41, TIMESTAMP = 0x42, NUMBER = 0x43,
                  PREVRANDAO = 0x44, GASLIMIT = 0x45, CHAINID = 0x46, SELFBALANCE = 0x47,
                  BASEFEE = 0x48;
constexpr uint8_t POP = 0x50, MLOAD = 0x51, MSTORE = 0x52, MSTORE8 = 0x53, SLOAD = 0x54,
                  SSTORE = 0x55, JUMP = 0x56, JUMPI = 0x57, PC = 0x58, MSIZE = 0x59, GAS = 0x5a,
                  JUMPDEST = 0x5b, PUSH0 = 0x5f;
constexpr uint8_t PUSH1 = 0x60, PUSH2 = 0x61, PUSH4 = 0x63, PUSH20 = 0x73, PUSH32 = 0x7f;
constexpr uint8_t DUP1 = 0x80, SWAP1 = 0x90;
constexpr uint8_t LOG0 = 0xa0;
constexpr uint8_t CREATE = 0xf0, CALL = 0xf1, CALLCODE = 0xf2, RETURN = 0xf3, DELEGATECALL = 0xf4,
                  CREATE2 = 0xf5, STATICCALL = 0xfa, REVERT = 0xfd, INVALID = 0xfe,
                  SELFDESTRUCT = 0xff;
}  // namespace op

/// The full 256-entry opcode table.
const std::array<Opcode, 256>& opcode_table();

inline const Opcode& opcode_info(uint8_t byte) { return opcode_table()[byte]; }

}  // namespace rugscan
