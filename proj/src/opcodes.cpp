// rugscan: EVM bytecode rug-pull backdoor analyzer
// Copyright 2026 The rugscan Authors.
// SPDX-License-Identifier: Apache-2.0
#include "rugscan/opcodes.hpp"

#include <string>

namespace rugscan {

std::string_view to_string(OpCategory c) {
    switch (c) {
        case OpCategory::arithmetic: return "arithmetic";
        case OpCategory::comparison: return "comparison";
        case OpCategory::hash: return "hash";
        case OpCategory::environment: return "environment";
        case OpCategory::storage: return "storage";
        case OpCategory::memory: return "memory";
        case OpCategory::control: return "control";
        case OpCategory::call: return "call";
        case OpCategory::log: return "log";
        case OpCategory::system: return "system";
        case OpCategory::invalid: return "invalid";
    }
    return "invalid";
}

namespace {

// Storage for PUSHn/DUPn/SWAPn/LOGn mnemonics so string_views stay valid.
const std::array<std::string, 33>& push_names() {
    static const auto names = [] {
        std::array<std::string, 33> a;
        for (int i = 0; i <= 32; ++i) a[i] = "PUSH" + std::to_string(i);
        return a;
    }();
    return names;
}
const std::array<std::string, 17>& dup_names() {
    static const auto names = [] {
        std::array<std::string, 17> a;
        for (int i = 1; i <= 16; ++i) a[i] = "DUP" + std::to_string(i);
        return a;
    }();
    return names;
}
const std::array<std::string, 17>& swap_names() {
    static const auto names = [] {
        std::array<std::string, 17> a;
        for (int i = 1; i <= 16; ++i) a[i] = "SWAP" + std::to_string(i);
        return a;
    }();
    return names;
}
const std::array<std::string, 5>& log_names() {
    static const auto names = [] {
        std::array<std::string, 5> a;
        for (int i = 0; i <= 4; ++i) a[i] = "LOG" + std::to_string(i);
        return a;
    }();
    return names;
}

std::array<Opcode, 256> build_table() {
    std::array<Opcode, 256> t{};
    for (int i = 0; i < 256; ++i) t[i] = Opcode{uint8_t(i), "UNKNOWN", 0, 0, 0, OpCategory::invalid, false};

    auto def = [&](uint8_t b, std::string_view m, uint8_t in, uint8_t out, OpCategory c) {
        t[b] = Opcode{b, m, 0, in, out, c, true};
    };
    using C = OpCategory;

    def(op::STOP, "STOP", 0, 0, C::control);
    def(op::ADD, "ADD", 2, 1, C::arithmetic);
    def(op::MUL, "MUL", 2, 1, C::arithmetic);
    def(op::SUB, "SUB", 2, 1, C::arithmetic);
    def(op::DIV, "DIV", 2, 1, C::arithmetic);
    def(op::SDIV, "SDIV", 2, 1, C::arithmetic);
    def(op::MOD, "MOD", 2, 1, C::arithmetic);
    def(op::SMOD, "SMOD", 2, 1, C::arithmetic);
    def(op::ADDMOD, "ADDMOD", 3, 1, C::arithmetic);
    def(op::MULMOD, "MULMOD", 3, 1, C::arithmetic);
    def(op::EXP, "EXP", 2, 1, C::arithmetic);
    def(op::SIGNEXTEND, "SIGNEXTEND", 2, 1, C::arithmetic);

    def(op::LT, "LT", 2, 1, C::comparison);
    def(op::GT, "GT", 2, 1, C::comparison);
    def(op::SLT, "SLT", 2, 1, C::comparison);
    def(op::SGT, "SGT", 2, 1, C::comparison);
    def(op::EQ, "EQ", 2, 1, C::comparison);
    def(op::ISZERO, "ISZERO", 1, 1, C::comparison);
    def(op::AND, "AND", 2, 1, C::comparison);
    def(op::OR, "OR", 2, 1, C::comparison);
    def(op::XOR, "XOR", 2, 1, C::comparison);
    def(op::NOT, "NOT", 1, 1, C::comparison);
    def(op::BYTE, "BYTE", 2, 1, C::comparison);
    def(op::SHL, "SHL", 2, 1, C::comparison);
    def(op::SHR, "SHR", 2, 1, C::comparison);
    def(op::SAR, "SAR", 2, 1, C::comparison);

    def(op::KECCAK256, "KECCAK256", 2, 1, C::hash);

    def(op::ADDRESS, "ADDRESS", 0, 1, C::environment);
    def(op::BALANCE, "BALANCE", 1, 1, C::environment);
    def(op::ORIGIN, "ORIGIN", 0, 1, C::environment);
    def(op::CALLER, "CALLER", 0, 1, C::environment);
    def(op::CALLVALUE, "CALLVALUE", 0, 1, C::environment);
    def(op::CALLDATALOAD, "CALLDATALOAD", 1, 1, C::environment);
    def(op::CALLDATASIZE, "CALLDATASIZE", 0, 1, C::environment);
    def(op::CALLDATACOPY, "CALLDATACOPY", 3, 0, C::memory);
    def(op::CODESIZE, "CODESIZE", 0, 1, C::environment);
    def(op::CODECOPY, "CODECOPY", 3, 0, C::memory);
    def(op::GASPRICE, "GASPRICE", 0, 1, C::environment);
    def(op::EXTCODESIZE, "EXTCODESIZE", 1, 1, C::environment);
    def(op::EXTCODECOPY, "EXTCODECOPY", 4, 0, C::memory);
    def(op::RETURNDATASIZE, "RETURNDATASIZE", 0, 1, C::environment);
    def(op::RETURNDATACOPY, "RETURNDATACOPY", 3, 0, C::memory);
    def(op::EXTCODEHASH, "EXTCODEHASH", 1, 1, C::environment);

    def(op::BLOCKHASH, "BLOCKHASH", 1, 1, C::environment);
    def(op::COINBASE, "COINBASE", 0, 1, C::environment);
    def(op::TIMESTAMP, "TIMESTAMP", 0, 1, C::environment);
    def(op::NUMBER, "NUMBER", 0, 1, C::environment);
    def(op::PREVRANDAO, "PREVRANDAO", 0, 1, C::environment);
    def(op::GASLIMIT, "GASLIMIT", 0, 1, C::environment);
    def(op::CHAINID, "CHAINID", 0, 1, C::environment);
    def(op::SELFBALANCE, "SELFBALANCE", 0, 1, C::environment);
    def(op::BASEFEE, "BASEFEE", 0, 1, C::environment);

    def(op::POP, "POP", 1, 0, C::system);
    def(op::MLOAD, "MLOAD", 1, 1, C::memory);
    def(op::MSTORE, "MSTORE", 2, 0, C::memory);
    def(op::MSTORE8, "MSTORE8", 2, 0, C::memory);
    def(op::SLOAD, "SLOAD", 1, 1, C::storage);
    def(op::SSTORE, "SSTORE", 2, 0, C::storage);
    def(op::JUMP, "JUMP", 1, 0, C::control);
    def(op::JUMPI, "JUMPI", 2, 0, C::control);
    def(op::PC, "PC", 0, 1, C::environment);
    def(op::MSIZE, "MSIZE", 0, 1, C::memory);
    def(op::GAS, "GAS", 0, 1, C::environment);
    def(op::JUMPDEST, "JUMPDEST", 0, 0, C::control);

    def(op::PUSH0, "PUSH0", 0, 1, C::system);
    for (int n = 1; n <= 32; ++n) {
        uint8_t b = uint8_t(0x5f + n);
        t[b] = Opcode{b, push_names()[n], uint8_t(n), 0, 1, C::system, true};
    }
    for (int n = 1; n <= 16; ++n) {
        uint8_t b = uint8_t(0x80 + n - 1);
        t[b] = Opcode{b, dup_names()[n], 0, uint8_t(n), uint8_t(n + 1), C::system, true};
        uint8_t s = uint8_t(0x90 + n - 1);
        t[s] = Opcode{s, swap_names()[n], 0, uint8_t(n + 1), uint8_t(n + 1), C::system, true};
    }
    for (int n = 0; n <= 4; ++n) {
        uint8_t b = uint8_t(0xa0 + n);
        t[b] = Opcode{b, log_names()[n], 0, uint8_t(n + 2), 0, C::log, true};
    }

    def(op::CREATE, "CREATE", 3, 1, C::call);
    def(op::CALL, "CALL", 7, 1, C::call);
    def(op::CALLCODE, "CALLCODE", 7, 1, C::call);
    def(op::RETURN, "RETURN", 2, 0, C::control);
    def(op::DELEGATECALL, "DELEGATECALL", 6, 1, C::call);
    def(op::CREATE2, "CREATE2", 4, 1, C::call);
    def(op::STATICCALL, "STATICCALL", 6, 1, C::call);
    def(op::REVERT, "REVERT", 2, 0, C::control);
    def(op::INVALID, "INVALID", 0, 0, C::control);
    def(op::SELFDESTRUCT, "SELFDESTRUCT", 1, 0, C::control);

    return t;
}

}  // namespace

const std::array<Opcode, 256>& opcode_table() {
    static const auto table = build_table();
    return table;
}

}  // namespace rugscan
