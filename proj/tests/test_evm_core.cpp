// rugscan: EVM bytecode rug-pull backdoor analyzer
// Copyright 2026 The rugscan Authors.
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "rugscan/bytecode.hpp"
#include "rugscan/keccak.hpp"

using namespace rugscan;

TEST_CASE("hex decoding accepts 0x prefix and mixed case") {
    CHECK(*hex_decode("0x6001") == Bytes{0x60, 0x01});
    CHECK(*hex_decode("6001") == Bytes{0x60, 0x01});
    CHECK(*hex_decode("0xAbCd") == Bytes{0xab, 0xcd});
    CHECK(!hex_decode("0x123").has_value());   // odd length
    CHECK(!hex_decode("zz").has_value());      // bad digit
    CHECK(hex_decode("")->empty());
    CHECK(hex_encode(Bytes{0xde, 0xad}) == "dead");
}

TEST_CASE("keccak-256 known vectors") {
    CHECK(hex_encode(keccak256("").data(), 32) ==
          "c5d2460186f7233c927e7db2dcc703c0e500b653ca82273b7bfad8045d85a470");
    CHECK(hex_encode(keccak256("abc").data(), 32) ==
          "4e03657aea45a94fc7d47ba826c8d667c0d1e6e33a64a036ec44f58fa12d6c45");
    // Canonical ERC20 selectors.
    CHECK(selector_of("transfer(address,uint256)") == 0xa9059cbb);
    CHECK(selector_of("approve(address,uint256)") == 0x095ea7b3);
    CHECK(selector_of("transferFrom(address,address,uint256)") == 0x23b872dd);
    CHECK(selector_of("mint(address,uint256)") == 0x40c10f19);
    CHECK(selector_of("balanceOf(address)") == 0x70a08231);
}

TEST_CASE("opcode table arities match the instruction set") {
    CHECK(opcode_info(op::ADD).stack_in == 2);
    CHECK(opcode_info(op::ADD).stack_out == 1);
    CHECK(opcode_info(op::SSTORE).stack_in == 2);
    CHECK(opcode_info(op::SSTORE).stack_out == 0);
    CHECK(opcode_info(op::KECCAK256).stack_in == 2);
    CHECK(opcode_info(op::KECCAK256).stack_out == 1);
    CHECK(opcode_info(op::JUMPI).stack_in == 2);
    CHECK(opcode_info(op::JUMPI).stack_out == 0);
    CHECK(opcode_info(op::PUSH0).immediate_len == 0);
    CHECK(opcode_info(op::PUSH0).stack_out == 1);
    for (int n = 1; n <= 32; ++n) {
        CHECK(opcode_info(uint8_t(0x5f + n)).immediate_len == n);
    }
    CHECK(opcode_info(0x0c).category == OpCategory::invalid);
    CHECK(!opcode_info(0x0c).defined);
}

TEST_CASE("control category is exactly the terminator set plus JUMPDEST") {
    std::set<uint8_t> control;
    for (int b = 0; b < 256; ++b)
        if (opcode_info(uint8_t(b)).defined &&
            opcode_info(uint8_t(b)).category == OpCategory::control)
            control.insert(uint8_t(b));
    CHECK(control == std::set<uint8_t>{op::STOP, op::JUMP, op::JUMPI, op::JUMPDEST, op::RETURN,
                                       op::REVERT, op::INVALID, op::SELFDESTRUCT});
}

TEST_CASE("disassembly of a simple add program") {
    Bytecode code = strip_metadata(*hex_decode("6001600101"));
    auto instrs = disassemble(code);
    REQUIRE(instrs.size() == 3);
    CHECK(instrs[0].opcode->mnemonic == "PUSH1");
    CHECK(instrs[0].offset == 0);
    CHECK(instrs[0].immediate_value() == 1);
    CHECK(instrs[1].offset == 2);
    CHECK(instrs[2].opcode->mnemonic == "ADD");
    CHECK(instrs[2].offset == 4);
}

TEST_CASE("single STOP decodes alone") {
    auto instrs = disassemble(strip_metadata(*hex_decode("00")));
    REQUIRE(instrs.size() == 1);
    CHECK(instrs[0].opcode->mnemonic == "STOP");
}

TEST_CASE("truncated PUSH is marked invalid but round-trips") {
    auto instrs = disassemble(strip_metadata(*hex_decode("60")));
    REQUIRE(instrs.size() == 1);
    CHECK(instrs[0].truncated);
    CHECK(instrs[0].category() == OpCategory::invalid);
    CHECK(reencode(instrs) == Bytes{0x60});
}

TEST_CASE("undefined bytes decode as invalid instructions") {
    auto instrs = disassemble(strip_metadata(*hex_decode("0c0c")));
    REQUIRE(instrs.size() == 2);
    CHECK(instrs[0].category() == OpCategory::invalid);
}

namespace {

// Test-local CBOR map encoder, independent of the analyzer's reader.
Bytes cbor_text(const std::string& s) {
    Bytes out;
    REQUIRE(s.size() < 24);
    out.push_back(uint8_t(0x60 + s.size()));
    out.insert(out.end(), s.begin(), s.end());
    return out;
}
Bytes cbor_bytes(size_t n) {
    Bytes out;
    if (n < 24) {
        out.push_back(uint8_t(0x40 + n));
    } else {
        out.push_back(0x58);
        out.push_back(uint8_t(n));
    }
    out.insert(out.end(), n, 0xaa);
    return out;
}

Bytes solidity_style_trailer() {
    // {"ipfs": <34 bytes>, "solc": <3 bytes>}
    Bytes m{0xa2};
    Bytes k1 = cbor_text("ipfs"), v1 = cbor_bytes(34);
    Bytes k2 = cbor_text("solc"), v2 = cbor_bytes(3);
    m.insert(m.end(), k1.begin(), k1.end());
    m.insert(m.end(), v1.begin(), v1.end());
    m.insert(m.end(), k2.begin(), k2.end());
    m.insert(m.end(), v2.begin(), v2.end());
    size_t len = m.size();
    m.push_back(uint8_t(len >> 8));
    m.push_back(uint8_t(len & 0xff));
    return m;
}

}  // namespace

TEST_CASE("metadata trailer stripping") {
    SUBCASE("empty input") {
        Bytecode c = strip_metadata({});
        CHECK(c.bytes.empty());
        CHECK(c.metadata_trailer_len == 0);
    }
    SUBCASE("valid ipfs trailer is stripped") {
        Bytes code = *hex_decode("6001600101");
        Bytes trailer = solidity_style_trailer();
        Bytes all = code;
        all.insert(all.end(), trailer.begin(), trailer.end());
        Bytecode c = strip_metadata(all);
        CHECK(c.metadata_trailer_len == trailer.size());
        CHECK(c.code_len() == code.size());
        // Code bytes are never altered.
        CHECK(Bytes(c.bytes.begin(), c.bytes.begin() + long(c.code_len())) == code);
        auto instrs = disassemble(c);
        CHECK(instrs.size() == 3);
    }
    SUBCASE("code with no trailer is untouched") {
        Bytecode c = strip_metadata(*hex_decode("600160020160005500"));
        CHECK(c.metadata_trailer_len == 0);
    }
    SUBCASE("trailing bytes that are not a known CBOR map stay") {
        Bytes junk = *hex_decode("60016001010004");  // claims len 4, not a map
        CHECK(strip_metadata(junk).metadata_trailer_len == 0);
    }
}

TEST_CASE("round-trip and offset coverage over random byte strings") {
    std::mt19937 rng(42);
    for (int iter = 0; iter < 1000; ++iter) {
        size_t len = rng() % 200;
        Bytes code(len);
        for (auto& b : code) b = uint8_t(rng());
        Bytecode bc = strip_metadata(code);
        auto instrs = disassemble(bc);
        Bytes re = reencode(instrs);
        CHECK(Bytes(bc.bytes.begin(), bc.bytes.begin() + long(bc.code_len())) == re);
        size_t covered = 0;
        uint32_t expect_offset = 0;
        for (const auto& ins : instrs) {
            CHECK(ins.offset == expect_offset);
            expect_offset = ins.next_offset();
            covered += ins.size();
        }
        CHECK(covered == bc.code_len());
    }
}
