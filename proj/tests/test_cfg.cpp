// rugscan: EVM bytecode rug-pull backdoor analyzer
// Copyright 2026 The rugscan Authors.
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "asm.hpp"
#include "microevm.hpp"
#include "oracle_fixtures.hpp"
#include "rugscan/cfg.hpp"

using namespace rugscan;
using namespace rugscan::testsupport;

namespace {
Cfg build(const Bytes& code) {
    AnalyzerConfig config;
    return build_cfg(disassemble(strip_metadata(code)), config);
}
}  // namespace

TEST_CASE("split_blocks basics") {
    SUBCASE("push-stop is a single block") {
        auto blocks = split_blocks(disassemble(strip_metadata(*hex_decode("600000"))));
        REQUIRE(blocks.size() == 1);
        CHECK(blocks.at(0).instructions.size() == 2);
    }
    SUBCASE("every JUMPDEST starts a block") {
        auto blocks = split_blocks(disassemble(strip_metadata(*hex_decode("5b005b00"))));
        REQUIRE(blocks.size() == 2);
        CHECK(blocks.count(0));
        CHECK(blocks.count(2));
    }
    SUBCASE("a block has at most one control instruction and it is last") {
        auto blocks = split_blocks(disassemble(strip_metadata(three_selector_dispatcher())));
        CHECK(blocks.size() >= 7);  // guard, extraction+eq, 2 more eq, fallback, 3 bodies
        for (const auto& [id, b] : blocks) {
            int control = 0;
            for (size_t i = 0; i < b.instructions.size(); ++i) {
                const auto& ins = b.instructions[i];
                if (ins.category() == OpCategory::control && ins.byte() != op::JUMPDEST) {
                    ++control;
                    CHECK(i == b.instructions.size() - 1);
                }
            }
            CHECK(control <= 1);
        }
    }
}

TEST_CASE("constant jump gains a jump edge") {
    Asm a;
    a.jump_to("dest");
    a.op(op::STOP);
    a.jumpdest("dest").op(op::STOP);
    Cfg cfg = build(a.assemble());
    const BasicBlock& entry = cfg.blocks.at(0);
    REQUIRE(entry.successors.size() == 1);
    CHECK(entry.successors.begin()->kind == EdgeKind::jump);
    CHECK(entry.successors.begin()->target == a.offset_of("dest"));
    CHECK(cfg.unresolved_jumps.empty());
}

TEST_CASE("jump with storage-loaded target is unresolved") {
    // PUSH1 0; SLOAD; JUMP
    Cfg cfg = build(*hex_decode("60005456"));
    REQUIRE(cfg.unresolved_jumps.size() == 1);
    CHECK(*cfg.unresolved_jumps.begin() == 3);  // the JUMP's offset
    const BasicBlock& entry = cfg.blocks.at(0);
    REQUIRE(entry.successors.size() == 1);
    CHECK(entry.successors.begin()->kind == EdgeKind::unresolved);
}

TEST_CASE("jumpi gets branch_true and branch_false edges") {
    Asm a;
    a.push(1).jumpi_to("yes");
    a.op(op::STOP);
    a.jumpdest("yes").op(op::STOP);
    Cfg cfg = build(a.assemble());
    const BasicBlock& entry = cfg.blocks.at(0);
    std::set<EdgeKind> kinds;
    for (const Edge& e : entry.successors) kinds.insert(e.kind);
    CHECK(kinds == std::set<EdgeKind>{EdgeKind::branch_true, EdgeKind::branch_false});
}

TEST_CASE("two-level call-return pattern resolves both return edges") {
    auto programs = oracle_programs();
    const Bytes* callret = nullptr;
    for (const auto& [name, code] : programs)
        if (name == "callret2") callret = &code;
    REQUIRE(callret);
    Cfg cfg = build(*callret);
    CHECK(cfg.unresolved_jumps.empty());

    // The shared subroutine block must have jump edges back to both
    // return sites.
    int return_edges = 0;
    for (const auto& [id, block] : cfg.blocks) {
        if (block.instructions.back().byte() != op::JUMP) continue;
        if (block.instructions.front().byte() != op::JUMPDEST) continue;
        return_edges = int(block.successors.size());
    }
    CHECK(return_edges == 2);

    MicroEvm oracle;
    auto transitions = oracle.explore(*callret);
    for (const auto& [from, to] : transitions) {
        const BasicBlock* b = cfg.block(from);
        REQUIRE(b != nullptr);
        bool found = false;
        for (const Edge& e : b->successors) found = found || e.target == to;
        CHECK_MESSAGE(found, "oracle transition ", from, " -> ", to, " missing from CFG");
    }
}

TEST_CASE("oracle transitions are a subset of CFG edges on all programs") {
    for (const auto& [name, code] : oracle_programs()) {
        CAPTURE(name);
        Cfg cfg = build(code);
        CHECK(cfg.unresolved_jumps.empty());
        MicroEvm oracle;
        auto transitions = oracle.explore(code);
        CHECK(!transitions.empty());
        for (const auto& [from, to] : transitions) {
            const BasicBlock* b = cfg.block(from);
            REQUIRE(b != nullptr);
            bool found = false;
            for (const Edge& e : b->successors) found = found || e.target == to;
            CHECK_MESSAGE(found, name, ": oracle transition ", from, " -> ", to,
                          " missing from CFG");
        }
    }
}

TEST_CASE("determinism: identical bytecode yields identical edge dumps") {
    for (const auto& [name, code] : oracle_programs()) {
        Cfg a = build(code);
        Cfg b = build(code);
        CHECK(dump_edges(a) == dump_edges(b));
    }
}

TEST_CASE("function recovery on a dispatcher") {
    Cfg cfg = build(three_selector_dispatcher());
    std::set<std::string> names;
    for (const FunctionInfo& f : cfg.functions) names.insert(f.name());
    CHECK(names.count("0xa9059cbb"));
    CHECK(names.count("0x095ea7b3"));
    CHECK(names.count("0x70a08231"));
    CHECK(names.count("fallback"));
    for (const FunctionInfo& f : cfg.functions) {
        if (f.kind == FunctionInfo::Kind::selector) {
            CHECK(f.is_public);
            CHECK(!f.body_blocks.empty());
        } else {
            CHECK(!f.is_public);
        }
    }
    // Selector uniqueness.
    std::set<uint32_t> sels;
    for (const FunctionInfo& f : cfg.functions)
        if (f.kind == FunctionInfo::Kind::selector) CHECK(sels.insert(f.selector).second);
}

TEST_CASE("contract with no dispatcher yields only a fallback") {
    Cfg cfg = build(eip1967_proxy());
    REQUIRE(cfg.functions.size() == 1);
    CHECK(cfg.functions[0].kind == FunctionInfo::Kind::fallback);
    CHECK(!cfg.functions[0].is_public);
    // All reachable blocks belong to the fallback body.
    for (const auto& [id, b] : cfg.blocks)
        if (b.reachable) CHECK(cfg.functions[0].body_blocks.count(id));
}

TEST_CASE("orphan jumpdest blocks are retained but unreachable") {
    Asm a;
    a.op(op::STOP);
    a.jumpdest("orphan").op(op::STOP);
    Cfg cfg = build(a.assemble());
    REQUIRE(cfg.blocks.size() == 2);
    CHECK(cfg.blocks.at(0).reachable);
    CHECK(!cfg.blocks.at(1).reachable);
}

TEST_CASE("resolve_jumps terminates when entry states exceed the bound") {
    // A loop that accumulates distinct constants forces state collapse.
    Asm a;
    a.push(100);
    a.jumpdest("loop");
    a.push(1).op(op::SWAP1).op(op::SUB);
    a.op(op::DUP1).jumpi_to("loop");
    a.op(op::POP).op(op::STOP);
    Cfg cfg = build(a.assemble());
    CHECK(cfg.blocks.size() >= 2);  // completing at all proves termination
}

TEST_CASE("edge targets start with JUMPDEST except fallthrough") {
    for (const auto& [name, code] : oracle_programs()) {
        Cfg cfg = build(code);
        for (const auto& [id, block] : cfg.blocks) {
            for (const Edge& e : block.successors) {
                if (e.target == kUnresolvedTarget) continue;
                if (e.kind == EdgeKind::fallthrough || e.kind == EdgeKind::branch_false) continue;
                const BasicBlock* t = cfg.block(e.target);
                REQUIRE(t != nullptr);
                CHECK(t->starts_with_jumpdest());
            }
        }
    }
}
