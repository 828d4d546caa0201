// rugscan: EVM bytecode rug-pull backdoor analyzer
// Copyright 2026 The rugscan Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "rugscan/config.hpp"
#include "rugscan/value.hpp"

namespace rugscan {

enum class EdgeKind { fallthrough, jump, branch_true, branch_false, unresolved };

std::string_view to_string(EdgeKind k);

/// Sentinel target for unresolved jump edges.
constexpr uint32_t kUnresolvedTarget = 0xffffffff;

struct Edge {
    uint32_t target = 0;  // block id (start offset) or kUnresolvedTarget
    EdgeKind kind = EdgeKind::fallthrough;

    auto operator<=>(const Edge&) const = default;
};

/// Block ids equal the start offset of the block, so identical bytecode
/// always produces an identical graph.
struct BasicBlock {
    uint32_t id = 0;
    uint32_t start_offset = 0;
    std::vector<Instruction> instructions;
    std::set<Edge> successors;
    bool reachable = false;

    const Instruction& terminator() const { return instructions.back(); }
    bool starts_with_jumpdest() const {
        return !instructions.empty() && instructions.front().byte() == op::JUMPDEST;
    }
    bool ends_in_control() const {
        return !instructions.empty() &&
               instructions.back().category() == OpCategory::control &&
               instructions.back().byte() != op::JUMPDEST;
    }
};

struct FunctionInfo {
    enum class Kind { selector, fallback, receive };
    Kind kind = Kind::fallback;
    uint32_t selector = 0;  // valid when kind == selector
    uint32_t entry_block = 0;
    std::set<uint32_t> body_blocks;
    bool is_public = false;

    std::string name() const;
};

/// One observed symbolic execution of an instruction: the operand values
/// popped and the value pushed (when the opcode produces one). Records are
/// deduplicated structurally; an instruction reached under several entry
/// states keeps one record per distinct operand vector.
struct ExecRecord {
    uint32_t offset = 0;
    uint8_t opbyte = 0;
    std::vector<Value> operands;
    std::optional<Value> result;
};

struct Cfg {
    std::map<uint32_t, BasicBlock> blocks;
    uint32_t entry = 0;
    std::vector<FunctionInfo> functions;
    std::set<uint32_t> unresolved_jumps;   // offsets of JUMP/JUMPI with unknown target
    std::vector<ExecRecord> exec_records;  // ordered by (offset, discovery)
    // Distinct symbolic entry stacks observed per block; function-body
    // recovery replays execution from these so that shared subroutines
    // return only along the paths belonging to each function.
    std::map<uint32_t, std::vector<std::vector<Value>>> block_entry_stacks;

    const BasicBlock* block_of_offset(uint32_t instr_offset) const;
    const BasicBlock* block(uint32_t id) const {
        auto it = blocks.find(id);
        return it == blocks.end() ? nullptr : &it->second;
    }
};

/// Partitions an instruction stream into basic blocks. Leaders: offset 0,
/// every JUMPDEST, every instruction following a control instruction.
std::map<uint32_t, BasicBlock> split_blocks(const std::vector<Instruction>& instrs);

/// Abstract interpretation with a per-block symbolic stack: propagates
/// entry states to a fixpoint, resolving constant jump targets. Bounded
/// state counts guarantee termination; unresolvable targets degrade
/// coverage instead of failing.
Cfg resolve_jumps(std::map<uint32_t, BasicBlock> blocks, const AnalyzerConfig& config);

/// Detects the Solidity selector dispatcher and populates cfg.functions;
/// a contract with no dispatcher gets a single fallback function covering
/// all reachable blocks. Body blocks come from a per-function symbolic
/// replay so stack-carried subroutine returns stay within the function.
void recover_functions(Cfg& cfg, const AnalyzerConfig& config = {});

/// Full pipeline: split, resolve, recover.
Cfg build_cfg(const std::vector<Instruction>& instrs, const AnalyzerConfig& config);

/// Plain-text edge list ("block@0x..-> block@0x.. [kind]"), one edge per
/// line, sorted; used for debugging and golden tests.
std::string dump_edges(const Cfg& cfg);

/// True when the block starts a straight-line chain (no branching) that
/// terminates in REVERT or INVALID.
bool is_revert_chain(const Cfg& cfg, uint32_t block_id);

}  // namespace rugscan
