// rugscan: EVM bytecode rug-pull backdoor analyzer
// Copyright 2026 The rugscan Authors.
// SPDX-License-Identifier: Apache-2.0
#include "rugscan/cfg.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <unordered_map>

namespace rugscan {

std::string_view to_string(EdgeKind k) {
    switch (k) {
        case EdgeKind::fallthrough: return "fallthrough";
        case EdgeKind::jump: return "jump";
        case EdgeKind::branch_true: return "branch_true";
        case EdgeKind::branch_false: return "branch_false";
        case EdgeKind::unresolved: return "unresolved";
    }
    return "?";
}

std::string FunctionInfo::name() const {
    switch (kind) {
        case Kind::fallback: return "fallback";
        case Kind::receive: return "receive";
        case Kind::selector: {
            char buf[16];
            snprintf(buf, sizeof buf, "0x%08x", selector);
            return buf;
        }
    }
    return "fallback";
}

const BasicBlock* Cfg::block_of_offset(uint32_t instr_offset) const {
    auto it = blocks.upper_bound(instr_offset);
    if (it == blocks.begin()) return nullptr;
    --it;
    const BasicBlock& b = it->second;
    uint32_t endo = b.instructions.empty() ? b.start_offset
                                           : b.instructions.back().next_offset();
    if (instr_offset >= b.start_offset && instr_offset < endo) return &b;
    return nullptr;
}

std::map<uint32_t, BasicBlock> split_blocks(const std::vector<Instruction>& instrs) {
    std::map<uint32_t, BasicBlock> blocks;
    if (instrs.empty()) return blocks;

    std::set<uint32_t> leaders;
    leaders.insert(instrs.front().offset);
    for (size_t i = 0; i < instrs.size(); ++i) {
        const Instruction& ins = instrs[i];
        if (ins.byte() == op::JUMPDEST) leaders.insert(ins.offset);
        if (ins.category() == OpCategory::control && ins.byte() != op::JUMPDEST &&
            i + 1 < instrs.size())
            leaders.insert(instrs[i + 1].offset);
    }

    BasicBlock* cur = nullptr;
    for (const Instruction& ins : instrs) {
        if (leaders.count(ins.offset)) {
            BasicBlock b;
            b.id = b.start_offset = ins.offset;
            cur = &blocks.emplace(ins.offset, std::move(b)).first->second;
        }
        cur->instructions.push_back(ins);
    }
    return blocks;
}

namespace {

struct StackState {
    std::vector<Value> stack;      // top at back
    std::map<u256, Value> memory;  // constant-address 32-byte words
};

bool same_stack_shape(const StackState& a, const StackState& b) {
    if (a.stack.size() != b.stack.size()) return false;
    for (size_t i = 0; i < a.stack.size(); ++i)
        if (!expr_equal(a.stack[i].expr, b.stack[i].expr)) return false;
    return true;
}

// Unions def sites and intersects memories of two shape-equal states.
// Returns true if anything changed.
bool absorb(StackState& into, const StackState& from) {
    bool changed = false;
    for (size_t i = 0; i < into.stack.size(); ++i) {
        size_t before = into.stack[i].defs.size();
        add_defs(into.stack[i].defs, from.stack[i].defs);
        if (into.stack[i].defs.size() != before) changed = true;
    }
    for (auto it = into.memory.begin(); it != into.memory.end();) {
        auto o = from.memory.find(it->first);
        if (o == from.memory.end() || !expr_equal(it->second.expr, o->second.expr)) {
            it = into.memory.erase(it);
            changed = true;
        } else {
            size_t before = it->second.defs.size();
            add_defs(it->second.defs, o->second.defs);
            if (it->second.defs.size() != before) changed = true;
            ++it;
        }
    }
    return changed;
}

// Elementwise join used when a block exceeds its entry-state budget.
StackState join_states(const std::vector<StackState>& states) {
    StackState out = states.front();
    for (size_t s = 1; s < states.size(); ++s) {
        const StackState& st = states[s];
        size_t h = std::min(out.stack.size(), st.stack.size());
        std::vector<Value> merged(h);
        for (size_t i = 0; i < h; ++i) {
            const Value& a = out.stack[out.stack.size() - h + i];
            const Value& b = st.stack[st.stack.size() - h + i];
            merged[i] = merge_values(a, b);
        }
        out.stack = std::move(merged);
        for (auto it = out.memory.begin(); it != out.memory.end();) {
            auto o = st.memory.find(it->first);
            if (o == st.memory.end() || !expr_equal(it->second.expr, o->second.expr)) {
                it = out.memory.erase(it);
            } else {
                add_defs(it->second.defs, o->second.defs);
                ++it;
            }
        }
    }
    return out;
}

struct RecordSink {
    std::vector<ExecRecord>& records;
    std::unordered_map<uint64_t, size_t> index;

    void emit(uint32_t offset, uint8_t opbyte, std::vector<Value> operands,
              std::optional<Value> result) {
        uint64_t key = offset;
        key = key * 1000003 + opbyte;
        for (const auto& v : operands) key = key * 1000003 + expr_hash(v.expr);
        if (result) key = key * 1000003 + expr_hash(result->expr);
        auto [it, fresh] = index.emplace(key, records.size());
        if (fresh) {
            records.push_back(ExecRecord{offset, opbyte, std::move(operands), std::move(result)});
            return;
        }
        // Same expressions observed again: union the def sites.
        ExecRecord& r = records[it->second];
        for (size_t i = 0; i < r.operands.size() && i < operands.size(); ++i)
            add_defs(r.operands[i].defs, operands[i].defs);
        if (r.result && result) add_defs(r.result->defs, result->defs);
    }
};

struct Successor {
    uint32_t target;
    EdgeKind kind;
};

class SymbolicEngine {
  public:
    SymbolicEngine(Cfg& cfg, const AnalyzerConfig& config) : cfg_(cfg), config_(config) {}

    void run() {
        if (cfg_.blocks.empty()) return;
        RecordSink sink{cfg_.exec_records, {}};
        submit(cfg_.entry, StackState{});
        size_t budget = 2'000'000;
        while (!work_.empty() && budget > 0) {
            auto [bid, idx] = work_.front();
            work_.pop_front();
            auto bit = cfg_.blocks.find(bid);
            if (bit == cfg_.blocks.end()) continue;
            BasicBlock& block = bit->second;
            block.reachable = true;
            StackState state = states_[bid].states[size_t(idx)];
            budget -= block.instructions.size() + 1;
            execute(block, std::move(state), sink);
        }
    }

  private:
    Cfg& cfg_;
    const AnalyzerConfig& config_;

    struct PerBlock {
        std::vector<StackState> states;
        bool collapsed = false;
    };
    std::map<uint32_t, PerBlock> states_;
    std::deque<std::pair<uint32_t, int>> work_;

    void submit(uint32_t bid, StackState state) {
        PerBlock& pb = states_[bid];
        if (pb.collapsed) {
            std::vector<StackState> pair{pb.states[0], std::move(state)};
            StackState merged = join_states(pair);
            bool changed;
            if (same_stack_shape(merged, pb.states[0])) {
                changed = absorb(pb.states[0], merged);
            } else {
                pb.states[0] = std::move(merged);
                changed = true;
            }
            if (changed) work_.emplace_back(bid, 0);
            return;
        }
        for (size_t i = 0; i < pb.states.size(); ++i) {
            if (same_stack_shape(pb.states[i], state)) {
                if (absorb(pb.states[i], state)) work_.emplace_back(bid, int(i));
                return;
            }
        }
        if (int(pb.states.size()) < config_.max_entry_states) {
            pb.states.push_back(std::move(state));
            work_.emplace_back(bid, int(pb.states.size() - 1));
            return;
        }
        pb.states.push_back(std::move(state));
        StackState merged = join_states(pb.states);
        pb.states.clear();
        pb.states.push_back(std::move(merged));
        pb.collapsed = true;
        work_.emplace_back(bid, 0);
    }

    Value pop(StackState& st) {
        if (st.stack.empty()) return Value{make_unknown(), {}};
        Value v = std::move(st.stack.back());
        st.stack.pop_back();
        return v;
    }

    void push(StackState& st, Value v) {
        if (int(st.stack.size()) >= config_.max_stack_depth)
            st.stack.erase(st.stack.begin());  // deepest entry falls out of the model
        st.stack.push_back(std::move(v));
    }

    void clobber_memory(StackState& st, std::optional<u256> start, std::optional<u256> size) {
        if (!start || !size) {
            st.memory.clear();
            return;
        }
        if (*size == 0) return;
        u256 lo = *start > 31 ? *start - 31 : 0;
        u256 hi = *start + *size;  // overlap window [lo, hi)
        for (auto it = st.memory.lower_bound(lo); it != st.memory.end() && it->first < hi;)
            it = st.memory.erase(it);
    }

    void add_edge(BasicBlock& block, uint32_t target, EdgeKind kind) {
        block.successors.insert(Edge{target, kind});
    }

    void execute(BasicBlock& block, StackState st, RecordSink& sink) {
        std::vector<Successor> succs;
        bool halted = false;

        for (size_t ii = 0; ii < block.instructions.size(); ++ii) {
            const Instruction& ins = block.instructions[ii];
            const uint32_t off = ins.offset;
            const uint8_t b = ins.byte();
            const Opcode& oc = *ins.opcode;

            if (ins.category() == OpCategory::invalid && b != op::INVALID) {
                halted = true;  // undefined opcode aborts execution
                break;
            }

            // Stack shuffles carry values through unchanged.
            if (b >= op::DUP1 && b <= op::DUP1 + 15) {
                size_t n = size_t(b - op::DUP1) + 1;
                if (st.stack.size() < n) {
                    push(st, Value{make_unknown(), {}});
                } else {
                    push(st, st.stack[st.stack.size() - n]);
                }
                continue;
            }
            if (b >= op::SWAP1 && b <= op::SWAP1 + 15) {
                size_t n = size_t(b - op::SWAP1) + 1;
                while (st.stack.size() < n + 1)
                    st.stack.insert(st.stack.begin(), Value{make_unknown(), {}});
                std::swap(st.stack[st.stack.size() - 1], st.stack[st.stack.size() - 1 - n]);
                continue;
            }
            if (b == op::POP) {
                pop(st);
                continue;
            }
            if (b == op::JUMPDEST) continue;

            if (oc.is_push()) {
                Value v{make_const(ins.truncated ? u256(0) : ins.immediate_value()), {off}};
                sink.emit(off, b, {}, v);
                push(st, std::move(v));
                continue;
            }

            // Pop declared inputs.
            std::vector<Value> in;
            in.reserve(oc.stack_in);
            for (int i = 0; i < oc.stack_in; ++i) in.push_back(pop(st));

            auto result_of = [&](ExprPtr e) { return Value{std::move(e), {off}}; };
            std::optional<Value> result;

            switch (b) {
                case op::STOP:
                case op::RETURN:
                case op::REVERT:
                case op::INVALID:
                case op::SELFDESTRUCT:
                    sink.emit(off, b, in, std::nullopt);
                    halted = true;
                    break;

                case op::JUMP: {
                    sink.emit(off, b, in, std::nullopt);
                    const Value& target = in[0];
                    if (target.is_const()) {
                        if (target.const_value() <= 0xffffff) {
                            uint32_t t = uint32_t(target.const_value());
                            auto tb = cfg_.blocks.find(t);
                            if (tb != cfg_.blocks.end() && tb->second.starts_with_jumpdest())
                                succs.push_back({t, EdgeKind::jump});
                        }
                    } else {
                        cfg_.unresolved_jumps.insert(off);
                        succs.push_back({kUnresolvedTarget, EdgeKind::unresolved});
                    }
                    halted = true;
                    break;
                }

                case op::JUMPI: {
                    sink.emit(off, b, in, std::nullopt);
                    const Value& target = in[0];
                    if (target.is_const()) {
                        if (target.const_value() <= 0xffffff) {
                            uint32_t t = uint32_t(target.const_value());
                            auto tb = cfg_.blocks.find(t);
                            if (tb != cfg_.blocks.end() && tb->second.starts_with_jumpdest())
                                succs.push_back({t, EdgeKind::branch_true});
                        }
                    } else {
                        cfg_.unresolved_jumps.insert(off);
                        succs.push_back({kUnresolvedTarget, EdgeKind::unresolved});
                    }
                    {
                        uint32_t next = ins.next_offset();
                        if (cfg_.blocks.count(next)) succs.push_back({next, EdgeKind::branch_false});
                    }
                    halted = true;
                    break;
                }

                case op::MLOAD: {
                    Value loaded{make_unknown(), {}};
                    if (in[0].is_const()) {
                        auto it = st.memory.find(in[0].const_value());
                        if (it != st.memory.end()) loaded = it->second;
                    }
                    // The loaded value joins the record as a pseudo-operand so
                    // flow through memory is visible to the dataflow relation.
                    std::vector<Value> ops = in;
                    ops.push_back(loaded);
                    Value res{loaded.expr, {off}};
                    sink.emit(off, b, ops, res);
                    push(st, std::move(res));
                    break;
                }

                case op::MSTORE: {
                    sink.emit(off, b, in, std::nullopt);
                    if (in[0].is_const()) {
                        // Invalidate overlapping earlier words, then set.
                        clobber_memory(st, in[0].const_value(), u256(32));
                        st.memory[in[0].const_value()] = in[1];
                    } else {
                        st.memory.clear();
                    }
                    break;
                }

                case op::MSTORE8: {
                    sink.emit(off, b, in, std::nullopt);
                    if (in[0].is_const())
                        clobber_memory(st, in[0].const_value(), u256(1));
                    else
                        st.memory.clear();
                    break;
                }

                case op::CALLDATACOPY:
                case op::CODECOPY:
                case op::RETURNDATACOPY: {
                    sink.emit(off, b, in, std::nullopt);
                    std::optional<u256> dst, len;
                    if (in[0].is_const()) dst = in[0].const_value();
                    if (in[2].is_const()) len = in[2].const_value();
                    clobber_memory(st, dst, len);
                    break;
                }
                case op::EXTCODECOPY: {
                    sink.emit(off, b, in, std::nullopt);
                    std::optional<u256> dst, len;
                    if (in[1].is_const()) dst = in[1].const_value();
                    if (in[3].is_const()) len = in[3].const_value();
                    clobber_memory(st, dst, len);
                    break;
                }

                case op::KECCAK256: {
                    ExprPtr e = make_unknown();
                    std::vector<Value> ops = in;
                    if (in[0].is_const() && in[1].is_const()) {
                        const u256& base = in[0].const_value();
                        const u256& size = in[1].const_value();
                        if (size == 64) {
                            auto w0 = st.memory.find(base);
                            auto w1 = st.memory.find(base + 32);
                            if (w0 != st.memory.end() && w1 != st.memory.end()) {
                                e = make_hash({w0->second.expr, w1->second.expr});
                                ops.push_back(w0->second);
                                ops.push_back(w1->second);
                            }
                        } else if (size == 32) {
                            auto w0 = st.memory.find(base);
                            if (w0 != st.memory.end()) {
                                e = make_hash({w0->second.expr});
                                ops.push_back(w0->second);
                            }
                        }
                    }
                    Value res = result_of(std::move(e));
                    sink.emit(off, b, ops, res);
                    push(st, std::move(res));
                    break;
                }

                case op::SLOAD: {
                    auto ref = classify_storage_ref(in[0].expr);
                    Value res = result_of(make_storage_load(ref));
                    sink.emit(off, b, in, res);
                    push(st, std::move(res));
                    break;
                }

                case op::SSTORE:
                    sink.emit(off, b, in, std::nullopt);
                    break;

                case op::CALLDATALOAD: {
                    std::optional<u256> o;
                    if (in[0].is_const()) o = in[0].const_value();
                    Value res = result_of(make_calldata(o));
                    sink.emit(off, b, in, res);
                    push(st, std::move(res));
                    break;
                }

                case op::CALLER: {
                    Value res = result_of(make_caller());
                    sink.emit(off, b, in, res);
                    push(st, std::move(res));
                    break;
                }

                case op::CALLDATASIZE:
                case op::CALLVALUE:
                case op::ADDRESS: {
                    Value res = result_of(make_arith(b, {}));
                    sink.emit(off, b, in, res);
                    push(st, std::move(res));
                    break;
                }

                case op::PC: {
                    Value res = result_of(make_const(off));
                    sink.emit(off, b, in, res);
                    push(st, std::move(res));
                    break;
                }

                default: {
                    if (oc.category == OpCategory::arithmetic ||
                        oc.category == OpCategory::comparison) {
                        std::vector<ExprPtr> argexprs;
                        for (const auto& v : in) argexprs.push_back(v.expr);
                        Value res = result_of(make_arith(b, std::move(argexprs)));
                        sink.emit(off, b, in, res);
                        push(st, std::move(res));
                        break;
                    }
                    // Calls, environment queries, LOGn, CREATE: opaque result.
                    sink.emit(off, b, in,
                              oc.stack_out ? std::optional<Value>(result_of(make_unknown()))
                                           : std::nullopt);
                    for (int i = 0; i < oc.stack_out; ++i) push(st, result_of(make_unknown()));
                    break;
                }
            }
            if (halted) break;
        }

        if (!halted) {
            // Block ended at a leader boundary: implicit fallthrough.
            const Instruction& last = block.instructions.back();
            uint32_t next = last.next_offset();
            if (cfg_.blocks.count(next)) succs.push_back({next, EdgeKind::fallthrough});
        }

        for (const Successor& s : succs) {
            add_edge(block, s.target, s.kind);
            if (s.target != kUnresolvedTarget) submit(s.target, st);
        }
    }
};

}  // namespace

Cfg resolve_jumps(std::map<uint32_t, BasicBlock> blocks, const AnalyzerConfig& config) {
    Cfg cfg;
    cfg.blocks = std::move(blocks);
    cfg.entry = cfg.blocks.empty() ? 0 : cfg.blocks.begin()->first;
    SymbolicEngine engine(cfg, config);
    engine.run();
    return cfg;
}

namespace {

bool is_selector_expr(const ExprPtr& e0) {
    ExprPtr e = e0;
    // Old-style dispatchers mask the shifted word down to 4 bytes.
    if (e->kind == Expr::Kind::arith && e->opbyte == op::AND) {
        if (e->args[0]->is_const() && e->args[0]->cval == 0xffffffff)
            e = e->args[1];
        else if (e->args[1]->is_const() && e->args[1]->cval == 0xffffffff)
            e = e->args[0];
    }
    auto is_cd0 = [](const ExprPtr& x) {
        return x->kind == Expr::Kind::calldata && x->offset_known && x->cval == 0;
    };
    if (e->kind != Expr::Kind::arith) return false;
    if (e->opbyte == op::SHR)
        return e->args.size() == 2 && e->args[0]->is_const() && e->args[0]->cval == 224 &&
               is_cd0(e->args[1]);
    if (e->opbyte == op::DIV)
        return e->args.size() == 2 && is_cd0(e->args[0]) && e->args[1]->is_const() &&
               e->args[1]->cval == (u256(1) << 224);
    return false;
}

// Matches EQ(selector, const4) in either operand order.
std::optional<uint32_t> selector_eq(const ExprPtr& cond) {
    if (cond->kind != Expr::Kind::arith || cond->opbyte != op::EQ) return std::nullopt;
    for (int i = 0; i < 2; ++i) {
        const ExprPtr& c = cond->args[i];
        const ExprPtr& s = cond->args[1 - i];
        if (c->is_const() && c->cval <= 0xffffffff && is_selector_expr(s))
            return uint32_t(c->cval);
    }
    return std::nullopt;
}

bool selector_order_cmp(const ExprPtr& cond) {
    if (cond->kind != Expr::Kind::arith) return false;
    if (cond->opbyte != op::GT && cond->opbyte != op::LT) return false;
    return is_selector_expr(cond->args[0]) || is_selector_expr(cond->args[1]);
}

bool size_guard_cmp(const ExprPtr& cond) {
    if (cond->kind != Expr::Kind::arith || cond->opbyte != op::LT) return false;
    return cond->args[0]->kind == Expr::Kind::arith &&
           cond->args[0]->opbyte == op::CALLDATASIZE && cond->args[1]->is_const();
}

// The non-payable prologue tests CALLVALUE before dispatching.
bool contains_callvalue(const ExprPtr& e) {
    if (!e) return false;
    if (e->kind == Expr::Kind::arith && e->opbyte == op::CALLVALUE) return true;
    for (const auto& a : e->args)
        if (contains_callvalue(a)) return true;
    return false;
}

}  // namespace

bool is_revert_chain(const Cfg& cfg, uint32_t block_id) {
    uint32_t cur = block_id;
    for (int steps = 0; steps < 8; ++steps) {
        const BasicBlock* b = cfg.block(cur);
        if (!b || b->instructions.empty()) return false;
        uint8_t t = b->terminator().byte();
        if (t == op::REVERT || t == op::INVALID) return true;
        if (b->successors.size() != 1) return false;
        const Edge& e = *b->successors.begin();
        if (e.kind != EdgeKind::jump && e.kind != EdgeKind::fallthrough) return false;
        if (e.target == kUnresolvedTarget) return false;
        cur = e.target;
    }
    return false;
}

void recover_functions(Cfg& cfg) {
    cfg.functions.clear();
    if (cfg.blocks.empty()) return;

    // Condition expressions observed per JUMPI offset.
    std::map<uint32_t, std::vector<ExprPtr>> jumpi_conds;
    for (const ExecRecord& r : cfg.exec_records)
        if (r.opbyte == op::JUMPI && r.operands.size() >= 2)
            jumpi_conds[r.offset].push_back(r.operands[1].expr);

    std::map<uint32_t, uint32_t> selector_entries;  // selector -> entry block
    std::optional<uint32_t> size_guard_target;
    std::optional<uint32_t> fallback_entry;

    std::set<uint32_t> visited;
    std::deque<uint32_t> frontier{cfg.entry};
    int prologue_budget = 4;  // pre-dispatch guards walked through at most this many times

    while (!frontier.empty()) {
        uint32_t bid = frontier.front();
        frontier.pop_front();
        if (!visited.insert(bid).second) continue;
        const BasicBlock* b = cfg.block(bid);
        if (!b || b->instructions.empty()) continue;

        const Instruction& term = b->terminator();
        auto edge_target = [&](EdgeKind k) -> std::optional<uint32_t> {
            for (const Edge& e : b->successors)
                if (e.kind == k && e.target != kUnresolvedTarget) return e.target;
            return std::nullopt;
        };

        if (term.byte() == op::JUMPI) {
            bool classified = false;
            for (const ExprPtr& cond : jumpi_conds[term.offset]) {
                if (auto sel = selector_eq(cond)) {
                    if (auto t = edge_target(EdgeKind::branch_true))
                        selector_entries.emplace(*sel, *t);
                    if (auto f = edge_target(EdgeKind::branch_false)) frontier.push_back(*f);
                    classified = true;
                    break;
                }
                if (selector_order_cmp(cond)) {
                    if (auto t = edge_target(EdgeKind::branch_true)) frontier.push_back(*t);
                    if (auto f = edge_target(EdgeKind::branch_false)) frontier.push_back(*f);
                    classified = true;
                    break;
                }
                if (size_guard_cmp(cond)) {
                    if (auto t = edge_target(EdgeKind::branch_true)) size_guard_target = *t;
                    if (auto f = edge_target(EdgeKind::branch_false)) frontier.push_back(*f);
                    classified = true;
                    break;
                }
            }
            if (classified) continue;
            // Non-payable prologue (CALLVALUE check): continue on the branch
            // that does not immediately revert.
            bool callvalue_guard = false;
            for (const ExprPtr& cond : jumpi_conds[term.offset])
                callvalue_guard = callvalue_guard || contains_callvalue(cond);
            if (callvalue_guard && prologue_budget > 0) {
                auto t = edge_target(EdgeKind::branch_true);
                auto f = edge_target(EdgeKind::branch_false);
                std::optional<uint32_t> cont;
                if (t && f) {
                    if (is_revert_chain(cfg, *f) && !is_revert_chain(cfg, *t)) cont = t;
                    if (is_revert_chain(cfg, *t) && !is_revert_chain(cfg, *f)) cont = f;
                }
                if (cont) {
                    --prologue_budget;
                    frontier.push_back(*cont);
                    continue;
                }
            }
            if (!fallback_entry) fallback_entry = bid;
            continue;
        }

        if (term.byte() == op::JUMP) {
            // Follow a jump when it continues the dispatch chain (split
            // dispatchers) or belongs to the pre-dispatch prologue.
            if (auto t = edge_target(EdgeKind::jump)) {
                bool continues_dispatch = false;
                const BasicBlock* tb = cfg.block(*t);
                if (tb && !tb->instructions.empty() &&
                    tb->terminator().byte() == op::JUMPI) {
                    for (const ExprPtr& cond : jumpi_conds[tb->terminator().offset])
                        if (selector_eq(cond) || selector_order_cmp(cond) ||
                            size_guard_cmp(cond))
                            continues_dispatch = true;
                }
                if (continues_dispatch || (selector_entries.empty() && prologue_budget > 0)) {
                    if (!continues_dispatch) --prologue_budget;
                    frontier.push_back(*t);
                    continue;
                }
            }
            if (!fallback_entry) fallback_entry = bid;
            continue;
        }

        if (!b->ends_in_control()) {
            if (auto t = edge_target(EdgeKind::fallthrough)) {
                frontier.push_back(*t);
                continue;
            }
        }
        if (!fallback_entry) fallback_entry = bid;
    }

    if (!fallback_entry) fallback_entry = size_guard_target ? *size_guard_target : cfg.entry;

    auto body_of = [&](uint32_t entry, const std::set<uint32_t>& other_entries) {
        std::set<uint32_t> body;
        std::deque<uint32_t> q{entry};
        while (!q.empty()) {
            uint32_t bid = q.front();
            q.pop_front();
            if (body.count(bid)) continue;
            if (bid != entry && other_entries.count(bid)) continue;
            const BasicBlock* b = cfg.block(bid);
            if (!b) continue;
            body.insert(bid);
            for (const Edge& e : b->successors)
                if (e.target != kUnresolvedTarget) q.push_back(e.target);
        }
        return body;
    };

    std::set<uint32_t> entries;
    for (const auto& [sel, eb] : selector_entries) entries.insert(eb);
    entries.insert(*fallback_entry);
    if (size_guard_target && *size_guard_target != *fallback_entry)
        entries.insert(*size_guard_target);

    for (const auto& [sel, eb] : selector_entries) {
        FunctionInfo f;
        f.kind = FunctionInfo::Kind::selector;
        f.selector = sel;
        f.entry_block = eb;
        f.is_public = true;
        f.body_blocks = body_of(eb, entries);
        cfg.functions.push_back(std::move(f));
    }
    {
        FunctionInfo f;
        f.kind = FunctionInfo::Kind::fallback;
        f.entry_block = *fallback_entry;
        f.is_public = false;
        f.body_blocks = body_of(*fallback_entry, entries);
        cfg.functions.push_back(std::move(f));
    }
    if (size_guard_target && *size_guard_target != *fallback_entry) {
        FunctionInfo f;
        f.kind = FunctionInfo::Kind::receive;
        f.entry_block = *size_guard_target;
        f.is_public = false;
        f.body_blocks = body_of(*size_guard_target, entries);
        cfg.functions.push_back(std::move(f));
    }

    std::sort(cfg.functions.begin(), cfg.functions.end(),
              [](const FunctionInfo& a, const FunctionInfo& b) { return a.name() < b.name(); });
}

Cfg build_cfg(const std::vector<Instruction>& instrs, const AnalyzerConfig& config) {
    Cfg cfg = resolve_jumps(split_blocks(instrs), config);
    recover_functions(cfg);
    return cfg;
}

std::string dump_edges(const Cfg& cfg) {
    std::ostringstream os;
    for (const auto& [id, block] : cfg.blocks) {
        for (const Edge& e : block.successors) {
            os << "0x" << std::hex << id << " -> ";
            if (e.target == kUnresolvedTarget)
                os << "?";
            else
                os << "0x" << std::hex << e.target;
            os << " [" << to_string(e.kind) << "]\n";
        }
    }
    return os.str();
}

}  // namespace rugscan
