// rugscan: EVM bytecode rug-pull backdoor analyzer
// Copyright 2026 The rugscan Authors.
// SPDX-License-Identifier: Apache-2.0
#include "rugscan/relations.hpp"

#include <algorithm>
#include <deque>
#include <functional>

namespace rugscan {

namespace {

const u256 kAddressMask = (u256(1) << 160) - 1;

struct Extractor {
    const Cfg& cfg;
    const AnalyzerConfig& config;
    FactStore store;

    std::map<uint32_t, std::vector<const ExecRecord*>> by_offset;
    std::set<std::string> key_atoms;

    explicit Extractor(const Cfg& c, const AnalyzerConfig& cf) : cfg(c), config(cf) {
        for (const ExecRecord& r : cfg.exec_records) by_offset[r.offset].push_back(&r);
    }

    Atom ai(uint64_t v) { return store.integer(v); }
    Atom as(const std::string& s) { return store.sym(s); }

    // ---- storage ref naming -------------------------------------------

    std::string var_atom(const StorageRef& ref, uint32_t site) {
        if (ref.kind == StorageRef::Kind::unknown) return "u@" + std::to_string(site);
        return ref.var_name();
    }

    std::string id_atom(const StorageRef& ref, uint32_t site) {
        if (ref.kind == StorageRef::Kind::unknown) return "u@" + std::to_string(site);
        std::ostringstream os;
        os << "0x" << std::hex << ref.root_slot;
        return os.str();
    }

    std::string key_atom(const StorageRef& ref) {
        std::string k;
        for (size_t i = 0; i < ref.keys.size(); ++i) {
            if (i) k += "|";
            k += render(ref.keys[i]);
        }
        return k;
    }

    // ---- record-graph navigation --------------------------------------

    // Def sites of the outermost mapping key feeding a storage address.
    std::set<uint32_t> key_defs_for(const Value& addr) {
        std::set<uint32_t> out;
        std::set<uint32_t> seen;
        std::deque<uint32_t> work(addr.defs.begin(), addr.defs.end());
        int budget = 64;
        while (!work.empty() && budget-- > 0) {
            uint32_t d = work.front();
            work.pop_front();
            if (!seen.insert(d).second) continue;
            auto it = by_offset.find(d);
            if (it == by_offset.end()) continue;
            for (const ExecRecord* r : it->second) {
                if (r->opbyte == op::KECCAK256 && r->operands.size() >= 3) {
                    // operands: [offset, size, word0 (key), word1 (slot)?]
                    for (uint32_t kd : r->operands[2].defs) out.insert(kd);
                } else if (r->opbyte == op::ADD && r->operands.size() == 2) {
                    // Array element / struct member: the non-hash operand is
                    // the index, the hash operand leads to the data area.
                    for (const Value& v : r->operands) {
                        if (v.expr && v.expr->kind == Expr::Kind::hash) {
                            for (uint32_t hd : v.defs) work.push_back(hd);
                        } else {
                            for (uint32_t kd : v.defs) out.insert(kd);
                        }
                    }
                }
            }
        }
        return out;
    }

    // Strips ISZERO chains (and for bool mode also EQ/AND against a
    // constant) from a branch condition, yielding the root def sites.
    std::set<uint32_t> strip_cond(const std::vector<uint32_t>& defs, bool bool_mode) {
        std::set<uint32_t> roots;
        std::set<uint32_t> seen;
        std::deque<uint32_t> work(defs.begin(), defs.end());
        int budget = 64;
        while (!work.empty() && budget-- > 0) {
            uint32_t d = work.front();
            work.pop_front();
            if (!seen.insert(d).second) continue;
            auto it = by_offset.find(d);
            bool stripped = false;
            if (it != by_offset.end()) {
                for (const ExecRecord* r : it->second) {
                    bool strippable =
                        bool_mode && (r->opbyte == op::EQ || r->opbyte == op::AND ||
                                      r->opbyte == op::SHR || r->opbyte == op::SHL ||
                                      r->opbyte == op::SAR || r->opbyte == op::DIV);
                    if (r->opbyte == op::ISZERO && r->operands.size() == 1) {
                        for (uint32_t x : r->operands[0].defs) work.push_back(x);
                        stripped = true;
                    } else if (strippable && r->operands.size() == 2) {
                        // Comparisons against constants and constant shifts /
                        // masks / divisions reposition a packed boolean
                        // without changing what is being tested.
                        int ci = r->operands[0].is_const() ? 0
                                 : r->operands[1].is_const() ? 1
                                                             : -1;
                        if (ci >= 0) {
                            for (uint32_t x : r->operands[1 - ci].defs) work.push_back(x);
                            stripped = true;
                        }
                    }
                }
            }
            if (!stripped) roots.insert(d);
        }
        return roots;
    }

    // ---- emission helpers ----------------------------------------------

    void flow(Atom from, Atom to) {
        if (from != to) store.add("DataFlows", {from, to});
    }

    void emit_pairs(const std::string& rel, uint32_t result_off, const Value& a, const Value& b) {
        for (uint32_t da : a.defs)
            for (uint32_t db : b.defs) {
                store.add(rel, {ai(result_off), ai(da), ai(db)});
                store.add(rel, {ai(result_off), ai(db), ai(da)});
            }
    }

    // ---- passes ---------------------------------------------------------

    void storage_pass() {
        for (const ExecRecord& r : cfg.exec_records) {
            if (r.opbyte == op::SLOAD) {
                const auto& ref = *r.result->expr->ref;
                std::string var = var_atom(ref, r.offset);
                std::string id = id_atom(ref, r.offset);
                store.add("StorageVariable", {as(var)});
                store.add("Var", {as(var)});
                store.add("LoadVar", {ai(r.offset), as(var)});
                flow(as(var), ai(r.offset));
                store.add("SloadDef", {ai(r.offset)});
                if (ref.kind == StorageRef::Kind::mapping_entry) {
                    std::string k = key_atom(ref);
                    key_atoms.insert(k);
                    store.add("LoadFromStorage", {ai(r.offset), as(id), as(k), as(var)});
                    store.add("KeyedLoad", {ai(r.offset), as(var), as(k)});
                    for (uint32_t kd : key_defs_for(r.operands[0]))
                        store.add("LoadKeyVar", {ai(r.offset), ai(kd)});
                } else {
                    store.add("LoadFromStorage", {ai(r.offset), as(id), as("-"), as(var)});
                    store.add("ScalarLoad", {ai(r.offset), as(var)});
                }
            } else if (r.opbyte == op::SSTORE) {
                auto ref = classify_storage_ref(r.operands[0].expr);
                std::string var = var_atom(*ref, r.offset);
                std::string id = id_atom(*ref, r.offset);
                store.add("StorageVariable", {as(var)});
                store.add("Var", {as(var)});
                store.add("StoreToStorage", {ai(r.offset), as(id), as(var)});
                for (uint32_t vd : r.operands[1].defs) {
                    store.add("StoreValVar", {ai(r.offset), ai(vd)});
                    flow(ai(vd), ai(r.offset));
                }
                flow(ai(r.offset), as(var));
                if (ref->kind == StorageRef::Kind::mapping_entry) {
                    std::string k = key_atom(*ref);
                    key_atoms.insert(k);
                    store.add("KeyedStore", {ai(r.offset), as(var), as(k)});
                    for (uint32_t kd : key_defs_for(r.operands[0]))
                        store.add("StoreKeyVar", {ai(r.offset), ai(kd)});
                }
                emit_store_delta(r, *ref);
            }
        }
    }

    void emit_store_delta(const ExecRecord& sstore, const StorageRef& ref) {
        if (ref.kind == StorageRef::Kind::unknown) return;
        const ExprPtr& value = sstore.operands[1].expr;

        // Mapping keys select the location rather than feed the value, so a
        // storage_load leaf keeps its keys out of the traversal (they live in
        // ref->keys, not args).
        std::function<bool(const ExprPtr&)> contains_load = [&](const ExprPtr& e) -> bool {
            if (!e) return false;
            if (e->kind == Expr::Kind::storage_load && *e->ref == ref) return true;
            for (const auto& a : e->args)
                if (contains_load(a)) return true;
            return false;
        };

        bool inc = false, dec = false;
        std::function<void(const ExprPtr&)> scan = [&](const ExprPtr& e) {
            if (!e || e->kind != Expr::Kind::arith) return;
            if (e->opbyte == op::ADD && (contains_load(e->args[0]) || contains_load(e->args[1])))
                inc = true;
            if (e->opbyte == op::SUB && contains_load(e->args[0])) dec = true;
            for (const auto& a : e->args) scan(a);
        };
        scan(value);
        if (!inc && !dec) return;

        for (const ExecRecord& lr : cfg.exec_records) {
            if (lr.opbyte != op::SLOAD) continue;
            if (!(*lr.result->expr->ref == ref)) continue;
            if (inc) store.add("StoreDelta", {ai(sstore.offset), ai(lr.offset), as("inc")});
            if (dec) store.add("StoreDelta", {ai(sstore.offset), ai(lr.offset), as("dec")});
        }
    }

    void record_pass() {
        for (const ExecRecord& r : cfg.exec_records) {
            store.add("Var", {ai(r.offset)});

            // Dataflow edges: operand defs feed the instruction's def site.
            // Address operands of loads/stores are key flow, not value flow,
            // and are related through LoadKeyVar instead.
            switch (r.opbyte) {
                case op::SLOAD:
                case op::SSTORE:
                case op::MSTORE:
                case op::MSTORE8:
                case op::JUMP:
                case op::JUMPI:
                    break;
                case op::MLOAD:
                    if (r.operands.size() == 2)
                        for (uint32_t d : r.operands[1].defs) flow(ai(d), ai(r.offset));
                    break;
                case op::KECCAK256:
                    for (size_t i = 2; i < r.operands.size(); ++i)
                        for (uint32_t d : r.operands[i].defs) flow(ai(d), ai(r.offset));
                    break;
                default:
                    if (r.result)
                        for (const Value& v : r.operands)
                            for (uint32_t d : v.defs) flow(ai(d), ai(r.offset));
                    break;
            }

            switch (r.opbyte) {
                case op::CALLER:
                    store.add("CallerDef", {ai(r.offset)});
                    break;
                case op::CALLDATALOAD: {
                    const ExprPtr& e = r.result->expr;
                    bool is_selector_word =
                        e->kind == Expr::Kind::calldata && e->offset_known && e->cval < 4;
                    if (!is_selector_word) store.add("CalldataDef", {ai(r.offset)});
                    break;
                }
                case op::LT:
                case op::GT:
                case op::SLT:
                case op::SGT: {
                    emit_pairs("Comparison", r.offset, r.operands[0], r.operands[1]);
                    int ci = r.operands[0].is_const() ? 0
                             : r.operands[1].is_const() ? 1
                                                        : -1;
                    if (ci >= 0)
                        for (uint32_t d : r.operands[1 - ci].defs)
                            store.add("ConstCmp", {ai(r.offset), ai(d)});
                    break;
                }
                case op::EQ: {
                    emit_pairs("EqOp", r.offset, r.operands[0], r.operands[1]);
                    // Address validation: EQ(x, AND(x, 2^160-1)) marks x as a
                    // checked address value.
                    for (int i = 0; i < 2; ++i) {
                        const ExprPtr& m = r.operands[i].expr;
                        const ExprPtr& x = r.operands[1 - i].expr;
                        if (m && m->kind == Expr::Kind::arith && m->opbyte == op::AND) {
                            for (int j = 0; j < 2; ++j) {
                                if (m->args[j]->is_const() && m->args[j]->cval == kAddressMask &&
                                    expr_equal(m->args[1 - j], x)) {
                                    for (uint32_t d : r.operands[1 - i].defs)
                                        store.add("AddressCheckedDef", {ai(d)});
                                }
                            }
                        }
                    }
                    break;
                }
                case op::SUB:
                    emit_pairs("SubOp", r.offset, r.operands[0], r.operands[1]);
                    break;
                case op::MUL:
                    store.add("MulDef", {ai(r.offset)});
                    break;
                case op::DIV: {
                    const Value& divisor = r.operands[1];
                    if (divisor.is_const() && divisor.const_value() <= 1000000 &&
                        config.fee_divisors.count(uint64_t(divisor.const_value())))
                        store.add("FeeDivDef", {ai(r.offset)});
                    break;
                }
                case op::AND: {
                    for (int i = 0; i < 2; ++i)
                        if (r.operands[i].is_const() && r.operands[i].const_value() == kAddressMask)
                            store.add("AddressMaskDef", {ai(r.offset)});
                    break;
                }
                default:
                    break;
            }

            if (config.owner_guard == OwnerGuard::storage_or_constant && r.opbyte == op::PUSH20)
                store.add("AddressConstDef", {ai(r.offset)});
        }
    }

    // Reachable blocks from entry, optionally with one edge removed.
    // Unresolved edges conservatively lead to every JUMPDEST block.
    std::set<uint32_t> reach(const std::optional<std::pair<uint32_t, Edge>>& removed,
                             const std::vector<uint32_t>& jumpdests) {
        std::set<uint32_t> seen;
        std::deque<uint32_t> q{cfg.entry};
        while (!q.empty()) {
            uint32_t bid = q.front();
            q.pop_front();
            if (!seen.insert(bid).second) continue;
            const BasicBlock* b = cfg.block(bid);
            if (!b) continue;
            for (const Edge& e : b->successors) {
                if (removed && removed->first == bid && removed->second == e) continue;
                if (e.target == kUnresolvedTarget) {
                    for (uint32_t jd : jumpdests) q.push_back(jd);
                } else {
                    q.push_back(e.target);
                }
            }
        }
        return seen;
    }

    void controls_pass() {
        std::vector<uint32_t> jumpdests;
        for (const auto& [id, b] : cfg.blocks)
            if (b.reachable && b.starts_with_jumpdest()) jumpdests.push_back(id);

        std::set<uint32_t> base = reach(std::nullopt, jumpdests);

        for (const auto& [bid, block] : cfg.blocks) {
            if (!block.reachable || block.instructions.empty()) continue;
            const Instruction& term = block.terminator();
            if (term.byte() != op::JUMPI) continue;

            std::vector<uint32_t> cond_defs;
            auto it = by_offset.find(term.offset);
            if (it == by_offset.end()) continue;
            for (const ExecRecord* r : it->second)
                if (r->operands.size() >= 2) add_defs(cond_defs, r->operands[1].defs);

            bool has_true = false, has_false = false, true_reverts = false, false_reverts = false;
            for (const Edge& e : block.successors) {
                if (e.kind != EdgeKind::branch_true && e.kind != EdgeKind::branch_false) continue;
                if (e.kind == EdgeKind::branch_true) {
                    has_true = true;
                    true_reverts = is_revert_chain(cfg, e.target);
                } else {
                    has_false = true;
                    false_reverts = is_revert_chain(cfg, e.target);
                }
                std::set<uint32_t> without =
                    reach(std::make_pair(bid, e), jumpdests);
                for (uint32_t dominated : base) {
                    if (without.count(dominated)) continue;
                    for (uint32_t v : cond_defs)
                        store.add("ControlsWith", {ai(term.offset), ai(dominated), ai(v)});
                }
            }
            if (has_true && has_false && (true_reverts != false_reverts))
                store.add("RevertGuard", {ai(term.offset)});

            for (uint32_t root : strip_cond(cond_defs, false))
                store.add("JumpiRoot", {ai(term.offset), ai(root)});
            for (uint32_t root : strip_cond(cond_defs, true))
                store.add("BoolGuardRoot", {ai(term.offset), ai(root)});
        }
    }

    void function_pass() {
        for (const FunctionInfo& f : cfg.functions) {
            std::string fname = f.name();
            if (f.is_public) store.add("IsPublicFunction", {as(fname)});
            for (uint32_t bid : f.body_blocks) {
                const BasicBlock* b = cfg.block(bid);
                if (!b) continue;
                store.add("BlockInFunc", {ai(bid), as(fname)});
                for (const Instruction& ins : b->instructions)
                    store.add("StmtInFunc", {ai(ins.offset), as(fname)});
            }
        }
        for (const auto& [bid, b] : cfg.blocks) {
            if (!b.reachable) continue;
            bool state_mod = false;
            for (const Instruction& ins : b.instructions) {
                store.add("StmtInBlock", {ai(ins.offset), ai(bid)});
                switch (ins.byte()) {
                    case op::SSTORE:
                    case op::CALL:
                    case op::CALLCODE:
                    case op::DELEGATECALL:
                    case op::CREATE:
                    case op::CREATE2:
                    case op::SELFDESTRUCT: state_mod = true; break;
                    default: break;
                }
            }
            if (state_mod) store.add("StateModBlock", {ai(bid)});
        }
    }

    void key_pass() {
        for (const std::string& a : key_atoms)
            for (const std::string& b : key_atoms)
                if (a != b) store.add("DistinctKey", {as(a), as(b)});
    }

    FactStore run() {
        store.declare("StorageVariable", 1);
        store.declare("LoadFromStorage", 4);
        store.declare("StoreToStorage", 3);
        store.declare("DataFlows", 2);
        store.declare("IsPublicFunction", 1);
        store.declare("ControlsWith", 3);
        storage_pass();
        record_pass();
        controls_pass();
        function_pass();
        key_pass();
        return std::move(store);
    }
};

}  // namespace

FactStore extract_relations(const Cfg& cfg, const AnalyzerConfig& config) {
    Extractor ex(cfg, config);
    return ex.run();
}

}  // namespace rugscan
