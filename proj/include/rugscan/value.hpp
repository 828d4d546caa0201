// rugscan: EVM bytecode rug-pull backdoor analyzer
// Copyright 2026 The rugscan Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rugscan/bytecode.hpp"

namespace rugscan {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// An inferred storage location: a fixed slot, a (possibly nested)
/// keccak-derived mapping entry, or unknown.
struct StorageRef {
    enum class Kind { slot, mapping_entry, unknown };
    Kind kind = Kind::unknown;
    u256 root_slot = 0;          // declared slot for slot/mapping_entry
    std::vector<ExprPtr> keys;   // mapping keys, outermost last; empty for scalar slots

    bool operator==(const StorageRef& o) const;
    /// Identity of the state variable this ref belongs to ("s<slot>",
    /// "m<slot>" or "u"); keys are not part of variable identity.
    std::string var_name() const;
    std::string render() const;
};

/// Symbolic stack value: a bounded-depth expression annotated with the
/// instruction offsets that produced it (its def sites).
struct Expr {
    enum class Kind { constant, unknown, calldata, caller, storage_load, hash, arith };

    Kind kind = Kind::unknown;
    u256 cval = 0;                     // constant value; calldata offset when offset_known
    bool offset_known = false;         // calldata only
    uint8_t opbyte = 0;                // arith only
    std::vector<ExprPtr> args;         // arith operands in EVM pop order; hash words lowest-address first
    std::shared_ptr<const StorageRef> ref;  // storage_load only
    int depth = 0;

    bool is_const() const { return kind == Kind::constant; }
};

/// Structural equality over expressions (def sites excluded).
bool expr_equal(const ExprPtr& a, const ExprPtr& b);
std::string render(const ExprPtr& e);
uint64_t expr_hash(const ExprPtr& e);

/// A value on the symbolic stack: the expression plus every def site
/// observed to have produced it (sites merge at control-flow joins).
struct Value {
    ExprPtr expr;
    std::vector<uint32_t> defs;  // sorted, deduplicated instruction offsets

    bool is_const() const { return expr && expr->is_const(); }
    const u256& const_value() const { return expr->cval; }
};

// Expression constructors. Arithmetic construction folds constants and
// degrades to unknown past the depth bound.
ExprPtr make_const(const u256& v);
ExprPtr make_unknown();
ExprPtr make_caller();
ExprPtr make_calldata(std::optional<u256> offset);
ExprPtr make_storage_load(std::shared_ptr<const StorageRef> ref);
ExprPtr make_hash(std::vector<ExprPtr> words);
ExprPtr make_arith(uint8_t opbyte, std::vector<ExprPtr> args);

/// Classifies a storage address expression into a StorageRef.
std::shared_ptr<const StorageRef> classify_storage_ref(const ExprPtr& addr);

Value merge_values(const Value& a, const Value& b);
void add_defs(std::vector<uint32_t>& defs, const std::vector<uint32_t>& more);

}  // namespace rugscan
