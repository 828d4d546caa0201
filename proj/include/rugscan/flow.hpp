// rugscan: EVM bytecode rug-pull backdoor analyzer
// Copyright 2026 The rugscan Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "rugscan/datalog.hpp"
#include "rugscan/facts.hpp"

namespace rugscan {

/// The shipped rule program (embedded copy of rules/rugscan.dl).
const std::string& default_rules_text();

/// Parses the shipped program and computes every derived predicate over
/// the base facts, in place. Idempotent.
void derive_all_features(FactStore& store);

/// Parsed rules of the shipped program, interned into `store`.
std::vector<Rule> parse_default_rules(FactStore& store);

// Derived-feature accessors (valid after derive_all_features).
inline const Relation& load_token_balances(const FactStore& s) { return s.relation("LoadTokenBalances"); }
inline const Relation& store_token_balances(const FactStore& s) { return s.relation("StoreTokenBalances"); }
inline const Relation& load_and_store_balances(const FactStore& s) { return s.relation("LoadandStoreBalances"); }
inline const Relation& check_token_balances(const FactStore& s) { return s.relation("CheckTokenBalances"); }
inline const Relation& check_balances_of_input(const FactStore& s) { return s.relation("CheckBalancesofInput"); }
inline const Relation& public_func_for_owner(const FactStore& s) { return s.relation("PublicFuncForOwner"); }
inline const Relation& function_modify_storage(const FactStore& s) { return s.relation("FunctionModifyStorage"); }
inline const Relation& var_to_limit_transfer(const FactStore& s) { return s.relation("VartoLimitTransfer"); }
inline const Relation& var_for_fee(const FactStore& s) { return s.relation("VarforFee"); }
inline const Relation& function_transfer(const FactStore& s) { return s.relation("FunctionTransfer"); }

}  // namespace rugscan
