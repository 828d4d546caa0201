// rugscan: EVM bytecode rug-pull backdoor analyzer
// Copyright 2026 The rugscan Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "rugscan/cfg.hpp"
#include "rugscan/config.hpp"
#include "rugscan/facts.hpp"

namespace rugscan {

/// Extracts the base relations from a resolved CFG:
///
///   StorageVariable(var)                 state variables (scalar slots,
///                                        mapping roots, per-site unknowns)
///   LoadFromStorage(stmt, id, key, var)  SLOAD sites
///   StoreToStorage(stmt, id, var)        SSTORE sites
///   DataFlows(a, b)                      direct def-use edges (the engine
///                                        computes the closure)
///   IsPublicFunction(func)
///   ControlsWith(stmt, block, var)       branch dominance
///
/// plus the site-level relations the analysis rules join over (operand
/// shapes, guard roots, key/value def sites, function membership).
FactStore extract_relations(const Cfg& cfg, const AnalyzerConfig& config);

}  // namespace rugscan
