// rugscan: EVM bytecode rug-pull backdoor analyzer
// Copyright 2026 The rugscan Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "rugscan/bytecode.hpp"

namespace rugscan::testsupport {

/// Hand-built bytecode programs with bounded branching, used to compare
/// the resolved CFG against the concrete micro-interpreter.
std::vector<std::pair<std::string, Bytes>> oracle_programs();

/// A hand-assembled minimal proxy: the fallback forwards calls via
/// DELEGATECALL to the implementation address stored at the well-known
/// upgradeable-proxy slot.
Bytes eip1967_proxy();

/// A dispatcher-shaped program with three public selectors, used by the
/// block-splitting and function-recovery tests.
Bytes three_selector_dispatcher();

}  // namespace rugscan::testsupport
