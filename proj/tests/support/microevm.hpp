// rugscan: EVM bytecode rug-pull backdoor analyzer
// Copyright 2026 The rugscan Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <set>
#include <utility>

#include "rugscan/bytecode.hpp"

namespace rugscan::testsupport {

/// Brute-force concrete interpreter used as an oracle for CFG edges.
/// Decodes the bytecode independently of the analyzer (its own push-width
/// logic and leader rule), executes with a concrete stack, and forks at
/// every JUMPI to enumerate all branch outcomes up to the step and path
/// bounds. Records every (from-block, to-block) control transfer.
struct MicroEvm {
    int max_steps_per_path = 4096;
    int max_paths = 1024;
    u256 caller_value = 0x1111;
    Bytes calldata;

    std::set<std::pair<uint32_t, uint32_t>> explore(const Bytes& code);
};

}  // namespace rugscan::testsupport
