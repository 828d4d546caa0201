// rugscan: EVM bytecode rug-pull backdoor analyzer
// Copyright 2026 The rugscan Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace rugscan {

constexpr const char* kAnalyzerVersion = "0.1.0";

}  // namespace rugscan
