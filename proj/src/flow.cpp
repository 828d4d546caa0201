// rugscan: EVM bytecode rug-pull backdoor analyzer
// Copyright 2026 The rugscan Authors.
// SPDX-License-Identifier: Apache-2.0
#include "rugscan/flow.hpp"

namespace rugscan {

std::vector<Rule> parse_default_rules(FactStore& store) {
    return parse_rules(default_rules_text(), store);
}

void derive_all_features(FactStore& store) {
    auto rules = parse_default_rules(store);
    evaluate(store, rules);
}

}  // namespace rugscan
