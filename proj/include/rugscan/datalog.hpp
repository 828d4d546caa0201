// rugscan: EVM bytecode rug-pull backdoor analyzer
// Copyright 2026 The rugscan Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rugscan/facts.hpp"

namespace rugscan {

/// A term in a rule pattern: a variable or a constant atom.
struct Term {
    bool is_var = false;
    uint32_t var = 0;  // index into the rule's variable table
    Atom atom;
};

struct Literal {
    std::string rel;
    std::vector<Term> terms;
    bool negated = false;
};

/// head(..) :- body1(..), !body2(..).  Range-restricted and safe:
/// every head variable and every negated-literal variable occurs in a
/// positive body literal.
struct Rule {
    Literal head;
    std::vector<Literal> body;
    std::vector<std::string> var_names;
    std::string text;
};

struct DatalogError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UnstratifiableError : DatalogError {
    using DatalogError::DatalogError;
};

/// Parses a rule program: one statement per '.'; `#` and `//` comments.
/// Variables start with an uppercase letter or '_'; `_` alone is a fresh
/// anonymous variable. Constants are integers, 0x-hex integers, quoted
/// strings, or bare lowercase identifiers. Safety is checked here.
std::vector<Rule> parse_rules(const std::string& program, FactStore& store);

/// Assigns each relation a stratum such that positive dependencies stay
/// within or below and negated dependencies cross strictly upward;
/// throws UnstratifiableError when negation lies on a cycle.
struct Stratification {
    std::vector<std::vector<std::string>> strata;
    std::map<std::string, int> level;
};
Stratification stratify(const std::vector<Rule>& rules);

/// Bottom-up least fixpoint: semi-naive iteration per stratum, in stratum
/// order. Mutates the store in place; idempotent.
void evaluate(FactStore& store, const std::vector<Rule>& rules);

/// One satisfying assignment of a rule body against a closed store: the
/// derived head tuple plus one premise per body literal (negated premises
/// are recorded with a '!' prefix on the relation name).
struct RuleMatch {
    Tuple head;
    std::vector<std::pair<std::string, Tuple>> premises;
};

/// Enumerates rule matches against an evaluated store, deduplicated by
/// head tuple (first premise set in deterministic order wins).
std::vector<RuleMatch> match_rule(const FactStore& store, const Rule& rule);

}  // namespace rugscan
