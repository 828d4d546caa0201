// rugscan: EVM bytecode rug-pull backdoor analyzer
// Copyright 2026 The rugscan Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

namespace rugscan {

/// One column value of a fact tuple: an integer (offsets, block ids) or an
/// interned symbol (variable names, selectors, storage ids).
struct Atom {
    enum class Kind : uint8_t { integer, symbol };
    Kind kind = Kind::integer;
    uint64_t value = 0;  // integer value or symbol id

    auto operator<=>(const Atom&) const = default;
};

using Tuple = std::vector<Atom>;
using Relation = std::set<Tuple>;

struct Schema {
    std::string name;
    size_t arity = 0;
};

/// Named tuple sets plus the symbol table their atoms intern into.
class FactStore {
  public:
    Atom sym(const std::string& s);
    Atom integer(uint64_t v) const { return Atom{Atom::Kind::integer, v}; }
    const std::string& symbol_text(const Atom& a) const;
    std::string render(const Atom& a) const;

    void declare(const std::string& name, size_t arity);
    bool add(const std::string& rel, Tuple t);  // true if newly inserted
    bool contains(const std::string& rel, const Tuple& t) const;
    const Relation& relation(const std::string& rel) const;
    Relation& relation_mut(const std::string& rel) { return rels_[rel]; }
    const std::map<std::string, Relation>& relations() const { return rels_; }
    size_t total_facts() const;

    /// One file per relation, one row per tuple, columns tab-separated,
    /// rows sorted lexicographically by their rendered text.
    void export_tsv(const std::string& dir) const;
    std::string render_relation(const std::string& rel) const;

  private:
    std::vector<std::string> symbols_;
    std::unordered_map<std::string, uint64_t> symbol_ids_;
    std::map<std::string, Relation> rels_;
    std::map<std::string, size_t> arity_;
};

}  // namespace rugscan
