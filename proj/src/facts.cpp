// rugscan: EVM bytecode rug-pull backdoor analyzer
// Copyright 2026 The rugscan Authors.
// SPDX-License-Identifier: Apache-2.0
#include "rugscan/facts.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace rugscan {

Atom FactStore::sym(const std::string& s) {
    auto it = symbol_ids_.find(s);
    if (it != symbol_ids_.end()) return Atom{Atom::Kind::symbol, it->second};
    uint64_t id = symbols_.size();
    symbols_.push_back(s);
    symbol_ids_.emplace(s, id);
    return Atom{Atom::Kind::symbol, id};
}

const std::string& FactStore::symbol_text(const Atom& a) const {
    static const std::string bad = "<?>";
    if (a.kind != Atom::Kind::symbol || a.value >= symbols_.size()) return bad;
    return symbols_[a.value];
}

std::string FactStore::render(const Atom& a) const {
    if (a.kind == Atom::Kind::integer) return std::to_string(a.value);
    return symbol_text(a);
}

void FactStore::declare(const std::string& name, size_t arity) {
    arity_[name] = arity;
    rels_.try_emplace(name);
}

bool FactStore::add(const std::string& rel, Tuple t) {
    auto ar = arity_.find(rel);
    if (ar != arity_.end() && ar->second != t.size())
        throw std::runtime_error("arity mismatch inserting into " + rel);
    return rels_[rel].insert(std::move(t)).second;
}

bool FactStore::contains(const std::string& rel, const Tuple& t) const {
    auto it = rels_.find(rel);
    return it != rels_.end() && it->second.count(t) > 0;
}

const Relation& FactStore::relation(const std::string& rel) const {
    static const Relation empty;
    auto it = rels_.find(rel);
    return it == rels_.end() ? empty : it->second;
}

size_t FactStore::total_facts() const {
    size_t n = 0;
    for (const auto& [name, r] : rels_) n += r.size();
    return n;
}

std::string FactStore::render_relation(const std::string& rel) const {
    std::vector<std::string> rows;
    for (const Tuple& t : relation(rel)) {
        std::string row;
        for (size_t i = 0; i < t.size(); ++i) {
            if (i) row += '\t';
            row += render(t[i]);
        }
        rows.push_back(std::move(row));
    }
    std::sort(rows.begin(), rows.end());
    std::string out;
    for (const auto& r : rows) {
        out += r;
        out += '\n';
    }
    return out;
}

void FactStore::export_tsv(const std::string& dir) const {
    std::filesystem::create_directories(dir);
    for (const auto& [name, rel] : rels_) {
        std::ofstream f(std::filesystem::path(dir) / (name + ".tsv"));
        f << render_relation(name);
    }
}

}  // namespace rugscan
