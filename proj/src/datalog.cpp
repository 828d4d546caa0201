// rugscan: EVM bytecode rug-pull backdoor analyzer
// Copyright 2026 The rugscan Authors.
// SPDX-License-Identifier: Apache-2.0
#include "rugscan/datalog.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

namespace rugscan {

namespace {

// ---------------------------------------------------------------- parsing

struct Tokenizer {
    const std::string& src;
    size_t pos = 0;
    int line = 1;

    void skip_ws() {
        while (pos < src.size()) {
            char c = src[pos];
            if (c == '\n') {
                ++line;
                ++pos;
            } else if (isspace(uint8_t(c))) {
                ++pos;
            } else if (c == '#' || (c == '/' && pos + 1 < src.size() && src[pos + 1] == '/')) {
                while (pos < src.size() && src[pos] != '\n') ++pos;
            } else {
                break;
            }
        }
    }

    bool eof() {
        skip_ws();
        return pos >= src.size();
    }

    [[noreturn]] void fail(const std::string& msg) {
        throw DatalogError("rule parse error at line " + std::to_string(line) + ": " + msg);
    }

    char peek() {
        skip_ws();
        return pos < src.size() ? src[pos] : '\0';
    }

    bool accept(const std::string& tok) {
        skip_ws();
        if (src.compare(pos, tok.size(), tok) == 0) {
            pos += tok.size();
            return true;
        }
        return false;
    }

    void expect(const std::string& tok) {
        if (!accept(tok)) fail("expected '" + tok + "'");
    }

    std::string ident() {
        skip_ws();
        size_t start = pos;
        while (pos < src.size() && (isalnum(uint8_t(src[pos])) || src[pos] == '_')) ++pos;
        if (pos == start) fail("expected identifier");
        return src.substr(start, pos - start);
    }
};

struct RuleParser {
    Tokenizer tz;
    FactStore& store;
    std::map<std::string, uint32_t> vars;
    std::vector<std::string> var_names;

    uint32_t fresh_var(const std::string& name) {
        uint32_t id = uint32_t(var_names.size());
        var_names.push_back(name);
        return id;
    }

    Term parse_term() {
        char c = tz.peek();
        if (c == '"') {
            ++tz.pos;
            size_t start = tz.pos;
            while (tz.pos < tz.src.size() && tz.src[tz.pos] != '"') ++tz.pos;
            if (tz.pos >= tz.src.size()) tz.fail("unterminated string");
            std::string s = tz.src.substr(start, tz.pos - start);
            ++tz.pos;
            return Term{false, 0, store.sym(s)};
        }
        if (isdigit(uint8_t(c))) {
            tz.skip_ws();
            size_t start = tz.pos;
            int base = 10;
            if (tz.src.compare(tz.pos, 2, "0x") == 0) {
                base = 16;
                tz.pos += 2;
            }
            while (tz.pos < tz.src.size() && isalnum(uint8_t(tz.src[tz.pos]))) ++tz.pos;
            uint64_t v = std::stoull(tz.src.substr(start, tz.pos - start), nullptr, base);
            return Term{false, 0, Atom{Atom::Kind::integer, v}};
        }
        std::string id = tz.ident();
        if (id == "_") return Term{true, fresh_var("_"), {}};
        if (isupper(uint8_t(id[0])) || id[0] == '_') {
            auto it = vars.find(id);
            if (it != vars.end()) return Term{true, it->second, {}};
            uint32_t v = fresh_var(id);
            vars.emplace(id, v);
            return Term{true, v, {}};
        }
        return Term{false, 0, store.sym(id)};  // lowercase bare word: symbol constant
    }

    Literal parse_literal() {
        Literal lit;
        lit.negated = tz.accept("!");
        lit.rel = tz.ident();
        tz.expect("(");
        if (!tz.accept(")")) {
            do {
                lit.terms.push_back(parse_term());
            } while (tz.accept(","));
            tz.expect(")");
        }
        return lit;
    }
};

void check_safety(const Rule& r, int line) {
    std::set<uint32_t> positive;
    for (const Literal& lit : r.body)
        if (!lit.negated)
            for (const Term& t : lit.terms)
                if (t.is_var) positive.insert(t.var);
    auto require = [&](const Term& t, const char* where) {
        if (t.is_var && !positive.count(t.var))
            throw DatalogError("unsafe rule near line " + std::to_string(line) + ": variable '" +
                               r.var_names[t.var] + "' in " + where +
                               " does not occur in a positive body literal");
    };
    for (const Term& t : r.head.terms) require(t, "head");
    for (const Literal& lit : r.body)
        if (lit.negated)
            for (const Term& t : lit.terms) require(t, "negated literal");
}

// -------------------------------------------------------------- evaluation

using Bindings = std::vector<std::optional<Atom>>;

// Index over one relation keyed by the literal's bound positions.
class Indexes {
  public:
    const std::vector<const Tuple*>* probe(const std::string& rel, const Relation& tuples,
                                           const std::vector<size_t>& bound_pos,
                                           const Tuple& key) {
        if (bound_pos.empty()) return nullptr;
        IndexKey ik{rel, bound_pos};
        auto& entry = cache_[ik];
        if (entry.version != tuples.size()) {
            entry.version = tuples.size();
            entry.map.clear();
            for (const Tuple& t : tuples) {
                Tuple k;
                k.reserve(bound_pos.size());
                for (size_t p : bound_pos) k.push_back(t[p]);
                entry.map[std::move(k)].push_back(&t);
            }
        }
        static const std::vector<const Tuple*> empty;
        auto it = entry.map.find(key);
        return it == entry.map.end() ? &empty : &it->second;
    }

  private:
    struct IndexKey {
        std::string rel;
        std::vector<size_t> positions;
        bool operator<(const IndexKey& o) const {
            return std::tie(rel, positions) < std::tie(o.rel, o.positions);
        }
    };
    struct Entry {
        size_t version = size_t(-1);
        std::map<Tuple, std::vector<const Tuple*>> map;
    };
    std::map<IndexKey, Entry> cache_;
};

bool unify(const Literal& lit, const Tuple& t, Bindings& b, std::vector<uint32_t>& bound_here) {
    for (size_t i = 0; i < lit.terms.size(); ++i) {
        const Term& term = lit.terms[i];
        if (!term.is_var) {
            if (t[i] != term.atom) {
                for (uint32_t v : bound_here) b[v].reset();
                return false;
            }
        } else if (b[term.var]) {
            if (*b[term.var] != t[i]) {
                for (uint32_t v : bound_here) b[v].reset();
                return false;
            }
        } else {
            b[term.var] = t[i];
            bound_here.push_back(term.var);
        }
    }
    return true;
}

struct JoinContext {
    const FactStore& store;
    Indexes& indexes;
    const Rule& rule;
    // When set, this body position draws tuples from `delta` instead of the
    // full relation (semi-naive evaluation).
    int delta_pos = -1;
    const Relation* delta = nullptr;
    bool collect_premises = false;

    std::vector<std::pair<std::string, Tuple>> premises;

    template <typename Emit>
    void run(Emit&& emit) {
        Bindings b(rule.var_names.size());
        descend(0, b, emit);
    }

  private:
    template <typename Emit>
    void descend(size_t i, Bindings& b, Emit&& emit) {
        if (i == rule.body.size()) {
            Tuple head;
            head.reserve(rule.head.terms.size());
            for (const Term& t : rule.head.terms) head.push_back(t.is_var ? *b[t.var] : t.atom);
            emit(head, premises);
            return;
        }
        const Literal& lit = rule.body[i];
        if (lit.negated) {
            Tuple probe;
            probe.reserve(lit.terms.size());
            for (const Term& t : lit.terms) probe.push_back(t.is_var ? *b[t.var] : t.atom);
            if (!store.contains(lit.rel, probe)) {
                if (collect_premises) premises.emplace_back("!" + lit.rel, probe);
                descend(i + 1, b, emit);
                if (collect_premises) premises.pop_back();
            }
            return;
        }

        const Relation& source =
            (int(i) == delta_pos && delta) ? *delta : store.relation(lit.rel);

        // Wrong-arity tuples cannot unify; skip mismatched relations safely.
        std::vector<size_t> bound_pos;
        Tuple key;
        for (size_t p = 0; p < lit.terms.size(); ++p) {
            const Term& t = lit.terms[p];
            if (!t.is_var) {
                bound_pos.push_back(p);
                key.push_back(t.atom);
            } else if (b[t.var]) {
                bound_pos.push_back(p);
                key.push_back(*b[t.var]);
            }
        }

        auto try_tuple = [&](const Tuple& t) {
            if (t.size() != lit.terms.size()) return;
            std::vector<uint32_t> bound_here;
            if (!unify(lit, t, b, bound_here)) return;
            if (collect_premises) premises.emplace_back(lit.rel, t);
            descend(i + 1, b, emit);
            if (collect_premises) premises.pop_back();
            for (uint32_t v : bound_here) b[v].reset();
        };

        bool use_index = int(i) != delta_pos && !bound_pos.empty() && source.size() > 16;
        if (use_index) {
            const auto* hits = indexes.probe(lit.rel, source, bound_pos, key);
            if (hits) {
                for (const Tuple* t : *hits) try_tuple(*t);
                return;
            }
        }
        for (const Tuple& t : source) try_tuple(t);
    }
};

}  // namespace

std::vector<Rule> parse_rules(const std::string& program, FactStore& store) {
    std::vector<Rule> rules;
    Tokenizer tz{program};
    while (!tz.eof()) {
        RuleParser rp{Tokenizer{program, tz.pos, tz.line}, store, {}, {}};
        Rule rule;
        size_t stmt_start = tz.pos;
        int stmt_line = tz.line;
        rule.head = rp.parse_literal();
        if (rule.head.negated) rp.tz.fail("negated head");
        if (rp.tz.accept(":-")) {
            do {
                rule.body.push_back(rp.parse_literal());
            } while (rp.tz.accept(","));
        }
        rp.tz.expect(".");
        tz.pos = rp.tz.pos;
        tz.line = rp.tz.line;
        rule.var_names = std::move(rp.var_names);
        rule.text = program.substr(stmt_start, tz.pos - stmt_start);

        if (rule.body.empty()) {
            // Ground fact.
            Tuple t;
            for (const Term& term : rule.head.terms) {
                if (term.is_var)
                    throw DatalogError("fact with variable near line " + std::to_string(stmt_line));
                t.push_back(term.atom);
            }
            store.add(rule.head.rel, std::move(t));
            continue;
        }
        check_safety(rule, stmt_line);
        rules.push_back(std::move(rule));
    }
    return rules;
}

Stratification stratify(const std::vector<Rule>& rules) {
    std::set<std::string> preds;
    for (const Rule& r : rules) {
        preds.insert(r.head.rel);
        for (const Literal& l : r.body) preds.insert(l.rel);
    }
    std::map<std::string, int> level;
    for (const auto& p : preds) level[p] = 0;

    const int limit = int(preds.size()) + 1;
    bool changed = true;
    while (changed) {
        changed = false;
        for (const Rule& r : rules) {
            int& h = level[r.head.rel];
            for (const Literal& l : r.body) {
                int need = level[l.rel] + (l.negated ? 1 : 0);
                if (h < need) {
                    if (need > limit)
                        throw UnstratifiableError("negation on a dependency cycle involving '" +
                                                  r.head.rel + "'");
                    h = need;
                    changed = true;
                }
            }
        }
    }

    Stratification s;
    s.level = level;
    int maxl = 0;
    for (const auto& [p, l] : level) maxl = std::max(maxl, l);
    s.strata.resize(size_t(maxl) + 1);
    for (const auto& [p, l] : level) s.strata[size_t(l)].push_back(p);
    return s;
}

void evaluate(FactStore& store, const std::vector<Rule>& rules) {
    Stratification strat = stratify(rules);
    Indexes indexes;

    for (size_t level = 0; level < strat.strata.size(); ++level) {
        std::vector<const Rule*> stratum_rules;
        std::set<std::string> stratum_rels;
        for (const Rule& r : rules)
            if (strat.level.at(r.head.rel) == int(level)) {
                stratum_rules.push_back(&r);
                stratum_rels.insert(r.head.rel);
            }
        if (stratum_rules.empty()) continue;

        std::map<std::string, Relation> delta;

        // First round: full evaluation seeds the deltas.
        for (const Rule* r : stratum_rules) {
            JoinContext ctx{store, indexes, *r};
            Relation& dst = delta[r->head.rel];
            ctx.run([&](const Tuple& head, const auto&) {
                if (!store.contains(r->head.rel, head)) dst.insert(head);
            });
        }
        for (auto& [rel, d] : delta)
            for (const Tuple& t : d) store.add(rel, t);

        // Delta-directed rounds until fixpoint.
        while (true) {
            bool any = false;
            for (const auto& [rel, d] : delta)
                if (!d.empty()) any = true;
            if (!any) break;

            std::map<std::string, Relation> next;
            for (const Rule* r : stratum_rules) {
                for (size_t i = 0; i < r->body.size(); ++i) {
                    const Literal& lit = r->body[i];
                    if (lit.negated || !stratum_rels.count(lit.rel)) continue;
                    auto dit = delta.find(lit.rel);
                    if (dit == delta.end() || dit->second.empty()) continue;
                    JoinContext ctx{store, indexes, *r, int(i), &dit->second};
                    Relation& dst = next[r->head.rel];
                    ctx.run([&](const Tuple& head, const auto&) {
                        if (!store.contains(r->head.rel, head)) dst.insert(head);
                    });
                }
            }
            for (auto& [rel, d] : next)
                for (const Tuple& t : d) store.add(rel, t);
            delta = std::move(next);
        }
    }
}

std::vector<RuleMatch> match_rule(const FactStore& store, const Rule& rule) {
    Indexes indexes;
    JoinContext ctx{store, indexes, rule};
    ctx.collect_premises = true;
    std::vector<RuleMatch> out;
    std::set<Tuple> seen;
    ctx.run([&](const Tuple& head, const std::vector<std::pair<std::string, Tuple>>& premises) {
        if (seen.insert(head).second) out.push_back(RuleMatch{head, premises});
    });
    return out;
}

}  // namespace rugscan
