// rugscan: EVM bytecode rug-pull backdoor analyzer
// Copyright 2026 The rugscan Authors.
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <random>
#include <sstream>

#include "rugscan/datalog.hpp"

using namespace rugscan;

namespace {

// ------------------------------------------------------------------ oracle
// Straightforward iterate-until-no-change evaluator, independent of the
// semi-naive implementation. Used as the reference for equivalence tests.

bool oracle_unify(const Literal& lit, const Tuple& t, std::vector<std::optional<Atom>>& b) {
    if (t.size() != lit.terms.size()) return false;
    std::vector<std::optional<Atom>> saved = b;
    for (size_t i = 0; i < lit.terms.size(); ++i) {
        const Term& term = lit.terms[i];
        if (!term.is_var) {
            if (t[i] != term.atom) { b = saved; return false; }
        } else if (b[term.var]) {
            if (*b[term.var] != t[i]) { b = saved; return false; }
        } else {
            b[term.var] = t[i];
        }
    }
    return true;
}

void oracle_descend(const FactStore& store, const Rule& rule, size_t i,
                    std::vector<std::optional<Atom>>& b, std::set<Tuple>& out) {
    if (i == rule.body.size()) {
        Tuple head;
        for (const Term& t : rule.head.terms) head.push_back(t.is_var ? *b[t.var] : t.atom);
        out.insert(std::move(head));
        return;
    }
    const Literal& lit = rule.body[i];
    if (lit.negated) {
        Tuple probe;
        for (const Term& t : lit.terms) probe.push_back(t.is_var ? *b[t.var] : t.atom);
        if (!store.contains(lit.rel, probe)) oracle_descend(store, rule, i + 1, b, out);
        return;
    }
    for (const Tuple& t : store.relation(lit.rel)) {
        std::vector<std::optional<Atom>> saved = b;
        if (oracle_unify(lit, t, b)) oracle_descend(store, rule, i + 1, b, out);
        b = saved;
    }
}

void naive_evaluate(FactStore& store, const std::vector<Rule>& rules) {
    Stratification strat = stratify(rules);
    for (size_t level = 0; level < strat.strata.size(); ++level) {
        bool changed = true;
        while (changed) {
            changed = false;
            for (const Rule& r : rules) {
                if (strat.level.at(r.head.rel) != int(level)) continue;
                std::set<Tuple> derived;
                std::vector<std::optional<Atom>> b(r.var_names.size());
                oracle_descend(store, r, 0, b, derived);
                for (const Tuple& t : derived)
                    if (store.add(r.head.rel, t)) changed = true;
            }
        }
    }
}

bool stores_equal(const FactStore& a, const FactStore& b) {
    // Compare rendered relations so symbol ids do not matter.
    std::set<std::string> ra, rb;
    for (const auto& [name, rel] : a.relations())
        if (!rel.empty()) ra.insert(name + "\n" + a.render_relation(name));
    for (const auto& [name, rel] : b.relations())
        if (!rel.empty()) rb.insert(name + "\n" + b.render_relation(name));
    return ra == rb;
}

}  // namespace

TEST_CASE("parser handles rules, facts, comments and constants") {
    FactStore store;
    auto rules = parse_rules(R"(
# a comment
edge(1, 2).
edge(2, 3).   // another comment
label(1, "start").
path(X, Y) :- edge(X, Y).
path(X, Z) :- path(X, Y), edge(Y, Z).
tagged(X) :- label(X, "start").
sym(X) :- kindof(X, widget).
)",
                             store);
    CHECK(rules.size() == 4);
    CHECK(store.relation("edge").size() == 2);
    CHECK(store.relation("label").size() == 1);
    CHECK(rules[1].body.size() == 2);
    CHECK(rules[2].body[0].terms[1].atom == store.sym("start"));
    CHECK(rules[3].body[0].terms[1].atom == store.sym("widget"));
}

TEST_CASE("parser rejects unsafe rules") {
    FactStore store;
    CHECK_THROWS_AS(parse_rules("p(X) :- q(Y).", store), DatalogError);
    CHECK_THROWS_AS(parse_rules("p(X) :- q(X), !r(Z).", store), DatalogError);
    CHECK_THROWS_AS(parse_rules("p(_) :- q(X).", store), DatalogError);
    CHECK_NOTHROW(parse_rules("p(X) :- q(X), !r(X).", store));
}

TEST_CASE("stratification") {
    FactStore store;
    SUBCASE("no negation yields a single stratum") {
        auto rules = parse_rules("p(X) :- q(X). q(X) :- r(X).", store);
        Stratification s = stratify(rules);
        CHECK(s.strata.size() == 1);
    }
    SUBCASE("negation forces the negated relation into an earlier stratum") {
        auto rules = parse_rules("p(X) :- q(X), !r(X).", store);
        Stratification s = stratify(rules);
        CHECK(s.level.at("r") < s.level.at("p"));
    }
    SUBCASE("self-negation is unstratifiable") {
        auto rules = parse_rules("p(X) :- q(X), !p(X).", store);
        CHECK_THROWS_AS(stratify(rules), UnstratifiableError);
    }
    SUBCASE("negation through a cycle is unstratifiable") {
        auto rules = parse_rules("p(X) :- q(X), !r(X). r(X) :- p(X).", store);
        CHECK_THROWS_AS(stratify(rules), UnstratifiableError);
    }
}

TEST_CASE("transitive closure of a three-edge path") {
    FactStore store;
    auto rules = parse_rules(R"(
edge(1, 2). edge(2, 3). edge(3, 4).
path(X, Y) :- edge(X, Y).
path(X, Z) :- path(X, Y), edge(Y, Z).
)",
                             store);
    evaluate(store, rules);
    CHECK(store.relation("path").size() == 6);  // 12 13 14 23 24 34
    CHECK(store.contains("path", {store.integer(1), store.integer(4)}));
    CHECK(!store.contains("path", {store.integer(4), store.integer(1)}));
}

TEST_CASE("empty base facts derive nothing") {
    FactStore store;
    auto rules = parse_rules("p(X, Y) :- q(X), r(Y).", store);
    evaluate(store, rules);
    CHECK(store.relation("p").empty());
}

TEST_CASE("evaluation is idempotent") {
    FactStore store;
    auto rules = parse_rules(R"(
edge(1, 2). edge(2, 3).
node(1). node(2). node(3). node(9).
path(X, Y) :- edge(X, Y).
path(X, Z) :- path(X, Y), edge(Y, Z).
haspath(X) :- path(X, _).
unreached(X) :- node(X), !haspath(X).
)",
                             store);
    evaluate(store, rules);
    size_t n = store.total_facts();
    evaluate(store, rules);
    CHECK(store.total_facts() == n);
    CHECK(store.contains("unreached", {store.integer(9)}));
    CHECK(store.contains("unreached", {store.integer(3)}));  // 3 has no outgoing edge
    CHECK(!store.contains("unreached", {store.integer(1)}));
}

TEST_CASE("match_rule returns the premises of each derivation") {
    FactStore store;
    auto rules = parse_rules(R"(
owner(7). mod(7, 3). checked(9).
bad(F, V) :- owner(F), mod(F, V), !checked(F).
)",
                             store);
    evaluate(store, rules);
    auto matches = match_rule(store, rules[0]);
    REQUIRE(matches.size() == 1);
    CHECK(matches[0].head == Tuple{store.integer(7), store.integer(3)});
    REQUIRE(matches[0].premises.size() == 3);
    CHECK(matches[0].premises[0].first == "owner");
    CHECK(matches[0].premises[1].first == "mod");
    CHECK(matches[0].premises[2].first == "!checked");
    CHECK(matches[0].premises[2].second == Tuple{store.integer(7)});
}

namespace {

// Random stratified program generator. Relations carry a level; positive
// body literals draw from levels at or below the head's, negated ones
// strictly below, so every generated program is stratifiable.
std::string random_program(std::mt19937& rng) {
    auto pick = [&](int n) { return int(rng() % uint32_t(n)); };
    int n_rel = 3 + pick(6);  // at most 8 relations
    std::vector<int> arity, level;
    arity.resize(size_t(n_rel));
    level.resize(size_t(n_rel));
    for (int i = 0; i < n_rel; ++i) {
        arity[size_t(i)] = 1 + pick(2);
        level[size_t(i)] = pick(3);
    }

    std::ostringstream os;
    int n_facts = 20 + pick(181);
    for (int i = 0; i < n_facts; ++i) {
        int r = pick(n_rel);
        os << "r" << r << "(";
        for (int a = 0; a < arity[size_t(r)]; ++a) {
            if (a) os << ", ";
            os << pick(10);
        }
        os << ").\n";
    }

    int n_rules = 1 + pick(10);
    for (int i = 0; i < n_rules; ++i) {
        int head = pick(n_rel);
        int body_n = 1 + pick(3);
        std::vector<int> body;
        for (int b = 0; b < body_n; ++b) {
            int cand = pick(n_rel);
            if (level[size_t(cand)] <= level[size_t(head)]) body.push_back(cand);
        }
        if (body.empty()) body.push_back(head);
        int n_vars = 2 + pick(3);
        std::vector<std::vector<std::string>> body_terms;
        std::set<std::string> positive_vars;
        for (int b : body) {
            std::vector<std::string> terms;
            for (int a = 0; a < arity[size_t(b)]; ++a) {
                if (pick(4) == 0) {
                    terms.push_back(std::to_string(pick(10)));
                } else {
                    std::string v = "V" + std::to_string(pick(n_vars));
                    positive_vars.insert(v);
                    terms.push_back(v);
                }
            }
            body_terms.push_back(std::move(terms));
        }
        if (positive_vars.empty()) continue;
        std::vector<std::string> pv(positive_vars.begin(), positive_vars.end());

        os << "r" << head << "(";
        for (int a = 0; a < arity[size_t(head)]; ++a) {
            if (a) os << ", ";
            if (pick(5) == 0)
                os << pick(10);
            else
                os << pv[size_t(pick(int(pv.size())))];
        }
        os << ") :- ";
        for (size_t b = 0; b < body.size(); ++b) {
            if (b) os << ", ";
            os << "r" << body[b] << "(";
            for (size_t a = 0; a < body_terms[b].size(); ++a) {
                if (a) os << ", ";
                os << body_terms[b][a];
            }
            os << ")";
        }
        std::vector<int> lower;
        for (int r = 0; r < n_rel; ++r)
            if (level[size_t(r)] < level[size_t(head)]) lower.push_back(r);
        if (!lower.empty() && pick(2) == 0) {
            int neg = lower[size_t(pick(int(lower.size())))];
            os << ", !r" << neg << "(";
            for (int a = 0; a < arity[size_t(neg)]; ++a) {
                if (a) os << ", ";
                os << pv[size_t(pick(int(pv.size())))];
            }
            os << ")";
        }
        os << ".\n";
    }
    return os.str();
}

}  // namespace

TEST_CASE("semi-naive output equals the naive reference on random programs") {
    std::mt19937 rng(2024);
    auto t0 = std::chrono::steady_clock::now();
    for (int iter = 0; iter < 100; ++iter) {
        std::string prog = random_program(rng);
        CAPTURE(prog);

        FactStore fast;
        auto fast_rules = parse_rules(prog, fast);
        evaluate(fast, fast_rules);

        FactStore slow;
        auto slow_rules = parse_rules(prog, slow);
        naive_evaluate(slow, slow_rules);

        CHECK(stores_equal(fast, slow));
    }
    auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - t0)
                       .count();
    CHECK(elapsed < 10000);
}

TEST_CASE("monotonicity: adding a base fact never removes derived facts") {
    std::mt19937 rng(7);
    for (int iter = 0; iter < 20; ++iter) {
        std::string prog = random_program(rng);
        if (prog.find('!') != std::string::npos) continue;  // negation is non-monotone

        FactStore a;
        auto rules_a = parse_rules(prog, a);
        evaluate(a, rules_a);

        FactStore b;
        auto rules_b = parse_rules(prog + "\nr0(5).\n", b);
        evaluate(b, rules_b);

        for (const auto& [name, rel] : a.relations()) {
            for (const Tuple& t : rel) {
                Tuple tb;
                for (const Atom& at : t)
                    tb.push_back(at.kind == Atom::Kind::integer ? at : b.sym(a.symbol_text(at)));
                CHECK(b.contains(name, tb));
            }
        }
    }
}
