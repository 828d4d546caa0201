// rugscan: EVM bytecode rug-pull backdoor analyzer
// Copyright 2026 The rugscan Authors.
// SPDX-License-Identifier: Apache-2.0
#include "rugscan/detectors.hpp"

#include <algorithm>
#include <functional>
#include <nlohmann/json.hpp>
#include <sstream>

#include "rugscan/flow.hpp"
#include "rugscan/keccak.hpp"
#include "rugscan/relations.hpp"
#include "rugscan/version.hpp"

namespace rugscan {

std::string_view to_string(FindingKind k) {
    switch (k) {
        case FindingKind::HiddenMint: return "HiddenMint";
        case FindingKind::LimitingSellOrder: return "LimitingSellOrder";
        case FindingKind::LeakingTokenDirect: return "LeakingTokenDirect";
        case FindingKind::LeakingTokenFee: return "LeakingTokenFee";
        case FindingKind::ProxyRisk: return "ProxyRisk";
    }
    return "?";
}

std::optional<FindingKind> finding_kind_from_string(std::string_view s) {
    if (s == "HiddenMint") return FindingKind::HiddenMint;
    if (s == "LimitingSellOrder") return FindingKind::LimitingSellOrder;
    if (s == "LeakingTokenDirect") return FindingKind::LeakingTokenDirect;
    if (s == "LeakingTokenFee") return FindingKind::LeakingTokenFee;
    if (s == "ProxyRisk") return FindingKind::ProxyRisk;
    return std::nullopt;
}

namespace {

EvidenceFact evidence_from(const FactStore& store, const std::string& predicate, const Tuple& t) {
    EvidenceFact ev;
    ev.predicate = predicate;
    for (const Atom& a : t) {
        ev.args.push_back(store.render(a));
        if (a.kind == Atom::Kind::integer) ev.offsets.push_back(uint32_t(a.value));
    }
    return ev;
}

std::vector<Finding> run_detector(const FactStore& store, FindingKind kind,
                                  const std::string& rule_head) {
    // The rules were interned against this store when it was evaluated;
    // re-parsing here reuses the same symbol ids.
    FactStore& mut = const_cast<FactStore&>(store);
    std::vector<Finding> out;
    for (const Rule& rule : parse_default_rules(mut)) {
        if (rule.head.rel != rule_head) continue;
        for (const RuleMatch& m : match_rule(store, rule)) {
            Finding f;
            f.kind = kind;
            f.severity = Severity::high;
            f.function = store.render(m.head[0]);
            if (m.head.size() > 1) f.variable = store.render(m.head[1]);
            for (const auto& [pred, tuple] : m.premises)
                f.evidence.push_back(evidence_from(store, pred, tuple));
            out.push_back(std::move(f));
        }
    }
    return out;
}

}  // namespace

std::vector<Finding> detect_hidden_mint(const FactStore& store) {
    return run_detector(store, FindingKind::HiddenMint, "HiddenMint");
}

std::vector<Finding> detect_limiting_sell(const FactStore& store) {
    return run_detector(store, FindingKind::LimitingSellOrder, "LimitingSellOrder");
}

std::vector<Finding> detect_leaking_token(const FactStore& store) {
    auto direct = run_detector(store, FindingKind::LeakingTokenDirect, "LeakingTokenDirect");
    auto fee = run_detector(store, FindingKind::LeakingTokenFee, "LeakingTokenFee");
    direct.insert(direct.end(), fee.begin(), fee.end());
    return direct;
}

std::vector<Finding> detect_proxy_risk(const Cfg& cfg) {
    std::map<uint32_t, std::vector<const ExecRecord*>> by_offset;
    for (const ExecRecord& r : cfg.exec_records)
        if (r.opbyte == op::DELEGATECALL) by_offset[r.offset].push_back(&r);

    std::vector<Finding> out;
    for (const FunctionInfo& f : cfg.functions) {
        if (f.kind == FunctionInfo::Kind::selector) continue;
        std::optional<Finding> finding;
        for (uint32_t bid : f.body_blocks) {
            const BasicBlock* b = cfg.block(bid);
            if (!b) continue;
            for (const Instruction& ins : b->instructions) {
                auto it = by_offset.find(ins.offset);
                if (it == by_offset.end()) continue;
                for (const ExecRecord* r : it->second) {
                    if (r->operands.size() < 2) continue;
                    const ExprPtr& target = r->operands[1].expr;
                    bool from_storage = false;
                    std::function<void(const ExprPtr&)> scan = [&](const ExprPtr& e) {
                        if (!e) return;
                        if (e->kind == Expr::Kind::storage_load) from_storage = true;
                        for (const auto& a : e->args) scan(a);
                    };
                    scan(target);
                    if (!from_storage && !target->is_const()) continue;
                    if (!finding) {
                        Finding fd;
                        fd.kind = FindingKind::ProxyRisk;
                        fd.severity = Severity::medium;
                        fd.function = f.name();
                        finding = std::move(fd);
                    }
                    EvidenceFact ev;
                    ev.predicate = "DelegateCallTarget";
                    ev.args = {render(target)};
                    ev.offsets = {r->offset};
                    finding->evidence.push_back(std::move(ev));
                }
            }
        }
        if (finding) out.push_back(std::move(*finding));
    }
    return out;
}

bool Report::has_high_severity() const {
    return std::any_of(findings.begin(), findings.end(),
                       [](const Finding& f) { return f.severity == Severity::high; });
}

nlohmann::json Report::to_json() const {
    nlohmann::json j;
    j["analyzer_version"] = analyzer_version;
    j["code_hash"] = code_hash;
    j["stats"] = {
        {"code_size", stats.code_size},
        {"metadata_trailer_len", stats.metadata_trailer_len},
        {"instruction_count", stats.instruction_count},
        {"block_count", stats.block_count},
        {"reachable_block_count", stats.reachable_block_count},
        {"function_count", stats.function_count},
        {"unresolved_jump_count", stats.unresolved_jump_count},
        {"fact_count", stats.fact_count},
    };
    j["findings"] = nlohmann::json::array();
    for (const Finding& f : findings) {
        nlohmann::json jf;
        jf["kind"] = std::string(to_string(f.kind));
        jf["selector"] = f.function;
        if (f.variable) jf["variable"] = *f.variable;
        jf["severity"] = f.severity == Severity::high ? "high" : "medium";
        jf["evidence"] = nlohmann::json::array();
        for (const EvidenceFact& ev : f.evidence) {
            nlohmann::json je;
            je["predicate"] = ev.predicate;
            je["args"] = ev.args;
            je["offsets"] = ev.offsets;
            jf["evidence"].push_back(std::move(je));
        }
        j["findings"].push_back(std::move(jf));
    }
    return j;
}

std::string Report::to_text() const {
    std::ostringstream os;
    os << "code hash   " << code_hash << "\n";
    os << "code size   " << stats.code_size << " bytes (" << stats.instruction_count
       << " instructions, " << stats.block_count << " blocks, " << stats.function_count
       << " functions, " << stats.unresolved_jump_count << " unresolved jumps)\n";
    if (findings.empty()) {
        os << "no findings\n";
        return os.str();
    }
    os << findings.size() << " finding(s):\n";
    for (const Finding& f : findings) {
        os << "  [" << (f.severity == Severity::high ? "high" : "medium") << "] "
           << to_string(f.kind) << " in " << f.function;
        if (f.variable) os << " (variable " << *f.variable << ")";
        os << "\n";
        for (const EvidenceFact& ev : f.evidence) {
            os << "      " << ev.predicate << "(";
            for (size_t i = 0; i < ev.args.size(); ++i) {
                if (i) os << ", ";
                os << ev.args[i];
            }
            os << ")\n";
        }
    }
    return os.str();
}

AnalysisResult analyze(const Bytes& raw, const AnalyzerConfig& config) {
    AnalysisResult res;
    res.report.analyzer_version = kAnalyzerVersion;
    res.report.code_hash = keccak256_hex(raw);

    Bytecode code = strip_metadata(raw);
    std::vector<Instruction> instrs = disassemble(code);
    res.cfg = build_cfg(instrs, config);
    res.facts = extract_relations(res.cfg, config);
    derive_all_features(res.facts);

    auto append = [&](std::vector<Finding> fs) {
        for (Finding& f : fs) res.report.findings.push_back(std::move(f));
    };
    append(detect_hidden_mint(res.facts));
    append(detect_limiting_sell(res.facts));
    append(detect_leaking_token(res.facts));
    append(detect_proxy_risk(res.cfg));

    std::sort(res.report.findings.begin(), res.report.findings.end(),
              [](const Finding& a, const Finding& b) {
                  return std::tie(a.kind, a.function, a.variable) <
                         std::tie(b.kind, b.function, b.variable);
              });

    ReportStats& st = res.report.stats;
    st.code_size = raw.size();
    st.metadata_trailer_len = code.metadata_trailer_len;
    st.instruction_count = instrs.size();
    st.block_count = res.cfg.blocks.size();
    for (const auto& [id, b] : res.cfg.blocks)
        if (b.reachable) ++st.reachable_block_count;
    st.function_count = res.cfg.functions.size();
    st.unresolved_jump_count = res.cfg.unresolved_jumps.size();
    st.fact_count = res.facts.total_facts();
    return res;
}

AnalysisResult analyze_hex(const std::string& hex, const AnalyzerConfig& config) {
    std::string trimmed;
    for (char c : hex)
        if (!isspace(uint8_t(c))) trimmed.push_back(c);
    auto bytes = hex_decode(trimmed);
    if (!bytes) throw InvalidInput("input is not valid hex (odd length or bad digit)");
    return analyze(*bytes, config);
}

}  // namespace rugscan
