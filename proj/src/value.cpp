// rugscan: EVM bytecode rug-pull backdoor analyzer
// Copyright 2026 The rugscan Authors.
// SPDX-License-Identifier: Apache-2.0
#include "rugscan/value.hpp"

#include <algorithm>
#include <sstream>

namespace rugscan {

namespace {

constexpr int kMaxExprDepth = 14;
const u256 kTopBit = u256(1) << 255;

bool is_negative(const u256& v) { return (v & kTopBit) != 0; }

u256 twos_negate(const u256& v) { return (~v) + 1; }

// value << shift, saturating shifts >= 256 to zero.
u256 shl256(const u256& value, const u256& shift) {
    if (shift >= 256) return 0;
    return value << unsigned(shift);
}

u256 shr256(const u256& value, const u256& shift) {
    if (shift >= 256) return 0;
    return value >> unsigned(shift);
}

u256 sar256(const u256& value, const u256& shift) {
    if (shift >= 256) return is_negative(value) ? ~u256(0) : u256(0);
    u256 r = value >> unsigned(shift);
    if (is_negative(value)) {
        u256 mask = shift == 0 ? u256(0) : (~u256(0)) << unsigned(256 - unsigned(shift));
        r |= mask;
    }
    return r;
}

u256 exp256(u256 base, u256 e) {
    u256 r = 1;
    while (e != 0) {
        if ((e & 1) != 0) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

u256 sign_extend(const u256& byte_index, const u256& x) {
    if (byte_index >= 31) return x;
    unsigned bit = unsigned(byte_index) * 8 + 7;
    u256 mask = (u256(1) << (bit + 1)) - 1;
    if ((x & (u256(1) << bit)) != 0) return x | ~mask;
    return x & mask;
}

std::optional<u256> fold(uint8_t opbyte, const std::vector<ExprPtr>& args) {
    for (const auto& a : args)
        if (!a->is_const()) return std::nullopt;
    auto v = [&](size_t i) -> const u256& { return args[i]->cval; };
    switch (opbyte) {
        case op::ADD: return v(0) + v(1);
        case op::MUL: return v(0) * v(1);
        case op::SUB: return v(0) - v(1);
        case op::DIV: return v(1) == 0 ? u256(0) : v(0) / v(1);
        case op::SDIV: {
            if (v(1) == 0) return u256(0);
            bool na = is_negative(v(0)), nb = is_negative(v(1));
            u256 a = na ? twos_negate(v(0)) : v(0);
            u256 b = nb ? twos_negate(v(1)) : v(1);
            u256 q = a / b;
            return (na != nb) ? twos_negate(q) : q;
        }
        case op::MOD: return v(1) == 0 ? u256(0) : v(0) % v(1);
        case op::SMOD: {
            if (v(1) == 0) return u256(0);
            bool na = is_negative(v(0));
            u256 a = na ? twos_negate(v(0)) : v(0);
            u256 b = is_negative(v(1)) ? twos_negate(v(1)) : v(1);
            u256 r = a % b;
            return na ? twos_negate(r) : r;
        }
        case op::EXP: return exp256(v(0), v(1));
        case op::SIGNEXTEND: return sign_extend(v(0), v(1));
        case op::LT: return u256(v(0) < v(1) ? 1 : 0);
        case op::GT: return u256(v(0) > v(1) ? 1 : 0);
        case op::SLT: {
            bool na = is_negative(v(0)), nb = is_negative(v(1));
            if (na != nb) return u256(na ? 1 : 0);
            return u256(v(0) < v(1) ? 1 : 0);
        }
        case op::SGT: {
            bool na = is_negative(v(0)), nb = is_negative(v(1));
            if (na != nb) return u256(nb ? 1 : 0);
            return u256(v(0) > v(1) ? 1 : 0);
        }
        case op::EQ: return u256(v(0) == v(1) ? 1 : 0);
        case op::ISZERO: return u256(v(0) == 0 ? 1 : 0);
        case op::AND: return v(0) & v(1);
        case op::OR: return v(0) | v(1);
        case op::XOR: return v(0) ^ v(1);
        case op::NOT: return ~v(0);
        case op::BYTE:
            if (v(0) >= 32) return u256(0);
            return (v(1) >> (8 * (31 - unsigned(v(0))))) & 0xff;
        case op::SHL: return shl256(v(1), v(0));
        case op::SHR: return shr256(v(1), v(0));
        case op::SAR: return sar256(v(1), v(0));
        default: return std::nullopt;
    }
}

uint64_t hash_mix(uint64_t h, uint64_t v) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
}

uint64_t u256_hash(const u256& v) {
    uint64_t h = 0;
    u256 x = v;
    for (int i = 0; i < 4; ++i) {
        h = hash_mix(h, uint64_t(x & 0xffffffffffffffffULL));
        x >>= 64;
    }
    return h;
}

}  // namespace

bool StorageRef::operator==(const StorageRef& o) const {
    if (kind != o.kind) return false;
    if (kind == Kind::unknown) return true;
    if (root_slot != o.root_slot || keys.size() != o.keys.size()) return false;
    for (size_t i = 0; i < keys.size(); ++i)
        if (!expr_equal(keys[i], o.keys[i])) return false;
    return true;
}

std::string StorageRef::var_name() const {
    std::ostringstream os;
    switch (kind) {
        case Kind::slot: os << "s" << std::hex << root_slot; break;
        case Kind::mapping_entry: os << "m" << std::hex << root_slot; break;
        case Kind::unknown: os << "u"; break;
    }
    return os.str();
}

std::string StorageRef::render() const {
    std::string s = var_name();
    for (const auto& k : keys) s += "[" + rugscan::render(k) + "]";
    return s;
}

bool expr_equal(const ExprPtr& a, const ExprPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case Expr::Kind::constant: return a->cval == b->cval;
        case Expr::Kind::unknown: return true;
        case Expr::Kind::caller: return true;
        case Expr::Kind::calldata:
            return a->offset_known == b->offset_known &&
                   (!a->offset_known || a->cval == b->cval);
        case Expr::Kind::storage_load: return *a->ref == *b->ref;
        case Expr::Kind::hash:
        case Expr::Kind::arith: {
            if (a->opbyte != b->opbyte || a->args.size() != b->args.size()) return false;
            for (size_t i = 0; i < a->args.size(); ++i)
                if (!expr_equal(a->args[i], b->args[i])) return false;
            return true;
        }
    }
    return false;
}

uint64_t expr_hash(const ExprPtr& e) {
    if (!e) return 0;
    uint64_t h = uint64_t(e->kind) * 0x100000001b3ULL;
    switch (e->kind) {
        case Expr::Kind::constant: return hash_mix(h, u256_hash(e->cval));
        case Expr::Kind::unknown:
        case Expr::Kind::caller: return h;
        case Expr::Kind::calldata:
            return e->offset_known ? hash_mix(h, u256_hash(e->cval)) : hash_mix(h, 1);
        case Expr::Kind::storage_load: {
            h = hash_mix(h, uint64_t(e->ref->kind));
            h = hash_mix(h, u256_hash(e->ref->root_slot));
            for (const auto& k : e->ref->keys) h = hash_mix(h, expr_hash(k));
            return h;
        }
        case Expr::Kind::hash:
        case Expr::Kind::arith: {
            h = hash_mix(h, e->opbyte);
            for (const auto& a : e->args) h = hash_mix(h, expr_hash(a));
            return h;
        }
    }
    return h;
}

std::string render(const ExprPtr& e) {
    if (!e) return "?";
    switch (e->kind) {
        case Expr::Kind::constant: {
            std::ostringstream os;
            os << "0x" << std::hex << e->cval;
            return os.str();
        }
        case Expr::Kind::unknown: return "?";
        case Expr::Kind::caller: return "caller";
        case Expr::Kind::calldata: {
            if (!e->offset_known) return "cd(?)";
            std::ostringstream os;
            os << "cd(0x" << std::hex << e->cval << ")";
            return os.str();
        }
        case Expr::Kind::storage_load: return "ld(" + e->ref->render() + ")";
        case Expr::Kind::hash: {
            std::string s = "h(";
            for (size_t i = 0; i < e->args.size(); ++i) {
                if (i) s += ",";
                s += render(e->args[i]);
            }
            return s + ")";
        }
        case Expr::Kind::arith: {
            std::string m(opcode_info(e->opbyte).mnemonic);
            std::transform(m.begin(), m.end(), m.begin(), [](char c) { return char(tolower(c)); });
            std::string s = m + "(";
            for (size_t i = 0; i < e->args.size(); ++i) {
                if (i) s += ",";
                s += render(e->args[i]);
            }
            return s + ")";
        }
    }
    return "?";
}

ExprPtr make_const(const u256& v) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::constant;
    e->cval = v;
    e->depth = 1;
    return e;
}

ExprPtr make_unknown() {
    static const ExprPtr u = [] {
        auto e = std::make_shared<Expr>();
        e->kind = Expr::Kind::unknown;
        e->depth = 1;
        return e;
    }();
    return u;
}

ExprPtr make_caller() {
    static const ExprPtr c = [] {
        auto e = std::make_shared<Expr>();
        e->kind = Expr::Kind::caller;
        e->depth = 1;
        return e;
    }();
    return c;
}

ExprPtr make_calldata(std::optional<u256> offset) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::calldata;
    if (offset) {
        e->offset_known = true;
        e->cval = *offset;
    }
    e->depth = 1;
    return e;
}

ExprPtr make_storage_load(std::shared_ptr<const StorageRef> ref) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::storage_load;
    e->ref = std::move(ref);
    int d = 1;
    for (const auto& k : e->ref->keys) d = std::max(d, k->depth + 1);
    e->depth = d;
    return e;
}

ExprPtr make_hash(std::vector<ExprPtr> words) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::hash;
    e->args = std::move(words);
    int d = 1;
    for (const auto& a : e->args) d = std::max(d, a->depth + 1);
    if (d > kMaxExprDepth) return make_unknown();
    e->depth = d;
    return e;
}

ExprPtr make_arith(uint8_t opbyte, std::vector<ExprPtr> args) {
    if (auto c = fold(opbyte, args)) return make_const(*c);
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::arith;
    e->opbyte = opbyte;
    e->args = std::move(args);
    int d = 1;
    for (const auto& a : e->args) d = std::max(d, a->depth + 1);
    if (d > kMaxExprDepth) return make_unknown();
    e->depth = d;
    return e;
}

std::shared_ptr<const StorageRef> classify_storage_ref(const ExprPtr& addr) {
    auto ref = std::make_shared<StorageRef>();
    // Struct members and array elements appear as hash + constant offset;
    // identity is taken from the hash part.
    ExprPtr base = addr;
    if (base->kind == Expr::Kind::arith && base->opbyte == op::ADD) {
        if (base->args[0]->kind == Expr::Kind::hash && base->args[1]->is_const())
            base = base->args[0];
        else if (base->args[1]->kind == Expr::Kind::hash && base->args[0]->is_const())
            base = base->args[1];
    }
    if (base->is_const()) {
        ref->kind = StorageRef::Kind::slot;
        ref->root_slot = base->cval;
        return ref;
    }
    if (base->kind == Expr::Kind::hash) {
        std::vector<ExprPtr> keys;
        ExprPtr cur = base;
        // Chase nested keccak(key . inner) chains down to a constant slot.
        for (int i = 0; i < 8; ++i) {
            if (cur->args.size() == 2) {
                keys.insert(keys.begin(), cur->args[0]);
                ExprPtr inner = cur->args[1];
                if (inner->is_const()) {
                    ref->kind = StorageRef::Kind::mapping_entry;
                    ref->root_slot = inner->cval;
                    ref->keys = std::move(keys);
                    return ref;
                }
                if (inner->kind == Expr::Kind::hash) {
                    cur = inner;
                    continue;
                }
                return ref;  // unknown base
            }
            if (cur->args.size() == 1) {
                // keccak(slot): dynamic array data area, keyed by element index.
                if (cur->args[0]->is_const()) {
                    ExprPtr idx = make_const(0);
                    if (addr->kind == Expr::Kind::arith && addr->opbyte == op::ADD) {
                        idx = expr_equal(addr->args[0], base) ? addr->args[1] : addr->args[0];
                    }
                    keys.insert(keys.begin(), idx);
                    ref->kind = StorageRef::Kind::mapping_entry;
                    ref->root_slot = cur->args[0]->cval;
                    ref->keys = std::move(keys);
                    return ref;
                }
                return ref;
            }
            return ref;
        }
    }
    return ref;  // unknown
}

void add_defs(std::vector<uint32_t>& defs, const std::vector<uint32_t>& more) {
    for (uint32_t d : more) {
        auto it = std::lower_bound(defs.begin(), defs.end(), d);
        if (it == defs.end() || *it != d) defs.insert(it, d);
    }
}

Value merge_values(const Value& a, const Value& b) {
    Value out;
    if (expr_equal(a.expr, b.expr)) {
        out.expr = a.expr;
    } else {
        out.expr = make_unknown();
    }
    out.defs = a.defs;
    add_defs(out.defs, b.defs);
    return out;
}

}  // namespace rugscan
