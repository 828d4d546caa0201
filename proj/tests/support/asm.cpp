// rugscan: EVM bytecode rug-pull backdoor analyzer
// Copyright 2026 The rugscan Authors.
// SPDX-License-Identifier: Apache-2.0
#include "asm.hpp"

#include <stdexcept>

namespace rugscan::testsupport {

static Bytes minimal_be(const u256& v) {
    Bytes out;
    u256 x = v;
    while (x != 0) {
        out.insert(out.begin(), uint8_t(x & 0xff));
        x >>= 8;
    }
    if (out.empty()) out.push_back(0);
    return out;
}

Asm& Asm::op(uint8_t byte) {
    items_.push_back(Item{Item::Kind::byte, byte, {}, {}});
    return *this;
}

Asm& Asm::push(const u256& value) {
    Bytes imm = minimal_be(value);
    items_.push_back(Item{Item::Kind::push, uint8_t(0x60 + imm.size() - 1), std::move(imm), {}});
    return *this;
}

Asm& Asm::push_n(int width, const u256& value) {
    Bytes imm(size_t(width), 0);
    u256 x = value;
    for (int i = width - 1; i >= 0; --i) {
        imm[size_t(i)] = uint8_t(x & 0xff);
        x >>= 8;
    }
    items_.push_back(Item{Item::Kind::push, uint8_t(0x60 + width - 1), std::move(imm), {}});
    return *this;
}

Asm& Asm::push_label(const std::string& name) {
    items_.push_back(Item{Item::Kind::labelref, 0x61, {}, name});
    return *this;
}

Asm& Asm::label(const std::string& name) {
    items_.push_back(Item{Item::Kind::label, 0, {}, name});
    return *this;
}

Asm& Asm::jumpdest(const std::string& name) {
    label(name);
    return op(op::JUMPDEST);
}

Asm& Asm::raw(const Bytes& bytes) {
    for (uint8_t b : bytes) op(b);
    return *this;
}

Asm& Asm::jump_to(const std::string& name) {
    push_label(name);
    return op(op::JUMP);
}

Asm& Asm::jumpi_to(const std::string& name) {
    push_label(name);
    return op(op::JUMPI);
}

Bytes Asm::assemble() const {
    std::map<std::string, uint32_t> offsets;
    uint32_t pc = 0;
    for (const Item& it : items_) {
        switch (it.kind) {
            case Item::Kind::byte: pc += 1; break;
            case Item::Kind::push: pc += 1 + uint32_t(it.imm.size()); break;
            case Item::Kind::labelref: pc += 3; break;
            case Item::Kind::label:
                if (!offsets.emplace(it.name, pc).second)
                    throw std::runtime_error("duplicate label " + it.name);
                break;
        }
    }
    Bytes out;
    for (const Item& it : items_) {
        switch (it.kind) {
            case Item::Kind::byte: out.push_back(it.byte); break;
            case Item::Kind::push:
                out.push_back(it.byte);
                out.insert(out.end(), it.imm.begin(), it.imm.end());
                break;
            case Item::Kind::labelref: {
                auto f = offsets.find(it.name);
                if (f == offsets.end()) throw std::runtime_error("undefined label " + it.name);
                out.push_back(0x61);
                out.push_back(uint8_t(f->second >> 8));
                out.push_back(uint8_t(f->second & 0xff));
                break;
            }
            case Item::Kind::label: break;
        }
    }
    return out;
}

uint32_t Asm::offset_of(const std::string& label) const {
    std::map<std::string, uint32_t> offsets;
    uint32_t pc = 0;
    for (const Item& it : items_) {
        switch (it.kind) {
            case Item::Kind::byte: pc += 1; break;
            case Item::Kind::push: pc += 1 + uint32_t(it.imm.size()); break;
            case Item::Kind::labelref: pc += 3; break;
            case Item::Kind::label: offsets.emplace(it.name, pc); break;
        }
    }
    auto f = offsets.find(label);
    if (f == offsets.end()) throw std::runtime_error("undefined label " + label);
    return f->second;
}

}  // namespace rugscan::testsupport
