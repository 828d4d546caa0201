// rugscan: EVM bytecode rug-pull backdoor analyzer
// Copyright 2026 The rugscan Authors.
// SPDX-License-Identifier: Apache-2.0
#include "microevm.hpp"

#include <deque>
#include <map>

namespace rugscan::testsupport {

namespace {

struct PathState {
    uint32_t pc = 0;
    std::vector<u256> stack;
    std::map<u256, u256> storage;
    std::vector<uint8_t> memory;
    int steps = 0;

    u256 pop() {
        if (stack.empty()) return 0;
        u256 v = stack.back();
        stack.pop_back();
        return v;
    }
    void push(const u256& v) { stack.push_back(v); }

    void mem_ensure(size_t end) {
        if (memory.size() < end) memory.resize(end, 0);
    }
    void mstore(const u256& addr, const u256& value) {
        if (addr > 0xffff) return;
        size_t a = size_t(addr);
        mem_ensure(a + 32);
        u256 v = value;
        for (int i = 31; i >= 0; --i) {
            memory[a + size_t(i)] = uint8_t(v & 0xff);
            v >>= 8;
        }
    }
    u256 mload(const u256& addr) {
        if (addr > 0xffff) return 0;
        size_t a = size_t(addr);
        mem_ensure(a + 32);
        u256 v = 0;
        for (int i = 0; i < 32; ++i) v = (v << 8) | memory[a + size_t(i)];
        return v;
    }
};

bool is_terminator(uint8_t b) {
    return b == 0x00 || b == 0x56 || b == 0x57 || b == 0xf3 || b == 0xfd || b == 0xfe ||
           b == 0xff;
}

const u256 kTop = u256(1) << 255;

}  // namespace

std::set<std::pair<uint32_t, uint32_t>> MicroEvm::explore(const Bytes& code) {
    // Independent decoding: push widths from the byte value, leaders at
    // offset zero, JUMPDESTs, and instruction-after-terminator.
    std::set<uint32_t> leaders{0};
    std::set<uint32_t> jumpdests;
    {
        uint32_t pc = 0;
        while (pc < code.size()) {
            uint8_t b = code[pc];
            uint32_t width = (b >= 0x60 && b <= 0x7f) ? (b - 0x5f + 1) : 1;
            if (b == 0x5b) {
                leaders.insert(pc);
                jumpdests.insert(pc);
            }
            if (is_terminator(b) && pc + width < code.size()) leaders.insert(pc + width);
            pc += width;
        }
    }
    auto block_of = [&](uint32_t off) {
        auto it = leaders.upper_bound(off);
        --it;
        return *it;
    };

    std::set<std::pair<uint32_t, uint32_t>> transitions;
    std::deque<PathState> paths;
    paths.push_back(PathState{});
    int budget = max_paths;

    while (!paths.empty() && budget-- > 0) {
        PathState st = std::move(paths.front());
        paths.pop_front();

        while (st.steps++ < max_steps_per_path) {
            if (st.pc >= code.size()) break;
            uint32_t cur_block = block_of(st.pc);
            uint8_t b = code[st.pc];

            if (b >= 0x60 && b <= 0x7f) {  // PUSH1..PUSH32
                uint32_t n = b - 0x5f;
                u256 v = 0;
                for (uint32_t i = 0; i < n; ++i) {
                    uint32_t idx = st.pc + 1 + i;
                    v = (v << 8) | (idx < code.size() ? code[idx] : 0);
                }
                if (st.pc + 1 + n > code.size()) break;  // truncated push
                st.push(v);
                st.pc += 1 + n;
            } else if (b >= 0x80 && b <= 0x8f) {  // DUPn
                size_t n = size_t(b - 0x80) + 1;
                if (st.stack.size() < n) break;
                st.push(st.stack[st.stack.size() - n]);
                st.pc += 1;
            } else if (b >= 0x90 && b <= 0x9f) {  // SWAPn
                size_t n = size_t(b - 0x90) + 1;
                if (st.stack.size() < n + 1) break;
                std::swap(st.stack.back(), st.stack[st.stack.size() - 1 - n]);
                st.pc += 1;
            } else {
                switch (b) {
                    case 0x00: case 0xf3: case 0xfd: case 0xfe: case 0xff:  // halts
                        st.steps = max_steps_per_path;
                        break;
                    case 0x01: { u256 a = st.pop(), c = st.pop(); st.push(a + c); st.pc++; break; }
                    case 0x02: { u256 a = st.pop(), c = st.pop(); st.push(a * c); st.pc++; break; }
                    case 0x03: { u256 a = st.pop(), c = st.pop(); st.push(a - c); st.pc++; break; }
                    case 0x04: { u256 a = st.pop(), c = st.pop(); st.push(c == 0 ? u256(0) : a / c); st.pc++; break; }
                    case 0x06: { u256 a = st.pop(), c = st.pop(); st.push(c == 0 ? u256(0) : a % c); st.pc++; break; }
                    case 0x0a: { u256 a = st.pop(), e = st.pop(); u256 r = 1; while (e != 0) { if ((e & 1) != 0) r *= a; a *= a; e >>= 1; } st.push(r); st.pc++; break; }
                    case 0x10: { u256 a = st.pop(), c = st.pop(); st.push(u256(a < c ? 1 : 0)); st.pc++; break; }
                    case 0x11: { u256 a = st.pop(), c = st.pop(); st.push(u256(a > c ? 1 : 0)); st.pc++; break; }
                    case 0x12: { u256 a = st.pop(), c = st.pop(); bool na = (a & kTop) != 0, nc = (c & kTop) != 0; st.push(u256(na != nc ? (na ? 1 : 0) : (a < c ? 1 : 0))); st.pc++; break; }
                    case 0x13: { u256 a = st.pop(), c = st.pop(); bool na = (a & kTop) != 0, nc = (c & kTop) != 0; st.push(u256(na != nc ? (nc ? 1 : 0) : (a > c ? 1 : 0))); st.pc++; break; }
                    case 0x14: { u256 a = st.pop(), c = st.pop(); st.push(u256(a == c ? 1 : 0)); st.pc++; break; }
                    case 0x15: { u256 a = st.pop(); st.push(u256(a == 0 ? 1 : 0)); st.pc++; break; }
                    case 0x16: { u256 a = st.pop(), c = st.pop(); st.push(a & c); st.pc++; break; }
                    case 0x17: { u256 a = st.pop(), c = st.pop(); st.push(a | c); st.pc++; break; }
                    case 0x18: { u256 a = st.pop(), c = st.pop(); st.push(a ^ c); st.pc++; break; }
                    case 0x19: { u256 a = st.pop(); st.push(~a); st.pc++; break; }
                    case 0x1b: { u256 s = st.pop(), v = st.pop(); st.push(s >= 256 ? u256(0) : v << unsigned(s)); st.pc++; break; }
                    case 0x1c: { u256 s = st.pop(), v = st.pop(); st.push(s >= 256 ? u256(0) : v >> unsigned(s)); st.pc++; break; }
                    case 0x33: st.push(caller_value); st.pc++; break;
                    case 0x34: st.push(0); st.pc++; break;  // CALLVALUE
                    case 0x35: {  // CALLDATALOAD
                        u256 off = st.pop();
                        u256 v = 0;
                        for (int i = 0; i < 32; ++i) {
                            size_t idx = size_t(off) + size_t(i);
                            v = (v << 8) | (off <= 0xffff && idx < calldata.size() ? calldata[idx] : 0);
                        }
                        st.push(v);
                        st.pc++;
                        break;
                    }
                    case 0x36: st.push(u256(calldata.size())); st.pc++; break;
                    case 0x50: st.pop(); st.pc++; break;
                    case 0x51: { u256 a = st.pop(); st.push(st.mload(a)); st.pc++; break; }
                    case 0x52: { u256 a = st.pop(), v = st.pop(); st.mstore(a, v); st.pc++; break; }
                    case 0x53: { u256 a = st.pop(), v = st.pop(); if (a <= 0xffff) { st.mem_ensure(size_t(a) + 1); st.memory[size_t(a)] = uint8_t(v & 0xff); } st.pc++; break; }
                    case 0x54: { u256 k = st.pop(); auto it = st.storage.find(k); st.push(it == st.storage.end() ? u256(0) : it->second); st.pc++; break; }
                    case 0x55: { u256 k = st.pop(), v = st.pop(); st.storage[k] = v; st.pc++; break; }
                    case 0x56: {  // JUMP
                        u256 t = st.pop();
                        if (t > 0xffffff || !jumpdests.count(uint32_t(t))) { st.steps = max_steps_per_path; break; }
                        transitions.emplace(cur_block, uint32_t(t));
                        st.pc = uint32_t(t);
                        break;
                    }
                    case 0x57: {  // JUMPI: fork both outcomes
                        u256 t = st.pop();
                        st.pop();  // condition ignored; all outcomes explored
                        uint32_t fallthrough = st.pc + 1;
                        if (fallthrough < code.size()) {
                            PathState taken = st;
                            taken.pc = fallthrough;
                            transitions.emplace(cur_block, block_of(fallthrough));
                            paths.push_back(std::move(taken));
                        }
                        if (t <= 0xffffff && jumpdests.count(uint32_t(t))) {
                            transitions.emplace(cur_block, uint32_t(t));
                            st.pc = uint32_t(t);
                        } else {
                            st.steps = max_steps_per_path;
                        }
                        break;
                    }
                    case 0x58: st.push(st.pc); st.pc++; break;  // PC
                    case 0x5a: st.push(0); st.pc++; break;      // GAS
                    case 0x5b: st.pc++; break;                  // JUMPDEST
                    default:
                        st.steps = max_steps_per_path;  // unsupported: abandon path
                        break;
                }
            }
            if (st.steps >= max_steps_per_path) break;
            uint32_t nb = block_of(st.pc);
            if (nb != cur_block && st.pc == nb) {
                // sequential flow crossed into a new leader
                transitions.emplace(cur_block, nb);
            }
        }
    }
    return transitions;
}

}  // namespace rugscan::testsupport
