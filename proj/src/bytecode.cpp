// rugscan: EVM bytecode rug-pull backdoor analyzer
// Copyright 2026 The rugscan Authors.
// SPDX-License-Identifier: Apache-2.0
#include "rugscan/bytecode.hpp"

#include <string>

namespace rugscan {

namespace {

// Minimal CBOR reader, just enough to validate the metadata trailer.
struct CborReader {
    const uint8_t* p;
    const uint8_t* end;

    bool byte(uint8_t& out) {
        if (p >= end) return false;
        out = *p++;
        return true;
    }

    // Reads a major-type header, returning (major, value). Indefinite
    // lengths are rejected.
    bool header(int& major, uint64_t& value) {
        uint8_t b;
        if (!byte(b)) return false;
        major = b >> 5;
        uint8_t info = b & 0x1f;
        if (info < 24) {
            value = info;
            return true;
        }
        int extra;
        switch (info) {
            case 24: extra = 1; break;
            case 25: extra = 2; break;
            case 26: extra = 4; break;
            case 27: extra = 8; break;
            default: return false;
        }
        value = 0;
        for (int i = 0; i < extra; ++i) {
            uint8_t e;
            if (!byte(e)) return false;
            value = value << 8 | e;
        }
        return true;
    }

    bool skip_value() {
        int major;
        uint64_t v;
        if (!header(major, v)) return false;
        switch (major) {
            case 0:
            case 1: return true;                       // integers
            case 2:
            case 3:                                    // byte/text string
                if (uint64_t(end - p) < v) return false;
                p += v;
                return true;
            case 4:                                    // array
                for (uint64_t i = 0; i < v; ++i)
                    if (!skip_value()) return false;
                return true;
            case 5:                                    // map
                for (uint64_t i = 0; i < v; ++i)
                    if (!skip_value() || !skip_value()) return false;
                return true;
            case 6: return skip_value();               // tag
            case 7: return true;                       // simple/float (value in header for simple)
        }
        return false;
    }
};

// Returns true if [begin,end) is exactly one CBOR map containing one of
// the Solidity metadata keys.
bool is_metadata_map(const uint8_t* begin, const uint8_t* endp) {
    CborReader r{begin, endp};
    int major;
    uint64_t pairs;
    if (!r.header(major, pairs)) return false;
    if (major != 5 || pairs == 0 || pairs > 16) return false;
    bool known_key = false;
    for (uint64_t i = 0; i < pairs; ++i) {
        int km;
        uint64_t klen;
        if (!r.header(km, klen)) return false;
        if (km != 3) return false;  // metadata keys are text strings
        if (uint64_t(r.end - r.p) < klen) return false;
        std::string key(reinterpret_cast<const char*>(r.p), klen);
        r.p += klen;
        if (key == "ipfs" || key == "bzzr0" || key == "bzzr1" || key == "solc") known_key = true;
        if (!r.skip_value()) return false;
    }
    return known_key && r.p == r.end;
}

}  // namespace

Bytecode strip_metadata(Bytes raw) {
    Bytecode out{std::move(raw), 0};
    const Bytes& b = out.bytes;
    if (b.size() < 2) return out;
    size_t len = size_t(b[b.size() - 2]) << 8 | b[b.size() - 1];
    if (len == 0 || len + 2 > b.size()) return out;
    const uint8_t* begin = b.data() + b.size() - 2 - len;
    if (is_metadata_map(begin, begin + len)) out.metadata_trailer_len = len + 2;
    return out;
}

std::vector<Instruction> disassemble(const Bytecode& code) {
    std::vector<Instruction> instrs;
    const size_t len = code.code_len();
    size_t pc = 0;
    while (pc < len) {
        Instruction ins;
        ins.offset = uint32_t(pc);
        ins.opcode = &opcode_info(code.bytes[pc]);
        size_t imm = ins.opcode->immediate_len;
        size_t avail = len - pc - 1;
        if (imm > avail) {
            ins.truncated = true;
            imm = avail;
        }
        ins.immediate.assign(code.bytes.begin() + pc + 1, code.bytes.begin() + pc + 1 + imm);
        pc += 1 + imm;
        instrs.push_back(std::move(ins));
    }
    return instrs;
}

Bytes reencode(const std::vector<Instruction>& instrs) {
    Bytes out;
    for (const auto& ins : instrs) {
        out.push_back(ins.opcode->byte);
        out.insert(out.end(), ins.immediate.begin(), ins.immediate.end());
    }
    return out;
}

}  // namespace rugscan
