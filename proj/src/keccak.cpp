// rugscan: EVM bytecode rug-pull backdoor analyzer
// Copyright 2026 The rugscan Authors.
// SPDX-License-Identifier: Apache-2.0
#include "rugscan/keccak.hpp"

#include <cstring>

namespace rugscan {

namespace {

constexpr uint64_t kRoundConstants[24] = {
    0x0000000000000001ULL, 0x0000000000008082ULL, 0x800000000000808aULL, 0x8000000080008000ULL,
    0x000000000000808bULL, 0x0000000080000001ULL, 0x8000000080008081ULL, 0x8000000000008009ULL,
    0x000000000000008aULL, 0x0000000000000088ULL, 0x0000000080008009ULL, 0x000000008000000aULL,
    0x000000008000808bULL, 0x800000000000008bULL, 0x8000000000008089ULL, 0x8000000000008003ULL,
    0x8000000000008002ULL, 0x8000000000000080ULL, 0x000000000000800aULL, 0x800000008000000aULL,
    0x8000000080008081ULL, 0x8000000000008080ULL, 0x0000000080000001ULL, 0x8000000080008008ULL};

constexpr int kRotations[25] = {0,  1,  62, 28, 27, 36, 44, 6,  55, 20, 3,  10, 43,
                                25, 39, 41, 45, 15, 21, 8,  18, 2,  61, 56, 14};

inline uint64_t rotl(uint64_t v, int n) { return n == 0 ? v : (v << n) | (v >> (64 - n)); }

void keccak_f1600(uint64_t st[25]) {
    for (int round = 0; round < 24; ++round) {
        uint64_t c[5], d[5];
        for (int x = 0; x < 5; ++x)
            c[x] = st[x] ^ st[x + 5] ^ st[x + 10] ^ st[x + 15] ^ st[x + 20];
        for (int x = 0; x < 5; ++x) {
            d[x] = c[(x + 4) % 5] ^ rotl(c[(x + 1) % 5], 1);
            for (int y = 0; y < 5; ++y) st[x + 5 * y] ^= d[x];
        }
        uint64_t b[25];
        for (int x = 0; x < 5; ++x)
            for (int y = 0; y < 5; ++y)
                b[y + 5 * ((2 * x + 3 * y) % 5)] = rotl(st[x + 5 * y], kRotations[x + 5 * y]);
        for (int x = 0; x < 5; ++x)
            for (int y = 0; y < 5; ++y)
                st[x + 5 * y] = b[x + 5 * y] ^ (~b[(x + 1) % 5 + 5 * y] & b[(x + 2) % 5 + 5 * y]);
        st[0] ^= kRoundConstants[round];
    }
}

}  // namespace

std::array<uint8_t, 32> keccak256(const uint8_t* data, size_t len) {
    constexpr size_t rate = 136;  // 1600/8 - 2*256/8
    uint64_t st[25] = {};
    uint8_t block[rate];
    while (len >= rate) {
        for (size_t i = 0; i < rate / 8; ++i) {
            uint64_t w;
            std::memcpy(&w, data + i * 8, 8);
            st[i] ^= w;  // little-endian hosts only
        }
        keccak_f1600(st);
        data += rate;
        len -= rate;
    }
    std::memset(block, 0, rate);
    std::memcpy(block, data, len);
    block[len] = 0x01;  // Keccak domain padding (pre-NIST)
    block[rate - 1] |= 0x80;
    for (size_t i = 0; i < rate / 8; ++i) {
        uint64_t w;
        std::memcpy(&w, block + i * 8, 8);
        st[i] ^= w;
    }
    keccak_f1600(st);
    std::array<uint8_t, 32> out;
    std::memcpy(out.data(), st, 32);
    return out;
}

std::array<uint8_t, 32> keccak256(const Bytes& data) { return keccak256(data.data(), data.size()); }

std::array<uint8_t, 32> keccak256(std::string_view data) {
    return keccak256(reinterpret_cast<const uint8_t*>(data.data()), data.size());
}

uint32_t selector_of(std::string_view signature) {
    auto h = keccak256(signature);
    return uint32_t(h[0]) << 24 | uint32_t(h[1]) << 16 | uint32_t(h[2]) << 8 | uint32_t(h[3]);
}

std::string keccak256_hex(const Bytes& data) {
    auto h = keccak256(data);
    return hex_encode(h.data(), h.size());
}

}  // namespace rugscan
