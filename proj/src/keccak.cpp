// bytemend: context-aware EVM bytecode patching toolkit
// Copyright 2026 The bytemend Authors.
// SPDX-License-Identifier: Apache-2.0
#include <bytemend/keccak.hpp>

#include <cstring>

namespace bytemend {

namespace {

constexpr uint64_t kRoundConstants[24] = {
    0x0000000000000001ULL, 0x0000000000008082ULL, 0x800000000000808aULL,
    0x8000000080008000ULL, 0x000000000000808bULL, 0x0000000080000001ULL,
    0x8000000080008081ULL, 0x8000000000008009ULL, 0x000000000000008aULL,
    0x0000000000000088ULL, 0x0000000080008009ULL, 0x000000008000000aULL,
    0x000000008000808bULL, 0x800000000000008bULL, 0x8000000000008089ULL,
    0x8000000000008003ULL, 0x8000000000008002ULL, 0x8000000000000080ULL,
    0x000000000000800aULL, 0x800000008000000aULL, 0x8000000080008081ULL,
    0x8000000000008080ULL, 0x0000000080000001ULL, 0x8000000080008008ULL,
};

constexpr int kRotations[5][5] = {
    {0, 36, 3, 41, 18},
    {1, 44, 10, 45, 2},
    {62, 6, 43, 15, 61},
    {28, 55, 25, 21, 56},
    {27, 20, 39, 8, 14},
};

inline uint64_t rotl(uint64_t x, int n)
{
    return n == 0 ? x : (x << n) | (x >> (64 - n));
}

void keccak_f1600(uint64_t a[5][5])
{
    for (int round = 0; round < 24; ++round) {
        // theta
        uint64_t c[5];
        uint64_t d[5];
        for (int x = 0; x < 5; ++x)
            c[x] = a[x][0] ^ a[x][1] ^ a[x][2] ^ a[x][3] ^ a[x][4];
        for (int x = 0; x < 5; ++x) {
            d[x] = c[(x + 4) % 5] ^ rotl(c[(x + 1) % 5], 1);
            for (int y = 0; y < 5; ++y)
                a[x][y] ^= d[x];
        }
        // rho + pi
        uint64_t b[5][5];
        for (int x = 0; x < 5; ++x)
            for (int y = 0; y < 5; ++y)
                b[y][(2 * x + 3 * y) % 5] = rotl(a[x][y], kRotations[x][y]);
        // chi
        for (int x = 0; x < 5; ++x)
            for (int y = 0; y < 5; ++y)
                a[x][y] = b[x][y] ^ (~b[(x + 1) % 5][y] & b[(x + 2) % 5][y]);
        // iota
        a[0][0] ^= kRoundConstants[round];
    }
}

} // namespace

std::array<uint8_t, 32> keccak256(ByteView data)
{
    constexpr size_t rate = 136; // 1600/8 - 2*256/8
    uint64_t state[5][5] = {};

    auto absorb_block = [&](const uint8_t* block) {
        for (size_t i = 0; i < rate / 8; ++i) {
            uint64_t lane = 0;
            for (int j = 7; j >= 0; --j)
                lane = (lane << 8) | block[i * 8 + j];
            state[i % 5][i / 5] ^= lane;
        }
        keccak_f1600(state);
    };

    size_t offset = 0;
    while (data.size() - offset >= rate) {
        absorb_block(data.data() + offset);
        offset += rate;
    }
    uint8_t last[rate] = {};
    size_t remaining = data.size() - offset;
    if (remaining > 0)
        std::memcpy(last, data.data() + offset, remaining);
    last[remaining] = 0x01; // legacy Keccak padding, not NIST 0x06
    last[rate - 1] |= 0x80;
    absorb_block(last);

    std::array<uint8_t, 32> digest;
    for (size_t i = 0; i < 4; ++i) {
        uint64_t lane = state[i % 5][i / 5];
        for (int j = 0; j < 8; ++j) {
            digest[i * 8 + j] = static_cast<uint8_t>(lane & 0xff);
            lane >>= 8;
        }
    }
    return digest;
}

Word keccak256_word(ByteView data)
{
    auto d = keccak256(data);
    return word_from_bytes(ByteView(d.data(), d.size()));
}

} // namespace bytemend
