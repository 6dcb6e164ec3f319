// bytemend: context-aware EVM bytecode patching toolkit
// Copyright 2026 The bytemend Authors.
// SPDX-License-Identifier: Apache-2.0
#include <bytemend/word.hpp>

#include <bytemend/errors.hpp>

namespace bytemend {

Word word_from_bytes(ByteView bytes)
{
    Word w = 0;
    for (uint8_t b : bytes)
        w = (w << 8) | b;
    return w;
}

Bytes word_to_bytes(const Word& w, size_t width)
{
    Bytes out(width, 0);
    Word v = w;
    for (size_t i = 0; i < width; ++i) {
        out[width - 1 - i] = static_cast<uint8_t>(v & 0xff);
        v >>= 8;
    }
    return out;
}

size_t byte_width(const Word& w)
{
    size_t n = 1;
    Word v = w >> 8;
    while (v != 0) {
        ++n;
        v >>= 8;
    }
    return n;
}

Bytes word_to_minimal_bytes(const Word& w)
{
    return word_to_bytes(w, byte_width(w));
}

static constexpr char kHexDigits[] = "0123456789abcdef";

std::string to_hex(const Word& w)
{
    return "0x" + to_hex(word_to_minimal_bytes(w));
}

std::string to_hex(ByteView bytes)
{
    std::string s;
    s.reserve(bytes.size() * 2);
    for (uint8_t b : bytes) {
        s.push_back(kHexDigits[b >> 4]);
        s.push_back(kHexDigits[b & 0xf]);
    }
    return s;
}

static int hex_nibble(char c)
{
    if (c >= '0' && c <= '9')
        return c - '0';
    if (c >= 'a' && c <= 'f')
        return c - 'a' + 10;
    if (c >= 'A' && c <= 'F')
        return c - 'A' + 10;
    return -1;
}

Bytes bytes_from_hex(std::string_view hex)
{
    if (hex.starts_with("0x") || hex.starts_with("0X"))
        hex.remove_prefix(2);
    if (hex.size() % 2 != 0)
        throw Error("hex string has odd length");
    Bytes out;
    out.reserve(hex.size() / 2);
    for (size_t i = 0; i < hex.size(); i += 2) {
        int hi = hex_nibble(hex[i]);
        int lo = hex_nibble(hex[i + 1]);
        if (hi < 0 || lo < 0)
            throw Error("invalid hex character at position " + std::to_string(i));
        out.push_back(static_cast<uint8_t>(hi << 4 | lo));
    }
    return out;
}

Word to_address(const Word& w)
{
    static const Word mask = (Word(1) << 160) - 1;
    return w & mask;
}

} // namespace bytemend
