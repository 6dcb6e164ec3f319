// bytemend: context-aware EVM bytecode patching toolkit
// Copyright 2026 The bytemend Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace bytemend {

/// EVM machine word. Unsigned 256-bit with wraparound arithmetic.
using Word = boost::multiprecision::uint256_t;

using Bytes = std::vector<uint8_t>;
using ByteView = std::span<const uint8_t>;

/// Big-endian bytes -> Word. Accepts 0..32 bytes.
Word word_from_bytes(ByteView bytes);

/// Word -> fixed-width big-endian encoding (left-padded with zeros).
Bytes word_to_bytes(const Word& w, size_t width);

/// Shortest big-endian encoding; zero encodes as {0x00} (one byte).
Bytes word_to_minimal_bytes(const Word& w);

/// Number of bytes needed to represent w (>= 1).
size_t byte_width(const Word& w);

std::string to_hex(const Word& w);
std::string to_hex(ByteView bytes);

/// Parses a hex string with optional 0x prefix. Throws Error on odd length
/// or non-hex characters.
Bytes bytes_from_hex(std::string_view hex);

/// Truncate to the low 160 bits (address width).
Word to_address(const Word& w);

} // namespace bytemend
