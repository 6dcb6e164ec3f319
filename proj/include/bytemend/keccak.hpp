// bytemend: context-aware EVM bytecode patching toolkit
// Copyright 2026 The bytemend Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <bytemend/word.hpp>

#include <array>

namespace bytemend {

/// Legacy Keccak-256 (pre-NIST padding, 0x01 domain byte) as used by the EVM.
std::array<uint8_t, 32> keccak256(ByteView data);

Word keccak256_word(ByteView data);

} // namespace bytemend
