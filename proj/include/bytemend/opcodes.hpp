// bytemend: context-aware EVM bytecode patching toolkit
// Copyright 2026 The bytemend Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

namespace bytemend {

/// Static description of one EVM opcode.
struct OpcodeInfo {
    std::string_view mnemonic;
    uint8_t byte_value = 0;
    uint8_t immediate_width = 0; // nonzero only for PUSH1..PUSH32
    uint8_t stack_pops = 0;
    uint8_t stack_pushes = 0;
    uint32_t base_gas = 0;
    bool assigned = false; // false for bytes with no instruction assigned
};

/// Lookup by byte value; unassigned bytes return an INVALID-class entry
/// whose mnemonic is "UNKNOWN_0x??".
const OpcodeInfo& opcode_info(uint8_t byte_value);

/// Lookup by mnemonic. Accepts the SUICIDE alias for SELFDESTRUCT and
/// KECCAK256 for SHA3.
std::optional<uint8_t> opcode_by_mnemonic(std::string_view mnemonic);

// Byte values used throughout the toolkit.
inline constexpr uint8_t OP_STOP = 0x00;
inline constexpr uint8_t OP_ADD = 0x01;
inline constexpr uint8_t OP_MUL = 0x02;
inline constexpr uint8_t OP_SUB = 0x03;
inline constexpr uint8_t OP_DIV = 0x04;
inline constexpr uint8_t OP_SDIV = 0x05;
inline constexpr uint8_t OP_MOD = 0x06;
inline constexpr uint8_t OP_SMOD = 0x07;
inline constexpr uint8_t OP_ADDMOD = 0x08;
inline constexpr uint8_t OP_MULMOD = 0x09;
inline constexpr uint8_t OP_EXP = 0x0a;
inline constexpr uint8_t OP_SIGNEXTEND = 0x0b;
inline constexpr uint8_t OP_LT = 0x10;
inline constexpr uint8_t OP_GT = 0x11;
inline constexpr uint8_t OP_SLT = 0x12;
inline constexpr uint8_t OP_SGT = 0x13;
inline constexpr uint8_t OP_EQ = 0x14;
inline constexpr uint8_t OP_ISZERO = 0x15;
inline constexpr uint8_t OP_AND = 0x16;
inline constexpr uint8_t OP_OR = 0x17;
inline constexpr uint8_t OP_XOR = 0x18;
inline constexpr uint8_t OP_NOT = 0x19;
inline constexpr uint8_t OP_BYTE = 0x1a;
inline constexpr uint8_t OP_SHL = 0x1b;
inline constexpr uint8_t OP_SHR = 0x1c;
inline constexpr uint8_t OP_SAR = 0x1d;
inline constexpr uint8_t OP_SHA3 = 0x20;
inline constexpr uint8_t OP_ADDRESS = 0x30;
inline constexpr uint8_t OP_BALANCE = 0x31;
inline constexpr uint8_t OP_ORIGIN = 0x32;
inline constexpr uint8_t OP_CALLER = 0x33;
inline constexpr uint8_t OP_CALLVALUE = 0x34;
inline constexpr uint8_t OP_CALLDATALOAD = 0x35;
inline constexpr uint8_t OP_CALLDATASIZE = 0x36;
inline constexpr uint8_t OP_CALLDATACOPY = 0x37;
inline constexpr uint8_t OP_CODESIZE = 0x38;
inline constexpr uint8_t OP_CODECOPY = 0x39;
inline constexpr uint8_t OP_GASPRICE = 0x3a;
inline constexpr uint8_t OP_EXTCODESIZE = 0x3b;
inline constexpr uint8_t OP_EXTCODECOPY = 0x3c;
inline constexpr uint8_t OP_RETURNDATASIZE = 0x3d;
inline constexpr uint8_t OP_RETURNDATACOPY = 0x3e;
inline constexpr uint8_t OP_EXTCODEHASH = 0x3f;
inline constexpr uint8_t OP_BLOCKHASH = 0x40;
inline constexpr uint8_t OP_COINBASE = 0x41;
inline constexpr uint8_t OP_TIMESTAMP = 0x42;
inline constexpr uint8_t OP_NUMBER = 0x43;
inline constexpr uint8_t OP_DIFFICULTY = 0x44;
inline constexpr uint8_t OP_GASLIMIT = 0x45;
inline constexpr uint8_t OP_CHAINID = 0x46;
inline constexpr uint8_t OP_SELFBALANCE = 0x47;
inline constexpr uint8_t OP_POP = 0x50;
inline constexpr uint8_t OP_MLOAD = 0x51;
inline constexpr uint8_t OP_MSTORE = 0x52;
inline constexpr uint8_t OP_MSTORE8 = 0x53;
inline constexpr uint8_t OP_SLOAD = 0x54;
inline constexpr uint8_t OP_SSTORE = 0x55;
inline constexpr uint8_t OP_JUMP = 0x56;
inline constexpr uint8_t OP_JUMPI = 0x57;
inline constexpr uint8_t OP_PC = 0x58;
inline constexpr uint8_t OP_MSIZE = 0x59;
inline constexpr uint8_t OP_GAS = 0x5a;
inline constexpr uint8_t OP_JUMPDEST = 0x5b;
inline constexpr uint8_t OP_PUSH1 = 0x60;
inline constexpr uint8_t OP_PUSH2 = 0x61;
inline constexpr uint8_t OP_PUSH4 = 0x63;
inline constexpr uint8_t OP_PUSH20 = 0x73;
inline constexpr uint8_t OP_PUSH32 = 0x7f;
inline constexpr uint8_t OP_DUP1 = 0x80;
inline constexpr uint8_t OP_DUP2 = 0x81;
inline constexpr uint8_t OP_DUP3 = 0x82;
inline constexpr uint8_t OP_SWAP1 = 0x90;
inline constexpr uint8_t OP_LOG0 = 0xa0;
inline constexpr uint8_t OP_LOG4 = 0xa4;
inline constexpr uint8_t OP_CREATE = 0xf0;
inline constexpr uint8_t OP_CALL = 0xf1;
inline constexpr uint8_t OP_CALLCODE = 0xf2;
inline constexpr uint8_t OP_RETURN = 0xf3;
inline constexpr uint8_t OP_DELEGATECALL = 0xf4;
inline constexpr uint8_t OP_CREATE2 = 0xf5;
inline constexpr uint8_t OP_STATICCALL = 0xfa;
inline constexpr uint8_t OP_REVERT = 0xfd;
inline constexpr uint8_t OP_INVALID = 0xfe;
inline constexpr uint8_t OP_SELFDESTRUCT = 0xff;

inline bool is_push(uint8_t op)
{
    return op >= OP_PUSH1 && op <= OP_PUSH32;
}

inline uint8_t push_width(uint8_t op)
{
    return is_push(op) ? op - OP_PUSH1 + 1 : 0;
}

/// PUSH opcode with the given immediate width (1..32).
inline uint8_t push_opcode(size_t width)
{
    return static_cast<uint8_t>(OP_PUSH1 + width - 1);
}

inline bool is_dup(uint8_t op)
{
    return op >= 0x80 && op <= 0x8f;
}

inline bool is_swap(uint8_t op)
{
    return op >= 0x90 && op <= 0x9f;
}

/// Instructions that end an execution path. Unassigned bytes behave like
/// INVALID and also terminate.
inline bool is_terminator(uint8_t op)
{
    return op == OP_STOP || op == OP_RETURN || op == OP_REVERT || op == OP_INVALID ||
           op == OP_SELFDESTRUCT || !opcode_info(op).assigned;
}

/// Terminator, JUMP or JUMPI: ends a basic block.
inline bool ends_block(uint8_t op)
{
    return op == OP_JUMP || op == OP_JUMPI || is_terminator(op);
}

} // namespace bytemend
