// bytemend: context-aware EVM bytecode patching toolkit
// Copyright 2026 The bytemend Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <bytemend/opcodes.hpp>
#include <bytemend/word.hpp>

#include <vector>

namespace bytemend {

/// One decoded instruction. The original address is the byte offset in the
/// input; the shadow address is the offset in the rewritten layout. Both are
/// equal until rewriting begins.
struct Instruction {
    uint8_t opcode = OP_INVALID;
    Bytes immediate;
    uint64_t original_address = 0;
    uint64_t shadow_address = 0;
    bool truncated = false; // final PUSH whose immediate ran past end of code
    bool inserted = false;  // spliced in by a patch, original_address is the anchor
    int patch_id = -1;      // index of the patch that inserted this instruction
    int push_label = -1;    // symbolic jump-target label carried by a PUSH
    int dest_label = -1;    // label defined by this JUMPDEST
    // Relocation binding for a PUSH: kUnbound until the fixup pass ties the
    // value to a moved JUMPDEST's original address; kPinnedData is never
    // retargeted (codecopy size/offset operands).
    static constexpr int64_t kUnbound = -1;
    static constexpr int64_t kPinnedData = -2;
    int64_t bound_jumpdest = kUnbound;

    const OpcodeInfo& info() const { return opcode_info(opcode); }
    std::string_view mnemonic() const { return info().mnemonic; }
    size_t byte_size() const { return 1 + immediate.size(); }
    Word immediate_value() const { return word_from_bytes(immediate); }

    bool operator==(const Instruction& rhs) const
    {
        return opcode == rhs.opcode && immediate == rhs.immediate;
    }
};

/// Decodes arbitrary bytes. Never fails: unassigned byte values decode as
/// single-byte UNKNOWN_0x?? instructions, and a PUSH whose immediate runs
/// past the end of the input keeps the bytes that exist and is flagged
/// truncated.
std::vector<Instruction> disassemble(ByteView code);

/// Encodes instructions back to bytes in list order. Throws StructuralError
/// (naming the index) when an immediate does not match its opcode's width;
/// a truncated final instruction is re-emitted as-is.
Bytes assemble(std::span<const Instruction> instrs);


/// The regions of a full contract blob. Concatenating the four fields
/// reproduces the input exactly.
struct BytecodeAnatomy {
    Bytes deployment;
    Bytes runtime;
    Bytes metadata;
    Bytes constructor_args;

    bool has_deployment() const { return !deployment.empty(); }
};

/// Splits a contract blob into deployment stub, runtime code, trailing
/// compiler metadata and constructor arguments. Inputs without a
/// PUSH DUP1 PUSH PUSH CODECOPY deploy stub are classified as runtime-only.
/// Throws AnatomyError when a stub is present but its CODECOPY operands
/// point outside the input.
BytecodeAnatomy split_anatomy(ByteView code);

/// Index of the leading PUSH of the first PUSH DUP1 PUSH PUSH CODECOPY run
/// eventually followed by RETURN; SIZE_MAX when absent.
size_t find_deploy_stub(const std::vector<Instruction>& instrs);

/// Reads a bytecode file: hex text (optional 0x prefix, surrounding
/// whitespace ignored) or raw binary when not valid hex.
Bytes load_bytecode_file(const std::string& path);

} // namespace bytemend
