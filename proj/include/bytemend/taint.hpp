// bytemend: context-aware EVM bytecode patching toolkit
// Copyright 2026 The bytemend Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <bytemend/cfg.hpp>

#include <functional>
#include <map>
#include <set>

namespace bytemend {

/// Identifies the instruction that introduced a taint.
struct TaintSource {
    uint64_t address = 0;
    uint8_t opcode = 0;

    std::string_view mnemonic() const { return opcode_info(opcode).mnemonic; }
    auto operator<=>(const TaintSource&) const = default;
};

/// Abstract stack/memory/storage cell: a maybe-known 256-bit constant plus
/// the set of source instructions whose effect reached it.
struct TaintedValue {
    std::optional<Word> concrete;
    std::set<TaintSource> sources;
    /// Storage slot constant that seeded a hashed key (mapping or array
    /// access); survives +/- with a constant so array element keys keep it.
    std::optional<Word> mapping_seed;

    bool tainted_only_by(uint8_t opcode) const;
};

/// Shadowed machine state threaded through one execution path.
struct ShadowState {
    std::vector<TaintedValue> stack;
    std::map<Word, TaintedValue> memory; // 32-byte cells at concrete offsets
    std::map<Word, TaintedValue> storage;
    TaintedValue unknown_memory; // summary cell for non-concrete offsets
};

using TaintPredicate = std::function<bool(const Instruction&)>;

/// Executes one instruction on the shadow state. Instructions matched by
/// taint_sources stamp their (address, opcode) onto the produced value.
/// Throws TaintError on stack underflow (a path or CFG defect).
void step(ShadowState& state, const Instruction& ins, const TaintPredicate& taint_sources);

/// As above, also reporting the operand values the instruction popped.
void step(ShadowState& state, const Instruction& ins, const TaintPredicate& taint_sources,
          std::vector<TaintedValue>* consumed);

/// Per-instruction record of what one execution consumed, in pop order.
struct PathTaint {
    /// address -> one operand list per visit of that instruction.
    std::map<uint64_t, std::vector<std::vector<TaintedValue>>> records;

    const std::vector<TaintedValue>* last_operands(uint64_t address) const;
};

/// Runs step over a whole path, recording the operands every instruction
/// consumed. Propagates TaintError; the caller decides to skip the path.
PathTaint run_path(const InstrPath& path, const TaintPredicate& taint_sources);

/// Concrete evaluation of a pure-data opcode (the taint engine's arithmetic
/// route; the interpreter implements its own independently).
Word concrete_eval(uint8_t opcode, std::span<const Word> operands);

/// Convenience predicates.
TaintPredicate taint_push();
TaintPredicate taint_push_and_masks(); // PUSH*, AND, SIGNEXTEND
TaintPredicate taint_opcode(uint8_t opcode);

} // namespace bytemend
