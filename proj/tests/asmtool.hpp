// bytemend: context-aware EVM bytecode patching toolkit
// Copyright 2026 The bytemend Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <bytemend/asm.hpp>

#include <map>
#include <string>

namespace bytemend::test {

/// Small two-pass assembler for building fixture contracts by hand.
/// Labels always encode as PUSH2 so sizes are known up front; mark() records
/// the address of whatever comes next without emitting anything.
class Prog {
public:
    Prog& op(std::string_view mnemonic);
    Prog& op(uint8_t opcode);
    Prog& push(const Word& value, size_t width = 0);          // width 0 = minimal
    Prog& push_label(std::string_view name, size_t width = 2); // PUSHn <label>
    Prog& label(std::string_view name);                        // emits JUMPDEST, names it
    Prog& mark(std::string_view name);               // names the next address
    /// Pads with JUMPDESTs until the next instruction sits at address.
    Prog& pad_to(uint64_t address);

    Bytes assemble() const;
    uint64_t at(std::string_view name) const; // address of a mark or label

    // Common idioms.
    Prog& stop() { return op("STOP"); }
    Prog& revert_here(); // PUSH1 0 DUP1 REVERT
    /// Dispatcher arm: DUP1 PUSH4 selector EQ PUSH2 label JUMPI.
    Prog& dispatch(uint32_t selector, std::string_view target);
    /// Loads the 4-byte selector onto the stack (CALLDATALOAD >> 0xe0).
    Prog& selector();
    /// CALL with immediate zero in/out regions: value and to must already be
    /// pushed by the caller of this helper in the right spots; see fixtures.
    Prog& call_prologue(); // pushes outLen outOfs inLen inOfs (all zero)

private:
    struct Item {
        uint8_t opcode = 0;
        Bytes immediate;
        std::string label_ref; // nonempty: PUSH2 to resolve
        uint64_t pad_target = 0;
        bool is_pad = false;
    };
    std::vector<Item> items_;
    std::map<std::string, size_t> names_; // name -> item index whose address it takes
    mutable std::map<std::string, uint64_t> resolved_;
    mutable bool assembled_ = false;

    void layout() const;
};

/// Convenience: assemble a deployment wrapper around runtime code:
/// [constructor body] PUSH2 len DUP1 PUSH2 ofs PUSH1 0 CODECOPY PUSH1 0 RETURN.
Bytes wrap_deployment(const Bytes& constructor_body, const Bytes& runtime,
                      const Bytes& metadata = {});

} // namespace bytemend::test
