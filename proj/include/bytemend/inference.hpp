// bytemend: context-aware EVM bytecode patching toolkit
// Copyright 2026 The bytemend Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <bytemend/taint.hpp>

namespace bytemend {

/// Width and signedness of an integer variable recovered from compiler
/// codegen patterns.
struct IntegerType {
    unsigned bits = 256;
    bool is_signed = false;

    bool operator==(const IntegerType&) const = default;
};

/// Value range of an IntegerType; min is two's-complement encoded.
struct IntegerBounds {
    Word max;
    Word min;
};

/// Infers the type of the integer flowing into the arithmetic instruction at
/// bug_pc: an AND with a 2^k-1 mask means unsigned k-bit, a SIGNEXTEND with
/// first operand x means signed 8(x+1)-bit, the nearest preceding source
/// wins, and no pattern at all defaults to unsigned 256-bit. Throws
/// LocationError when bug_pc is not ADD, SUB or MUL.
IntegerType infer_integer_type(const ControlFlowGraph& cfg, uint64_t bug_pc);

IntegerBounds bounds_of(IntegerType type);

struct StorageLayout {
    std::set<Word> used_keys;
    Word next_free = 0;
    size_t opaque_key_ops = 0; // SLOAD/SSTOREs whose key could not be inferred
};

/// Collects the statically-known storage keys touched on every enumerated
/// path; hashed (mapping/array) keys contribute the slot constant that
/// seeded the hash. next_free = max(used_keys) + 1.
StorageLayout infer_storage_layout(const ControlFlowGraph& cfg, size_t max_paths = 10000,
                                   size_t max_depth = 512);

/// Storage key of a statically-keyed SSTORE whose stored value is tainted
/// solely by CALLER; absent when no such write exists.
std::optional<Word> find_owner_variable(const ControlFlowGraph& cfg, size_t max_paths = 10000,
                                        size_t max_depth = 512);

/// Addresses of every SSTORE in the contract that writes one of the storage
/// keys touched on paths through the vulnerable CALL at reentrant_pc.
/// Throws LocationError when reentrant_pc is not a CALL.
std::set<uint64_t> find_shared_state_writes(const ControlFlowGraph& cfg, uint64_t reentrant_pc,
                                            size_t max_paths = 10000, size_t max_depth = 512);

/// SSTORE addresses occurring on enumerated paths that pass through pc.
/// Used to exclude stores already protected by a call-site mutex.
std::set<uint64_t> sstores_on_paths_through(const ControlFlowGraph& cfg, uint64_t pc,
                                            size_t max_paths = 10000, size_t max_depth = 512);

std::string layout_to_json(const StorageLayout& layout);

} // namespace bytemend
