// bytemend: context-aware EVM bytecode patching toolkit
// Copyright 2026 The bytemend Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <bytemend/asm.hpp>

#include <map>
#include <optional>
#include <set>
#include <string>

namespace bytemend {

enum class EdgeKind { fallthrough, jump, branch_taken };

struct BasicBlock {
    uint64_t start = 0;
    std::vector<Instruction> instructions;
    std::set<uint64_t> successors;
    std::map<uint64_t, EdgeKind> edge_kinds;

    const Instruction& terminator() const { return instructions.back(); }
};

struct ControlFlowGraph {
    std::map<uint64_t, BasicBlock> blocks;
    uint64_t entry = 0;
    std::set<uint64_t> unresolved_jumps; // JUMP/JUMPI never resolved to a target

    size_t instruction_count() const;
    /// All instructions in ascending block order (the serialization order).
    std::vector<const Instruction*> linearized() const;
};

/// Stack of maybe-known constants used to resolve pushed jump targets.
using AbstractStack = std::vector<std::optional<Word>>;

/// Applies one instruction to an abstract stack: PUSH produces its constant,
/// DUP/SWAP copy and permute, everything else pops and pushes unknowns.
/// Underflow synthesizes unknowns (the stack summary is bottom-truncated).
void abstract_step(AbstractStack& stack, const Instruction& ins);

/// Recovers basic blocks and edges. Jump targets come from the
/// push-before-jump pattern and from propagating per-block entry stacks to a
/// bounded fixpoint; jumps that never resolve are recorded, not errors.
ControlFlowGraph build_cfg(std::span<const Instruction> instrs);

/// Block whose instruction list contains pc. Throws LocationError when pc is
/// not an instruction start.
const BasicBlock& find_block_containing(const ControlFlowGraph& cfg, uint64_t pc);

using InstrPath = std::vector<const Instruction*>;

/// One execution path from the entry block up to and including pc. Among
/// multiple predecessors the first complete path under ascending start-address
/// ordering wins. Throws UnreachableError when no path exists.
InstrPath path_to_root(const ControlFlowGraph& cfg, uint64_t pc, size_t max_depth = 512);

struct PathSet {
    std::vector<InstrPath> paths;
    bool truncated = false; // hit the max_paths budget
};

/// DFS path enumeration. Paths end at terminators, JUMPI forks both branches,
/// and each block may appear at most twice per path.
PathSet enumerate_paths(const ControlFlowGraph& cfg, size_t max_paths = 10000,
                        size_t max_depth = 512);

/// Blocks not reachable from the entry block.
std::set<uint64_t> unreachable_blocks(const ControlFlowGraph& cfg);

std::string cfg_to_json(const ControlFlowGraph& cfg);
std::string cfg_to_dot(const ControlFlowGraph& cfg);

} // namespace bytemend
