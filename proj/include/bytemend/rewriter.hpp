// bytemend: context-aware EVM bytecode patching toolkit
// Copyright 2026 The bytemend Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <bytemend/cfg.hpp>
#include <bytemend/reports.hpp>
#include <bytemend/templates.hpp>

namespace bytemend {

/// original_address -> shadow_address for every pre-existing instruction.
/// Strictly monotone: patching only grows or preserves offsets.
struct RelocationMap {
    std::map<uint64_t, uint64_t> entries;

    bool is_monotone() const;
};

RelocationMap relocation_map(const ControlFlowGraph& cfg);

/// Reassigns shadow addresses as the running byte offset over blocks in
/// ascending start order.
void recompute_shadow_addresses(ControlFlowGraph& cfg);

/// Splices one instantiated patch into the block containing its anchor:
/// deletes delete_count instructions at the anchor and inserts the patch
/// body before or after it. Throws SafetyError when the anchor block is
/// unreachable.
ControlFlowGraph apply_patch(ControlFlowGraph cfg, const InstantiatedPatch& patch);

/// Repairs address references after patching: JUMPDESTs whose original and
/// shadow addresses differ have every PUSH of the original value rewritten
/// to the shadow value, widening the PUSH when the new value no longer fits
/// and iterating to a fixpoint; symbolic patch labels resolve here too.
/// Throws RelocationError when 16 rounds do not converge.
ControlFlowGraph fix_jump_targets(ControlFlowGraph cfg);

/// Serializes blocks in ascending start order. Every retargeted or symbolic
/// jump push must land on a JUMPDEST; offenders raise ReassemblyError.
Bytes reassemble(const ControlFlowGraph& cfg);

/// Rebuilds the full contract blob around a rewritten runtime: updates the
/// deploy stub's copy-length PUSH (and copy-offset PUSH when the deployment
/// code itself changed), splices constructor patches before the copy
/// epilogue, and re-appends metadata and constructor arguments verbatim.
Bytes fix_deployment(const BytecodeAnatomy& anatomy, ByteView new_runtime,
                     std::span<const InstantiatedPatch> constructor_patches);

struct PatchOptions {
    bool force = false; // proceed despite unreachable blocks
    size_t max_paths = 10000;
    size_t max_depth = 512;
    std::string contract_id = "contract";
    const std::map<PatchClass, std::vector<PatchTemplate>>* catalog = nullptr;
};

struct PatchOutcome {
    Bytes code;
    PatchReport report;
};

/// The full pipeline: anatomy split, CFG recovery, per-bug context inference
/// and template instantiation, splicing, jump fixup, reassembly and deploy
/// stub adjustment. Individual bugs that cannot be patched are reported and
/// skipped; the rest still apply. Throws SafetyError when the CFG has
/// unreachable blocks and force is off.
PatchOutcome patch_contract(ByteView code, std::span<const BugEntry> bugs,
                            const PatchOptions& options = {});

} // namespace bytemend
