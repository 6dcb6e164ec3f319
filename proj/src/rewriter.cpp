// bytemend: context-aware EVM bytecode patching toolkit
// Copyright 2026 The bytemend Authors.
// SPDX-License-Identifier: Apache-2.0
#include <bytemend/rewriter.hpp>

#include <bytemend/errors.hpp>
#include <bytemend/inference.hpp>

#include <nlohmann/json.hpp>

#include <algorithm>
#include <chrono>

namespace bytemend {

bool RelocationMap::is_monotone() const
{
    uint64_t prev_shadow = 0;
    bool first = true;
    for (const auto& [original, shadow] : entries) {
        if (shadow < original)
            return false; // offsets never shrink
        if (!first && shadow <= prev_shadow)
            return false;
        prev_shadow = shadow;
        first = false;
    }
    return true;
}

RelocationMap relocation_map(const ControlFlowGraph& cfg)
{
    RelocationMap map;
    for (const auto& [start, block] : cfg.blocks)
        for (const Instruction& ins : block.instructions)
            if (!ins.inserted)
                map.entries[ins.original_address] = ins.shadow_address;
    return map;
}

void recompute_shadow_addresses(ControlFlowGraph& cfg)
{
    uint64_t offset = 0;
    for (auto& [start, block] : cfg.blocks) {
        for (Instruction& ins : block.instructions) {
            ins.shadow_address = offset;
            offset += ins.byte_size();
        }
    }
}

ControlFlowGraph apply_patch(ControlFlowGraph cfg, const InstantiatedPatch& patch)
{
    const BasicBlock& located = find_block_containing(cfg, patch.anchor_pc);
    if (unreachable_blocks(cfg).count(located.start))
        throw SafetyError("patch anchor " + std::to_string(patch.anchor_pc) +
                          " lies in an unreachable block");

    BasicBlock& block = cfg.blocks.at(located.start);
    auto& instrs = block.instructions;
    size_t anchor_idx = instrs.size();
    for (size_t i = 0; i < instrs.size(); ++i) {
        if (!instrs[i].inserted && instrs[i].original_address == patch.anchor_pc) {
            anchor_idx = i;
            break;
        }
    }
    if (anchor_idx == instrs.size())
        throw LocationError("anchor " + std::to_string(patch.anchor_pc) +
                            " vanished from its block");
    if (anchor_idx + patch.delete_count > instrs.size())
        throw StructuralError("delete sequence runs past the end of the block");

    instrs.erase(instrs.begin() + anchor_idx, instrs.begin() + anchor_idx + patch.delete_count);
    size_t insert_at = anchor_idx;
    if (patch.mode == InsertMode::after && patch.delete_count == 0)
        insert_at = anchor_idx + 1;
    instrs.insert(instrs.begin() + insert_at, patch.insert_instructions.begin(),
                  patch.insert_instructions.end());

    recompute_shadow_addresses(cfg);
    return cfg;
}

namespace {

constexpr int kMaxFixupRounds = 16;

// One value-refresh pass. Returns true when a PUSH had to widen (layout
// changed, addresses must be recomputed).
bool refresh_push_values(ControlFlowGraph& cfg)
{
    // JUMPDESTs that moved, plus symbolic label definitions.
    std::map<Word, uint64_t> moved;
    std::map<int, uint64_t> labels;
    for (const auto& [start, block] : cfg.blocks) {
        for (const Instruction& ins : block.instructions) {
            if (ins.opcode != OP_JUMPDEST)
                continue;
            if (ins.inserted) {
                if (ins.dest_label >= 0)
                    labels[ins.dest_label] = ins.shadow_address;
            } else if (ins.original_address != ins.shadow_address) {
                moved[Word(ins.original_address)] = ins.shadow_address;
            }
        }
    }

    bool widened = false;
    for (auto& [start, block] : cfg.blocks) {
        for (Instruction& ins : block.instructions) {
            if (!is_push(ins.opcode))
                continue;

            std::optional<uint64_t> target;
            if (ins.push_label >= 0) {
                auto it = labels.find(ins.push_label);
                if (it == labels.end())
                    throw RelocationError("undefined patch label " +
                                          std::to_string(ins.push_label));
                target = it->second;
            } else if (ins.bound_jumpdest >= 0) {
                // Bound in an earlier round; follow the JUMPDEST wherever the
                // current layout placed it.
                auto it = moved.find(Word(ins.bound_jumpdest));
                target = it != moved.end() ? it->second
                                           : static_cast<uint64_t>(ins.bound_jumpdest);
            } else if (!ins.inserted && ins.bound_jumpdest == Instruction::kUnbound) {
                auto it = moved.find(ins.immediate_value());
                if (it != moved.end()) {
                    ins.bound_jumpdest = static_cast<int64_t>(it->first);
                    target = it->second;
                }
            }
            if (!target)
                continue;

            size_t needed = byte_width(Word(*target));
            if (needed > ins.immediate.size()) {
                ins.opcode = push_opcode(needed);
                ins.immediate.resize(needed);
                widened = true;
            }
            ins.immediate = word_to_bytes(Word(*target), ins.immediate.size());
        }
    }
    return widened;
}

} // namespace

ControlFlowGraph fix_jump_targets(ControlFlowGraph cfg)
{
    recompute_shadow_addresses(cfg);
    for (int round = 0; round < kMaxFixupRounds; ++round) {
        if (!refresh_push_values(cfg))
            return cfg;
        recompute_shadow_addresses(cfg);
    }
    throw RelocationError("jump fixup did not converge within " +
                          std::to_string(kMaxFixupRounds) + " rounds");
}

Bytes reassemble(const ControlFlowGraph& cfg)
{
    std::vector<Instruction> linear;
    linear.reserve(cfg.instruction_count());
    for (const auto& [start, block] : cfg.blocks)
        linear.insert(linear.end(), block.instructions.begin(), block.instructions.end());

    Bytes out = assemble(linear);

    // Instruction-boundary JUMPDESTs in the final layout.
    std::set<uint64_t> jumpdests;
    uint64_t offset = 0;
    for (const Instruction& ins : linear) {
        if (ins.opcode == OP_JUMPDEST)
            jumpdests.insert(offset);
        offset += ins.byte_size();
    }

    std::string offenders;
    for (const Instruction& ins : linear) {
        if (!is_push(ins.opcode))
            continue;
        if (ins.push_label < 0 && ins.bound_jumpdest < 0)
            continue;
        Word value = ins.immediate_value();
        if (value > offset || !jumpdests.count(static_cast<uint64_t>(value))) {
            if (!offenders.empty())
                offenders += ", ";
            offenders += "push at shadow " + std::to_string(ins.shadow_address) + " -> " +
                         to_hex(value);
        }
    }
    if (!offenders.empty())
        throw ReassemblyError("rewritten jump targets do not land on JUMPDEST: " + offenders);
    return out;
}

Bytes fix_deployment(const BytecodeAnatomy& anatomy, ByteView new_runtime,
                     std::span<const InstantiatedPatch> constructor_patches)
{
    if (!anatomy.has_deployment()) {
        Bytes out(new_runtime.begin(), new_runtime.end());
        return out;
    }

    std::vector<Instruction> instrs = disassemble(anatomy.deployment);
    size_t stub = find_deploy_stub(instrs);
    if (stub == static_cast<size_t>(-1))
        throw AnatomyError("anatomy has deployment code but no deploy stub was found");

    uint64_t len_pc = instrs[stub].original_address;
    uint64_t ofs_pc = instrs[stub + 2].original_address;

    ControlFlowGraph cfg = build_cfg(instrs);

    // Constructor patches land at the very end of constructor logic, right
    // before the copy epilogue.
    for (const InstantiatedPatch& patch : constructor_patches) {
        InstantiatedPatch at_stub = patch;
        at_stub.anchor_pc = len_pc;
        at_stub.mode = InsertMode::before;
        at_stub.delete_count = 0;
        for (Instruction& ins : at_stub.insert_instructions)
            ins.original_address = len_pc;
        cfg = apply_patch(std::move(cfg), at_stub);
    }

    // The stub's size/offset operands are data, never jump targets.
    auto find_instr = [&](uint64_t pc) -> Instruction& {
        BasicBlock& block = cfg.blocks.at(find_block_containing(cfg, pc).start);
        for (Instruction& ins : block.instructions)
            if (!ins.inserted && ins.original_address == pc)
                return ins;
        throw LocationError("deploy stub instruction vanished");
    };
    find_instr(len_pc).bound_jumpdest = Instruction::kPinnedData;
    find_instr(ofs_pc).bound_jumpdest = Instruction::kPinnedData;

    size_t deployed_len = new_runtime.size() + anatomy.metadata.size();
    size_t original_deployment_len = anatomy.deployment.size();

    auto total_length = [&cfg]() {
        size_t n = 0;
        for (const auto& [start, block] : cfg.blocks)
            for (const Instruction& ins : block.instructions)
                n += ins.byte_size();
        return n;
    };

    // Widths only ever grow, so the length settles quickly.
    Bytes deployment_code;
    size_t prev_len = 0;
    for (int round = 0; round < kMaxFixupRounds; ++round) {
        Instruction& push_len = find_instr(len_pc);
        size_t w = std::max(byte_width(Word(deployed_len)), push_len.immediate.size());
        push_len.opcode = push_opcode(w);
        push_len.immediate = word_to_bytes(Word(deployed_len), w);

        if (total_length() != original_deployment_len) {
            size_t current = total_length();
            Instruction& push_ofs = find_instr(ofs_pc);
            size_t ow = std::max(byte_width(Word(current)), push_ofs.immediate.size());
            push_ofs.opcode = push_opcode(ow);
            push_ofs.immediate = word_to_bytes(Word(current), ow);
        }

        cfg = fix_jump_targets(std::move(cfg));
        size_t settled = total_length();
        if (settled == prev_len) {
            deployment_code = reassemble(cfg);
            break;
        }
        prev_len = settled;
    }
    if (deployment_code.empty())
        throw RelocationError("deploy stub adjustment did not settle");

    Bytes out = deployment_code;
    out.insert(out.end(), new_runtime.begin(), new_runtime.end());
    out.insert(out.end(), anatomy.metadata.begin(), anatomy.metadata.end());
    out.insert(out.end(), anatomy.constructor_args.begin(), anatomy.constructor_args.end());
    return out;
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0)
{
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

// Check half of the reentrancy lock: revert while the mutex is taken, used
// on shared-state stores outside the locked call site.
const PatchTemplate& lock_check_template()
{
    static const PatchTemplate tmpl = [] {
        nlohmann::json record{{"delete", ""},
                              {"insert", "free_storage_location SLOAD PUSH1_0x1 EQ ISZERO "
                                         "PUSH_jump_loc_1 JUMPI PUSH1_0x1 DUP1 REVERT "
                                         "JUMPDEST_jump_loc_1"},
                              {"insert_mode", "before"},
                              {"constructor", false}};
        return parse_template(record);
    }();
    return tmpl;
}

const Instruction* instruction_at(const std::vector<Instruction>& instrs, uint64_t pc)
{
    auto it = std::find_if(instrs.begin(), instrs.end(), [&](const Instruction& ins) {
        return ins.original_address == pc;
    });
    return it == instrs.end() ? nullptr : &*it;
}

// PUSH addresses whose value reaches a non-jump consumer on some enumerated
// path: retargeting those risks corrupting a data constant.
std::set<uint64_t> ambiguous_pushes(const ControlFlowGraph& cfg,
                                    const std::vector<Instruction>& instrs, size_t max_paths,
                                    size_t max_depth)
{
    std::set<Word> jumpdest_addrs;
    for (const Instruction& ins : instrs)
        if (ins.opcode == OP_JUMPDEST)
            jumpdest_addrs.insert(ins.original_address);

    std::set<uint64_t> ambiguous;
    PathSet paths = enumerate_paths(cfg, max_paths, max_depth);
    for (const InstrPath& path : paths.paths) {
        PathTaint taint;
        try {
            taint = run_path(path, taint_push());
        } catch (const TaintError&) {
            continue;
        }
        for (const Instruction* ins : path) {
            if (ins->opcode == OP_JUMP || ins->opcode == OP_JUMPI)
                continue;
            for (const auto& visit : taint.records[ins->original_address]) {
                for (const TaintedValue& operand : visit) {
                    for (const TaintSource& src : operand.sources) {
                        if (!is_push(src.opcode))
                            continue;
                        const Instruction* push = instruction_at(instrs, src.address);
                        if (push && jumpdest_addrs.count(push->immediate_value()))
                            ambiguous.insert(src.address);
                    }
                }
            }
        }
    }
    return ambiguous;
}

} // namespace

PatchOutcome patch_contract(ByteView code, std::span<const BugEntry> bugs,
                            const PatchOptions& options)
{
    PatchOutcome outcome;
    PatchReport& report = outcome.report;
    report.contract_id = options.contract_id;

    const auto& catalog = options.catalog ? *options.catalog : builtin_catalog();

    auto t0 = Clock::now();
    BytecodeAnatomy anatomy = split_anatomy(code);
    std::vector<Instruction> runtime_instrs = disassemble(anatomy.runtime);
    report.timings_ms["disassemble"] = ms_since(t0);

    t0 = Clock::now();
    ControlFlowGraph cfg = build_cfg(runtime_instrs);
    std::set<uint64_t> dead_blocks = unreachable_blocks(cfg);
    report.timings_ms["cfg"] = ms_since(t0);

    // Consent gate: an incompletely recovered CFG makes rewriting risky, but
    // only when there is actually something to patch.
    if (!dead_blocks.empty() && !bugs.empty()) {
        if (!options.force)
            throw SafetyError(std::to_string(dead_blocks.size()) +
                              " unreachable blocks in the recovered CFG; patching may break "
                              "semantics (rerun with --force to proceed)");
        report.warnings.push_back("proceeding despite " + std::to_string(dead_blocks.size()) +
                                  " unreachable blocks (--force)");
    }

    t0 = Clock::now();
    StorageLayout layout = infer_storage_layout(cfg, options.max_paths, options.max_depth);
    if (layout.opaque_key_ops > 0)
        report.warnings.push_back(std::to_string(layout.opaque_key_ops) +
                                  " storage accesses with non-inferable keys");
    Word next_slot = layout.next_free;
    auto allocate_slot = [&next_slot]() { return next_slot++; };

    // Owner discovery prefers the constructor; runtime code is the fallback.
    std::optional<ControlFlowGraph> dep_cfg;
    if (anatomy.has_deployment()) {
        std::vector<Instruction> dep_instrs = disassemble(anatomy.deployment);
        dep_cfg = build_cfg(dep_instrs);
    }
    report.timings_ms["layout"] = ms_since(t0);

    t0 = Clock::now();
    std::vector<InstantiatedPatch> runtime_patches;
    std::vector<InstantiatedPatch> ctor_patches;
    std::vector<size_t> bug_of_patch; // patch id -> report entry index
    int label_counter = 0;
    int next_patch_id = 0;

    auto make_patch = [&](const PatchTemplate& tmpl, PatchContext ctx, uint64_t anchor,
                          PatchClass cls, size_t bug_index) {
        ctx.base_label_counter = label_counter;
        InstantiatedPatch patch = instantiate(tmpl, ctx, anchor, cls);
        label_counter += patch.labels_used;
        patch.id = next_patch_id++;
        for (Instruction& ins : patch.insert_instructions)
            ins.patch_id = patch.id;
        bug_of_patch.push_back(bug_index);
        return patch;
    };

    for (const BugEntry& bug : bugs) {
        PatchReportEntry entry;
        entry.bug = bug;
        size_t bug_index = report.entries.size();
        try {
            const Instruction* anchor = instruction_at(runtime_instrs, bug.pc);
            if (!anchor)
                throw ReportError("pc " + std::to_string(bug.pc) +
                                  " is not an instruction boundary");
            auto declared = opcode_by_mnemonic(bug.opcode);
            if (!declared || *declared != anchor->opcode)
                throw ReportError("opcode at pc " + std::to_string(bug.pc) + " is " +
                                  std::string(anchor->mnemonic()) + ", report declared " +
                                  bug.opcode);
            if (dead_blocks.count(find_block_containing(cfg, bug.pc).start)) {
                entry.status = PatchStatus::skipped;
                entry.reason = "unreachable block";
                report.entries.push_back(std::move(entry));
                continue;
            }

            PatchClass cls = patch_class_of(bug.vulnerability);
            const std::vector<PatchTemplate>& templates = catalog.at(cls);

            switch (cls) {
            case PatchClass::overflow_add:
            case PatchClass::overflow_mul:
            case PatchClass::underflow_sub: {
                IntegerType type = infer_integer_type(cfg, bug.pc);
                PatchContext ctx;
                ctx.integer_bounds = bounds_of(type).max;
                runtime_patches.push_back(make_patch(templates.at(0), ctx, bug.pc, cls, bug_index));
                break;
            }
            case PatchClass::reentrancy: {
                Word mutex_slot = allocate_slot();
                PatchContext ctx;
                ctx.free_storage_key = mutex_slot;
                runtime_patches.push_back(make_patch(templates.at(0), ctx, bug.pc, cls, bug_index));
                runtime_patches.push_back(make_patch(templates.at(1), ctx, bug.pc, cls, bug_index));
                // Stores of the shared state reachable without passing the
                // call-site lock get the check half in front of them.
                std::set<uint64_t> shared =
                    find_shared_state_writes(cfg, bug.pc, options.max_paths, options.max_depth);
                std::set<uint64_t> locked =
                    sstores_on_paths_through(cfg, bug.pc, options.max_paths, options.max_depth);
                for (uint64_t site : shared) {
                    if (locked.count(site))
                        continue;
                    runtime_patches.push_back(
                        make_patch(lock_check_template(), ctx, site, cls, bug_index));
                }
                entry.storage_slots_allocated.push_back(mutex_slot);
                break;
            }
            case PatchClass::tx_origin: {
                runtime_patches.push_back(
                    make_patch(templates.at(0), PatchContext{}, bug.pc, cls, bug_index));
                break;
            }
            case PatchClass::access_control: {
                std::optional<Word> owner;
                if (dep_cfg)
                    owner = find_owner_variable(*dep_cfg, options.max_paths, options.max_depth);
                if (!owner)
                    owner = find_owner_variable(cfg, options.max_paths, options.max_depth);
                PatchContext ctx;
                if (owner) {
                    ctx.free_storage_key = *owner;
                } else {
                    if (!anatomy.has_deployment())
                        throw ContextError("no owner variable found and no deployment bytecode "
                                           "to initialize one");
                    ctx.free_storage_key = allocate_slot();
                    ctor_patches.push_back(
                        make_patch(templates.at(0), ctx, 0, cls, bug_index));
                    entry.storage_slots_allocated.push_back(ctx.free_storage_key);
                }
                runtime_patches.push_back(make_patch(templates.at(1), ctx, bug.pc, cls, bug_index));
                break;
            }
            case PatchClass::unhandled_exception: {
                runtime_patches.push_back(
                    make_patch(templates.at(0), PatchContext{}, bug.pc, cls, bug_index));
                break;
            }
            }
            entry.status = PatchStatus::patched;
        } catch (const Error& e) {
            entry.status = PatchStatus::failed;
            entry.reason = e.what();
        }
        report.entries.push_back(std::move(entry));
    }
    report.timings_ms["inference"] = ms_since(t0);

    // Splice in descending anchor order so earlier anchors stay valid while
    // later ones are rewritten.
    t0 = Clock::now();
    std::vector<const InstantiatedPatch*> apply_order;
    for (const InstantiatedPatch& p : runtime_patches)
        apply_order.push_back(&p);
    std::stable_sort(apply_order.begin(), apply_order.end(),
                     [](const InstantiatedPatch* a, const InstantiatedPatch* b) {
                         return a->anchor_pc > b->anchor_pc;
                     });

    std::set<uint64_t> ambiguous;
    if (!apply_order.empty() || !ctor_patches.empty())
        ambiguous = ambiguous_pushes(cfg, runtime_instrs, options.max_paths, options.max_depth);

    std::map<int, int64_t> deleted_bytes; // patch id -> bytes removed
    for (const InstantiatedPatch* patch : apply_order) {
        if (report.entries[bug_of_patch[patch->id]].status != PatchStatus::patched)
            continue; // a sibling patch of this bug already failed
        int64_t removed = 0;
        if (patch->delete_count > 0) {
            const BasicBlock& block = find_block_containing(cfg, patch->anchor_pc);
            for (size_t i = 0; i < block.instructions.size(); ++i) {
                if (block.instructions[i].inserted ||
                    block.instructions[i].original_address != patch->anchor_pc)
                    continue;
                for (size_t k = 0; k < patch->delete_count && i + k < block.instructions.size();
                     ++k)
                    removed += static_cast<int64_t>(block.instructions[i + k].byte_size());
                break;
            }
        }
        try {
            cfg = apply_patch(std::move(cfg), *patch);
            deleted_bytes[patch->id] = removed;
        } catch (const Error& e) {
            PatchReportEntry& entry = report.entries[bug_of_patch[patch->id]];
            entry.status = PatchStatus::failed;
            entry.reason = e.what();
        }
    }

    cfg = fix_jump_targets(std::move(cfg));

    // Per-bug byte accounting, from the final instruction widths.
    std::map<int, int64_t> inserted_bytes;
    for (const auto& [start, block] : cfg.blocks)
        for (const Instruction& ins : block.instructions) {
            if (ins.inserted && ins.patch_id >= 0)
                inserted_bytes[ins.patch_id] += static_cast<int64_t>(ins.byte_size());
            if (!ins.inserted && ins.bound_jumpdest >= 0 &&
                ambiguous.count(ins.original_address))
                report.warnings.push_back(
                    "retargeted PUSH at pc " + std::to_string(ins.original_address) +
                    " also flows to non-jump consumers; value may be a data constant");
        }
    for (const InstantiatedPatch& patch : runtime_patches) {
        PatchReportEntry& entry = report.entries[bug_of_patch[patch.id]];
        if (entry.status == PatchStatus::patched)
            entry.bytes_inserted += inserted_bytes[patch.id] - deleted_bytes[patch.id];
    }
    for (const InstantiatedPatch& patch : ctor_patches) {
        PatchReportEntry& entry = report.entries[bug_of_patch[patch.id]];
        if (entry.status == PatchStatus::patched)
            entry.bytes_inserted += static_cast<int64_t>(patch.insert_byte_size());
    }

    Bytes new_runtime = reassemble(cfg);
    report.timings_ms["rewrite"] = ms_since(t0);

    t0 = Clock::now();
    std::vector<InstantiatedPatch> live_ctor_patches;
    for (const InstantiatedPatch& patch : ctor_patches)
        if (report.entries[bug_of_patch[patch.id]].status == PatchStatus::patched)
            live_ctor_patches.push_back(patch);

    if (anatomy.has_deployment()) {
        outcome.code = fix_deployment(anatomy, new_runtime, live_ctor_patches);
    } else {
        outcome.code = new_runtime;
    }
    report.timings_ms["deployment"] = ms_since(t0);

    return outcome;
}

} // namespace bytemend
