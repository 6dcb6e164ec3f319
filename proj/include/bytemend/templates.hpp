// bytemend: context-aware EVM bytecode patching toolkit
// Copyright 2026 The bytemend Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <bytemend/asm.hpp>

#include <nlohmann/json_fwd.hpp>

#include <map>

namespace bytemend {

/// Bug classes accepted in bug reports.
enum class Vulnerability {
    reentrancy,
    tx_origin,
    suicidal,
    leaking,
    unsafe_delegatecall,
    overflow_add,
    overflow_mul,
    underflow_sub,
    unhandled_exception,
};

/// Patch classes: suicidal, leaking and unsafe delegatecall share the
/// access-control templates.
enum class PatchClass {
    reentrancy,
    tx_origin,
    access_control,
    overflow_add,
    overflow_mul,
    underflow_sub,
    unhandled_exception,
};

PatchClass patch_class_of(Vulnerability v);
std::string_view to_string(Vulnerability v);
std::string_view to_string(PatchClass c);
std::optional<Vulnerability> vulnerability_from_string(std::string_view name);
std::optional<PatchClass> patch_class_from_string(std::string_view name);

enum class InsertMode { before, after };

/// One token of the patch DSL: an opcode mnemonic, a PUSHn_0x.. literal, or
/// one of the placeholder keywords.
struct TemplateToken {
    enum class Kind {
        opcode,         // plain mnemonic
        push_imm,       // PUSHn_0x<hex>
        free_storage,   // free_storage_location
        integer_bounds, // integer_bounds
        push_label,     // PUSH_jump_loc_{x}
        label_def,      // JUMPDEST_jump_loc_{x}
    };
    Kind kind = Kind::opcode;
    uint8_t opcode = 0;
    Bytes immediate;
    int label = 0;

    bool operator==(const TemplateToken&) const = default;
};

struct PatchTemplate {
    std::vector<TemplateToken> del;
    std::vector<TemplateToken> ins;
    InsertMode mode = InsertMode::before;
    bool constructor_patch = false;

    bool operator==(const PatchTemplate&) const = default;
};

/// Parses one template record: {"delete": "...", "insert": "...",
/// "insert_mode": "before"|"after", "constructor": bool}, tokens separated
/// by spaces. Throws TemplateError on unknown tokens or unpaired jump
/// labels.
PatchTemplate parse_template(const nlohmann::json& record);

nlohmann::json serialize_template(const PatchTemplate& tmpl);

/// The built-in catalog: 7 patch classes, 9 template records.
const std::map<PatchClass, std::vector<PatchTemplate>>& builtin_catalog();

/// Catalog with per-class overrides loaded from a user JSON file of shape
/// {"<class>": [record, ...], ...}.
std::map<PatchClass, std::vector<PatchTemplate>>
catalog_with_overrides(const nlohmann::json& user_templates);

/// Context substituted into template placeholders.
struct PatchContext {
    Word free_storage_key = 0;
    std::optional<Word> integer_bounds;
    int base_label_counter = 0;
};

/// A template made concrete at one anchor. Jump labels stay symbolic until
/// the rewriter finalizes addresses.
struct InstantiatedPatch {
    size_t delete_count = 0;
    std::vector<Instruction> insert_instructions;
    InsertMode mode = InsertMode::before;
    bool constructor_patch = false;
    uint64_t anchor_pc = 0;
    PatchClass vulnerability = PatchClass::reentrancy;
    int labels_used = 0; // how far this instance advanced the label counter
    int id = -1;         // assigned by the pipeline for byte accounting

    size_t insert_byte_size() const;
};

/// Substitutes placeholders: context keys and bounds become minimal-width
/// PUSHes, jump-label keywords become symbolic annotations with globally
/// unique ids. Throws ContextError when a referenced context value is
/// missing.
InstantiatedPatch instantiate(const PatchTemplate& tmpl, const PatchContext& ctx,
                              uint64_t anchor_pc, PatchClass vuln);

/// Net stack effect of the insert sequence over every non-reverting route.
/// Throws TemplateError if routes disagree.
int net_stack_effect(const PatchTemplate& tmpl);

} // namespace bytemend
