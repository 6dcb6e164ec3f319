// bytemend: context-aware EVM bytecode patching toolkit
// Copyright 2026 The bytemend Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <bytemend/asm.hpp>
#include <bytemend/templates.hpp>

#include <nlohmann/json_fwd.hpp>

namespace bytemend {

/// One located bug, as produced by an external detector.
struct BugEntry {
    uint64_t pc = 0;
    std::string opcode;
    Vulnerability vulnerability = Vulnerability::reentrancy;
    std::string detector; // optional provenance

    bool operator==(const BugEntry&) const = default;
};

/// Opcode byte values a vulnerability class may anchor at.
bool vulnerability_matches_opcode(Vulnerability v, uint8_t opcode);

/// Parses and validates a bug report (a JSON array of entries). Entries are
/// checked for schema (errors carry a JSON pointer), for vulnerability ->
/// opcode compatibility, against the disassembly when one is supplied, and
/// duplicates (same pc + vulnerability) are dropped.
std::vector<BugEntry> load_bug_report(const nlohmann::json& doc,
                                      const std::vector<Instruction>* disasm = nullptr);

nlohmann::json bug_report_to_json(std::span<const BugEntry> bugs);

enum class PatchStatus { patched, skipped, failed };
std::string_view to_string(PatchStatus s);

struct PatchReportEntry {
    BugEntry bug;
    PatchStatus status = PatchStatus::skipped;
    std::string reason;
    int64_t bytes_inserted = 0;
    std::vector<Word> storage_slots_allocated;
};

struct PatchReport {
    std::string contract_id;
    std::vector<PatchReportEntry> entries;
    std::map<std::string, double> timings_ms;
    std::vector<std::string> warnings;

    bool all_patched() const;
    std::vector<Word> allocated_slots() const;
};

/// Deterministic key order, suitable for diffing.
nlohmann::json emit_patch_report(const PatchReport& report);

} // namespace bytemend
