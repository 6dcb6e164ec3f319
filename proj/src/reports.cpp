// bytemend: context-aware EVM bytecode patching toolkit
// Copyright 2026 The bytemend Authors.
// SPDX-License-Identifier: Apache-2.0
#include <bytemend/reports.hpp>

#include <bytemend/errors.hpp>

#include <nlohmann/json.hpp>

#include <algorithm>

namespace bytemend {

bool vulnerability_matches_opcode(Vulnerability v, uint8_t opcode)
{
    switch (v) {
    case Vulnerability::overflow_add:
        return opcode == OP_ADD;
    case Vulnerability::overflow_mul:
        return opcode == OP_MUL;
    case Vulnerability::underflow_sub:
        return opcode == OP_SUB;
    case Vulnerability::reentrancy:
    case Vulnerability::leaking:
    case Vulnerability::unhandled_exception:
        return opcode == OP_CALL;
    case Vulnerability::tx_origin:
        return opcode == OP_ORIGIN;
    case Vulnerability::suicidal:
        return opcode == OP_SELFDESTRUCT;
    case Vulnerability::unsafe_delegatecall:
        return opcode == OP_DELEGATECALL;
    }
    return false;
}

std::vector<BugEntry> load_bug_report(const nlohmann::json& doc,
                                      const std::vector<Instruction>* disasm)
{
    if (!doc.is_array())
        throw ReportError("bug report must be a JSON array (at /)");

    std::vector<BugEntry> bugs;
    for (size_t i = 0; i < doc.size(); ++i) {
        const auto& item = doc[i];
        std::string ptr = "/" + std::to_string(i);
        if (!item.is_object())
            throw ReportError("bug entry must be an object (at " + ptr + ")");
        if (!item.contains("pc") || !item["pc"].is_number_unsigned())
            throw ReportError("missing or non-integer \"pc\" (at " + ptr + "/pc)");
        if (!item.contains("opcode") || !item["opcode"].is_string())
            throw ReportError("missing or non-string \"opcode\" (at " + ptr + "/opcode)");
        if (!item.contains("vulnerability") || !item["vulnerability"].is_string())
            throw ReportError("missing or non-string \"vulnerability\" (at " + ptr +
                              "/vulnerability)");

        BugEntry bug;
        bug.pc = item["pc"].get<uint64_t>();
        bug.opcode = item["opcode"].get<std::string>();
        bug.detector = item.value("detector", std::string{});
        auto vuln = vulnerability_from_string(item["vulnerability"].get<std::string>());
        if (!vuln)
            throw ReportError("unknown vulnerability \"" +
                              item["vulnerability"].get<std::string>() + "\" (at " + ptr +
                              "/vulnerability)");
        bug.vulnerability = *vuln;

        auto declared = opcode_by_mnemonic(bug.opcode);
        if (!declared)
            throw ReportError("unknown opcode \"" + bug.opcode + "\" (at " + ptr + "/opcode)");
        if (!vulnerability_matches_opcode(bug.vulnerability, *declared))
            throw ReportError(std::string(to_string(bug.vulnerability)) +
                              " cannot anchor at opcode " + bug.opcode + " (at " + ptr + ")");

        if (disasm) {
            auto at = std::find_if(disasm->begin(), disasm->end(), [&](const Instruction& ins) {
                return ins.original_address == bug.pc;
            });
            if (at == disasm->end())
                throw ReportError("pc " + std::to_string(bug.pc) +
                                  " is not an instruction boundary (at " + ptr + "/pc)");
            if (at->opcode != *declared)
                throw ReportError("opcode mismatch at pc " + std::to_string(bug.pc) +
                                  ": report says " + bug.opcode + ", code has " +
                                  std::string(at->mnemonic()) + " (at " + ptr + ")");
        }

        bool duplicate = std::any_of(bugs.begin(), bugs.end(), [&](const BugEntry& b) {
            return b.pc == bug.pc && b.vulnerability == bug.vulnerability;
        });
        if (!duplicate)
            bugs.push_back(std::move(bug));
    }
    return bugs;
}

nlohmann::json bug_report_to_json(std::span<const BugEntry> bugs)
{
    auto doc = nlohmann::ordered_json::array();
    for (const BugEntry& bug : bugs) {
        nlohmann::ordered_json item;
        item["pc"] = bug.pc;
        item["opcode"] = bug.opcode;
        item["vulnerability"] = std::string(to_string(bug.vulnerability));
        if (!bug.detector.empty())
            item["detector"] = bug.detector;
        doc.push_back(std::move(item));
    }
    return doc;
}

std::string_view to_string(PatchStatus s)
{
    switch (s) {
    case PatchStatus::patched:
        return "patched";
    case PatchStatus::skipped:
        return "skipped";
    case PatchStatus::failed:
        return "failed";
    }
    return "?";
}

bool PatchReport::all_patched() const
{
    return std::all_of(entries.begin(), entries.end(), [](const PatchReportEntry& e) {
        return e.status == PatchStatus::patched;
    });
}

std::vector<Word> PatchReport::allocated_slots() const
{
    std::vector<Word> slots;
    for (const PatchReportEntry& e : entries)
        slots.insert(slots.end(), e.storage_slots_allocated.begin(),
                     e.storage_slots_allocated.end());
    return slots;
}

nlohmann::json emit_patch_report(const PatchReport& report)
{
    nlohmann::ordered_json doc;
    doc["contract_id"] = report.contract_id;
    auto entries = nlohmann::ordered_json::array();
    for (const PatchReportEntry& e : report.entries) {
        nlohmann::ordered_json item;
        item["bug"] = bug_report_to_json(std::span(&e.bug, 1)).front();
        item["status"] = std::string(to_string(e.status));
        item["reason"] = e.reason;
        item["bytes_inserted"] = e.bytes_inserted;
        auto slots = nlohmann::ordered_json::array();
        for (const Word& s : e.storage_slots_allocated)
            slots.push_back(to_hex(s));
        item["storage_slots_allocated"] = std::move(slots);
        entries.push_back(std::move(item));
    }
    doc["entries"] = std::move(entries);
    doc["timings"] = nlohmann::ordered_json::object();
    for (const auto& [stage, ms] : report.timings_ms)
        doc["timings"][stage] = ms;
    doc["warnings"] = report.warnings;
    return doc;
}

} // namespace bytemend
