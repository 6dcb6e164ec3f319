// bytemend: context-aware EVM bytecode patching toolkit
// Copyright 2026 The bytemend Authors.
// SPDX-License-Identifier: Apache-2.0
#include <bytemend/differential.hpp>
#include <bytemend/errors.hpp>
#include <bytemend/inference.hpp>
#include <bytemend/rewriter.hpp>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

namespace fs = std::filesystem;
using namespace bytemend;

namespace {

nlohmann::json load_json(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error("cannot open " + path);
    return nlohmann::json::parse(in);
}

void write_file(const std::string& path, const std::string& content)
{
    std::ofstream out(path);
    if (!out)
        throw Error("cannot write " + path);
    out << content;
}

struct CommonArgs {
    size_t max_paths = 10000;
    size_t max_depth = 512;
};

void add_common(CLI::App* cmd, CommonArgs& args)
{
    cmd->add_option("--max-paths", args.max_paths, "path enumeration budget");
    cmd->add_option("--max-depth", args.max_depth, "blocks per enumerated path");
}

std::map<PatchClass, std::vector<PatchTemplate>> load_catalog(const std::string& templates_path)
{
    if (templates_path.empty())
        return builtin_catalog();
    return catalog_with_overrides(load_json(templates_path));
}

// Patches one contract; returns the process exit code contribution.
int patch_one(const std::string& input, const std::string& bugs_path, std::string out_path,
              std::string report_path, const CommonArgs& common, bool force,
              const std::map<PatchClass, std::vector<PatchTemplate>>& catalog)
{
    Bytes code = load_bytecode_file(input);
    BytecodeAnatomy anatomy = split_anatomy(code);
    std::vector<Instruction> disasm = disassemble(anatomy.runtime);
    std::vector<BugEntry> bugs = load_bug_report(load_json(bugs_path), &disasm);

    fs::path stem = fs::path(input).stem();
    if (out_path.empty())
        out_path = (fs::path(input).parent_path() / stem).string() + ".patched.hex";
    if (report_path.empty())
        report_path = (fs::path(input).parent_path() / stem).string() + ".report.json";

    PatchOptions options;
    options.force = force;
    options.max_paths = common.max_paths;
    options.max_depth = common.max_depth;
    options.contract_id = stem.string();
    options.catalog = &catalog;

    PatchOutcome outcome = patch_contract(code, bugs, options);
    write_file(out_path, to_hex(outcome.code) + "\n");
    write_file(report_path, emit_patch_report(outcome.report).dump(2) + "\n");

    for (const std::string& warning : outcome.report.warnings)
        std::cerr << input << ": warning: " << warning << "\n";
    for (const PatchReportEntry& entry : outcome.report.entries)
        if (entry.status != PatchStatus::patched)
            std::cerr << input << ": bug at pc " << entry.bug.pc << " "
                      << to_string(entry.status) << ": " << entry.reason << "\n";
    return outcome.report.all_patched() ? 0 : 2;
}

int cmd_patch(const std::vector<std::string>& inputs, const std::vector<std::string>& bug_files,
              const std::string& out_path, const std::string& report_path,
              const std::string& templates_path, bool force, unsigned jobs,
              const CommonArgs& common)
{
    if (inputs.size() != bug_files.size())
        throw Error("need one --bugs per --input (got " + std::to_string(inputs.size()) +
                    " inputs, " + std::to_string(bug_files.size()) + " reports)");
    if (inputs.size() > 1 && (!out_path.empty() || !report_path.empty()))
        throw Error("--out/--report only apply to a single input; batch mode derives names");

    auto catalog = load_catalog(templates_path);

    std::atomic<size_t> next{0};
    std::atomic<int> worst{0};
    auto worker = [&] {
        for (size_t i = next.fetch_add(1); i < inputs.size(); i = next.fetch_add(1)) {
            int code;
            try {
                code = patch_one(inputs[i], bug_files[i], inputs.size() == 1 ? out_path : "",
                                 inputs.size() == 1 ? report_path : "", common, force, catalog);
            } catch (const SafetyError& e) {
                std::cerr << inputs[i] << ": warning: " << e.what() << "\n";
                code = 2;
            } catch (const std::exception& e) {
                std::cerr << inputs[i] << ": error: " << e.what() << "\n";
                code = 1;
            }
            int seen = worst.load();
            while (code > seen && !worst.compare_exchange_weak(seen, code)) {
            }
        }
    };

    unsigned n = std::max(1u, std::min<unsigned>(jobs, inputs.size()));
    std::vector<std::thread> pool;
    for (unsigned i = 1; i < n; ++i)
        pool.emplace_back(worker);
    worker();
    for (std::thread& t : pool)
        t.join();
    return worst.load();
}

int cmd_analyze(const std::string& input, const std::string& bugs_path,
                const std::string& cfg_path, const std::string& dot_path,
                const std::string& layout_path, const CommonArgs& common)
{
    Bytes code = load_bytecode_file(input);
    BytecodeAnatomy anatomy = split_anatomy(code);
    std::vector<Instruction> disasm = disassemble(anatomy.runtime);
    ControlFlowGraph cfg = build_cfg(disasm);
    StorageLayout layout = infer_storage_layout(cfg, common.max_paths, common.max_depth);

    nlohmann::ordered_json summary;
    summary["contract"] = fs::path(input).stem().string();
    summary["runtime_bytes"] = anatomy.runtime.size();
    summary["deployment_bytes"] = anatomy.deployment.size();
    summary["metadata_bytes"] = anatomy.metadata.size();
    summary["blocks"] = cfg.blocks.size();
    summary["unresolved_jumps"] = cfg.unresolved_jumps;
    std::set<uint64_t> dead = unreachable_blocks(cfg);
    summary["unreachable_blocks"] = dead;
    // Recovery metric: fraction of code bytes inside reachable blocks.
    size_t dead_bytes = 0;
    for (uint64_t start : dead)
        for (const Instruction& ins : cfg.blocks.at(start).instructions)
            dead_bytes += ins.byte_size();
    summary["recovered_fraction"] =
        anatomy.runtime.empty()
            ? 1.0
            : 1.0 - double(dead_bytes) / double(anatomy.runtime.size());
    summary["layout"] = nlohmann::ordered_json::parse(layout_to_json(layout));

    auto types = nlohmann::ordered_json::array();
    if (!bugs_path.empty()) {
        for (const BugEntry& bug : load_bug_report(load_json(bugs_path), &disasm)) {
            nlohmann::ordered_json item;
            item["pc"] = bug.pc;
            item["vulnerability"] = std::string(to_string(bug.vulnerability));
            PatchClass cls = patch_class_of(bug.vulnerability);
            if (cls == PatchClass::overflow_add || cls == PatchClass::overflow_mul ||
                cls == PatchClass::underflow_sub) {
                IntegerType type = infer_integer_type(cfg, bug.pc);
                item["bits"] = type.bits;
                item["signed"] = type.is_signed;
                item["max_bound"] = to_hex(bounds_of(type).max);
            }
            types.push_back(std::move(item));
        }
    }
    summary["types"] = std::move(types);

    if (!cfg_path.empty())
        write_file(cfg_path, cfg_to_json(cfg));
    if (!dot_path.empty())
        write_file(dot_path, cfg_to_dot(cfg));
    if (!layout_path.empty())
        write_file(layout_path, layout_to_json(layout));

    std::cout << summary.dump(2) << "\n";
    return 0;
}

int cmd_verify(const std::string& original_path, const std::string& patched_path,
               const std::string& scenario_path, const std::string& report_path)
{
    Bytes original = load_bytecode_file(original_path);
    Bytes patched = load_bytecode_file(patched_path);
    Scenario scenario = load_scenario(load_json(scenario_path));

    std::vector<Word> allow_slots;
    if (!report_path.empty()) {
        nlohmann::json report = load_json(report_path);
        for (const auto& entry : report.value("entries", nlohmann::json::array()))
            for (const auto& slot :
                 entry.value("storage_slots_allocated", nlohmann::json::array()))
                allow_slots.push_back(word_from_bytes(bytes_from_hex(slot.get<std::string>())));
    }

    DifferentialVerdict verdict = differential_run(original, patched, scenario, allow_slots);

    std::cout << "tx  label   original     patched      gas-delta  verdict\n";
    for (size_t i = 0; i < verdict.transactions.size(); ++i) {
        const TxVerdict& tv = verdict.transactions[i];
        char line[192];
        std::snprintf(line, sizeof(line), "%-3zu %-7s %-12s %-12s %9lld  %s %s", i,
                      tv.label == TxLabel::attack ? "attack" : "benign",
                      std::string(to_string(tv.original_status)).c_str(),
                      std::string(to_string(tv.patched_status)).c_str(),
                      static_cast<long long>(tv.gas_delta), tv.ok ? "ok" : "FAIL",
                      tv.detail.c_str());
        std::cout << line << "\n";
    }
    std::cout << "code size delta: " << verdict.code_size_delta << " bytes\n";
    std::cout << (verdict.passed() ? "verdict: pass" : "verdict: FAIL") << "\n";
    return verdict.passed() ? 0 : 2;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"EVM bytecode patching toolkit: infers contract context from the recovered "
                 "CFG via taint analysis, instantiates patch templates, and rewrites the "
                 "bytecode with relocated jump targets"};
    app.require_subcommand(1);

    auto* patch = app.add_subcommand("patch", "patch a contract from a bug report");
    std::vector<std::string> inputs, bug_files;
    std::string out_path, report_path, templates_path;
    bool force = false;
    unsigned jobs = 1;
    CommonArgs patch_common;
    patch->add_option("--input", inputs, "bytecode file (hex or raw)")->required();
    patch->add_option("--bugs", bug_files, "bug report JSON")->required();
    patch->add_option("--out", out_path, "patched bytecode output (hex)");
    patch->add_option("--report", report_path, "patch report JSON output");
    patch->add_option("--templates", templates_path, "user template overrides (JSON)");
    patch->add_flag("--force", force, "patch even when the CFG has unreachable blocks");
    patch->add_option("--jobs", jobs, "parallel workers for batch inputs");
    add_common(patch, patch_common);

    auto* analyze = app.add_subcommand("analyze", "dump CFG, storage layout and bug types");
    std::string a_input, a_bugs, a_cfg, a_dot, a_layout;
    CommonArgs analyze_common;
    analyze->add_option("--input", a_input, "bytecode file")->required();
    analyze->add_option("--bugs", a_bugs, "bug report JSON (optional)");
    analyze->add_option("--emit-cfg", a_cfg, "write the CFG as JSON to this path");
    analyze->add_option("--emit-dot", a_dot, "write the CFG as Graphviz dot to this path");
    analyze->add_option("--emit-layout", a_layout, "write the storage layout JSON to this path");
    add_common(analyze, analyze_common);

    auto* verify = app.add_subcommand("verify", "differential-replay a labeled scenario");
    std::string v_original, v_patched, v_scenario, v_report;
    verify->add_option("--input", v_original, "original bytecode file")->required();
    verify->add_option("--patched", v_patched, "patched bytecode file")->required();
    verify->add_option("--scenario", v_scenario, "scenario JSON")->required();
    verify->add_option("--report", v_report, "patch report (for the patch-slot allowlist)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (patch->parsed())
            return cmd_patch(inputs, bug_files, out_path, report_path, templates_path, force,
                             jobs, patch_common);
        if (analyze->parsed())
            return cmd_analyze(a_input, a_bugs, a_cfg, a_dot, a_layout, analyze_common);
        if (verify->parsed())
            return cmd_verify(v_original, v_patched, v_scenario, v_report);
    } catch (const SafetyError& e) {
        std::cerr << "warning: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
