// bytemend: context-aware EVM bytecode patching toolkit
// Copyright 2026 The bytemend Authors.
// SPDX-License-Identifier: Apache-2.0
//
// End-to-end run against real compiler output: the solc-built token
// contract whose buy() wraps a uint32 balance gets its ADD guarded, and the
// differential harness replays an overflowing purchase against both codes.
#include <bytemend/errors.hpp>
#include <bytemend/keccak.hpp>
#include <bytemend/rewriter.hpp>

#include "fixtures.hpp"

#include <doctest.h>
#include <nlohmann/json.hpp>

#include <fstream>

using namespace bytemend;
using namespace bytemend::test;

namespace {

Bytes token_blob()
{
    std::ifstream in(std::string(BYTEMEND_FIXTURE_DIR) + "/solc/layouts.json");
    REQUIRE(in.good());
    nlohmann::json doc = nlohmann::json::parse(in);
    for (const auto& c : doc)
        if (c["name"] == "TokenLike")
            return bytes_from_hex(c["bin"].get<std::string>());
    FAIL("TokenLike fixture missing");
    return {};
}

uint32_t selector_of(const std::string& signature)
{
    Bytes sig(signature.begin(), signature.end());
    Word hash = keccak256_word(sig);
    return static_cast<uint32_t>(hash >> 224);
}

// Locates the wrapping uint32 addition the way a detector would: the unique
// ADD whose operand taint carries a 2^32-1 mask.
uint64_t find_uint32_add(const ControlFlowGraph& cfg)
{
    std::vector<uint64_t> hits;
    for (const auto& [start, block] : cfg.blocks) {
        for (const Instruction& ins : block.instructions) {
            if (ins.opcode != OP_ADD)
                continue;
            try {
                if (infer_integer_type(cfg, ins.original_address) == IntegerType{32, false})
                    hits.push_back(ins.original_address);
            } catch (const Error&) {
            }
        }
    }
    REQUIRE(hits.size() == 1);
    return hits.front();
}

} // namespace

TEST_CASE("solc token: inferred uint32 overflow is patched and verified differentially")
{
    Bytes blob = token_blob();
    BytecodeAnatomy anatomy = split_anatomy(blob);
    auto instrs = disassemble(anatomy.runtime);
    ControlFlowGraph cfg = build_cfg(instrs);

    uint64_t bug_pc = find_uint32_add(cfg);
    std::vector<BugEntry> bugs{BugEntry{bug_pc, "ADD", Vulnerability::overflow_add, "test"}};

    PatchOptions options;
    options.contract_id = "TokenLike";
    options.force = true; // the compiler's INVALID separator is dead code
    PatchOutcome outcome = patch_contract(blob, bugs, options);
    REQUIRE(outcome.report.entries.size() == 1);
    CHECK(outcome.report.entries[0].status == PatchStatus::patched);
    // PUSH4 bounds plus a two-byte label push (the guard's JUMPDEST sits
    // past 0xff in this contract): 19 bytes.
    CHECK(outcome.report.entries[0].bytes_inserted == 19);

    uint32_t buy = selector_of("buy(uint32)");
    uint32_t tokens = selector_of("tokens(address)");

    Scenario scenario;
    scenario.contract_address = kVictim;
    scenario.deployer = kDeployer;
    scenario.accounts.push_back({kUser, Word(1) << 40, {}});
    scenario.accounts.push_back({kAttackerEoa, Word(1) << 40, {}});
    auto add_tx = [&](TxLabel label, const Word& from, const Word& value, Bytes data) {
        Transaction t;
        t.from = from;
        t.to = kVictim;
        t.value = value;
        t.data = std::move(data);
        t.gas_limit = 1'000'000;
        scenario.transactions.push_back(std::move(t));
        scenario.labels.push_back(label);
    };
    // buy() requires msg.value == amount.
    add_tx(TxLabel::benign, kUser, 0x10000, calldata(buy, {Word(0x10000)}));
    add_tx(TxLabel::benign, kUser, 0, calldata(tokens, {kUser}));
    add_tx(TxLabel::benign, kAttackerEoa, 0x300, calldata(buy, {Word(0x300)}));
    // Wraps 2^32 on the original code, reverts on the patched code.
    add_tx(TxLabel::attack, kAttackerEoa, 0xffffff00, calldata(buy, {Word(0xffffff00)}));

    DifferentialVerdict verdict =
        differential_run(blob, outcome.code, scenario, outcome.report.allocated_slots());
    for (size_t i = 0; i < verdict.transactions.size(); ++i) {
        const TxVerdict& tv = verdict.transactions[i];
        INFO("tx ", i, ": ", tv.detail, " original=", to_string(tv.original_status),
             " patched=", to_string(tv.patched_status));
        CHECK(tv.ok);
    }
    CHECK(verdict.passed());
    CHECK(verdict.transactions[3].original_status == ExecStatus::success);

    // The wrapped balance really was the attack's effect on the original.
    WorldState world;
    world.account(kAttackerEoa).balance = Word(1) << 40;
    deploy(world, blob, kDeployer, 0, kVictim);
    Transaction attack = scenario.transactions[3];
    ExecutionResult r = execute(world, attack);
    REQUIRE(r.status == ExecStatus::success);
    Bytes key = word_to_bytes(kAttackerEoa, 32);
    Bytes slot = word_to_bytes(Word(2), 32); // mapping declared at slot 2
    Bytes preimage = key;
    preimage.insert(preimage.end(), slot.begin(), slot.end());
    Word cell = keccak256_word(preimage);
    CHECK(world.account(kVictim).storage.at(cell) == 0xffffff00);

    // With a prior balance the same purchase wraps past 2^32.
    Transaction small = scenario.transactions[2];
    small.from = kAttackerEoa;
    execute(world, small);
    ExecutionResult wrapped = execute(world, attack);
    REQUIRE(wrapped.status == ExecStatus::success);
    CHECK(world.account(kVictim).storage.at(cell) == Word((0xffffff00ULL + 0x300 + 0xffffff00ULL) & 0xffffffff));
}
