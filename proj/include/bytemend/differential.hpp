// bytemend: context-aware EVM bytecode patching toolkit
// Copyright 2026 The bytemend Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <bytemend/evm.hpp>

#include <nlohmann/json_fwd.hpp>

#include <span>
#include <string>

namespace bytemend {

enum class TxLabel { benign, attack };

struct ScenarioAccount {
    Word address;
    Word balance = 0;
    Bytes code;
};

/// A replayable transaction history against one contract: pre-funded
/// accounts (attackers may carry code), the contract's address, and labeled
/// transactions.
struct Scenario {
    std::vector<ScenarioAccount> accounts;
    Word contract_address;
    Word deployer;
    Word deploy_value = 0;
    std::vector<Transaction> transactions;
    std::vector<TxLabel> labels;
};

/// Parses the scenario file: {"contract": addr, "deployer": addr,
/// "accounts": [{address, balance, code?}...],
/// "transactions": [{from, to?, value?, data?, gas_limit?, label}...]}.
Scenario load_scenario(const nlohmann::json& doc);

nlohmann::json scenario_to_json(const Scenario& scenario);

struct TxVerdict {
    TxLabel label = TxLabel::benign;
    bool ok = false;
    ExecStatus original_status = ExecStatus::invalid;
    ExecStatus patched_status = ExecStatus::invalid;
    int64_t gas_delta = 0;    // patched minus original, benign txs only
    bool gas_induced = false; // divergence disappears with a 1.25x gas limit
    std::string detail;
};

struct DifferentialVerdict {
    std::vector<TxVerdict> transactions;
    bool all_benign_match = true;
    bool all_attacks_blocked = true;
    int64_t code_size_delta = 0;

    bool passed() const { return all_benign_match && all_attacks_blocked; }
};

/// Deploys both codes into fresh isolated worlds and replays the scenario
/// against each. A benign transaction passes when status, return data, logs
/// and the storage delta (minus allow-listed patch slots on the contract)
/// match; an attack passes when the patched run reverts.
DifferentialVerdict differential_run(ByteView original, ByteView patched,
                                     const Scenario& scenario,
                                     std::span<const Word> allow_slots = {});

} // namespace bytemend
