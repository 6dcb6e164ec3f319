// bytemend: context-aware EVM bytecode patching toolkit
// Copyright 2026 The bytemend Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <bytemend/word.hpp>

#include <map>
#include <optional>
#include <vector>

namespace bytemend {

struct Account {
    Word balance = 0;
    Bytes code;
    std::map<Word, Word> storage; // unset keys read as zero

    bool operator==(const Account&) const = default;
};

struct WorldState {
    std::map<Word, Account> accounts; // keyed by 160-bit address

    Account& account(const Word& address) { return accounts[to_address(address)]; }
    const Account* find(const Word& address) const;

    bool operator==(const WorldState&) const = default;
};

struct Transaction {
    Word from;
    Word to;
    Word value = 0;
    Bytes data;
    uint64_t gas_limit = 1'000'000;
    std::optional<Word> origin; // defaults to from
};

enum class ExecStatus { success, revert, out_of_gas, invalid };
std::string_view to_string(ExecStatus s);

struct LogRecord {
    Word address;
    std::vector<Word> topics;
    Bytes data;

    bool operator==(const LogRecord&) const = default;
};

struct ExecutionResult {
    ExecStatus status = ExecStatus::invalid;
    Bytes return_data;
    uint64_t gas_used = 0;
    /// (account, key) -> value after the transaction; empty unless success.
    std::map<std::pair<Word, Word>, Word> storage_delta;
    std::vector<LogRecord> logs;
    std::vector<std::pair<uint64_t, uint8_t>> trace; // (pc, opcode) when recorded
    int max_call_depth = 0;
};

/// Runs one transaction against the world. Anything but success rolls the
/// state back to exactly the pre-transaction world.
ExecutionResult execute(WorldState& state, const Transaction& tx, bool record_trace = false);

/// Installs a contract: a blob with a deploy stub is executed as creation
/// code (its RETURN becomes the account code), a bare runtime blob is stored
/// directly. Throws Error when creation fails.
void deploy(WorldState& state, ByteView blob, const Word& creator, const Word& value,
            const Word& address);

} // namespace bytemend
