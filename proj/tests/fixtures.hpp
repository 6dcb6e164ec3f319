// bytemend: context-aware EVM bytecode patching toolkit
// Copyright 2026 The bytemend Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <bytemend/differential.hpp>
#include <bytemend/inference.hpp>
#include <bytemend/reports.hpp>

#include <optional>
#include <string>
#include <vector>

namespace bytemend::test {

// Well-known addresses shared by every fixture scenario.
inline const Word kVictim = 0xc001;
inline const Word kDeployer = 0xaa01;
inline const Word kUser = 0xbb02;
inline const Word kAttackerEoa = 0xcc03;
inline const Word kAttackerContract = 0xdd04;
inline const Word kAuxContract = 0xee05;
inline const Word kBenignLib = 0xee06;

/// One hand-built vulnerable contract: the code to patch, its bug report,
/// and a replayable transaction scenario with labeled attacks.
struct Fixture {
    std::string name;
    Bytes blob; // full contract bytes (deployment blob or bare runtime)
    std::vector<BugEntry> bugs;
    Scenario scenario;
    std::optional<IntegerType> expected_type; // at bugs[0].pc, when meaningful
    std::optional<Word> expected_next_free;
};

/// The whole corpus: one fixture per built-in patch class, plus the
/// cross-function reentrancy variant and the uint32/int32 pair.
const std::vector<Fixture>& fixture_corpus();

const Fixture& fixture_by_name(const std::string& name);

/// ABI-style calldata: 4-byte selector followed by 32-byte words.
Bytes calldata(uint32_t selector, std::initializer_list<Word> args = {});

} // namespace bytemend::test
