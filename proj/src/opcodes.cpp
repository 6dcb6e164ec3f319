// bytemend: context-aware EVM bytecode patching toolkit
// Copyright 2026 The bytemend Authors.
// SPDX-License-Identifier: Apache-2.0
#include <bytemend/opcodes.hpp>

#include <array>
#include <map>
#include <string>

namespace bytemend {

namespace {

struct Table {
    std::array<OpcodeInfo, 256> info;
    std::array<std::string, 256> unknown_names;
    std::map<std::string_view, uint8_t> by_mnemonic;

    void set(uint8_t byte, std::string_view mnemonic, uint8_t pops, uint8_t pushes,
             uint32_t gas, uint8_t imm = 0)
    {
        info[byte] = OpcodeInfo{mnemonic, byte, imm, pops, pushes, gas, true};
        by_mnemonic.emplace(mnemonic, byte);
    }

    Table()
    {
        static constexpr char hexd[] = "0123456789abcdef";
        for (int b = 0; b < 256; ++b) {
            unknown_names[b] = "UNKNOWN_0x";
            unknown_names[b] += hexd[b >> 4];
            unknown_names[b] += hexd[b & 0xf];
            info[b] = OpcodeInfo{unknown_names[b], static_cast<uint8_t>(b), 0, 0, 0, 0, false};
        }

        set(0x00, "STOP", 0, 0, 0);
        set(0x01, "ADD", 2, 1, 3);
        set(0x02, "MUL", 2, 1, 5);
        set(0x03, "SUB", 2, 1, 3);
        set(0x04, "DIV", 2, 1, 5);
        set(0x05, "SDIV", 2, 1, 5);
        set(0x06, "MOD", 2, 1, 5);
        set(0x07, "SMOD", 2, 1, 5);
        set(0x08, "ADDMOD", 3, 1, 8);
        set(0x09, "MULMOD", 3, 1, 8);
        set(0x0a, "EXP", 2, 1, 10);
        set(0x0b, "SIGNEXTEND", 2, 1, 5);
        set(0x10, "LT", 2, 1, 3);
        set(0x11, "GT", 2, 1, 3);
        set(0x12, "SLT", 2, 1, 3);
        set(0x13, "SGT", 2, 1, 3);
        set(0x14, "EQ", 2, 1, 3);
        set(0x15, "ISZERO", 1, 1, 3);
        set(0x16, "AND", 2, 1, 3);
        set(0x17, "OR", 2, 1, 3);
        set(0x18, "XOR", 2, 1, 3);
        set(0x19, "NOT", 1, 1, 3);
        set(0x1a, "BYTE", 2, 1, 3);
        set(0x1b, "SHL", 2, 1, 3);
        set(0x1c, "SHR", 2, 1, 3);
        set(0x1d, "SAR", 2, 1, 3);
        set(0x20, "SHA3", 2, 1, 30);
        set(0x30, "ADDRESS", 0, 1, 2);
        set(0x31, "BALANCE", 1, 1, 400);
        set(0x32, "ORIGIN", 0, 1, 2);
        set(0x33, "CALLER", 0, 1, 2);
        set(0x34, "CALLVALUE", 0, 1, 2);
        set(0x35, "CALLDATALOAD", 1, 1, 3);
        set(0x36, "CALLDATASIZE", 0, 1, 2);
        set(0x37, "CALLDATACOPY", 3, 0, 3);
        set(0x38, "CODESIZE", 0, 1, 2);
        set(0x39, "CODECOPY", 3, 0, 3);
        set(0x3a, "GASPRICE", 0, 1, 2);
        set(0x3b, "EXTCODESIZE", 1, 1, 700);
        set(0x3c, "EXTCODECOPY", 4, 0, 700);
        set(0x3d, "RETURNDATASIZE", 0, 1, 2);
        set(0x3e, "RETURNDATACOPY", 3, 0, 3);
        set(0x3f, "EXTCODEHASH", 1, 1, 400);
        set(0x40, "BLOCKHASH", 1, 1, 20);
        set(0x41, "COINBASE", 0, 1, 2);
        set(0x42, "TIMESTAMP", 0, 1, 2);
        set(0x43, "NUMBER", 0, 1, 2);
        set(0x44, "DIFFICULTY", 0, 1, 2);
        set(0x45, "GASLIMIT", 0, 1, 2);
        set(0x46, "CHAINID", 0, 1, 2);
        set(0x47, "SELFBALANCE", 0, 1, 5);
        set(0x50, "POP", 1, 0, 2);
        set(0x51, "MLOAD", 1, 1, 3);
        set(0x52, "MSTORE", 2, 0, 3);
        set(0x53, "MSTORE8", 2, 0, 3);
        set(0x54, "SLOAD", 1, 1, 2100);
        set(0x55, "SSTORE", 2, 0, 5000);
        set(0x56, "JUMP", 1, 0, 8);
        set(0x57, "JUMPI", 2, 0, 10);
        set(0x58, "PC", 0, 1, 2);
        set(0x59, "MSIZE", 0, 1, 2);
        set(0x5a, "GAS", 0, 1, 2);
        set(0x5b, "JUMPDEST", 0, 0, 1);

        static const std::array<std::string, 32> push_names = [] {
            std::array<std::string, 32> n;
            for (int i = 0; i < 32; ++i)
                n[i] = "PUSH" + std::to_string(i + 1);
            return n;
        }();
        static const std::array<std::string, 16> dup_names = [] {
            std::array<std::string, 16> n;
            for (int i = 0; i < 16; ++i)
                n[i] = "DUP" + std::to_string(i + 1);
            return n;
        }();
        static const std::array<std::string, 16> swap_names = [] {
            std::array<std::string, 16> n;
            for (int i = 0; i < 16; ++i)
                n[i] = "SWAP" + std::to_string(i + 1);
            return n;
        }();
        for (int i = 0; i < 32; ++i)
            set(static_cast<uint8_t>(0x60 + i), push_names[i], 0, 1, 3,
                static_cast<uint8_t>(i + 1));
        for (int i = 0; i < 16; ++i)
            set(static_cast<uint8_t>(0x80 + i), dup_names[i], static_cast<uint8_t>(i + 1),
                static_cast<uint8_t>(i + 2), 3);
        for (int i = 0; i < 16; ++i)
            set(static_cast<uint8_t>(0x90 + i), swap_names[i], static_cast<uint8_t>(i + 2),
                static_cast<uint8_t>(i + 2), 3);

        static const std::array<std::string, 5> log_names = {"LOG0", "LOG1", "LOG2", "LOG3",
                                                             "LOG4"};
        for (int i = 0; i < 5; ++i)
            set(static_cast<uint8_t>(0xa0 + i), log_names[i], static_cast<uint8_t>(i + 2), 0, 375);

        set(0xf0, "CREATE", 3, 1, 32000);
        set(0xf1, "CALL", 7, 1, 700);
        set(0xf2, "CALLCODE", 7, 1, 700);
        set(0xf3, "RETURN", 2, 0, 0);
        set(0xf4, "DELEGATECALL", 6, 1, 700);
        set(0xf5, "CREATE2", 4, 1, 32000);
        set(0xfa, "STATICCALL", 6, 1, 700);
        set(0xfd, "REVERT", 2, 0, 0);
        set(0xfe, "INVALID", 0, 0, 0);
        set(0xff, "SELFDESTRUCT", 1, 0, 5000);

        by_mnemonic.emplace("SUICIDE", 0xff);
        by_mnemonic.emplace("KECCAK256", 0x20);
    }
};

const Table& table()
{
    static const Table t;
    return t;
}

} // namespace

const OpcodeInfo& opcode_info(uint8_t byte_value)
{
    return table().info[byte_value];
}

std::optional<uint8_t> opcode_by_mnemonic(std::string_view mnemonic)
{
    const auto& m = table().by_mnemonic;
    auto it = m.find(mnemonic);
    if (it == m.end())
        return std::nullopt;
    return it->second;
}

} // namespace bytemend
