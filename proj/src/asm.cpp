// bytemend: context-aware EVM bytecode patching toolkit
// Copyright 2026 The bytemend Authors.
// SPDX-License-Identifier: Apache-2.0
#include <bytemend/asm.hpp>

#include <bytemend/errors.hpp>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace bytemend {

std::vector<Instruction> disassemble(ByteView code)
{
    std::vector<Instruction> out;
    out.reserve(code.size());
    size_t pc = 0;
    while (pc < code.size()) {
        Instruction ins;
        ins.opcode = code[pc];
        ins.original_address = pc;
        ins.shadow_address = pc;
        size_t width = ins.info().immediate_width;
        size_t available = std::min(width, code.size() - pc - 1);
        ins.immediate.assign(code.begin() + pc + 1, code.begin() + pc + 1 + available);
        ins.truncated = available < width;
        pc += 1 + available;
        out.push_back(std::move(ins));
    }
    return out;
}

Bytes assemble(std::span<const Instruction> instrs)
{
    Bytes out;
    for (size_t i = 0; i < instrs.size(); ++i) {
        const Instruction& ins = instrs[i];
        size_t width = ins.info().immediate_width;
        if (ins.immediate.size() != width) {
            bool tolerated = ins.truncated && i + 1 == instrs.size() &&
                             ins.immediate.size() < width;
            if (!tolerated)
                throw StructuralError("instruction " + std::to_string(i) + " (" +
                                      std::string(ins.mnemonic()) + "): immediate is " +
                                      std::to_string(ins.immediate.size()) + " bytes, expected " +
                                      std::to_string(width));
        }
        out.push_back(ins.opcode);
        out.insert(out.end(), ins.immediate.begin(), ins.immediate.end());
    }
    return out;
}

size_t find_deploy_stub(const std::vector<Instruction>& instrs)
{
    for (size_t i = 0; i + 4 < instrs.size(); ++i) {
        if (!is_push(instrs[i].opcode) || instrs[i].truncated)
            continue;
        if (instrs[i + 1].opcode != OP_DUP1)
            continue;
        if (!is_push(instrs[i + 2].opcode) || !is_push(instrs[i + 3].opcode))
            continue;
        if (instrs[i + 4].opcode != OP_CODECOPY)
            continue;
        for (size_t j = i + 5; j < instrs.size(); ++j) {
            if (instrs[j].opcode == OP_RETURN)
                return i;
            if (instrs[j].opcode == OP_JUMPDEST)
                break; // left the epilogue without returning
        }
    }
    return static_cast<size_t>(-1);
}

BytecodeAnatomy split_anatomy(ByteView code)
{
    BytecodeAnatomy anatomy;
    std::vector<Instruction> instrs = disassemble(code);
    size_t stub = find_deploy_stub(instrs);

    size_t deployed_begin = 0;
    size_t deployed_end = code.size();
    if (stub != static_cast<size_t>(-1)) {
        Word len = instrs[stub].immediate_value();
        Word ofs = instrs[stub + 2].immediate_value();
        if (ofs > code.size() || len > code.size() || Word(ofs + len) > code.size())
            throw AnatomyError("deploy stub copies [" + to_hex(ofs) + ", " + to_hex(ofs + len) +
                               ") which lies outside the " + std::to_string(code.size()) +
                               "-byte input");
        deployed_begin = static_cast<size_t>(ofs);
        deployed_end = deployed_begin + static_cast<size_t>(len);
        anatomy.deployment.assign(code.begin(), code.begin() + deployed_begin);
        anatomy.constructor_args.assign(code.begin() + deployed_end, code.end());
    }

    ByteView deployed = code.subspan(deployed_begin, deployed_end - deployed_begin);

    // Solidity appends CBOR metadata whose byte length is encoded in the
    // final two bytes. Only trusted when a deploy stub proved this region is
    // the deployed code; a bare runtime input stays intact.
    size_t metadata_len = 0;
    if (stub != static_cast<size_t>(-1) && deployed.size() >= 2) {
        size_t declared = static_cast<size_t>(deployed[deployed.size() - 2]) << 8 |
                          deployed[deployed.size() - 1];
        if (declared > 0 && declared + 2 <= deployed.size())
            metadata_len = declared + 2;
    }

    anatomy.runtime.assign(deployed.begin(), deployed.end() - metadata_len);
    anatomy.metadata.assign(deployed.end() - metadata_len, deployed.end());
    return anatomy;
}

Bytes load_bytecode_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    std::string content = ss.str();

    std::string trimmed;
    trimmed.reserve(content.size());
    for (char c : content)
        if (!std::isspace(static_cast<unsigned char>(c)))
            trimmed.push_back(c);
    try {
        return bytes_from_hex(trimmed);
    } catch (const Error&) {
        return Bytes(content.begin(), content.end()); // raw binary fallback
    }
}

} // namespace bytemend
