// bytemend: context-aware EVM bytecode patching toolkit
// Copyright 2026 The bytemend Authors.
// SPDX-License-Identifier: Apache-2.0
#include <bytemend/cfg.hpp>

#include <bytemend/errors.hpp>

#include <nlohmann/json.hpp>

#include <algorithm>
#include <limits>
#include <sstream>

namespace bytemend {

namespace {

// The stack summary keeps at most this many slots; deeper values fall off
// the bottom and read back as unknown.
constexpr size_t kAbstractStackCap = 32;
// Distinct entry stacks propagated per block before new contexts are dropped.
constexpr size_t kMaxStatesPerBlock = 50;

} // namespace

size_t ControlFlowGraph::instruction_count() const
{
    size_t n = 0;
    for (const auto& [start, block] : blocks)
        n += block.instructions.size();
    return n;
}

std::vector<const Instruction*> ControlFlowGraph::linearized() const
{
    std::vector<const Instruction*> out;
    out.reserve(instruction_count());
    for (const auto& [start, block] : blocks)
        for (const Instruction& ins : block.instructions)
            out.push_back(&ins);
    return out;
}

void abstract_step(AbstractStack& stack, const Instruction& ins)
{
    auto peek = [&](size_t depth) -> std::optional<Word> {
        return depth < stack.size() ? stack[stack.size() - 1 - depth] : std::nullopt;
    };
    auto pop_n = [&](size_t n) {
        for (size_t i = 0; i < n && !stack.empty(); ++i)
            stack.pop_back();
    };
    auto push = [&](std::optional<Word> v) {
        stack.push_back(std::move(v));
        if (stack.size() > kAbstractStackCap)
            stack.erase(stack.begin());
    };

    uint8_t op = ins.opcode;
    if (is_push(op)) {
        push(ins.immediate_value());
        return;
    }
    if (is_dup(op)) {
        push(peek(op - 0x80));
        return;
    }
    if (is_swap(op)) {
        size_t n = op - 0x90 + 1;
        while (stack.size() < n + 1)
            stack.insert(stack.begin(), std::nullopt);
        std::swap(stack[stack.size() - 1], stack[stack.size() - 1 - n]);
        return;
    }
    const OpcodeInfo& info = ins.info();
    pop_n(info.stack_pops);
    for (size_t i = 0; i < info.stack_pushes; ++i)
        push(std::nullopt);
}

namespace {

struct BlockExit {
    AbstractStack stack;               // after the whole block executed
    std::optional<Word> jump_target;   // top of stack before a final JUMP/JUMPI
};

BlockExit simulate_block(const BasicBlock& block, AbstractStack stack)
{
    BlockExit exit;
    for (const Instruction& ins : block.instructions) {
        if (ins.opcode == OP_JUMP || ins.opcode == OP_JUMPI)
            exit.jump_target = stack.empty() ? std::nullopt : stack.back();
        abstract_step(stack, ins);
    }
    exit.stack = std::move(stack);
    return exit;
}

void add_edge(ControlFlowGraph& cfg, uint64_t from, uint64_t to, EdgeKind kind)
{
    BasicBlock& b = cfg.blocks.at(from);
    b.successors.insert(to);
    auto [it, fresh] = b.edge_kinds.emplace(to, kind);
    if (!fresh && kind != EdgeKind::fallthrough)
        it->second = kind; // a jump edge outranks a coincident fallthrough
}

bool valid_jump_target(const ControlFlowGraph& cfg, const Word& target)
{
    if (target > std::numeric_limits<uint64_t>::max())
        return false;
    auto it = cfg.blocks.find(static_cast<uint64_t>(target));
    return it != cfg.blocks.end() && it->second.instructions.front().opcode == OP_JUMPDEST;
}

} // namespace

ControlFlowGraph build_cfg(std::span<const Instruction> instrs)
{
    ControlFlowGraph cfg;
    if (instrs.empty())
        return cfg;

    std::set<uint64_t> leaders{instrs.front().original_address};
    for (size_t i = 0; i < instrs.size(); ++i) {
        if (instrs[i].opcode == OP_JUMPDEST)
            leaders.insert(instrs[i].original_address);
        if (ends_block(instrs[i].opcode) && i + 1 < instrs.size())
            leaders.insert(instrs[i + 1].original_address);
    }

    BasicBlock* current = nullptr;
    for (const Instruction& ins : instrs) {
        if (leaders.count(ins.original_address)) {
            current = &cfg.blocks[ins.original_address];
            current->start = ins.original_address;
        }
        current->instructions.push_back(ins);
    }
    cfg.entry = instrs.front().original_address;

    // Fallthrough edges and the push-immediately-before-jump pattern.
    std::set<uint64_t> resolved_jumps;
    for (auto& [start, block] : cfg.blocks) {
        const Instruction& last = block.terminator();
        auto next = cfg.blocks.upper_bound(start);
        bool falls = last.opcode == OP_JUMPI || !ends_block(last.opcode);
        if (falls && next != cfg.blocks.end())
            add_edge(cfg, start, next->first, EdgeKind::fallthrough);

        if ((last.opcode == OP_JUMP || last.opcode == OP_JUMPI) &&
            block.instructions.size() >= 2) {
            const Instruction& prev = block.instructions[block.instructions.size() - 2];
            if (is_push(prev.opcode)) {
                resolved_jumps.insert(last.original_address);
                Word target = prev.immediate_value();
                if (valid_jump_target(cfg, target))
                    add_edge(cfg, start, static_cast<uint64_t>(target),
                             last.opcode == OP_JUMP ? EdgeKind::jump : EdgeKind::branch_taken);
            }
        }
    }

    // Propagate entry stacks from the entry block to resolve targets pushed
    // in earlier blocks. Contexts are kept separately (bounded per block) so
    // call/return-style code resolves per call site; edges only ever grow.
    std::map<uint64_t, std::set<AbstractStack>> seen;
    std::set<std::pair<uint64_t, AbstractStack>> worklist;
    worklist.emplace(cfg.entry, AbstractStack{});
    while (!worklist.empty()) {
        auto [start, stack] = *worklist.begin();
        worklist.erase(worklist.begin());
        auto& states = seen[start];
        if (states.count(stack) || states.size() >= kMaxStatesPerBlock)
            continue;
        states.insert(stack);

        const BasicBlock& block = cfg.blocks.at(start);
        BlockExit exit = simulate_block(block, std::move(stack));
        const Instruction& last = block.terminator();

        if (last.opcode == OP_JUMP || last.opcode == OP_JUMPI) {
            if (exit.jump_target) {
                resolved_jumps.insert(last.original_address);
                if (valid_jump_target(cfg, *exit.jump_target)) {
                    uint64_t target = static_cast<uint64_t>(*exit.jump_target);
                    add_edge(cfg, start, target,
                             last.opcode == OP_JUMP ? EdgeKind::jump : EdgeKind::branch_taken);
                    worklist.emplace(target, exit.stack);
                }
            }
            if (last.opcode == OP_JUMPI) {
                auto next = cfg.blocks.upper_bound(start);
                if (next != cfg.blocks.end())
                    worklist.emplace(next->first, exit.stack);
            }
        } else if (!ends_block(last.opcode)) {
            auto next = cfg.blocks.upper_bound(start);
            if (next != cfg.blocks.end())
                worklist.emplace(next->first, exit.stack);
        }
    }

    for (const auto& [start, block] : cfg.blocks) {
        const Instruction& last = block.terminator();
        if ((last.opcode == OP_JUMP || last.opcode == OP_JUMPI) &&
            !resolved_jumps.count(last.original_address))
            cfg.unresolved_jumps.insert(last.original_address);
    }
    return cfg;
}

const BasicBlock& find_block_containing(const ControlFlowGraph& cfg, uint64_t pc)
{
    auto it = cfg.blocks.upper_bound(pc);
    if (it == cfg.blocks.begin())
        throw LocationError("pc " + std::to_string(pc) + " precedes all code");
    --it;
    for (const Instruction& ins : it->second.instructions)
        if (ins.original_address == pc)
            return it->second;
    throw LocationError("pc " + std::to_string(pc) + " is not an instruction boundary");
}

InstrPath path_to_root(const ControlFlowGraph& cfg, uint64_t pc, size_t max_depth)
{
    const BasicBlock& bug_block = find_block_containing(cfg, pc);

    std::map<uint64_t, std::vector<uint64_t>> preds;
    for (const auto& [start, block] : cfg.blocks)
        for (uint64_t succ : block.successors)
            preds[succ].push_back(start);

    // Depth-first backward search, ascending predecessor order, first
    // complete chain to the entry block wins.
    std::vector<uint64_t> chain;
    std::map<uint64_t, int> visits;
    bool found = false;
    auto dfs = [&](auto&& self, uint64_t block) -> void {
        if (found || chain.size() >= max_depth || visits[block] >= 2)
            return;
        visits[block]++;
        chain.push_back(block);
        if (block == cfg.entry) {
            found = true;
            return;
        }
        for (uint64_t p : preds[block]) {
            self(self, p);
            if (found)
                return;
        }
        chain.pop_back();
        visits[block]--;
    };
    dfs(dfs, bug_block.start);
    if (!found)
        throw UnreachableError("no path from entry to block at " +
                               std::to_string(bug_block.start));

    InstrPath path;
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
        const BasicBlock& block = cfg.blocks.at(*it);
        for (const Instruction& ins : block.instructions) {
            path.push_back(&ins);
            if (*it == bug_block.start && ins.original_address == pc)
                return path;
        }
    }
    return path; // unreachable: pc is inside bug_block by construction
}

PathSet enumerate_paths(const ControlFlowGraph& cfg, size_t max_paths, size_t max_depth)
{
    PathSet result;
    if (cfg.blocks.empty())
        return result;

    InstrPath path;
    std::map<uint64_t, int> visits;

    auto dfs = [&](auto&& self, uint64_t start, AbstractStack stack, size_t depth) -> void {
        if (result.paths.size() >= max_paths) {
            result.truncated = true;
            return;
        }
        auto bit = cfg.blocks.find(start);
        if (bit == cfg.blocks.end() || visits[start] >= 2 || depth >= max_depth) {
            result.paths.push_back(path);
            return;
        }
        visits[start]++;
        size_t mark = path.size();

        const BasicBlock& block = bit->second;
        std::optional<Word> jump_target;
        for (const Instruction& ins : block.instructions) {
            if (ins.opcode == OP_JUMP || ins.opcode == OP_JUMPI)
                jump_target = stack.empty() ? std::nullopt : stack.back();
            path.push_back(&ins);
            abstract_step(stack, ins);
        }
        const Instruction& last = block.terminator();

        if (is_terminator(last.opcode)) {
            result.paths.push_back(path);
        } else {
            // Candidate successors in ascending order: the path-local constant
            // target wins over statically recovered edges when present.
            std::set<uint64_t> succs;
            uint64_t fallthrough = 0;
            bool has_fallthrough = false;
            auto next = cfg.blocks.upper_bound(start);
            if (next != cfg.blocks.end()) {
                fallthrough = next->first;
                has_fallthrough = last.opcode == OP_JUMPI || !ends_block(last.opcode);
            }
            if (last.opcode == OP_JUMP || last.opcode == OP_JUMPI) {
                if (jump_target && valid_jump_target(cfg, *jump_target)) {
                    succs.insert(static_cast<uint64_t>(*jump_target));
                } else if (!jump_target) {
                    for (const auto& [succ, kind] : block.edge_kinds)
                        if (kind != EdgeKind::fallthrough)
                            succs.insert(succ);
                }
            }
            if (has_fallthrough)
                succs.insert(fallthrough);

            if (succs.empty())
                result.paths.push_back(path); // dead end (unresolvable jump)
            for (uint64_t succ : succs)
                self(self, succ, stack, depth + 1);
        }

        path.resize(mark);
        visits[start]--;
    };

    dfs(dfs, cfg.entry, AbstractStack{}, 0);
    return result;
}

std::set<uint64_t> unreachable_blocks(const ControlFlowGraph& cfg)
{
    std::set<uint64_t> visited;
    std::vector<uint64_t> queue;
    if (!cfg.blocks.empty()) {
        visited.insert(cfg.entry);
        queue.push_back(cfg.entry);
    }
    while (!queue.empty()) {
        uint64_t b = queue.back();
        queue.pop_back();
        for (uint64_t succ : cfg.blocks.at(b).successors)
            if (cfg.blocks.count(succ) && visited.insert(succ).second)
                queue.push_back(succ);
    }
    std::set<uint64_t> dead;
    for (const auto& [start, block] : cfg.blocks)
        if (!visited.count(start))
            dead.insert(start);
    return dead;
}

std::string cfg_to_json(const ControlFlowGraph& cfg)
{
    nlohmann::ordered_json doc;
    doc["entry"] = cfg.entry;
    doc["blocks"] = nlohmann::ordered_json::array();
    for (const auto& [start, block] : cfg.blocks) {
        nlohmann::ordered_json b;
        b["start"] = start;
        b["end"] = block.terminator().original_address;
        auto instrs = nlohmann::ordered_json::array();
        for (const Instruction& ins : block.instructions) {
            std::string text(ins.mnemonic());
            if (!ins.immediate.empty())
                text += " 0x" + to_hex(ins.immediate);
            instrs.push_back(text);
        }
        b["instrs"] = std::move(instrs);
        b["succs"] = block.successors;
        doc["blocks"].push_back(std::move(b));
    }
    doc["unresolved"] = cfg.unresolved_jumps;
    return doc.dump(2);
}

std::string cfg_to_dot(const ControlFlowGraph& cfg)
{
    std::ostringstream out;
    out << "digraph cfg {\n  node [shape=box fontname=monospace];\n";
    for (const auto& [start, block] : cfg.blocks) {
        out << "  b" << start << " [label=\"";
        for (const Instruction& ins : block.instructions) {
            out << "0x" << std::hex << ins.original_address << std::dec << ": "
                << ins.mnemonic();
            if (!ins.immediate.empty())
                out << " 0x" << to_hex(ins.immediate);
            out << "\\l";
        }
        out << "\"];\n";
    }
    for (const auto& [start, block] : cfg.blocks)
        for (const auto& [succ, kind] : block.edge_kinds)
            out << "  b" << start << " -> b" << succ
                << (kind == EdgeKind::fallthrough ? "" : " [style=bold]") << ";\n";
    out << "}\n";
    return out.str();
}

} // namespace bytemend
