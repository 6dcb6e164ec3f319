// bytemend: context-aware EVM bytecode patching toolkit
// Copyright 2026 The bytemend Authors.
// SPDX-License-Identifier: Apache-2.0
#include <bytemend/inference.hpp>

#include <bytemend/errors.hpp>

#include <nlohmann/json.hpp>

namespace bytemend {

namespace {

// 2^k - 1 for byte-aligned k gives k; anything else is alignment noise.
std::optional<unsigned> mask_bits(const Word& mask)
{
    Word plus1 = mask + 1;
    if (plus1 == 0)
        return 256; // full-width mask
    if ((plus1 & (plus1 - 1)) != 0)
        return std::nullopt;
    unsigned bits = 0;
    Word v = plus1;
    while (v > 1) {
        v >>= 1;
        ++bits;
    }
    if (bits == 0 || bits % 8 != 0)
        return std::nullopt;
    return bits;
}

} // namespace

IntegerType infer_integer_type(const ControlFlowGraph& cfg, uint64_t bug_pc)
{
    const BasicBlock& block = find_block_containing(cfg, bug_pc);
    const Instruction* bug = nullptr;
    for (const Instruction& ins : block.instructions)
        if (ins.original_address == bug_pc)
            bug = &ins;
    if (bug->opcode != OP_ADD && bug->opcode != OP_SUB && bug->opcode != OP_MUL)
        throw LocationError("pc " + std::to_string(bug_pc) + " is " +
                            std::string(bug->mnemonic()) + ", expected ADD, SUB or MUL");

    InstrPath path = path_to_root(cfg, bug_pc);
    PathTaint taint = run_path(path, taint_push_and_masks());

    const std::vector<TaintedValue>* operands = taint.last_operands(bug_pc);
    if (!operands)
        return IntegerType{256, false};

    std::set<TaintSource> sources;
    for (const TaintedValue& v : *operands)
        sources.insert(v.sources.begin(), v.sources.end());

    // The nearest masking source before the bug decides; its width comes from
    // the constant operand recorded at the mask instruction itself.
    std::optional<IntegerType> best;
    uint64_t best_address = 0;
    for (const TaintSource& src : sources) {
        if (src.address > bug_pc)
            continue;
        std::optional<IntegerType> candidate;
        if (src.opcode == OP_AND) {
            if (const auto* mask_ops = taint.last_operands(src.address)) {
                for (const TaintedValue& op : *mask_ops) {
                    if (!op.concrete)
                        continue;
                    if (auto bits = mask_bits(*op.concrete)) {
                        candidate = IntegerType{*bits, false};
                        break;
                    }
                }
            }
        } else if (src.opcode == OP_SIGNEXTEND) {
            if (const auto* ext_ops = taint.last_operands(src.address)) {
                const TaintedValue& x = ext_ops->front();
                if (x.concrete && *x.concrete <= 31)
                    candidate = IntegerType{8 * (static_cast<unsigned>(*x.concrete) + 1), true};
            }
        }
        if (candidate && (!best || src.address >= best_address)) {
            best = candidate;
            best_address = src.address;
        }
    }
    return best.value_or(IntegerType{256, false});
}

IntegerBounds bounds_of(IntegerType type)
{
    IntegerBounds b;
    if (!type.is_signed) {
        b.max = type.bits == 256 ? ~Word(0) : (Word(1) << type.bits) - 1;
        b.min = 0;
    } else {
        b.max = (Word(1) << (type.bits - 1)) - 1;
        b.min = Word(0) - (Word(1) << (type.bits - 1)); // two's complement
    }
    return b;
}

StorageLayout infer_storage_layout(const ControlFlowGraph& cfg, size_t max_paths,
                                   size_t max_depth)
{
    StorageLayout layout;
    PathSet paths = enumerate_paths(cfg, max_paths, max_depth);
    for (const InstrPath& path : paths.paths) {
        PathTaint taint;
        try {
            taint = run_path(path, taint_push());
        } catch (const TaintError&) {
            continue; // skip defective paths
        }
        for (const Instruction* ins : path) {
            if (ins->opcode != OP_SLOAD && ins->opcode != OP_SSTORE)
                continue;
            for (const auto& visit : taint.records[ins->original_address]) {
                const TaintedValue& key = visit.front();
                if (key.concrete)
                    layout.used_keys.insert(*key.concrete);
                else if (key.mapping_seed)
                    layout.used_keys.insert(*key.mapping_seed);
                else
                    ++layout.opaque_key_ops;
            }
        }
    }
    layout.next_free = layout.used_keys.empty() ? Word(0) : *layout.used_keys.rbegin() + 1;
    return layout;
}

namespace {

// Treat every value-producing opcode except CALLER as contaminating, so a
// stored value counts as an owner write only when CALLER alone reaches it.
bool caller_or_data_producer(const Instruction& ins)
{
    switch (ins.opcode) {
    case OP_CALLER:
    case OP_ORIGIN:
    case OP_CALLVALUE:
    case OP_CALLDATALOAD:
    case OP_CALLDATASIZE:
    case OP_ADDRESS:
    case OP_BALANCE:
    case OP_SELFBALANCE:
    case OP_GASPRICE:
    case OP_EXTCODESIZE:
    case OP_EXTCODEHASH:
    case OP_RETURNDATASIZE:
    case OP_BLOCKHASH:
    case OP_COINBASE:
    case OP_TIMESTAMP:
    case OP_NUMBER:
    case OP_DIFFICULTY:
    case OP_GASLIMIT:
    case OP_CHAINID:
    case OP_CODESIZE:
    case OP_SLOAD:
    case OP_MSIZE:
    case OP_PC:
    case OP_GAS:
    case OP_SHA3:
        return true;
    default:
        return false;
    }
}

} // namespace

namespace {

// The compiler stores sub-word variables by masking them into the slot's
// previous content, so an owner store reads the slot first. An SLOAD source
// is harmless when every key it was seen with is the slot being written.
bool same_slot_reload(const PathTaint& taint, uint64_t sload_addr, const Word& store_key)
{
    auto it = taint.records.find(sload_addr);
    if (it == taint.records.end())
        return false;
    for (const auto& visit : it->second) {
        const TaintedValue& key = visit.front();
        if (!key.concrete || *key.concrete != store_key)
            return false;
    }
    return true;
}

} // namespace

std::optional<Word> find_owner_variable(const ControlFlowGraph& cfg, size_t max_paths,
                                        size_t max_depth)
{
    PathSet paths = enumerate_paths(cfg, max_paths, max_depth);
    for (const InstrPath& path : paths.paths) {
        PathTaint taint;
        try {
            taint = run_path(path, caller_or_data_producer);
        } catch (const TaintError&) {
            continue;
        }
        for (const Instruction* ins : path) {
            if (ins->opcode != OP_SSTORE)
                continue;
            for (const auto& visit : taint.records[ins->original_address]) {
                const TaintedValue& key = visit[0];
                const TaintedValue& value = visit[1];
                if (!key.concrete)
                    continue;
                bool has_caller = false;
                bool clean = true;
                for (const TaintSource& src : value.sources) {
                    if (src.opcode == OP_CALLER)
                        has_caller = true;
                    else if (src.opcode == OP_SLOAD)
                        clean &= same_slot_reload(taint, src.address, *key.concrete);
                    else
                        clean = false;
                }
                if (has_caller && clean)
                    return key.concrete;
            }
        }
    }
    return std::nullopt;
}

namespace {

// Identity of a storage location: a plain constant key or a hashed key
// reduced to the slot constant that seeded the hash.
struct KeyId {
    bool hashed = false;
    Word key;

    bool operator<(const KeyId& rhs) const
    {
        return hashed != rhs.hashed ? hashed < rhs.hashed : key < rhs.key;
    }
};

std::optional<KeyId> key_identity(const TaintedValue& key)
{
    if (key.concrete)
        return KeyId{false, *key.concrete};
    if (key.mapping_seed)
        return KeyId{true, *key.mapping_seed};
    return std::nullopt;
}

} // namespace

std::set<uint64_t> find_shared_state_writes(const ControlFlowGraph& cfg, uint64_t reentrant_pc,
                                            size_t max_paths, size_t max_depth)
{
    const BasicBlock& block = find_block_containing(cfg, reentrant_pc);
    const Instruction* call = nullptr;
    for (const Instruction& ins : block.instructions)
        if (ins.original_address == reentrant_pc)
            call = &ins;
    if (call->opcode != OP_CALL)
        throw LocationError("pc " + std::to_string(reentrant_pc) + " is " +
                            std::string(call->mnemonic()) + ", expected CALL");

    PathSet paths = enumerate_paths(cfg, max_paths, max_depth);

    // Pass 1: storage locations touched on paths through the vulnerable CALL.
    std::set<KeyId> shared_keys;
    std::vector<PathTaint> taints(paths.paths.size());
    std::vector<bool> through_call(paths.paths.size(), false);
    for (size_t i = 0; i < paths.paths.size(); ++i) {
        const InstrPath& path = paths.paths[i];
        through_call[i] = std::any_of(path.begin(), path.end(), [&](const Instruction* ins) {
            return ins->original_address == reentrant_pc;
        });
        try {
            taints[i] = run_path(path, taint_push());
        } catch (const TaintError&) {
            continue;
        }
        if (!through_call[i])
            continue;
        for (const Instruction* ins : path) {
            if (ins->opcode != OP_SLOAD && ins->opcode != OP_SSTORE)
                continue;
            for (const auto& visit : taints[i].records[ins->original_address])
                if (auto id = key_identity(visit.front()))
                    shared_keys.insert(*id);
        }
    }

    // Pass 2: every SSTORE anywhere using one of those locations.
    std::set<uint64_t> writes;
    for (size_t i = 0; i < paths.paths.size(); ++i) {
        for (const Instruction* ins : paths.paths[i]) {
            if (ins->opcode != OP_SSTORE)
                continue;
            for (const auto& visit : taints[i].records[ins->original_address])
                if (auto id = key_identity(visit.front()); id && shared_keys.count(*id))
                    writes.insert(ins->original_address);
        }
    }
    return writes;
}

std::set<uint64_t> sstores_on_paths_through(const ControlFlowGraph& cfg, uint64_t pc,
                                            size_t max_paths, size_t max_depth)
{
    std::set<uint64_t> out;
    PathSet paths = enumerate_paths(cfg, max_paths, max_depth);
    for (const InstrPath& path : paths.paths) {
        bool through = std::any_of(path.begin(), path.end(), [&](const Instruction* ins) {
            return ins->original_address == pc;
        });
        if (!through)
            continue;
        for (const Instruction* ins : path)
            if (ins->opcode == OP_SSTORE)
                out.insert(ins->original_address);
    }
    return out;
}

std::string layout_to_json(const StorageLayout& layout)
{
    nlohmann::ordered_json doc;
    auto keys = nlohmann::ordered_json::array();
    for (const Word& k : layout.used_keys)
        keys.push_back(to_hex(k));
    doc["used_keys"] = std::move(keys);
    doc["next_free"] = to_hex(layout.next_free);
    auto warnings = nlohmann::ordered_json::array();
    if (layout.opaque_key_ops > 0)
        warnings.push_back(std::to_string(layout.opaque_key_ops) +
                           " storage accesses with non-inferable keys");
    doc["warnings"] = std::move(warnings);
    return doc.dump(2);
}

} // namespace bytemend
