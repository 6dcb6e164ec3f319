// bytemend: context-aware EVM bytecode patching toolkit
// Copyright 2026 The bytemend Authors.
// SPDX-License-Identifier: Apache-2.0
#include <bytemend/taint.hpp>

#include <bytemend/errors.hpp>

#include <algorithm>

namespace bytemend {

namespace {

using int256 = boost::multiprecision::int256_t;
using uint512 = boost::multiprecision::uint512_t;
using int512 = boost::multiprecision::int512_t;

const Word kSignBit = Word(1) << 255;

int256 to_signed(const Word& w)
{
    if ((w & kSignBit) == 0)
        return int256(w);
    return static_cast<int256>(int512(w) - (int512(1) << 256));
}

Word from_signed(const int256& v)
{
    if (v >= 0)
        return Word(v);
    return Word(static_cast<uint512>(int512(v) + (int512(1) << 256)));
}

bool is_data_op(uint8_t op)
{
    switch (op) {
    case OP_ADD:
    case OP_MUL:
    case OP_SUB:
    case OP_DIV:
    case OP_SDIV:
    case OP_MOD:
    case OP_SMOD:
    case OP_ADDMOD:
    case OP_MULMOD:
    case OP_EXP:
    case OP_SIGNEXTEND:
    case OP_LT:
    case OP_GT:
    case OP_SLT:
    case OP_SGT:
    case OP_EQ:
    case OP_ISZERO:
    case OP_AND:
    case OP_OR:
    case OP_XOR:
    case OP_NOT:
    case OP_BYTE:
    case OP_SHL:
    case OP_SHR:
    case OP_SAR:
        return true;
    default:
        return false;
    }
}

bool is_call_family(uint8_t op)
{
    return op == OP_CALL || op == OP_CALLCODE || op == OP_DELEGATECALL ||
           op == OP_STATICCALL || op == OP_CREATE || op == OP_CREATE2;
}

bool is_copy_op(uint8_t op)
{
    return op == OP_CALLDATACOPY || op == OP_CODECOPY || op == OP_RETURNDATACOPY ||
           op == OP_EXTCODECOPY;
}

} // namespace

Word concrete_eval(uint8_t opcode, std::span<const Word> v)
{
    switch (opcode) {
    case OP_ADD:
        return v[0] + v[1];
    case OP_MUL:
        return v[0] * v[1];
    case OP_SUB:
        return v[0] - v[1];
    case OP_DIV:
        return v[1] == 0 ? Word(0) : v[0] / v[1];
    case OP_SDIV: {
        if (v[1] == 0)
            return 0;
        int256 a = to_signed(v[0]);
        int256 b = to_signed(v[1]);
        if (v[0] == kSignBit && b == -1)
            return kSignBit; // the one quotient that overflows
        return from_signed(a / b);
    }
    case OP_MOD:
        return v[1] == 0 ? Word(0) : v[0] % v[1];
    case OP_SMOD: {
        if (v[1] == 0)
            return 0;
        return from_signed(to_signed(v[0]) % to_signed(v[1]));
    }
    case OP_ADDMOD:
        return v[2] == 0 ? Word(0) : Word((uint512(v[0]) + uint512(v[1])) % v[2]);
    case OP_MULMOD:
        return v[2] == 0 ? Word(0) : Word((uint512(v[0]) * uint512(v[1])) % v[2]);
    case OP_EXP: {
        Word base = v[0];
        Word exp = v[1];
        Word result = 1;
        while (exp != 0) {
            if ((exp & 1) != 0)
                result *= base;
            base *= base;
            exp >>= 1;
        }
        return result;
    }
    case OP_SIGNEXTEND: {
        if (v[0] >= 31)
            return v[1];
        unsigned bit = 8 * static_cast<unsigned>(v[0]) + 7;
        Word mask = (Word(1) << (bit + 1)) - 1;
        if ((v[1] >> bit & 1) != 0)
            return v[1] | ~mask;
        return v[1] & mask;
    }
    case OP_LT:
        return v[0] < v[1] ? 1 : 0;
    case OP_GT:
        return v[0] > v[1] ? 1 : 0;
    case OP_SLT:
        return to_signed(v[0]) < to_signed(v[1]) ? 1 : 0;
    case OP_SGT:
        return to_signed(v[0]) > to_signed(v[1]) ? 1 : 0;
    case OP_EQ:
        return v[0] == v[1] ? 1 : 0;
    case OP_ISZERO:
        return v[0] == 0 ? 1 : 0;
    case OP_AND:
        return v[0] & v[1];
    case OP_OR:
        return v[0] | v[1];
    case OP_XOR:
        return v[0] ^ v[1];
    case OP_NOT:
        return ~v[0];
    case OP_BYTE:
        return v[0] >= 32 ? Word(0) : (v[1] >> (8 * (31 - static_cast<unsigned>(v[0])))) & 0xff;
    case OP_SHL:
        return v[0] >= 256 ? Word(0) : v[1] << static_cast<unsigned>(v[0]);
    case OP_SHR:
        return v[0] >= 256 ? Word(0) : v[1] >> static_cast<unsigned>(v[0]);
    case OP_SAR: {
        bool negative = (v[1] & kSignBit) != 0;
        if (v[0] >= 256)
            return negative ? ~Word(0) : Word(0);
        unsigned shift = static_cast<unsigned>(v[0]);
        if (!negative)
            return v[1] >> shift;
        return ~(~v[1] >> shift);
    }
    default:
        throw Error("concrete_eval: unsupported opcode " +
                    std::string(opcode_info(opcode).mnemonic));
    }
}

bool TaintedValue::tainted_only_by(uint8_t opcode) const
{
    return !sources.empty() &&
           std::all_of(sources.begin(), sources.end(),
                       [&](const TaintSource& s) { return s.opcode == opcode; });
}

namespace {

std::set<TaintSource> union_sources(std::span<const TaintedValue> values)
{
    std::set<TaintSource> out;
    for (const TaintedValue& v : values)
        out.insert(v.sources.begin(), v.sources.end());
    return out;
}

// Sources of every concrete memory cell overlapping [offset, offset+length).
std::set<TaintSource> region_sources(const ShadowState& state, const Word& offset,
                                     const Word& length)
{
    std::set<TaintSource> out;
    for (const auto& [cell, value] : state.memory) {
        if (cell + 32 <= offset)
            continue;
        if (cell >= offset + length)
            break;
        out.insert(value.sources.begin(), value.sources.end());
    }
    return out;
}

} // namespace

void step(ShadowState& state, const Instruction& ins, const TaintPredicate& taint_sources)
{
    step(state, ins, taint_sources, nullptr);
}

void step(ShadowState& state, const Instruction& ins, const TaintPredicate& taint_sources,
          std::vector<TaintedValue>* consumed)
{
    const OpcodeInfo& info = ins.info();
    uint8_t op = ins.opcode;

    if (state.stack.size() < info.stack_pops)
        throw TaintError("stack underflow at pc " + std::to_string(ins.original_address) + " (" +
                         std::string(info.mnemonic) + " needs " + std::to_string(info.stack_pops) +
                         ", have " + std::to_string(state.stack.size()) + ")");

    std::vector<TaintedValue> popped(info.stack_pops);
    for (size_t i = 0; i < popped.size(); ++i) {
        popped[i] = std::move(state.stack.back());
        state.stack.pop_back();
    }
    if (consumed)
        *consumed = popped;

    bool stamp = taint_sources && taint_sources(ins);
    auto stamped = [&](TaintedValue v) {
        if (stamp)
            v.sources.insert(TaintSource{ins.original_address, op});
        return v;
    };
    auto push = [&](TaintedValue v) {
        state.stack.push_back(std::move(v));
        if (state.stack.size() > 1024)
            throw TaintError("stack overflow at pc " + std::to_string(ins.original_address));
    };

    if (is_push(op)) {
        push(stamped(TaintedValue{ins.immediate_value(), {}, {}}));
        return;
    }
    if (is_dup(op)) {
        // popped[n-1] is the duplicated value; restore then push the copy.
        TaintedValue copy = popped.back();
        for (size_t i = popped.size(); i-- > 0;)
            push(popped[i]);
        push(stamped(std::move(copy)));
        return;
    }
    if (is_swap(op)) {
        std::swap(popped.front(), popped.back());
        for (size_t i = popped.size(); i-- > 0;)
            push(popped[i]);
        return;
    }
    if (is_data_op(op)) {
        TaintedValue result;
        result.sources = union_sources(popped);
        bool all_concrete = std::all_of(popped.begin(), popped.end(),
                                        [](const TaintedValue& v) { return v.concrete.has_value(); });
        if (all_concrete) {
            std::vector<Word> operands;
            for (const TaintedValue& v : popped)
                operands.push_back(*v.concrete);
            result.concrete = concrete_eval(op, operands);
        }
        // Hashed-key seeds survive offsetting by a constant (array elements).
        if (op == OP_ADD || op == OP_SUB) {
            if (popped[0].mapping_seed && popped[1].concrete)
                result.mapping_seed = popped[0].mapping_seed;
            else if (popped[1].mapping_seed && popped[0].concrete)
                result.mapping_seed = popped[1].mapping_seed;
        }
        push(stamped(std::move(result)));
        return;
    }

    switch (op) {
    case OP_SHA3: {
        TaintedValue result;
        result.sources = union_sources(popped);
        const TaintedValue& offset = popped[0];
        const TaintedValue& length = popped[1];
        if (offset.concrete && length.concrete) {
            auto extra = region_sources(state, *offset.concrete, *length.concrete);
            result.sources.insert(extra.begin(), extra.end());
            if (*length.concrete >= 32) {
                auto cell = state.memory.find(*offset.concrete + *length.concrete - 32);
                if (cell != state.memory.end()) {
                    if (cell->second.concrete)
                        result.mapping_seed = cell->second.concrete;
                    else if (cell->second.mapping_seed)
                        result.mapping_seed = cell->second.mapping_seed;
                }
            }
        } else {
            result.sources.insert(state.unknown_memory.sources.begin(),
                                  state.unknown_memory.sources.end());
        }
        push(stamped(std::move(result)));
        return;
    }
    case OP_MLOAD: {
        const TaintedValue& offset = popped[0];
        TaintedValue result;
        if (offset.concrete) {
            auto cell = state.memory.find(*offset.concrete);
            if (cell != state.memory.end())
                result = cell->second;
        } else {
            result.sources = state.unknown_memory.sources;
        }
        result.sources.insert(offset.sources.begin(), offset.sources.end());
        push(stamped(std::move(result)));
        return;
    }
    case OP_MSTORE:
    case OP_MSTORE8: {
        const TaintedValue& offset = popped[0];
        TaintedValue value = popped[1];
        if (op == OP_MSTORE8)
            value.concrete.reset(); // single-byte write, cell constant lost
        if (offset.concrete) {
            state.memory[*offset.concrete] = std::move(value);
        } else {
            state.unknown_memory.sources.insert(value.sources.begin(), value.sources.end());
            state.unknown_memory.concrete.reset();
        }
        return;
    }
    case OP_SLOAD: {
        const TaintedValue& key = popped[0];
        TaintedValue result;
        if (key.concrete) {
            auto slot = state.storage.find(*key.concrete);
            if (slot != state.storage.end())
                result = slot->second;
        }
        result.sources.insert(key.sources.begin(), key.sources.end());
        push(stamped(std::move(result)));
        return;
    }
    case OP_SSTORE: {
        const TaintedValue& key = popped[0];
        if (key.concrete)
            state.storage[*key.concrete] = popped[1];
        return;
    }
    default:
        break;
    }

    if (is_copy_op(op)) {
        // Copied-in data is treated as unknown and untainted: drop any cells
        // the destination region overwrites. EXTCODECOPY pops the account
        // address first; the others start with the destination offset.
        const TaintedValue& dest = popped[op == OP_EXTCODECOPY ? 1 : 0];
        const TaintedValue& length = popped.back();
        if (dest.concrete && length.concrete) {
            Word lo = *dest.concrete;
            Word hi = lo + *length.concrete;
            for (auto it = state.memory.begin(); it != state.memory.end();) {
                if (it->first + 32 > lo && it->first < hi)
                    it = state.memory.erase(it);
                else
                    ++it;
            }
        }
        return;
    }

    if (is_call_family(op)) {
        push(stamped(TaintedValue{})); // unknown result, callee not modeled
        return;
    }

    // Environment producers and everything else: pops already applied, push
    // unknowns carrying the consumed operands' taint.
    TaintedValue generic;
    generic.sources = union_sources(popped);
    for (size_t i = 0; i < info.stack_pushes; ++i)
        push(stamped(generic));
}

const std::vector<TaintedValue>* PathTaint::last_operands(uint64_t address) const
{
    auto it = records.find(address);
    if (it == records.end() || it->second.empty())
        return nullptr;
    return &it->second.back();
}

PathTaint run_path(const InstrPath& path, const TaintPredicate& taint_sources)
{
    PathTaint taint;
    ShadowState state;
    std::vector<TaintedValue> consumed;
    for (const Instruction* ins : path) {
        step(state, *ins, taint_sources, &consumed);
        taint.records[ins->original_address].push_back(std::move(consumed));
        consumed.clear();
    }
    return taint;
}

TaintPredicate taint_push()
{
    return [](const Instruction& ins) { return is_push(ins.opcode); };
}

TaintPredicate taint_push_and_masks()
{
    return [](const Instruction& ins) {
        return is_push(ins.opcode) || ins.opcode == OP_AND || ins.opcode == OP_SIGNEXTEND;
    };
}

TaintPredicate taint_opcode(uint8_t opcode)
{
    return [opcode](const Instruction& ins) { return ins.opcode == opcode; };
}

} // namespace bytemend
