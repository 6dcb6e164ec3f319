// bytemend: context-aware EVM bytecode patching toolkit
// Copyright 2026 The bytemend Authors.
// SPDX-License-Identifier: Apache-2.0
#include <bytemend/evm.hpp>

#include <bytemend/asm.hpp>
#include <bytemend/errors.hpp>
#include <bytemend/keccak.hpp>

#include <algorithm>

namespace bytemend {

const Account* WorldState::find(const Word& address) const
{
    auto it = accounts.find(to_address(address));
    return it == accounts.end() ? nullptr : &it->second;
}

std::string_view to_string(ExecStatus s)
{
    switch (s) {
    case ExecStatus::success:
        return "success";
    case ExecStatus::revert:
        return "revert";
    case ExecStatus::out_of_gas:
        return "out_of_gas";
    case ExecStatus::invalid:
        return "invalid";
    }
    return "?";
}

namespace {

using int256 = boost::multiprecision::int256_t;
using int512 = boost::multiprecision::int512_t;
using uint512 = boost::multiprecision::uint512_t;

const Word kTopBit = Word(1) << 255;

// Two's-complement view used by the signed opcodes. This evaluator is kept
// separate from the taint module's on purpose; the two are cross-checked.
bool negative(const Word& w)
{
    return (w & kTopBit) != 0;
}

Word twos_negate(const Word& w)
{
    return ~w + 1;
}

struct Message {
    Word caller;
    Word address;     // storage/balance context
    Word code_address;
    Word origin;
    Word value;
    ByteView data;
    uint64_t gas = 0;
    int depth = 0;
};

struct TxContext {
    std::vector<LogRecord> logs;
    std::vector<std::pair<uint64_t, uint8_t>> trace;
    bool record_trace = false;
    int max_depth = 0;
};

struct FrameResult {
    ExecStatus status = ExecStatus::invalid;
    Bytes output;
    uint64_t gas_left = 0;
};

constexpr uint64_t kCallStipend = 2300;
constexpr uint64_t kCallValueFee = 9000;
constexpr uint64_t kSstoreSetFee = 20000;
constexpr uint64_t kSstoreResetFee = 5000;

class Frame {
public:
    Frame(WorldState& state, const Message& msg, ByteView code, TxContext& ctx)
        : state_(state), msg_(msg), ctx_(ctx), instrs_(disassemble(code)), code_(code)
    {
        for (size_t i = 0; i < instrs_.size(); ++i)
            index_[instrs_[i].original_address] = i;
        gas_ = msg.gas;
    }

    FrameResult run();

private:
    WorldState& state_;
    const Message& msg_;
    TxContext& ctx_;
    std::vector<Instruction> instrs_;
    ByteView code_;
    std::map<uint64_t, size_t> index_;
    std::vector<Word> stack_;
    Bytes memory_;
    Bytes returndata_;
    uint64_t gas_ = 0;

    bool charge(uint64_t amount)
    {
        if (gas_ < amount)
            return false;
        gas_ -= amount;
        return true;
    }

    bool expand_memory(const Word& offset, const Word& length)
    {
        if (length == 0)
            return true;
        if (offset > 1u << 26 || length > 1u << 26)
            return false; // unpayable at desk scale
        size_t end = static_cast<size_t>(offset) + static_cast<size_t>(length);
        size_t words = (end + 31) / 32;
        size_t current = memory_.size() / 32;
        if (words > current) {
            if (!charge(3 * (words - current)))
                return false;
            memory_.resize(words * 32, 0);
        }
        return true;
    }

    Word read_word(const Bytes& buf, size_t offset)
    {
        Word w = 0;
        for (size_t i = 0; i < 32; ++i) {
            w <<= 8;
            if (offset + i < buf.size())
                w |= buf[offset + i];
        }
        return w;
    }

    Word pop()
    {
        Word w = stack_.back();
        stack_.pop_back();
        return w;
    }

    FrameResult finish(ExecStatus status, Bytes output = {})
    {
        return FrameResult{status, std::move(output), status == ExecStatus::success ||
                                                              status == ExecStatus::revert
                                                          ? gas_
                                                          : 0};
    }

    FrameResult do_call(uint8_t op);
};

FrameResult Frame::run()
{
    ctx_.max_depth = std::max(ctx_.max_depth, msg_.depth);
    size_t ip = 0;
    for (size_t executed = 0; executed < 10'000'000; ++executed) {
        if (ip >= instrs_.size())
            return finish(ExecStatus::success); // ran off the end: implicit STOP
        const Instruction& ins = instrs_[ip];
        const OpcodeInfo& info = ins.info();
        if (ctx_.record_trace)
            ctx_.trace.emplace_back(ins.original_address, ins.opcode);

        if (!info.assigned)
            return finish(ExecStatus::invalid);
        if (stack_.size() < info.stack_pops)
            return finish(ExecStatus::invalid);
        if (stack_.size() - info.stack_pops + info.stack_pushes > 1024)
            return finish(ExecStatus::invalid);
        if (ins.opcode != OP_SSTORE && !charge(info.base_gas))
            return finish(ExecStatus::out_of_gas);

        uint8_t op = ins.opcode;
        ++ip;

        if (is_push(op)) {
            stack_.push_back(ins.immediate_value());
            continue;
        }
        if (is_dup(op)) {
            stack_.push_back(stack_[stack_.size() - 1 - (op - 0x80)]);
            continue;
        }
        if (is_swap(op)) {
            std::swap(stack_.back(), stack_[stack_.size() - 2 - (op - 0x90)]);
            continue;
        }

        switch (op) {
        case OP_STOP:
            return finish(ExecStatus::success);

        case OP_ADD: {
            Word a = pop(), b = pop();
            stack_.push_back(a + b);
            break;
        }
        case OP_MUL: {
            Word a = pop(), b = pop();
            stack_.push_back(a * b);
            break;
        }
        case OP_SUB: {
            Word a = pop(), b = pop();
            stack_.push_back(a - b);
            break;
        }
        case OP_DIV: {
            Word a = pop(), b = pop();
            stack_.push_back(b == 0 ? Word(0) : a / b);
            break;
        }
        case OP_SDIV: {
            Word a = pop(), b = pop();
            if (b == 0) {
                stack_.push_back(0);
            } else if (a == kTopBit && b == ~Word(0)) {
                stack_.push_back(a);
            } else {
                Word mag_a = negative(a) ? twos_negate(a) : a;
                Word mag_b = negative(b) ? twos_negate(b) : b;
                Word q = mag_a / mag_b;
                stack_.push_back(negative(a) != negative(b) ? twos_negate(q) : q);
            }
            break;
        }
        case OP_MOD: {
            Word a = pop(), b = pop();
            stack_.push_back(b == 0 ? Word(0) : a % b);
            break;
        }
        case OP_SMOD: {
            Word a = pop(), b = pop();
            if (b == 0) {
                stack_.push_back(0);
            } else {
                Word mag_a = negative(a) ? twos_negate(a) : a;
                Word mag_b = negative(b) ? twos_negate(b) : b;
                Word r = mag_a % mag_b;
                stack_.push_back(negative(a) ? twos_negate(r) : r);
            }
            break;
        }
        case OP_ADDMOD: {
            Word a = pop(), b = pop(), m = pop();
            stack_.push_back(m == 0 ? Word(0) : Word((uint512(a) + uint512(b)) % uint512(m)));
            break;
        }
        case OP_MULMOD: {
            Word a = pop(), b = pop(), m = pop();
            stack_.push_back(m == 0 ? Word(0) : Word((uint512(a) * uint512(b)) % uint512(m)));
            break;
        }
        case OP_EXP: {
            Word base = pop(), exponent = pop();
            if (!charge(exponent == 0 ? 0 : 50 * byte_width(exponent)))
                return finish(ExecStatus::out_of_gas);
            Word result = 1;
            Word b = base, e = exponent;
            while (e != 0) {
                if ((e & 1) != 0)
                    result *= b;
                b *= b;
                e >>= 1;
            }
            stack_.push_back(result);
            break;
        }
        case OP_SIGNEXTEND: {
            Word x = pop(), v = pop();
            if (x >= 31) {
                stack_.push_back(v);
            } else {
                unsigned bit = 8 * static_cast<unsigned>(x) + 7;
                Word mask = (Word(1) << (bit + 1)) - 1;
                stack_.push_back((v >> bit & 1) != 0 ? v | ~mask : v & mask);
            }
            break;
        }
        case OP_LT: {
            Word a = pop(), b = pop();
            stack_.push_back(a < b ? 1 : 0);
            break;
        }
        case OP_GT: {
            Word a = pop(), b = pop();
            stack_.push_back(a > b ? 1 : 0);
            break;
        }
        case OP_SLT: {
            Word a = pop(), b = pop();
            bool na = negative(a), nb = negative(b);
            bool lt = na != nb ? na : a < b;
            stack_.push_back(lt ? 1 : 0);
            break;
        }
        case OP_SGT: {
            Word a = pop(), b = pop();
            bool na = negative(a), nb = negative(b);
            bool gt = na != nb ? nb : a > b;
            stack_.push_back(gt ? 1 : 0);
            break;
        }
        case OP_EQ: {
            Word a = pop(), b = pop();
            stack_.push_back(a == b ? 1 : 0);
            break;
        }
        case OP_ISZERO:
            stack_.back() = stack_.back() == 0 ? 1 : 0;
            break;
        case OP_AND: {
            Word a = pop(), b = pop();
            stack_.push_back(a & b);
            break;
        }
        case OP_OR: {
            Word a = pop(), b = pop();
            stack_.push_back(a | b);
            break;
        }
        case OP_XOR: {
            Word a = pop(), b = pop();
            stack_.push_back(a ^ b);
            break;
        }
        case OP_NOT:
            stack_.back() = ~stack_.back();
            break;
        case OP_BYTE: {
            Word i = pop(), v = pop();
            stack_.push_back(i >= 32 ? Word(0)
                                     : (v >> (8 * (31 - static_cast<unsigned>(i)))) & 0xff);
            break;
        }
        case OP_SHL: {
            Word s = pop(), v = pop();
            stack_.push_back(s >= 256 ? Word(0) : v << static_cast<unsigned>(s));
            break;
        }
        case OP_SHR: {
            Word s = pop(), v = pop();
            stack_.push_back(s >= 256 ? Word(0) : v >> static_cast<unsigned>(s));
            break;
        }
        case OP_SAR: {
            Word s = pop(), v = pop();
            if (s >= 256)
                stack_.push_back(negative(v) ? ~Word(0) : Word(0));
            else if (negative(v))
                stack_.push_back(~(~v >> static_cast<unsigned>(s)));
            else
                stack_.push_back(v >> static_cast<unsigned>(s));
            break;
        }

        case OP_SHA3: {
            Word offset = pop(), length = pop();
            if (!expand_memory(offset, length))
                return finish(ExecStatus::out_of_gas);
            if (!charge(6 * ((static_cast<uint64_t>(length) + 31) / 32)))
                return finish(ExecStatus::out_of_gas);
            ByteView region(memory_.data() + static_cast<size_t>(offset),
                            static_cast<size_t>(length));
            stack_.push_back(keccak256_word(region));
            break;
        }

        case OP_ADDRESS:
            stack_.push_back(msg_.address);
            break;
        case OP_BALANCE: {
            Word addr = pop();
            const Account* acct = state_.find(addr);
            stack_.push_back(acct ? acct->balance : 0);
            break;
        }
        case OP_SELFBALANCE:
            stack_.push_back(state_.account(msg_.address).balance);
            break;
        case OP_ORIGIN:
            stack_.push_back(msg_.origin);
            break;
        case OP_CALLER:
            stack_.push_back(msg_.caller);
            break;
        case OP_CALLVALUE:
            stack_.push_back(msg_.value);
            break;
        case OP_CALLDATALOAD: {
            Word offset = pop();
            Word w = 0;
            for (size_t i = 0; i < 32; ++i) {
                w <<= 8;
                Word pos = offset + i;
                if (pos < msg_.data.size())
                    w |= msg_.data[static_cast<size_t>(pos)];
            }
            stack_.push_back(w);
            break;
        }
        case OP_CALLDATASIZE:
            stack_.push_back(msg_.data.size());
            break;
        case OP_CODESIZE:
            stack_.push_back(code_.size());
            break;
        case OP_RETURNDATASIZE:
            stack_.push_back(returndata_.size());
            break;
        case OP_CALLDATACOPY:
        case OP_CODECOPY:
        case OP_RETURNDATACOPY: {
            Word dest = pop(), src = pop(), length = pop();
            if (!expand_memory(dest, length))
                return finish(ExecStatus::out_of_gas);
            if (!charge(3 * ((static_cast<uint64_t>(length) + 31) / 32)))
                return finish(ExecStatus::out_of_gas);
            ByteView from = op == OP_CALLDATACOPY ? msg_.data
                            : op == OP_CODECOPY   ? code_
                                                  : ByteView(returndata_);
            for (size_t i = 0; i < static_cast<size_t>(length); ++i) {
                size_t s = static_cast<size_t>(src) + i;
                memory_[static_cast<size_t>(dest) + i] = s < from.size() ? from[s] : 0;
            }
            break;
        }
        case OP_EXTCODESIZE: {
            Word addr = pop();
            const Account* acct = state_.find(addr);
            stack_.push_back(acct ? acct->code.size() : 0);
            break;
        }
        case OP_EXTCODEHASH: {
            Word addr = pop();
            const Account* acct = state_.find(addr);
            stack_.push_back(acct ? keccak256_word(acct->code) : Word(0));
            break;
        }
        case OP_EXTCODECOPY: {
            Word addr = pop(), dest = pop(), src = pop(), length = pop();
            if (!expand_memory(dest, length))
                return finish(ExecStatus::out_of_gas);
            const Account* acct = state_.find(addr);
            for (size_t i = 0; i < static_cast<size_t>(length); ++i) {
                size_t s = static_cast<size_t>(src) + i;
                memory_[static_cast<size_t>(dest) + i] =
                    acct && s < acct->code.size() ? acct->code[s] : 0;
            }
            break;
        }

        case OP_BLOCKHASH:
            pop();
            stack_.push_back(0);
            break;
        case OP_COINBASE:
            stack_.push_back(0);
            break;
        case OP_TIMESTAMP:
            stack_.push_back(1'600'000'000);
            break;
        case OP_NUMBER:
            stack_.push_back(1'000'000);
            break;
        case OP_DIFFICULTY:
            stack_.push_back(0);
            break;
        case OP_GASLIMIT:
            stack_.push_back(10'000'000);
            break;
        case OP_CHAINID:
            stack_.push_back(1);
            break;
        case OP_GASPRICE:
            stack_.push_back(1);
            break;

        case OP_POP:
            pop();
            break;
        case OP_MLOAD: {
            Word offset = pop();
            if (!expand_memory(offset, 32))
                return finish(ExecStatus::out_of_gas);
            stack_.push_back(read_word(memory_, static_cast<size_t>(offset)));
            break;
        }
        case OP_MSTORE: {
            Word offset = pop(), value = pop();
            if (!expand_memory(offset, 32))
                return finish(ExecStatus::out_of_gas);
            Bytes enc = word_to_bytes(value, 32);
            std::copy(enc.begin(), enc.end(), memory_.begin() + static_cast<size_t>(offset));
            break;
        }
        case OP_MSTORE8: {
            Word offset = pop(), value = pop();
            if (!expand_memory(offset, 1))
                return finish(ExecStatus::out_of_gas);
            memory_[static_cast<size_t>(offset)] = static_cast<uint8_t>(value & 0xff);
            break;
        }
        case OP_SLOAD: {
            Word key = pop();
            auto& storage = state_.account(msg_.address).storage;
            auto it = storage.find(key);
            stack_.push_back(it == storage.end() ? Word(0) : it->second);
            break;
        }
        case OP_SSTORE: {
            Word key = pop(), value = pop();
            auto& storage = state_.account(msg_.address).storage;
            auto it = storage.find(key);
            Word current = it == storage.end() ? Word(0) : it->second;
            uint64_t fee = current == 0 && value != 0 ? kSstoreSetFee : kSstoreResetFee;
            if (!charge(fee))
                return finish(ExecStatus::out_of_gas);
            if (value == 0)
                storage.erase(key);
            else
                storage[key] = value;
            break;
        }
        case OP_JUMP:
        case OP_JUMPI: {
            Word target = pop();
            bool taken = true;
            if (op == OP_JUMPI)
                taken = pop() != 0;
            if (taken) {
                auto it = target <= std::numeric_limits<uint64_t>::max()
                              ? index_.find(static_cast<uint64_t>(target))
                              : index_.end();
                if (it == index_.end() || instrs_[it->second].opcode != OP_JUMPDEST)
                    return finish(ExecStatus::invalid);
                ip = it->second;
            }
            break;
        }
        case OP_PC:
            stack_.push_back(ins.original_address);
            break;
        case OP_MSIZE:
            stack_.push_back(memory_.size());
            break;
        case OP_GAS:
            stack_.push_back(gas_);
            break;
        case OP_JUMPDEST:
            break;

        case OP_LOG0:
        case OP_LOG0 + 1:
        case OP_LOG0 + 2:
        case OP_LOG0 + 3:
        case OP_LOG4: {
            Word offset = pop(), length = pop();
            size_t topics = op - OP_LOG0;
            LogRecord log;
            log.address = msg_.address;
            for (size_t i = 0; i < topics; ++i)
                log.topics.push_back(pop());
            if (!expand_memory(offset, length))
                return finish(ExecStatus::out_of_gas);
            if (!charge(375 * topics + 8 * static_cast<uint64_t>(length)))
                return finish(ExecStatus::out_of_gas);
            log.data.assign(memory_.begin() + static_cast<size_t>(offset),
                            memory_.begin() + static_cast<size_t>(offset) +
                                static_cast<size_t>(length));
            ctx_.logs.push_back(std::move(log));
            break;
        }

        case OP_CALL:
        case OP_DELEGATECALL:
        case OP_STATICCALL: {
            FrameResult interrupted = do_call(op);
            if (interrupted.status != ExecStatus::success)
                return interrupted;
            break;
        }

        case OP_RETURN:
        case OP_REVERT: {
            Word offset = pop(), length = pop();
            if (!expand_memory(offset, length))
                return finish(ExecStatus::out_of_gas);
            Bytes output(memory_.begin() + static_cast<size_t>(offset),
                         memory_.begin() + static_cast<size_t>(offset) +
                             static_cast<size_t>(length));
            return finish(op == OP_RETURN ? ExecStatus::success : ExecStatus::revert,
                          std::move(output));
        }
        case OP_INVALID:
            return finish(ExecStatus::invalid);
        case OP_SELFDESTRUCT: {
            Word beneficiary = to_address(pop());
            Word balance = state_.account(msg_.address).balance;
            state_.account(msg_.address).balance = 0;
            state_.account(beneficiary).balance += balance;
            state_.account(msg_.address).code.clear();
            return finish(ExecStatus::success);
        }

        default:
            return finish(ExecStatus::invalid); // CREATE/CREATE2/CALLCODE unsupported
        }
    }
    return finish(ExecStatus::out_of_gas); // instruction budget exhausted
}

FrameResult Frame::do_call(uint8_t op)
{
    Word gas_req = pop();
    Word addr = to_address(pop());
    Word value = op == OP_CALL ? pop() : 0;
    Word in_ofs = pop(), in_len = pop(), out_ofs = pop(), out_len = pop();

    if (!expand_memory(in_ofs, in_len) || !expand_memory(out_ofs, out_len))
        return finish(ExecStatus::out_of_gas);
    if (value != 0 && !charge(kCallValueFee))
        return finish(ExecStatus::out_of_gas);

    // All-but-one-64th forwarding rule.
    uint64_t forwardable = gas_ - gas_ / 64;
    uint64_t forwarded = gas_req > forwardable ? forwardable
                                               : static_cast<uint64_t>(gas_req);
    gas_ -= forwarded;
    if (value != 0)
        forwarded += kCallStipend;

    auto fail_cheap = [&](uint64_t refund) {
        gas_ += refund;
        returndata_.clear();
        stack_.push_back(0);
    };

    if (msg_.depth >= 1024) {
        fail_cheap(forwarded);
        return finish(ExecStatus::success, {});
    }
    if (value != 0 && state_.account(msg_.address).balance < value) {
        fail_cheap(forwarded);
        return finish(ExecStatus::success, {});
    }

    WorldState snapshot = state_;
    std::vector<LogRecord> log_mark = ctx_.logs;

    Message inner;
    inner.origin = msg_.origin;
    inner.depth = msg_.depth + 1;
    inner.gas = forwarded;
    Bytes input(memory_.begin() + static_cast<size_t>(in_ofs),
                memory_.begin() + static_cast<size_t>(in_ofs) + static_cast<size_t>(in_len));
    inner.data = input;

    if (op == OP_DELEGATECALL) {
        inner.caller = msg_.caller;
        inner.address = msg_.address;
        inner.code_address = addr;
        inner.value = msg_.value;
    } else {
        inner.caller = msg_.address;
        inner.address = addr;
        inner.code_address = addr;
        inner.value = value;
        if (value != 0) {
            state_.account(msg_.address).balance -= value;
            state_.account(addr).balance += value;
        }
    }

    const Account* callee = state_.find(inner.code_address);
    FrameResult result;
    if (!callee || callee->code.empty()) {
        result = FrameResult{ExecStatus::success, {}, forwarded}; // plain transfer
    } else {
        Frame frame(state_, inner, callee->code, ctx_);
        result = frame.run();
    }

    if (result.status == ExecStatus::success) {
        gas_ += result.gas_left;
        returndata_ = result.output;
        stack_.push_back(1);
    } else {
        state_ = std::move(snapshot);
        ctx_.logs = std::move(log_mark);
        gas_ += result.status == ExecStatus::revert ? result.gas_left : 0;
        returndata_ = result.status == ExecStatus::revert ? result.output : Bytes{};
        stack_.push_back(0);
    }
    for (size_t i = 0; i < static_cast<size_t>(out_len) && i < returndata_.size(); ++i)
        memory_[static_cast<size_t>(out_ofs) + i] = returndata_[i];
    return finish(ExecStatus::success, {});
}

} // namespace

ExecutionResult execute(WorldState& state, const Transaction& tx, bool record_trace)
{
    ExecutionResult result;
    WorldState snapshot = state;

    Word from = to_address(tx.from);
    Word to = to_address(tx.to);
    TxContext ctx;
    ctx.record_trace = record_trace;

    if (state.account(from).balance < tx.value) {
        result.status = ExecStatus::invalid;
        result.gas_used = 0;
        return result;
    }
    state.account(from).balance -= tx.value;
    state.account(to).balance += tx.value;

    FrameResult frame_result{ExecStatus::success, {}, tx.gas_limit};
    const Account* callee = state.find(to);
    if (callee && !callee->code.empty()) {
        Message msg;
        msg.caller = from;
        msg.address = to;
        msg.code_address = to;
        msg.origin = tx.origin ? to_address(*tx.origin) : from;
        msg.value = tx.value;
        msg.data = tx.data;
        msg.gas = tx.gas_limit;
        msg.depth = 1;
        Frame frame(state, msg, callee->code, ctx);
        frame_result = frame.run();
    }

    result.status = frame_result.status;
    result.return_data = std::move(frame_result.output);
    result.gas_used = tx.gas_limit - frame_result.gas_left;
    result.max_call_depth = ctx.max_depth;
    result.trace = std::move(ctx.trace);

    if (result.status != ExecStatus::success) {
        state = std::move(snapshot); // full rollback, storage_delta stays empty
        return result;
    }

    result.logs = std::move(ctx.logs);
    for (const auto& [addr, account] : state.accounts) {
        const Account* before = snapshot.find(addr);
        for (const auto& [key, value] : account.storage) {
            Word old = 0;
            if (before) {
                auto it = before->storage.find(key);
                if (it != before->storage.end())
                    old = it->second;
            }
            if (value != old)
                result.storage_delta[{addr, key}] = value;
        }
        if (before) {
            for (const auto& [key, old] : before->storage)
                if (!account.storage.count(key) && old != 0)
                    result.storage_delta[{addr, key}] = 0;
        }
    }
    return result;
}

void deploy(WorldState& state, ByteView blob, const Word& creator, const Word& value,
            const Word& address)
{
    BytecodeAnatomy anatomy = split_anatomy(blob);
    Word at = to_address(address);
    Word from = to_address(creator);
    if (state.account(from).balance < value)
        throw Error("creator cannot fund the deployment");
    state.account(from).balance -= value;
    state.account(at).balance += value;
    if (!anatomy.has_deployment()) {
        state.account(at).code.assign(blob.begin(), blob.end());
        return;
    }

    TxContext ctx;
    Message msg;
    msg.caller = from;
    msg.address = at;
    msg.code_address = at;
    msg.origin = from;
    msg.value = value;
    msg.gas = 50'000'000;
    msg.depth = 1;

    Frame frame(state, msg, blob, ctx);
    FrameResult result = frame.run();
    if (result.status != ExecStatus::success)
        throw Error("contract creation failed with status " +
                    std::string(to_string(result.status)));
    state.account(at).code = std::move(result.output);
}

} // namespace bytemend
