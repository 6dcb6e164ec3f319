// bytemend: context-aware EVM bytecode patching toolkit
// Copyright 2026 The bytemend Authors.
// SPDX-License-Identifier: Apache-2.0
#include "fixtures.hpp"

#include "asmtool.hpp"

#include <stdexcept>

namespace bytemend::test {

namespace {

constexpr uint32_t kSelDeposit = 0x11111111;
constexpr uint32_t kSelWithdraw = 0x22222222;
constexpr uint32_t kSelTransfer = 0x33333333;
constexpr uint32_t kSelOwnerWithdraw = 0x44444444;
constexpr uint32_t kSelKill = 0x55555555;
constexpr uint32_t kSelPing = 0x66666666;
constexpr uint32_t kSelTake = 0x77777777;
constexpr uint32_t kSelProxy = 0x88888888;
constexpr uint32_t kSelGet = 0x99999999;
constexpr uint32_t kSelBuy = 0xaaaaaaa1;
constexpr uint32_t kSelClaim = 0xbbbbbbb1;
constexpr uint32_t kSelAttack = 0x41414141;

// key = keccak256(caller . slot), the compiler's mapping convention.
void mapping_key_of_caller(Prog& p, const Word& slot)
{
    p.op("CALLER").push(0).op("MSTORE");
    p.push(slot).push(0x20).op("MSTORE");
    p.push(0x40).push(0).op("SHA3");
}

enum class CallValue { zero, callvalue };

// CALL target.selector() with empty return handling; reverts on failure.
void emit_checked_call(Prog& p, uint32_t selector, const Word& target, CallValue value,
                       const std::string& ok_label)
{
    p.push(Word(selector), 4).push(0xe0).op("SHL").push(0).op("MSTORE");
    p.push(0).push(0).push(4).push(0); // outLen outOfs inLen inOfs
    if (value == CallValue::callvalue)
        p.op("CALLVALUE");
    else
        p.push(0);
    p.push(target);
    p.op("GAS").op("CALL");
    p.push_label(ok_label).op("JUMPI");
    p.revert_here();
    p.label(ok_label);
}

Transaction tx(const Word& from, const Word& to, const Word& value, Bytes data,
               uint64_t gas = 1'000'000)
{
    Transaction t;
    t.from = from;
    t.to = to;
    t.value = value;
    t.data = std::move(data);
    t.gas_limit = gas;
    return t;
}

void add_tx(Scenario& s, TxLabel label, Transaction t)
{
    s.transactions.push_back(std::move(t));
    s.labels.push_back(label);
}

Scenario base_scenario()
{
    Scenario s;
    s.contract_address = kVictim;
    s.deployer = kDeployer;
    s.accounts.push_back({kUser, Word(1) << 40, {}});
    s.accounts.push_back({kAttackerEoa, Word(1) << 40, {}});
    s.accounts.push_back({kDeployer, Word(1) << 40, {}});
    return s;
}

BugEntry bug(uint64_t pc, const char* opcode, Vulnerability v)
{
    return BugEntry{pc, opcode, v, "fixture"};
}

// Attacker used by both reentrancy fixtures. Its fallback re-enters the
// victim once (bounded by its own slot 0); the attack entry point deposits
// the call value and then starts a withdrawal. Every call failure bubbles
// up as a revert, so a blocked re-entry reverts the whole transaction.
Bytes reentrancy_attacker(uint32_t reenter_selector, std::initializer_list<Word> reenter_args)
{
    Prog a;
    a.selector();
    a.op("DUP1").push(kSelAttack, 4).op("EQ").push_label("attack").op("JUMPI");
    a.op("POP");
    // fallback: first entry re-enters, later entries just accept the funds
    a.push(0).op("SLOAD").push_label("done").op("JUMPI");
    a.push(1).push(0).op("SSTORE");
    {
        // build calldata: selector then args
        a.push(Word(reenter_selector), 4).push(0xe0).op("SHL").push(0).op("MSTORE");
        size_t offset = 4;
        for (const Word& arg : reenter_args) {
            a.push(arg).push(offset).op("MSTORE");
            offset += 32;
        }
        a.push(0).push(0).push(offset).push(0);
        a.push(0); // no value
        a.push(kVictim);
        a.op("GAS").op("CALL");
        a.push_label("done").op("JUMPI");
        a.revert_here();
    }
    a.label("done").stop();

    a.label("attack").op("POP");
    emit_checked_call(a, kSelDeposit, kVictim, CallValue::callvalue, "a1");
    emit_checked_call(a, kSelWithdraw, kVictim, CallValue::zero, "a2");
    a.stop();
    return a.assemble();
}

// ---------------------------------------------------------------- fixtures

Fixture reentrancy_same()
{
    Prog p;
    p.selector();
    p.dispatch(kSelDeposit, "deposit").dispatch(kSelWithdraw, "withdraw");
    p.stop(); // fallback accepts plain transfers

    p.label("deposit").op("POP");
    mapping_key_of_caller(p, 0);
    p.op("DUP1").op("SLOAD").op("CALLVALUE").op("ADD");
    p.op("SWAP1").op("SSTORE").stop();

    p.label("withdraw").op("POP");
    mapping_key_of_caller(p, 0);
    p.op("DUP1").op("SLOAD");       // [key, amount]
    p.call_prologue();              // [key, amount, 0,0,0,0]
    p.op("DUP5");                   // value = amount
    p.op("CALLER").op("GAS").mark("call").op("CALL");
    p.push_label("wok").op("JUMPI");
    p.revert_here();
    p.label("wok");                 // [key, amount]
    p.op("POP").push(0).op("SWAP1").op("SSTORE").stop();

    Fixture fx;
    fx.name = "reentrancy_same";
    fx.blob = p.assemble();
    fx.bugs = {bug(p.at("call"), "CALL", Vulnerability::reentrancy)};
    fx.expected_next_free = Word(1);

    fx.scenario = base_scenario();
    fx.scenario.accounts.push_back(
        {kAttackerContract, 0, reentrancy_attacker(kSelWithdraw, {})});
    add_tx(fx.scenario, TxLabel::benign, tx(kUser, kVictim, 3'000'000, calldata(kSelDeposit)));
    add_tx(fx.scenario, TxLabel::benign, tx(kUser, kVictim, 0, calldata(kSelWithdraw)));
    add_tx(fx.scenario, TxLabel::benign, tx(kUser, kVictim, 2'000'000, calldata(kSelDeposit)));
    add_tx(fx.scenario, TxLabel::attack,
           tx(kAttackerEoa, kAttackerContract, 1'000'000, calldata(kSelAttack)));
    return fx;
}

Fixture reentrancy_cross()
{
    Prog p;
    p.selector();
    p.dispatch(kSelDeposit, "deposit").dispatch(kSelWithdraw, "withdraw");
    p.dispatch(kSelTransfer, "transfer");
    p.stop();

    p.label("deposit").op("POP");
    mapping_key_of_caller(p, 0);
    p.op("DUP1").op("SLOAD").op("CALLVALUE").op("ADD");
    p.op("SWAP1").op("SSTORE").stop();

    p.label("withdraw").op("POP");
    mapping_key_of_caller(p, 0);
    p.op("DUP1").op("SLOAD");
    p.call_prologue();
    p.op("DUP5");
    p.op("CALLER").op("GAS").mark("call").op("CALL");
    p.push_label("wok").op("JUMPI");
    p.revert_here();
    p.label("wok");
    p.op("POP").push(0).op("SWAP1").op("SSTORE").stop();

    // transfer(to, amount): credits the target mapping cell, debits the
    // caller's, no balance check (deliberately toy).
    p.label("transfer").op("POP");
    p.push(4).op("CALLDATALOAD").push(0).op("MSTORE");
    p.push(0).push(0x20).op("MSTORE");
    p.push(0x40).push(0).op("SHA3");      // [tkey]
    p.op("DUP1").op("SLOAD");             // [tkey, tbal]
    p.push(0x24).op("CALLDATALOAD").op("ADD");
    p.op("SWAP1").mark("t_store1").op("SSTORE");
    mapping_key_of_caller(p, 0);          // [fkey]
    p.op("DUP1").op("SLOAD");             // [fkey, fbal]
    p.push(0x24).op("CALLDATALOAD").op("SWAP1").op("SUB"); // fbal - amount
    p.op("SWAP1").mark("t_store2").op("SSTORE").stop();

    Fixture fx;
    fx.name = "reentrancy_cross";
    fx.blob = p.assemble();
    fx.bugs = {bug(p.at("call"), "CALL", Vulnerability::reentrancy)};
    fx.expected_next_free = Word(1);

    fx.scenario = base_scenario();
    fx.scenario.accounts.push_back(
        {kAttackerContract, 0,
         reentrancy_attacker(kSelTransfer, {kAuxContract, Word(1'000'000)})});
    add_tx(fx.scenario, TxLabel::benign, tx(kUser, kVictim, 3'000'000, calldata(kSelDeposit)));
    add_tx(fx.scenario, TxLabel::benign,
           tx(kUser, kVictim, 0, calldata(kSelTransfer, {kAuxContract, Word(500'000)})));
    add_tx(fx.scenario, TxLabel::benign, tx(kUser, kVictim, 0, calldata(kSelWithdraw)));
    add_tx(fx.scenario, TxLabel::attack,
           tx(kAttackerEoa, kAttackerContract, 1'000'000, calldata(kSelAttack)));
    return fx;
}

Fixture tx_origin()
{
    Prog p;
    p.selector();
    p.dispatch(kSelOwnerWithdraw, "withdraw");
    p.stop();

    p.label("withdraw").op("POP");
    p.mark("origin").op("ORIGIN").push(0).op("SLOAD").op("EQ").push_label("auth").op("JUMPI");
    p.revert_here();
    p.label("auth");
    p.call_prologue();
    p.op("ADDRESS").op("BALANCE");
    p.push(4).op("CALLDATALOAD");
    p.op("GAS").op("CALL");
    p.push_label("sent").op("JUMPI");
    p.revert_here();
    p.label("sent").stop();

    Bytes runtime = p.assemble();
    Prog ctor;
    ctor.op("CALLER").push(0).op("SSTORE");

    Fixture fx;
    fx.name = "tx_origin";
    fx.blob = wrap_deployment(ctor.assemble(), runtime);
    fx.bugs = {bug(p.at("origin"), "ORIGIN", Vulnerability::tx_origin)};
    fx.expected_next_free = Word(1);

    // Proxy a confused owner might call; it forwards a withdrawal to the
    // attacker's address and propagates failure.
    Prog proxy;
    proxy.push(Word(kSelOwnerWithdraw), 4).push(0xe0).op("SHL").push(0).op("MSTORE");
    proxy.push(kAttackerEoa).push(4).op("MSTORE");
    proxy.push(0).push(0).push(0x24).push(0);
    proxy.push(0).push(kVictim).op("GAS").op("CALL");
    proxy.push_label("ok").op("JUMPI");
    proxy.revert_here();
    proxy.label("ok").stop();

    fx.scenario = base_scenario();
    fx.scenario.accounts.push_back({kAttackerContract, 0, proxy.assemble()});
    add_tx(fx.scenario, TxLabel::benign, tx(kUser, kVictim, 2'000'000, {}));
    add_tx(fx.scenario, TxLabel::benign,
           tx(kDeployer, kVictim, 0, calldata(kSelOwnerWithdraw, {kDeployer})));
    add_tx(fx.scenario, TxLabel::benign, tx(kUser, kVictim, 1'000'000, {}));
    add_tx(fx.scenario, TxLabel::attack, tx(kDeployer, kAttackerContract, 0, {}));
    return fx;
}

Fixture suicidal()
{
    Prog p;
    p.selector();
    p.dispatch(kSelKill, "kill").dispatch(kSelPing, "ping");
    p.stop();
    p.label("kill").op("POP").op("CALLER").mark("kill_op").op("SELFDESTRUCT");
    p.label("ping").op("POP").push(0x2a).push(0).op("MSTORE");
    p.push(0x20).push(0).op("RETURN");

    Bytes runtime = p.assemble();
    Prog ctor;
    ctor.op("CALLER").push(0).op("SSTORE"); // an owner variable exists

    Fixture fx;
    fx.name = "suicidal";
    fx.blob = wrap_deployment(ctor.assemble(), runtime);
    fx.bugs = {bug(p.at("kill_op"), "SELFDESTRUCT", Vulnerability::suicidal)};

    fx.scenario = base_scenario();
    add_tx(fx.scenario, TxLabel::benign, tx(kUser, kVictim, 0, calldata(kSelPing)));
    add_tx(fx.scenario, TxLabel::benign, tx(kAttackerEoa, kVictim, 0, calldata(kSelPing)));
    add_tx(fx.scenario, TxLabel::attack, tx(kAttackerEoa, kVictim, 0, calldata(kSelKill)));
    return fx;
}

Fixture leaking()
{
    Prog p;
    p.selector();
    p.dispatch(kSelTake, "take");
    p.stop();
    p.label("take").op("POP");
    p.call_prologue();
    p.op("ADDRESS").op("BALANCE");
    p.op("CALLER");
    p.op("GAS").mark("call").op("CALL");
    p.push_label("ok").op("JUMPI");
    p.revert_here();
    p.label("ok").stop();

    Fixture fx;
    fx.name = "leaking";
    fx.blob = wrap_deployment({}, p.assemble()); // no owner anywhere
    fx.bugs = {bug(p.at("call"), "CALL", Vulnerability::leaking)};
    fx.expected_next_free = Word(0);

    fx.scenario = base_scenario();
    add_tx(fx.scenario, TxLabel::benign, tx(kUser, kVictim, 2'000'000, {}));
    add_tx(fx.scenario, TxLabel::benign, tx(kDeployer, kVictim, 0, calldata(kSelTake)));
    add_tx(fx.scenario, TxLabel::benign, tx(kUser, kVictim, 1'000'000, {}));
    add_tx(fx.scenario, TxLabel::attack, tx(kAttackerEoa, kVictim, 0, calldata(kSelTake)));
    return fx;
}

Fixture unsafe_delegatecall()
{
    Prog p;
    p.selector();
    p.dispatch(kSelProxy, "proxy").dispatch(kSelGet, "get");
    p.stop();
    p.label("proxy").op("POP");
    p.call_prologue();
    p.push(4).op("CALLDATALOAD");
    p.op("GAS").mark("dcall").op("DELEGATECALL");
    p.push_label("ok").op("JUMPI");
    p.revert_here();
    p.label("ok").stop();
    p.label("get").op("POP").push(0).op("SLOAD").push(0).op("MSTORE");
    p.push(0x20).push(0).op("RETURN");

    Bytes runtime = p.assemble();
    Prog ctor;
    ctor.push(7).push(0).op("SSTORE"); // a data variable, not an owner

    Fixture fx;
    fx.name = "unsafe_delegatecall";
    fx.blob = wrap_deployment(ctor.assemble(), runtime);
    fx.bugs = {bug(p.at("dcall"), "DELEGATECALL", Vulnerability::unsafe_delegatecall)};
    fx.expected_next_free = Word(1);

    Prog evil; // overwrites the victim's slot 0 when delegatecalled
    evil.push(0x42).push(0).op("SSTORE").stop();

    fx.scenario = base_scenario();
    fx.scenario.accounts.push_back({kAuxContract, 0, evil.assemble()});
    fx.scenario.accounts.push_back({kBenignLib, 0, bytes_from_hex("00")});
    add_tx(fx.scenario, TxLabel::benign, tx(kUser, kVictim, 0, calldata(kSelGet)));
    add_tx(fx.scenario, TxLabel::benign,
           tx(kDeployer, kVictim, 0, calldata(kSelProxy, {kBenignLib})));
    add_tx(fx.scenario, TxLabel::benign, tx(kUser, kVictim, 0, calldata(kSelGet)));
    add_tx(fx.scenario, TxLabel::attack,
           tx(kAttackerEoa, kVictim, 0, calldata(kSelProxy, {kAuxContract})));
    return fx;
}

// Shared shape for the masked-add fixtures: buy(amount) adds the masked
// calldata amount to the masked total in slot 0; get() returns the total.
Fixture masked_add_fixture(const std::string& name, const Word& mask, size_t mask_width,
                           IntegerType type, std::optional<uint64_t> anchor_at,
                           const Word& benign_amount, const Word& attack_amount)
{
    Prog p;
    p.selector();
    p.dispatch(kSelBuy, "buy").dispatch(kSelGet, "get");
    p.stop();
    p.label("buy").op("POP");
    p.push(4).op("CALLDATALOAD").push(mask, mask_width).op("AND");
    p.push(0).op("SLOAD").push(mask, mask_width).op("AND");
    if (anchor_at)
        p.pad_to(*anchor_at);
    p.mark("bug").op("ADD");
    p.push(mask, mask_width).op("AND");
    p.push(0).op("SSTORE").stop();
    p.label("get").op("POP").push(0).op("SLOAD").push(0).op("MSTORE");
    p.push(0x20).push(0).op("RETURN");

    Fixture fx;
    fx.name = name;
    fx.blob = p.assemble();
    fx.bugs = {bug(p.at("bug"), "ADD", Vulnerability::overflow_add)};
    fx.expected_type = type;
    fx.expected_next_free = Word(1);

    fx.scenario = base_scenario();
    add_tx(fx.scenario, TxLabel::benign,
           tx(kUser, kVictim, 0, calldata(kSelBuy, {benign_amount})));
    add_tx(fx.scenario, TxLabel::benign, tx(kUser, kVictim, 0, calldata(kSelGet)));
    add_tx(fx.scenario, TxLabel::attack,
           tx(kAttackerEoa, kVictim, 0, calldata(kSelBuy, {attack_amount})));
    return fx;
}

Fixture overflow_add_uint16()
{
    return masked_add_fixture("overflow_add_uint16", 0xffff, 2, IntegerType{16, false}, 0xa5,
                              Word(0x8000), Word(0x9000));
}

Fixture overflow_add_uint32()
{
    return masked_add_fixture("overflow_add_uint32", 0xffffffff, 4, IntegerType{32, false},
                              std::nullopt, Word(0xf0000000), Word(0x20000000));
}

Fixture overflow_add_int32()
{
    Prog p;
    p.selector();
    p.dispatch(kSelBuy, "add").dispatch(kSelGet, "get");
    p.stop();
    p.label("add").op("POP");
    p.push(4).op("CALLDATALOAD").push(3).op("SIGNEXTEND");
    p.push(0).op("SLOAD").push(3).op("SIGNEXTEND");
    p.mark("bug").op("ADD");
    p.push(3).op("SIGNEXTEND");
    p.push(0).op("SSTORE").stop();
    p.label("get").op("POP").push(0).op("SLOAD").push(0).op("MSTORE");
    p.push(0x20).push(0).op("RETURN");

    Fixture fx;
    fx.name = "overflow_add_int32";
    fx.blob = p.assemble();
    fx.bugs = {bug(p.at("bug"), "ADD", Vulnerability::overflow_add)};
    fx.expected_type = IntegerType{32, true};
    fx.expected_next_free = Word(1);

    fx.scenario = base_scenario();
    add_tx(fx.scenario, TxLabel::benign,
           tx(kUser, kVictim, 0, calldata(kSelBuy, {Word(0x100)})));
    add_tx(fx.scenario, TxLabel::benign,
           tx(kUser, kVictim, 0, calldata(kSelBuy, {Word(0x7ffffe00)})));
    add_tx(fx.scenario, TxLabel::attack,
           tx(kAttackerEoa, kVictim, 0, calldata(kSelBuy, {Word(0x200)})));
    return fx;
}

Fixture overflow_mul_uint32()
{
    Prog p;
    p.selector();
    p.dispatch(kSelBuy, "cost").dispatch(kSelGet, "get");
    p.stop();
    p.label("cost").op("POP");
    p.push(4).op("CALLDATALOAD").push(0xffffffff, 4).op("AND"); // amount
    p.push(3);                                                  // unit price
    p.mark("bug").op("MUL");
    p.push(0xffffffff, 4).op("AND");
    p.push(0).op("SSTORE").stop();
    p.label("get").op("POP").push(0).op("SLOAD").push(0).op("MSTORE");
    p.push(0x20).push(0).op("RETURN");

    Fixture fx;
    fx.name = "overflow_mul_uint32";
    fx.blob = p.assemble();
    fx.bugs = {bug(p.at("bug"), "MUL", Vulnerability::overflow_mul)};
    fx.expected_type = IntegerType{32, false};
    fx.expected_next_free = Word(1);

    fx.scenario = base_scenario();
    add_tx(fx.scenario, TxLabel::benign,
           tx(kUser, kVictim, 0, calldata(kSelBuy, {Word(0x1000)})));
    add_tx(fx.scenario, TxLabel::benign, tx(kUser, kVictim, 0, calldata(kSelBuy, {Word(0)})));
    add_tx(fx.scenario, TxLabel::attack,
           tx(kAttackerEoa, kVictim, 0, calldata(kSelBuy, {Word(0x60000000)})));
    return fx;
}

Fixture underflow_sub()
{
    Prog p;
    p.selector();
    p.dispatch(kSelDeposit, "deposit").dispatch(kSelWithdraw, "withdraw");
    p.stop();
    p.label("deposit").op("POP");
    p.push(0).op("SLOAD").op("CALLVALUE").op("ADD").push(0).op("SSTORE").stop();
    p.label("withdraw").op("POP");
    p.push(4).op("CALLDATALOAD"); // amount
    p.push(0).op("SLOAD");        // total on top
    p.mark("bug").op("SUB");      // total - amount, wraps when total < amount
    p.push(0).op("SSTORE");
    p.call_prologue();
    p.push(4).op("CALLDATALOAD");
    p.op("CALLER").op("GAS").op("CALL");
    p.push_label("ok").op("JUMPI");
    p.revert_here();
    p.label("ok").stop();

    Fixture fx;
    fx.name = "underflow_sub";
    fx.blob = p.assemble();
    fx.bugs = {bug(p.at("bug"), "SUB", Vulnerability::underflow_sub)};
    fx.expected_type = IntegerType{256, false};
    fx.expected_next_free = Word(1);

    fx.scenario = base_scenario();
    add_tx(fx.scenario, TxLabel::benign, tx(kUser, kVictim, 5'000'000, {})); // plain funding
    add_tx(fx.scenario, TxLabel::benign,
           tx(kUser, kVictim, 500'000, calldata(kSelDeposit)));
    add_tx(fx.scenario, TxLabel::benign,
           tx(kUser, kVictim, 0, calldata(kSelWithdraw, {Word(200'000)})));
    add_tx(fx.scenario, TxLabel::attack,
           tx(kAttackerEoa, kVictim, 0, calldata(kSelWithdraw, {Word(1'000'000)})));
    return fx;
}

Fixture unhandled_exception()
{
    Prog p;
    p.selector();
    p.dispatch(kSelClaim, "claim").dispatch(kSelGet, "get");
    p.stop();
    p.label("claim").op("POP");
    p.push(1).op("SLOAD").op("ISZERO").push_label("fresh").op("JUMPI");
    p.revert_here();
    p.label("fresh");
    // winner.send(balance): a 2300-gas call whose result goes unchecked
    p.call_prologue();
    p.op("ADDRESS").op("BALANCE");
    p.push(0).op("SLOAD"); // winner
    p.push(2300).mark("send").op("CALL");
    p.op("POP"); // result dropped: the bug
    p.push(1).push(1).op("SSTORE").stop();
    p.label("get").op("POP").push(1).op("SLOAD").push(0).op("MSTORE");
    p.push(0x20).push(0).op("RETURN");

    Bytes runtime = p.assemble();
    Prog ctor;
    ctor.push(kAuxContract).push(0).op("SSTORE"); // winner is a contract

    Fixture fx;
    fx.name = "unhandled_exception";
    fx.blob = wrap_deployment(ctor.assemble(), runtime);
    fx.bugs = {bug(p.at("send"), "CALL", Vulnerability::unhandled_exception)};
    fx.expected_next_free = Word(2);

    // The winner's fallback needs more than the send stipend, so the send
    // always fails and the claim latch burns the prize.
    Prog winner;
    winner.push(1).push(0).op("SSTORE").stop();

    fx.scenario = base_scenario();
    fx.scenario.accounts.push_back({kAuxContract, 0, winner.assemble()});
    add_tx(fx.scenario, TxLabel::benign, tx(kUser, kVictim, 1'000'000, {}));
    add_tx(fx.scenario, TxLabel::benign, tx(kUser, kVictim, 0, calldata(kSelGet)));
    add_tx(fx.scenario, TxLabel::attack, tx(kUser, kVictim, 0, calldata(kSelClaim)));
    return fx;
}

} // namespace

Bytes calldata(uint32_t selector, std::initializer_list<Word> args)
{
    Bytes data{static_cast<uint8_t>(selector >> 24), static_cast<uint8_t>(selector >> 16),
               static_cast<uint8_t>(selector >> 8), static_cast<uint8_t>(selector)};
    for (const Word& arg : args) {
        Bytes word = word_to_bytes(arg, 32);
        data.insert(data.end(), word.begin(), word.end());
    }
    return data;
}

const std::vector<Fixture>& fixture_corpus()
{
    static const std::vector<Fixture> corpus = [] {
        std::vector<Fixture> all;
        all.push_back(reentrancy_same());
        all.push_back(reentrancy_cross());
        all.push_back(tx_origin());
        all.push_back(suicidal());
        all.push_back(leaking());
        all.push_back(unsafe_delegatecall());
        all.push_back(overflow_add_uint16());
        all.push_back(overflow_add_uint32());
        all.push_back(overflow_add_int32());
        all.push_back(overflow_mul_uint32());
        all.push_back(underflow_sub());
        all.push_back(unhandled_exception());
        return all;
    }();
    return corpus;
}

const Fixture& fixture_by_name(const std::string& name)
{
    for (const Fixture& fx : fixture_corpus())
        if (fx.name == name)
            return fx;
    throw std::invalid_argument("no fixture named " + name);
}

} // namespace bytemend::test
