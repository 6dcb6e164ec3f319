// bytemend: context-aware EVM bytecode patching toolkit
// Copyright 2026 The bytemend Authors.
// SPDX-License-Identifier: Apache-2.0
#include <bytemend/errors.hpp>
#include <bytemend/inference.hpp>

#include "asmtool.hpp"

#include <doctest.h>

using namespace bytemend;
using test::Prog;

namespace {

ControlFlowGraph cfg_of(const Bytes& code)
{
    auto instrs = disassemble(code);
    return build_cfg(instrs);
}

// calldata arg and storage value, both masked to the given width before the
// arithmetic op, mirroring how the compiler emits small-integer math.
Prog masked_arith(const char* mnemonic, const Word& mask, size_t mask_width,
                  std::string& bug_name)
{
    Prog p;
    p.push(4).op("CALLDATALOAD").push(mask, mask_width).op("AND");
    p.push(0).op("SLOAD").push(mask, mask_width).op("AND");
    p.mark("bug").op(mnemonic);
    p.push(mask, mask_width).op("AND");
    p.push(0).op("SSTORE").stop();
    bug_name = "bug";
    return p;
}

} // namespace

TEST_CASE("uint32 mask pattern infers {32, unsigned}")
{
    std::string bug;
    Prog p = masked_arith("ADD", 0xffffffff, 4, bug);
    ControlFlowGraph cfg = cfg_of(p.assemble());
    IntegerType t = infer_integer_type(cfg, p.at(bug));
    CHECK(t == IntegerType{32, false});
}

TEST_CASE("signextend(3) pattern infers {32, signed}")
{
    Prog p;
    p.push(4).op("CALLDATALOAD").push(3).op("SIGNEXTEND");
    p.push(0).op("SLOAD").push(3).op("SIGNEXTEND");
    p.mark("bug").op("ADD");
    p.push(3).op("SIGNEXTEND");
    p.push(0).op("SSTORE").stop();
    ControlFlowGraph cfg = cfg_of(p.assemble());
    IntegerType t = infer_integer_type(cfg, p.at("bug"));
    CHECK(t == IntegerType{32, true});
}

TEST_CASE("bare 256-bit arithmetic defaults to {256, unsigned}")
{
    Prog p;
    p.push(4).op("CALLDATALOAD");
    p.push(0).op("SLOAD");
    p.mark("bug").op("ADD");
    p.push(0).op("SSTORE").stop();
    ControlFlowGraph cfg = cfg_of(p.assemble());
    CHECK(infer_integer_type(cfg, p.at("bug")) == IntegerType{256, false});
}

TEST_CASE("nearest masking source wins when both patterns reach the bug")
{
    // A uint16 mask early, a SIGNEXTEND(3) later: the signextend is nearest.
    Prog p;
    p.push(4).op("CALLDATALOAD").push(0xffff, 2).op("AND");
    p.push(0).op("SLOAD").push(3).op("SIGNEXTEND");
    p.mark("bug").op("ADD");
    p.push(0).op("SSTORE").stop();
    ControlFlowGraph cfg = cfg_of(p.assemble());
    CHECK(infer_integer_type(cfg, p.at("bug")) == IntegerType{32, true});
}

TEST_CASE("address masks and alignment noise are not integer types")
{
    // A 2^160-1 mask reads as a 160-bit unsigned (address) type.
    std::string bug;
    Prog p = masked_arith("ADD", (Word(1) << 160) - 1, 20, bug);
    CHECK(infer_integer_type(cfg_of(p.assemble()), p.at(bug)) == IntegerType{160, false});

    // 0xff00 is not 2^k-1: ignored, falls back to the default.
    std::string bug2;
    Prog q = masked_arith("ADD", 0xff00, 2, bug2);
    CHECK(infer_integer_type(cfg_of(q.assemble()), q.at(bug2)) == IntegerType{256, false});
}

TEST_CASE("non-arithmetic bug pc is a LocationError")
{
    Prog p;
    p.push(1).push(2).mark("sstore").op("SSTORE").stop();
    ControlFlowGraph cfg = cfg_of(p.assemble());
    CHECK_THROWS_AS(infer_integer_type(cfg, p.at("sstore")), LocationError);
}

TEST_CASE("bounds_of covers unsigned and two's-complement signed ranges")
{
    IntegerBounds u32 = bounds_of({32, false});
    CHECK(u32.max == 0xffffffff);
    CHECK(u32.min == 0);

    IntegerBounds u256 = bounds_of({256, false});
    CHECK(u256.max == ~Word(0));

    IntegerBounds s8 = bounds_of({8, true});
    CHECK(s8.max == 127);
    CHECK(s8.min == ~Word(0) - 127); // -128 in two's complement

    // Round-trip: max - min + 1 == 2^bits for every width and signedness.
    for (unsigned bits = 8; bits <= 256; bits += 8) {
        for (bool is_signed : {false, true}) {
            IntegerBounds b = bounds_of({bits, is_signed});
            Word range = b.max - b.min + 1; // wraps correctly for signed
            if (bits == 256)
                CHECK(range == 0); // 2^256 wraps to zero
            else
                CHECK(range == Word(1) << bits);
        }
    }
}

TEST_CASE("storage layout collects static keys, max+1 is the free slot")
{
    Prog p;
    p.selector();
    p.dispatch(0x11111111, "a").dispatch(0x22222222, "b").stop();
    p.label("a").push(0).op("SLOAD").push(1).op("SLOAD").op("ADD").push(2).op("SSTORE").stop();
    p.label("b").push(0x2a).push(1).op("SSTORE").stop();
    ControlFlowGraph cfg = cfg_of(p.assemble());
    StorageLayout layout = infer_storage_layout(cfg);
    CHECK(layout.used_keys == std::set<Word>{0, 1, 2});
    CHECK(layout.next_free == 3);
    CHECK(layout.opaque_key_ops == 0);
}

TEST_CASE("mapping access contributes its declaration slot")
{
    Prog p;
    p.op("CALLER").push(0).op("MSTORE");
    p.push(4).push(0x20).op("MSTORE"); // mapping at slot 4
    p.push(0x40).push(0).op("SHA3");
    p.op("SLOAD").push(0).op("MSTORE");
    p.push(0x20).push(0).op("RETURN");
    ControlFlowGraph cfg = cfg_of(p.assemble());
    StorageLayout layout = infer_storage_layout(cfg);
    CHECK(layout.used_keys == std::set<Word>{4});
    CHECK(layout.next_free == 5);
}

TEST_CASE("no storage traffic means next_free zero")
{
    ControlFlowGraph cfg = cfg_of(bytes_from_hex("6001600201" "00"));
    StorageLayout layout = infer_storage_layout(cfg);
    CHECK(layout.used_keys.empty());
    CHECK(layout.next_free == 0);
}

TEST_CASE("non-inferable keys are counted as coverage warnings")
{
    Prog p;
    p.push(4).op("CALLDATALOAD").op("SLOAD").stop(); // key straight from calldata
    StorageLayout layout = infer_storage_layout(cfg_of(p.assemble()));
    CHECK(layout.opaque_key_ops == 1);
    CHECK(layout.used_keys.empty());
}

TEST_CASE("owner variable: a caller-only store is found")
{
    Prog p;
    p.op("CALLER").push(0).op("SSTORE").stop();
    CHECK(find_owner_variable(cfg_of(p.assemble())) == Word(0));
}

TEST_CASE("owner variable: masked caller still counts")
{
    Prog p;
    p.op("CALLER").push((Word(1) << 160) - 1, 20).op("AND").push(2).op("SSTORE").stop();
    CHECK(find_owner_variable(cfg_of(p.assemble())) == Word(2));
}

TEST_CASE("owner variable: absent when never stored or contaminated")
{
    Prog p;
    p.push(7).push(0).op("SSTORE").stop();
    CHECK(!find_owner_variable(cfg_of(p.assemble())));

    // CALLER xor'd with calldata is not solely caller-derived.
    Prog q;
    q.op("CALLER").push(4).op("CALLDATALOAD").op("XOR").push(0).op("SSTORE").stop();
    CHECK(!find_owner_variable(cfg_of(q.assemble())));
}

TEST_CASE("shared state writes across functions")
{
    Prog p;
    p.selector();
    p.dispatch(0x11111111, "withdraw").dispatch(0x22222222, "setter")
        .dispatch(0x33333333, "unrelated").stop();
    // withdraw: reads slot 5, makes the vulnerable call, zeroes slot 5.
    p.label("withdraw").op("POP");
    p.push(5).op("SLOAD");
    p.call_prologue().op("DUP5").op("CALLER").op("GAS").mark("call").op("CALL").op("POP");
    p.push(0).push(5).mark("w_store").op("SSTORE").stop();
    // setter also writes slot 5.
    p.label("setter").op("POP").push(1).push(5).mark("s_store").op("SSTORE").stop();
    // unrelated writes slot 9 only.
    p.label("unrelated").op("POP").push(1).push(9).mark("u_store").op("SSTORE").stop();
    Bytes code = p.assemble();
    ControlFlowGraph cfg = cfg_of(code);

    std::set<uint64_t> writes = find_shared_state_writes(cfg, p.at("call"));
    CHECK(writes.count(p.at("w_store")) == 1);
    CHECK(writes.count(p.at("s_store")) == 1);
    CHECK(writes.count(p.at("u_store")) == 0);

    // The same-function store sits on the locked call path.
    std::set<uint64_t> locked = sstores_on_paths_through(cfg, p.at("call"));
    CHECK(locked.count(p.at("w_store")) == 1);
    CHECK(locked.count(p.at("s_store")) == 0);

    CHECK_THROWS_AS(find_shared_state_writes(cfg, p.at("w_store")), LocationError);
}

TEST_CASE("call touching no storage shares nothing")
{
    Prog p;
    p.call_prologue().push(0).op("CALLER").op("GAS").mark("call").op("CALL").op("POP").stop();
    ControlFlowGraph cfg = cfg_of(p.assemble());
    CHECK(find_shared_state_writes(cfg, p.at("call")).empty());
}

TEST_CASE("mask at 0x9c and AND at 0xa1 reach the ADD at 0xa6")
{
    // Classic layout: the 4-byte mask push lands at 0x9c, the AND at 0xa1,
    // and the vulnerable ADD at 0xa6; the taint introduced at the first two
    // addresses must arrive at the third.
    Prog p;
    p.push(4).op("CALLDATALOAD");
    p.pad_to(0x9c);
    p.mark("mask_push").push(0xffffffff, 4); // 0x9c
    p.mark("and_op").op("AND");              // 0xa1
    p.push(Word(0), 1);                      // 0xa2
    p.op("SLOAD");                           // 0xa4
    p.op("SWAP1");                           // 0xa5
    p.mark("bug").op("ADD");                 // 0xa6
    p.push(0).op("SSTORE").stop();

    REQUIRE(p.at("mask_push") == 0x9c);
    REQUIRE(p.at("and_op") == 0xa1);
    REQUIRE(p.at("bug") == 0xa6);

    ControlFlowGraph cfg = cfg_of(p.assemble());
    InstrPath path = path_to_root(cfg, 0xa6);
    CHECK(path.back()->original_address == 0xa6);
    // 0x9c and 0xa1 appear on the path, in order, before the bug.
    std::vector<uint64_t> addrs;
    for (const Instruction* ins : path)
        addrs.push_back(ins->original_address);
    auto mask_it = std::find(addrs.begin(), addrs.end(), 0x9c);
    auto and_it = std::find(addrs.begin(), addrs.end(), 0xa1);
    REQUIRE(mask_it != addrs.end());
    REQUIRE(and_it != addrs.end());
    CHECK(mask_it < and_it);

    PathTaint taint = run_path(path, taint_push_and_masks());
    const auto* operands = taint.last_operands(0xa6);
    REQUIRE(operands);
    std::set<TaintSource> sources;
    for (const TaintedValue& v : *operands)
        sources.insert(v.sources.begin(), v.sources.end());
    CHECK(sources.count(TaintSource{0x9c, OP_PUSH4}) == 1);
    CHECK(sources.count(TaintSource{0xa1, OP_AND}) == 1);

    CHECK(infer_integer_type(cfg, 0xa6) == IntegerType{32, false});
}
