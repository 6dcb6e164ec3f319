// bytemend: context-aware EVM bytecode patching toolkit
// Copyright 2026 The bytemend Authors.
// SPDX-License-Identifier: Apache-2.0
#include <bytemend/templates.hpp>

#include <bytemend/errors.hpp>

#include <nlohmann/json.hpp>

#include <algorithm>
#include <charconv>
#include <sstream>

namespace bytemend {

PatchClass patch_class_of(Vulnerability v)
{
    switch (v) {
    case Vulnerability::reentrancy:
        return PatchClass::reentrancy;
    case Vulnerability::tx_origin:
        return PatchClass::tx_origin;
    case Vulnerability::suicidal:
    case Vulnerability::leaking:
    case Vulnerability::unsafe_delegatecall:
        return PatchClass::access_control;
    case Vulnerability::overflow_add:
        return PatchClass::overflow_add;
    case Vulnerability::overflow_mul:
        return PatchClass::overflow_mul;
    case Vulnerability::underflow_sub:
        return PatchClass::underflow_sub;
    case Vulnerability::unhandled_exception:
        return PatchClass::unhandled_exception;
    }
    throw Error("unknown vulnerability");
}

namespace {

constexpr std::pair<std::string_view, Vulnerability> kVulnNames[] = {
    {"reentrancy", Vulnerability::reentrancy},
    {"tx_origin", Vulnerability::tx_origin},
    {"suicidal", Vulnerability::suicidal},
    {"leaking", Vulnerability::leaking},
    {"unsafe_delegatecall", Vulnerability::unsafe_delegatecall},
    {"overflow_add", Vulnerability::overflow_add},
    {"overflow_mul", Vulnerability::overflow_mul},
    {"underflow_sub", Vulnerability::underflow_sub},
    {"unhandled_exception", Vulnerability::unhandled_exception},
};

constexpr std::pair<std::string_view, PatchClass> kClassNames[] = {
    {"reentrancy", PatchClass::reentrancy},
    {"tx_origin", PatchClass::tx_origin},
    {"access_control", PatchClass::access_control},
    {"overflow_add", PatchClass::overflow_add},
    {"overflow_mul", PatchClass::overflow_mul},
    {"underflow_sub", PatchClass::underflow_sub},
    {"unhandled_exception", PatchClass::unhandled_exception},
};

} // namespace

std::string_view to_string(Vulnerability v)
{
    for (const auto& [name, value] : kVulnNames)
        if (value == v)
            return name;
    return "?";
}

std::string_view to_string(PatchClass c)
{
    for (const auto& [name, value] : kClassNames)
        if (value == c)
            return name;
    return "?";
}

std::optional<Vulnerability> vulnerability_from_string(std::string_view name)
{
    for (const auto& [n, value] : kVulnNames)
        if (n == name)
            return value;
    return std::nullopt;
}

std::optional<PatchClass> patch_class_from_string(std::string_view name)
{
    for (const auto& [n, value] : kClassNames)
        if (n == name)
            return value;
    return std::nullopt;
}

namespace {

TemplateToken parse_token(std::string_view text)
{
    TemplateToken tok;
    if (text == "free_storage_location") {
        tok.kind = TemplateToken::Kind::free_storage;
        return tok;
    }
    if (text == "integer_bounds") {
        tok.kind = TemplateToken::Kind::integer_bounds;
        return tok;
    }
    auto parse_label = [&](std::string_view prefix,
                           TemplateToken::Kind kind) -> std::optional<TemplateToken> {
        if (!text.starts_with(prefix))
            return std::nullopt;
        std::string_view num = text.substr(prefix.size());
        int label = 0;
        auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), label);
        if (ec != std::errc{} || ptr != num.data() + num.size() || label < 0)
            throw TemplateError("malformed jump label token: " + std::string(text));
        TemplateToken t;
        t.kind = kind;
        t.label = label;
        return t;
    };
    if (auto t = parse_label("PUSH_jump_loc_", TemplateToken::Kind::push_label))
        return *t;
    if (auto t = parse_label("JUMPDEST_jump_loc_", TemplateToken::Kind::label_def))
        return *t;

    // PUSHn_0x<hex> literal.
    if (text.starts_with("PUSH")) {
        size_t sep = text.find('_');
        if (sep != std::string_view::npos) {
            std::string_view mnemonic = text.substr(0, sep);
            std::string_view value = text.substr(sep + 1);
            auto op = opcode_by_mnemonic(mnemonic);
            if (!op || !is_push(*op))
                throw TemplateError("unknown token: " + std::string(text));
            if (!value.starts_with("0x"))
                throw TemplateError("PUSH literal must use 0x hex: " + std::string(text));
            std::string hex(value.substr(2));
            if (hex.empty() || hex.size() > 2 * size_t(push_width(*op)))
                throw TemplateError("PUSH literal width mismatch: " + std::string(text));
            if (hex.size() % 2 != 0)
                hex.insert(hex.begin(), '0');
            Bytes raw = bytes_from_hex(hex);
            tok.kind = TemplateToken::Kind::push_imm;
            tok.opcode = *op;
            tok.immediate = word_to_bytes(word_from_bytes(raw), push_width(*op));
            return tok;
        }
    }

    auto op = opcode_by_mnemonic(text);
    if (!op)
        throw TemplateError("unknown token: " + std::string(text));
    if (is_push(*op))
        throw TemplateError("bare PUSH needs a literal (PUSHn_0x..): " + std::string(text));
    tok.kind = TemplateToken::Kind::opcode;
    tok.opcode = *op;
    return tok;
}

std::vector<TemplateToken> parse_token_list(const std::string& text, bool delete_list)
{
    std::vector<TemplateToken> tokens;
    std::istringstream in(text);
    std::string word;
    while (in >> word) {
        TemplateToken tok = parse_token(word);
        if (delete_list && tok.kind != TemplateToken::Kind::opcode)
            throw TemplateError("delete sequence allows plain mnemonics only: " + word);
        tokens.push_back(std::move(tok));
    }
    return tokens;
}

void validate_labels(const std::vector<TemplateToken>& tokens)
{
    std::map<int, int> pushes;
    std::map<int, int> defs;
    for (const TemplateToken& t : tokens) {
        if (t.kind == TemplateToken::Kind::push_label)
            pushes[t.label]++;
        if (t.kind == TemplateToken::Kind::label_def)
            defs[t.label]++;
    }
    for (const auto& entry : pushes)
        if (defs[entry.first] != 1)
            throw TemplateError("PUSH_jump_loc_" + std::to_string(entry.first) +
                                " needs exactly one matching JUMPDEST_jump_loc_" +
                                std::to_string(entry.first));
    for (const auto& entry : defs) {
        if (entry.second != 1)
            throw TemplateError("duplicate JUMPDEST_jump_loc_" + std::to_string(entry.first));
        if (!pushes.count(entry.first))
            throw TemplateError("JUMPDEST_jump_loc_" + std::to_string(entry.first) +
                                " has no matching PUSH_jump_loc_" + std::to_string(entry.first));
    }
}

std::string token_to_text(const TemplateToken& t)
{
    switch (t.kind) {
    case TemplateToken::Kind::opcode:
        return std::string(opcode_info(t.opcode).mnemonic);
    case TemplateToken::Kind::push_imm: {
        // Minimal hex form, matching the catalog's notation (PUSH1_0x1).
        Word v = word_from_bytes(t.immediate);
        std::string hex = to_hex(v); // 0x-prefixed minimal
        return std::string(opcode_info(t.opcode).mnemonic) + "_" + hex;
    }
    case TemplateToken::Kind::free_storage:
        return "free_storage_location";
    case TemplateToken::Kind::integer_bounds:
        return "integer_bounds";
    case TemplateToken::Kind::push_label:
        return "PUSH_jump_loc_" + std::to_string(t.label);
    case TemplateToken::Kind::label_def:
        return "JUMPDEST_jump_loc_" + std::to_string(t.label);
    }
    return {};
}

} // namespace

PatchTemplate parse_template(const nlohmann::json& record)
{
    if (!record.is_object())
        throw TemplateError("template record must be a JSON object");
    PatchTemplate tmpl;
    tmpl.del = parse_token_list(record.value("delete", std::string{}), true);
    tmpl.ins = parse_token_list(record.value("insert", std::string{}), false);
    std::string mode = record.value("insert_mode", "before");
    if (mode == "before")
        tmpl.mode = InsertMode::before;
    else if (mode == "after")
        tmpl.mode = InsertMode::after;
    else
        throw TemplateError("insert_mode must be \"before\" or \"after\", got \"" + mode + "\"");
    tmpl.constructor_patch = record.value("constructor", false);
    validate_labels(tmpl.ins);
    return tmpl;
}

nlohmann::json serialize_template(const PatchTemplate& tmpl)
{
    auto join = [](const std::vector<TemplateToken>& tokens) {
        std::string text;
        for (const TemplateToken& t : tokens) {
            if (!text.empty())
                text += ' ';
            text += token_to_text(t);
        }
        return text;
    };
    nlohmann::ordered_json record;
    record["delete"] = join(tmpl.del);
    record["insert"] = join(tmpl.ins);
    record["insert_mode"] = tmpl.mode == InsertMode::before ? "before" : "after";
    record["constructor"] = tmpl.constructor_patch;
    return record;
}

namespace {

PatchTemplate make_template(const char* del, const char* ins, InsertMode mode, bool ctor)
{
    nlohmann::json record{{"delete", del},
                          {"insert", ins},
                          {"insert_mode", mode == InsertMode::before ? "before" : "after"},
                          {"constructor", ctor}};
    return parse_template(record);
}

std::map<PatchClass, std::vector<PatchTemplate>> make_catalog()
{
    std::map<PatchClass, std::vector<PatchTemplate>> catalog;

    catalog[PatchClass::reentrancy] = {
        // Revert while the lock is taken, then take it.
        make_template("",
                      "free_storage_location SLOAD PUSH1_0x1 EQ ISZERO PUSH_jump_loc_1 JUMPI "
                      "PUSH1_0x1 DUP1 REVERT JUMPDEST_jump_loc_1 PUSH1_0x1 free_storage_location "
                      "SSTORE",
                      InsertMode::before, false),
        // Release the lock once the call returned.
        make_template("", "PUSH1_0x0 free_storage_location SSTORE", InsertMode::after, false),
    };

    catalog[PatchClass::tx_origin] = {
        make_template("ORIGIN", "CALLER", InsertMode::before, false),
    };

    catalog[PatchClass::access_control] = {
        // Record the deployer in the constructor...
        make_template("", "CALLER free_storage_location SSTORE", InsertMode::after, true),
        // ...and admit only that address at the guarded instruction.
        make_template("",
                      "free_storage_location SLOAD "
                      "PUSH20_0xffffffffffffffffffffffffffffffffffffffff AND CALLER EQ "
                      "PUSH_jump_loc_1 JUMPI PUSH1_0x1 DUP1 REVERT JUMPDEST_jump_loc_1",
                      InsertMode::before, false),
    };

    catalog[PatchClass::overflow_add] = {
        make_template("",
                      "DUP2 DUP2 integer_bounds SUB LT ISZERO PUSH_jump_loc_1 JUMPI PUSH1_0x1 "
                      "DUP1 REVERT JUMPDEST_jump_loc_1",
                      InsertMode::before, false),
    };

    catalog[PatchClass::overflow_mul] = {
        // Masked product divided by the multiplier must give back the
        // multiplicand; a zero multiplier skips the division check.
        make_template("",
                      "DUP2 DUP2 MUL integer_bounds AND DUP3 ISZERO DUP1 PUSH_jump_loc_1 JUMPI "
                      "POP DUP3 SWAP1 DIV DUP2 EQ DUP1 JUMPDEST_jump_loc_1 SWAP1 POP "
                      "PUSH_jump_loc_2 JUMPI PUSH1_0x1 DUP1 REVERT JUMPDEST_jump_loc_2",
                      InsertMode::before, false),
    };

    catalog[PatchClass::underflow_sub] = {
        make_template("",
                      "DUP2 DUP2 LT ISZERO PUSH_jump_loc_1 JUMPI PUSH1_0x1 DUP1 REVERT "
                      "JUMPDEST_jump_loc_1",
                      InsertMode::before, false),
    };

    catalog[PatchClass::unhandled_exception] = {
        make_template("",
                      "DUP1 ISZERO ISZERO PUSH_jump_loc_1 JUMPI PUSH1_0x1 DUP1 REVERT "
                      "JUMPDEST_jump_loc_1",
                      InsertMode::after, false),
    };

    return catalog;
}

} // namespace

const std::map<PatchClass, std::vector<PatchTemplate>>& builtin_catalog()
{
    static const auto catalog = make_catalog();
    return catalog;
}

std::map<PatchClass, std::vector<PatchTemplate>>
catalog_with_overrides(const nlohmann::json& user_templates)
{
    auto catalog = builtin_catalog();
    if (!user_templates.is_object())
        throw TemplateError("user template file must map class names to record lists");
    for (const auto& [name, records] : user_templates.items()) {
        auto cls = patch_class_from_string(name);
        if (!cls)
            throw TemplateError("unknown patch class in template file: " + name);
        if (!records.is_array())
            throw TemplateError("templates for " + name + " must be an array");
        std::vector<PatchTemplate> parsed;
        for (const auto& record : records)
            parsed.push_back(parse_template(record));
        catalog[*cls] = std::move(parsed);
    }
    return catalog;
}

size_t InstantiatedPatch::insert_byte_size() const
{
    size_t n = 0;
    for (const Instruction& ins : insert_instructions)
        n += ins.byte_size();
    return n;
}

InstantiatedPatch instantiate(const PatchTemplate& tmpl, const PatchContext& ctx,
                              uint64_t anchor_pc, PatchClass vuln)
{
    InstantiatedPatch patch;
    patch.delete_count = tmpl.del.size();
    patch.mode = tmpl.mode;
    patch.constructor_patch = tmpl.constructor_patch;
    patch.anchor_pc = anchor_pc;
    patch.vulnerability = vuln;

    int max_label = 0;
    auto make_push = [&](const Word& value) {
        Instruction ins;
        Bytes imm = word_to_minimal_bytes(value);
        ins.opcode = push_opcode(imm.size());
        ins.immediate = std::move(imm);
        return ins;
    };

    for (const TemplateToken& tok : tmpl.ins) {
        Instruction ins;
        switch (tok.kind) {
        case TemplateToken::Kind::opcode:
            ins.opcode = tok.opcode;
            break;
        case TemplateToken::Kind::push_imm:
            ins.opcode = tok.opcode;
            ins.immediate = tok.immediate;
            break;
        case TemplateToken::Kind::free_storage:
            ins = make_push(ctx.free_storage_key);
            break;
        case TemplateToken::Kind::integer_bounds:
            if (!ctx.integer_bounds)
                throw ContextError("template references integer_bounds but none was inferred");
            ins = make_push(*ctx.integer_bounds);
            break;
        case TemplateToken::Kind::push_label:
            // Width is provisional; the rewriter widens it if the final
            // address does not fit.
            ins.opcode = OP_PUSH1;
            ins.immediate = Bytes{0};
            ins.push_label = ctx.base_label_counter + tok.label;
            max_label = std::max(max_label, tok.label);
            break;
        case TemplateToken::Kind::label_def:
            ins.opcode = OP_JUMPDEST;
            ins.dest_label = ctx.base_label_counter + tok.label;
            max_label = std::max(max_label, tok.label);
            break;
        }
        ins.inserted = true;
        ins.original_address = anchor_pc;
        patch.insert_instructions.push_back(std::move(ins));
    }
    patch.labels_used = max_label;
    return patch;
}

int net_stack_effect(const PatchTemplate& tmpl)
{
    // Walk every route through the insert sequence; JUMPI forks to its label
    // and to the fall-through. Routes ending in REVERT/INVALID are failure
    // exits and do not count.
    std::map<int, size_t> label_pos;
    for (size_t i = 0; i < tmpl.ins.size(); ++i)
        if (tmpl.ins[i].kind == TemplateToken::Kind::label_def)
            label_pos[tmpl.ins[i].label] = i;

    std::optional<int> net;
    auto walk = [&](auto&& self, size_t pos, int depth, int pending_label, int fuel) -> void {
        if (fuel <= 0)
            throw TemplateError("net stack effect check did not terminate (backward jumps?)");
        for (size_t i = pos; i < tmpl.ins.size(); ++i) {
            const TemplateToken& tok = tmpl.ins[i];
            uint8_t op = 0;
            switch (tok.kind) {
            case TemplateToken::Kind::opcode:
            case TemplateToken::Kind::push_imm:
                op = tok.opcode;
                break;
            case TemplateToken::Kind::free_storage:
            case TemplateToken::Kind::integer_bounds:
            case TemplateToken::Kind::push_label:
                op = OP_PUSH1;
                break;
            case TemplateToken::Kind::label_def:
                op = OP_JUMPDEST;
                break;
            }
            if (tok.kind == TemplateToken::Kind::push_label)
                pending_label = tok.label;
            if (op == OP_REVERT || op == OP_INVALID)
                return; // failure exit
            const OpcodeInfo& info = opcode_info(op);
            depth -= info.stack_pops;
            depth += info.stack_pushes;
            if (op == OP_JUMPI && pending_label >= 0) {
                self(self, label_pos.at(pending_label), depth, -1, fuel - 1); // taken branch
                pending_label = -1;
                // fall through continues the loop
            } else if (op == OP_JUMP && pending_label >= 0) {
                self(self, label_pos.at(pending_label), depth, -1, fuel - 1);
                return;
            }
        }
        if (net && *net != depth)
            throw TemplateError("insert sequence routes disagree on stack effect (" +
                                std::to_string(*net) + " vs " + std::to_string(depth) + ")");
        net = depth;
    };
    walk(walk, 0, 0, -1, 64);

    // A replacement is neutral when the insert restores what the delete took
    // away (tx-origin trades ORIGIN for CALLER).
    int delete_effect = 0;
    for (const TemplateToken& tok : tmpl.del) {
        const OpcodeInfo& info = opcode_info(tok.opcode);
        delete_effect += int(info.stack_pushes) - int(info.stack_pops);
    }
    return net.value_or(0) - delete_effect;
}

} // namespace bytemend
