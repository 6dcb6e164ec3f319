// bytemend: context-aware EVM bytecode patching toolkit
// Copyright 2026 The bytemend Authors.
// SPDX-License-Identifier: Apache-2.0
#include <bytemend/differential.hpp>

#include <bytemend/errors.hpp>

#include <nlohmann/json.hpp>

#include <algorithm>

namespace bytemend {

namespace {

Word parse_word(const nlohmann::json& v, const char* what)
{
    if (v.is_number_unsigned())
        return Word(v.get<uint64_t>());
    if (v.is_string()) {
        std::string s = v.get<std::string>();
        try {
            if (s.starts_with("0x") || s.starts_with("0X")) {
                std::string hex = s.substr(2);
                if (hex.size() % 2 != 0)
                    hex.insert(hex.begin(), '0');
                return word_from_bytes(bytes_from_hex(hex));
            }
            return Word(s); // decimal
        } catch (...) {
            throw Error(std::string("cannot parse ") + what + ": " + s);
        }
    }
    throw Error(std::string(what) + " must be a number or hex string");
}

} // namespace

Scenario load_scenario(const nlohmann::json& doc)
{
    if (!doc.is_object() || !doc.contains("transactions"))
        throw Error("scenario must be an object with a \"transactions\" array");

    Scenario scenario;
    scenario.contract_address =
        doc.contains("contract") ? parse_word(doc["contract"], "contract")
                                 : word_from_bytes(bytes_from_hex("c0de00000000000000000000"
                                                                  "0000000000000001"));
    scenario.deployer = doc.contains("deployer") ? parse_word(doc["deployer"], "deployer")
                                                 : Word(0xd0d0);
    if (doc.contains("deploy_value"))
        scenario.deploy_value = parse_word(doc["deploy_value"], "deploy_value");

    for (const auto& item : doc.value("accounts", nlohmann::json::array())) {
        ScenarioAccount account;
        account.address = parse_word(item.at("address"), "account address");
        if (item.contains("balance"))
            account.balance = parse_word(item["balance"], "balance");
        if (item.contains("code"))
            account.code = bytes_from_hex(item["code"].get<std::string>());
        scenario.accounts.push_back(std::move(account));
    }

    for (const auto& item : doc["transactions"]) {
        Transaction tx;
        tx.from = parse_word(item.at("from"), "from");
        tx.to = item.contains("to") ? parse_word(item["to"], "to") : scenario.contract_address;
        if (item.contains("value"))
            tx.value = parse_word(item["value"], "value");
        if (item.contains("data"))
            tx.data = bytes_from_hex(item["data"].get<std::string>());
        tx.gas_limit = item.value("gas_limit", uint64_t{1'000'000});
        if (item.contains("origin"))
            tx.origin = parse_word(item["origin"], "origin");
        std::string label = item.value("label", "benign");
        if (label != "benign" && label != "attack")
            throw Error("transaction label must be \"benign\" or \"attack\", got " + label);
        scenario.labels.push_back(label == "attack" ? TxLabel::attack : TxLabel::benign);
        scenario.transactions.push_back(std::move(tx));
    }
    return scenario;
}

nlohmann::json scenario_to_json(const Scenario& scenario)
{
    nlohmann::ordered_json doc;
    doc["contract"] = to_hex(scenario.contract_address);
    doc["deployer"] = to_hex(scenario.deployer);
    if (scenario.deploy_value != 0)
        doc["deploy_value"] = to_hex(scenario.deploy_value);
    auto accounts = nlohmann::ordered_json::array();
    for (const ScenarioAccount& account : scenario.accounts) {
        nlohmann::ordered_json item;
        item["address"] = to_hex(account.address);
        item["balance"] = to_hex(account.balance);
        if (!account.code.empty())
            item["code"] = "0x" + to_hex(account.code);
        accounts.push_back(std::move(item));
    }
    doc["accounts"] = std::move(accounts);
    auto txs = nlohmann::ordered_json::array();
    for (size_t i = 0; i < scenario.transactions.size(); ++i) {
        const Transaction& tx = scenario.transactions[i];
        nlohmann::ordered_json item;
        item["from"] = to_hex(tx.from);
        item["to"] = to_hex(tx.to);
        item["value"] = to_hex(tx.value);
        item["data"] = "0x" + to_hex(tx.data);
        item["gas_limit"] = tx.gas_limit;
        item["label"] = scenario.labels[i] == TxLabel::attack ? "attack" : "benign";
        txs.push_back(std::move(item));
    }
    doc["transactions"] = std::move(txs);
    return doc;
}

namespace {

WorldState make_world(ByteView code, const Scenario& scenario)
{
    WorldState world;
    world.account(scenario.deployer).balance = Word(1) << 127;
    for (const ScenarioAccount& account : scenario.accounts) {
        world.account(account.address).balance = account.balance;
        world.account(account.address).code = account.code;
    }
    deploy(world, code, scenario.deployer, scenario.deploy_value, scenario.contract_address);
    return world;
}

using Delta = std::map<std::pair<Word, Word>, Word>;

Delta filter_delta(const Delta& delta, const Word& contract, std::span<const Word> allow_slots)
{
    Delta out;
    for (const auto& [location, value] : delta) {
        bool allowed = location.first == contract &&
                       std::find(allow_slots.begin(), allow_slots.end(), location.second) !=
                           allow_slots.end();
        if (!allowed)
            out.insert({location, value});
    }
    return out;
}

} // namespace

DifferentialVerdict differential_run(ByteView original, ByteView patched,
                                     const Scenario& scenario, std::span<const Word> allow_slots)
{
    DifferentialVerdict verdict;
    verdict.code_size_delta =
        static_cast<int64_t>(patched.size()) - static_cast<int64_t>(original.size());

    WorldState world_original = make_world(original, scenario);
    WorldState world_patched = make_world(patched, scenario);

    for (size_t i = 0; i < scenario.transactions.size(); ++i) {
        const Transaction& tx = scenario.transactions[i];
        TxLabel label = scenario.labels[i];

        // Keep pre-state copies for the raised-gas replay on divergence.
        WorldState pre_original = world_original;
        WorldState pre_patched = world_patched;

        ExecutionResult ro = execute(world_original, tx);
        ExecutionResult rp = execute(world_patched, tx);

        TxVerdict tv;
        tv.label = label;
        tv.original_status = ro.status;
        tv.patched_status = rp.status;

        if (label == TxLabel::attack) {
            tv.ok = rp.status == ExecStatus::revert;
            tv.detail = tv.ok ? "attack reverted on patched code"
                              : "attack not blocked (patched status " +
                                    std::string(to_string(rp.status)) + ")";
        } else {
            tv.gas_delta =
                static_cast<int64_t>(rp.gas_used) - static_cast<int64_t>(ro.gas_used);
            bool status_ok = ro.status == rp.status;
            bool data_ok = ro.return_data == rp.return_data;
            bool logs_ok = ro.logs == rp.logs;
            bool storage_ok =
                filter_delta(ro.storage_delta, scenario.contract_address, allow_slots) ==
                filter_delta(rp.storage_delta, scenario.contract_address, allow_slots);
            tv.ok = status_ok && data_ok && logs_ok && storage_ok;
            if (!tv.ok) {
                tv.detail = std::string("mismatch:") + (status_ok ? "" : " status") +
                            (data_ok ? "" : " return_data") + (logs_ok ? "" : " logs") +
                            (storage_ok ? "" : " storage");
                // Distinguish gas starvation from semantic divergence.
                Transaction roomy = tx;
                roomy.gas_limit = tx.gas_limit + tx.gas_limit / 4;
                WorldState wo = pre_original;
                WorldState wp = pre_patched;
                ExecutionResult ro2 = execute(wo, roomy);
                ExecutionResult rp2 = execute(wp, roomy);
                tv.gas_induced =
                    ro2.status == rp2.status && ro2.return_data == rp2.return_data &&
                    ro2.logs == rp2.logs &&
                    filter_delta(ro2.storage_delta, scenario.contract_address, allow_slots) ==
                        filter_delta(rp2.storage_delta, scenario.contract_address, allow_slots);
                if (tv.gas_induced)
                    tv.detail += " (disappears with 1.25x gas limit)";
            }
        }

        if (label == TxLabel::attack)
            verdict.all_attacks_blocked &= tv.ok;
        else
            verdict.all_benign_match &= tv.ok;
        verdict.transactions.push_back(std::move(tv));
    }
    return verdict;
}

} // namespace bytemend
