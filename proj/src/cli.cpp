/*
   Copyright 2026 The Attseq Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include <attseq/cli.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include <attseq/config.hpp>
#include <attseq/gas_model.hpp>
#include <attseq/json_io.hpp>
#include <attseq/metrics.hpp>
#include <attseq/replay.hpp>
#include <attseq/simulation.hpp>
#include <attseq/verifier.hpp>

#ifndef ATTSEQ_SCENARIO_DIR
#define ATTSEQ_SCENARIO_DIR "scenarios"
#endif

namespace fs = std::filesystem;

namespace attseq {

namespace {

    std::optional<std::string> read_file(const fs::path& p) {
        std::ifstream in{p, std::ios::binary};
        if (!in) return std::nullopt;
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    bool write_file(const fs::path& p, std::string_view content) {
        std::ofstream out{p, std::ios::binary | std::ios::trunc};
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        return static_cast<bool>(out);
    }

    // ---- run

    int cmd_run(const std::string& config_path, const std::string& out_dir, const std::vector<std::string>& sets,
                std::ostream& out, std::ostream& err) {
        auto text = read_file(config_path);
        if (!text) {
            err << "error: cannot read config '" << config_path << "'\n";
            return kExitInputError;
        }
        auto parsed = parse_config(*text);
        if (!parsed) {
            err << "invalid config '" << config_path << "':\n" << format_errors(parsed.error());
            return kExitInputError;
        }
        ScenarioConfig cfg = *parsed;
        ConfigErrors errors;
        for (const auto& s : sets) {
            if (auto e = apply_override(cfg, s)) errors.push_back(std::move(*e));
        }
        if (const char* env = std::getenv("SIM_SEED"); env && *env) {
            if (auto e = set_config_field(cfg, "seed", env)) {
                errors.push_back({"SIM_SEED", e->message});
            }
        }
        if (errors.empty()) errors = validate(cfg);
        if (!errors.empty()) {
            err << "invalid config:\n" << format_errors(errors);
            return kExitInputError;
        }

        auto trace = run_scenario(cfg);
        if (!trace) {
            err << "invalid config:\n" << format_errors(trace.error());
            return kExitInputError;
        }
        auto metrics = compute_metrics(*trace);
        auto report = replay(*trace);
        if (!metrics || !report) {
            err << "internal error: generated trace is malformed\n";
            return kExitRejected;
        }

        std::error_code ec;
        fs::create_directories(out_dir, ec);
        std::string ledger;
        for (const auto& e : *trace) {
            if (!e.is_ledger_event()) continue;
            nlohmann::json j{{"block", e.block},     {"event_type", e.event_type}, {"actor", e.actor},
                             {"gas", e.gas},         {"reason", nullptr},          {"payload_hash", e.payload_hash},
                             {"data", e.data}};
            if (e.reason) j["reason"] = *e.reason;
            ledger += j.dump();
            ledger += '\n';
        }
        const fs::path dir{out_dir};
        if (ec || !write_file(dir / "trace.jsonl", write_trace_jsonl(*trace)) ||
            !write_file(dir / "events.jsonl", ledger) ||
            !write_file(dir / "metrics.json", to_json(*metrics).dump(2) + "\n") ||
            !write_file(dir / "metrics.csv", to_csv(*metrics))) {
            err << "error: cannot write outputs to '" << out_dir << "'\n";
            return kExitInputError;
        }

        out << "scenario " << cfg.name << " seed " << cfg.seed << ": " << trace->size() << " events, "
            << metrics->tx_included << "/" << metrics->tx_submitted << " txs included, " << metrics->renewals
            << " renewals, " << metrics->batches_published << " batches, gas " << metrics->gas_total << "\n";
        for (const auto& [reason, n] : metrics->rejections) {
            out << "  rejected " << reason << ": " << n << "\n";
        }
        bool ok = true;
        for (const auto& v : report->verdicts) {
            out << "  invariant " << v.name << ": "
                << (!v.applicable ? "n/a" : v.holds ? "ok" : "VIOLATED at seq " + std::to_string(*v.first_violation_seq) + " (" + v.detail + ")")
                << "\n";
            if (v.applicable && !v.holds) ok = false;
        }
        return ok ? kExitOk : kExitRejected;
    }

    // ---- verify-quote

    int cmd_verify(const std::string& quote_path, const std::string& collateral_path, const std::string& policy_path,
                   std::optional<std::uint64_t> now, std::ostream& out, std::ostream& err) {
        auto quote = read_file(quote_path);
        if (!quote) {
            err << "error: cannot read quote '" << quote_path << "'\n";
            return kExitInputError;
        }
        auto load_json = [&](const std::string& path, const char* what) -> std::optional<nlohmann::json> {
            auto text = read_file(path);
            if (!text) {
                err << "error: cannot read " << what << " '" << path << "'\n";
                return std::nullopt;
            }
            auto j = nlohmann::json::parse(*text, nullptr, false);
            if (j.is_discarded()) {
                err << "error: " << what << " '" << path << "' is not valid JSON\n";
                return std::nullopt;
            }
            return j;
        };
        auto cj = load_json(collateral_path, "collateral");
        if (!cj) return kExitInputError;
        auto pj = load_json(policy_path, "policy");
        if (!pj) return kExitInputError;
        auto collateral = collateral_from_json(*cj);
        if (!collateral) {
            err << "error: collateral: " << collateral.error() << "\n";
            return kExitInputError;
        }
        auto policy = policy_from_json(*pj);
        if (!policy) {
            err << "error: policy: " << policy.error() << "\n";
            return kExitInputError;
        }

        VerificationInputs in;
        in.trust_anchor = policy->trust_anchor;
        in.policy = policy->policy;
        in.routed_versions = policy->routed_versions;
        in.pck_cert = collateral->pck_cert;
        in.crl = collateral->crl;
        in.tcb_info = collateral->tcb_info;
        in.now_s = now ? *now : policy->now_s ? *policy->now_s : static_cast<std::uint64_t>(std::time(nullptr));

        const ByteView bytes{reinterpret_cast<const std::uint8_t*>(quote->data()), quote->size()};
        // Collateral lookups are keyed by what the quote references.
        if (auto parsed = parse_quote(bytes)) {
            if (in.pck_cert && in.pck_cert->serial != parsed->collateral_ref.pck_serial) in.pck_cert.reset();
            if (in.tcb_info && in.tcb_info->fmspc != parsed->collateral_ref.fmspc) in.tcb_info.reset();
        }
        auto verdict = verify_quote(bytes, in);
        if (!verdict) {
            out << "REJECT " << to_string(verdict.error()) << "\n";
            return kExitRejected;
        }
        const Quote& q = *verdict;
        out << "ACCEPT\n"
            << "  version " << to_string(q.header.version) << "\n"
            << "  mrenclave " << to_hex(q.body.mrenclave) << "\n"
            << "  sequencer 0x" << to_hex(address_of(q.metadata.prover_pubkey)) << "\n"
            << "  height " << q.metadata.block_height << "\n"
            << "  nonce " << q.metadata.nonce << "\n"
            << "  timestamp " << q.metadata.timestamp << "\n";
        return kExitOk;
    }

    // ---- gas-table

    int cmd_gas_table(const std::vector<std::uint64_t>& sizes, bool split, std::ostream& out, std::ostream& err) {
        const GasModel model = GasModel::calibrated();
        std::vector<std::uint64_t> rows = sizes;
        if (rows.empty()) {
            for (const auto& p : model.verify_cost_points) rows.push_back(p.quote_size);
        }
        std::ostringstream table;
        table << "size_bytes,gas\n";
        for (auto s : rows) {
            auto g = split ? model.split_verify_gas(s) : model.verify_gas(s);
            if (!g) {
                err << "error: size " << s << " outside " << kMinQuoteSize << ".." << kMaxQuoteSize << "\n";
                return kExitInputError;
            }
            table << s << "," << *g << "\n";
        }
        out << table.str();
        return kExitOk;
    }

    // ---- list-scenarios

    int cmd_list(const std::string& dir, std::ostream& out, std::ostream& err) {
        std::error_code ec;
        std::vector<fs::path> files;
        for (const auto& entry : fs::directory_iterator(dir, ec)) {
            if (entry.path().extension() == ".conf") files.push_back(entry.path());
        }
        if (ec) {
            err << "error: cannot list scenarios in '" << dir << "'\n";
            return kExitInputError;
        }
        std::sort(files.begin(), files.end());
        for (const auto& f : files) {
            std::string summary;
            if (auto text = read_file(f)) {
                std::istringstream lines{*text};
                std::string line;
                if (std::getline(lines, line) && line.rfind("# ", 0) == 0) summary = line.substr(2);
            }
            out << f.stem().string();
            if (!summary.empty()) out << "  " << summary;
            out << "\n";
        }
        return kExitOk;
    }

    std::string default_scenario_dir() {
        if (const char* env = std::getenv("ATTSEQ_SCENARIOS"); env && *env) return env;
        if (fs::is_directory("scenarios")) return "scenarios";
        return ATTSEQ_SCENARIO_DIR;
    }

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"attseq: attested rollup sequencer simulator", "attseq"};
    app.require_subcommand(1);

    std::string config_path, out_dir;
    std::vector<std::string> sets;
    auto* run = app.add_subcommand("run", "Run a scenario and write trace.jsonl, events.jsonl and metrics");
    run->add_option("--config", config_path, "Scenario config file")->required();
    run->add_option("--out", out_dir, "Output directory")->required();
    run->add_option("--set", sets, "Override a config key (key=value)")->take_all();

    std::string quote_path, collateral_path, policy_path;
    std::optional<std::uint64_t> now;
    auto* verify = app.add_subcommand("verify-quote", "Verify a quote against collateral and policy");
    verify->add_option("--quote", quote_path, "Binary quote file")->required();
    verify->add_option("--collateral", collateral_path, "Collateral JSON")->required();
    verify->add_option("--policy", policy_path, "Policy JSON")->required();
    verify->add_option("--now", now, "Evaluation time in unix seconds (default: policy now_s, else wall clock)");

    std::vector<std::uint64_t> sizes;
    bool split = false;
    auto* gas = app.add_subcommand("gas-table", "Print interpolated verification gas per quote size");
    gas->add_option("--sizes", sizes, "Comma-separated sizes in bytes")->delimiter(',');
    gas->add_flag("--split", split, "Charge submissions without verifier registration");

    std::string scenario_dir = default_scenario_dir();
    auto* list = app.add_subcommand("list-scenarios", "List bundled scenarios");
    list->add_option("--dir", scenario_dir, "Scenario directory");

    std::vector<std::string> argv{"attseq"};
    argv.insert(argv.end(), args.begin(), args.end());
    std::vector<const char*> cargv;
    for (const auto& a : argv) cargv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(cargv.size()), cargv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kExitInputError;
    }

    if (run->parsed()) return cmd_run(config_path, out_dir, sets, out, err);
    if (verify->parsed()) return cmd_verify(quote_path, collateral_path, policy_path, now, out, err);
    if (gas->parsed()) return cmd_gas_table(sizes, split, out, err);
    if (list->parsed()) return cmd_list(scenario_dir, out, err);
    err << app.help();
    return kExitInputError;
}

}  // namespace attseq
