// Command-line driver for the verification suite: builds the subspace and
// split-pair posets over F_q^n, runs the requested check, and emits a
// machine-readable report document. Exit status is nonzero iff any check
// fails.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "steinberg/checks.hpp"

using steinberg::CheckReport;
using steinberg::RunConfig;
using steinberg::RunDocument;
using json = nlohmann::json;

namespace {

steinberg::Subspace load_subspace_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CLI::ValidationError("cannot open subspace file: " + path);
    return steinberg::parse_subspace(in);
}

std::string param_summary(const json& params) {
    std::string out;
    for (auto it = params.begin(); it != params.end(); ++it) {
        if (!out.empty()) out += ' ';
        out += it.key() + "=" +
               (it.value().is_string() ? it.value().get<std::string>() : it.value().dump());
    }
    return out;
}

void print_report_line(std::ostream& os, const CheckReport& r) {
    os << (r.pass ? "[PASS] " : (r.partial ? "[PART] " : "[FAIL] ")) << r.check << ' '
       << param_summary(r.params) << " (" << r.wall_ms << " ms";
    if (r.cache_hits) os << ", " << r.cache_hits << " cache hits";
    os << ")\n";
    for (const auto& w : r.witnesses) os << "       witness: " << w << '\n';
}

void emit_document(const json& doc, const std::string& out_path, bool human,
                   const std::vector<CheckReport>& reports) {
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out) throw CLI::ValidationError("cannot open output file: " + out_path);
        out << doc.dump(2) << '\n';
        if (human)
            for (const auto& r : reports) print_report_line(std::cout, r);
    } else {
        std::cout << doc.dump(2) << '\n';
        if (human)
            for (const auto& r : reports) print_report_line(std::cerr, r);
    }
}

int run_report_merge(const std::vector<std::string>& inputs, const std::string& out_path) {
    json runs = json::array();
    bool all_pass = true;
    struct Row {
        std::string check;
        std::string key;
        int instances = 0;
        int failed = 0;
        double ms = 0;
    };
    std::map<std::string, Row> table;
    for (const auto& path : inputs) {
        std::ifstream in(path);
        if (!in) throw CLI::ValidationError("cannot open report file: " + path);
        json doc;
        in >> doc;
        runs.push_back(doc);
        for (const auto& rep : doc.at("reports")) {
            const json& p = rep.at("params");
            std::string key = rep.at("check").get<std::string>() + " q=" +
                              p.value("q", json(0)).dump() + " n=" + p.value("n", json(0)).dump();
            if (p.contains("k")) key += " k=" + p["k"].dump();
            Row& row = table[key];
            row.key = key;
            ++row.instances;
            row.ms += rep.value("wall_ms", 0.0);
            if (!rep.at("pass").get<bool>()) {
                ++row.failed;
                all_pass = false;
            }
        }
    }
    json merged{{"tool", "steinberg-verify"},
                {"format_version", steinberg::kCacheFormatVersion},
                {"runs", runs},
                {"pass", all_pass}};
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out) throw CLI::ValidationError("cannot open output file: " + out_path);
        out << merged.dump(2) << '\n';
    }
    std::cout << "check/instance                                    runs  failed  total ms\n";
    for (const auto& [key, row] : table) {
        std::string status = row.failed ? "FAIL" : "pass";
        std::printf("%-48s %5d %7d %10.1f  %s\n", key.c_str(), row.instances, row.failed,
                    row.ms, status.c_str());
    }
    if (out_path.empty()) std::cout << merged.dump(2) << '\n';
    return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact verification of building sphericity and the split-to-plain "
                 "Steinberg surjection over small prime fields"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string out_path, v_file, k_file;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--q", cfg.q, "prime field order")->required();
        sub->add_option("--n", cfg.n, "ambient dimension")->required();
        sub->add_option("--cache", cfg.cache_dir, "cache directory for homology results");
        sub->add_option("--out", out_path, "write the report document to this file");
        sub->add_flag("--modular-check,!--no-modular-check", cfg.modular_check,
                      "cross-check integer ranks modulo a random 62-bit prime (default on)");
        sub->add_option("--max-seconds", cfg.max_seconds,
                        "soft wall-clock cap; later instances report partial");
        sub->add_option("--max-mb", cfg.max_mb, "soft resident-memory cap");
        sub->add_option("--jobs", cfg.jobs, "worker threads for independent instances");
        sub->add_flag("--cm", cfg.cm, "run the full Cohen-Macaulay link verification");
        sub->add_option("--rank-v", cfg.rank_v, "restrict to one V rank");
        sub->add_option("--rank-k", cfg.rank_k, "restrict to one K corank");
        sub->add_option("--v-file", v_file, "explicit V basis file (format: 'q n k' + rows)");
        sub->add_option("--k-file", k_file, "explicit K basis file (format: 'q n k' + rows)");
        sub->add_flag("--all", cfg.all_subspaces,
                      "check every subspace instead of one representative per rank");
        sub->add_flag("--sweep-lh", cfg.sweep_lh,
                      "sweep every admissible (L, H) choice in the filtration");
    };

    for (const char* verb : {"solomon-tits", "charney", "theorem31", "corollary32",
                             "surjectivity", "morse"})
        add_common(app.add_subcommand(verb));

    std::vector<std::string> report_inputs;
    CLI::App* report = app.add_subcommand("report", "merge report documents into one");
    report->add_option("inputs", report_inputs, "report JSON files")->required();
    report->add_option("--out", out_path, "write the merged document to this file");

    CLI11_PARSE(app, argc, argv);

    try {
        CLI::App* sub = app.get_subcommands().front();
        const std::string verb = sub->get_name();
        if (verb == "report") return run_report_merge(report_inputs, out_path);

        if (!v_file.empty()) cfg.v_explicit = load_subspace_file(v_file);
        if (!k_file.empty()) cfg.k_explicit = load_subspace_file(k_file);

        RunDocument doc = steinberg::run_document(verb, cfg);
        emit_document(doc.to_json(), out_path, true, doc.reports);
        return doc.pass() ? 0 : 1;
    } catch (const CLI::Error& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
