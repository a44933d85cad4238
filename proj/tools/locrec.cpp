#include <filesystem>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "locrec/eval.hpp"
#include "locrec/ingest.hpp"
#include "locrec/synthgen.hpp"
#include "locrec/util.hpp"

namespace fs = std::filesystem;
using namespace locrec;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitScenario = 4;

int tz_offset_or_throw(const std::string& tz) {
    auto off = parse_tz_offset(tz);
    if (!off) throw ConfigError("bad timezone spec: " + tz);
    return *off;
}

void cmd_ingest(const std::string& events_path, const std::string& rules_path,
                const std::string& catalog_path, const std::string& out_dir,
                const std::string& tz) {
    TaggingRules rules = TaggingRules::load(rules_path);
    ParsedEvents parsed = parse_events_csv(read_file(events_path));
    if (parsed.total_rows == 0) throw DataError("empty dataset: " + events_path);
    if ((double)parsed.malformed.size() > 0.01 * (double)parsed.total_rows) {
        std::string msg = "too many malformed rows (" +
                          std::to_string(parsed.malformed.size()) + "/" +
                          std::to_string(parsed.total_rows) + "):";
        for (const auto& m : parsed.malformed) msg += "\n  " + m;
        throw DataError(msg);
    }
    for (const auto& m : parsed.malformed)
        std::cerr << "warning: skipped malformed row, " << m << "\n";

    std::vector<CatalogRow> sidecar;
    IngestResult result;
    int off = tz_offset_or_throw(tz);
    if (!catalog_path.empty()) {
        sidecar = parse_catalog_csv(read_file(catalog_path));
        result = ingest(parsed.events, &sidecar, rules, off);
    } else {
        result = ingest(parsed.events, nullptr, rules, off);
    }

    fs::create_directories(out_dir);
    write_file(out_dir + "/sessions.tsv", serialize_sessions(result.sessions));
    write_file(out_dir + "/catalog.tsv", serialize_catalog(result.catalog));
    write_file(out_dir + "/audit.tsv",
               serialize_audit(result.catalog, result.unmatched_audit));

    DatasetStats stats = dataset_stats(result.catalog, result.sessions);
    std::cout << format_stats(stats);
    std::cout << "dropped: " << result.dropped_unresolvable
              << " unresolvable events, " << result.dropped_singletons
              << " singleton sessions\n"
              << "audit: " << result.unmatched_audit.size()
              << " keyword-unmatched articles\n";
}

void cmd_generate(const std::string& config_path, const std::string& out_dir) {
    GeneratorConfig config;
    if (!config_path.empty()) config = GeneratorConfig::load(config_path);
    config.validate();
    SyntheticDataset ds = generate(config);

    fs::create_directories(out_dir);
    write_file(out_dir + "/events.csv", render_events_csv(ds));
    write_file(out_dir + "/catalog.csv", render_catalog_csv(ds));
    write_file(out_dir + "/rules.json", render_rules_json());

    TaggingRules rules;
    rules.local_keywords = {"Syracuse"};
    rules.nonlocal_keywords = {"National"};
    rules.category_map = TaggingRules::default_category_map();
    IngestResult r = ingest(ds.events, &ds.catalog, rules, 0);
    std::cout << format_stats(dataset_stats(r.catalog, r.sessions));
}

std::vector<ScenarioSpec> preset_scenarios(const std::string& preset,
                                           const std::vector<int>& cutoffs) {
    std::vector<ScenarioSpec> specs;
    auto add = [&](Method m, const std::string& train, const std::string& test) {
        ScenarioSpec s;
        s.method = m;
        s.train_filter = ItemFilter::parse(train);
        s.test_filter = ItemFilter::parse(test);
        s.cutoffs = cutoffs;
        specs.push_back(std::move(s));
    };
    if (preset == "table3") {
        for (Method m : {Method::SKNN, Method::MC, Method::AR, Method::SR}) {
            add(m, "all", "all");
            add(m, "local", "local");
            add(m, "all", "local");
        }
    } else if (preset == "table4") {
        add(Method::SKNN, "all", "all");
        add(Method::SKNN, "local", "local");
        add(Method::SKNN, "all", "local");
        for (const char* cat : {"sports", "lifeculture", "news"}) {
            add(Method::SKNN, "all", cat);
            add(Method::SKNN, "local", std::string("local-") + cat);
            add(Method::SKNN, "all", std::string("local-") + cat);
        }
    } else if (preset == "table5") {
        const std::pair<const char*, const char*> columns[] = {
            {"news", "crime"},          {"news", "politics"},
            {"news", "news"},           {"sports", "sports"},
            {"sports", "orangebasketball"}, {"sports", "highschoolsports"},
        };
        for (const auto& [cat, sub] : columns) {
            std::string plain = std::string(cat) + "/" + sub;
            std::string local = "local-" + plain;
            add(Method::SKNN, "local", local);
            add(Method::SKNN, std::string("local-") + cat, local);
            add(Method::SKNN, "all", plain);
            add(Method::SKNN, cat, plain);
        }
    } else {
        throw ConfigError("unknown preset: " + preset);
    }
    return specs;
}

void cmd_run(const std::string& config_path, const std::string& preset,
             const std::string& out_dir) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(read_file(config_path));
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("bad run config " + config_path + ": " + e.what());
    }
    if (!j.contains("sessions") || !j.contains("catalog"))
        throw ConfigError("run config needs 'sessions' and 'catalog' paths");

    Dataset dataset;
    dataset.sessions = deserialize_sessions(read_file(j["sessions"]));
    dataset.catalog = deserialize_catalog(read_file(j["catalog"]));

    SplitSpec split;
    split.test_window_days = j.value("test_window_days", 10);
    std::vector<int> cutoffs = j.value("cutoffs", std::vector<int>{10, 20});

    ModelOptions opts;
    std::string decay = j.value("sr_decay", "inverse");
    if (decay == "inverse") opts.sr_decay = SrDecay::InverseGap;
    else if (decay == "linear") opts.sr_decay = SrDecay::Linear;
    else throw ConfigError("sr_decay must be 'inverse' or 'linear'");

    std::vector<ScenarioSpec> specs;
    if (!preset.empty()) {
        specs = preset_scenarios(preset, cutoffs);
    } else {
        for (const auto& sj : j.value("scenarios", nlohmann::json::array())) {
            ScenarioSpec s;
            auto m = parse_method(sj.at("method").get<std::string>());
            if (!m) throw ConfigError("unknown method in config: " +
                                      sj.at("method").get<std::string>());
            s.method = *m;
            s.train_filter = ItemFilter::parse(sj.at("train").get<std::string>());
            s.test_filter = ItemFilter::parse(sj.at("test").get<std::string>());
            s.cutoffs = cutoffs;
            specs.push_back(std::move(s));
        }
    }
    if (specs.empty()) throw ConfigError("no scenarios configured");

    fs::create_directories(out_dir);
    std::vector<ScenarioResult> results;
    bool failed = false;
    int idx = 0;
    for (const auto& spec : specs) {
        ++idx;
        char tag[32];
        std::snprintf(tag, sizeof(tag), "scenario_%02d", idx);
        try {
            ScenarioResult r = run_scenario(dataset, spec, split, opts);
            write_file(out_dir + "/" + tag + ".csv", report_csv({r}));
            if (r.report.zero_events) {
                std::cerr << tag << " (" << to_string(spec.method) << " "
                          << spec.train_filter.name() << "/"
                          << spec.test_filter.name()
                          << "): ZERO evaluation events\n";
                failed = true;
            }
            results.push_back(std::move(r));
        } catch (const ScenarioError& e) {
            std::cerr << tag << " failed: " << e.what() << "\n";
            failed = true;
        }
    }
    write_file(out_dir + "/report.csv", report_csv(results));
    write_file(out_dir + "/report.txt", report_table(results));
    std::cout << report_table(results);
    if (failed) throw ScenarioError("one or more scenarios failed");
}

void cmd_stats(const std::string& sessions_path, const std::string& catalog_path) {
    auto sessions = deserialize_sessions(read_file(sessions_path));
    auto catalog = deserialize_catalog(read_file(catalog_path));
    std::cout << format_stats(dataset_stats(catalog, sessions));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"locrec: localized session-based news recommendation harness"};
    app.require_subcommand(1);

    std::string events, rules, catalog, out, tz = "UTC";
    auto* ing = app.add_subcommand("ingest", "parse clickstream into sessions");
    ing->add_option("--events", events, "events CSV file")->required();
    ing->add_option("--rules", rules, "tagging rules JSON")->required();
    ing->add_option("--catalog", catalog, "optional catalog sidecar CSV");
    ing->add_option("--out", out, "output directory")->required();
    ing->add_option("--tz", tz, "dataset timezone (UTC or +HH:MM)");

    std::string gen_config, gen_out;
    auto* gen = app.add_subcommand("generate", "emit a synthetic dataset");
    gen->add_option("--config", gen_config, "generator config JSON");
    gen->add_option("--out", gen_out, "output directory")->required();

    std::string run_config, run_preset, run_out;
    auto* run = app.add_subcommand("run", "run evaluation scenarios");
    run->add_option("--config", run_config, "experiment config JSON")->required();
    run->add_option("--preset", run_preset, "table3|table4|table5");
    run->add_option("--out", run_out, "output directory")->required();

    std::string st_sessions, st_catalog;
    auto* st = app.add_subcommand("stats", "summarize an ingested dataset");
    st->add_option("--sessions", st_sessions, "session store")->required();
    st->add_option("--catalog", st_catalog, "catalog store")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    try {
        if (ing->parsed()) cmd_ingest(events, rules, catalog, out, tz);
        else if (gen->parsed()) cmd_generate(gen_config, gen_out);
        else if (run->parsed()) cmd_run(run_config, run_preset, run_out);
        else if (st->parsed()) cmd_stats(st_sessions, st_catalog);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ScenarioError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitScenario;
    } catch (const DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
    return 0;
}
