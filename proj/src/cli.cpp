#include "kerap/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "kerap/agents/serialize.hpp"
#include "kerap/cohort/cohort.hpp"
#include "kerap/eval/harness.hpp"
#include "kerap/pipeline.hpp"
#include "kerap/util/errors.hpp"
#include "kerap/util/log.hpp"

namespace kerap::cli {

namespace fs = std::filesystem;

namespace {

void write_text(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw InvalidInputError("cannot write " + path.string());
    out << content;
}

void write_config_echo(const PipelineConfig& config, const fs::path& dir) {
    write_text(dir / "config_echo.json", config.to_json().dump(2) + "\n");
}

std::vector<agents::Strategy> parse_strategies(const std::string& name) {
    if (name == "all") {
        return {std::begin(agents::kAllStrategies), std::end(agents::kAllStrategies)};
    }
    return {agents::strategy_from_string(name)};
}

struct CommonOpts {
    std::string config_path;
    std::string log_level = "info";
};

PipelineContext make_context(const CommonOpts& opts, const std::string& mode_override = "") {
    auto config = PipelineConfig::load(opts.config_path);
    if (!mode_override.empty()) config.mode = mode_from_string(mode_override);
    return PipelineContext(std::move(config));
}

int cmd_ingest_kg(const CommonOpts& opts) {
    const auto config = PipelineConfig::load(opts.config_path);
    const auto store = kg::KgStore::ingest(config.entity_file, config.triple_file);
    const auto& report = store.report();
    nlohmann::json doc;
    doc["entities"] = report.entity_count;
    doc["triples"] = report.triple_count;
    doc["dangling_dropped"] = report.dangling_dropped;
    doc["malformed_rows"] = report.malformed_rows;
    auto& issues = doc["issues"] = nlohmann::json::array();
    for (const auto& issue : report.issues) {
        issues.push_back({{"path", issue.path}, {"line", issue.line}, {"message", issue.message}});
    }
    std::cout << doc.dump(2) << "\n";
    return 0;
}

int cmd_link(const CommonOpts& opts, const std::string& mention, const std::string& out_dir,
             const std::string& mode_override) {
    auto ctx = make_context(opts, mode_override);
    const auto result =
        agents::link(ctx.gateway(), ctx.store(), ctx.index(), mention, ctx.linkage_config());
    const auto doc = agents::to_json(result);
    std::cout << doc.dump(2) << "\n";
    if (!out_dir.empty()) {
        write_text(fs::path(out_dir) / "link.json", doc.dump(2) + "\n");
        write_config_echo(ctx.config(), out_dir);
    }
    ctx.flush_recordings();
    return 0;
}

int cmd_retrieve(const CommonOpts& opts, const std::string& disease, const std::string& out_dir,
                 const std::string& mode_override) {
    auto ctx = make_context(opts, mode_override);
    const auto [link_result, bundle] = ctx.knowledge_for(disease);
    auto doc = agents::to_json(bundle);
    doc["link"] = agents::to_json(link_result);
    std::cout << doc.dump(2) << "\n";
    if (!out_dir.empty()) {
        write_text(fs::path(out_dir) / "bundle.json", doc.dump(2) + "\n");
        write_config_echo(ctx.config(), out_dir);
    }
    ctx.flush_recordings();
    return 0;
}

int cmd_predict(const CommonOpts& opts, const std::string& cohort_path,
                const std::string& disease_override, const std::string& strategy_name,
                const std::string& out_dir, const std::string& mode_override) {
    auto ctx = make_context(opts, mode_override);
    auto cohort = cohortio::load_cohort(cohort_path);
    if (!disease_override.empty()) cohort.disease = disease_override;

    const auto strategy = agents::strategy_from_string(strategy_name);
    const auto outcomes = eval::run_pass(ctx, cohort, strategy);

    std::string lines;
    for (const auto& outcome : outcomes) lines += agents::to_json(outcome).dump() + "\n";
    if (!out_dir.empty()) {
        write_text(fs::path(out_dir) / "outcomes.jsonl", lines);
        write_config_echo(ctx.config(), out_dir);
    } else {
        std::cout << lines;
    }
    ctx.flush_recordings();
    util::log_info("predict complete", {{"visits", std::to_string(outcomes.size())},
                                        {"strategy", strategy_name}});
    return 0;
}

int cmd_evaluate(const CommonOpts& opts, const std::string& cohort_path,
                 const std::string& strategy_name, std::size_t runs, const std::string& out_dir,
                 const std::string& mode_override) {
    auto ctx = make_context(opts, mode_override);
    const auto cohort = cohortio::load_cohort(cohort_path);
    const auto report = eval::evaluate_to_report(ctx, cohort, parse_strategies(strategy_name),
                                                 runs);
    write_text(fs::path(out_dir) / "report.json", report.json.dump(2) + "\n");
    write_text(fs::path(out_dir) / "report.txt", report.text);
    write_config_echo(ctx.config(), out_dir);
    ctx.flush_recordings();
    std::cout << report.text;
    return 0;
}

int cmd_report(const std::vector<std::string>& from, const std::string& out_dir) {
    if (from.empty()) throw InvalidInputError("report needs at least one input report.json");
    std::string disease;
    std::size_t visits = 0;
    std::size_t labeled = 0;
    std::vector<eval::ReportRow> rows;
    std::int64_t kg_tokens = 0;
    for (const auto& path : from) {
        std::ifstream in(path);
        if (!in) throw InvalidInputError("cannot open report: " + path);
        nlohmann::json doc;
        in >> doc;
        if (disease.empty()) {
            disease = doc.value("disease", "");
            visits = doc.value("visits", std::size_t{0});
            labeled = doc.value("labeled", std::size_t{0});
        } else if (disease != doc.value("disease", "")) {
            throw InvalidInputError("reports disagree on the target disease");
        }
        kg_tokens += doc.value("kg_tokens", std::int64_t{0});
        for (const auto& entry : doc.at("strategies")) {
            eval::ReportRow row;
            row.strategy = entry.at("strategy").get<std::string>();
            row.runs = entry.value("runs", std::size_t{1});
            row.acc_mean = entry.at("accuracy").at("mean").get<double>();
            row.acc_std = entry.at("accuracy").at("std").get<double>();
            row.f1_mean = entry.at("f1_weighted").at("mean").get<double>();
            row.f1_std = entry.at("f1_weighted").at("std").get<double>();
            row.total_tokens = entry.value("total_tokens", std::int64_t{0});
            row.token_cost = entry.value("token_cost", 0.0);
            row.wall_time_s = entry.value("wall_time_s", 0.0);
            row.parse_fallbacks = entry.value("parse_fallbacks", std::size_t{0});
            rows.push_back(std::move(row));
        }
    }
    auto merged = eval::report_json(disease, visits, labeled, rows);
    merged["kg_tokens"] = kg_tokens;
    const auto text = eval::report_text(disease, visits, labeled, rows);
    write_text(fs::path(out_dir) / "report.json", merged.dump(2) + "\n");
    write_text(fs::path(out_dir) / "report.txt", text);
    std::cout << text;
    return 0;
}

int cmd_synth_cohort(std::uint64_t seed, std::size_t n, double prevalence,
                     const std::string& vocab_path, const std::string& disease,
                     const std::string& out_path) {
    std::vector<std::string> vocab;
    std::ifstream in(vocab_path);
    if (!in) throw InvalidInputError("cannot open vocab file: " + vocab_path);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty() && line[0] != '#') vocab.push_back(line);
    }
    const auto cohort = cohortio::synth_cohort(seed, n, prevalence, vocab, disease);
    cohortio::write_cohort(cohort, out_path);
    nlohmann::json doc;
    doc["visits"] = cohort.visits.size();
    doc["positives"] = cohort.positive_count();
    if (auto p = cohort.prevalence()) doc["prevalence"] = *p;
    doc["path"] = out_path;
    std::cout << doc.dump(2) << "\n";
    return 0;
}

}  // namespace

int run(int argc, char** argv) {
    CLI::App app{"Knowledge-graph-enhanced zero-shot diagnosis prediction pipeline"};
    app.require_subcommand(1);

    CommonOpts common;
    app.add_option("--log-level", common.log_level, "debug|info|warn|error|off");

    std::string mention;
    std::string disease;
    std::string cohort_path;
    std::string strategy_name = "kerap";
    std::string out_dir;
    std::string mode_override;
    std::size_t runs = 5;
    std::vector<std::string> from;
    std::uint64_t seed = 42;
    std::size_t n = 100;
    double prevalence = 0.223;
    std::string vocab_path;
    std::string out_path;

    auto add_config = [&](CLI::App* cmd) {
        cmd->add_option("--config", common.config_path, "pipeline config JSON")
            ->required()
            ->check(CLI::ExistingFile);
    };
    auto add_mode = [&](CLI::App* cmd) {
        cmd->add_option("--mode", mode_override, "override gateway mode: live|replay|record");
    };

    auto* ingest = app.add_subcommand("ingest-kg", "ingest the knowledge graph and print counts");
    add_config(ingest);

    auto* link_cmd = app.add_subcommand("link", "link a disease mention to a KG entity");
    add_config(link_cmd);
    add_mode(link_cmd);
    link_cmd->add_option("--mention", mention, "disease mention text")->required();
    link_cmd->add_option("--out", out_dir, "output directory");

    auto* retrieve_cmd =
        app.add_subcommand("retrieve", "retrieve and summarize polarized KG knowledge");
    add_config(retrieve_cmd);
    add_mode(retrieve_cmd);
    retrieve_cmd->add_option("--disease", disease, "target disease mention")->required();
    retrieve_cmd->add_option("--out", out_dir, "output directory");

    auto* predict_cmd = app.add_subcommand("predict", "predict outcomes for a cohort");
    add_config(predict_cmd);
    add_mode(predict_cmd);
    predict_cmd->add_option("--cohort", cohort_path, "cohort JSONL file")
        ->required()
        ->check(CLI::ExistingFile);
    predict_cmd->add_option("--disease", disease, "override the cohort's target disease");
    predict_cmd->add_option("--strategy", strategy_name,
                            "direct|step-by-step|kg-augmented|iterative|kerap");
    predict_cmd->add_option("--out", out_dir, "output directory (default: stdout)");

    auto* evaluate_cmd =
        app.add_subcommand("evaluate", "run a strategy R times and emit the report");
    add_config(evaluate_cmd);
    add_mode(evaluate_cmd);
    evaluate_cmd->add_option("--cohort", cohort_path, "cohort JSONL file")
        ->required()
        ->check(CLI::ExistingFile);
    evaluate_cmd->add_option("--strategy", strategy_name, "strategy name or 'all'");
    evaluate_cmd->add_option("--runs", runs, "repetitions R")->check(CLI::PositiveNumber);
    evaluate_cmd->add_option("--out", out_dir, "output directory")->required();

    auto* report_cmd = app.add_subcommand("report", "merge evaluation reports into one table");
    report_cmd->add_option("--from", from, "input report.json files")->required();
    report_cmd->add_option("--out", out_dir, "output directory")->required();

    auto* synth_cmd = app.add_subcommand("synth-cohort", "generate a synthetic cohort");
    synth_cmd->add_option("--seed", seed, "RNG seed");
    synth_cmd->add_option("--n", n, "number of visits");
    synth_cmd->add_option("--prevalence", prevalence, "positive-label fraction")
        ->check(CLI::Range(0.0, 1.0));
    synth_cmd->add_option("--vocab", vocab_path, "attribute vocabulary, one per line")
        ->required()
        ->check(CLI::ExistingFile);
    synth_cmd->add_option("--disease", disease, "target disease mention")->required();
    synth_cmd->add_option("--out", out_path, "output cohort file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        util::set_log_level(util::parse_log_level(common.log_level));
        if (ingest->parsed()) return cmd_ingest_kg(common);
        if (link_cmd->parsed()) return cmd_link(common, mention, out_dir, mode_override);
        if (retrieve_cmd->parsed()) return cmd_retrieve(common, disease, out_dir, mode_override);
        if (predict_cmd->parsed()) {
            return cmd_predict(common, cohort_path, disease, strategy_name, out_dir,
                               mode_override);
        }
        if (evaluate_cmd->parsed()) {
            return cmd_evaluate(common, cohort_path, strategy_name, runs, out_dir, mode_override);
        }
        if (report_cmd->parsed()) return cmd_report(from, out_dir);
        if (synth_cmd->parsed()) {
            return cmd_synth_cohort(seed, n, prevalence, vocab_path, disease, out_path);
        }
        return 2;
    } catch (const std::exception& e) {
        util::log_error("command failed", {{"error", e.what()}});
        return 1;
    }
}

}  // namespace kerap::cli
