#include "ctdg/cli.hpp"

#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "ctdg/anomaly_inject.hpp"
#include "ctdg/config_json.hpp"
#include "ctdg/csv_io.hpp"
#include "ctdg/edgebank.hpp"
#include "ctdg/graph_stats.hpp"
#include "ctdg/metrics.hpp"
#include "ctdg/splits.hpp"
#include "ctdg/synth_gen.hpp"

namespace ctdg {

namespace {

struct GenerateArgs {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string out;
    std::string dump_config;
    unsigned threads = 0;
};

struct SplitArgs {
    std::string in;
    std::string spec = "0.7,0.15,0.15";
    bool organic = false;
    std::string train, val, test;
    std::optional<std::size_t> nodes;
};

struct InjectArgs {
    std::string in, out, config_path, type;
    std::optional<double> rate;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> k, window;
    bool most_similar = false;
    std::optional<std::size_t> nodes;
};

struct DetectArgs {
    std::vector<std::string> fit;
    std::string in, out;
    std::string detector = "edgebank-inf";
    std::optional<double> window_duration;
    bool undirected = false;
    bool benign_only = false;
};

struct EvaluateArgs {
    std::vector<std::string> scores;
    std::string out;
};

struct StatsArgs {
    std::string in, out_dir;
};

CsvReadOptions read_options(std::ostream& err, std::optional<std::size_t> nodes = std::nullopt) {
    CsvReadOptions options;
    options.node_count = nodes;
    options.on_warning = [&err](const std::string& msg) { err << "warning: " << msg << '\n'; };
    return options;
}

void run_generate(const GenerateArgs& a, std::ostream& out) {
    GeneratorConfig config;
    if (!a.config_path.empty()) config = generator_config_from_json(read_text_file(a.config_path));
    if (a.seed) config.seed = *a.seed;
    config.validate();
    if (!a.dump_config.empty()) write_text_file(a.dump_config, generator_config_to_json(config));
    if (a.out.empty()) return;
    const EventLog log = generate(config, a.threads);
    write_csv(log, a.out);
    out << fmt::format("wrote {} events on {} nodes to {}\n", log.size(), log.node_count(), a.out);
}

void run_split(const SplitArgs& a, std::ostream& out, std::ostream& err) {
    const EventLog log = read_csv(a.in, read_options(err, a.nodes));
    const Splits s = a.organic ? organic_split(log) : chronological_split(log, parse_split_spec(a.spec));
    write_csv(s.train, a.train);
    write_csv(s.val, a.val);
    write_csv(s.test, a.test);
    out << fmt::format("train {} / val {} / test {} events\n", s.train.size(), s.val.size(),
                       s.test.size());
}

void run_inject(const InjectArgs& a, std::ostream& out, std::ostream& err) {
    InjectionConfig config;
    if (!a.config_path.empty()) config = injection_config_from_json(read_text_file(a.config_path));
    if (!a.type.empty()) config.anomaly_type = parse_label(a.type);
    if (a.rate) config.rate = *a.rate;
    if (a.seed) config.seed = *a.seed;
    if (a.k) config.K = *a.k;
    if (a.window) config.W = *a.window;
    if (a.most_similar) config.maximize_distance = false;
    const EventLog split = read_csv(a.in, read_options(err, a.nodes));
    const EventLog injected = inject(split, config);
    write_csv(injected, a.out);
    out << fmt::format("injected {} {} anomalies into {} events\n", injected.size() - split.size(),
                       label_name(config.anomaly_type), split.size());
}

void run_detect(const DetectArgs& a, std::ostream& out, std::ostream& err) {
    EdgeBankOptions options;
    if (a.detector == "edgebank-inf") {
        options.mode = EdgeBankMode::kInfinite;
    } else if (a.detector == "edgebank-tw") {
        options.mode = EdgeBankMode::kTimeWindow;
    } else {
        throw Error(fmt::format("unknown detector '{}'", a.detector));
    }
    options.window_duration = a.window_duration;
    options.directed = !a.undirected;
    options.update = a.benign_only ? MemoryUpdate::kBenignOnly : MemoryUpdate::kAll;

    EdgeBankMemory memory(options);
    for (const auto& path : a.fit) memory.fit(read_csv(path, read_options(err)));
    const EventLog split = read_csv(a.in, read_options(err));
    const auto scores = evaluate_stream(memory, split);
    write_scores(scores, a.out);
    out << fmt::format("scored {} events with {} ({} pairs in memory)\n", scores.size(),
                       a.detector, memory.size());
}

void run_evaluate(const EvaluateArgs& a, std::ostream& out, std::ostream& err) {
    std::vector<ScoredSet> runs;
    for (const auto& path : a.scores) runs.push_back(read_scores(path));
    const TypeReport report = per_type_report(runs);
    for (const auto& w : report.warnings) err << "warning: " << w << '\n';
    if (!a.out.empty()) write_text_file(a.out, report_csv(report));
    out << report_table(report);
}

void run_stats(const StatsArgs& a, std::ostream& out, std::ostream& err) {
    const EventLog log = read_csv(a.in, read_options(err));
    const StatsReport report = compute_stats(log);
    write_stats(report, a.out_dir);
    out << stats_summary_json(report);
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Benchmark toolkit for typed link anomalies in continuous-time dynamic graphs",
                 "ctdgbench"};
    app.require_subcommand(1);
    app.failure_message(CLI::FailureMessage::help);

    GenerateArgs gen;
    auto* generate_cmd = app.add_subcommand("generate", "Generate a synthetic CTDG");
    generate_cmd->add_option("--config", gen.config_path, "Generator config JSON")
        ->check(CLI::ExistingFile);
    generate_cmd->add_option("--seed", gen.seed, "Override the config seed");
    generate_cmd->add_option("--out", gen.out, "Output dataset CSV");
    generate_cmd->add_option("--dump-config", gen.dump_config, "Write the resolved config JSON");
    generate_cmd->add_option("--threads", gen.threads, "Worker threads (0 = all cores)");

    SplitArgs split;
    auto* split_cmd = app.add_subcommand("split", "Split a dataset into train/val/test");
    split_cmd->add_option("--in", split.in, "Input dataset CSV")->required()->check(CLI::ExistingFile);
    split_cmd->add_option("--split", split.spec, "Chronological fractions train,val,test");
    split_cmd->add_flag("--organic", split.organic, "Split around labeled organic anomalies");
    split_cmd->add_option("--train", split.train, "Train output CSV")->required();
    split_cmd->add_option("--val", split.val, "Validation output CSV")->required();
    split_cmd->add_option("--test", split.test, "Test output CSV")->required();
    split_cmd->add_option("--nodes", split.nodes, "Node count (default: max id + 1)");

    InjectArgs inj;
    auto* inject_cmd = app.add_subcommand("inject", "Inject typed anomalies into a benign split");
    inject_cmd->add_option("--in", inj.in, "Benign split CSV")->required()->check(CLI::ExistingFile);
    inject_cmd->add_option("--out", inj.out, "Augmented split CSV")->required();
    inject_cmd->add_option("--config", inj.config_path, "Injection config JSON")
        ->check(CLI::ExistingFile);
    inject_cmd->add_option("--type", inj.type, "Anomaly type")
        ->check(CLI::IsMember({"t", "c", "tc", "sc", "tsc"}, CLI::ignore_case));
    inject_cmd->add_option("--rate", inj.rate, "Anomalies per benign event");
    inject_cmd->add_option("--seed", inj.seed, "Injection seed");
    inject_cmd->add_option("--k", inj.k, "Candidate messages per contextual perturbation");
    inject_cmd->add_option("--window", inj.window, "Temporal window for S-C references");
    inject_cmd->add_flag("--most-similar", inj.most_similar,
                         "Pick the most similar candidate message instead of the least");
    inject_cmd->add_option("--nodes", inj.nodes, "Node count (default: max id + 1)");

    DetectArgs det;
    auto* detect_cmd = app.add_subcommand("detect", "Score a split with an EdgeBank detector");
    detect_cmd->add_option("--fit", det.fit, "History CSVs loaded into memory, in order")
        ->check(CLI::ExistingFile);
    detect_cmd->add_option("--in", det.in, "Split CSV to score")->required()->check(CLI::ExistingFile);
    detect_cmd->add_option("--out", det.out, "Score CSV")->required();
    detect_cmd->add_option("--detector", det.detector, "edgebank-inf or edgebank-tw")
        ->check(CLI::IsMember({"edgebank-inf", "edgebank-tw"}));
    detect_cmd->add_option("--window-duration", det.window_duration,
                           "EdgeBank-tw look-back (default 0.15 x first fit file span)");
    detect_cmd->add_flag("--undirected", det.undirected, "Treat (u,v) and (v,u) as one pair");
    detect_cmd->add_flag("--benign-only-memory", det.benign_only,
                         "Do not write anomalous events into memory while streaming");

    EvaluateArgs ev;
    auto* evaluate_cmd = app.add_subcommand("evaluate", "Per-type AUC / AP / Recall@k report");
    evaluate_cmd->add_option("--scores", ev.scores, "Score CSVs, one per run")
        ->required()
        ->check(CLI::ExistingFile);
    evaluate_cmd->add_option("--out", ev.out, "Report CSV");

    StatsArgs st;
    auto* stats_cmd = app.add_subcommand("stats", "Dataset consistency statistics");
    stats_cmd->add_option("--in", st.in, "Dataset CSV")->required()->check(CLI::ExistingFile);
    stats_cmd->add_option("--out-dir", st.out_dir, "Output directory")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    if (!reversed.empty()) reversed.pop_back();  // program name
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        if (*generate_cmd) {
            if (gen.out.empty() && gen.dump_config.empty()) {
                err << "generate: nothing to do (give --out and/or --dump-config)\n";
                return 2;
            }
            run_generate(gen, out);
        } else if (*split_cmd) {
            run_split(split, out, err);
        } else if (*inject_cmd) {
            run_inject(inj, out, err);
        } else if (*detect_cmd) {
            run_detect(det, out, err);
        } else if (*evaluate_cmd) {
            run_evaluate(ev, out, err);
        } else if (*stats_cmd) {
            run_stats(st, out, err);
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

int cli_main(int argc, const char* const* argv) {
    std::vector<std::string> args(argv, argv + argc);
    return cli_main(args, std::cout, std::cerr);
}

}  // namespace ctdg
