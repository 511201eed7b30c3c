// prophet: command-line driver for the online Voronoi selection game and its
// Monte Carlo validators.
//
// Exit codes: 0 success, 1 a gate failed under --enforce-gates, 2 usage error.

#include <fstream>
#include <iostream>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "prophet/experiments.hpp"
#include "prophet/records.hpp"
#include "prophet/rng.hpp"
#include "prophet/voronoi.hpp"

namespace {

using namespace prophet;

constexpr int kExitOk = 0;
constexpr int kExitGateFailure = 1;
constexpr int kExitUsage = 2;

struct Options {
    std::vector<std::uint64_t> n{10000};
    std::uint64_t trials = 1;
    double c = 2.0;
    double beta = 4.0;
    double c_lemma = 3.0;
    std::uint64_t samples = 10000;
    std::uint64_t inner = 10000;
    std::uint64_t seed = 0;
    std::string format = "json";
    std::string out;
    std::string summary;
    std::string strategy = "trigger";
    bool enforce_gates = false;
    unsigned threads = 1;
};

class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
            if (!*file_) throw std::runtime_error("cannot open " + path);
        }
    }
    std::ostream& stream() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

void add_common(CLI::App* cmd, Options& o, bool batch) {
    cmd->add_option("--seed", o.seed, "Master seed")->capture_default_str();
    cmd->add_option("--out", o.out, "Output path (default stdout)");
    if (!batch) return;
    cmd->add_option("--trials", o.trials, "Number of trials")->check(CLI::PositiveNumber)->capture_default_str();
    cmd->add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember({"json", "jsonl", "csv"}))
        ->capture_default_str();
    cmd->add_option("--summary", o.summary, "Also write the summary JSON here");
    cmd->add_flag("--enforce-gates", o.enforce_gates, "Exit 1 if any gate fails");
    cmd->add_option("--threads", o.threads, "Worker threads (output unaffected)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
}

void add_n(CLI::App* cmd, Options& o, bool list) {
    auto* opt = cmd->add_option("--n", o.n, list ? "Comma-separated point counts" : "Point count")
                    ->check(CLI::PositiveNumber)
                    ->capture_default_str();
    if (list) {
        opt->delimiter(',');
    } else {
        opt->expected(1);
    }
}

int emit_report(const ExperimentReport& report, const Options& o) {
    Output out(o.out);
    const Json summary = summary_json(report);
    if (o.format == "json") {
        Json full = summary;
        Json rows = Json::array();
        for (const auto& row : report.records.rows) {
            Json obj = Json::object();
            for (std::size_t k = 0; k < report.records.columns.size(); ++k) {
                obj[report.records.columns[k]] =
                    std::visit([](auto x) { return Json(x); }, row[k]);
            }
            rows.push_back(std::move(obj));
        }
        full["records"] = std::move(rows);
        out.stream() << full.dump(2) << '\n';
    } else if (o.format == "jsonl") {
        write_jsonl(out.stream(), report.records);
    } else {
        write_csv(out.stream(), report.records);
    }
    if (!o.summary.empty()) {
        Output s(o.summary);
        s.stream() << summary.dump(2) << '\n';
    }

    for (const auto& w : report.warnings) std::cerr << "warning: " << w << '\n';
    for (const auto& g : report.gates) {
        std::cerr << (g.pass ? "PASS " : "FAIL ") << g.name << " value=" << g.value
                  << " threshold=" << g.threshold << '\n';
    }
    if (o.enforce_gates && !report.all_gates_pass()) return kExitGateFailure;
    return kExitOk;
}

ExperimentConfig make_config(const Options& o, ExperimentKind kind) {
    ExperimentConfig cfg;
    cfg.kind = kind;
    cfg.n = o.n.front();
    cfg.trials = o.trials;
    cfg.c = o.c;
    cfg.beta = o.beta;
    cfg.c_lemma = o.c_lemma;
    cfg.master_seed = o.seed;
    cfg.samples = o.samples;
    cfg.inner_samples = o.inner;
    cfg.strategy = parse_strategy_kind(o.strategy);
    cfg.threads = o.threads;
    return cfg;
}

int run_voronoi(const Options& o) {
    const auto sites = generate_stream(o.n.front(), substream_seed(o.seed, 0));
    const VoronoiDiagram diagram = build_voronoi(sites);
    Output out(o.out);
    out.stream() << diagram_json(diagram).dump(2) << '\n';
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Online Voronoi selection game: simulator and Monte Carlo validators"};
    app.require_subcommand(1);
    Options o;

    auto* game = app.add_subcommand("game", "Play batches of the selection game");
    add_n(game, o, false);
    add_common(game, o, true);
    game->add_option("--c", o.c, "Suffix constant in f = c sqrt(n) log n")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    game->add_option("--strategy", o.strategy, "Player strategy")
        ->check(CLI::IsMember({"trigger", "first", "uniform", "last"}))
        ->capture_default_str();

    auto* voronoi = app.add_subcommand("voronoi", "Dump the torus Voronoi diagram of n random sites");
    add_n(voronoi, o, false);
    add_common(voronoi, o, false);

    auto* biggest = app.add_subcommand("lemma-biggest-cell", "Tail frequency of the largest cell area");
    add_n(biggest, o, false);
    add_common(biggest, o, true);
    biggest->add_option("--c-lemma", o.c_lemma, "Constant c in the 4c log n / n threshold")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    auto* many = app.add_subcommand("lemma-many-large", "Counts of fat sites and large cells");
    add_n(many, o, false);
    add_common(many, o, true);
    many->add_option("--c", o.c, "Suffix constant (for the in-suffix count)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    auto* center = app.add_subcommand("lemma-center", "Point-versus-square-boundary probability");
    add_n(center, o, false);
    add_common(center, o, true);
    center->add_option("--samples", o.samples, "Outer samples p")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    center->add_option("--inner", o.inner, "Inner samples per p")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    auto* balls = app.add_subcommand("balls-bins", "Empty and singleton bin counts");
    add_n(balls, o, false);
    add_common(balls, o, true);
    balls->add_option("--beta", o.beta, "m = round(beta n / log n)")->capture_default_str();

    auto* sweep = app.add_subcommand("sweep", "Game batches over several n, with trend gates");
    add_n(sweep, o, true);
    add_common(sweep, o, true);
    sweep->add_option("--c", o.c, "Suffix constant")->check(CLI::PositiveNumber)->capture_default_str();
    sweep->add_option("--strategy", o.strategy, "Player strategy")
        ->check(CLI::IsMember({"trigger", "first", "uniform", "last"}))
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*voronoi) return run_voronoi(o);
        if (*sweep) return emit_report(run_sweep(make_config(o, ExperimentKind::game), o.n), o);
        if (*game) return emit_report(run_experiment(make_config(o, ExperimentKind::game)), o);
        if (*biggest) return emit_report(run_experiment(make_config(o, ExperimentKind::biggest_cell)), o);
        if (*many) return emit_report(run_experiment(make_config(o, ExperimentKind::many_large)), o);
        if (*center) return emit_report(run_experiment(make_config(o, ExperimentKind::center)), o);
        if (*balls) return emit_report(run_experiment(make_config(o, ExperimentKind::balls_bins)), o);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
