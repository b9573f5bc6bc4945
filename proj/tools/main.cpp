#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "graphrec/errors.hpp"
#include "graphrec/runner.hpp"

namespace {

/// Every flag is optional; values given on the command line override the
/// config file, which overrides the built-in defaults.
struct Overrides {
    std::optional<std::string> config_path;
    std::optional<std::string> reviews;
    std::optional<std::string> trust_file;
    std::optional<std::string> delimiter;
    std::optional<std::string> graph;
    std::optional<std::string> content;
    std::optional<std::string> decay;
    std::optional<std::string> trust_model;
    std::optional<double> session_days;
    std::optional<double> long_term_weight;
    std::optional<double> half_life_days;
    std::optional<double> steepness_per_day;
    std::optional<double> trust_weight;
    std::optional<int> min_overlap;
    std::optional<double> damping;
    std::optional<double> tol;
    std::optional<int> max_iter;
    std::vector<int> top;
    std::optional<int> slices;
    std::optional<int> samples;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> objective;
    bool matrix_tune = false;
    std::optional<std::string> out_dir;
};

void add_common(CLI::App& cmd, Overrides& o) {
    cmd.add_option("-c,--config", o.config_path, "JSON config file; flags below override it");
    cmd.add_option("--reviews", o.reviews, "review file: user item feature rating timestamp");
    cmd.add_option("--trust", o.trust_file, "trust file: truster trustee");
    cmd.add_option("--delimiter", o.delimiter, "field separator, single char or 'whitespace'");
    cmd.add_option("--graph", o.graph, "graph encoding: bip, stg or lsg");
    cmd.add_option("--content", o.content, "content injection: none, ci or ciu");
    cmd.add_option("--decay", o.decay, "time decay: none, edf or ldf");
    cmd.add_option("--trust-model", o.trust_model, "trust source: none, et or it");
    cmd.add_option("--session-days", o.session_days, "STG session duration in days");
    cmd.add_option("--long-term-weight", o.long_term_weight,
                   "restart share on the STG user node, in [0,1]");
    cmd.add_option("--half-life-days", o.half_life_days, "decay half-life / midpoint in days");
    cmd.add_option("--steepness-per-day", o.steepness_per_day, "logistic decay slope per day");
    cmd.add_option("--trust-weight", o.trust_weight, "restart share granted to trusted users");
    cmd.add_option("--min-overlap", o.min_overlap, "common items required for implicit trust");
    cmd.add_option("--damping", o.damping, "probability of following an edge, in (0,1)");
    cmd.add_option("--tol", o.tol, "power-iteration L1 convergence threshold");
    cmd.add_option("--max-iter", o.max_iter, "power-iteration cap");
    cmd.add_option("--top", o.top, "recommendation list length(s)")->delimiter(',');
    cmd.add_option("--slices", o.slices, "number k of evaluation rounds (k+1 windows)");
    cmd.add_option("--seed", o.seed, "random-search seed");
    cmd.add_option("--out", o.out_dir, "report directory");
}

graphrec::RunConfig make_config(const Overrides& o) {
    graphrec::RunConfig c;
    if (o.config_path)
        c = graphrec::load_config_file(*o.config_path);
    if (o.reviews)
        c.reviews_path = *o.reviews;
    if (o.trust_file)
        c.trust_path = *o.trust_file;
    if (o.delimiter) {
        if (o.delimiter->empty() || *o.delimiter == "whitespace")
            c.delimiter = '\0';
        else if (o.delimiter->size() == 1)
            c.delimiter = (*o.delimiter)[0];
        else
            throw graphrec::ValidationError("delimiter", "must be one character or 'whitespace'");
    }
    if (o.graph)
        c.graph = graphrec::graph_kind_from(*o.graph);
    if (o.content)
        c.content = graphrec::content_mode_from(*o.content);
    if (o.decay)
        c.decay = graphrec::decay_kind_from(*o.decay);
    if (o.trust_model)
        c.trust = graphrec::trust_kind_from(*o.trust_model);
    if (o.session_days)
        c.session_days = *o.session_days;
    if (o.long_term_weight)
        c.long_term_weight = *o.long_term_weight;
    if (o.half_life_days)
        c.half_life_days = *o.half_life_days;
    if (o.steepness_per_day)
        c.steepness_per_day = *o.steepness_per_day;
    if (o.trust_weight)
        c.trust_weight = *o.trust_weight;
    if (o.min_overlap)
        c.min_overlap = *o.min_overlap;
    if (o.damping)
        c.damping = *o.damping;
    if (o.tol)
        c.tol = *o.tol;
    if (o.max_iter)
        c.max_iter = *o.max_iter;
    if (!o.top.empty())
        c.list_lens = o.top;
    if (o.slices)
        c.slices = *o.slices;
    if (o.samples)
        c.samples = *o.samples;
    if (o.seed)
        c.seed = *o.seed;
    if (o.objective)
        c.objective = graphrec::metric_from(*o.objective);
    if (o.matrix_tune)
        c.matrix_tune = true;
    if (o.out_dir)
        c.out_dir = *o.out_dir;
    return c;
}

void warn_degenerate(const graphrec::EvalResult& r) {
    if (r.degenerate)
        std::cerr << "warning: fewer distinct timestamps than windows; "
                     "some windows hold no events\n";
}

void print_ta(const graphrec::EvalResult& r, int n) {
    std::printf("N=%d  F1=%.6f  HR=%.6f  MAP=%.6f  (users=%d, cold=%d)\n", n,
                r.ta(graphrec::Metric::F1), r.ta(graphrec::Metric::HitRatio),
                r.ta(graphrec::Metric::MAP), r.users_total(), r.cold_total());
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Graph-based top-N recommender over timestamped feedback: builds "
                 "bipartite/session/link-stream graphs enriched with content, time decay "
                 "and trust, ranks with personalized PageRank, and evaluates under the "
                 "time-sliced protocol."};
    app.require_subcommand(1);

    Overrides o;

    CLI::App* run = app.add_subcommand("run", "Evaluate one configuration");
    add_common(*run, o);
    run->footer("Writes <out>/summary.csv (columns: n,metric,value,users,cold,slices,degenerate;\n"
                "metric in f1|hit|map) and <out>/detail.jsonl (first line {\"config\":...}, then\n"
                "per list length: {n, ta:{f1,hit,map}, slices:[{f1:[num,deno],hit,map,users,cold}],\n"
                "degenerate}). Every value is reproducible from the recorded config.");

    CLI::App* tune = app.add_subcommand("tune", "Random-search the parameter grid");
    add_common(*tune, o);
    tune->add_option("--samples", o.samples, "number of random settings to draw");
    tune->add_option("--objective", o.objective, "selection metric: f1, hit or map");
    tune->footer("Writes <out>/trials.jsonl (first line {\"config\":...}, then one record per\n"
                 "trial: {trial, settings, ta, slices, objective}; byte-identical for a fixed\n"
                 "seed) and <out>/best.json (config, best_trial, objective, value, settings, ta).");

    CLI::App* matrix = app.add_subcommand(
        "matrix", "Evaluate all 27 content/decay/trust combinations on all three graphs");
    add_common(*matrix, o);
    matrix->add_option("--samples", o.samples, "random settings per cell with --tune-cells");
    matrix->add_option("--objective", o.objective, "selection metric: f1, hit or map");
    matrix->add_flag("--tune-cells", o.matrix_tune, "random-search each cell before reporting");
    matrix->footer("Writes <out>/matrix.csv: header `combo,content,decay,trust` followed by\n"
                   "<graph>_<metric> columns for graph in bip|stg|lsg and metric in f1|hit|map;\n"
                   "27 combination rows plus a final `mpi` popularity-baseline row.");

    CLI::App* inspect = app.add_subcommand("inspect-graph", "Dump the graph edge list");
    add_common(*inspect, o);
    inspect->footer("Prints one line per directed arc: src dst base_weight event_time, with\n"
                    "labels like user:u1, item:i2, session:u1#0, tuser:u1@5, content:c3.");

    CLI11_PARSE(app, argc, argv);

    try {
        graphrec::RunConfig config = make_config(o);
        graphrec::LoadedData data = graphrec::load_dataset(config);
        std::fprintf(stderr, "loaded %zu tuples (%zu users, %zu items, %zu features) -> %zu links\n",
                     data.stats.tuples, data.stats.users, data.stats.items, data.stats.features,
                     data.stream.links.size());

        if (run->parsed()) {
            graphrec::RunOutput out = graphrec::run_single(config, data);
            for (const auto& [n, r] : out.per_n) {
                warn_degenerate(r);
                print_ta(r, n);
            }
            std::printf("wrote %s and %s\n", out.summary_path.c_str(), out.detail_path.c_str());
        } else if (tune->parsed()) {
            graphrec::TuneOutput out = graphrec::run_tune(config, data);
            const graphrec::Trial& best = out.search.best_trial();
            warn_degenerate(best.result);
            std::printf("best trial %d: %s=%.6f\n", out.search.best,
                        graphrec::metric_name(config.objective).c_str(), best.objective);
            print_ta(best.result, best.settings.list_len);
            std::printf("wrote %s and %s\n", out.trials_path.c_str(), out.best_path.c_str());
        } else if (matrix->parsed()) {
            graphrec::MatrixOutput out = graphrec::run_matrix(config, data);
            warn_degenerate(out.rows.front().per_graph.front());
            std::printf("evaluated %zu combinations x 3 graphs + baseline\n", out.rows.size());
            std::printf("wrote %s\n", out.csv_path.c_str());
        } else if (inspect->parsed()) {
            graphrec::run_inspect(config, data, std::cout);
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
