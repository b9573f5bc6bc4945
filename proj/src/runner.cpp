#include "graphrec/runner.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <ostream>

#include "json.hpp"

#include "graphrec/errors.hpp"

namespace graphrec {

namespace {

using nlohmann::json;

constexpr double kDay = 86400.0;

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

} // namespace

std::string to_string(GraphKind k) {
    switch (k) {
    case GraphKind::BIP:
        return "bip";
    case GraphKind::STG:
        return "stg";
    case GraphKind::LSG:
        return "lsg";
    }
    return "?";
}

std::string to_string(ContentMode m) {
    switch (m) {
    case ContentMode::None:
        return "none";
    case ContentMode::CI:
        return "ci";
    case ContentMode::CIU:
        return "ciu";
    }
    return "?";
}

std::string to_string(DecayKind d) {
    switch (d) {
    case DecayKind::None:
        return "none";
    case DecayKind::EDF:
        return "edf";
    case DecayKind::LDF:
        return "ldf";
    }
    return "?";
}

std::string to_string(TrustKind t) {
    switch (t) {
    case TrustKind::None:
        return "none";
    case TrustKind::ET:
        return "et";
    case TrustKind::IT:
        return "it";
    }
    return "?";
}

GraphKind graph_kind_from(const std::string& s) {
    std::string v = lower(s);
    if (v == "bip")
        return GraphKind::BIP;
    if (v == "stg")
        return GraphKind::STG;
    if (v == "lsg")
        return GraphKind::LSG;
    throw ValidationError("graph", "expected bip, stg or lsg, got '" + s + "'");
}

ContentMode content_mode_from(const std::string& s) {
    std::string v = lower(s);
    if (v == "none")
        return ContentMode::None;
    if (v == "ci")
        return ContentMode::CI;
    if (v == "ciu")
        return ContentMode::CIU;
    throw ValidationError("content", "expected none, ci or ciu, got '" + s + "'");
}

DecayKind decay_kind_from(const std::string& s) {
    std::string v = lower(s);
    if (v == "none")
        return DecayKind::None;
    if (v == "edf")
        return DecayKind::EDF;
    if (v == "ldf")
        return DecayKind::LDF;
    throw ValidationError("decay", "expected none, edf or ldf, got '" + s + "'");
}

TrustKind trust_kind_from(const std::string& s) {
    std::string v = lower(s);
    if (v == "none")
        return TrustKind::None;
    if (v == "et")
        return TrustKind::ET;
    if (v == "it")
        return TrustKind::IT;
    throw ValidationError("trust", "expected none, et or it, got '" + s + "'");
}

Metric metric_from(const std::string& s) {
    std::string v = lower(s);
    if (v == "f1")
        return Metric::F1;
    if (v == "hit")
        return Metric::HitRatio;
    if (v == "map")
        return Metric::MAP;
    throw ValidationError("objective", "expected f1, hit or map, got '" + s + "'");
}

void RunConfig::validate() const {
    if (reviews_path.empty())
        throw ValidationError("reviews_path", "is required");
    if (trust == TrustKind::ET && trust_path.empty())
        throw ValidationError("trust_path", "required for explicit trust");
    if (graph == GraphKind::STG && !(session_days > 0.0))
        throw ValidationError("session_days", "must be positive");
    if (decay != DecayKind::None && !(half_life_days > 0.0))
        throw ValidationError("half_life_days", "must be positive");
    if (decay == DecayKind::LDF && !(steepness_per_day > 0.0))
        throw ValidationError("steepness_per_day", "must be positive");
    if (!(long_term_weight >= 0.0 && long_term_weight <= 1.0))
        throw ValidationError("long_term_weight", "must lie in [0, 1]");
    if (!(trust_weight >= 0.0 && trust_weight <= 1.0))
        throw ValidationError("trust_weight", "must lie in [0, 1]");
    if (!(damping > 0.0 && damping < 1.0))
        throw ValidationError("damping", "must lie strictly between 0 and 1");
    if (!(tol > 0.0))
        throw ValidationError("tol", "must be positive");
    if (max_iter < 1)
        throw ValidationError("max_iter", "must be at least 1");
    if (min_overlap < 1)
        throw ValidationError("min_overlap", "must be at least 1");
    if (list_lens.empty())
        throw ValidationError("list_lens", "needs at least one list length");
    for (int n : list_lens)
        if (n < 1)
            throw ValidationError("list_lens", "list lengths must be at least 1");
    if (slices < 1)
        throw ValidationError("slices", "must be at least 1");
    if (samples < 1)
        throw ValidationError("samples", "must be at least 1");
    if (out_dir.empty())
        throw ValidationError("out_dir", "is required");
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open config file: " + path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        throw ParseError(0, std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object())
        throw ValidationError("config", "top level must be a JSON object");

    RunConfig c;
    for (const auto& [key, value] : doc.items()) {
        try {
            if (key == "reviews_path")
                c.reviews_path = value.get<std::string>();
            else if (key == "trust_path")
                c.trust_path = value.get<std::string>();
            else if (key == "delimiter") {
                auto d = value.get<std::string>();
                if (d.empty() || d == "whitespace")
                    c.delimiter = '\0';
                else if (d.size() == 1)
                    c.delimiter = d[0];
                else
                    throw ValidationError("delimiter", "must be one character or 'whitespace'");
            } else if (key == "graph")
                c.graph = graph_kind_from(value.get<std::string>());
            else if (key == "content")
                c.content = content_mode_from(value.get<std::string>());
            else if (key == "decay")
                c.decay = decay_kind_from(value.get<std::string>());
            else if (key == "trust")
                c.trust = trust_kind_from(value.get<std::string>());
            else if (key == "session_days")
                c.session_days = value.get<double>();
            else if (key == "long_term_weight")
                c.long_term_weight = value.get<double>();
            else if (key == "half_life_days")
                c.half_life_days = value.get<double>();
            else if (key == "steepness_per_day")
                c.steepness_per_day = value.get<double>();
            else if (key == "trust_weight")
                c.trust_weight = value.get<double>();
            else if (key == "min_overlap")
                c.min_overlap = value.get<int>();
            else if (key == "damping")
                c.damping = value.get<double>();
            else if (key == "tol")
                c.tol = value.get<double>();
            else if (key == "max_iter")
                c.max_iter = value.get<int>();
            else if (key == "list_lens")
                c.list_lens = value.get<std::vector<int>>();
            else if (key == "slices")
                c.slices = value.get<int>();
            else if (key == "samples")
                c.samples = value.get<int>();
            else if (key == "seed")
                c.seed = value.get<std::uint64_t>();
            else if (key == "objective")
                c.objective = metric_from(value.get<std::string>());
            else if (key == "matrix_tune")
                c.matrix_tune = value.get<bool>();
            else if (key == "out_dir")
                c.out_dir = value.get<std::string>();
            else
                throw ValidationError(key, "unknown configuration key");
        } catch (const json::exception&) {
            throw ValidationError(key, "has the wrong JSON type");
        }
    }
    return c;
}

PPRSettings settings_from(const RunConfig& config) {
    PPRSettings s;
    s.graph = config.graph;
    s.content = config.content;
    switch (config.decay) {
    case DecayKind::None:
        s.decay = DecaySpec::none();
        break;
    case DecayKind::EDF:
        s.decay = DecaySpec::edf(config.half_life_days * kDay);
        break;
    case DecayKind::LDF:
        s.decay = DecaySpec::ldf(config.steepness_per_day / kDay, config.half_life_days * kDay);
        break;
    }
    s.trust = config.trust;
    s.session_duration = static_cast<Timestamp>(config.session_days * kDay);
    s.long_term_weight = config.long_term_weight;
    s.trust_weight = config.trust_weight;
    s.damping = config.damping;
    s.tol = config.tol;
    s.max_iter = config.max_iter;
    s.list_len = config.list_lens.front();
    s.min_overlap = config.min_overlap;
    return s;
}

LoadedData load_dataset(const RunConfig& config) {
    LoadedData data;
    auto tuples = load_reviews(config.reviews_path, config.delimiter);
    data.stats = ingest_stats(tuples);
    FilterOutput filtered = filter_positive(tuples);
    data.stream = std::move(filtered.stream);
    data.catalog = std::move(filtered.catalog);
    if (!config.trust_path.empty())
        data.trust_net = load_trust(config.trust_path, config.delimiter);
    return data;
}

namespace {

json settings_json(const PPRSettings& s) {
    json j;
    j["graph"] = to_string(s.graph);
    j["content"] = to_string(s.content);
    j["decay"] = to_string(s.decay.kind);
    j["trust"] = to_string(s.trust);
    j["session_days"] = static_cast<double>(s.session_duration) / kDay;
    j["long_term_weight"] = s.long_term_weight;
    j["half_life_days"] = s.decay.half_life / kDay;
    j["steepness_per_day"] = s.decay.steepness * kDay;
    j["trust_weight"] = s.trust_weight;
    j["damping"] = s.damping;
    j["tol"] = s.tol;
    j["max_iter"] = s.max_iter;
    j["list_len"] = s.list_len;
    j["min_overlap"] = s.min_overlap;
    return j;
}

json config_json(const RunConfig& c) {
    json j;
    j["reviews_path"] = c.reviews_path;
    j["trust_path"] = c.trust_path;
    j["delimiter"] = c.delimiter == '\0' ? std::string("whitespace") : std::string(1, c.delimiter);
    j["graph"] = to_string(c.graph);
    j["content"] = to_string(c.content);
    j["decay"] = to_string(c.decay);
    j["trust"] = to_string(c.trust);
    j["session_days"] = c.session_days;
    j["long_term_weight"] = c.long_term_weight;
    j["half_life_days"] = c.half_life_days;
    j["steepness_per_day"] = c.steepness_per_day;
    j["trust_weight"] = c.trust_weight;
    j["min_overlap"] = c.min_overlap;
    j["damping"] = c.damping;
    j["tol"] = c.tol;
    j["max_iter"] = c.max_iter;
    j["list_lens"] = c.list_lens;
    j["slices"] = c.slices;
    j["samples"] = c.samples;
    j["seed"] = c.seed;
    j["objective"] = metric_name(c.objective);
    j["matrix_tune"] = c.matrix_tune;
    j["out_dir"] = c.out_dir;
    return j;
}

json slices_json(const EvalResult& r) {
    json arr = json::array();
    for (const SliceMetrics& s : r.slices) {
        json row;
        row["f1"] = {s.f1.num, s.f1.deno};
        row["hit"] = {s.hit.num, s.hit.deno};
        row["map"] = {s.ap.num, s.ap.deno};
        row["users"] = s.users;
        row["cold"] = s.cold;
        arr.push_back(std::move(row));
    }
    return arr;
}

json ta_json(const EvalResult& r) {
    return {{"f1", r.ta(Metric::F1)}, {"hit", r.ta(Metric::HitRatio)}, {"map", r.ta(Metric::MAP)}};
}

std::string num(double x) {
    return json(x).dump();
}

std::ofstream open_out(const std::filesystem::path& p) {
    std::ofstream out(p);
    if (!out)
        throw IoError("cannot write " + p.string());
    return out;
}

std::filesystem::path prepare_out_dir(const RunConfig& config) {
    std::filesystem::path dir(config.out_dir);
    std::filesystem::create_directories(dir);
    return dir;
}

} // namespace

RunOutput run_single(const RunConfig& config, const LoadedData& data) {
    config.validate();
    PPRSettings settings = settings_from(config);

    RunOutput out;
    for (int n : config.list_lens) {
        settings.list_len = n;
        out.per_n.emplace_back(n, evaluate(data.stream, data.catalog, data.trust_net, settings,
                                           config.slices));
    }

    auto dir = prepare_out_dir(config);
    auto summary = dir / "summary.csv";
    auto detail = dir / "detail.jsonl";
    {
        std::ofstream csv = open_out(summary);
        csv << "# config: " << config_json(config).dump() << "\n";
        csv << "n,metric,value,users,cold,slices,degenerate\n";
        for (const auto& [n, r] : out.per_n)
            for (Metric m : {Metric::F1, Metric::HitRatio, Metric::MAP})
                csv << n << ',' << metric_name(m) << ',' << num(r.ta(m)) << ',' << r.users_total()
                    << ',' << r.cold_total() << ',' << r.slices.size() << ','
                    << (r.degenerate ? "true" : "false") << "\n";
    }
    {
        std::ofstream jl = open_out(detail);
        jl << json{{"config", config_json(config)}}.dump() << "\n";
        for (const auto& [n, r] : out.per_n) {
            json rec;
            rec["n"] = n;
            rec["ta"] = ta_json(r);
            rec["slices"] = slices_json(r);
            rec["degenerate"] = r.degenerate;
            jl << rec.dump() << "\n";
        }
    }
    out.summary_path = summary.string();
    out.detail_path = detail.string();
    return out;
}

TuneOutput run_tune(const RunConfig& config, const LoadedData& data) {
    config.validate();
    PPRSettings base = settings_from(config);

    TuneOutput out;
    out.search = random_search(data.stream, data.catalog, data.trust_net, base,
                               SearchSpace::defaults(), config.samples, config.seed,
                               config.objective, config.slices);

    auto dir = prepare_out_dir(config);
    auto trials = dir / "trials.jsonl";
    auto best = dir / "best.json";
    {
        std::ofstream jl = open_out(trials);
        jl << json{{"config", config_json(config)}}.dump() << "\n";
        for (std::size_t t = 0; t < out.search.trials.size(); ++t) {
            const Trial& trial = out.search.trials[t];
            json rec;
            rec["trial"] = t;
            rec["settings"] = settings_json(trial.settings);
            rec["ta"] = ta_json(trial.result);
            rec["slices"] = slices_json(trial.result);
            rec["objective"] = trial.objective;
            jl << rec.dump() << "\n";
        }
    }
    {
        const Trial& b = out.search.best_trial();
        json rec;
        rec["config"] = config_json(config);
        rec["best_trial"] = out.search.best;
        rec["objective"] = metric_name(config.objective);
        rec["value"] = b.objective;
        rec["settings"] = settings_json(b.settings);
        rec["ta"] = ta_json(b.result);
        std::ofstream js = open_out(best);
        js << rec.dump(2) << "\n";
    }
    out.trials_path = trials.string();
    out.best_path = best.string();
    return out;
}

MatrixOutput run_matrix(const RunConfig& config, const LoadedData& data) {
    config.validate();
    if (config.trust_path.empty())
        throw ValidationError("trust_path", "required: the matrix includes explicit-trust rows");

    constexpr GraphKind kGraphs[] = {GraphKind::BIP, GraphKind::STG, GraphKind::LSG};
    MatrixOutput out;
    for (ContentMode content : {ContentMode::None, ContentMode::CI, ContentMode::CIU})
        for (DecayKind decay : {DecayKind::None, DecayKind::EDF, DecayKind::LDF})
            for (TrustKind trust : {TrustKind::None, TrustKind::ET, TrustKind::IT}) {
                MatrixRow row{content, decay, trust, {}};
                for (std::size_t g = 0; g < 3; ++g) {
                    RunConfig cell = config;
                    cell.graph = kGraphs[g];
                    cell.content = content;
                    cell.decay = decay;
                    cell.trust = trust;
                    PPRSettings settings = settings_from(cell);
                    if (config.matrix_tune) {
                        SearchResult sr = random_search(data.stream, data.catalog, data.trust_net,
                                                        settings, SearchSpace::defaults(),
                                                        config.samples, config.seed,
                                                        config.objective, config.slices);
                        row.per_graph[g] = sr.best_trial().result;
                    } else {
                        row.per_graph[g] = evaluate(data.stream, data.catalog, data.trust_net,
                                                    settings, config.slices);
                    }
                }
                out.rows.push_back(std::move(row));
            }
    out.popularity =
        evaluate_popularity(data.stream, config.slices, config.list_lens.front());

    auto dir = prepare_out_dir(config);
    auto csv_path = dir / "matrix.csv";
    std::ofstream csv = open_out(csv_path);
    csv << "# config: " << config_json(config).dump() << "\n";
    csv << "combo,content,decay,trust";
    for (GraphKind g : kGraphs)
        for (Metric m : {Metric::F1, Metric::HitRatio, Metric::MAP})
            csv << ',' << to_string(g) << '_' << metric_name(m);
    csv << "\n";
    for (const MatrixRow& row : out.rows) {
        csv << to_string(row.content) << '-' << to_string(row.decay) << '-'
            << to_string(row.trust) << ',' << to_string(row.content) << ','
            << to_string(row.decay) << ',' << to_string(row.trust);
        for (const EvalResult& r : row.per_graph)
            for (Metric m : {Metric::F1, Metric::HitRatio, Metric::MAP})
                csv << ',' << num(r.ta(m));
        csv << "\n";
    }
    // The baseline needs no graph; its values repeat across the graph columns.
    csv << "mpi,,,";
    for (int g = 0; g < 3; ++g)
        for (Metric m : {Metric::F1, Metric::HitRatio, Metric::MAP})
            csv << ',' << num(out.popularity.ta(m));
    csv << "\n";
    out.csv_path = csv_path.string();
    return out;
}

void run_inspect(const RunConfig& config, const LoadedData& data, std::ostream& out) {
    config.validate();
    PPRSettings settings = settings_from(config);
    RecGraph graph = build_graph(data.stream, settings.graph, settings.session_duration);
    graph = attach_content(graph, data.catalog, settings.content);
    dump_edges(graph, data.stream, &data.catalog, out);
}

} // namespace graphrec
