#include "graphrec/eval.hpp"

#include <algorithm>
#include <functional>
#include <memory>
#include <numeric>
#include <random>
#include <unordered_map>
#include <unordered_set>

#include "graphrec/errors.hpp"
#include "graphrec/parallel.hpp"

namespace graphrec {

MetricPair f1_contrib(int hits, int new_items, int n) {
    if (new_items < 1)
        throw ProtocolError("user evaluated without any new test item");
    return {2.0 * hits, static_cast<double>(new_items + n)};
}

MetricPair hit_contrib(int hits) {
    return {hits > 0 ? 1.0 : 0.0, 1.0};
}

MetricPair ap_contrib(const std::vector<bool>& hit_flags) {
    // Exact fraction accumulation: a double running sum lands one ulp off
    // values like 5/6. Falls back to doubles if the fraction would overflow.
    unsigned long long num = 0, den = 1;
    double approx = 0.0;
    int hits = 0;
    bool exact = true;
    for (std::size_t r = 0; r < hit_flags.size(); ++r) {
        if (!hit_flags[r])
            continue;
        ++hits;
        const auto rank = static_cast<unsigned long long>(r + 1);
        approx += static_cast<double>(hits) / static_cast<double>(rank);
        if (!exact)
            continue;
        const unsigned long long scale = rank / std::gcd(den, rank);
        const unsigned __int128 wide_den = static_cast<unsigned __int128>(den) * scale;
        const unsigned __int128 wide_num = static_cast<unsigned __int128>(num) * scale +
                                           static_cast<unsigned __int128>(hits) * (wide_den / rank);
        if (wide_den > (1ULL << 50) || wide_num > (1ULL << 62)) {
            exact = false;
            continue;
        }
        num = static_cast<unsigned long long>(wide_num);
        den = static_cast<unsigned long long>(wide_den);
    }
    if (hits == 0)
        return {0.0, 1.0};
    const double ap = exact ? static_cast<double>(num) /
                                  static_cast<double>(den * static_cast<unsigned long long>(hits))
                            : approx / hits;
    return {ap, 1.0};
}

double EvalResult::ta(Metric m) const {
    MetricPair total;
    for (const SliceMetrics& s : slices)
        total += m == Metric::F1 ? s.f1 : m == Metric::HitRatio ? s.hit : s.ap;
    return total.ratio();
}

int EvalResult::users_total() const {
    int n = 0;
    for (const SliceMetrics& s : slices)
        n += s.users;
    return n;
}

int EvalResult::cold_total() const {
    int n = 0;
    for (const SliceMetrics& s : slices)
        n += s.cold;
    return n;
}

namespace {

/// One evaluation round: cumulative training data, the users to score, and
/// what counts as a good recommendation for each.
struct SliceJob {
    LinkStream train;
    Timestamp now = 0; // right boundary of the training interval
    std::vector<int> users;
    std::vector<std::unordered_set<int>> seen;      // training history per user
    std::vector<std::unordered_set<int>> new_items; // test-window novelties per user
};

std::vector<SliceJob> cut_slices(const LinkStream& stream, int k) {
    std::vector<TimeWindow> windows = slice_time(stream, k);
    std::vector<SliceJob> jobs;
    jobs.reserve(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) {
        SliceJob job;
        job.now = windows[static_cast<std::size_t>(j)].end;
        job.train = prefix_until(stream, job.now);
        LinkStream test = slice_of(stream, windows[static_cast<std::size_t>(j) + 1]);

        std::unordered_map<int, std::unordered_set<int>> history;
        for (const Link& l : job.train.links)
            history[l.user].insert(l.item);
        std::unordered_map<int, std::unordered_set<int>> fresh;
        for (const Link& l : test.links) {
            auto h = history.find(l.user);
            if (h == history.end() || !h->second.contains(l.item))
                fresh[l.user].insert(l.item);
        }

        job.users.reserve(fresh.size());
        for (const auto& [user, items] : fresh)
            job.users.push_back(user);
        std::sort(job.users.begin(), job.users.end());
        job.seen.resize(job.users.size());
        job.new_items.resize(job.users.size());
        for (std::size_t s = 0; s < job.users.size(); ++s) {
            auto h = history.find(job.users[s]);
            if (h != history.end())
                job.seen[s] = std::move(h->second);
            job.new_items[s] = std::move(fresh[job.users[s]]);
        }
        jobs.push_back(std::move(job));
    }
    return jobs;
}

/// Produces the recommendation list for the user in slot `s`; `cold` reports
/// a popularity fallback.
using Ranker = std::function<std::vector<ScoredItem>(std::size_t s, bool& cold)>;

SliceMetrics score_slice(const SliceJob& job, int list_len, const Ranker& rank) {
    struct Slot {
        MetricPair f, h, ap;
        bool cold = false;
    };
    std::vector<Slot> slots(job.users.size());
    parallel_for(job.users.size(), [&](std::size_t s) {
        Slot& slot = slots[s];
        std::vector<ScoredItem> recs = rank(s, slot.cold);
        std::vector<bool> flags(static_cast<std::size_t>(list_len), false);
        int hits = 0;
        for (std::size_t r = 0; r < recs.size(); ++r)
            if (job.new_items[s].contains(recs[r].item)) {
                flags[r] = true;
                ++hits;
            }
        slot.f = f1_contrib(hits, static_cast<int>(job.new_items[s].size()), list_len);
        slot.h = hit_contrib(hits);
        slot.ap = ap_contrib(flags);
    });

    SliceMetrics m;
    m.users = static_cast<int>(job.users.size());
    for (const Slot& slot : slots) {
        m.f1 += slot.f;
        m.hit += slot.h;
        m.ap += slot.ap;
        if (slot.cold)
            m.cold++;
    }
    return m;
}

EvalResult run_protocol(const LinkStream& stream, int k, int list_len,
                        const std::function<Ranker(const SliceJob&)>& make_ranker) {
    EvalResult result;
    result.degenerate = degenerate_slicing(stream, k);
    std::vector<SliceJob> jobs = cut_slices(stream, k);
    result.slices.reserve(jobs.size());
    for (const SliceJob& job : jobs) {
        if (job.users.empty()) {
            result.slices.push_back({});
            continue;
        }
        result.slices.push_back(score_slice(job, list_len, make_ranker(job)));
    }
    if (result.users_total() == 0)
        throw EmptyEvaluationError("no slice produced an evaluable user");
    return result;
}

} // namespace

EvalResult evaluate(const LinkStream& stream, const ContentCatalog& catalog,
                    const ExplicitTrustNetwork& trust_net, const PPRSettings& settings, int k) {
    settings.validate();

    TrustModel static_trust = settings.trust == TrustKind::ET
                                  ? explicit_trust(trust_net, stream.users)
                                  : TrustModel::disabled();

    return run_protocol(stream, k, settings.list_len, [&](const SliceJob& job) -> Ranker {
        auto graph = std::make_shared<RecGraph>(attach_content(
            build_graph(job.train, settings.graph, settings.session_duration), catalog,
            settings.content));
        auto transition = std::make_shared<Transition>(
            transition_matrix(*graph, effective_weights(*graph, job.now, settings.decay)));
        auto trust = settings.trust == TrustKind::IT
                         ? std::make_shared<TrustModel>(implicit_trust(job.train, settings.min_overlap))
                         : std::make_shared<TrustModel>(static_trust);

        return [&job, &stream, &settings, graph, transition, trust](std::size_t s,
                                                                    bool& cold) {
            int user = job.users[s];
            auto restart = personalization_vector(*graph, settings, user, *trust);
            if (!restart) {
                cold = true;
                return popularity_rank(job.train, job.seen[s], settings.list_len);
            }
            auto pr = power_iteration(*transition, *restart, settings.damping, settings.tol,
                                      settings.max_iter);
            return top_items(pr.scores, *graph, job.seen[s], settings.list_len, stream.items);
        };
    });
}

EvalResult evaluate_popularity(const LinkStream& stream, int k, int list_len) {
    return run_protocol(stream, k, list_len, [&](const SliceJob& job) -> Ranker {
        return [&job, list_len](std::size_t s, bool&) {
            return popularity_rank(job.train, job.seen[s], list_len);
        };
    });
}

SearchSpace SearchSpace::defaults() {
    constexpr double day = 86400.0;
    SearchSpace s;
    for (double d : {7.0, 30.0, 90.0, 180.0, 365.0, 540.0, 730.0}) {
        s.session_durations.push_back(static_cast<Timestamp>(d * day));
        s.half_lives.push_back(d * day);
    }
    s.long_term_weights = {0.1, 0.3, 0.5, 0.7, 0.9};
    for (double k : {0.1, 0.5, 1.0, 5.0, 10.0, 50.0, 100.0})
        s.steepnesses.push_back(k / day); // slopes are quoted per day
    s.trust_weights = {0.05, 0.1, 0.15, 0.3, 0.5, 0.7, 0.9};
    s.dampings = {0.05, 0.1, 0.15, 0.3, 0.5, 0.7, 0.9};
    return s;
}

SearchResult random_search(const LinkStream& stream, const ContentCatalog& catalog,
                           const ExplicitTrustNetwork& trust_net, const PPRSettings& base,
                           const SearchSpace& space, int n_samples, std::uint64_t seed,
                           Metric objective, int k) {
    if (n_samples < 1)
        throw ValidationError("samples", "must be at least 1");
    // mt19937_64 plus modulo indexing keeps draws identical across platforms,
    // unlike std::uniform_int_distribution.
    std::mt19937_64 rng(seed);
    auto pick = [&rng](const auto& values) {
        return values[static_cast<std::size_t>(rng() % values.size())];
    };

    SearchResult out;
    out.trials.reserve(static_cast<std::size_t>(n_samples));
    double best_score = -1.0;
    for (int t = 0; t < n_samples; ++t) {
        PPRSettings s = base;
        // Always draw every parameter, in a fixed order, so the sequence of
        // sampled settings does not depend on which ones the combination uses.
        s.session_duration = pick(space.session_durations);
        s.long_term_weight = pick(space.long_term_weights);
        s.decay.half_life = pick(space.half_lives);
        s.decay.steepness = pick(space.steepnesses);
        s.trust_weight = pick(space.trust_weights);
        s.damping = pick(space.dampings);

        Trial trial;
        trial.settings = s;
        trial.result = evaluate(stream, catalog, trust_net, s, k);
        trial.objective = trial.result.ta(objective);
        if (trial.objective > best_score) {
            best_score = trial.objective;
            out.best = t;
        }
        out.trials.push_back(std::move(trial));
    }
    return out;
}

std::string metric_name(Metric m) {
    switch (m) {
    case Metric::F1:
        return "f1";
    case Metric::HitRatio:
        return "hit";
    case Metric::MAP:
        return "map";
    }
    return "?";
}

} // namespace graphrec
