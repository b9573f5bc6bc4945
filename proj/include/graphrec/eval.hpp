#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "graphrec/ppr.hpp"
#include "graphrec/stream.hpp"

namespace graphrec {

enum class Metric { F1, HitRatio, MAP };

/// One slice's contribution to a metric: the time-averaged value across
/// slices is sum(num)/sum(deno), never the mean of per-slice ratios.
struct MetricPair {
    double num = 0.0;
    double deno = 0.0;

    MetricPair& operator+=(const MetricPair& o) {
        num += o.num;
        deno += o.deno;
        return *this;
    }
    double ratio() const { return deno > 0.0 ? num / deno : 0.0; }
};

/// F1 contribution of one user: (2 * hits, new_items + n).
MetricPair f1_contrib(int hits, int new_items, int n);

/// Hit-ratio contribution: (1 if any hit, 1).
MetricPair hit_contrib(int hits);

/// Average-precision contribution: (AP, 1), AP = 0 when nothing hit.
/// `hit_flags[r]` marks whether the recommendation at rank r+1 was good.
MetricPair ap_contrib(const std::vector<bool>& hit_flags);

struct SliceMetrics {
    MetricPair f1, hit, ap;
    int users = 0; // evaluated users in this slice
    int cold = 0;  // of which fell back to the popularity ranker
};

struct EvalResult {
    std::vector<SliceMetrics> slices;
    bool degenerate = false; // fewer distinct timestamps than windows

    double ta(Metric m) const;
    int users_total() const;
    int cold_total() const;
};

/// The k+1-window protocol: for each of the first k windows, train on that
/// window and everything before it, recommend to every user with at least one
/// new item in the next window, and score the list against those new items.
EvalResult evaluate(const LinkStream& stream, const ContentCatalog& catalog,
                    const ExplicitTrustNetwork& trust_net, const PPRSettings& settings, int k);

/// Same protocol with the popularity baseline as the ranker.
EvalResult evaluate_popularity(const LinkStream& stream, int k, int list_len);

/// Candidate values for the tunable parameters, in timestamp units.
struct SearchSpace {
    std::vector<Timestamp> session_durations;
    std::vector<double> long_term_weights;
    std::vector<double> half_lives;
    std::vector<double> steepnesses; // per timestamp unit
    std::vector<double> trust_weights;
    std::vector<double> dampings;

    /// The standard day-based grid, converted to seconds.
    static SearchSpace defaults();
};

struct Trial {
    PPRSettings settings;
    EvalResult result;
    double objective = 0.0;
};

struct SearchResult {
    int best = -1;
    std::vector<Trial> trials;

    const Trial& best_trial() const { return trials.at(static_cast<std::size_t>(best)); }
};

/// Draws n_samples settings (each parameter sampled independently and
/// uniformly from its candidate list), evaluates each, and returns the one
/// maximizing `objective`. Fully deterministic under `seed`.
SearchResult random_search(const LinkStream& stream, const ContentCatalog& catalog,
                           const ExplicitTrustNetwork& trust_net, const PPRSettings& base,
                           const SearchSpace& space, int n_samples, std::uint64_t seed,
                           Metric objective, int k);

std::string metric_name(Metric m);

} // namespace graphrec
