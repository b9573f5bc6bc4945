#pragma once

#include <vector>

#include "graphrec/graph.hpp"

namespace graphrec {

/// How content-feature nodes attach: to items only (CI) or additionally to the
/// user side, i.e. users for BIP, sessions for STG, temporal users for LSG (CIU).
enum class ContentMode { None, CI, CIU };

enum class DecayKind { None, EDF, LDF };

/// Edge-age decay. `half_life` and `steepness` are expressed in the timestamp
/// unit (seconds); day-based configuration is converted before reaching here.
struct DecaySpec {
    DecayKind kind = DecayKind::None;
    double half_life = 0.0; // EDF half-life, LDF sigmoid midpoint
    double steepness = 0.0; // LDF slope

    static DecaySpec none() { return {}; }
    static DecaySpec edf(double half_life) { return {DecayKind::EDF, half_life, 0.0}; }
    static DecaySpec ldf(double steepness, double half_life) {
        return {DecayKind::LDF, half_life, steepness};
    }
};

/// exp(-age * ln 2 / half_life): weight halves every half_life.
double edf(double age, double half_life);

/// 1 - 1/(exp(-steepness * (age - midpoint)) + 1): sigmoid through 0.5 at the
/// midpoint. Clamped to the smallest positive double so weights never vanish.
double ldf(double age, double steepness, double midpoint);

double decay_factor(double age, const DecaySpec& spec);

/// Returns a copy of `graph` with content nodes and arcs added per `mode`.
/// Content arcs inherit the max event time of the item arcs that induced them.
RecGraph attach_content(const RecGraph& graph, const ContentCatalog& catalog, ContentMode mode);

/// Per-arc weights at time `now`: decay(now - event_time) * base_weight,
/// aligned with graph.arcs. Throws TemporalCausalityError if any arc is newer
/// than `now`.
std::vector<double> effective_weights(const RecGraph& graph, Timestamp now, const DecaySpec& decay);

} // namespace graphrec
