#include "graphrec/stream.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>
#include <string_view>
#include <unordered_map>
#include <unordered_set>

#include <zlib.h>

#include "graphrec/errors.hpp"

namespace graphrec {

namespace {

std::vector<std::string_view> split_fields(std::string_view line, char delimiter) {
    std::vector<std::string_view> out;
    if (delimiter == '\0') {
        std::size_t i = 0;
        while (i < line.size()) {
            while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
                ++i;
            std::size_t start = i;
            while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])))
                ++i;
            if (i > start)
                out.push_back(line.substr(start, i - start));
        }
    } else {
        std::size_t start = 0;
        while (start <= line.size()) {
            std::size_t end = line.find(delimiter, start);
            if (end == std::string_view::npos)
                end = line.size();
            out.push_back(line.substr(start, end - start));
            start = end + 1;
            if (end == line.size())
                break;
        }
    }
    return out;
}

bool blank(std::string_view line) {
    return std::all_of(line.begin(), line.end(),
                       [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
}

double parse_double(std::string_view s, std::size_t line_no, const char* what) {
    double v = 0.0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size())
        throw ParseError(line_no, std::string("bad ") + what + " '" + std::string(s) + "'");
    return v;
}

Timestamp parse_timestamp(std::string_view s, std::size_t line_no) {
    Timestamp v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size())
        throw ParseError(line_no, "bad timestamp '" + std::string(s) + "'");
    return v;
}

std::string read_file(const std::string& path) {
    if (path.size() > 3 && path.compare(path.size() - 3, 3, ".gz") == 0) {
        gzFile f = gzopen(path.c_str(), "rb");
        if (!f)
            throw IoError("cannot open " + path);
        std::string out;
        char buf[1 << 16];
        int n = 0;
        while ((n = gzread(f, buf, sizeof buf)) > 0)
            out.append(buf, static_cast<std::size_t>(n));
        bool failed = n < 0;
        gzclose(f);
        if (failed)
            throw IoError("gzip read failed for " + path);
        return out;
    }
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// ceil(a / b) for a >= 0, b > 0
Timestamp ceil_div(Timestamp a, Timestamp b) {
    return (a + b - 1) / b;
}

} // namespace

const std::vector<int>& ContentCatalog::features_of(int item) const {
    static const std::vector<int> kNone;
    if (item < 0 || item >= static_cast<int>(item_features.size()))
        return kNone;
    return item_features[static_cast<std::size_t>(item)];
}

std::vector<ReviewTuple> parse_reviews(std::istream& in, char delimiter) {
    std::vector<ReviewTuple> tuples;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (blank(line))
            continue;
        auto fields = split_fields(line, delimiter);
        if (fields.size() != 5)
            throw ParseError(line_no, "expected 5 fields (user item feature rating timestamp), got " +
                                          std::to_string(fields.size()));
        ReviewTuple t;
        t.user = std::string(fields[0]);
        t.item = std::string(fields[1]);
        t.feature = std::string(fields[2]);
        t.rating = parse_double(fields[3], line_no, "rating");
        t.time = parse_timestamp(fields[4], line_no);
        if (t.rating < 0.0 || t.rating > 5.0)
            throw ValidationError("rating", "line " + std::to_string(line_no) + ": value " +
                                                std::to_string(t.rating) + " outside [0, 5]");
        if (t.time < 0)
            throw ValidationError("timestamp", "line " + std::to_string(line_no) + ": negative");
        tuples.push_back(std::move(t));
    }
    return tuples;
}

std::vector<ReviewTuple> load_reviews(const std::string& path, char delimiter) {
    std::string content = read_file(path);
    std::istringstream in(content);
    return parse_reviews(in, delimiter);
}

ExplicitTrustNetwork parse_trust(std::istream& in, char delimiter) {
    ExplicitTrustNetwork net;
    std::set<std::pair<std::string, std::string>> seen;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (blank(line))
            continue;
        auto fields = split_fields(line, delimiter);
        if (fields.size() != 2)
            throw ParseError(line_no, "expected 2 fields (truster trustee), got " +
                                          std::to_string(fields.size()));
        if (fields[0] == fields[1])
            continue; // self-trust carries no information
        auto pair = std::make_pair(std::string(fields[0]), std::string(fields[1]));
        if (seen.insert(pair).second)
            net.edges.push_back(std::move(pair));
    }
    return net;
}

ExplicitTrustNetwork load_trust(const std::string& path, char delimiter) {
    std::string content = read_file(path);
    std::istringstream in(content);
    return parse_trust(in, delimiter);
}

IngestStats ingest_stats(const std::vector<ReviewTuple>& tuples) {
    IngestStats s;
    s.tuples = tuples.size();
    std::unordered_set<std::string_view> users, items, features;
    for (const auto& t : tuples) {
        users.insert(t.user);
        items.insert(t.item);
        features.insert(t.feature);
    }
    s.users = users.size();
    s.items = items.size();
    s.features = features.size();
    return s;
}

FilterOutput filter_positive(const std::vector<ReviewTuple>& tuples) {
    // Mean rating per user over the raw data, before anything is removed.
    std::unordered_map<std::string_view, std::pair<double, int>> sums;
    for (const auto& t : tuples) {
        auto& [sum, count] = sums[t.user];
        sum += t.rating;
        ++count;
    }

    std::vector<const ReviewTuple*> kept;
    for (const auto& t : tuples) {
        const auto& [sum, count] = sums[t.user];
        double mean = sum / count;
        if (t.rating >= 2.5 && t.rating >= mean)
            kept.push_back(&t);
    }
    if (kept.empty())
        throw EmptyStreamError("no tuple passed the positive-feedback filter");

    std::sort(kept.begin(), kept.end(), [](const ReviewTuple* a, const ReviewTuple* b) {
        if (a->time != b->time)
            return a->time < b->time;
        if (a->user != b->user)
            return a->user < b->user;
        return a->item < b->item;
    });

    FilterOutput out;
    LinkStream& stream = out.stream;
    ContentCatalog& catalog = out.catalog;
    std::vector<std::set<int>> feats;

    const ReviewTuple* prev = nullptr;
    for (const ReviewTuple* t : kept) {
        int u = stream.users.intern(t->user);
        int i = stream.items.intern(t->item);
        int c = catalog.features.intern(t->feature);
        if (static_cast<std::size_t>(i) >= feats.size())
            feats.resize(static_cast<std::size_t>(i) + 1);
        feats[static_cast<std::size_t>(i)].insert(c);
        bool duplicate = prev && prev->time == t->time && prev->user == t->user && prev->item == t->item;
        if (!duplicate)
            stream.links.push_back({t->time, u, i});
        prev = t;
    }
    stream.t_min = stream.links.front().t;
    stream.t_max = stream.links.back().t;

    catalog.item_features.reserve(feats.size());
    for (auto& f : feats)
        catalog.item_features.emplace_back(f.begin(), f.end());
    return out;
}

std::vector<TimeWindow> slice_time(const LinkStream& stream, int k) {
    if (k < 1)
        throw ValidationError("k", "must be at least 1");
    if (stream.t_max <= stream.t_min)
        throw ValidationError("stream", "t_max must exceed t_min for slicing");
    const Timestamp span = stream.t_max - stream.t_min + 1;
    const Timestamp parts = static_cast<Timestamp>(k) + 1;
    std::vector<TimeWindow> windows;
    windows.reserve(static_cast<std::size_t>(parts));
    for (Timestamp j = 0; j < parts; ++j) {
        // Integer snap of the real boundaries t_min + j*span/parts: an integer
        // timestamp t lies in window j iff j <= (t - t_min)*parts/span < j+1.
        Timestamp begin = stream.t_min + ceil_div(j * span, parts);
        Timestamp end = stream.t_min + ceil_div((j + 1) * span, parts);
        windows.push_back({begin, end});
    }
    return windows;
}

bool degenerate_slicing(const LinkStream& stream, int k) {
    std::size_t distinct = 0;
    Timestamp prev = 0;
    for (std::size_t i = 0; i < stream.links.size(); ++i) {
        if (i == 0 || stream.links[i].t != prev)
            ++distinct;
        prev = stream.links[i].t;
    }
    return distinct < static_cast<std::size_t>(k) + 1;
}

LinkStream prefix_until(const LinkStream& stream, Timestamp end_exclusive) {
    LinkStream out;
    out.users = stream.users;
    out.items = stream.items;
    auto end = std::partition_point(stream.links.begin(), stream.links.end(),
                                    [&](const Link& l) { return l.t < end_exclusive; });
    out.links.assign(stream.links.begin(), end);
    if (!out.links.empty()) {
        out.t_min = out.links.front().t;
        out.t_max = out.links.back().t;
    }
    return out;
}

LinkStream slice_of(const LinkStream& stream, const TimeWindow& window) {
    LinkStream out;
    out.users = stream.users;
    out.items = stream.items;
    auto first = std::partition_point(stream.links.begin(), stream.links.end(),
                                      [&](const Link& l) { return l.t < window.begin; });
    auto last = std::partition_point(first, stream.links.end(),
                                     [&](const Link& l) { return l.t < window.end; });
    out.links.assign(first, last);
    if (!out.links.empty()) {
        out.t_min = out.links.front().t;
        out.t_max = out.links.back().t;
    }
    return out;
}

} // namespace graphrec
