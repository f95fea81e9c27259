#include "maximal/dilation_set.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace maximal {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMaxIndex = 9.007199254740992e15;  // 2^53: beyond this, indices blur in doubles
constexpr std::int64_t kWalkCap = 1 << 26;

double ldexp2(double x, int k) { return std::ldexp(x, k); }

// Largest integer index n >= nu_min with g(n) > rel, or -1 if none, or +inf
// when the index exceeds 2^53 (offsets denser than machine precision there).
// Uses the closed-form inverse as a hint, with a doubling+bisection fallback.
double largest_index_above(const std::function<double(double)>& g,
                           const std::function<double(double)>& inv,
                           double nu_min, double rel) {
    if (!(g(nu_min) > rel)) return -1.0;
    double hint = inv(rel);
    if (!(hint < kMaxIndex)) return kInf;
    double n = std::floor(hint);
    if (n < nu_min) n = nu_min;
    for (int step = 0; step < 8; ++step) {
        if (g(n) > rel && !(g(n + 1) > rel)) return n;
        if (g(n) > rel)
            n += 1;
        else
            n -= 1;
        if (n < nu_min) n = nu_min;
    }
    // fallback: exact bisection on [lo, hi] with g(lo) > rel >= g(hi)
    double lo = nu_min, hi = std::max(nu_min + 1.0, 2.0 * std::floor(hint) + 2.0);
    while (g(hi) > rel) {
        lo = hi;
        hi *= 2;
        if (!(hi < kMaxIndex)) return kInf;
    }
    while (hi - lo > 1.0) {
        double mid = std::floor(0.5 * (lo + hi));
        if (mid <= lo) break;
        (g(mid) > rel ? lo : hi) = mid;
    }
    return lo;
}

} // namespace

// ---------------------------------------------------------------------------
// GeneratorSpec index arithmetic
// ---------------------------------------------------------------------------

double GeneratorSpec::tail_index(double rel) const {
    if (!(rel > 0)) throw ResolutionError("tail_index requires a positive resolution");
    double n = largest_index_above(offset, inverse_offset, nu_min, rel);
    if (n == kInf) return kInf;
    if (n < 0) return nu_min;  // already g(nu_min) <= rel... smallest index with g < rel
    // n is the largest index with g(n) > rel; handle possible g(n+1) == rel
    double m = n + 1;
    while (offset(m) >= rel) m += 1;
    return m;
}

double GeneratorSpec::largest_offset_below(double rel) const {
    double n = tail_index(rel);
    if (n == kInf) {
        // indices blur: the offsets form a continuum at machine precision
        return std::nextafter(rel, 0.0);
    }
    return offset(n);
}

double GeneratorSpec::smallest_offset_above(double rel) const {
    if (rel < 0) rel = 0;
    double n = largest_index_above(offset, inverse_offset, nu_min, rel);
    if (n == kInf) return std::nextafter(rel, kInf);
    if (n < 0) return -1.0;  // no set point above rel inside the block
    return offset(n);
}

// ---------------------------------------------------------------------------
// block()
// ---------------------------------------------------------------------------

namespace {

ResolvedSet resolve_explicit(const DilationSet& set, int k) {
    ResolvedSet out;
    if (set.periodic) {
        // base points live in [1,2); block k is the base scaled by 2^k (exact)
        const double scale = ldexp2(1.0, k);
        for (double p : set.points)
            if (p >= 1.0 && p < 2.0) out.items.push_back({scale * p, scale * p, ItemKind::point});
    } else {
        const double lo = ldexp2(1.0, k), hi = ldexp2(1.0, k + 1);
        for (double p : set.points)
            if (p >= lo && p < hi) out.items.push_back({p, p, ItemKind::point});
    }
    return out;
}

// One generator block, in relative coordinates on [1,2), then scaled by 2^k.
ResolvedSet resolve_generator(const GeneratorSpec& g, int k, double delta_cert) {
    const double scale = ldexp2(1.0, k);
    const double rel_thresh = delta_cert / scale;

    ResolvedSet out;
    out.certified_resolution = delta_cert;

    std::vector<double> sparse;
    double nu = g.nu_min;
    double cur = g.offset(nu);
    if (!(cur > 0) || !(cur < 1.0 + 1e-12))
        throw ResolutionError("generator first offset outside (0,1]");
    std::int64_t walked = 0;
    double dense_top_rel = cur;  // top of the dense run if no sparse points
    while (true) {
        double nxt = g.offset(nu + 1);
        if (!(nxt < cur))
            throw ResolutionError("generator offsets are not strictly decreasing");
        if (cur - nxt < rel_thresh) {
            dense_top_rel = cur;
            break;
        }
        sparse.push_back(cur);
        cur = nxt;
        nu += 1;
        if (++walked > kWalkCap)
            throw ResolutionError("generator walk exceeded cap; resolution too fine");
    }

    // dense run [L, t_dense_top]: all remaining points plus the limit
    out.items.push_back({scale, scale * (1.0 + dense_top_rel), ItemKind::dense});
    for (auto it = sparse.rbegin(); it != sparse.rend(); ++it)
        out.items.push_back({scale * (1.0 + *it), scale * (1.0 + *it), ItemKind::point});

    GeneratorSpec spec = g;
    out.next_above = [spec, scale](double x) {
        double rel = x / scale - 1.0;
        double up = spec.smallest_offset_above(rel);
        if (up < 0) return std::numeric_limits<double>::infinity();
        return scale * (1.0 + up);
    };
    return out;
}

ResolvedSet resolve_cantor(const CantorParams& c, int k, double delta_cert, bool periodic) {
    const double scale = periodic ? ldexp2(1.0, k) : 1.0;
    const double span = c.hi - c.lo;
    const double target = delta_cert / scale / 4.0;

    int depth = 0;
    double cell = span;
    while (cell >= target) {
        ++depth;
        cell *= c.ratio;
        if (depth > c.max_depth)
            throw ResolutionError(
                "cantor depth cap " + std::to_string(c.max_depth) +
                " cannot certify resolution " + std::to_string(delta_cert));
    }

    std::vector<std::pair<double, double>> cells{{0.0, 1.0}};
    for (int d = 0; d < depth; ++d) {
        std::vector<std::pair<double, double>> next;
        next.reserve(cells.size() * c.offsets.size());
        for (double o : c.offsets)
            for (const auto& [a, b] : cells) next.push_back({o + c.ratio * a, o + c.ratio * b});
        cells = std::move(next);
    }
    std::sort(cells.begin(), cells.end());

    ResolvedSet out;
    out.certified_resolution = delta_cert;
    out.items.reserve(cells.size());
    for (const auto& [a, b] : cells)
        out.items.push_back({scale * (c.lo + span * a), scale * (c.lo + span * b), ItemKind::cell});
    return out;
}

} // namespace

ResolvedSet block(const DilationSet& set, int k, double delta_cert) {
    if (!(delta_cert > 0)) throw ResolutionError("delta_cert must be positive");
    if (!set.contains_block(k)) return {};

    switch (set.kind) {
        case SetKind::explicit_finite:
            return resolve_explicit(set, k);
        case SetKind::generator:
            return resolve_generator(set.gen, k, delta_cert);
        case SetKind::cantor:
            return resolve_cantor(set.cantor, k, delta_cert, set.periodic);
        case SetKind::full_block: {
            ResolvedSet out;
            out.items.push_back({ldexp2(1.0, k), ldexp2(1.0, k + 1), ItemKind::interval});
            return out;
        }
    }
    return {};
}

// ---------------------------------------------------------------------------
// standard sets
// ---------------------------------------------------------------------------

DilationSet make_power_set(double alpha) {
    if (!(alpha > 0)) throw std::invalid_argument("power set needs alpha > 0");
    DilationSet s;
    s.kind = SetKind::generator;
    s.periodic = true;
    s.k_range.all = true;
    s.name = "power(alpha=" + std::to_string(alpha) + ")";
    s.gen.offset = [alpha](double nu) { return std::pow(nu, -alpha); };
    s.gen.inverse_offset = [alpha](double rel) { return std::pow(rel, -1.0 / alpha); };
    s.gen.nu_min = 2;           // nu = 1 gives offset 1, i.e. the next block's left edge
    s.gen.limit_in_set = true;  // 2^k = 2^(k-1) * (1 + 1^-alpha)
    return s;
}

DilationSet make_log_set(double beta) {
    if (!(beta > 0)) throw std::invalid_argument("log set needs beta > 0");
    DilationSet s;
    s.kind = SetKind::generator;
    s.periodic = true;
    s.k_range.all = true;
    s.name = "log(beta=" + std::to_string(beta) + ")";
    s.gen.offset = [beta](double nu) { return std::pow(std::log(2.0 + nu), -beta); };
    s.gen.inverse_offset = [beta](double rel) {
        double e = std::pow(rel, -1.0 / beta);
        if (e > 700.0) return std::numeric_limits<double>::infinity();
        return std::exp(e) - 2.0;
    };
    s.gen.nu_min = 1;  // log(3) > 1, so every nu >= 1 lies inside the block
    s.gen.limit_in_set = false;
    return s;
}

DilationSet make_lacunary_set() {
    DilationSet s;
    s.kind = SetKind::explicit_finite;
    s.periodic = true;
    s.k_range.all = true;
    s.name = "lacunary";
    s.points = {1.0};
    return s;
}

DilationSet make_full_set() {
    DilationSet s;
    s.kind = SetKind::full_block;
    s.periodic = true;
    s.k_range.all = true;
    s.name = "full";
    return s;
}

DilationSet make_explicit_set(std::vector<double> pts) {
    std::sort(pts.begin(), pts.end());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (!(pts[i] > 0)) throw std::invalid_argument("explicit radii must be positive");
        if (i && !(pts[i] > pts[i - 1]))
            throw std::invalid_argument("explicit radii must be strictly increasing");
    }
    DilationSet s;
    s.kind = SetKind::explicit_finite;
    s.name = "explicit";
    s.points = std::move(pts);
    if (!s.points.empty()) {
        s.k_range.lo = static_cast<int>(std::floor(std::log2(s.points.front())));
        s.k_range.hi = static_cast<int>(std::floor(std::log2(s.points.back())));
    }
    return s;
}

DilationSet make_cantor_set(double ratio, std::vector<double> offsets, int depth,
                            double lo, double hi) {
    if (!(ratio > 0 && ratio <= 0.5)) throw std::invalid_argument("cantor ratio must be in (0, 1/2]");
    if (!(hi > lo) || !(lo > 0)) throw std::invalid_argument("cantor base must be a positive interval");
    std::sort(offsets.begin(), offsets.end());
    for (std::size_t i = 0; i < offsets.size(); ++i) {
        if (offsets[i] < 0 || offsets[i] > 1 - ratio + 1e-12)
            throw std::invalid_argument("cantor offsets must lie in [0, 1-ratio]");
        if (i && offsets[i] - offsets[i - 1] < ratio - 1e-12)
            throw std::invalid_argument("cantor offsets closer than the contraction ratio overlap");
    }
    DilationSet s;
    s.kind = SetKind::cantor;
    s.periodic = (lo == 1.0);  // periodic tiling only meaningful for a base anchored at 1
    s.k_range.all = s.periodic;
    s.name = "cantor";
    s.cantor = {lo, hi, ratio, std::move(offsets), depth};
    return s;
}

DilationSet make_middle_third_set(int depth) {
    auto s = make_cantor_set(1.0 / 3.0, {0.0, 2.0 / 3.0}, depth);
    s.name = "cantor-middle-third";
    return s;
}

DilationSet make_middle_halves_set(int depth, double lo, double hi) {
    auto s = make_cantor_set(0.25, {0.0, 0.75}, depth, lo, hi);
    s.name = "cantor-middle-halves";
    return s;
}

// ---------------------------------------------------------------------------
// descriptors
// ---------------------------------------------------------------------------

DilationSet set_from_descriptor(const std::string& json_text) {
    nlohmann::json j = nlohmann::json::parse(json_text);
    const std::string type = j.at("type").get<std::string>();

    DilationSet s;
    if (type == "power") {
        s = make_power_set(j.at("alpha").get<double>());
    } else if (type == "log") {
        s = make_log_set(j.at("beta").get<double>());
    } else if (type == "cantor") {
        double ratio = j.value("ratio", 1.0 / 3.0);
        std::vector<double> offs = j.value("offsets", std::vector<double>{0.0, 2.0 / 3.0});
        int depth = j.value("depth", 20);
        s = make_cantor_set(ratio, offs, depth);
    } else if (type == "lacunary") {
        s = make_lacunary_set();
    } else if (type == "full") {
        s = make_full_set();
    } else if (type == "explicit") {
        s = make_explicit_set(j.at("points").get<std::vector<double>>());
    } else {
        throw std::invalid_argument("unknown set type '" + type + "'");
    }

    if (j.contains("k_range")) {
        const auto& kr = j["k_range"];
        if (kr.is_string() && kr.get<std::string>() == "all") {
            if (!s.periodic) throw std::invalid_argument("k_range 'all' requires a periodic set");
        } else if (kr.is_array() && kr.size() == 2) {
            s.k_range.all = false;
            s.k_range.lo = kr[0].get<int>();
            s.k_range.hi = kr[1].get<int>();
        } else {
            throw std::invalid_argument("k_range must be [lo,hi] or \"all\"");
        }
    }
    return s;
}

DilationSet set_from_descriptor_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open set descriptor '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return set_from_descriptor(ss.str());
}

std::string set_to_descriptor(const DilationSet& set) {
    nlohmann::ordered_json j;
    switch (set.kind) {
        case SetKind::explicit_finite:
            j["type"] = set.periodic ? "lacunary" : "explicit";
            if (!set.periodic) j["points"] = set.points;
            break;
        case SetKind::generator:
            // name carries the parameters; descriptors for generators round-trip
            // through the standard constructors
            j["type"] = set.name.rfind("power", 0) == 0 ? "power" : "log";
            break;
        case SetKind::cantor:
            j["type"] = "cantor";
            j["ratio"] = set.cantor.ratio;
            j["offsets"] = set.cantor.offsets;
            j["depth"] = set.cantor.max_depth;
            break;
        case SetKind::full_block:
            j["type"] = "full";
            break;
    }
    if (set.k_range.all)
        j["k_range"] = "all";
    else
        j["k_range"] = {set.k_range.lo, set.k_range.hi};
    j["name"] = set.name;
    return j.dump();
}

} // namespace maximal
