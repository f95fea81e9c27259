#include "maximal/report.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>

#include "maximal/counterexamples.hpp"
#include "maximal/regularity.hpp"
#include "maximal/spherical.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace maximal {

const char* kVersion = "maximal-lab 1.0.0";

namespace {

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                         start_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

void apply_threads(const RunOptions& opt) {
#ifdef _OPENMP
    if (opt.threads > 0) omp_set_num_threads(opt.threads);
#else
    (void)opt;
#endif
}

Json header(const DilationSet& set, const RunOptions& opt) {
    Json j;
    j["version"] = kVersion;
    j["set"] = Json::parse(set_to_descriptor(set));
    j["seed"] = opt.seed;
    return j;
}

void stamp_timing(Json& j, const Stopwatch& sw, const RunOptions& opt) {
    if (opt.with_timing) j["timing_ms"] = sw.ms();
}

} // namespace

Json verdict_to_json(const ConditionVerdict& v) {
    Json j;
    j["condition"] = v.condition_id;
    j["value"] = v.truncated_value;
    j["trend"] = v.trend;
    j["verdict"] = to_string(v.verdict);
    j["witness"] = Json{{"k", v.witness.k}, {"n", v.witness.n}, {"term", v.witness.term}};
    return j;
}

void write_profile_csv(const EntropyProfile& prof, const std::string& path) {
    std::ofstream out(path);
    out << "k,n,N\n";
    for (std::size_t ki = 0; ki < prof.table.size(); ++ki)
        for (int n = 0; n <= prof.n_max; ++n)
            out << prof.ks[ki] << "," << n << ","
                << prof.table[ki][static_cast<std::size_t>(n)] << "\n";
}

Json run_analyze(const DilationSet& set, int d, int n_max, const RunOptions& opt,
                 const std::string& csv_path) {
    Stopwatch sw;
    apply_threads(opt);
    Json j = header(set, opt);
    j["command"] = "analyze";
    j["d"] = d;
    j["n_max"] = n_max;

    const EntropyProfile prof = profile(set, d, n_max);
    const CriticalExponentEstimate est = critical_exponent(prof);
    j["p_estimate"] = est.p_estimate;
    j["sup_ratio"] = est.sup_ratio;
    j["slope_fit"] = est.slope_fit;
    j["residual"] = est.residual;
    j["converged"] = est.converged;

    Json tbl = Json::array();
    for (std::size_t ki = 0; ki < prof.table.size(); ++ki)
        for (int n = 0; n <= prof.n_max; ++n)
            tbl.push_back(Json{{"k", prof.ks[ki]},
                               {"n", n},
                               {"N", prof.table[ki][static_cast<std::size_t>(n)]}});
    j["profile"] = tbl;
    if (!csv_path.empty()) {
        write_profile_csv(prof, csv_path);
        j["csv"] = csv_path;
    }
    stamp_timing(j, sw, opt);
    return j;
}

Json run_check(const DilationSet& set, int d, double p, double q,
               const std::string& condition, int n_max, double eps, int L_max,
               const RunOptions& opt) {
    Stopwatch sw;
    apply_threads(opt);
    Json j = header(set, opt);
    j["command"] = "check";
    j["d"] = d;
    j["p"] = p;
    j["q"] = std::isinf(q) ? Json("inf") : Json(q);
    j["n_max"] = n_max;
    j["condition"] = condition;

    const Exponents e(d, p, q);
    const EntropyProfile prof = profile(set, d, n_max);

    ConditionVerdict v;
    if (condition == "cpq") {
        v = check_Cpq(prof, e);
    } else if (condition == "cpinf") {
        v = check_Cp_inf(prof, e);
    } else if (condition == "prop12") {
        const WeightSequence w = make_weights(p, eps);
        v = check_prop12(prof, e, w);
        j["eps"] = eps;
    } else if (condition == "carleson") {
        v = check_carleson(prof, e, L_max);
        j["L_max"] = L_max;
    } else if (condition == "eq113") {
        v = check_logbound(prof, e, LogBoundVariant::eq113);
    } else if (condition == "eq114") {
        v = check_logbound(prof, e, LogBoundVariant::eq114);
    } else if (condition == "rp") {
        const WeightSequence w = make_weights(p, eps);
        const RegularityReport rr = check_R_p(set, prof, e, w, n_max);
        v = rr.verdict;
        j["C0"] = rr.C0;
        j["C1"] = rr.C1;
        j["endpoint_entropy_slope"] = rr.endpoint_entropy_slope;
    } else if (condition == "rtilde") {
        const WeightSequence w = make_weights(p, eps);
        const RegularityReport rr = check_R_tilde(set, prof, e, w, n_max);
        v = rr.verdict;
        j["C1"] = rr.C1;
    } else {
        throw std::invalid_argument("unknown condition '" + condition + "'");
    }
    j["result"] = verdict_to_json(v);
    stamp_timing(j, sw, opt);
    return j;
}

Json run_decompose(const DilationSet& set, int k, int n_max, const RunOptions& opt) {
    Stopwatch sw;
    apply_threads(opt);
    Json j = header(set, opt);
    j["command"] = "decompose";
    j["k"] = k;
    j["n_max"] = n_max;

    const EquallySpacedDecomposition dec =
        decompose_convex(set, k, std::ldexp(1.0, k - n_max));
    j["deviation"] = dec.deviation;
    Json fams = Json::array();
    for (const auto& f : dec.families)
        fams.push_back(Json{{"mu", f.mu},
                            {"width", f.width},
                            {"card", f.card},
                            {"a", f.a},
                            {"b", f.b},
                            {"tail", f.synthetic_tail}});
    j["families"] = fams;
    j["endpoints"] = dec.endpoint_set;

    // endpoint entropy table N(D^k, 2^(k-j))
    Json ent = Json::array();
    ResolvedSet d_res;
    for (double pt : dec.endpoint_set) d_res.items.push_back({pt, pt, ItemKind::point});
    for (int jj = 0; jj <= n_max; ++jj)
        ent.push_back(Json{{"j", jj},
                           {"N", entropy_number(d_res, std::ldexp(1.0, k - jj))}});
    j["endpoint_entropy"] = ent;
    stamp_timing(j, sw, opt);
    return j;
}

Json run_operator(const DilationSet& set, int d, double p,
                  const std::vector<double>& eps_list, const RunOptions& opt) {
    Stopwatch sw;
    apply_threads(opt);
    Json j = header(set, opt);
    j["command"] = "operator";
    j["d"] = d;
    j["p"] = p;
    j["probe"] = "smallball";

    const SmallBallProbe probe = weak_type_ratio_probe(set, d, p, eps_list);
    Json rows = Json::array();
    for (std::size_t i = 0; i < probe.eps.size(); ++i)
        rows.push_back(Json{{"eps", probe.eps[i]}, {"ratio", probe.ratio[i]}});
    j["rows"] = rows;
    j["slope"] = probe.slope;
    stamp_timing(j, sw, opt);
    return j;
}

Json run_counterexample_cantor(int N, double a, double grid_h, std::int64_t samples,
                               const RunOptions& opt) {
    Stopwatch sw;
    apply_threads(opt);
    Json j;
    j["version"] = kVersion;
    j["command"] = "counterexample-cantor";
    j["seed"] = opt.seed;

    const CantorCexReport rep = cantor_counterexample(N, a, grid_h, samples, opt.seed);
    j["N"] = rep.N;
    j["a"] = rep.a;
    j["grid_h"] = rep.grid_h;
    j["samples"] = rep.samples;
    j["f_norm32"] = rep.f_norm32;
    j["f_norm32_rings"] = rep.f_norm32_rings;
    j["weak_norm"] = rep.weak_norm;
    j["ratio"] = rep.ratio;
    j["threshold_c"] = rep.threshold_c;
    j["meas_above"] = rep.meas_above;
    stamp_timing(j, sw, opt);
    return j;
}

Json run_counterexample_kakeya(const DilationSet& set, int n, const RunOptions& opt,
                               int stride) {
    Stopwatch sw;
    apply_threads(opt);
    Json j = header(set, opt);
    j["command"] = "counterexample-kakeya";
    j["n"] = n;
    j["stride"] = stride;

    const KakeyaProbeReport rep = restricted_weak_type_probe(set, n, 1.0, opt.seed, stride);
    j["applicable"] = rep.applicable;
    j["N_dyadic"] = rep.N_dyadic;
    j["B"] = rep.B;
    if (rep.applicable) {
        j["area"] = rep.area;
        j["area_upper_ci"] = rep.area_upper_ci;
        j["translates_disjoint"] = rep.translates_disjoint;
        j["weak_lower"] = rep.weak_lower;
        j["chi_l21"] = rep.chi_l21;
        j["ratio"] = rep.ratio;
        j["ratio_over_sqrtB"] = rep.ratio_over_sqrtB;
        j["min_rect_fraction"] = rep.min_rect_fraction;
        j["threshold_c"] = rep.threshold_c;
    } else {
        j["note"] = "construction inapplicable (B below threshold)";
    }
    stamp_timing(j, sw, opt);
    return j;
}

Json run_theorem_table(int d, const RunOptions& opt) {
    Stopwatch sw;
    apply_threads(opt);
    Json j;
    j["version"] = kVersion;
    j["command"] = "theorem-table";
    j["d"] = d;
    j["seed"] = opt.seed;

    struct Row {
        DilationSet set;
        double predicted;
    };
    std::vector<Row> rows;
    rows.push_back({make_lacunary_set(), 1.0});
    rows.push_back({make_full_set(), static_cast<double>(d) / (d - 1)});
    for (double alpha : {0.5, 1.0, 2.0})
        rows.push_back({make_power_set(alpha), 1.0 + 1.0 / ((d - 1) * (alpha + 1))});
    rows.push_back({make_log_set(2.0), static_cast<double>(d) / (d - 1)});
    rows.push_back(
        {make_middle_third_set(14), 1.0 + std::log(2.0) / std::log(3.0) / (d - 1)});

    Json out = Json::array();
    for (const auto& row : rows) {
        const int n_max = row.set.kind == SetKind::cantor ? 18 : 20;
        const EntropyProfile prof = profile(row.set, d, n_max);
        const CriticalExponentEstimate est = critical_exponent(prof);
        Json r;
        r["set"] = row.set.name;
        r["predicted"] = row.predicted;
        r["measured"] = est.p_estimate;
        r["converged"] = est.converged;

        // condition verdicts at predicted +- 0.1 (clipped to the valid p range)
        const double eps_margin = 0.1;
        for (int sign = -1; sign <= 1; sign += 2) {
            const double p = row.predicted + sign * eps_margin;
            const char* key = sign < 0 ? "cpinf_below" : "cpinf_above";
            if (p > 1.0 && p <= 2.0) {
                const Exponents e(d, p, std::numeric_limits<double>::infinity());
                r[key] = to_string(check_Cp_inf(prof, e).verdict);
            } else {
                r[key] = "n/a";
            }
        }
        out.push_back(r);
    }
    j["rows"] = out;
    stamp_timing(j, sw, opt);
    return j;
}

int exit_code_for(const Json& report) {
    bool inconclusive = false;
    std::function<void(const Json&)> walk = [&](const Json& node) {
        if (node.is_string() && node.get<std::string>() == "Inconclusive") inconclusive = true;
        if (node.is_object() || node.is_array())
            for (const auto& child : node) walk(child);
    };
    walk(report);
    return inconclusive ? 2 : 0;
}

} // namespace maximal
