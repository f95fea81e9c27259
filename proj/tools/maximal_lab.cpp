// maximal-lab: dilation-set entropy, endpoint conditions, decompositions,
// operator probes and counterexample constructions from the command line.
//
//   maximal-lab analyze --set set.json --d 2 --nmax 20
//   maximal-lab check --set set.json --d 2 --p 1.5 --condition cpinf
//   maximal-lab decompose --set set.json --k 0 --nmax 16
//   maximal-lab operator --set set.json --d 2 --p 1.5 --eps 1e-2,1e-3,1e-4
//   maximal-lab counterexample cantor --N 4 --a 0.0625
//   maximal-lab counterexample kakeya --n 4 --set set.json
//   maximal-lab theorem-table --d 2

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "maximal/quadrature.hpp"
#include "maximal/regularity.hpp"
#include "maximal/report.hpp"

using namespace maximal;

namespace {

std::vector<double> parse_list(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
    return out;
}

void emit(const Json& report, const std::string& out_path) {
    const std::string text = report.dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(out_path);
        f << text;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"dilation-set invariants and spherical maximal operator probes"};
    app.require_subcommand(1);

    RunOptions opt;
    std::string set_path, out_path, csv_path;
    int d = 2, n_max = 0, k = 0, L_max = 16, N_layers = 4, kakeya_n = 4, stride = 10;
    double p = 1.5, a = 1.0 / 16.0, grid_h = 0.0;
    std::string q_text = "inf", condition = "cpinf", eps_text = "1e-2,1e-3,1e-4";
    double weight_eps = 0.1;
    std::int64_t samples = 20000;

    app.add_option("--threads", opt.threads, "cap OpenMP threads (0 = default)");
    app.add_option("--seed", opt.seed, "RNG seed (env MAXIMAL_LAB_SEED overrides)");
    app.add_flag("--paper-defaults", opt.paper_defaults,
                 "pin truncations/tolerances to the canonical values");
    app.add_flag("!--no-timing", opt.with_timing, "omit timing from the report");

    auto* analyze = app.add_subcommand("analyze", "entropy profile and critical exponent");
    analyze->add_option("--set", set_path, "set descriptor JSON")->required();
    analyze->add_option("--d", d, "ambient dimension");
    analyze->add_option("--nmax", n_max, "resolution depth");
    analyze->add_option("--out", out_path, "report path (default stdout)");
    analyze->add_option("--csv", csv_path, "profile CSV path");

    auto* check = app.add_subcommand("check", "evaluate an endpoint condition");
    check->add_option("--set", set_path)->required();
    check->add_option("--d", d);
    check->add_option("--p", p);
    check->add_option("--q", q_text, "q exponent or 'inf'");
    check->add_option("--condition", condition,
                      "cpq|cpinf|prop12|carleson|eq113|eq114|rp|rtilde");
    check->add_option("--nmax", n_max);
    check->add_option("--eps", weight_eps, "weight spectral margin");
    check->add_option("--Lmax", L_max, "largest tent length (carleson)");
    check->add_option("--out", out_path);

    auto* decompose = app.add_subcommand("decompose", "equally spaced families of a block");
    decompose->add_option("--set", set_path)->required();
    decompose->add_option("--k", k);
    decompose->add_option("--nmax", n_max);
    decompose->add_option("--out", out_path);

    std::string probe = "smallball";
    auto* op = app.add_subcommand("operator", "small-ball maximal operator probe");
    op->add_option("--set", set_path)->required();
    op->add_option("--d", d);
    op->add_option("--p", p);
    op->add_option("--probe", probe, "probe kind (smallball)");
    op->add_option("--eps", eps_text, "comma-separated ball radii");
    op->add_option("--out", out_path);

    auto* cex = app.add_subcommand("counterexample", "counterexample constructions");
    cex->require_subcommand(1);
    auto* cex_cantor = cex->add_subcommand("cantor", "layered test function probe");
    cex_cantor->add_option("--N", N_layers, "number of layers");
    cex_cantor->add_option("--a", a, "ball radius factor");
    cex_cantor->add_option("--h", grid_h, "raster pitch (default a*4^-N/4)");
    cex_cantor->add_option("--samples", samples, "field sample count");
    cex_cantor->add_option("--out", out_path);
    auto* cex_kakeya = cex->add_subcommand("kakeya", "thin-rectangle tangency probe");
    cex_kakeya->add_option("--n", kakeya_n, "direction scale (2^n directions)");
    cex_kakeya->add_option("--set", set_path)->required();
    cex_kakeya->add_option("--stride", stride, "interval/rectangle selection stride");
    cex_kakeya->add_option("--out", out_path);

    auto* table = app.add_subcommand("theorem-table", "predicted vs measured exponents");
    table->add_option("--d", d);
    table->add_option("--out", out_path);

    CLI11_PARSE(app, argc, argv);

    if (const char* env_seed = std::getenv("MAXIMAL_LAB_SEED"))
        opt.seed = std::strtoull(env_seed, nullptr, 10);

    try {
        Json report;
        if (*analyze) {
            if (n_max <= 0) n_max = opt.paper_defaults ? 20 : 16;
            report = run_analyze(set_from_descriptor_file(set_path), d, n_max, opt, csv_path);
        } else if (*check) {
            if (n_max <= 0) n_max = opt.paper_defaults ? 24 : 16;
            if (opt.paper_defaults && condition == "carleson") n_max = std::max(n_max, L_max);
            const double q = q_text == "inf" ? std::numeric_limits<double>::infinity()
                                             : std::stod(q_text);
            report = run_check(set_from_descriptor_file(set_path), d, p, q, condition, n_max,
                               weight_eps, L_max, opt);
        } else if (*decompose) {
            if (n_max <= 0) n_max = 16;
            report = run_decompose(set_from_descriptor_file(set_path), k, n_max, opt);
        } else if (*op) {
            report = run_operator(set_from_descriptor_file(set_path), d, p,
                                  parse_list(eps_text), opt);
        } else if (*cex_cantor) {
            if (grid_h <= 0) grid_h = a * std::pow(4.0, -N_layers) / 4.0;
            report = run_counterexample_cantor(N_layers, a, grid_h, samples, opt);
        } else if (*cex_kakeya) {
            report = run_counterexample_kakeya(set_from_descriptor_file(set_path), kakeya_n,
                                               opt, stride);
        } else if (*table) {
            report = run_theorem_table(d, opt);
        }
        emit(report, out_path);
        return exit_code_for(report);
    } catch (const ResolutionError& ex) {
        std::cerr << "error [dilation_set]: " << ex.what() << "\n";
    } catch (const QuadratureError& ex) {
        std::cerr << "error [quadrature]: " << ex.what() << " (residual " << ex.residual
                  << ")\n";
    } catch (const ConvexityError& ex) {
        std::cerr << "error [regularity]: " << ex.what() << " at (" << ex.triple[0] << ", "
                  << ex.triple[1] << ", " << ex.triple[2] << ")\n";
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
    }
    return 1;
}
