// fracadapt: run the adaptive L1 experiments from the command line.
//
//   fracadapt run --example 1 --alpha 0.4 --tol 1e-3 --barrier r0 --mesh adaptive --out out/ex1
//   fracadapt sweep --example 1 --alpha 0.4 --tols 1e-2,1e-3,1e-4 --out out/sweep
//   fracadapt run --config run.json --tol 1e-4

#include "fracadapt/csv.hpp"
#include "fracadapt/errors.hpp"
#include "fracadapt/experiments.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

struct Flags {
    std::string config;
    int example = 1;
    double alpha = 0.4;
    double tol = 1e-3;
    std::string barrier = "r0";
    std::string mesh = "adaptive";
    std::string out;
    double mu = 10.0;
    double c1 = 0.5;
    int N = 128;
    int M = 64;
    int reference_scale = 8;
    int estimator_n_sub = 15;
    bool oscillating = false;
    std::string norm = "l2";
};

struct Options {
    CLI::Option *config, *example, *alpha, *tol, *barrier, *mesh, *out, *mu, *c1, *N, *M,
        *reference_scale, *estimator, *oscillating, *norm;
};

Options add_common(CLI::App* app, Flags& f) {
    Options o{};
    o.config = app->add_option("--config", f.config, "JSON run configuration; flags override it")
                   ->check(CLI::ExistingFile);
    o.example = app->add_option("--example", f.example, "example number 1..6");
    o.alpha = app->add_option("--alpha", f.alpha, "alpha_1 (Examples 1-4) or alpha_2 (Examples 5-6)");
    o.tol = app->add_option("--tol", f.tol, "tolerance TOL");
    o.barrier = app->add_option("--barrier", f.barrier, "r0, r1 or exp")
                    ->check(CLI::IsMember({"r0", "r1", "exp"}));
    o.mesh = app->add_option("--mesh", f.mesh, "adaptive, graded:R or uniform:M");
    o.out = app->add_option("--out", f.out, "output directory");
    o.mu = app->add_option("--mu", f.mu, "rate of the exponential barrier");
    o.c1 = app->add_option("--c1", f.c1, "q_1 amplitude in Examples 5-6");
    o.N = app->add_option("--N", f.N, "interior spatial points (Examples 4, 6)");
    o.M = app->add_option("--M", f.M, "intervals of a graded mesh");
    o.reference_scale = app->add_option("--reference-scale", f.reference_scale, "reference refinement factor");
    o.estimator = app->add_option("--estimator", f.estimator_n_sub,
                                  "points added per interval for the estimator (0 disables)");
    o.oscillating = app->add_flag("--oscillating-source", f.oscillating, "Example 2 with f = cos(5 t^2)");
    o.norm = app->add_option("--norm", f.norm, "l2 or linf")->check(CLI::IsMember({"l2", "linf"}));
    return o;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fracadapt::RunConfig build_config(const Flags& f, const Options& o) {
    fracadapt::RunConfig c;
    if (o.config->count()) c = fracadapt::config_from_json(read_file(f.config), c);
    if (o.example->count()) c.example = f.example;
    if (o.alpha->count()) c.alpha = f.alpha;
    if (o.tol->count()) c.tol = f.tol;
    if (o.barrier->count()) c.barrier = fracadapt::parse_barrier(f.barrier);
    if (o.M->count()) c.M = f.M;
    if (o.mesh->count()) fracadapt::parse_mesh(f.mesh, c);
    if (o.out->count()) c.out_dir = f.out;
    if (o.mu->count()) c.mu = f.mu;
    if (o.c1->count()) c.c1 = f.c1;
    if (o.N->count()) c.N = f.N;
    if (o.reference_scale->count()) c.reference_scale = f.reference_scale;
    if (o.estimator->count()) c.estimator_n_sub = f.estimator_n_sub;
    if (o.oscillating->count()) c.oscillating_source = f.oscillating;
    if (o.norm->count()) c.norm = f.norm == "linf" ? fracadapt::NormKind::Linf : fracadapt::NormKind::L2;
    c.validate();
    return c;
}

void print_report(const fracadapt::RunConfig& c, const fracadapt::ErrorReport& r) {
    std::printf("example %d  alpha %g  tol %g  barrier %s  mesh %s\n", c.example, c.alpha, c.tol,
                fracadapt::to_string(c.barrier).c_str(),
                fracadapt::to_string(c.mesh, c.grading, c.M).c_str());
    std::printf("  M = %zu  max node error = %.6e  (error/tol = %.3f)  solve time %.3f s\n", r.M,
                r.max_node_error, r.max_node_error / c.tol, r.runtime_seconds);
    if (c.barrier != fracadapt::BarrierKind::R0) {
        // The guarantee is TOL times the barrier, not TOL itself.
        double worst = 0.0;
        for (const auto& row : r.rows)
            if (row.bound > 0.0) worst = std::max(worst, row.error / row.bound);
        std::printf("  max error/bound over nodes = %.3f\n", worst);
    }
    if (r.has_estimate) {
        double worst = 0.0;
        bool dominated = true;
        for (const auto& row : r.rows) {
            worst = std::max(worst, row.estimate);
            dominated = dominated && row.estimate >= row.error;
        }
        std::printf("  max estimate = %.6e  estimate >= error at every node: %s\n", worst,
                    dominated ? "yes" : "no");
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Adaptive L1 solver for multiterm time-fractional problems"};
    app.require_subcommand(1);

    Flags run_flags, sweep_flags;
    auto* run = app.add_subcommand("run", "solve one example and write CSV reports");
    const Options run_opts = add_common(run, run_flags);

    auto* sweep = app.add_subcommand("sweep", "repeat a run over several tolerances");
    const Options sweep_opts = add_common(sweep, sweep_flags);
    std::vector<double> tols;
    sweep->add_option("--tols", tols, "comma-separated tolerances")->delimiter(',')->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            const auto c = build_config(run_flags, run_opts);
            const auto r = fracadapt::run_example(c);
            print_report(c, r);
            return 0;
        }
        const auto base = build_config(sweep_flags, sweep_opts);
        std::vector<std::vector<double>> rows;
        for (double tol : tols) {
            auto c = base;
            c.tol = tol;
            if (!base.out_dir.empty())
                c.out_dir = (std::filesystem::path(base.out_dir) / ("tol_" + fracadapt::csv::format_number(tol))).string();
            const auto r = fracadapt::run_example(c);
            print_report(c, r);
            rows.push_back({tol, double(r.M), r.max_node_error});
        }
        if (!base.out_dir.empty()) {
            std::filesystem::create_directories(base.out_dir);
            fracadapt::csv::write((std::filesystem::path(base.out_dir) / "sweep.csv").string(),
                                  {{"example", std::to_string(base.example)},
                                   {"alpha", fracadapt::csv::format_number(base.alpha)},
                                   {"barrier", fracadapt::to_string(base.barrier)},
                                   {"mesh", fracadapt::to_string(base.mesh, base.grading, base.M)}},
                                  {"tol", "M", "max_error"}, rows);
        }
        return 0;
    } catch (const fracadapt::Error& e) {
        std::fprintf(stderr, "fracadapt: %s\n", e.what());
        return 1;
    }
}
