#include "fracadapt/experiments.hpp"

#include "fracadapt/csv.hpp"
#include "fracadapt/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <numbers>
#include <sstream>

namespace fracadapt {

namespace {

using std::numbers::pi;

double cos2pi(double t) {
    const double c = std::cos(pi * t);
    return c * c;
}

bool time_fractional_only(int example) { return example >= 1 && example <= 4; }

}  // namespace

void RunConfig::validate() const {
    if (example < 1 || example > 6) throw ConfigError("example must be 1..6");
    if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha must lie in (0,1)");
    if (!(tol > 0.0)) throw ConfigError("tol must be positive");
    if (!(mu > 0.0)) throw ConfigError("mu must be positive");
    if (!(c1 >= 0.0 && c1 <= 1.0)) throw ConfigError("c1 must lie in [0,1]");
    if (M < 1 || N < 1) throw ConfigError("M and N must be positive");
    if (mesh == MeshKind::Graded && grading != 0.0 && !(grading >= 1.0))
        throw ConfigError("graded mesh exponent must be >= 1");
    if (reference_scale < 4) throw ConfigError("reference_scale must be at least 4");
    if (reference_base < 1) throw ConfigError("reference_base must be positive");
    if (!(Q > 1.0)) throw ConfigError("Q must exceed 1");
    if (samples_per_interval < 1 || bound_samples < 1) throw ConfigError("sample counts must be positive");
    if (barrier == BarrierKind::R1 && !time_fractional_only(example))
        throw ConfigError("the R1 barrier needs alpha_1 < 1 (Examples 1-4)");
    if (barrier == BarrierKind::CustomTable) throw ConfigError("custom barriers are not available from a run config");
    if (oscillating_source && example != 2) throw ConfigError("oscillating_source applies to Example 2 only");
    if (estimator_n_sub && *estimator_n_sub < 0) throw ConfigError("estimator_n_sub must be >= 0");
}

ProblemSpec make_example(const RunConfig& c) {
    c.validate();
    ProblemSpec p;
    p.T = 1.0;
    p.lambda = 1.0;
    const double u0 = c.u0;
    p.u0 = [u0](double) { return u0; };
    p.f = [](double, double) { return 1.0; };
    std::function<double(double)> q1;

    switch (c.example) {
    case 1:
    case 4:
        q1 = [](double t) { return 0.5 * std::exp(-t / 5.0); };
        break;
    case 2:
        q1 = [](double t) { return t < 0.5 ? cos2pi(t) : 0.0; };
        if (c.oscillating_source) p.f = [](double, double t) { return std::cos(5.0 * t * t); };
        break;
    case 3:
        q1 = [](double t) { return t < 0.5 ? 0.0 : cos2pi(t); };
        break;
    default: {
        const double c1 = c.c1;
        q1 = [c1](double t) { return t < 0.5 ? c1 * std::exp(-5.0 * t) * cos2pi(t) : 0.0; };
        p.f = [](double, double t) { return 1.0 + 0.5 * std::erf(20.0 * (1.0 - t)); };
        break;
    }
    }
    p.q = {q1, [q1](double t) { return 1.0 - q1(t); }};
    if (time_fractional_only(c.example))
        p.alphas = {c.alpha, 2.0 * c.alpha / 3.0};
    else
        p.alphas = {1.0, c.alpha};

    if (c.example == 4 || c.example == 6) {
        Laplace1D op;
        op.grid = SpatialGrid1D{0.0, pi, c.N};
        op.c = 0.0;
        p.spatial = op;
        p.u0 = [](double x) { return std::sin(x * x / pi); };
    }
    p.validate();
    return p;
}

double singular_order(const RunConfig& c) {
    switch (c.example) {
    case 3:
        return 2.0 * c.alpha / 3.0;
    case 5:
    case 6:
        // A positive first-order coefficient at t = 0 removes the t^alpha layer.
        return c.c1 > 0.0 ? 1.0 : c.alpha;
    default:
        return c.alpha;
    }
}

SolutionHistory reference_solution(const ProblemSpec& problem, int scale, double singular,
                                   const TemporalMesh* run_mesh, int base) {
    if (scale < 4) throw DomainError("reference_solution: scale must be at least 4");
    if (!(singular > 0.0)) throw DomainError("reference_solution: singular order must be positive");
    const int run_M = run_mesh ? int(run_mesh->intervals()) : 0;
    const int M = scale * std::max(run_M, base);
    const double r = singular >= 1.0 ? 1.0 : (2.0 - singular) / singular;
    TemporalMesh mesh = mesh::graded(M, r, problem.T);
    if (run_mesh) mesh = mesh::merge(*run_mesh, mesh);
    return solve(problem, mesh);
}

double node_errors(const ProblemSpec& problem, const SolutionHistory& run,
                   const SolutionHistory& reference, NormKind kind, std::vector<double>* errors) {
    const auto& ref_t = reference.times();
    double worst = 0.0;
    std::vector<double> diff(run.dim());
    if (errors) errors->assign(run.size(), 0.0);
    for (std::size_t j = 1; j < run.size(); ++j) {
        const double t = run.time(j);
        const auto it = std::lower_bound(ref_t.begin(), ref_t.end(), t);
        if (it == ref_t.end() || *it != t)
            throw DomainError("node_errors: reference mesh does not contain every run node");
        const auto a = run.level(j);
        const auto b = reference.level(std::size_t(it - ref_t.begin()));
        for (std::size_t n = 0; n < diff.size(); ++n) diff[n] = a[n] - b[n];
        const double e = residual_norm(diff, problem, kind);
        if (errors) (*errors)[j] = e;
        worst = std::max(worst, e);
    }
    return worst;
}

RunOutput execute(const RunConfig& c) {
    ProblemSpec problem = make_example(c);

    BarrierSpec barrier;
    switch (c.barrier) {
    case BarrierKind::R0: barrier = BarrierSpec::r0(problem); break;
    case BarrierKind::R1: barrier = BarrierSpec::r1(problem, 1.0); break;
    default: barrier = BarrierSpec::exponential(problem, c.mu); break;
    }

    const auto start = std::chrono::steady_clock::now();
    std::optional<SolutionHistory> history;
    std::size_t rejected = 0;
    if (c.mesh == MeshKind::Adaptive) {
        AdaptiveConfig ac;
        ac.tol = c.tol;
        ac.Q = c.Q;
        ac.tau_star = c.tau_star;
        ac.barrier = barrier;
        ac.samples_per_interval = c.samples_per_interval;
        ac.norm = c.norm;
        auto result = run_adaptive(problem, ac);
        barrier = result.barrier;
        rejected = result.trace.rejected_steps;
        history.emplace(std::move(result.history));
    } else {
        const double r = c.grading > 0.0 ? c.grading
                                         : std::max(1.0, (2.0 - singular_order(c)) / singular_order(c));
        const TemporalMesh m = c.mesh == MeshKind::Uniform ? mesh::uniform(c.M, problem.T)
                                                           : mesh::graded(c.M, r, problem.T);
        history.emplace(solve(problem, m));
        if (barrier.kind == BarrierKind::R1) barrier.tau = 5.0 * m[1];
    }
    const double runtime =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    const TemporalMesh run_mesh = history->mesh();
    SolutionHistory reference =
        reference_solution(problem, c.reference_scale, singular_order(c), &run_mesh, c.reference_base);

    ErrorReport report;
    std::vector<double> errors;
    report.max_node_error = node_errors(problem, *history, reference, c.norm, &errors);
    report.M = run_mesh.intervals();
    report.N = problem.is_pde() ? c.N : 0;
    report.runtime_seconds = runtime;
    report.rejected_steps = rejected;
    report.r1_tau = barrier.kind == BarrierKind::R1 ? barrier.tau : 0.0;

    const auto samples = sample_norms(*history, problem, c.bound_samples, c.norm);
    const auto bounds = error_bound_curve(samples, barrier, run_mesh.points());

    std::optional<EstimatorResult> est;
    const int n_sub = c.estimator_n_sub.value_or(c.example == 6 ? 15 : 0);
    if (n_sub > 0) est = estimate_on_mesh(problem, *history, n_sub, c.norm);
    report.has_estimate = est.has_value();

    for (std::size_t j = 0; j < run_mesh.size(); ++j) {
        ErrorRow row;
        row.t = run_mesh[j];
        row.error = errors[j];
        row.bound = bounds[j];
        row.estimate = est ? est->at_coarse_node(j) : 0.0;
        report.rows.push_back(row);
    }

    return RunOutput{std::move(problem), std::move(barrier), std::move(*history),
                     std::move(reference), std::move(report), std::move(est)};
}

ErrorReport run_example(const RunConfig& config) {
    auto out = execute(config);
    if (!config.out_dir.empty()) write_outputs(config, out);
    return out.report;
}

double fit_initial_exponent(const SolutionHistory& history) {
    return fit_initial_exponent(history, 1e-3);
}

double fit_initial_exponent(const SolutionHistory& history, double upper_fraction) {
    const double T = history.last_time();
    std::size_t early = 0;
    for (std::size_t j = 1; j < history.size() && history.time(j) <= T / 10.0; ++j) ++early;
    if (early < 8) throw ExponentUndefinedError("fit_initial_exponent: fewer than 8 levels in (0, T/10]");

    const double upper = std::min(T / 10.0, std::max(upper_fraction * T, history.time(8)));
    double lower = upper / 10.0;
    std::size_t in_window = 0;
    for (std::size_t j = 1; j < history.size(); ++j)
        if (history.time(j) >= lower && history.time(j) <= upper) ++in_window;
    if (in_window < 3) lower = history.time(1);

    const auto base = history.level(0);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (std::size_t j = 1; j < history.size(); ++j) {
        const double t = history.time(j);
        if (t < lower || t > upper) continue;
        const auto u = history.level(j);
        double d = 0.0;
        for (std::size_t k = 0; k < u.size(); ++k) d += (u[k] - base[k]) * (u[k] - base[k]);
        d = std::sqrt(d);
        if (!(d > 0.0)) continue;
        const double x = std::log(t), y = std::log(d);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    const double den = n * sxx - sx * sx;
    if (n < 2 || !(den > 0.0))
        throw ExponentUndefinedError("fit_initial_exponent: solution does not move away from u(0)");
    return (n * sxy - sx * sy) / den;
}

std::string to_string(BarrierKind kind) {
    switch (kind) {
    case BarrierKind::R0: return "r0";
    case BarrierKind::R1: return "r1";
    case BarrierKind::Exponential: return "exp";
    case BarrierKind::CustomTable: return "custom";
    }
    return "?";
}

std::string to_string(MeshKind kind, double grading, int M) {
    switch (kind) {
    case MeshKind::Adaptive: return "adaptive";
    case MeshKind::Graded: return "graded:" + csv::format_number(grading) + " M=" + std::to_string(M);
    case MeshKind::Uniform: return "uniform:" + std::to_string(M);
    }
    return "?";
}

BarrierKind parse_barrier(const std::string& s) {
    if (s == "r0") return BarrierKind::R0;
    if (s == "r1") return BarrierKind::R1;
    if (s == "exp") return BarrierKind::Exponential;
    throw ConfigError("unknown barrier '" + s + "' (expected r0, r1 or exp)");
}

void parse_mesh(const std::string& s, RunConfig& c) {
    const auto colon = s.find(':');
    const std::string kind = s.substr(0, colon);
    const std::string arg = colon == std::string::npos ? "" : s.substr(colon + 1);
    try {
        if (kind == "adaptive" && arg.empty()) {
            c.mesh = MeshKind::Adaptive;
        } else if (kind == "graded") {
            c.mesh = MeshKind::Graded;
            c.grading = arg.empty() ? 0.0 : std::stod(arg);
        } else if (kind == "uniform") {
            c.mesh = MeshKind::Uniform;
            if (!arg.empty()) c.M = std::stoi(arg);
        } else {
            throw ConfigError("");
        }
    } catch (const std::exception&) {
        throw ConfigError("unknown mesh '" + s + "' (expected adaptive, graded:R or uniform:M)");
    }
}

RunConfig config_from_json(const std::string& text, RunConfig c) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("run configuration must be a JSON object");
    try {
        for (auto it = j.begin(); it != j.end(); ++it) {
            const std::string& key = it.key();
            const auto& v = it.value();
            if (key == "example") c.example = v.get<int>();
            else if (key == "alpha") c.alpha = v.get<double>();
            else if (key == "tol") c.tol = v.get<double>();
            else if (key == "barrier") c.barrier = parse_barrier(v.get<std::string>());
            else if (key == "mu") c.mu = v.get<double>();
            else if (key == "c1") c.c1 = v.get<double>();
            else if (key == "oscillating_source") c.oscillating_source = v.get<bool>();
            else if (key == "u0") c.u0 = v.get<double>();
            else if (key == "mesh") parse_mesh(v.get<std::string>(), c);
            else if (key == "M") c.M = v.get<int>();
            else if (key == "N") c.N = v.get<int>();
            else if (key == "reference_scale") c.reference_scale = v.get<int>();
            else if (key == "reference_base") c.reference_base = v.get<int>();
            else if (key == "tau_star") c.tau_star = v.get<double>();
            else if (key == "Q") c.Q = v.get<double>();
            else if (key == "samples_per_interval") c.samples_per_interval = v.get<int>();
            else if (key == "norm") {
                const auto s = v.get<std::string>();
                if (s == "l2") c.norm = NormKind::L2;
                else if (s == "linf") c.norm = NormKind::Linf;
                else throw ConfigError("norm must be l2 or linf");
            }
            else if (key == "estimator_n_sub") c.estimator_n_sub = v.get<int>();
            else if (key == "bound_samples") c.bound_samples = v.get<int>();
            else if (key == "out") c.out_dir = v.get<std::string>();
            else throw ConfigError("unknown configuration key '" + key + "'");
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("bad configuration value: ") + e.what());
    }
    return c;
}

std::string config_to_json(const RunConfig& c) {
    nlohmann::ordered_json j;
    j["example"] = c.example;
    j["alpha"] = c.alpha;
    j["tol"] = c.tol;
    j["barrier"] = to_string(c.barrier);
    j["mu"] = c.mu;
    j["c1"] = c.c1;
    j["oscillating_source"] = c.oscillating_source;
    j["u0"] = c.u0;
    switch (c.mesh) {
    case MeshKind::Adaptive: j["mesh"] = "adaptive"; break;
    case MeshKind::Graded: j["mesh"] = "graded:" + csv::format_number(c.grading); break;
    case MeshKind::Uniform: j["mesh"] = "uniform:" + std::to_string(c.M); break;
    }
    j["M"] = c.M;
    j["N"] = c.N;
    j["reference_scale"] = c.reference_scale;
    j["reference_base"] = c.reference_base;
    j["tau_star"] = c.tau_star;
    j["Q"] = c.Q;
    j["samples_per_interval"] = c.samples_per_interval;
    j["norm"] = c.norm == NormKind::L2 ? "l2" : "linf";
    if (c.estimator_n_sub) j["estimator_n_sub"] = *c.estimator_n_sub;
    j["bound_samples"] = c.bound_samples;
    if (!c.out_dir.empty()) j["out"] = c.out_dir;
    return j.dump(2);
}

void write_outputs(const RunConfig& c, const RunOutput& out) {
    namespace fs = std::filesystem;
    fs::create_directories(c.out_dir);
    const fs::path dir(c.out_dir);
    const auto& h = out.history;
    const auto& r = out.report;

    csv::Metadata meta = {
        {"example", std::to_string(c.example)},
        {"alpha", csv::format_number(c.alpha)},
        {"alphas", [&] {
             std::string s;
             for (double a : out.problem.alphas) s += (s.empty() ? "" : " ") + csv::format_number(a);
             return s;
         }()},
        {"tol", csv::format_number(c.tol)},
        {"barrier", to_string(c.barrier)},
        {"mesh", to_string(c.mesh, c.grading, c.M)},
        {"M", std::to_string(r.M)},
        {"N", std::to_string(r.N)},
        {"norm", c.norm == NormKind::L2 ? "l2" : "linf"},
    };
    if (c.example >= 5) meta.emplace_back("c1", csv::format_number(c.c1));
    if (c.barrier == BarrierKind::Exponential) meta.emplace_back("mu", csv::format_number(c.mu));
    if (r.r1_tau > 0.0) meta.emplace_back("r1_tau", csv::format_number(r.r1_tau));

    std::vector<std::vector<double>> rows;
    for (double t : h.times()) rows.push_back({t});
    csv::write((dir / "mesh.csv").string(), meta, {"t"}, rows);

    rows.clear();
    std::vector<std::string> header{"t"};
    if (out.problem.is_pde()) {
        for (std::size_t n = 0; n < h.dim(); ++n) header.push_back("x" + std::to_string(n));
    } else {
        header.push_back("u");
    }
    for (std::size_t j = 0; j < h.size(); ++j) {
        std::vector<double> row{h.time(j)};
        const auto u = h.level(j);
        row.insert(row.end(), u.begin(), u.end());
        rows.push_back(std::move(row));
    }
    csv::write((dir / "solution.csv").string(), meta, header, rows);

    const auto samples = sample_norms(h, out.problem, c.bound_samples, c.norm);
    rows.clear();
    for (std::size_t k = 0; k < samples.times.size(); ++k) rows.push_back({samples.times[k], samples.norms[k]});
    csv::write((dir / "residual.csv").string(), meta, {"t", "residual_norm"}, rows);

    rows.clear();
    for (const auto& row : r.rows) rows.push_back({row.t, row.bound});
    csv::write((dir / "bound.csv").string(), meta, {"t", "value"}, rows);

    auto report_meta = meta;
    report_meta.emplace_back("max_node_error", csv::format_number(r.max_node_error));
    report_meta.emplace_back("rejected_steps", std::to_string(r.rejected_steps));
    rows.clear();
    for (const auto& row : r.rows) rows.push_back({row.t, row.error, row.bound, row.estimate});
    csv::write((dir / "report.csv").string(), report_meta, {"t", "error", "bound", "estimate"}, rows);

    if (out.estimator) {
        const auto& e = *out.estimator;
        rows.clear();
        for (std::size_t k = 0; k < e.fine_mesh.size(); ++k) {
            const double res = k == 0 ? 0.0 : e.residual_input.norms[k - 1];
            rows.push_back({e.fine_mesh[k], res, e.estimate[k]});
        }
        csv::write((dir / "estimator.csv").string(), meta, {"t", "residual_norm", "estimate"}, rows);
    }
}

}  // namespace fracadapt
