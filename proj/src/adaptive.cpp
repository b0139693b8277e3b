#include "fracadapt/adaptive.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace fracadapt {

void AdaptiveConfig::validate(double T) const {
    if (!(tol > 0.0)) throw DomainError("AdaptiveConfig: tol must be positive");
    if (!(Q > 1.0)) throw DomainError("AdaptiveConfig: Q must exceed 1");
    if (!(tau_star >= 0.0 && tau_star <= T)) throw DomainError("AdaptiveConfig: need 0 <= tau_star <= T");
    if (!(tau_star_star >= 0.0)) throw DomainError("AdaptiveConfig: tau_star_star must be nonnegative");
    if (samples_per_interval < 1) throw DomainError("AdaptiveConfig: need at least one sample");
    if (first_interval_extra < 0) throw DomainError("AdaptiveConfig: negative extra sample count");
    if (max_levels < 1) throw DomainError("AdaptiveConfig: max_levels must be positive");
    if (!(r1_tau_factor >= 0.0)) throw DomainError("AdaptiveConfig: r1_tau_factor must be nonnegative");
}

std::vector<double> check_times(double left, double right, const AdaptiveConfig& config,
                                bool first) {
    std::vector<double> t;
    const int n = config.samples_per_interval;
    const double h = right - left;
    for (int i = 1; i <= n; ++i) t.push_back(left + h * (double(i) / (n + 1)));
    if (first) {
        double s = right;
        for (int k = 0; k < config.first_interval_extra; ++k) {
            s *= 0.5;
            t.push_back(s);
        }
        std::sort(t.begin(), t.end());
        t.erase(std::unique(t.begin(), t.end()), t.end());
    }
    return t;
}

AdaptiveResult run_adaptive(const ProblemSpec& problem, const AdaptiveConfig& config) {
    problem.validate();
    const double T = problem.T;
    config.validate(T);
    BarrierSpec barrier = config.barrier;
    barrier.validate();
    const bool bind_tau = barrier.kind == BarrierKind::R1 && config.r1_tau_factor > 0.0;

    L1Stepper stepper(problem);
    AdaptiveTrace trace;
    std::vector<double> stash;
    double candidate = std::min(config.tau_star > 0.0 ? config.tau_star : T / 1024.0, T);

    auto assess = [&](std::size_t m, double t_prev, double tm, double& ratio) {
        if (bind_tau && m == 1) barrier.tau = config.r1_tau_factor * tm;
        const auto times = check_times(t_prev, tm, config, m == 1);
        const auto samples = sample_interval(stepper.history(), stepper.problem(), m, times, config.norm);
        ratio = max_ratio(samples, barrier);
        return check_interval(samples, config.tol, barrier);
    };

    while (stepper.history().last_time() < T) {
        const std::size_t m = stepper.history().size();
        if (m > config.max_levels)
            throw NonterminationError("run_adaptive: more than " + std::to_string(config.max_levels) +
                                          " levels",
                                      trace);
        const double t_prev = stepper.history().last_time();
        double tm = candidate;
        bool flag = false;
        double stash_t = 0.0, stash_ratio = 0.0;
        LevelRecord record;

        while (true) {
            // Steps are not shrunk below tau_star_star.
            bool at_floor = false;
            if (config.tau_star_star > 0.0 && !(tm - t_prev > config.tau_star_star)) {
                tm = std::min(t_prev + config.tau_star_star, T);
                at_floor = true;
            }
            if (!(tm > t_prev) || t_prev + (tm - t_prev) * 0.5 == t_prev)
                throw StepCollapseError("run_adaptive: step collapsed at t = " + std::to_string(t_prev),
                                        trace);
            stepper.advance(tm);
            ++record.attempts;
            double ratio = 0.0;
            if (assess(m, t_prev, tm, ratio)) {
                if (tm >= T) {
                    record.ratio = ratio;
                    break;
                }
                const auto level = stepper.history().level(m);
                stash.assign(level.begin(), level.end());
                stash_t = tm;
                stash_ratio = ratio;
                stepper.retract();
                tm = std::min(t_prev + config.Q * (tm - t_prev), T);
                flag = true;
            } else if (flag) {
                ++trace.rejected_steps;
                stepper.retract();
                stepper.restore(stash_t, stash);
                record.ratio = stash_ratio;
                candidate = std::min(stash_t + (stash_t - t_prev), T);
                break;
            } else if (at_floor) {
                // Failing at the minimum step: keep it and record the failure.
                record.ratio = ratio;
                record.passed = false;
                candidate = std::min(tm + (tm - t_prev), T);
                break;
            } else {
                ++trace.rejected_steps;
                stepper.retract();
                tm = t_prev + (tm - t_prev) / config.Q;
            }
        }
        record.t = stepper.history().last_time();
        if (bind_tau && m == 1) barrier.tau = config.r1_tau_factor * record.t;
        trace.levels.push_back(record);
        ++trace.accepted_steps;
    }

    AdaptiveResult result{stepper.history().mesh(), stepper.release(), std::move(trace), barrier};
    return result;
}

}  // namespace fracadapt
