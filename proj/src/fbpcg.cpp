#include "dfo/fbpcg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace dfo {

void SolverConfig::validate() const {
    if (lambda <= 1.0) throw std::invalid_argument("solver: lambda must exceed 1");
    if (!(h_min > 0.0)) throw std::invalid_argument("solver: h_min must be positive");
    if (!(h0 > 0.0)) throw std::invalid_argument("solver: h0 must be positive");
    if (!(diag_clamp > 0.0)) {
        throw std::invalid_argument("solver: diag_clamp must be positive");
    }
    if (qmf_epsilon_coeff < 0.0) {
        throw std::invalid_argument("solver: qmf_epsilon_coeff must be >= 0");
    }
}

bool is_quasi_minimal(std::span<const double> frame_values,
                      double center_value, double epsilon) {
    if (frame_values.empty()) {
        throw std::invalid_argument("is_quasi_minimal: empty frame");
    }
    if (epsilon < 0.0) {
        throw std::invalid_argument("is_quasi_minimal: epsilon must be >= 0");
    }
    for (double v : frame_values) {
        if (v < center_value - epsilon) return false;
    }
    return true;
}

LineSearchResult line_search(const Evaluator& f, std::span<const double> x,
                             std::span<const double> p, double h,
                             double f_center, std::size_t budget) {
    LineSearchResult result;
    result.f_theta = f_center;
    double pnorm_sq = 0.0;
    for (double v : p) pnorm_sq += v * v;
    if (pnorm_sq == 0.0 || budget == 0) return result;
    const double pnorm = std::sqrt(pnorm_sq);

    const std::size_t n = x.size();
    std::vector<double> step(n), trial_x(n);
    for (std::size_t i = 0; i < n; ++i) step[i] = h * p[i] / pnorm;
    auto eval_at = [&](double theta) {
        for (std::size_t i = 0; i < n; ++i) trial_x[i] = x[i] + theta * step[i];
        ++result.evals;
        return f(trial_x);
    };

    std::vector<std::pair<double, double>> trials;
    trials.emplace_back(0.0, f_center);
    double theta = 1.0;
    double f_theta = eval_at(theta);
    trials.emplace_back(theta, f_theta);
    if (f_theta < f_center) {
        while (result.evals < budget) {
            const double theta2 = 2.0 * theta;
            const double f2 = eval_at(theta2);
            trials.emplace_back(theta2, f2);
            if (f2 < f_theta) {
                theta = theta2;
                f_theta = f2;
            } else {
                break;
            }
        }
    } else {
        while (result.evals < budget) {
            theta *= 0.5;
            f_theta = eval_at(theta);
            trials.emplace_back(theta, f_theta);
            if (f_theta < f_center) break;
        }
    }

    std::sort(trials.begin(), trials.end());
    std::size_t ib = 0;
    for (std::size_t i = 1; i < trials.size(); ++i) {
        if (trials[i].second < trials[ib].second) ib = i;
    }
    // One quadratic-interpolation refinement when the best trial is
    // bracketed by higher neighbours.
    if (ib > 0 && ib + 1 < trials.size() && result.evals < budget) {
        const auto [ta, fa] = trials[ib - 1];
        const auto [tb, fb] = trials[ib];
        const auto [tc, fc] = trials[ib + 1];
        const double den = (tb - ta) * (fb - fc) - (tb - tc) * (fb - fa);
        if (den != 0.0) {
            const double tq =
                tb - 0.5 *
                         ((tb - ta) * (tb - ta) * (fb - fc) -
                          (tb - tc) * (tb - tc) * (fb - fa)) /
                         den;
            if (tq > ta && tq < tc && tq != tb) {
                trials.emplace_back(tq, eval_at(tq));
            }
        }
    }

    // Best sampled trial; theta = 0 stays in the set, so the result never
    // worsens the center.  Ties pick the smaller theta.
    auto best = trials[0];
    for (const auto& t : trials) {
        if (t.second < best.second ||
            (t.second == best.second && t.first < best.first)) {
            best = t;
        }
    }
    result.theta = best.first;
    result.f_theta = best.second;
    return result;
}

SolverResult solve(const Objective& objective, const SolverConfig& config) {
    config.validate();
    const std::size_t n = objective.n;
    std::vector<double> x = config.start.value_or(objective.start);
    if (x.size() != n) {
        throw std::invalid_argument("solver: start point dimension mismatch");
    }

    SolverResult result;
    result.x_min = x;
    result.h = config.h0;
    result.fmin = std::numeric_limits<double>::quiet_NaN();
    result.gnorm = std::numeric_limits<double>::quiet_NaN();
    if (config.budget == 0) return result;

    CountingObjective counted(objective);
    const Evaluator eval = [&counted](std::span<const double> p) {
        return counted(p);
    };

    SamplingScheme scheme;
    scheme.kind = config.kind;
    scheme.n = n;
    scheme.eta = -1.0;
    scheme.model = ModelOrder::Quadratic;

    const BasisConstants consts = basis_constants(n);
    const std::size_t m = direction_count(config.kind, n);
    const std::size_t frame_cost = 2 * m;

    double fx = 0.0;
    try {
        fx = eval(x);
    } catch (const std::exception& e) {
        result.aborted = true;
        result.abort_reason = e.what();
        result.nf = counted.count();
        return result;
    }
    std::vector<double> best_x = x;
    double best_f = fx;

    std::vector<double> h_diag(n, 1.0);
    std::vector<double> g_prev, p_prev(n, 0.0);
    double h = config.h0;
    std::size_t j = n;

    std::vector<double> frame_values(frame_cost);
    SampleSet samples;

    try {
        while (h >= config.h_min &&
               counted.count() + frame_cost <= config.budget) {
            const double center_val = fx;
            scheme.h = h;
            const auto points = sample_points(x, scheme);
            samples.f0 = center_val;
            samples.f.resize(m);
            samples.fprime.resize(m);
            for (std::size_t i = 0; i < m; ++i) {
                samples.f[i] = eval(points[i]);
                samples.fprime[i] = eval(points[m + i]);
                frame_values[i] = samples.f[i];
                frame_values[m + i] = samples.fprime[i];
                if (samples.f[i] < best_f) {
                    best_f = samples.f[i];
                    best_x = points[i];
                }
                if (samples.fprime[i] < best_f) {
                    best_f = samples.fprime[i];
                    best_x = points[m + i];
                }
            }

            const DifferenceVectors diffs = difference_vectors(samples, scheme);
            const std::vector<double> g = grad_quadratic(diffs, consts, scheme);
            double gnorm_sq = 0.0;
            for (double v : g) gnorm_sq += v * v;
            result.gnorm = std::sqrt(gnorm_sq);

            const bool reset = (j == 1);
            if (reset) {
                std::vector<double> d;
                if (config.cmpb_diag_central &&
                    config.kind == BasisKind::CoordinateMinimalPositiveBasis) {
                    d.resize(n);
                    for (std::size_t i = 0; i < n; ++i) {
                        d[i] = 2.0 * diffs.z[i] / (h * h);
                    }
                } else {
                    d = diag_quadratic(diffs, consts, scheme);
                }
                for (std::size_t i = 0; i < n; ++i) {
                    h_diag[i] = 1.0 / std::max(d[i], config.diag_clamp);
                }
            }

            double beta = 0.0;
            if (!g_prev.empty()) {
                double num = 0.0, den = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    num += g[i] * h_diag[i] * (g[i] - g_prev[i]);
                    den += g_prev[i] * h_diag[i] * g_prev[i];
                }
                if (den > 0.0) beta = std::max(0.0, num / den);
            }
            std::vector<double> p(n);
            for (std::size_t i = 0; i < n; ++i) {
                p[i] = -h_diag[i] * g[i] + beta * p_prev[i];
            }
            // Same expression line_search uses, so accepted points are
            // bitwise the evaluated trials.
            double pnorm_sq = 0.0;
            for (double v : p) pnorm_sq += v * v;
            std::vector<double> step(n, 0.0);
            if (pnorm_sq > 0.0) {
                const double pnorm = std::sqrt(pnorm_sq);
                for (std::size_t i = 0; i < n; ++i) step[i] = h * p[i] / pnorm;
            }

            LineSearchResult ls;
            ls.f_theta = center_val;
            if (counted.count() < config.budget) {
                const std::size_t ls_budget =
                    std::min<std::size_t>(config.line_search_budget,
                                          config.budget - counted.count());
                ls = line_search(eval, x, p, h, center_val, ls_budget);
            }
            if (ls.theta > 0.0 && ls.f_theta < best_f) {
                best_f = ls.f_theta;
                for (std::size_t i = 0; i < n; ++i) {
                    best_x[i] = x[i] + ls.theta * step[i];
                }
            }

            const bool qmf = is_quasi_minimal(
                frame_values, center_val, config.qmf_epsilon_coeff * h * h);

            TraceRecord rec;
            rec.iteration = result.iterations + 1;
            rec.j = j;
            rec.f_center = center_val;
            rec.gnorm = result.gnorm;
            rec.h = h;
            rec.beta = beta;
            rec.theta = ls.theta;
            rec.quasi_minimal = qmf;
            rec.reset = reset;
            rec.hdiag_min = *std::min_element(h_diag.begin(), h_diag.end());
            rec.hdiag_max = *std::max_element(h_diag.begin(), h_diag.end());

            if (reset) {
                x = best_x;
                fx = best_f;
                j = n + 3;
            } else {
                --j;
                if (ls.theta > 0.0) {
                    for (std::size_t i = 0; i < n; ++i) {
                        x[i] = x[i] + ls.theta * step[i];
                    }
                    fx = ls.f_theta;
                }
            }
            if (qmf) {
                ++result.qmf_count;
                h /= config.lambda;
            }
            ++result.iterations;
            g_prev = g;
            p_prev = std::move(p);

            rec.nf = counted.count();
            rec.f_best = best_f;
            result.trace.push_back(rec);
        }
    } catch (const std::exception& e) {
        result.aborted = true;
        result.abort_reason = e.what();
    }

    result.x_min = best_x;
    result.fmin = best_f;
    result.h = h;
    result.nf = counted.count();
    return result;
}

}  // namespace dfo
