#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dfo/estimators.hpp"
#include "dfo/problems.hpp"

namespace dfo {

/// Frame-based preconditioned conjugate gradients configuration.
/// eta is fixed at -1: each frame doubles as the central-difference
/// sample set for g(x) and D(x).
struct SolverConfig {
    BasisKind kind = BasisKind::CoordinateBasis;
    std::size_t budget = 1300;      // max objective evaluations
    double h0 = 1.0;                // initial frame size
    double h_min = 1e-10;           // frame-size floor
    double lambda = 4.0;            // quasi-minimal shrink factor
    std::size_t line_search_budget = 10;
    double diag_clamp = 1e-4;       // H_ii = 1/max(D_i, diag_clamp)
    // A frame is quasi-minimal when no frame point improves the center
    // by more than epsilon = qmf_epsilon_coeff * h^2.
    double qmf_epsilon_coeff = 1.0;
    // CMPB frames default to the central-difference d for the
    // preconditioner; set false to use the least-squares form.
    bool cmpb_diag_central = true;
    std::optional<std::vector<double>> start;  // overrides objective.start

    // Accepted for interface parity with the frame literature; the
    // present method never reads them.
    double reserved_cap_n = 0.0;
    double reserved_nu = 0.0;
    double reserved_tau_min = 0.0;

    void validate() const;
};

struct TraceRecord {
    std::size_t iteration = 0;
    std::size_t j = 0;          // PCG reset counter before this step
    std::uint64_t nf = 0;       // evaluations after this iteration
    double f_center = 0.0;      // frame-center value
    double f_best = 0.0;        // incumbent after this iteration
    double gnorm = 0.0;
    double h = 0.0;             // frame size used this iteration
    double beta = 0.0;
    double theta = 0.0;
    double hdiag_min = 1.0;
    double hdiag_max = 1.0;
    bool quasi_minimal = false;
    bool reset = false;         // j hit 1: PCG restarts from the incumbent
};

struct SolverResult {
    std::vector<double> x_min;
    double fmin = 0.0;
    double gnorm = 0.0;         // ||g|| at the last frame
    double h = 0.0;             // frame size at exit
    std::size_t iterations = 0;
    std::size_t qmf_count = 0;
    std::uint64_t nf = 0;
    std::vector<TraceRecord> trace;
    bool aborted = false;
    std::string abort_reason;
};

struct LineSearchResult {
    double theta = 0.0;
    double f_theta = 0.0;
    std::size_t evals = 0;
};

/// Minimizes f(x + theta * h * p/||p||) over theta >= 0: brackets from
/// theta = 1 by doubling while improving (halving while not), then one
/// quadratic-interpolation refinement; returns the best sampled trial
/// (theta = 0 when nothing improves on f_center).  At most `budget`
/// evaluations.
LineSearchResult line_search(const Evaluator& f, std::span<const double> x,
                             std::span<const double> p, double h,
                             double f_center, std::size_t budget);

/// True iff no frame value improves on the center by more than epsilon,
/// i.e. every value >= center - epsilon (boundary counts as
/// quasi-minimal).  Throws on an empty frame or negative epsilon.
bool is_quasi_minimal(std::span<const double> frame_values,
                      double center_value, double epsilon);

/// Runs FB-PCG until h < h_min or the evaluation budget is exhausted.
/// Frames are the quadratic sample sets of the configured basis; g comes
/// from the frame's closed form and the preconditioner diagonal is
/// refreshed from D(x) at every PCG reset (j = 1).  Quasi-minimal frames
/// (epsilon = h^2) shrink h by lambda.  Returns the incumbent.
SolverResult solve(const Objective& objective, const SolverConfig& config);

}  // namespace dfo
