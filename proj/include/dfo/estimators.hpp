#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "dfo/sampling.hpp"

namespace dfo {

/// Gradient estimate g, diagonal-Hessian estimate d (quadratic models
/// only), and accounting of the objective evaluations the estimate cost.
struct DerivativeEstimate {
    std::vector<double> g;
    std::optional<std::vector<double>> d;
    SamplingScheme scheme;
    std::size_t evals_used = 0;
    // Set when a linear-model call received a primed block it ignored.
    bool ignored_primed_block = false;
};

/// Closed-form gradient from the eliminated system y = h U^T g.
///   CB:   g = y / h
///   RB:   g = (1/(alpha h)) (y + (1/n)(sqrt(n+1)-1)(e^T y) e)
///   CMPB: g = (1/h) (y - (1/(n+1))(e^T y_+) e)
///   RMPB: g = (1/(alpha h)) (y - (gamma (e^T y) + y_{n+1}/sqrt(n+1)) e)
/// All O(n).  Minimal positive bases require the y_extra component.
std::vector<double> grad_quadratic(const DifferenceVectors& diffs,
                                   const BasisConstants& consts,
                                   const SamplingScheme& scheme);

/// Closed-form diagonal Hessian from z = (1/2) h^2 W^T d.
///   CB:   d = (2/h^2) z
///   RB:   d = (2/(mu h^2)) (z - (1/n)(1-mu)(e^T z) e)
///   CMPB: d = (2/h^2) (z - (1/(n+1))(e^T z) e + (1/(n+1)) z_{n+1} e)
///   RMPB: d = (2/(mu h^2)) (z + (1/(1+sigma n))((omega-sigma)(e^T z)
///                                 + z_{n+1}/(mu n)) e)
std::vector<double> diag_quadratic(const DifferenceVectors& diffs,
                                   const BasisConstants& consts,
                                   const SamplingScheme& scheme);

/// Linear-model gradient from the unprimed block only.
///   CB:   g = (f - f0 e) / h
///   RB:   g = (1/(alpha h)) (df + gamma sqrt(n+1)(e^T df) e)
///   CMPB: g = (1/h) (f - (1/(n+1))(e^T f_+) e)
///   RMPB: g = (1/(alpha h)) (f - (gamma (e^T f) + f_{n+1}/sqrt(n+1)) e)
/// CMPB/RMPB never read f0.  A supplied primed block is ignored; the
/// caller can detect that through DerivativeEstimate metadata.
std::vector<double> grad_linear(const SampleSet& samples,
                                const BasisConstants& consts,
                                const SamplingScheme& scheme);

struct EstimateOptions {
    // f(x) when the caller already knows it; avoids one evaluation.
    std::optional<double> known_f0;
    // Replace the CMPB least-squares d with the central-difference d
    // computed from the same sample values.
    bool cmpb_diag_central = false;
};

using Evaluator = std::function<double(std::span<const double>)>;

/// Samples around x per the scheme, evaluates through `f`, and applies
/// the closed forms.  evals_used counts the calls made here: the m or 2m
/// sample points, plus one for f(x) iff it was needed and not supplied
/// via options (quadratic models always need it; linear CB/RB need it;
/// linear CMPB/RMPB do not).
DerivativeEstimate estimate(const Evaluator& f, std::span<const double> x,
                            const SamplingScheme& scheme,
                            const EstimateOptions& options = {});

/// Same closed forms on a pre-evaluated SampleSet.  Performs no
/// evaluations; evals_used reports the number of sample values consumed.
/// A primed block supplied to a linear-model scheme is ignored and
/// flagged in the result.
DerivativeEstimate estimate_from_samples(const SampleSet& samples,
                                         const SamplingScheme& scheme,
                                         const EstimateOptions& options = {});

}  // namespace dfo
