// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "mcradar/signal.hpp"
#include "mcradar/types.hpp"

namespace mcradar {

/// Iteration controls for the completion solvers. Zero-valued threshold,
/// step and svd_rank_cap select the documented defaults at solve time:
/// threshold 5*sqrt(N1*N2), step 1.2*N1*N2/m, cap min(N1, N2).
struct SolverParams {
    double threshold = 0.0;
    double step = 0.0;
    int max_iters = 1000;
    double rel_stop_tol = 1e-4;
    int svd_rank_cap = 0;
};

struct CompletionResult {
    ComplexMatrix estimate;
    int iterations = 0;
    bool converged = false;
    std::vector<double> residual_history; // relative data-fit residual per iteration
};

// Nuclear-norm completion with equality constraints on the observed entries,
// via singular value thresholding. When the dual-ascent recursion stalls
// short of tolerance (weakly certified instances), the remaining budget runs
// an equality-constrained splitting with the same thresholding operator.
// Divergence is flagged on the result, not thrown.
CompletionResult svt_complete(const PartialObservation &obs, const SolverParams &params = {});

// Inequality-constrained variant: nuclear-norm weight with a decreasing
// continuation path, stopped once the observed-entry misfit first falls to
// delta. delta == 0 reduces to svt_complete.
CompletionResult noisy_complete(const PartialObservation &obs, double delta,
                                const SolverParams &params = {});

// Recovery-error guarantee for the inequality program:
// 4*sqrt((2*N1*N2 + m)*min(N1,N2)/m)*delta + 2*delta.
double stability_bound(int n1, int n2, int m, double delta);

struct RecoveryError {
    double abs_frob = 0.0;
    double rel_frob = 0.0;
    double max_entry = 0.0;
};

RecoveryError recovery_error(const ComplexMatrix &truth, const ComplexMatrix &estimate);

// True when the 20-iteration sliding-window medians of the history are
// nonincreasing (raw iteration residuals oscillate; their trend must not).
bool trailing_median_nonincreasing(const std::vector<double> &history, int window = 20,
                                   double slack = 1e-9);

} // namespace mcradar
