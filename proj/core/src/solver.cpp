// SPDX-License-Identifier: Apache-2.0
#include "mcradar/solver.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "mcradar/errors.hpp"

namespace mcradar {

namespace {

// Soft-thresholds the singular values of y: returns sum_k (sigma_k - tau)+
// u_k v_k^H, at most rank_cap terms. Uses the Gram matrix of the smaller
// side; thresholded singular values are large, so the squaring is harmless.
ComplexMatrix shrink_singular(const ComplexMatrix &y, double tau, int rank_cap) {
    const bool tall = y.rows() >= y.cols();
    const ComplexMatrix gram = tall ? ComplexMatrix(y.adjoint() * y) : ComplexMatrix(y * y.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(gram);
    const Eigen::Index n = gram.rows();

    // Eigenvalues ascend; walk from the top.
    std::vector<Eigen::Index> keep;
    std::vector<double> shrunk_over_sigma;
    for (Eigen::Index k = n - 1; k >= 0; --k) {
        const double sigma = std::sqrt(std::max(0.0, eig.eigenvalues()(k)));
        if (sigma <= tau) break;
        if (static_cast<int>(keep.size()) >= rank_cap) break;
        keep.push_back(k);
        shrunk_over_sigma.push_back((sigma - tau) / sigma);
    }
    if (keep.empty()) return ComplexMatrix::Zero(y.rows(), y.cols());

    const auto r = static_cast<Eigen::Index>(keep.size());
    ComplexMatrix basis(n, r);
    Eigen::VectorXd weights(r);
    for (Eigen::Index k = 0; k < r; ++k) {
        basis.col(k) = eig.eigenvectors().col(keep[static_cast<std::size_t>(k)]);
        weights(k) = shrunk_over_sigma[static_cast<std::size_t>(k)];
    }
    // X = Y * V diag(w) V^H  (tall)  or  U diag(w) U^H * Y  (wide).
    const ComplexMatrix core = basis * weights.asDiagonal() * basis.adjoint();
    return tall ? ComplexMatrix(y * core) : ComplexMatrix(core * y);
}

double spectral_norm(const ComplexMatrix &y) {
    const bool tall = y.rows() >= y.cols();
    const ComplexMatrix gram = tall ? ComplexMatrix(y.adjoint() * y) : ComplexMatrix(y * y.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(gram, Eigen::EigenvaluesOnly);
    return std::sqrt(std::max(0.0, eig.eigenvalues()(gram.rows() - 1)));
}

struct ResolvedParams {
    double tau;
    double step;
    int max_iters;
    double tol;
    int rank_cap;
};

ResolvedParams resolve(const SolverParams &params, Eigen::Index rows, Eigen::Index cols,
                       std::size_t m) {
    if (params.max_iters < 1) throw invalid_parameter_error("max_iters must be positive");
    if (!(params.rel_stop_tol > 0.0))
        throw invalid_parameter_error("stop tolerance must be positive");
    if (params.threshold < 0.0 || params.step < 0.0 || params.svd_rank_cap < 0)
        throw invalid_parameter_error("solver parameters must be nonnegative");
    ResolvedParams p;
    const double n1 = static_cast<double>(rows), n2 = static_cast<double>(cols);
    p.tau = params.threshold > 0.0 ? params.threshold : 5.0 * std::sqrt(n1 * n2);
    // Default step 1.2*N1*N2/m, capped below 2: the dual ascent runs against
    // a unit-Lipschitz gradient, and steps past 2 stall at dense sampling.
    p.step = params.step > 0.0 ? params.step
                               : std::min(1.2 * n1 * n2 / static_cast<double>(m), 1.95);
    p.max_iters = params.max_iters;
    p.tol = params.rel_stop_tol;
    p.rank_cap =
        params.svd_rank_cap > 0 ? params.svd_rank_cap : static_cast<int>(std::min(rows, cols));
    return p;
}

} // namespace

CompletionResult svt_complete(const PartialObservation &obs, const SolverParams &params) {
    validate(obs.mask);
    if (obs.mask.indices.empty()) throw invalid_parameter_error("observation mask is empty");
    if (obs.values.size() != obs.mask.size())
        throw invalid_parameter_error("observation values do not match the mask");

    const ComplexMatrix sampled = scatter(obs);
    const double sampled_norm = sampled.norm();
    const ResolvedParams p = resolve(params, obs.mask.rows, obs.mask.cols, obs.mask.size());

    CompletionResult result;
    result.residual_history.reserve(static_cast<std::size_t>(p.max_iters));
    if (sampled_norm == 0.0) {
        // All observed entries are zero; the zero matrix is the minimizer.
        result.estimate = ComplexMatrix::Zero(obs.mask.rows, obs.mask.cols);
        result.converged = true;
        return result;
    }

    auto misfit = [&](const ComplexMatrix &x) {
        double sq = 0.0;
        for (std::size_t t = 0; t < obs.mask.indices.size(); ++t) {
            const auto &[i, j] = obs.mask.indices[t];
            sq += std::norm(x(i, j) - obs.values[t]);
        }
        return std::sqrt(sq) / sampled_norm;
    };

    // Dual-ascent shrinkage recursion. On instances with a weak recovery
    // certificate the dual needs unreachably many steps; those stall here
    // and finish in the splitting phase below, which solves the same
    // program with the same thresholding operator.
    const double kick = std::ceil(p.tau / (p.step * spectral_norm(sampled)));
    ComplexMatrix dual = kick * p.step * sampled;
    ComplexMatrix x = ComplexMatrix::Zero(obs.mask.rows, obs.mask.cols);
    double initial_residual = -1.0;
    int runaway = 0;
    // Hand over once the trailing improvement drops below 35% per window, or
    // after 60% of the budget. Handing over early is safe: the splitting
    // phase minimizes the same objective.
    constexpr std::size_t kStallWindow = 300;
    const int phase1_budget = std::max(1, (p.max_iters * 3) / 5);
    std::vector<double> best_so_far;
    best_so_far.reserve(static_cast<std::size_t>(p.max_iters));

    while (result.iterations < phase1_budget) {
        x = shrink_singular(dual, p.tau, p.rank_cap);
        const double residual = misfit(x);
        result.residual_history.push_back(residual);
        best_so_far.push_back(best_so_far.empty() ? residual
                                                  : std::min(best_so_far.back(), residual));
        ++result.iterations;
        if (initial_residual < 0.0) initial_residual = residual;

        if (residual <= p.tol) {
            result.converged = true;
            result.estimate = std::move(x);
            return result;
        }
        runaway = residual > 10.0 * initial_residual ? runaway + 1 : 0;
        if (runaway >= 50) break; // runaway dual; hand over to the splitting phase
        const std::size_t n = best_so_far.size();
        if (n > kStallWindow && best_so_far[n - 1] > 0.65 * best_so_far[n - 1 - kStallWindow])
            break;

        for (std::size_t t = 0; t < obs.mask.indices.size(); ++t) {
            const auto &[i, j] = obs.mask.indices[t];
            dual(i, j) += p.step * (obs.values[t] - x(i, j));
        }
    }

    // Equality-constrained splitting: alternate the singular value shrink
    // with an exact reset of the observed entries.
    const double kappa = 0.1 * spectral_norm(sampled);
    ComplexMatrix z = x;
    for (std::size_t t = 0; t < obs.mask.indices.size(); ++t) {
        const auto &[i, j] = obs.mask.indices[t];
        z(i, j) = obs.values[t];
    }
    ComplexMatrix u = ComplexMatrix::Zero(obs.mask.rows, obs.mask.cols);
    while (result.iterations < p.max_iters) {
        x = shrink_singular(z - u, kappa, p.rank_cap);
        const double residual = misfit(x);
        result.residual_history.push_back(residual);
        ++result.iterations;
        if (residual <= p.tol) {
            result.converged = true;
            break;
        }
        z = x + u;
        for (std::size_t t = 0; t < obs.mask.indices.size(); ++t) {
            const auto &[i, j] = obs.mask.indices[t];
            z(i, j) = obs.values[t];
        }
        u += x - z;
    }
    result.estimate = std::move(x);
    return result;
}

CompletionResult noisy_complete(const PartialObservation &obs, double delta,
                                const SolverParams &params) {
    if (delta < 0.0) throw invalid_parameter_error("delta must be nonnegative");
    if (delta == 0.0) return svt_complete(obs, params);
    validate(obs.mask);
    if (obs.mask.indices.empty()) throw invalid_parameter_error("observation mask is empty");

    const ComplexMatrix sampled = scatter(obs);
    const double sampled_norm = sampled.norm();
    const ResolvedParams p = resolve(params, obs.mask.rows, obs.mask.cols, obs.mask.size());

    CompletionResult result;
    result.estimate = ComplexMatrix::Zero(obs.mask.rows, obs.mask.cols);
    if (sampled_norm <= delta) {
        // The zero matrix already fits within the noise ball.
        result.converged = true;
        result.residual_history.push_back(sampled_norm / std::max(sampled_norm, 1e-300));
        return result;
    }

    // Proximal iteration on 0.5*||P(X - Y)||_F^2 + w*||X||_*, unit step
    // (the sampling projector has unit Lipschitz constant), with w shrinking
    // geometrically until the misfit first reaches delta.
    constexpr double kWeightDecay = 0.7;
    constexpr int kInnerIters = 40;
    double weight = 0.99 * spectral_norm(sampled);
    ComplexMatrix x = ComplexMatrix::Zero(obs.mask.rows, obs.mask.cols);
    int total = 0;

    while (total < p.max_iters) {
        for (int inner = 0; inner < kInnerIters && total < p.max_iters; ++inner) {
            ComplexMatrix grad_step = x;
            for (std::size_t t = 0; t < obs.mask.indices.size(); ++t) {
                const auto &[i, j] = obs.mask.indices[t];
                grad_step(i, j) = obs.values[t];
            }
            x = shrink_singular(grad_step, weight, p.rank_cap);
            ++total;

            double misfit_sq = 0.0;
            for (std::size_t t = 0; t < obs.mask.indices.size(); ++t) {
                const auto &[i, j] = obs.mask.indices[t];
                misfit_sq += std::norm(x(i, j) - obs.values[t]);
            }
            const double misfit = std::sqrt(misfit_sq);
            result.residual_history.push_back(misfit / sampled_norm);
            if (misfit <= delta) {
                result.estimate = std::move(x);
                result.iterations = total;
                result.converged = true;
                return result;
            }
        }
        weight *= kWeightDecay;
    }
    result.estimate = std::move(x);
    result.iterations = total;
    result.converged = false;
    return result;
}

double stability_bound(int n1, int n2, int m, double delta) {
    if (n1 < 1 || n2 < 1) throw invalid_parameter_error("matrix dimensions must be positive");
    if (m < 1) throw invalid_parameter_error("observation count must be positive");
    if (delta < 0.0) throw invalid_parameter_error("delta must be nonnegative");
    const double dn1 = n1, dn2 = n2, dm = m;
    return 4.0 * std::sqrt((2.0 * dn1 * dn2 + dm) * std::min(dn1, dn2) / dm) * delta +
           2.0 * delta;
}

RecoveryError recovery_error(const ComplexMatrix &truth, const ComplexMatrix &estimate) {
    if (truth.rows() != estimate.rows() || truth.cols() != estimate.cols())
        throw invalid_parameter_error("shape mismatch between truth and estimate");
    RecoveryError err;
    const ComplexMatrix diff = truth - estimate;
    err.abs_frob = diff.norm();
    const double truth_norm = truth.norm();
    err.rel_frob = truth_norm > 0.0 ? err.abs_frob / truth_norm : (err.abs_frob > 0.0 ? 1.0 : 0.0);
    err.max_entry = diff.cwiseAbs().maxCoeff();
    return err;
}

bool trailing_median_nonincreasing(const std::vector<double> &history, int window,
                                   double slack) {
    const auto w = static_cast<std::size_t>(window);
    if (history.size() <= w) return true;
    auto median_at = [&](std::size_t end) { // median of history[end-w, end)
        std::vector<double> buf(history.begin() + static_cast<std::ptrdiff_t>(end - w),
                                history.begin() + static_cast<std::ptrdiff_t>(end));
        std::nth_element(buf.begin(), buf.begin() + static_cast<std::ptrdiff_t>(w / 2), buf.end());
        return buf[w / 2];
    };
    double prev = median_at(w);
    for (std::size_t end = w + 1; end <= history.size(); ++end) {
        const double cur = median_at(end);
        if (cur > prev + slack) return false;
        prev = cur;
    }
    return true;
}

} // namespace mcradar
