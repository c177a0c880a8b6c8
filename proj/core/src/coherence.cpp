// SPDX-License-Identifier: Apache-2.0
#include "mcradar/coherence.hpp"

#include <cmath>
#include <ostream>

#include <Eigen/SVD>

#include "mcradar/errors.hpp"
#include "mcradar/matrix_io.hpp"

namespace mcradar {

namespace {

constexpr double kOrthonormalityTol = 1e-8;

void require_orthonormal(const ComplexMatrix &basis) {
    if (basis.rows() < 1 || basis.cols() < 1)
        throw invalid_parameter_error("basis must be nonempty");
    if (basis.cols() > basis.rows())
        throw invalid_parameter_error("basis cannot have more columns than rows");
    const ComplexMatrix gram = basis.adjoint() * basis;
    const double err = (gram - ComplexMatrix::Identity(basis.cols(), basis.cols()))
                           .cwiseAbs()
                           .maxCoeff();
    if (err > kOrthonormalityTol)
        throw invalid_parameter_error("basis columns are not orthonormal");
}

} // namespace

double default_rank_tolerance(Eigen::Index rows, Eigen::Index cols) {
    return static_cast<double>(std::max(rows, cols)) * 0x1.0p-52;
}

SvdFactors compact_svd(const ComplexMatrix &m) {
    return compact_svd(m, default_rank_tolerance(m.rows(), m.cols()));
}

SvdFactors compact_svd(const ComplexMatrix &m, double rel_tol) {
    if (m.rows() < 1 || m.cols() < 1) throw invalid_parameter_error("matrix must be nonempty");
    if (!(rel_tol > 0.0)) throw invalid_parameter_error("rank tolerance must be positive");
    if (!m.allFinite()) throw invalid_parameter_error("matrix entries must be finite");

    Eigen::BDCSVD<ComplexMatrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd &sv = svd.singularValues();
    if (sv.size() == 0 || sv(0) <= 0.0) throw degenerate_input_error("matrix is zero");

    const double cut = rel_tol * sv(0);
    int rank = 0;
    while (rank < sv.size() && sv(rank) > cut) ++rank;
    if (rank == 0) throw degenerate_input_error("matrix is numerically zero");

    SvdFactors f;
    f.u = svd.matrixU().leftCols(rank);
    f.singular_values = sv.head(rank);
    f.v = svd.matrixV().leftCols(rank);
    f.rank = rank;
    f.tolerance = rel_tol;
    return f;
}

double subspace_coherence(const ComplexMatrix &basis) {
    require_orthonormal(basis);
    const double n = static_cast<double>(basis.rows());
    const double r = static_cast<double>(basis.cols());
    const double max_row_energy = basis.rowwise().squaredNorm().maxCoeff();
    return n / r * max_row_energy;
}

double strong_coherence(const ComplexMatrix &basis) {
    require_orthonormal(basis);
    const Eigen::Index n = basis.rows();
    const double scale = static_cast<double>(n) / static_cast<double>(basis.cols());
    double worst = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
        // Column j of the projector: P e_j = B * conj(row_j(B))^T.
        const ComplexVector pj = basis * basis.row(j).adjoint();
        for (Eigen::Index i = 0; i < n; ++i) {
            cdouble deviation = scale * pj(i);
            if (i == j) deviation -= 1.0;
            worst = std::max(worst, std::abs(deviation));
        }
    }
    return worst;
}

double mu1_parameter(const SvdFactors &f) {
    if (f.rank < 1) throw invalid_parameter_error("factors must have positive rank");
    const double n1 = static_cast<double>(f.u.rows());
    const double n2 = static_cast<double>(f.v.rows());
    const ComplexMatrix sign_matrix = f.u * f.v.adjoint();
    return std::sqrt(n1 * n2 / static_cast<double>(f.rank)) * sign_matrix.cwiseAbs().maxCoeff();
}

CoherenceReport coherence_report(const ComplexMatrix &m) {
    return coherence_report(m, default_rank_tolerance(m.rows(), m.cols()));
}

CoherenceReport coherence_report(const ComplexMatrix &m, double rel_tol) {
    const SvdFactors f = compact_svd(m, rel_tol);
    CoherenceReport rep;
    rep.mu_u = subspace_coherence(f.u);
    rep.mu_v = subspace_coherence(f.v);
    rep.mu_s_u = strong_coherence(f.u);
    rep.mu_s_v = strong_coherence(f.v);
    rep.mu1 = mu1_parameter(f);
    rep.rank = f.rank;
    rep.tol = f.tolerance;
    return rep;
}

void write_report(std::ostream &os, const CoherenceReport &report) {
    KeyValueWriter kv(os);
    kv.field("rank", report.rank);
    kv.field("mu_u", report.mu_u);
    kv.field("mu_v", report.mu_v);
    kv.field("mu_s_u", report.mu_s_u);
    kv.field("mu_s_v", report.mu_s_v);
    kv.field("mu1", report.mu1);
    kv.field("tol", report.tol);
}

TargetScene dedup_angles(const TargetScene &scene, double eps) {
    validate(scene);
    if (eps < 0.0) throw invalid_parameter_error("dedup eps must be nonnegative");
    TargetScene out;
    out.pulse_index = scene.pulse_index;
    out.pulse_repetition = scene.pulse_repetition;
    for (std::size_t k = 0; k < scene.angles.size(); ++k) {
        bool duplicate = false;
        for (double kept : out.angles)
            if (std::abs(scene.angles[k] - kept) <= eps) {
                duplicate = true;
                break;
            }
        if (!duplicate) {
            out.angles.push_back(scene.angles[k]);
            out.reflections.push_back(scene.reflections[k]);
            out.speeds.push_back(scene.speeds[k]);
        }
    }
    return out;
}

} // namespace mcradar
