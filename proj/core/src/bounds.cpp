// SPDX-License-Identifier: Apache-2.0
#include "mcradar/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <vector>

#include <Eigen/Eigenvalues>

#include "mcradar/errors.hpp"
#include "mcradar/matrix_io.hpp"

namespace mcradar {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();

// Golden-section maximization of f on [a, b], assuming unimodality there.
// Returns the best value found; final bracket width <= width_tol.
template <typename F>
double golden_max(F f, double a, double b, double width_tol) {
    constexpr double invphi = 0.6180339887498949;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > width_tol) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = f(x1);
        }
    }
    return std::max({f(a), f1, f2, f(b)});
}

// |d/dx dirichlet_sq| <= pi*M / sin^2(pi*xi) + 2*pi / sin^3(pi*xi) on [xi, 1/2].
double dirichlet_sq_derivative_bound(int m, double xi) {
    const double s = std::sin(kPi * xi);
    return kPi * m / (s * s) + 2.0 * kPi / (s * s * s);
}

double side_mu0(int m, int k, double beta) {
    const double denom = m - (k - 1) * std::sqrt(beta);
    return denom > 0.0 ? m / denom : kInf;
}

} // namespace

double dirichlet_sq(int num_antennas, double x) {
    if (num_antennas < 1) throw invalid_parameter_error("antenna count must be positive");
    const double m = num_antennas;
    // Fold to the nearest-integer offset; exact for integer M since
    // sin(pi*M*(u + n)) = +/- sin(pi*M*u).
    const double u = x - std::round(x);
    if (u == 0.0) return m * m;
    const double ratio = std::sin(kPi * m * u) / std::sin(kPi * u);
    return ratio * ratio;
}

double wrap_g(double x) {
    if (x < 0.0) throw invalid_parameter_error("wrap distance needs nonnegative input");
    const double up = std::ceil(x) - x;
    if (up <= 0.5) return up;
    return x - std::floor(x);
}

double min_separation_xi(double spacing_over_lambda, std::span<const double> angles) {
    if (!(spacing_over_lambda > 0.0))
        throw invalid_parameter_error("spacing over wavelength must be positive");
    if (angles.size() < 2)
        throw invalid_parameter_error("separation needs at least two angles");
    double xi = 0.5;
    for (std::size_t i = 0; i < angles.size(); ++i)
        for (std::size_t j = i + 1; j < angles.size(); ++j) {
            const double diff = std::abs(std::sin(angles[i]) - std::sin(angles[j]));
            xi = std::min(xi, wrap_g(spacing_over_lambda * diff));
        }
    return xi;
}

double beta_sup_finite(int num_antennas, double xi) {
    if (num_antennas < 1) throw invalid_parameter_error("antenna count must be positive");
    if (!(xi > 0.0))
        throw unbounded_supremum_error("kernel supremum is unbounded for xi <= 0");
    if (xi > 0.5) throw invalid_parameter_error("xi must lie in (0, 1/2]");
    const int m = num_antennas;
    auto f = [m](double x) { return dirichlet_sq(m, x); };
    if (xi == 0.5) return f(0.5);

    const double span = 0.5 - xi;
    const auto steps = static_cast<std::size_t>(std::ceil(span * 64.0 * m)) + 1;
    const double h = span / static_cast<double>(steps);

    std::vector<double> values(steps + 1);
    for (std::size_t i = 0; i <= steps; ++i)
        values[i] = f(i == steps ? 0.5 : xi + static_cast<double>(i) * h);

    double best = std::max(values.front(), values.back());
    // Indices of the three largest interior local maxima.
    std::vector<std::size_t> candidates;
    for (std::size_t i = 1; i + 1 <= steps; ++i)
        if (values[i] >= values[i - 1] && values[i] >= values[i + 1]) candidates.push_back(i);
    std::sort(candidates.begin(), candidates.end(),
              [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
    if (candidates.size() > 3) candidates.resize(3);

    constexpr double kRefineWidth = 1e-12;
    for (std::size_t i : candidates) {
        const double lo = xi + static_cast<double>(i - 1) * h;
        const double hi = std::min(0.5, xi + static_cast<double>(i + 1) * h);
        best = std::max(best, golden_max(f, lo, hi, kRefineWidth));
    }
    return best + dirichlet_sq_derivative_bound(m, xi) * kRefineWidth;
}

double beta_sup_uniform(double xi) {
    if (!(xi > 0.0))
        throw unbounded_supremum_error("kernel supremum is unbounded for xi <= 0");
    if (xi > 0.5) throw invalid_parameter_error("xi must lie in (0, 1/2]");
    const double s = std::sin(kPi * xi);
    return 1.0 / (s * s);
}

UlaBoundReport ula_bounds(int m_t, int m_r, int k_targets, double xi_t, double xi_r) {
    if (m_t < 1 || m_r < 1) throw invalid_parameter_error("antenna counts must be positive");
    if (k_targets < 1) throw invalid_parameter_error("target count must be positive");

    UlaBoundReport rep;
    rep.m_t = m_t;
    rep.m_r = m_r;
    rep.k_targets = k_targets;

    if (k_targets == 1) {
        // No angle pairs: the single steering column is unit modulus and the
        // bound is exact.
        rep.xi_t = rep.xi_r = rep.xi = kNan;
        rep.beta_t = rep.beta_r = rep.beta_uniform = kNan;
        rep.k_max = kInf;
        rep.feasible = true;
        rep.mu0_bound = 1.0;
        rep.mu1_bound = 1.0;
        return rep;
    }

    if (xi_t < 0.0 || xi_t > 0.5 || xi_r < 0.0 || xi_r > 0.5)
        throw invalid_parameter_error("xi values must lie in [0, 1/2]");
    rep.xi_t = xi_t;
    rep.xi_r = xi_r;
    rep.xi = std::min(xi_t, xi_r);
    rep.beta_t = xi_t > 0.0 ? beta_sup_finite(m_t, xi_t) : kInf;
    rep.beta_r = xi_r > 0.0 ? beta_sup_finite(m_r, xi_r) : kInf;
    rep.beta_uniform = rep.xi > 0.0 ? beta_sup_uniform(rep.xi) : kNan;

    rep.k_max = std::max(m_t / std::sqrt(rep.beta_t), m_r / std::sqrt(rep.beta_r));
    rep.feasible = static_cast<double>(k_targets) <= rep.k_max;
    if (rep.feasible) {
        rep.mu0_bound = std::max(side_mu0(m_t, k_targets, rep.beta_t),
                                 side_mu0(m_r, k_targets, rep.beta_r));
        rep.mu1_bound = rep.mu0_bound * std::sqrt(static_cast<double>(k_targets));
    } else {
        rep.mu0_bound = kNan;
        rep.mu1_bound = kNan;
    }
    return rep;
}

UlaBoundReport ula_bounds_for_scene(int m_t, int m_r, double dt_over_lambda,
                                    double dr_over_lambda, std::span<const double> angles) {
    const int k = static_cast<int>(angles.size());
    if (k == 1) return ula_bounds(m_t, m_r, 1, kNan, kNan);
    const double xi_t = min_separation_xi(dt_over_lambda, angles);
    const double xi_r = min_separation_xi(dr_over_lambda, angles);
    return ula_bounds(m_t, m_r, k, xi_t, xi_r);
}

double xi_for_angle_band(double eta) {
    if (!(eta > 0.0) || eta > kPi / 2.0)
        throw invalid_parameter_error("band margin must lie in (0, pi/2]");
    return 1.0 - std::cos(eta / 2.0);
}

double phi_general(const ArrayGeometry &geom, double x, double y) {
    validate(geom);
    const auto r = normalized_positions(geom);
    const Eigen::Vector2d diff(std::cos(x) - std::cos(y), std::sin(x) - std::sin(y));
    double re = 0.0, im = 0.0;
    for (const auto &pos : r) {
        const double phase = 2.0 * kPi * pos.dot(diff);
        re += std::cos(phase);
        im += std::sin(phase);
    }
    return re * re + im * im;
}

AdmissibleSet AdmissibleSet::banded(double eta) {
    if (!(eta > 0.0) || eta >= kPi)
        throw invalid_parameter_error("band margin must lie in (0, pi)");
    AdmissibleSet set;
    set.x_lo = set.y_lo = -kPi / 2.0;
    set.x_hi = set.y_hi = kPi / 2.0;
    set.contains = [eta](double x, double y) {
        const double d = std::abs(y - x);
        return d >= eta && d <= kPi - eta && std::abs(x) <= kPi / 2.0 &&
               std::abs(y) <= kPi / 2.0;
    };
    return set;
}

AdmissibleSet AdmissibleSet::diagonal_gap(double eta) {
    if (!(eta > 0.0) || eta >= kPi)
        throw invalid_parameter_error("diagonal gap must lie in (0, pi)");
    AdmissibleSet set;
    set.x_lo = set.y_lo = -kPi / 2.0;
    set.x_hi = set.y_hi = kPi / 2.0;
    set.contains = [eta](double x, double y) {
        const double d = std::abs(y - x);
        return d >= eta && d <= kPi && std::abs(x) <= kPi / 2.0 && std::abs(y) <= kPi / 2.0;
    };
    return set;
}

AdmissibleSet AdmissibleSet::single_point(double x, double y) {
    AdmissibleSet set;
    set.x_lo = set.x_hi = x;
    set.y_lo = set.y_hi = y;
    set.contains = [x, y](double px, double py) { return px == x && py == y; };
    return set;
}

namespace {

constexpr double kBoxShrink = 0.35;
constexpr int kRefineRounds = 16;

double kernel_gradient_bound(const ArrayGeometry &geom) {
    const auto r = normalized_positions(geom);
    double rho = 0.0;
    for (const auto &pos : r) rho += pos.norm();
    return 4.0 * kPi * static_cast<double>(geom.size()) * rho; // per axis
}

} // namespace

double general_beta_margin(const ArrayGeometry &geom, double resolution) {
    // Inflation applied after the shrinking-box refinement: gradient bound
    // times the final box diameter, both axes.
    const double final_width = resolution * std::pow(kBoxShrink, kRefineRounds);
    return kernel_gradient_bound(geom) * final_width * 4.0;
}

double general_beta(const ArrayGeometry &geom, const AdmissibleSet &admissible,
                    double resolution) {
    validate(geom);
    if (!(resolution > 0.0)) throw invalid_parameter_error("grid resolution must be positive");
    if (!admissible.contains) throw invalid_parameter_error("admissible set has no predicate");
    if (admissible.x_hi < admissible.x_lo || admissible.y_hi < admissible.y_lo)
        throw invalid_parameter_error("admissible bounding box is empty");

    const auto r = normalized_positions(geom);
    const double m = static_cast<double>(geom.size());
    auto eval = [&r](double x, double y) {
        const Eigen::Vector2d diff(std::cos(x) - std::cos(y), std::sin(x) - std::sin(y));
        double re = 0.0, im = 0.0;
        for (const auto &pos : r) {
            const double phase = 2.0 * kPi * pos.dot(diff);
            re += std::cos(phase);
            im += std::sin(phase);
        }
        return re * re + im * im;
    };

    const auto nx = static_cast<std::size_t>(
        std::floor((admissible.x_hi - admissible.x_lo) / resolution));
    const auto ny = static_cast<std::size_t>(
        std::floor((admissible.y_hi - admissible.y_lo) / resolution));

    struct Candidate {
        double value, x, y;
        bool operator<(const Candidate &other) const { return value > other.value; }
    };
    // Best grid points, kept small; refinement pulls each one to its local peak.
    constexpr std::size_t kMaxCandidates = 64;
    std::vector<Candidate> top;
    std::size_t hits = 0;
    for (std::size_t ix = 0; ix <= nx; ++ix) {
        const double x =
            ix == nx ? admissible.x_hi : admissible.x_lo + static_cast<double>(ix) * resolution;
        for (std::size_t iy = 0; iy <= ny; ++iy) {
            const double y = iy == ny ? admissible.y_hi
                                      : admissible.y_lo + static_cast<double>(iy) * resolution;
            if (!admissible.contains(x, y)) continue;
            ++hits;
            const double value = eval(x, y);
            if (top.size() < kMaxCandidates) {
                top.push_back({value, x, y});
                std::push_heap(top.begin(), top.end());
            } else if (value > top.front().value) {
                std::pop_heap(top.begin(), top.end());
                top.back() = {value, x, y};
                std::push_heap(top.begin(), top.end());
            }
        }
    }
    if (hits == 0) throw invalid_parameter_error("admissible set contains no grid points");

    // Shrinking-box ascent around each candidate, restricted to the set.
    double best = 0.0;
    for (const Candidate &c : top) best = std::max(best, c.value);
    for (Candidate c : top) {
        double width = resolution;
        for (int round = 0; round < kRefineRounds; ++round) {
            Candidate local = c;
            for (int dx = -2; dx <= 2; ++dx)
                for (int dy = -2; dy <= 2; ++dy) {
                    if (dx == 0 && dy == 0) continue;
                    const double x = c.x + width * 0.5 * dx;
                    const double y = c.y + width * 0.5 * dy;
                    if (!admissible.contains(x, y)) continue;
                    const double value = eval(x, y);
                    if (value > local.value) local = {value, x, y};
                }
            c = local;
            width *= kBoxShrink;
        }
        best = std::max(best, c.value);
    }
    // The kernel never exceeds M^2; hitting the clamp means the admissible
    // set touches the diagonal and the bound is trivial.
    return std::min(best + general_beta_margin(geom, resolution), m * m);
}

GeneralBoundReport general_bounds(const ArrayGeometry &tx, const ArrayGeometry &rx,
                                  int k_targets, const AdmissibleSet &admissible,
                                  double resolution) {
    if (k_targets < 1) throw invalid_parameter_error("target count must be positive");
    GeneralBoundReport rep;
    rep.m_t = tx.size();
    rep.m_r = rx.size();
    rep.k_targets = k_targets;
    rep.grid_resolution = resolution;

    if (k_targets == 1) {
        rep.beta_t = rep.beta_r = kNan;
        rep.k_max = kInf;
        rep.feasible = true;
        rep.mu0_bound = 1.0;
        rep.mu1_bound = 1.0;
        return rep;
    }

    rep.beta_t = general_beta(tx, admissible, resolution);
    rep.beta_r = general_beta(rx, admissible, resolution);
    rep.k_max = std::max(rep.m_t / std::sqrt(rep.beta_t), rep.m_r / std::sqrt(rep.beta_r));
    rep.feasible = static_cast<double>(k_targets) <= rep.k_max;
    if (rep.feasible) {
        rep.mu0_bound = std::max(side_mu0(rep.m_t, k_targets, rep.beta_t),
                                 side_mu0(rep.m_r, k_targets, rep.beta_r));
        rep.mu1_bound = rep.mu0_bound * std::sqrt(static_cast<double>(k_targets));
    } else {
        rep.mu0_bound = kNan;
        rep.mu1_bound = kNan;
    }
    return rep;
}

EigenBracket wolkowicz_brackets(const ComplexMatrix &m) {
    if (m.rows() != m.cols() || m.rows() < 1)
        throw invalid_parameter_error("eigenvalue brackets need a square matrix");
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale)
        throw invalid_parameter_error("matrix is not Hermitian");

    const auto n = static_cast<double>(m.rows());
    EigenBracket br;
    br.tau = m.trace().real() / n;
    // tr(M^2) = ||M||_F^2 for Hermitian M.
    const double mean_sq = m.squaredNorm() / n;
    br.s = std::sqrt(std::max(0.0, mean_sq - br.tau * br.tau));
    if (m.rows() == 1) {
        br.lambda_min_lo = br.lambda_min_hi = br.tau;
        br.lambda_max_lo = br.lambda_max_hi = br.tau;
        return br;
    }
    const double root = std::sqrt(n - 1.0);
    br.lambda_min_lo = br.tau - br.s * root;
    br.lambda_min_hi = br.tau - br.s / root;
    br.lambda_max_lo = br.tau + br.s / root;
    br.lambda_max_hi = br.tau + br.s * root;
    return br;
}

SampleThresholds sample_requirement(int n, int r, double mu0, double mu1, double mu_strong,
                                    const ThresholdConstants &constants) {
    if (n < 1 || r < 1) throw invalid_parameter_error("dimension and rank must be positive");
    if (!(mu0 > 0.0) || !(mu1 > 0.0) || !(mu_strong > 0.0))
        throw invalid_parameter_error("coherence parameters must be positive");
    const double dn = n;
    const double dr = r;
    const double logn = std::log(dn);

    SampleThresholds t;
    const double lead =
        std::max({mu1 * mu1, std::sqrt(mu0) * mu1, mu0 * std::pow(dn, 0.25)});
    t.basic = constants.c * lead * dn * dr * constants.beta * logn;
    t.basic_improved = constants.c * mu0 * std::pow(dn, 1.2) * dr * constants.beta * logn;
    t.improved_eligible = dr <= std::pow(dn, 0.2) / mu0;
    t.strong_quartic = constants.c1 * std::pow(mu_strong, 4.0) * dn * dr * dr * logn * logn;
    t.strong_quadratic = constants.c2 * mu_strong * mu_strong * dn * dr * std::pow(logn, 6.0);

    t.smallest = t.basic;
    t.smallest_name = "basic";
    auto consider = [&t](double value, const char *name) {
        if (value < t.smallest) {
            t.smallest = value;
            t.smallest_name = name;
        }
    };
    if (t.improved_eligible) consider(t.basic_improved, "basic_improved");
    consider(t.strong_quartic, "strong_quartic");
    consider(t.strong_quadratic, "strong_quadratic");
    return t;
}

void write_report(std::ostream &os, const UlaBoundReport &rep) {
    KeyValueWriter kv(os);
    kv.field("m_t", rep.m_t);
    kv.field("m_r", rep.m_r);
    kv.field("k", rep.k_targets);
    kv.field("xi_t", rep.xi_t);
    kv.field("xi_r", rep.xi_r);
    kv.field("xi", rep.xi);
    kv.field("beta_t", rep.beta_t);
    kv.field("beta_r", rep.beta_r);
    kv.field("beta_uniform", rep.beta_uniform);
    kv.field("k_max", rep.k_max);
    kv.field("feasible", rep.feasible ? 1 : 0);
    kv.field("mu0_bound", rep.mu0_bound);
    kv.field("mu1_bound", rep.mu1_bound);
}

void write_report(std::ostream &os, const GeneralBoundReport &rep) {
    KeyValueWriter kv(os);
    kv.field("m_t", rep.m_t);
    kv.field("m_r", rep.m_r);
    kv.field("k", rep.k_targets);
    kv.field("beta_t", rep.beta_t);
    kv.field("beta_r", rep.beta_r);
    kv.field("k_max", rep.k_max);
    kv.field("feasible", rep.feasible ? 1 : 0);
    kv.field("mu0_bound", rep.mu0_bound);
    kv.field("mu1_bound", rep.mu1_bound);
    kv.field("grid_resolution", rep.grid_resolution);
}

} // namespace mcradar
