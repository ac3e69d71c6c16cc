#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "diamlimit/errors.hpp"

namespace diamlimit {

// ---------------------------------------------------------------------------
// Body specifications
// ---------------------------------------------------------------------------

/// Ellipsoid { sum (z_j/a_j)^2 <= 1 }. For a unique diameter the first
/// half-axis must be strictly largest; equal leading axes are accepted
/// only for the multi-major-axis bounds workflow.
struct Ellipsoid {
    std::vector<double> half_axes;
};

/// p-superellipsoid { sum (|z_j|/a_j)^p <= 1 }, p >= 1.
struct PSuperellipsoid {
    double p = 2.0;
    std::vector<double> half_axes;
};

/// Direct pole-cap curvature data: half-diameter a and the boundary
/// Hessians at the two poles. Global validity of the pole-cap
/// representation is the caller's responsibility; it is not decidable
/// from this local data.
struct PoleCaps {
    double a = 1.0;
    Eigen::MatrixXd h_left;
    Eigen::MatrixXd h_right;
};

using BodySpec = std::variant<Ellipsoid, PSuperellipsoid, PoleCaps>;

inline int dimension(const BodySpec& body) {
    return std::visit(
        [](const auto& b) -> int {
            using T = std::decay_t<decltype(b)>;
            if constexpr (std::is_same_v<T, PoleCaps>) {
                return static_cast<int>(b.h_left.rows()) + 1;
            } else {
                return static_cast<int>(b.half_axes.size());
            }
        },
        body);
}

inline void validate_axes(std::span<const double> axes, bool require_unique_major) {
    if (axes.size() < 2) {
        throw InvalidSpecError("need dimension d >= 2");
    }
    for (std::size_t j = 0; j < axes.size(); ++j) {
        if (!(axes[j] > 0.0)) {
            throw InvalidSpecError("half-axes must be positive");
        }
        if (j >= 2 && axes[j] > axes[j - 1]) {
            throw InvalidSpecError("half-axes must be nonincreasing from the second on");
        }
    }
    if (require_unique_major && !(axes[0] > axes[1])) {
        throw NonUniqueAxisError("first half-axis must be strictly largest");
    }
    if (!(axes[0] >= axes[1])) {
        throw InvalidSpecError("first half-axis must be largest");
    }
}

/// Membership test with a small relative tolerance so that points
/// produced by the samplers sit inside despite rounding.
inline bool contains(const BodySpec& body, std::span<const double> z, double tol = 1e-9) {
    if (std::cmp_not_equal(z.size(), dimension(body))) {
        throw DimensionMismatchError("point dimension does not match body");
    }
    if (const auto* e = std::get_if<Ellipsoid>(&body)) {
        double q = 0.0;
        for (std::size_t j = 0; j < z.size(); ++j) {
            const double t = z[j] / e->half_axes[j];
            q += t * t;
        }
        return q <= 1.0 + tol;
    }
    if (const auto* s = std::get_if<PSuperellipsoid>(&body)) {
        double q = 0.0;
        for (std::size_t j = 0; j < z.size(); ++j) {
            q += std::pow(std::abs(z[j]) / s->half_axes[j], s->p);
        }
        return q <= 1.0 + tol;
    }
    throw InvalidSpecError("membership is not defined for raw pole-cap data");
}

// ---------------------------------------------------------------------------
// Pole-cap geometry
// ---------------------------------------------------------------------------

/// Eigendecomposed curvature data at one pole: ascending principal
/// curvatures kappa_2 <= ... <= kappa_d with orthonormal directions as
/// the columns of U, plus the reconstructed Hessian H = U D U'.
struct PoleCapGeometry {
    double a = 1.0;
    Eigen::VectorXd kappa;
    Eigen::MatrixXd U;
    Eigen::MatrixXd H;
    bool lemma1_ok = false;   // kappa_2 > 1/(2a)

    int dim() const { return static_cast<int>(kappa.size()) + 1; }
};

/// Hessian of the ellipsoid boundary graph at either pole:
/// diag(a_1/a_2^2, ..., a_1/a_d^2). Identical for both poles.
inline Eigen::MatrixXd ellipsoid_hessian(std::span<const double> half_axes) {
    validate_axes(half_axes, /*require_unique_major=*/true);
    const auto m = static_cast<Eigen::Index>(half_axes.size()) - 1;
    Eigen::VectorXd diag(m);
    for (Eigen::Index j = 0; j < m; ++j) {
        const double aj = half_axes[static_cast<std::size_t>(j) + 1];
        diag[j] = half_axes[0] / (aj * aj);
    }
    return diag.asDiagonal();
}

enum class Lemma1Policy {
    Enforce,   // throw when kappa_2 <= 1/(2a); required for limit-law work
    Report,    // record the violation in lemma1_ok and keep going
};

inline PoleCapGeometry eigendecompose_polecap(double a, const Eigen::MatrixXd& hessian,
                                              Lemma1Policy policy = Lemma1Policy::Enforce) {
    if (!(a > 0.0)) {
        throw InvalidSpecError("half-diameter a must be positive");
    }
    if (hessian.rows() != hessian.cols() || hessian.rows() < 1) {
        throw DimensionMismatchError("pole Hessian must be square and nonempty");
    }
    const double asym = (hessian - hessian.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-10) {
        throw InvalidSpecError("pole Hessian is not symmetric (max asymmetry " +
                               std::to_string(asym) + ")");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(hessian);
    if (solver.info() != Eigen::Success) {
        throw InvalidSpecError("eigendecomposition failed");
    }
    PoleCapGeometry g;
    g.a = a;
    g.kappa = solver.eigenvalues();   // ascending
    g.U = solver.eigenvectors();
    if (!(g.kappa[0] > 0.0)) {
        throw NotPositiveDefiniteError("pole Hessian must be positive definite");
    }
    g.H = g.U * g.kappa.asDiagonal() * g.U.transpose();
    g.lemma1_ok = g.kappa[0] > 1.0 / (2.0 * a);
    if (policy == Lemma1Policy::Enforce && !g.lemma1_ok) {
        throw Lemma1ViolatedError("smallest principal curvature must exceed 1/(2a)");
    }
    return g;
}

/// Both pole-cap geometries of an ellipsoid (identical by symmetry).
inline PoleCapGeometry ellipsoid_polecap(std::span<const double> half_axes) {
    return eigendecompose_polecap(half_axes[0], ellipsoid_hessian(half_axes));
}

// ---------------------------------------------------------------------------
// Unique-diameter condition machinery
// ---------------------------------------------------------------------------

/// The 2(d-1) x 2(d-1) curvature block matrix
///   A(eta) = [ 2 a eta D_l - I      U_l' U_r        ]
///            [ U_r' U_l             2 a eta D_r - I ].
/// Positive semi-definiteness for some eta < 1 certifies the unique
/// diameter near the poles.
inline Eigen::MatrixXd build_A(double eta, const PoleCapGeometry& left,
                               const PoleCapGeometry& right) {
    if (left.dim() != right.dim()) {
        throw DimensionMismatchError("pole geometries have different dimension");
    }
    if (left.a != right.a) {
        throw InvalidSpecError("both poles must share the same half-diameter a");
    }
    const Eigen::Index m = left.kappa.size();
    const double a = left.a;
    Eigen::MatrixXd A(2 * m, 2 * m);
    A.topLeftCorner(m, m) =
        (2.0 * a * eta * left.kappa).asDiagonal().toDenseMatrix()
        - Eigen::MatrixXd::Identity(m, m);
    A.bottomRightCorner(m, m) =
        (2.0 * a * eta * right.kappa).asDiagonal().toDenseMatrix()
        - Eigen::MatrixXd::Identity(m, m);
    A.topRightCorner(m, m) = left.U.transpose() * right.U;
    A.bottomLeftCorner(m, m) = A.topRightCorner(m, m).transpose();
    return A;
}

enum class Verdict { Pass, Fail, Indeterminate };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "PASS";
        case Verdict::Fail: return "FAIL";
        case Verdict::Indeterminate: return "INDETERMINATE";
    }
    return "?";
}

struct ConditionReport {
    bool lemma1_left = false;
    bool lemma1_right = false;
    bool sufficient_ok = false;            // 1/kappa_2^l + 1/kappa_2^r < 2a
    double lambda_min_a1 = 0.0;            // smallest eigenvalue of A(1)
    std::optional<double> eta_star;        // minimal eta with A(eta) >= 0
    std::optional<Eigen::VectorXd> witness; // z with z' A(1) z < 0 on FAIL
    Verdict verdict = Verdict::Indeterminate;
};

/// Sufficient criterion for Condition 3: 1/kappa_2^l + 1/kappa_2^r < 2a.
inline bool check_sufficient(const PoleCapGeometry& left, const PoleCapGeometry& right) {
    return 1.0 / left.kappa[0] + 1.0 / right.kappa[0] < 2.0 * left.a;
}

/// Decides the unique-diameter condition from the pole curvature data.
/// FAIL when A(1) is not positive semi-definite (then no unique diameter
/// is possible); PASS with the minimal eta when some A(eta), eta < 1, is
/// PSD; INDETERMINATE in the remaining gap, which the theory leaves open.
/// lambda_min(A(eta)) is nondecreasing in eta, so bisection applies.
inline ConditionReport check_condition3(const PoleCapGeometry& left,
                                        const PoleCapGeometry& right,
                                        double tol = 1e-8) {
    if (!(tol > 0.0)) {
        throw InvalidSpecError("tolerance must be positive");
    }
    ConditionReport report;
    report.lemma1_left = left.lemma1_ok;
    report.lemma1_right = right.lemma1_ok;
    report.sufficient_ok = check_sufficient(left, right);

    const auto lambda_min = [&](double eta, Eigen::VectorXd* vec) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(build_A(eta, left, right));
        if (vec != nullptr) {
            *vec = solver.eigenvectors().col(0);
        }
        return solver.eigenvalues()[0];
    };

    Eigen::VectorXd vec1;
    report.lambda_min_a1 = lambda_min(1.0, &vec1);
    if (report.lambda_min_a1 < -tol || !left.lemma1_ok || !right.lemma1_ok) {
        report.verdict = Verdict::Fail;
        report.witness = vec1;
        return report;
    }

    // A(0) has -1 on the whole diagonal with an orthogonal coupling block,
    // so lambda_min(A(0)) <= -1: the bracket [0, 1] is always valid.
    double lo = 0.0;
    double hi = 1.0;
    while (hi - lo > 1e-6) {
        const double mid = 0.5 * (lo + hi);
        if (lambda_min(mid, nullptr) >= -tol) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    if (hi < 1.0) {
        report.eta_star = hi;
        report.verdict = Verdict::Pass;
    } else {
        report.verdict = Verdict::Indeterminate;
    }
    return report;
}

// ---------------------------------------------------------------------------
// Limit sets and projection bounds
// ---------------------------------------------------------------------------

/// Membership in the osculating paraboloid P(H) = { (z1, zt) : zt'H zt / 2 <= z1 }.
inline bool in_limit_set(std::span<const double> z, const PoleCapGeometry& geom) {
    if (std::cmp_not_equal(z.size(), geom.dim())) {
        throw DimensionMismatchError("point dimension does not match geometry");
    }
    const Eigen::Map<const Eigen::VectorXd> zt(z.data() + 1,
                                               static_cast<Eigen::Index>(z.size()) - 1);
    return 0.5 * zt.dot(geom.H * zt) <= z[0];
}

/// Membership in the p-norm limit set
/// P^p = { z : sum_{k>=2} (|z_k|/a_k)^p <= p z_1 / a_1 }.
inline bool in_limit_set_p(std::span<const double> z, double p,
                           std::span<const double> half_axes) {
    if (z.size() != half_axes.size()) {
        throw DimensionMismatchError("point dimension does not match half-axes");
    }
    double lhs = 0.0;
    for (std::size_t k = 1; k < z.size(); ++k) {
        lhs += std::pow(std::abs(z[k]) / half_axes[k], p);
    }
    return lhs <= p * z[0] / half_axes[0];
}

/// Upper bound g(xbar, ybar) on |x - y| for points of a multi-major-axis
/// ellipsoid in terms of their projections onto the e major coordinates:
/// |xbar - ybar| <= |x - y| <= g(xbar, ybar).
inline double g_bound(std::span<const double> xbar, std::span<const double> ybar,
                      double a_next) {
    if (xbar.size() != ybar.size()) {
        throw DimensionMismatchError("projections must share a dimension");
    }
    double nx2 = 0.0;
    double ny2 = 0.0;
    for (std::size_t j = 0; j < xbar.size(); ++j) {
        nx2 += xbar[j] * xbar[j];
        ny2 += ybar[j] * ybar[j];
    }
    if (nx2 > 1.0 + 1e-12 || ny2 > 1.0 + 1e-12) {
        throw InvalidSpecError("projections must lie in the unit ball");
    }
    const double sum = std::sqrt(nx2) + std::sqrt(ny2);
    return std::sqrt(sum * sum + 2.0 * a_next * a_next * (2.0 - nx2 - ny2));
}

} // namespace diamlimit
