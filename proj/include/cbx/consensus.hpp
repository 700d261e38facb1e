#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include "cbx/types.hpp"

namespace cbx {

/// Normalized Gibbs weights plus the log-sum-exp bookkeeping.
/// `shift` is the subtracted minimum value; `log_normalizer` is
/// log(sum_k exp(-alpha * (f_k - shift))).
struct WeightResult {
    Vector weights;
    double shift = 0.0;
    double log_normalizer = 0.0;
};

/// Consensus point with the weights that produced it. `covariance` is filled
/// by the CBS path only.
struct ConsensusResult {
    Vector point;
    Vector weights;
    double shift = 0.0;
    double log_normalizer = 0.0;
    std::optional<Matrix> covariance;
};

/// Per-particle consensus points (one row per particle) of polarized CBO.
struct PolarizedResult {
    Matrix points;  // N x d
    Vector weights; // plain Gibbs weights, shared across rows
    double shift = 0.0;
};

/// w_i = exp(-alpha (f_i - min f)) / sum_k exp(-alpha (f_k - min f)).
/// Subtracting the minimum keeps the largest exponent at zero, so the result
/// is a valid simplex vector for any finite values and any alpha up to 1e300.
/// alpha = 0 is accepted as the uniform-weight limit.
inline WeightResult log_weights(const Vector& values, double alpha) {
    if (values.size() == 0) throw ConfigError("log_weights: empty value vector");
    if (!(alpha >= 0.0)) throw ConfigError("log_weights: alpha must be >= 0");
    if (!values.allFinite())
        throw EvaluationError("log_weights: non-finite objective value");

    WeightResult r;
    r.shift = values.minCoeff();
    r.weights = (-alpha * (values.array() - r.shift)).exp().matrix();
    const double total = r.weights.sum();  // >= 1: the minimum contributes exp(0)
    r.weights /= total;
    r.log_normalizer = std::log(total);
    return r;
}

namespace detail {

/// Weighted mean of the rows, clamped to the componentwise hull so the
/// consensus never leaves [min_i x_ik, max_i x_ik] by rounding.
inline Vector hull_clamped_mean(const Matrix& positions, const Vector& weights) {
    Vector c = positions.transpose() * weights;
    const Vector lo = positions.colwise().minCoeff().transpose();
    const Vector hi = positions.colwise().maxCoeff().transpose();
    return c.cwiseMax(lo).cwiseMin(hi);
}

}  // namespace detail

/// Consensus point c = sum_i w_i x_i with Gibbs weights from `values`.
inline ConsensusResult consensus_point(const Matrix& positions, const Vector& values,
                                       double alpha) {
    if (positions.rows() != values.size())
        throw ConfigError("consensus_point: values not row-aligned with positions");
    WeightResult w = log_weights(values, alpha);
    ConsensusResult r;
    r.point = detail::hull_clamped_mean(positions, w.weights);
    r.weights = std::move(w.weights);
    r.shift = w.shift;
    r.log_normalizer = w.log_normalizer;
    return r;
}

inline ConsensusResult consensus_point(const Ensemble& ensemble, const Vector& values,
                                       double alpha) {
    return consensus_point(ensemble.positions, values, alpha);
}

/// Per-particle consensus c^i = sum_j k(x^i,x^j) w_j x^j / sum_j k(x^i,x^j) w_j
/// with the Gaussian kernel k(x,y) = exp(-|x-y|^2 / (2 kappa^2)). Every row is
/// normalized by its own largest exponent, so concentration cannot overflow.
/// kappa = +inf reduces each row to the standard consensus point.
inline PolarizedResult polarized_consensus(const Matrix& positions, const Vector& values,
                                           double alpha, double kernel_width) {
    if (positions.rows() != values.size())
        throw ConfigError("polarized_consensus: values not row-aligned with positions");
    if (!(kernel_width > 0.0)) throw ConfigError("polarized_consensus: kernel_width must be > 0");

    const Index n = positions.rows();
    const Index d = positions.cols();
    const double min_value = [&] {
        if (!values.allFinite())
            throw EvaluationError("polarized_consensus: non-finite objective value");
        return values.minCoeff();
    }();
    // log of the unnormalized Gibbs weights, shifted to peak at zero
    const Vector log_gibbs = (-alpha * (values.array() - min_value)).matrix();
    const double inv_two_kappa_sq =
        std::isinf(kernel_width) ? 0.0 : 1.0 / (2.0 * kernel_width * kernel_width);

    PolarizedResult r;
    r.points.resize(n, d);
    r.shift = min_value;
    r.weights = log_gibbs.array().exp().matrix();
    r.weights /= r.weights.sum();

    Vector row_exponents(n);
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < n; ++j) {
            const double dist_sq = (positions.row(i) - positions.row(j)).squaredNorm();
            row_exponents[j] = log_gibbs[j] - dist_sq * inv_two_kappa_sq;
        }
        const Vector kernel_weights =
            (row_exponents.array() - row_exponents.maxCoeff()).exp().matrix();
        r.points.row(i) =
            detail::hull_clamped_mean(positions, kernel_weights / kernel_weights.sum())
                .transpose();
    }
    return r;
}

inline PolarizedResult polarized_consensus(const Ensemble& ensemble, const Vector& values,
                                           double alpha, double kernel_width) {
    return polarized_consensus(ensemble.positions, values, alpha, kernel_width);
}

/// Weighted ensemble covariance C = sum_i w_i (x^i - c)(x^i - c)^T.
/// Normalized weights, no Bessel-style correction; symmetrized at the end.
inline Matrix weighted_covariance(const Matrix& positions, const Vector& weights,
                                  const Vector& center) {
    if (positions.rows() != weights.size())
        throw ConfigError("weighted_covariance: weights not row-aligned with positions");
    if (positions.cols() != center.size())
        throw ConfigError("weighted_covariance: center has wrong dimension");
    const Matrix centered = positions.rowwise() - center.transpose();
    Matrix c = centered.transpose() * weights.asDiagonal() * centered;
    return 0.5 * (c + c.transpose());
}

inline Matrix weighted_covariance(const Ensemble& ensemble, const Vector& weights,
                                  const Vector& center) {
    return weighted_covariance(ensemble.positions, weights, center);
}

/// Symmetric PSD square root via eigendecomposition, with negative eigenvalues
/// (rounding artifacts) clamped to zero. Input asymmetric beyond 1e-10 is an
/// error.
inline Matrix sym_matrix_sqrt(const Matrix& c) {
    if (c.rows() != c.cols()) throw NumericalError("sym_matrix_sqrt: matrix must be square");
    const double asym = (c - c.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-10)
        throw NumericalError("sym_matrix_sqrt: input asymmetric beyond tolerance (|C - C^T| = " +
                             std::to_string(asym) + ")");
    const Matrix sym = 0.5 * (c + c.transpose());
    Eigen::SelfAdjointEigenSolver<Matrix> eig(sym);
    if (eig.info() != Eigen::Success)
        throw NumericalError("sym_matrix_sqrt: eigendecomposition failed");
    const Vector roots = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    Matrix s = eig.eigenvectors() * roots.asDiagonal() * eig.eigenvectors().transpose();
    return 0.5 * (s + s.transpose());
}

}  // namespace cbx
