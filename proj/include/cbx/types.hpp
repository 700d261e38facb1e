#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cbx {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

/// Invalid configuration: bad bounds, out-of-range parameters, bad config keys.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// File could not be read or written.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An objective evaluation produced NaN/Inf. `index()` is the offending row
/// of the batch, or -1 for a single-point evaluation.
class EvaluationError : public std::runtime_error {
public:
    EvaluationError(const std::string& msg, Index index = -1)
        : std::runtime_error(msg), index_(index) {}
    Index index() const noexcept { return index_; }

private:
    Index index_;
};

/// Particle positions became non-finite. `iteration()` is the iteration that
/// produced them, or -1 when not tied to a run.
class NumericalError : public std::runtime_error {
public:
    NumericalError(const std::string& msg, long iteration = -1)
        : std::runtime_error(msg), iteration_(iteration) {}
    long iteration() const noexcept { return iteration_; }

private:
    long iteration_;
};

// ---------------------------------------------------------------------------
// Method selection
// ---------------------------------------------------------------------------

enum class Variant { cbo, polarized_cbo, memory_cbo, cbs };
enum class NoiseModel { isotropic, anisotropic };
enum class CbsMode { sampling, optimization };
enum class StopReason { max_iterations, max_evals, diameter_tol, consensus_stall };

inline const char* to_string(Variant v) {
    switch (v) {
        case Variant::cbo: return "cbo";
        case Variant::polarized_cbo: return "polarized_cbo";
        case Variant::memory_cbo: return "memory_cbo";
        case Variant::cbs: return "cbs";
    }
    return "?";
}

inline const char* to_string(NoiseModel n) {
    return n == NoiseModel::isotropic ? "isotropic" : "anisotropic";
}

inline const char* to_string(CbsMode m) {
    return m == CbsMode::sampling ? "sampling" : "optimization";
}

inline const char* to_string(StopReason r) {
    switch (r) {
        case StopReason::max_iterations: return "max_iterations";
        case StopReason::max_evals: return "max_evals";
        case StopReason::diameter_tol: return "diameter_tol";
        case StopReason::consensus_stall: return "consensus_stall";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Initialization
// ---------------------------------------------------------------------------

/// Half-width of the default initialization box [-3, 3]^d.
inline constexpr double default_box_half_width = 3.0;

/// How the initial ensemble is drawn. A default-constructed spec stands for
/// the uniform box [-3, 3]^d; the bounds are resolved once the dimension is
/// known (see `resolved`).
struct InitSpec {
    enum class Kind { uniform_box, gaussian };

    Kind kind = Kind::uniform_box;
    Vector lower;  // uniform_box; empty means default box
    Vector upper;
    Vector mean;  // gaussian; empty means origin
    double stddev = 1.0;

    static InitSpec uniform_box(Vector lo, Vector hi) {
        InitSpec s;
        s.kind = Kind::uniform_box;
        s.lower = std::move(lo);
        s.upper = std::move(hi);
        return s;
    }

    static InitSpec gaussian(Vector mean, double stddev) {
        InitSpec s;
        s.kind = Kind::gaussian;
        s.mean = std::move(mean);
        s.stddev = stddev;
        return s;
    }

    /// Returns a copy with all vectors made explicit for dimension `d`.
    InitSpec resolved(Index d) const {
        InitSpec s = *this;
        if (s.kind == Kind::uniform_box) {
            if (s.lower.size() == 0) s.lower = Vector::Constant(d, -default_box_half_width);
            if (s.upper.size() == 0) s.upper = Vector::Constant(d, default_box_half_width);
        } else {
            if (s.mean.size() == 0) s.mean = Vector::Zero(d);
        }
        return s;
    }
};

// ---------------------------------------------------------------------------
// Termination
// ---------------------------------------------------------------------------

/// Fires when the consensus point moved less than `tol` (Euclidean) over the
/// last `window` iterations.
struct ConsensusStall {
    long window = 1;
    double tol = 0.0;
};

struct TerminationSpec {
    long max_iterations = 1000;  // always enforced
    std::optional<long> max_evals;
    std::optional<double> diameter_tol;
    std::optional<ConsensusStall> consensus_stall;
};

// ---------------------------------------------------------------------------
// Full method configuration
// ---------------------------------------------------------------------------

struct CbxConfig {
    Variant variant = Variant::cbo;
    int n_particles = 100;
    int dimension = 1;

    double alpha = 30.0;   // weight exponent
    double lambda = 1.0;   // consensus drift rate
    double sigma = 1.0;    // diffusion strength
    double dt = 0.1;       // step size

    NoiseModel noise = NoiseModel::isotropic;
    std::optional<int> batch_size;  // mini-batching; absent = full ensemble

    /// Gaussian kernel width for polarized_cbo; may be +inf (reduces to cbo).
    double kernel_width = 1.0;

    /// memory_cbo drift toward the personal best and its noise strength.
    /// Unset values derive as 0.4 * lambda and sigma respectively.
    std::optional<double> memory_lambda;
    std::optional<double> memory_sigma;

    CbsMode cbs_mode = CbsMode::sampling;

    InitSpec init;
    TerminationSpec termination;
    std::uint64_t seed = 0;

    double memory_lambda_value() const { return memory_lambda ? *memory_lambda : 0.4 * lambda; }
    double memory_sigma_value() const { return memory_sigma ? *memory_sigma : sigma; }
};

/// Validates every invariant of the configuration; throws ConfigError naming
/// the offending field.
inline void validate(const CbxConfig& cfg) {
    if (cfg.n_particles < 1) throw ConfigError("n_particles must be >= 1");
    if (cfg.dimension < 1) throw ConfigError("dimension must be >= 1");
    if (!(cfg.alpha >= 0.0)) throw ConfigError("alpha must be >= 0");
    if (!(cfg.lambda > 0.0)) throw ConfigError("lambda must be > 0");
    if (!(cfg.sigma >= 0.0)) throw ConfigError("sigma must be >= 0");
    if (!(cfg.dt > 0.0)) throw ConfigError("dt must be > 0");
    if (cfg.batch_size) {
        if (*cfg.batch_size < 1 || *cfg.batch_size > cfg.n_particles)
            throw ConfigError("batch_size must be in [1, n_particles]");
    }
    if (!(cfg.kernel_width > 0.0)) throw ConfigError("kernel_width must be > 0");
    if (cfg.memory_lambda && !(*cfg.memory_lambda >= 0.0))
        throw ConfigError("memory_lambda must be >= 0");
    if (cfg.memory_sigma && !(*cfg.memory_sigma >= 0.0))
        throw ConfigError("memory_sigma must be >= 0");
    if (cfg.termination.max_iterations < 0)
        throw ConfigError("termination.max_iterations must be >= 0");
    if (cfg.termination.max_evals && *cfg.termination.max_evals < 1)
        throw ConfigError("termination.max_evals must be >= 1");
    if (cfg.termination.diameter_tol && !(*cfg.termination.diameter_tol >= 0.0))
        throw ConfigError("termination.diameter_tol must be >= 0");
    if (cfg.termination.consensus_stall) {
        if (cfg.termination.consensus_stall->window < 1)
            throw ConfigError("termination.consensus_stall.window must be >= 1");
        if (!(cfg.termination.consensus_stall->tol >= 0.0))
            throw ConfigError("termination.consensus_stall.tol must be >= 0");
    }
    const InitSpec init = cfg.init.resolved(cfg.dimension);
    if (init.kind == InitSpec::Kind::uniform_box) {
        if (init.lower.size() != cfg.dimension || init.upper.size() != cfg.dimension)
            throw ConfigError("init bounds must have length = dimension");
        for (Index k = 0; k < init.lower.size(); ++k)
            if (!(init.lower[k] <= init.upper[k]))
                throw ConfigError("init.lower must not exceed init.upper");
    } else {
        if (init.mean.size() != cfg.dimension)
            throw ConfigError("init.mean must have length = dimension");
        if (!(init.stddev >= 0.0)) throw ConfigError("init.stddev must be >= 0");
    }
}

// ---------------------------------------------------------------------------
// Run state
// ---------------------------------------------------------------------------

/// N particle positions (one row each) plus the per-particle memory state of
/// the memory_cbo variant.
struct Ensemble {
    Matrix positions;  // N x d
    std::optional<Matrix> personal_bests;
    std::optional<Vector> personal_best_values;

    Index n() const noexcept { return positions.rows(); }
    Index dim() const noexcept { return positions.cols(); }

    /// Max pairwise Euclidean distance.
    double diameter() const {
        const Index N = n();
        double best = 0.0;
        for (Index i = 0; i < N; ++i)
            for (Index j = i + 1; j < N; ++j)
                best = std::max(best, (positions.row(i) - positions.row(j)).norm());
        return best;
    }
};

struct TraceRecord {
    long iteration = 0;
    Vector consensus;        // mean of per-particle consensus points when batched/polarized
    double best_value = 0.0; // lowest objective value seen so far
    double diameter = 0.0;   // of the post-step ensemble
    long eval_count = 0;     // cumulative, run-relative
};

struct RunResult {
    Vector minimizer_estimate;  // final consensus
    double final_value = 0.0;   // lowest objective value observed during the run
    long iterations = 0;
    long eval_count = 0;
    StopReason stop_reason = StopReason::max_iterations;
    std::uint64_t seed = 0;
};

/// Thread budget for the parallelizable parts (batch evaluation, per-particle
/// updates, benchmark fan-out). Results are identical for any thread count.
struct ExecPolicy {
    int threads = 1;
};

// ---------------------------------------------------------------------------
// Exact equality (used for config echo round-trips)
// ---------------------------------------------------------------------------

inline bool exact_equal(const Vector& a, const Vector& b) {
    return a.size() == b.size() && (a.array() == b.array()).all();
}

inline bool operator==(const InitSpec& a, const InitSpec& b) {
    if (a.kind != b.kind) return false;
    if (a.kind == InitSpec::Kind::uniform_box)
        return exact_equal(a.lower, b.lower) && exact_equal(a.upper, b.upper);
    return exact_equal(a.mean, b.mean) && a.stddev == b.stddev;
}

inline bool operator==(const ConsensusStall& a, const ConsensusStall& b) {
    return a.window == b.window && a.tol == b.tol;
}

inline bool operator==(const TerminationSpec& a, const TerminationSpec& b) {
    return a.max_iterations == b.max_iterations && a.max_evals == b.max_evals &&
           a.diameter_tol == b.diameter_tol && a.consensus_stall == b.consensus_stall;
}

inline bool operator==(const CbxConfig& a, const CbxConfig& b) {
    return a.variant == b.variant && a.n_particles == b.n_particles &&
           a.dimension == b.dimension && a.alpha == b.alpha && a.lambda == b.lambda &&
           a.sigma == b.sigma && a.dt == b.dt && a.noise == b.noise &&
           a.batch_size == b.batch_size && a.kernel_width == b.kernel_width &&
           a.memory_lambda == b.memory_lambda && a.memory_sigma == b.memory_sigma &&
           a.cbs_mode == b.cbs_mode && a.init == b.init && a.termination == b.termination &&
           a.seed == b.seed;
}

}  // namespace cbx
