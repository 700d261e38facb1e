#pragma once

#include <atomic>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <utility>

#include "cbx/detail/parallel.hpp"
#include "cbx/types.hpp"

namespace cbx {

/// Black-box scalar objective with an evaluation counter and optional known
/// minimizer metadata. The wrapped function is treated as pure; the counter
/// is atomic so batch evaluation may fan out across threads. Non-copyable:
/// pass handles by reference so every evaluation is accounted in one place.
class ObjectiveHandle {
public:
    using Fn = std::function<double(const Vector&)>;

    explicit ObjectiveHandle(Fn fn) : fn_(std::move(fn)) {}

    ObjectiveHandle(Fn fn, Vector known_minimizer, double known_minimum_value)
        : fn_(std::move(fn)),
          known_minimizer_(std::move(known_minimizer)),
          known_minimum_value_(known_minimum_value) {}

    ObjectiveHandle(const ObjectiveHandle&) = delete;
    ObjectiveHandle& operator=(const ObjectiveHandle&) = delete;

    /// Single-point evaluation; increments the counter by one. NaN/Inf results
    /// are a hard error rather than a silent +inf.
    double operator()(const Vector& x) {
        const double v = fn_(x);
        count_.fetch_add(1, std::memory_order_relaxed);
        if (!std::isfinite(v))
            throw EvaluationError("objective returned a non-finite value");
        return v;
    }

    long eval_count() const noexcept { return count_.load(std::memory_order_relaxed); }

    const std::optional<Vector>& known_minimizer() const noexcept { return known_minimizer_; }
    std::optional<double> known_minimum_value() const noexcept { return known_minimum_value_; }

    /// Raw call without counting; reserved for the batch path below.
    double raw_eval(const Vector& x) const { return fn_(x); }

    void add_count(long k) noexcept { count_.fetch_add(k, std::memory_order_relaxed); }

private:
    Fn fn_;
    std::atomic<long> count_{0};
    std::optional<Vector> known_minimizer_;
    std::optional<double> known_minimum_value_;
};

/// Evaluates the objective at every row of `points`. Output order matches
/// input order regardless of the thread count; the counter grows by the row
/// count. A non-finite result raises EvaluationError carrying the lowest
/// offending row index.
inline Vector evaluate_batch(ObjectiveHandle& obj, const Matrix& points,
                             const ExecPolicy& exec = {}) {
    const Index n = points.rows();
    Vector out(n);
    detail::parallel_for(static_cast<long>(n), exec.threads, [&](long begin, long end) {
        for (long i = begin; i < end; ++i)
            out[i] = obj.raw_eval(points.row(i).transpose());
    });
    obj.add_count(static_cast<long>(n));
    for (Index i = 0; i < n; ++i) {
        if (!std::isfinite(out[i]))
            throw EvaluationError(
                "objective returned a non-finite value at batch row " + std::to_string(i), i);
    }
    return out;
}

}  // namespace cbx
