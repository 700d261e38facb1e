#pragma once

#include "cbx/objective.hpp"
#include "cbx/rng.hpp"
#include "cbx/types.hpp"

namespace cbx {

/// Draws the initial N x d positions from the configured distribution using
/// the deterministic stream keyed by (seed, init, 0, particle, axis).
/// The memory variant needs the objective to record personal-best values;
/// use the two-argument overload only for the other variants.
inline Ensemble init_ensemble(const CbxConfig& cfg, std::uint64_t seed, ObjectiveHandle* obj) {
    validate(cfg);
    const Index n = cfg.n_particles;
    const Index d = cfg.dimension;
    const InitSpec init = cfg.init.resolved(d);

    Ensemble ens;
    ens.positions.resize(n, d);
    if (init.kind == InitSpec::Kind::uniform_box) {
        for (Index i = 0; i < n; ++i)
            for (Index k = 0; k < d; ++k) {
                const double u = rng::uniform_draw(seed, rng::Stream::init, 0, i, k);
                ens.positions(i, k) = init.lower[k] + (init.upper[k] - init.lower[k]) * u;
            }
    } else {
        for (Index i = 0; i < n; ++i)
            for (Index k = 0; k < d; ++k) {
                const double z = rng::normal_draw(seed, rng::Stream::init, 0, i, k);
                ens.positions(i, k) = init.mean[k] + init.stddev * z;
            }
    }

    if (cfg.variant == Variant::memory_cbo) {
        if (obj == nullptr)
            throw ConfigError("memory_cbo initialization requires the objective");
        ens.personal_bests = ens.positions;
        ens.personal_best_values = evaluate_batch(*obj, ens.positions);
    }
    return ens;
}

inline Ensemble init_ensemble(const CbxConfig& cfg, std::uint64_t seed) {
    return init_ensemble(cfg, seed, nullptr);
}

}  // namespace cbx
