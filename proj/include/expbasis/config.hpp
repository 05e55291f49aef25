#pragma once

#include <cstdint>

namespace expbasis {

/// Numeric tolerances and resource budgets shared across the library.
/// All values are overridable; the defaults are what the CLI uses.
struct Config {
    /// Geometric tolerance: box membership, determinant/singularity checks,
    /// closeness to classification decision thresholds.
    double eps = 1e-9;

    /// Minimum measure counted as a "positive measure" overlap.
    double overlap_eps_exact = 1e-12;   // exact interval arithmetic
    double overlap_eps_sampled = 1e-6;  // grid-sampled estimates

    /// sampled_profile refuses grids with more than this many cells.
    std::int64_t cell_budget = std::int64_t(1) << 24;

    /// Per-axis grid resolution used when estimating overlap measures of
    /// boxes (d >= 2). Counting is closed-form per shift, so this can be large.
    int overlap_resolution = 1 << 16;

    /// Dense Hermitian eigensolve up to this dimension; shifted power
    /// iteration beyond it.
    int gram_dense_limit = 4096;
    double power_tol = 1e-10;
    long power_iter_cap = 100000;

    /// Sweep grids larger than this are rejected.
    std::int64_t sweep_budget = 1000000;

    /// shortest_vector_sup enumeration cap: (2R+1)^d candidate vectors.
    std::int64_t svp_budget = std::int64_t(1) << 26;

    /// Covering-oracle spot check inside classify_parallelepiped.
    bool spot_check = true;
    int spot_resolution(int dim) const {
        switch (dim) {
            case 2: return 128;
            case 3: return 32;
            default: return 8;
        }
    }
};

inline const Config& default_config() {
    static const Config cfg{};
    return cfg;
}

} // namespace expbasis
