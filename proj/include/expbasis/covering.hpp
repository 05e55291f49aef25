#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "expbasis/config.hpp"
#include "expbasis/geometry.hpp"

namespace expbasis {

/// Exact piecewise-constant representation of the covering function
/// Phi(x) = sum_m chi_D(x+m) on [0,1), for a 1-D interval union.
/// breakpoints: 0 = x_0 < x_1 < ... < x_k = 1 (rational);
/// values: integer Phi on [x_i, x_{i+1}), adjacent pieces distinct.
struct CoveringProfile1D {
    std::vector<Rational> breakpoints;
    std::vector<long> values;

    std::size_t pieces() const { return values.size(); }
    long value_at(const Rational& x) const;
    /// sum v_i * (x_{i+1} - x_i); equals the source measure exactly.
    Rational mass() const;

    bool operator==(const CoveringProfile1D& o) const {
        return breakpoints == o.breakpoints && values == o.values;
    }
};

/// Cut every interval at integer points, translate each fragment into [0,1),
/// and count multiplicities. Exact.
CoveringProfile1D fold_1d(const IntervalUnion& u);

/// Phi at one point of a box domain: the number of integer vectors n with
/// x + n inside the box. Enumeration bounds come from the box itself.
long phi_at(const Parallelepiped& box, std::span<const double> x,
            const Config& cfg = default_config());

/// Grid-sampled Phi for d >= 2: values at all cell centers of a
/// resolution^d grid on [0,1)^d.
struct SampledCovering {
    int dim = 0;
    int resolution = 0;
    std::vector<std::int32_t> counts;  // row-major, last axis fastest
    long phi_min = 0;
    long phi_max = 0;
    /// Fraction of cells adjacent (face-wise, torus-wrapped) to a cell with a
    /// different count; these straddle the folded domain boundary and their
    /// values may be unreliable at this resolution.
    double boundary_margin = 0.0;

    std::int64_t cell_count() const { return static_cast<std::int64_t>(counts.size()); }
};

SampledCovering sampled_profile(const DomainSpec& spec, int resolution,
                                const Config& cfg = default_config());

struct EssentialRange {
    long phi_min = 0;
    long phi_max = 0;
    bool approximate = false;  // true for sampled profiles
};

EssentialRange essential_range(const CoveringProfile1D& p);
EssentialRange essential_range(const SampledCovering& p);

/// Nonzero integer shifts s, ||s||_inf <= radius, with |D n (D+s)| above the
/// configured threshold. Exact interval arithmetic in 1-D, grid-sampled
/// measure estimates for boxes.
struct OverlapShift {
    std::vector<int> shift;
    double measure = 0.0;
};

std::vector<OverlapShift> overlap_shifts(const DomainSpec& spec, int radius,
                                         const Config& cfg = default_config());

} // namespace expbasis
