#include "expbasis/covering.hpp"

#include <algorithm>
#include <cmath>

#include "expbasis/errors.hpp"

namespace expbasis {

// ------------------------------------------------------------------ profile

long CoveringProfile1D::value_at(const Rational& x) const {
    if (x < Rational(0) || x >= Rational(1))
        throw ValidationError("profile is defined on [0,1)");
    // last piece whose left breakpoint is <= x
    std::size_t lo = 0, hi = pieces();
    while (hi - lo > 1) {
        std::size_t mid = (lo + hi) / 2;
        if (breakpoints[mid] <= x) lo = mid;
        else hi = mid;
    }
    return values[lo];
}

Rational CoveringProfile1D::mass() const {
    Rational m;
    for (std::size_t i = 0; i < values.size(); ++i)
        m += Rational(values[i]) * (breakpoints[i + 1] - breakpoints[i]);
    return m;
}

CoveringProfile1D fold_1d(const IntervalUnion& u) {
    // jump events of Phi inside [0,1): +1 where a fragment starts, -1 where it ends
    std::vector<std::pair<Rational, long>> events;
    for (const auto& iv : u.parts()) {
        for (long k = iv.a.floor(); Rational(k) < iv.b; ++k) {
            Rational lo = max(iv.a, Rational(k)) - Rational(k);
            Rational hi = min(iv.b, Rational(k + 1)) - Rational(k);
            if (!(lo < hi)) continue;
            events.emplace_back(lo, +1);
            if (hi < Rational(1)) events.emplace_back(hi, -1);
        }
    }
    std::sort(events.begin(), events.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });

    std::vector<Rational> cuts;
    cuts.push_back(Rational(0));
    for (const auto& [pos, delta] : events) {
        (void)delta;
        if (pos != Rational(0) && pos != cuts.back()) cuts.push_back(pos);
    }
    if (cuts.back() != Rational(1)) cuts.push_back(Rational(1));

    CoveringProfile1D profile;
    long value = 0;
    std::size_t e = 0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        while (e < events.size() && events[e].first == cuts[i]) value += events[e++].second;
        // canonical form: merge pieces with equal values
        if (!profile.values.empty() && profile.values.back() == value) {
            profile.breakpoints.back() = cuts[i + 1];
        } else {
            if (profile.breakpoints.empty()) profile.breakpoints.push_back(cuts[i]);
            profile.breakpoints.push_back(cuts[i + 1]);
            profile.values.push_back(value);
        }
    }
    return profile;
}

// -------------------------------------------------------------------- phi_at

long phi_at(const Parallelepiped& box, std::span<const double> x, const Config& cfg) {
    const int d = box.dim();
    if (static_cast<int>(x.size()) != d) throw ValidationError("point dimension mismatch");
    Eigen::VectorXd lo, hi;
    box.bounding_box(lo, hi);

    long n_lo[4], n_hi[4];
    for (int j = 0; j < d; ++j) {
        n_lo[j] = static_cast<long>(std::ceil(lo(j) - x[j])) - 1;
        n_hi[j] = static_cast<long>(std::floor(hi(j) - x[j])) + 1;
    }

    long count = 0;
    long n[4] = {0, 0, 0, 0};
    double p[4];
    // odometer over the candidate shifts
    for (int j = 0; j < d; ++j) n[j] = n_lo[j];
    while (true) {
        for (int j = 0; j < d; ++j) p[j] = x[j] + static_cast<double>(n[j]);
        if (box.contains(std::span<const double>(p, static_cast<std::size_t>(d)), cfg.eps)) ++count;
        int axis = d - 1;
        while (axis >= 0 && ++n[axis] > n_hi[axis]) { n[axis] = n_lo[axis]; --axis; }
        if (axis < 0) break;
    }
    return count;
}

// ----------------------------------------------------------- sampled_profile

namespace {

// Adds, for one integer shift k, the membership indicator of every cell
// center (i+0.5)/R + k into counts. Membership is evaluated incrementally in
// the box's parameter coordinates u = A^-1(p - t).
void accumulate_shift(const Parallelepiped& box, int R, const long* k,
                      const Eigen::VectorXd& lo, const Eigen::VectorXd& hi, double eps,
                      std::vector<std::int32_t>& counts) {
    const int d = box.dim();
    // cell index ranges that can possibly land in the bounding box
    int i_lo[4], i_hi[4];
    for (int j = 0; j < d; ++j) {
        double c_lo = lo(j) - static_cast<double>(k[j]) - 1.0 / R;
        double c_hi = hi(j) - static_cast<double>(k[j]) + 1.0 / R;
        i_lo[j] = std::max(0, static_cast<int>(std::floor(c_lo * R - 0.5)));
        i_hi[j] = std::min(R - 1, static_cast<int>(std::ceil(c_hi * R - 0.5)));
        if (i_lo[j] > i_hi[j]) return;
    }

    // u at the first candidate cell, and the u-step per cell along each axis
    Eigen::VectorXd p0(d);
    for (int j = 0; j < d; ++j)
        p0(j) = (i_lo[j] + 0.5) / R + static_cast<double>(k[j]) - box.offset(j);
    Eigen::VectorXd u0 = box.inverse * p0;
    Eigen::MatrixXd du = box.inverse / static_cast<double>(R);  // column j = step along axis j

    std::int64_t stride[4];
    stride[d - 1] = 1;
    for (int j = d - 2; j >= 0; --j) stride[j] = stride[j + 1] * R;

    // scan row by row; the last axis is the tight inner loop
    int idx[4] = {0, 0, 0, 0};
    for (int j = 0; j + 1 < d; ++j) idx[j] = i_lo[j];
    while (true) {
        double u[4];
        for (int r = 0; r < d; ++r) {
            double v = u0(r);
            for (int j = 0; j + 1 < d; ++j) v += (idx[j] - i_lo[j]) * du(r, j);
            u[r] = v;
        }
        std::int64_t base = 0;
        for (int j = 0; j + 1 < d; ++j) base += static_cast<std::int64_t>(idx[j]) * stride[j];
        for (int i = i_lo[d - 1]; i <= i_hi[d - 1]; ++i) {
            bool inside = true;
            for (int r = 0; r < d; ++r)
                if (u[r] < -eps || u[r] >= 1.0 - eps) { inside = false; break; }
            if (inside) ++counts[static_cast<std::size_t>(base + i)];
            for (int r = 0; r < d; ++r) u[r] += du(r, d - 1);
        }
        int a = d - 2;
        while (a >= 0 && ++idx[a] > i_hi[a]) { idx[a] = i_lo[a]; --a; }
        if (a < 0) break;
    }
}

} // namespace

SampledCovering sampled_profile(const DomainSpec& spec, int resolution, const Config& cfg) {
    if (spec.dim() < 2) throw ValidationError("sampled_profile needs d >= 2 (use fold_1d in 1-D)");
    if (resolution < 2) throw ValidationError("sampled_profile needs resolution >= 2");
    const auto& box = spec.as_box();
    const int d = box.dim();

    std::int64_t cells = 1;
    for (int j = 0; j < d; ++j) {
        cells *= resolution;
        if (cells > cfg.cell_budget)
            throw ResourceError("sampled_profile: resolution^d exceeds the cell budget");
    }

    SampledCovering out;
    out.dim = d;
    out.resolution = resolution;
    out.counts.assign(static_cast<std::size_t>(cells), 0);

    Eigen::VectorXd lo, hi;
    box.bounding_box(lo, hi);
    long k_lo[4], k_hi[4], k[4];
    for (int j = 0; j < d; ++j) {
        k_lo[j] = static_cast<long>(std::ceil(lo(j) - 1.0)) - 1;
        k_hi[j] = static_cast<long>(std::floor(hi(j))) + 1;
        k[j] = k_lo[j];
    }
    while (true) {
        accumulate_shift(box, resolution, k, lo, hi, cfg.eps, out.counts);
        int axis = d - 1;
        while (axis >= 0 && ++k[axis] > k_hi[axis]) { k[axis] = k_lo[axis]; --axis; }
        if (axis < 0) break;
    }

    out.phi_min = out.counts[0];
    out.phi_max = out.counts[0];
    for (auto c : out.counts) {
        if (c < out.phi_min) out.phi_min = c;
        if (c > out.phi_max) out.phi_max = c;
    }

    // boundary_margin: cells with a face neighbor (torus-wrapped) of different count
    std::int64_t stride[4];
    stride[d - 1] = 1;
    for (int j = d - 2; j >= 0; --j) stride[j] = stride[j + 1] * resolution;
    std::int64_t flagged = 0;
    for (std::int64_t c = 0; c < cells; ++c) {
        bool edge = false;
        std::int64_t rem = c;
        for (int j = 0; j < d && !edge; ++j) {
            std::int64_t ij = rem / stride[j];
            rem %= stride[j];
            std::int64_t up = (ij + 1 == resolution) ? c - ij * stride[j] : c + stride[j];
            if (out.counts[static_cast<std::size_t>(up)] != out.counts[static_cast<std::size_t>(c)])
                edge = true;
        }
        if (edge) ++flagged;
    }
    out.boundary_margin = static_cast<double>(flagged) / static_cast<double>(cells);
    return out;
}

EssentialRange essential_range(const CoveringProfile1D& p) {
    EssentialRange r;
    r.phi_min = *std::min_element(p.values.begin(), p.values.end());
    r.phi_max = *std::max_element(p.values.begin(), p.values.end());
    r.approximate = false;
    return r;
}

EssentialRange essential_range(const SampledCovering& p) {
    return EssentialRange{p.phi_min, p.phi_max, true};
}

// ------------------------------------------------------------ overlap_shifts

namespace {

Rational intersection_measure(const IntervalUnion& u, const IntervalUnion& v) {
    Rational m;
    for (const auto& a : u.parts())
        for (const auto& b : v.parts()) {
            Rational lo = max(a.a, b.a);
            Rational hi = min(a.b, b.b);
            if (lo < hi) m += hi - lo;
        }
    return m;
}

// Grid count of { u in [0,1)^d grid : u - w in [0,1)^d }, per axis.
long axis_grid_count(double w, int R, double eps) {
    double lo = std::max(0.0, w - eps);
    double hi = std::min(1.0, 1.0 + w - eps);
    if (hi <= lo) return 0;
    long k_min = static_cast<long>(std::ceil(lo * R - 0.5));
    long k_max = static_cast<long>(std::ceil(hi * R - 0.5)) - 1;
    k_min = std::max(k_min, 0L);
    k_max = std::min(k_max, static_cast<long>(R) - 1);
    return std::max(0L, k_max - k_min + 1);
}

} // namespace

std::vector<OverlapShift> overlap_shifts(const DomainSpec& spec, int radius, const Config& cfg) {
    if (radius < 1) throw ValidationError("overlap_shifts needs radius >= 1");
    std::vector<OverlapShift> out;

    if (spec.is_one_dimensional()) {
        const auto u = spec.as_interval_union();
        for (int s = -radius; s <= radius; ++s) {
            if (s == 0) continue;
            Rational m = intersection_measure(u, u.translated(Rational(s)));
            if (m.to_double() > cfg.overlap_eps_exact)
                out.push_back({{s}, m.to_double()});
        }
        return out;
    }

    const auto& box = spec.as_box();
    const int d = box.dim();
    const int R = cfg.overlap_resolution;
    // |D n (D+s)| = |{u in [0,1)^d : u - A^-1 s in [0,1)^d}| * |det A|; the
    // grid count factorizes per axis, so each shift is O(d).
    int s[4];
    for (int j = 0; j < d; ++j) s[j] = -radius;
    while (true) {
        bool zero = true;
        for (int j = 0; j < d; ++j) zero = zero && s[j] == 0;
        if (!zero) {
            Eigen::VectorXd sv(d);
            for (int j = 0; j < d; ++j) sv(j) = s[j];
            Eigen::VectorXd w = box.inverse * sv;
            double cells = 1.0;
            for (int j = 0; j < d; ++j) cells *= static_cast<double>(axis_grid_count(w(j), R, cfg.eps));
            double measure = box.measure() * cells / std::pow(static_cast<double>(R), d);
            if (measure > cfg.overlap_eps_sampled) {
                OverlapShift sh;
                sh.shift.assign(s, s + d);
                sh.measure = measure;
                out.push_back(std::move(sh));
            }
        }
        int axis = d - 1;
        while (axis >= 0 && ++s[axis] > radius) { s[axis] = -radius; --axis; }
        if (axis < 0) break;
    }
    return out;
}

} // namespace expbasis
