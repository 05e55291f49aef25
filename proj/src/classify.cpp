#include "expbasis/classify.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "expbasis/errors.hpp"
#include "expbasis/format.hpp"

namespace expbasis {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

std::string_view method_name(Method m) {
    return m == Method::closed_form ? "closed_form" : "covering_oracle";
}

void BasisClassification::validate() const {
    if (riesz_basis && !(frame && riesz_sequence))
        throw std::logic_error("riesz_basis without frame and riesz_sequence");
    if (orthonormal_basis && !riesz_basis)
        throw std::logic_error("orthonormal_basis without riesz_basis");
    if (frame && !complete) throw std::logic_error("frame without complete");
    if (frame_constants) {
        auto [A, B] = *frame_constants;
        if (!(1 <= A && A <= B)) throw std::logic_error("frame constants out of range");
    }
}

bool BasisClassification::has_warning_containing(std::string_view needle) const {
    for (const auto& w : warnings)
        if (w.find(needle) != std::string::npos) return true;
    return false;
}

// ------------------------------------------------------------ density check

BasisClassification density_check(BasisClassification c, double measure, const Config& cfg) {
    const double eps = cfg.overlap_eps_sampled;
    if (c.frame && measure > 1.0 + eps)
        c.warnings.push_back("density: frame verdict with measure " + fmt12(measure) +
                             " > 1 violates the density corollary");
    if (c.riesz_sequence && measure < 1.0 - eps)
        c.warnings.push_back("density: riesz_sequence verdict with measure " + fmt12(measure) +
                             " < 1 violates the density corollary");
    return c;
}

// --------------------------------------------------------- covering oracle

namespace {

BasisClassification from_range(long phi_min, long phi_max) {
    BasisClassification c;
    c.method = Method::covering_oracle;
    c.riesz_sequence = phi_min >= 1;
    c.frame = phi_max <= 1;
    c.complete = phi_max <= 1;
    c.riesz_basis = phi_min == 1 && phi_max == 1;
    c.orthonormal_basis = c.riesz_basis;  // |D| = 1 is automatic when Phi == 1
    if (c.riesz_sequence) c.frame_constants = std::make_pair(phi_min, phi_max);
    return c;
}

} // namespace

BasisClassification classify_general(const DomainSpec& spec, int resolution, const Config& cfg) {
    BasisClassification c;
    double measure;
    if (spec.is_one_dimensional()) {
        auto profile = fold_1d(spec.as_interval_union());
        auto r = essential_range(profile);
        c = from_range(r.phi_min, r.phi_max);
        measure = profile.mass().to_double();
    } else {
        auto sampled = sampled_profile(spec, resolution, cfg);
        auto r = essential_range(sampled);
        c = from_range(r.phi_min, r.phi_max);
        c.warnings.push_back("approximate: verdicts from sampled covering (resolution=" +
                             std::to_string(resolution) +
                             ", boundary_margin=" + fmt12(sampled.boundary_margin) + ")");
        measure = spec.measure(cfg);
    }
    c = density_check(std::move(c), measure, cfg);
    c.validate();
    return c;
}

// ------------------------------------------------------------ broken interval

BasisClassification classify_broken_interval(const Rational& alpha, const Rational& L,
                                             const Rational& r, const Config& cfg) {
    if (!(Rational(0) < alpha && alpha < L)) throw ValidationError("need 0 < alpha < L");
    if (r < Rational(0)) throw ValidationError("need r >= 0");

    const Rational fr = r.frac();
    const Rational one(1), two(2);

    BasisClassification c;
    c.method = Method::closed_form;
    c.frame = L + fr <= one;
    const bool case_i = alpha >= one || L - alpha >= one;
    const bool case_ii = fr == Rational(0) && L >= one;
    const bool case_iii = one <= L && L < two && L + fr >= two;
    c.riesz_sequence = case_i || case_ii || case_iii;
    c.riesz_basis = c.frame && c.riesz_sequence;
    c.complete = c.frame;  // overlap criterion
    c.orthonormal_basis = L == one && fr == Rational(0);

    const double eps = cfg.eps;
    const double da = alpha.to_double(), dL = L.to_double(), dfr = fr.to_double();
    const bool near_boundary =
        std::abs(dL + dfr - 1.0) <= eps || std::abs(da - 1.0) <= eps ||
        std::abs(dL - da - 1.0) <= eps || dfr <= eps || dfr >= 1.0 - eps ||
        std::abs(dL - 1.0) <= eps || std::abs(dL - 2.0) <= eps ||
        std::abs(dL + dfr - 2.0) <= eps;
    if (near_boundary)
        c.warnings.push_back("boundary: parameters within eps of a decision threshold");

    c = density_check(std::move(c), dL, cfg);
    c.validate();
    return c;
}

// ------------------------------------------------------------- rotated square

BasisClassification classify_rotated_square(double h, double theta, const Config& cfg) {
    if (!(h > 0.0)) throw ValidationError("rotated square needs h > 0");
    double t = std::fmod(theta, kPi / 2.0);
    if (t < 0.0) t += kPi / 2.0;
    if (t > kPi / 4.0) t = kPi / 2.0 - t;

    const double riesz_threshold = 1.0 - std::sin(2.0 * t);   // l(theta)
    const double frame_threshold = 1.0 / (std::sin(t) + std::cos(t));  // s(theta)

    BasisClassification c;
    c.method = Method::closed_form;
    c.frame = h <= frame_threshold;
    c.riesz_sequence = h >= riesz_threshold;
    c.riesz_basis = c.frame && c.riesz_sequence;
    c.complete = c.frame;
    c.orthonormal_basis = c.riesz_basis && std::abs(h * h - 1.0) <= cfg.eps;

    if (std::abs(h - frame_threshold) <= cfg.eps || std::abs(h - riesz_threshold) <= cfg.eps)
        c.warnings.push_back("boundary: h within eps of a decision threshold");

    c = density_check(std::move(c), h * h, cfg);
    c.validate();
    return c;
}

// ------------------------------------------------------------- parallelepiped

BasisClassification classify_parallelepiped(const Parallelepiped& box, const Config& cfg) {
    const int d = box.dim();
    const double adet = std::abs(box.det);

    double pair_max = 0.0;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int k = j + 1; k < d; ++k)
                pair_max = std::max(pair_max,
                                    std::abs(box.matrix(i, j)) + std::abs(box.matrix(i, k)));
    const double binv_max = box.inverse.cwiseAbs().maxCoeff();

    BasisClassification c;
    c.method = Method::closed_form;
    c.frame = adet <= 1.0 && (d == 1 || pair_max <= 1.0);
    c.riesz_sequence = adet >= 1.0 && binv_max <= 1.0;
    c.riesz_basis = c.frame && c.riesz_sequence;
    c.complete = c.frame;
    c.orthonormal_basis = c.riesz_basis && std::abs(adet - 1.0) <= cfg.eps;

    if (std::abs(adet - 1.0) <= cfg.eps || (d > 1 && std::abs(pair_max - 1.0) <= cfg.eps) ||
        std::abs(binv_max - 1.0) <= cfg.eps)
        c.warnings.push_back("boundary: matrix within eps of a decision threshold");

    if (cfg.spot_check) {
        long phi_min, phi_max;
        int res = 0;
        if (d == 1) {
            auto r = essential_range(fold_1d(DomainSpec::box(box).as_interval_union()));
            phi_min = r.phi_min;
            phi_max = r.phi_max;
        } else {
            res = cfg.spot_resolution(d);
            auto sampled = sampled_profile(DomainSpec::box(box), res, cfg);
            phi_min = sampled.phi_min;
            phi_max = sampled.phi_max;
        }
        const bool oracle_frame = phi_max <= 1;
        const bool oracle_riesz = phi_min >= 1;
        if (oracle_frame != c.frame || oracle_riesz != c.riesz_sequence) {
            std::ostringstream os;
            os << "discrepancy: covering oracle"
               << (res ? " (resolution=" + std::to_string(res) + ")" : " (exact fold)")
               << " reports frame=" << fmt_bool(oracle_frame)
               << ", riesz_sequence=" << fmt_bool(oracle_riesz)
               << " against the closed form";
            c.warnings.push_back(os.str());
        }
    }

    c = density_check(std::move(c), adet, cfg);
    c.validate();
    return c;
}

// --------------------------------------------------------------- sup-norm SVP

ShortestVector shortest_vector_sup(const Parallelepiped& box, int radius, const Config& cfg) {
    if (radius < 1) throw ValidationError("shortest_vector_sup needs radius >= 1");
    const int d = box.dim();
    const double opnorm = box.matrix.cwiseAbs().rowwise().sum().maxCoeff();

    ShortestVector best;
    best.lambda_inf = std::numeric_limits<double>::infinity();

    long R = radius;
    while (true) {
        std::int64_t candidates = 1;
        for (int j = 0; j < d; ++j) {
            candidates *= 2 * R + 1;
            if (candidates > cfg.svp_budget)
                throw ResourceError("shortest_vector_sup: enumeration budget exceeded");
        }
        best.lambda_inf = std::numeric_limits<double>::infinity();
        long n[4];
        for (int j = 0; j < d; ++j) n[j] = -R;
        while (true) {
            bool zero = true;
            for (int j = 0; j < d; ++j) zero = zero && n[j] == 0;
            if (!zero) {
                double lambda = 0.0;
                for (int i = 0; i < d; ++i) {
                    double w = 0.0;
                    for (int j = 0; j < d; ++j) w += box.inverse(i, j) * static_cast<double>(n[j]);
                    lambda = std::max(lambda, std::abs(w));
                }
                if (lambda < best.lambda_inf) {
                    best.lambda_inf = lambda;
                    best.argmin.assign(n, n + d);
                }
            }
            int axis = d - 1;
            while (axis >= 0 && ++n[axis] > R) { n[axis] = -R; --axis; }
            if (axis < 0) break;
        }
        // every vector outside radius R satisfies ||A^-1 n||_inf >= (R+1)/||A||_inf
        if (best.lambda_inf <= static_cast<double>(R + 1) / opnorm) break;
        R = std::max(2 * R, static_cast<long>(std::ceil(best.lambda_inf * opnorm)));
    }
    best.complete = best.lambda_inf >= 1.0 - cfg.eps;
    return best;
}

// -------------------------------------------------------------------- report

std::string classification_report(const BasisClassification& c) {
    std::ostringstream os;
    os << "frame=" << fmt_bool(c.frame) << "\n";
    os << "riesz_sequence=" << fmt_bool(c.riesz_sequence) << "\n";
    os << "riesz_basis=" << fmt_bool(c.riesz_basis) << "\n";
    os << "complete=" << fmt_bool(c.complete) << "\n";
    os << "orthonormal_basis=" << fmt_bool(c.orthonormal_basis) << "\n";
    os << "A=" << (c.frame_constants ? std::to_string(c.frame_constants->first) : "none") << "\n";
    os << "B=" << (c.frame_constants ? std::to_string(c.frame_constants->second) : "none") << "\n";
    os << "method=" << method_name(c.method) << "\n";
    os << "warnings=" << c.warnings.size() << "\n";
    for (const auto& w : c.warnings) os << "warning=" << w << "\n";
    return os.str();
}

} // namespace expbasis
