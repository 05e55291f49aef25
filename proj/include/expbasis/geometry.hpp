#pragma once

#include <Eigen/Dense>

#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "expbasis/config.hpp"
#include "expbasis/rational.hpp"

namespace expbasis {

/// Half-open interval [a, b) with exact rational endpoints.
struct Interval {
    Rational a;
    Rational b;
};

/// Finite union of disjoint, sorted half-open intervals on the real line.
/// Invariants: a_i < b_i, b_i <= a_{i+1}, total measure finite and positive.
class IntervalUnion {
public:
    /// Merge-and-sort constructor. Overlapping or adjacent inputs are merged;
    /// throws ValidationError on empty input or any a >= b.
    static IntervalUnion normalized(std::vector<std::pair<Rational, Rational>> raw);

    const std::vector<Interval>& parts() const { return parts_; }
    Rational measure() const;
    bool contains(const Rational& x) const;
    IntervalUnion translated(const Rational& shift) const;

    bool operator==(const IntervalUnion& o) const;

private:
    std::vector<Interval> parts_;
};

/// normalize_intervals over raw (a, b) pairs.
IntervalUnion normalize_intervals(std::vector<std::pair<Rational, Rational>> raw);

/// J = [0, alpha) u [alpha + r, L + r); one interval when r = 0.
/// Requires 0 < alpha < L and r >= 0. Measure is always L.
IntervalUnion broken_interval(const Rational& alpha, const Rational& L, const Rational& r);

/// Half-open parallelepiped { A x + t : x in [0,1)^d }, d in {1,..,4}.
/// Columns of A are the edge vectors.
struct Parallelepiped {
    Eigen::MatrixXd matrix;   // d x d, invertible
    Eigen::VectorXd offset;   // t
    Eigen::MatrixXd inverse;  // cached A^-1
    double det = 0.0;

    Parallelepiped(Eigen::MatrixXd A, Eigen::VectorXd t, const Config& cfg = default_config());

    int dim() const { return static_cast<int>(matrix.rows()); }
    double measure() const { return std::abs(det); }

    /// Membership of x, half-open with tolerance: A^-1(x - t) in [-eps, 1-eps)^d.
    bool contains(std::span<const double> x, double eps) const;

    /// Axis-aligned bounding box over all 2^d corners.
    void bounding_box(Eigen::VectorXd& lo, Eigen::VectorXd& hi) const;
};

/// Square of side h rotated by theta, centered at the origin:
/// A = h * [cos sin; -sin cos], t = -(column sums)/2.
Parallelepiped rotated_square(double h, double theta, const Config& cfg = default_config());

struct BrokenParams {
    Rational alpha, L, r;
};

struct SquareParams {
    double h = 0.0;
    double theta = 0.0;
};

/// One domain drawn from the three concrete families (plus raw interval
/// unions). Family parameters are kept so the closed-form classifiers can
/// read them back.
class DomainSpec {
public:
    static DomainSpec intervals(IntervalUnion u);
    static DomainSpec broken(Rational alpha, Rational L, Rational r);
    static DomainSpec square(double h, double theta, const Config& cfg = default_config());
    static DomainSpec box(Parallelepiped p);

    int dim() const;
    double measure(const Config& cfg = default_config()) const;
    Rational measure_exact() const;  // 1-D families only
    bool contains(std::span<const double> x, const Config& cfg = default_config()) const;

    bool is_one_dimensional() const;
    bool is_box() const;  // raw box family (squares excluded)
    /// Exact interval-union form; valid for intervals, broken intervals and
    /// 1x1 boxes (whose endpoints convert exactly from double).
    IntervalUnion as_interval_union() const;

    const Parallelepiped& as_box() const;  // square or box families
    const BrokenParams* broken_params() const;
    const SquareParams* square_params() const;

    /// Compact text form, matching the CLI grammar.
    std::string describe() const;

private:
    struct BrokenNode { BrokenParams p; IntervalUnion u; };
    struct SquareNode { SquareParams p; Parallelepiped box; };
    using Node = std::variant<IntervalUnion, BrokenNode, SquareNode, Parallelepiped>;
    explicit DomainSpec(Node n) : node_(std::move(n)) {}
    Node node_;
};

/// Parse the CLI grammar:
///   intervals:0,0.6;1.0,1.4
///   broken:a=0.3,L=0.8,r=1.1
///   square:h=0.7,theta=0.3
///   box:1,0.5;0,1[;t=0.25,0]
DomainSpec parse_domain(const std::string& text, const Config& cfg = default_config());

} // namespace expbasis
