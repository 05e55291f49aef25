#include "expbasis/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "expbasis/errors.hpp"
#include "expbasis/format.hpp"

namespace expbasis {

// ---------------------------------------------------------------- intervals

IntervalUnion IntervalUnion::normalized(std::vector<std::pair<Rational, Rational>> raw) {
    if (raw.empty()) throw ValidationError("interval union needs at least one interval");
    for (const auto& [a, b] : raw)
        if (!(a < b)) throw ValidationError("interval with a >= b");
    std::sort(raw.begin(), raw.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });

    IntervalUnion u;
    for (auto& [a, b] : raw) {
        if (!u.parts_.empty() && a <= u.parts_.back().b) {
            // overlapping or touching: extend the previous interval
            u.parts_.back().b = max(u.parts_.back().b, b);
        } else {
            u.parts_.push_back({std::move(a), std::move(b)});
        }
    }
    return u;
}

Rational IntervalUnion::measure() const {
    Rational m;
    for (const auto& iv : parts_) m += iv.b - iv.a;
    return m;
}

bool IntervalUnion::contains(const Rational& x) const {
    for (const auto& iv : parts_) {
        if (x < iv.a) return false;
        if (x < iv.b) return true;
    }
    return false;
}

IntervalUnion IntervalUnion::translated(const Rational& shift) const {
    IntervalUnion u;
    u.parts_.reserve(parts_.size());
    for (const auto& iv : parts_) u.parts_.push_back({iv.a + shift, iv.b + shift});
    return u;
}

bool IntervalUnion::operator==(const IntervalUnion& o) const {
    if (parts_.size() != o.parts_.size()) return false;
    for (std::size_t i = 0; i < parts_.size(); ++i)
        if (parts_[i].a != o.parts_[i].a || parts_[i].b != o.parts_[i].b) return false;
    return true;
}

IntervalUnion normalize_intervals(std::vector<std::pair<Rational, Rational>> raw) {
    return IntervalUnion::normalized(std::move(raw));
}

IntervalUnion broken_interval(const Rational& alpha, const Rational& L, const Rational& r) {
    if (!(Rational(0) < alpha && alpha < L)) throw ValidationError("broken interval needs 0 < alpha < L");
    if (r < Rational(0)) throw ValidationError("broken interval needs r >= 0");
    if (r == Rational(0)) return IntervalUnion::normalized({{Rational(0), L}});
    return IntervalUnion::normalized({{Rational(0), alpha}, {alpha + r, L + r}});
}

// --------------------------------------------------------------------- boxes

Parallelepiped::Parallelepiped(Eigen::MatrixXd A, Eigen::VectorXd t, const Config& cfg)
    : matrix(std::move(A)), offset(std::move(t)) {
    const auto d = matrix.rows();
    if (d < 1 || d > 4 || matrix.cols() != d)
        throw ValidationError("parallelepiped matrix must be d x d with d in 1..4");
    if (offset.size() != d) throw ValidationError("offset dimension mismatch");
    det = matrix.determinant();
    if (std::abs(det) <= cfg.eps) throw ValidationError("parallelepiped matrix is singular");
    inverse = matrix.inverse();
}

bool Parallelepiped::contains(std::span<const double> x, double eps) const {
    const int d = dim();
    if (static_cast<int>(x.size()) != d) throw ValidationError("point dimension mismatch");
    double u[4];
    for (int i = 0; i < d; ++i) {
        double s = 0.0;
        for (int j = 0; j < d; ++j) s += inverse(i, j) * (x[j] - offset(j));
        u[i] = s;
    }
    for (int i = 0; i < d; ++i)
        if (u[i] < -eps || u[i] >= 1.0 - eps) return false;
    return true;
}

void Parallelepiped::bounding_box(Eigen::VectorXd& lo, Eigen::VectorXd& hi) const {
    const int d = dim();
    lo = offset;
    hi = offset;
    for (int corner = 1; corner < (1 << d); ++corner) {
        Eigen::VectorXd p = offset;
        for (int j = 0; j < d; ++j)
            if (corner & (1 << j)) p += matrix.col(j);
        lo = lo.cwiseMin(p);
        hi = hi.cwiseMax(p);
    }
}

Parallelepiped rotated_square(double h, double theta, const Config& cfg) {
    if (!(h > 0.0)) throw ValidationError("rotated square needs h > 0");
    Eigen::Matrix2d A;
    A << std::cos(theta), std::sin(theta),
        -std::sin(theta), std::cos(theta);
    A *= h;
    Eigen::Vector2d t = -(A.col(0) + A.col(1)) / 2.0;
    return Parallelepiped(A, t, cfg);
}

// --------------------------------------------------------------- DomainSpec

DomainSpec DomainSpec::intervals(IntervalUnion u) { return DomainSpec(Node(std::move(u))); }

DomainSpec DomainSpec::broken(Rational alpha, Rational L, Rational r) {
    auto u = broken_interval(alpha, L, r);
    return DomainSpec(Node(BrokenNode{{std::move(alpha), std::move(L), std::move(r)}, std::move(u)}));
}

DomainSpec DomainSpec::square(double h, double theta, const Config& cfg) {
    return DomainSpec(Node(SquareNode{{h, theta}, rotated_square(h, theta, cfg)}));
}

DomainSpec DomainSpec::box(Parallelepiped p) { return DomainSpec(Node(std::move(p))); }

int DomainSpec::dim() const {
    return std::visit(
        [](const auto& n) -> int {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, IntervalUnion>) return 1;
            else if constexpr (std::is_same_v<T, BrokenNode>) return 1;
            else if constexpr (std::is_same_v<T, SquareNode>) return 2;
            else return n.dim();
        },
        node_);
}

double DomainSpec::measure(const Config&) const {
    return std::visit(
        [](const auto& n) -> double {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, IntervalUnion>) return n.measure().to_double();
            else if constexpr (std::is_same_v<T, BrokenNode>) return n.p.L.to_double();
            else if constexpr (std::is_same_v<T, SquareNode>) return n.p.h * n.p.h;
            else return n.measure();
        },
        node_);
}

Rational DomainSpec::measure_exact() const {
    return as_interval_union().measure();
}

bool DomainSpec::is_one_dimensional() const { return dim() == 1; }

bool DomainSpec::is_box() const { return std::holds_alternative<Parallelepiped>(node_); }

IntervalUnion DomainSpec::as_interval_union() const {
    if (const auto* u = std::get_if<IntervalUnion>(&node_)) return *u;
    if (const auto* b = std::get_if<BrokenNode>(&node_)) return b->u;
    if (const auto* p = std::get_if<Parallelepiped>(&node_)) {
        if (p->dim() == 1) {
            // endpoints t and t + a convert exactly from double
            Rational t = Rational::from_double(p->offset(0));
            Rational a = Rational::from_double(p->matrix(0, 0));
            if (a > Rational(0)) return IntervalUnion::normalized({{t, t + a}});
            return IntervalUnion::normalized({{t + a, t}});
        }
    }
    throw ValidationError("domain has no exact interval-union form");
}

const Parallelepiped& DomainSpec::as_box() const {
    if (const auto* s = std::get_if<SquareNode>(&node_)) return s->box;
    if (const auto* p = std::get_if<Parallelepiped>(&node_)) return *p;
    throw ValidationError("domain is not a box");
}

const BrokenParams* DomainSpec::broken_params() const {
    if (const auto* b = std::get_if<BrokenNode>(&node_)) return &b->p;
    return nullptr;
}

const SquareParams* DomainSpec::square_params() const {
    if (const auto* s = std::get_if<SquareNode>(&node_)) return &s->p;
    return nullptr;
}

bool DomainSpec::contains(std::span<const double> x, const Config& cfg) const {
    if (is_one_dimensional()) {
        if (x.size() != 1) throw ValidationError("point dimension mismatch");
        return as_interval_union().contains(Rational::from_double(x[0]));
    }
    return as_box().contains(x, cfg.eps);
}

std::string DomainSpec::describe() const {
    std::ostringstream os;
    if (const auto* b = broken_params()) {
        os << "broken:a=" << fmt12(b->alpha.to_double()) << ",L=" << fmt12(b->L.to_double())
           << ",r=" << fmt12(b->r.to_double());
        return os.str();
    }
    if (const auto* s = square_params()) {
        os << "square:h=" << fmt12(s->h) << ",theta=" << fmt12(s->theta);
        return os.str();
    }
    if (const auto* u = std::get_if<IntervalUnion>(&node_)) {
        os << "intervals:";
        bool first = true;
        for (const auto& iv : u->parts()) {
            if (!first) os << ";";
            first = false;
            os << fmt12(iv.a.to_double()) << "," << fmt12(iv.b.to_double());
        }
        return os.str();
    }
    const auto& p = as_box();
    os << "box:";
    for (int i = 0; i < p.dim(); ++i) {
        if (i) os << ";";
        for (int j = 0; j < p.dim(); ++j) {
            if (j) os << ",";
            os << fmt12(p.matrix(i, j));
        }
    }
    if (p.offset.cwiseAbs().maxCoeff() > 0.0) {
        os << ";t=";
        for (int j = 0; j < p.dim(); ++j) {
            if (j) os << ",";
            os << fmt12(p.offset(j));
        }
    }
    return os.str();
}

// ------------------------------------------------------------------ parsing

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (true) {
        auto next = s.find(sep, pos);
        out.push_back(s.substr(pos, next - pos));
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    return out;
}

double parse_double(const std::string& s) {
    try {
        std::size_t used = 0;
        double v = std::stod(s, &used);
        if (used != s.size()) throw ValidationError("malformed number: '" + s + "'");
        return v;
    } catch (const ValidationError&) {
        throw;
    } catch (const std::exception&) {
        throw ValidationError("malformed number: '" + s + "'");
    }
}

// "k=v" with a required key
std::string expect_kv(const std::string& field, const std::string& key) {
    auto eq = field.find('=');
    if (eq == std::string::npos || field.substr(0, eq) != key)
        throw ValidationError("expected '" + key + "=...' in domain spec, got '" + field + "'");
    return field.substr(eq + 1);
}

} // namespace

DomainSpec parse_domain(const std::string& text, const Config& cfg) {
    auto colon = text.find(':');
    if (colon == std::string::npos)
        throw ValidationError("domain spec needs the form family:params, got '" + text + "'");
    const std::string family = text.substr(0, colon);
    const std::string body = text.substr(colon + 1);

    if (family == "intervals") {
        std::vector<std::pair<Rational, Rational>> raw;
        for (const auto& piece : split(body, ';')) {
            auto nums = split(piece, ',');
            if (nums.size() != 2)
                throw ValidationError("interval needs 'a,b', got '" + piece + "'");
            raw.emplace_back(Rational::parse(nums[0]), Rational::parse(nums[1]));
        }
        return DomainSpec::intervals(IntervalUnion::normalized(std::move(raw)));
    }
    if (family == "broken") {
        auto fields = split(body, ',');
        if (fields.size() != 3) throw ValidationError("broken needs a=..,L=..,r=..");
        return DomainSpec::broken(Rational::parse(expect_kv(fields[0], "a")),
                                  Rational::parse(expect_kv(fields[1], "L")),
                                  Rational::parse(expect_kv(fields[2], "r")));
    }
    if (family == "square") {
        auto fields = split(body, ',');
        if (fields.size() != 2) throw ValidationError("square needs h=..,theta=..");
        return DomainSpec::square(parse_double(expect_kv(fields[0], "h")),
                                  parse_double(expect_kv(fields[1], "theta")), cfg);
    }
    if (family == "box") {
        auto segments = split(body, ';');
        std::vector<std::vector<double>> rows;
        std::vector<double> offset;
        for (const auto& seg : segments) {
            if (seg.rfind("t=", 0) == 0) {
                for (const auto& n : split(seg.substr(2), ',')) offset.push_back(parse_double(n));
                continue;
            }
            std::vector<double> row;
            for (const auto& n : split(seg, ',')) row.push_back(parse_double(n));
            rows.push_back(std::move(row));
        }
        const int d = static_cast<int>(rows.size());
        if (d < 1 || d > 4) throw ValidationError("box dimension must be 1..4");
        Eigen::MatrixXd A(d, d);
        for (int i = 0; i < d; ++i) {
            if (static_cast<int>(rows[i].size()) != d)
                throw ValidationError("box matrix rows must all have d entries");
            for (int j = 0; j < d; ++j) A(i, j) = rows[i][j];
        }
        Eigen::VectorXd t = Eigen::VectorXd::Zero(d);
        if (!offset.empty()) {
            if (static_cast<int>(offset.size()) != d)
                throw ValidationError("box offset dimension mismatch");
            for (int j = 0; j < d; ++j) t(j) = offset[j];
        }
        return DomainSpec::box(Parallelepiped(A, t, cfg));
    }
    throw ValidationError("unknown domain family '" + family + "'");
}

} // namespace expbasis
