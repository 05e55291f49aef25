#include <doctest.h>

#include <cmath>
#include <random>

#include "expbasis/covering.hpp"

using namespace expbasis;

namespace {

const double kPi = 3.141592653589793238462643383279502884;

Rational rq(const char* s) { return Rational::parse(s); }

IntervalUnion two_piece() {
    return normalize_intervals({{rq("0"), rq("0.6")}, {rq("1.0"), rq("1.4")}});
}

// independent Phi oracle: count integer translates containing x directly
long phi_direct(const IntervalUnion& u, const Rational& x) {
    long count = 0;
    for (const auto& iv : u.parts()) {
        // integers n with a <= x + n < b
        long n_lo = (iv.a - x).floor();
        for (long n = n_lo; Rational(n) + x < iv.b; ++n)
            if (iv.a <= x + Rational(n)) ++count;
    }
    return count;
}

IntervalUnion random_union(std::mt19937_64& rng) {
    std::vector<std::pair<Rational, Rational>> raw;
    int k = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < k; ++i) {
        Rational a(static_cast<long>(rng() % 600) - 300, 100);
        Rational b = a + Rational(1 + static_cast<long>(rng() % 250), 100);
        raw.emplace_back(a, b);
    }
    return normalize_intervals(raw);
}

} // namespace

TEST_CASE("fold_1d on tiles and multiple covers") {
    auto unit = fold_1d(normalize_intervals({{rq("0"), rq("1")}}));
    REQUIRE(unit.pieces() == 1);
    CHECK(unit.values[0] == 1);

    auto twice = fold_1d(normalize_intervals({{rq("0"), rq("2")}}));
    REQUIRE(twice.pieces() == 1);
    CHECK(twice.values[0] == 2);
}

TEST_CASE("fold_1d of the split domain") {
    auto p = fold_1d(two_piece());
    REQUIRE(p.pieces() == 3);
    CHECK(p.breakpoints[0] == Rational(0));
    CHECK(p.breakpoints[1] == rq("0.4"));
    CHECK(p.breakpoints[2] == rq("0.6"));
    CHECK(p.breakpoints[3] == Rational(1));
    CHECK(p.values[0] == 2);
    CHECK(p.values[1] == 1);
    CHECK(p.values[2] == 0);
    CHECK(p.mass() == Rational(1));
}

TEST_CASE("fold_1d conserves mass and is integer-translation invariant") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 200; ++trial) {
        auto u = random_union(rng);
        auto p = fold_1d(u);
        CHECK(p.mass() == u.measure());
        long shift = static_cast<long>(rng() % 7) - 3;
        CHECK(fold_1d(u.translated(Rational(shift))) == p);
        for (std::size_t i = 0; i < p.values.size(); ++i) CHECK(p.values[i] >= 0);
        for (std::size_t i = 0; i + 1 < p.values.size(); ++i)
            CHECK(p.values[i] != p.values[i + 1]);
    }
}

TEST_CASE("profile values match a direct count at random rational points") {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 40; ++trial) {
        auto u = random_union(rng);
        auto p = fold_1d(u);
        for (int s = 0; s < 25; ++s) {
            Rational x(static_cast<long>(rng() % 9973), 9973);
            CHECK(p.value_at(x) == phi_direct(u, x));
        }
    }
}

TEST_CASE("phi_at for boxes") {
    Eigen::Matrix2d I = Eigen::Matrix2d::Identity();
    Parallelepiped unit(I, Eigen::Vector2d::Zero());
    double a[2] = {0.3, 0.7};
    CHECK(phi_at(unit, std::span<const double>(a, 2)) == 1);

    Eigen::Matrix2d S;
    S << 1, 0.5, 0, 1;
    Parallelepiped shear(S, Eigen::Vector2d::Zero());
    double b[2] = {0.2, 0.4};
    CHECK(phi_at(shear, std::span<const double>(b, 2)) == 1);

    Parallelepiped small(0.5 * I, Eigen::Vector2d::Zero());
    double c[2] = {0.75, 0.75};
    CHECK(phi_at(small, std::span<const double>(c, 2)) == 0);
}

TEST_CASE("sampled_profile basics") {
    auto unit = DomainSpec::box(
        Parallelepiped(Eigen::Matrix2d::Identity(), Eigen::Vector2d::Zero()));
    auto sp = sampled_profile(unit, 64);
    CHECK(sp.phi_min == 1);
    CHECK(sp.phi_max == 1);
    CHECK(sp.boundary_margin == 0.0);

    auto rot = DomainSpec::square(0.5, kPi / 4);
    auto sp2 = sampled_profile(rot, 256);
    CHECK(sp2.phi_min == 0);  // area 0.25 < 1 forces holes

    Eigen::Matrix2d S;
    S << 1, 0.5, 0, 1;
    auto shear = DomainSpec::box(Parallelepiped(S, Eigen::Vector2d::Zero()));
    auto sp3 = sampled_profile(shear, 256);
    CHECK(sp3.phi_min == 1);
    CHECK(sp3.phi_max == 1);

    CHECK_THROWS_AS(sampled_profile(rot, 1), ValidationError);
    CHECK_THROWS_AS(sampled_profile(rot, 100000), ResourceError);
}

TEST_CASE("sampled fold sees translated tiles as tiles") {
    // any translate of a fundamental domain still has Phi == 1
    Eigen::Vector2d t(10.3, -2.7);
    auto far_tile = DomainSpec::box(Parallelepiped(Eigen::Matrix2d::Identity(), t));
    auto sp = sampled_profile(far_tile, 32);
    CHECK(sp.phi_min == 1);
    CHECK(sp.phi_max == 1);
}

TEST_CASE("sampled_profile counts equal phi_at at sampled cell centers") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> entry(-1.5, 1.5);
    for (int trial = 0; trial < 10; ++trial) {
        Eigen::Matrix2d A;
        do {
            A << entry(rng), entry(rng), entry(rng), entry(rng);
        } while (std::abs(A.determinant()) < 0.2);
        Eigen::Vector2d t(entry(rng), entry(rng));
        Parallelepiped box(A, t);
        auto spec = DomainSpec::box(box);
        const int R = 16;
        auto sp = sampled_profile(spec, R);
        for (int probe = 0; probe < 40; ++probe) {
            int i = static_cast<int>(rng() % R), j = static_cast<int>(rng() % R);
            double x[2] = {(i + 0.5) / R, (j + 0.5) / R};
            CHECK(sp.counts[static_cast<std::size_t>(i) * R + j] ==
                  phi_at(box, std::span<const double>(x, 2)));
        }
    }
}

TEST_CASE("essential_range") {
    CHECK(essential_range(fold_1d(normalize_intervals({{rq("0"), rq("2")}}))).phi_min == 2);
    CHECK(essential_range(fold_1d(normalize_intervals({{rq("0"), rq("2")}}))).phi_max == 2);
    auto r = essential_range(fold_1d(two_piece()));
    CHECK(r.phi_min == 0);
    CHECK(r.phi_max == 2);
    CHECK(!r.approximate);
    auto unit = fold_1d(normalize_intervals({{rq("0"), rq("1")}}));
    CHECK(essential_range(unit).phi_min == 1);
    CHECK(essential_range(unit).phi_max == 1);
}

TEST_CASE("overlap_shifts on interval unions") {
    auto tile = DomainSpec::intervals(normalize_intervals({{rq("0"), rq("1")}}));
    CHECK(overlap_shifts(tile, 2).empty());

    auto split = DomainSpec::intervals(two_piece());
    auto shifts = overlap_shifts(split, 2);
    REQUIRE(shifts.size() == 2);
    CHECK(shifts[0].shift[0] == -1);
    CHECK(shifts[0].measure == doctest::Approx(0.4));
    CHECK(shifts[1].shift[0] == 1);
    CHECK(shifts[1].measure == doctest::Approx(0.4));

    auto wide = DomainSpec::intervals(normalize_intervals({{rq("0"), rq("1.2")}}));
    auto ws = overlap_shifts(wide, 2);
    REQUIRE(ws.size() == 2);
    CHECK(ws[1].shift[0] == 1);
    CHECK(ws[1].measure == doctest::Approx(0.2));
}

TEST_CASE("overlap emptiness matches phi_max <= 1 on random unions") {
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 150; ++trial) {
        auto u = random_union(rng);
        auto spec = DomainSpec::intervals(u);
        // radius covering the whole union span
        int radius = 2 + static_cast<int>(u.parts().back().b.floor() - u.parts().front().a.floor());
        bool no_overlap = overlap_shifts(spec, radius).empty();
        bool frame = essential_range(fold_1d(u)).phi_max <= 1;
        CHECK(no_overlap == frame);
    }
}

TEST_CASE("overlap_shifts rejects radius < 1") {
    auto tile = DomainSpec::intervals(normalize_intervals({{rq("0"), rq("1")}}));
    CHECK_THROWS_AS(overlap_shifts(tile, 0), ValidationError);
}

TEST_CASE("phi_at rejects dimension mismatches") {
    Parallelepiped unit(Eigen::Matrix2d::Identity(), Eigen::Vector2d::Zero());
    double x[3] = {0.1, 0.2, 0.3};
    CHECK_THROWS_AS(phi_at(unit, std::span<const double>(x, 3)), ValidationError);
}

TEST_CASE("box overlap estimates match a dense grid count") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> entry(-1.5, 1.5);
    Config cfg;
    cfg.overlap_resolution = 64;
    for (int trial = 0; trial < 10; ++trial) {
        Eigen::Matrix2d A;
        do {
            A << entry(rng), entry(rng), entry(rng), entry(rng);
        } while (std::abs(A.determinant()) < 0.2);
        Parallelepiped box(A, Eigen::Vector2d::Zero());
        auto spec = DomainSpec::box(box);
        auto shifts = overlap_shifts(spec, 2, cfg);
        for (const auto& sh : shifts) {
            // dense count over the parameter grid
            Eigen::Vector2d s(sh.shift[0], sh.shift[1]);
            Eigen::Vector2d w = box.inverse * s;
            long dense = 0;
            const int R = cfg.overlap_resolution;
            for (int i = 0; i < R; ++i)
                for (int j = 0; j < R; ++j) {
                    double u0 = (i + 0.5) / R - w(0);
                    double u1 = (j + 0.5) / R - w(1);
                    if (u0 >= -cfg.eps && u0 < 1 - cfg.eps && u1 >= -cfg.eps && u1 < 1 - cfg.eps)
                        ++dense;
                }
            double dense_measure = box.measure() * dense / double(R) / double(R);
            CHECK(sh.measure == doctest::Approx(dense_measure).epsilon(1e-12));
        }
    }
}
