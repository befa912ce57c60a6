#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include "fvawwr/curve.hpp"
#include "fvawwr/errors.hpp"
#include "test_util.hpp"

using namespace fvawwr;
using fvawwr::testing::exact_flat_curve;

using fvawwr::testing::code_of;

TEST(Curve, BuildFromTwoPillars) {
    auto c = build_curve({{0, 1}, {1, 0.951229}});
    EXPECT_DOUBLE_EQ(c.df(1.0), 0.951229);
    EXPECT_EQ(c.df(0.0), 1.0);
}

TEST(Curve, SinglePillarIsIdentity) {
    auto c = build_curve({{0, 1}});
    EXPECT_EQ(c.df(0.0), 1.0);
    EXPECT_EQ(c.last_time(), 0.0);
    EXPECT_EQ(code_of([&] { c.df(0.1); }), ErrorCode::OutOfRange);
}

TEST(Curve, NegativeRatesAccepted) {
    auto c = build_curve({{0, 1}, {1, 1.005158}});
    EXPECT_NEAR(c.zero_rate(1.0), -0.005145, 5e-7);
}

TEST(Curve, PrependsOrigin) {
    auto c = build_curve({{1, 0.95}});
    EXPECT_EQ(c.pillars().size(), 2u);
    EXPECT_EQ(c.df(0.0), 1.0);
}

TEST(Curve, RejectsBadPillars) {
    EXPECT_EQ(code_of([] { build_curve({{0, 1}, {1, 0.9}, {1, 0.8}}); }), ErrorCode::NonMonotoneTimes);
    EXPECT_EQ(code_of([] { build_curve({{0, 1}, {2, 0.9}, {1, 0.8}}); }), ErrorCode::NonMonotoneTimes);
    EXPECT_EQ(code_of([] { build_curve({{0, 1}, {1, 0.0}}); }), ErrorCode::NonPositiveFactor);
    EXPECT_EQ(code_of([] { build_curve({{0, 1}, {1, -0.5}}); }), ErrorCode::NonPositiveFactor);
    EXPECT_EQ(code_of([] { build_curve({}); }), ErrorCode::DomainError);
}

TEST(Curve, FlatTableValues) {
    auto c = builtin_curve("flat5");
    EXPECT_DOUBLE_EQ(c.df(10.0), 0.606531);
    EXPECT_NEAR(c.df(0.5), std::exp(-0.025), 1e-6);
    EXPECT_NEAR(c.zero_rate(20.0), 0.05, 1e-6);
    EXPECT_EQ(c.df(0.0), 1.0);
}

TEST(Curve, LogLinearBetweenPillars) {
    // log-linear between the 12y and 15y pillars
    auto c = builtin_curve("flat5");
    double w = 0.3;
    double t = 12 + w * 3;
    EXPECT_NEAR(c.df(t), std::exp((1 - w) * std::log(0.548812) + w * std::log(0.472367)), 1e-15);
}

TEST(Curve, AaaZeroRate) { EXPECT_NEAR(builtin_curve("aaa").zero_rate(5.0), 0.006217, 5e-7); }

TEST(Curve, DomainErrors) {
    auto c = builtin_curve("flat5");
    EXPECT_EQ(code_of([&] { c.df(30.5); }), ErrorCode::OutOfRange);
    EXPECT_EQ(code_of([&] { c.df(-0.1); }), ErrorCode::OutOfRange);
    EXPECT_EQ(code_of([&] { c.zero_rate(0.0); }), ErrorCode::DomainError);
    EXPECT_EQ(code_of([&] { c.inst_forward(31.0); }), ErrorCode::OutOfRange);
}

TEST(Curve, PillarsReproducedExactly) {
    for (const auto& name : builtin_curve_names()) {
        auto c = builtin_curve(name);
        for (const auto& p : c.pillars()) EXPECT_NEAR(c.df(p.t), p.df, 1e-14 * p.df) << name << " t=" << p.t;
    }
}

TEST(Curve, ExactFlatZeroRateEverywhere) {
    auto c = exact_flat_curve(0.05);
    for (double t = 0.01; t <= 30.0; t += 0.37) EXPECT_NEAR(c.zero_rate(t), 0.05, 1e-12) << t;
    EXPECT_NEAR(c.zero_rate(30.0), 0.05, 1e-12);
}

TEST(Curve, ForwardOnFlatCurve) {
    auto c = exact_flat_curve(0.05);
    EXPECT_NEAR(c.inst_forward(3.0), 0.05, 1e-10);
    EXPECT_NEAR(c.inst_forward(0.0), 0.05, 1e-10);
    EXPECT_NEAR(c.inst_forward(30.0), 0.05, 1e-10);
}

TEST(Curve, ForwardAtPillarAveragesSegments) {
    auto c = build_curve({{0, 1}, {1, std::exp(-0.02)}, {2, std::exp(-0.02 - 0.04)}});
    EXPECT_NEAR(c.inst_forward(1.0), 0.03, 1e-12);
    EXPECT_NEAR(c.inst_forward(0.5), 0.02, 1e-12);
    EXPECT_NEAR(c.inst_forward(1.5), 0.04, 1e-12);
}

TEST(Curve, ForwardAtOriginMatchesBruteForce) {
    // one-sided slopes with shrinking steps converge on the first segment's rate
    auto c = builtin_curve("aaa");
    double seg = -std::log(0.998984) / 0.5;
    for (double h : {1e-2, 1e-3, 1e-5}) {
        double fd = -std::log(c.df(h)) / h;
        EXPECT_NEAR(fd, seg, 1e-10);
    }
    EXPECT_NEAR(c.inst_forward(0.0), seg, 1e-12);
    EXPECT_NEAR(c.inst_forward(0.0), 0.002, 1e-4);
}

TEST(Curve, ForwardIntegratesBackToDiscountRatios) {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(0.0, 30.0);
    for (const auto& name : builtin_curve_names()) {
        auto c = builtin_curve(name);
        for (int trial = 0; trial < 5; ++trial) {
            double a = u(rng), b = u(rng);
            if (a > b) std::swap(a, b);
            // midpoint rule; kinks are smeared over +-1e-4 so sampling error is ~jump*h
            int n = 20000;
            double h = (b - a) / n, s = 0.0;
            for (int i = 0; i < n; ++i) s += c.inst_forward(a + (i + 0.5) * h) * h;
            EXPECT_NEAR(std::exp(-s) / (c.df(b) / c.df(a)), 1.0, 2e-5) << name << " [" << a << "," << b << "]";
        }
    }
}

TEST(Curve, ShippedCsvMatchesBuiltin) {
    for (const auto& name : builtin_curve_names()) {
        auto b = builtin_curve(name);
        auto f = load_curve_csv(std::filesystem::path(FVAWWR_DATA_DIR) / "curves" / (name + ".csv"), b.kind());
        auto pb = b.pillars(), pf = f.pillars();
        ASSERT_EQ(pb.size(), pf.size()) << name;
        for (std::size_t i = 0; i < pb.size(); ++i) {
            EXPECT_EQ(pb[i].t, pf[i].t);
            EXPECT_EQ(pb[i].df, pf[i].df);
        }
    }
}

TEST(Curve, CsvRoundTripAndErrors) {
    auto dir = std::filesystem::temp_directory_path() / "fvawwr_curve_test";
    std::filesystem::create_directories(dir);
    auto c = builtin_curve("eur1d");
    write_curve_csv(dir / "c.csv", c);
    auto back = load_curve_csv(dir / "c.csv", CurveKind::Yield);
    for (double t = 0; t <= 30; t += 0.7) EXPECT_EQ(c.df(t), back.df(t));

    std::ofstream(dir / "bad.csv") << "time,discount\n0,1\n";
    EXPECT_EQ(code_of([&] { load_curve_csv(dir / "bad.csv", CurveKind::Yield); }), ErrorCode::ParseError);
    std::ofstream(dir / "bad2.csv") << "t,df\n0,1\n1,abc\n";
    EXPECT_EQ(code_of([&] { load_curve_csv(dir / "bad2.csv", CurveKind::Yield); }), ErrorCode::ParseError);
    EXPECT_EQ(code_of([&] { load_curve_csv(dir / "missing.csv", CurveKind::Yield); }), ErrorCode::ParseError);
}
