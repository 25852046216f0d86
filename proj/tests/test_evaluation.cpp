#include <doctest.h>

#include <planereg/evaluation.hpp>

#include <cmath>

#include "test_support.hpp"

using namespace planereg;

TEST_CASE("correspondence_error basics") {
    CorrespondenceSet corr;
    Rng rng(3);
    RigidMotion truth = testing::random_rigid_motion(rng, 1.0, 1.0);
    for (int i = 0; i < 40; ++i) {
        const Vec3 p = 2.0 * testing::random_in_ball(rng);
        corr.pairs.emplace_back(p, truth.apply(p));
    }
    CHECK(correspondence_error(truth, corr) < 1e-12);

    CorrespondenceSet shifted;
    for (int i = 0; i < 10; ++i) {
        const Vec3 p(0.1 * i, 0.2 * i, -0.3 * i);
        shifted.pairs.emplace_back(p, p + Vec3(0.3, 0, 0));
    }
    CHECK(std::abs(correspondence_error(RigidMotion::identity(), shifted) - 0.3) < 1e-12);

    CHECK_THROWS_AS(correspondence_error(RigidMotion::identity(), CorrespondenceSet{}),
                    EmptyCorrespondences);
}

TEST_CASE("correspondence_error of a small yaw mismatch matches per-point arithmetic") {
    // points on a radius-2 ring around the Up axis; a 1 degree yaw error
    // displaces each by 2 sin(0.5 deg) * 2
    const UnitVec3 up(Vec3(0, 1, 0));
    const RigidMotion off = RigidMotion::rotation_about(up, deg_to_rad(1.0));
    CorrespondenceSet corr;
    for (int i = 0; i < 360; ++i) {
        const double a = deg_to_rad(static_cast<double>(i));
        const Vec3 p(2.0 * std::cos(a), 0.7, 2.0 * std::sin(a));
        corr.pairs.emplace_back(p, p);  // true motion is the identity
    }
    const double expected = 2.0 * std::sin(deg_to_rad(0.5)) * 2.0;
    CHECK(std::abs(correspondence_error(off, corr) - expected) < 1e-9);
}

TEST_CASE("correspondence_error is invariant under conjugation") {
    Rng rng(10);
    for (int trial = 0; trial < 20; ++trial) {
        RigidMotion t = testing::random_rigid_motion(rng, 1.0, 1.0);
        RigidMotion m = testing::random_rigid_motion(rng, 2.0, 2.0);
        CorrespondenceSet corr, moved;
        for (int i = 0; i < 25; ++i) {
            const Vec3 pa = 2.0 * testing::random_in_ball(rng);
            const Vec3 pb = 2.0 * testing::random_in_ball(rng);
            corr.pairs.emplace_back(pa, pb);
            moved.pairs.emplace_back(m.apply(pa), m.apply(pb));
        }
        const RigidMotion conjugated = compose(m, compose(t, invert(m)));
        CHECK(std::abs(correspondence_error(t, corr) -
                       correspondence_error(conjugated, moved)) < 1e-9);
    }
}

TEST_CASE("aggregate on uniform outcomes") {
    std::vector<PairOutcome> results(4, PairOutcome{true, 0.1, 5.0});
    const EvalReport rep = aggregate(results);
    CHECK(rep.success_pct == 100.0);
    CHECK(rep.recall_pct == 100.0);
    CHECK(rep.precision_pct == 100.0);
    CHECK(std::abs(rep.rmse - 0.1) < 1e-12);
    CHECK(std::abs(rep.mae - 0.1) < 1e-12);
    CHECK(rep.mean_time_ms == 5.0);
    CHECK(!rep.precision_degenerate);
}

TEST_CASE("aggregate hand-computed mixed outcomes") {
    const std::vector<PairOutcome> results{{true, 0.1, 1.0},
                                           {true, 0.3, 1.0},
                                           {false, std::nullopt, 1.0},
                                           {false, std::nullopt, 1.0}};
    const EvalReport rep = aggregate(results);
    CHECK(rep.success_pct == 50.0);
    CHECK(rep.recall_pct == 25.0);
    CHECK(rep.precision_pct == 50.0);
    CHECK(std::abs(rep.mae - 0.2) < 1e-12);  // median of {0.1, 0.3}
    CHECK(std::abs(rep.rmse - std::sqrt((0.01 + 0.09) / 2.0)) < 1e-12);
}

TEST_CASE("aggregate with zero registered pairs") {
    const std::vector<PairOutcome> results{{false, std::nullopt, 2.0},
                                           {false, std::nullopt, 4.0}};
    const EvalReport rep = aggregate(results);
    CHECK(rep.success_pct == 0.0);
    CHECK(rep.recall_pct == 0.0);
    CHECK(rep.precision_pct == 0.0);
    CHECK(rep.precision_degenerate);
    CHECK(rep.mean_time_ms == 3.0);
}

TEST_CASE("recall identity holds exactly") {
    Rng rng(8);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<PairOutcome> results;
        const int n = 1 + static_cast<int>(rng.below(12));
        for (int i = 0; i < n; ++i) {
            PairOutcome r;
            r.registered = rng.below(2) == 0;
            if (r.registered) r.corr_error = rng.uniform(0.0, 0.5);
            results.push_back(r);
        }
        const EvalReport rep = aggregate(results);
        CHECK(rep.recall_pct <= rep.success_pct + 1e-12);
        if (rep.registered > 0) {
            CHECK(std::abs(rep.recall_pct - rep.precision_pct * rep.success_pct / 100.0) < 1e-9);
        }
        CHECK(rep.rmse >= 0.0);
    }
}
