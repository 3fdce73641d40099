#include "pipelink/channel.hpp"

#include "erfc_oracle.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace pipelink;

namespace {
const ChannelParams kRef{1.0, 0.1, 0.0, 1.0}; // x=1 m, D=0.1 m^2/s
}

TEST_CASE("erfc oracle reproduces frozen high-precision constants") {
    // 20-digit reference values, frozen from an arbitrary-precision run.
    CHECK(oracle::erfc(1.0) == doctest::Approx(0.15729920705028513066).epsilon(1e-14));
    CHECK(oracle::erfc(0.5) == doctest::Approx(0.47950012218695346232).epsilon(1e-14));
    CHECK(oracle::erfc(2.5) == doctest::Approx(0.00040695201744495893).epsilon(1e-13));
    CHECK(oracle::erfc(4.0) == doctest::Approx(1.541725790028002e-8).epsilon(1e-12));
    CHECK(oracle::erfc(0.0) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("hit concentration peaks at x^2/(2D) and vanishes at the edges") {
    // Dense grid scan: the maximum must sit at the analytic peak time.
    double best_t = 0.0, best = -1.0;
    for (double t = 0.05; t <= 20.0; t += 0.001) {
        const double v = hit_concentration(kRef, t);
        if (v > best) {
            best = v;
            best_t = t;
        }
    }
    CHECK(best_t == doctest::Approx(5.0).epsilon(2e-3));
    CHECK(zero_drift_peak_time(kRef) == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(best == doctest::Approx(0.48394144903828670).epsilon(1e-7));

    CHECK(hit_concentration(kRef, 1e-9) < 1e-30);  // vanishes toward t=0
    CHECK(hit_concentration(kRef, 1e12) < 1e-5);   // decays at large t
}

TEST_CASE("hit concentration is linear in the molecule count") {
    ChannelParams doubled = kRef;
    doubled.molecules_m = 2.0;
    for (const double t : {0.3, 2.0, 5.0, 17.0})
        CHECK(hit_concentration(doubled, t) == 2.0 * hit_concentration(kRef, t));
}

TEST_CASE("capture fraction matches the independent erfc oracle") {
    for (const double t : {0.5, 1.0, 2.5, 5.0, 10.0, 50.0}) {
        const double expected = oracle::capture_fraction(1.0, 0.1, t);
        CHECK(cumulative_capture_fraction(kRef, t)
              == doctest::Approx(expected).epsilon(1e-13));
    }
    // Frozen spot values: F(2.5) = erfc(1), F(10) = erfc(0.5).
    CHECK(cumulative_capture_fraction(kRef, 2.5)
          == doctest::Approx(0.15729920705028513).epsilon(1e-14));
    CHECK(cumulative_capture_fraction(kRef, 10.0)
          == doctest::Approx(0.47950012218695346).epsilon(1e-14));
}

TEST_CASE("capture fraction boundary and monotonicity") {
    CHECK(cumulative_capture_fraction(kRef, 0.0) == 0.0);
    double prev = 0.0;
    for (double t = 0.1; t <= 40.0; t += 0.1) {
        const double f = cumulative_capture_fraction(kRef, t);
        CHECK(f >= prev);
        CHECK(f < 1.0);
        prev = f;
    }
}

TEST_CASE("windowed capture reproduces the frozen reference window") {
    // M * (F(10) - F(2.5)) for the reference channel.
    const double got = windowed_capture(kRef, {2.5, 7.5});
    CHECK(got == doctest::Approx(0.32220091513666833).epsilon(1e-13));
    const double via_oracle = oracle::capture_fraction(1.0, 0.1, 10.0)
                              - oracle::capture_fraction(1.0, 0.1, 2.5);
    CHECK(got == doctest::Approx(via_oracle).epsilon(1e-12));
}

TEST_CASE("windowed capture is additive over a partition of the window") {
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> u(0.01, 30.0);
    for (int trial = 0; trial < 200; ++trial) {
        double a = u(rng), b = u(rng), c = u(rng);
        if (a > b) std::swap(a, b);
        if (b > c) std::swap(b, c);
        if (a > b) std::swap(a, b);
        if (b - a < 1e-6 || c - b < 1e-6) continue;
        const double whole = windowed_capture(kRef, {a, c - a});
        const double parts = windowed_capture(kRef, {a, b - a})
                             + windowed_capture(kRef, {b, c - b});
        CHECK(whole == doctest::Approx(parts).epsilon(1e-12));
    }
}

TEST_CASE("windowed capture limits") {
    // Vanishing window.
    CHECK(windowed_capture(kRef, {2.5, 1e-13}) == doctest::Approx(0.0).scale(1.0));
    // Huge window from t=0 swallows (almost) everything ever absorbed:
    // F -> 1 as t -> infinity, so M * F(1e12) must approach M.
    ChannelParams m5 = kRef;
    m5.molecules_m = 5.0;
    CHECK(windowed_capture(m5, {0.0, 1e12}) == doctest::Approx(5.0).epsilon(1e-3));
    CHECK(windowed_capture(m5, {0.0, 1e12}) <= 5.0);
}

TEST_CASE("scaling (x, D) -> (2x, 4D) leaves capture bitwise unchanged") {
    // The capture argument x/(2*sqrt(D*t)) maps onto itself under this
    // scaling with only exact power-of-two float operations involved.
    const ChannelParams scaled{2.0, 0.4, 0.0, 1.0};
    for (const double t : {0.3, 1.0, 2.5, 7.0, 19.5})
        CHECK(cumulative_capture_fraction(scaled, t)
              == cumulative_capture_fraction(kRef, t));
    // The hit rate picks up exactly the 1/sqrt(D) prefactor: halved.
    for (const double t : {0.3, 1.0, 2.5, 7.0, 19.5})
        CHECK(hit_concentration(scaled, t) == 0.5 * hit_concentration(kRef, t));
}

TEST_CASE("drift is accepted by the hit rate but rejected by capture laws") {
    ChannelParams drifting = kRef;
    drifting.drift_v = 0.3;
    CHECK(hit_concentration(drifting, 2.0) > 0.0);
    CHECK_THROWS_AS((void)cumulative_capture_fraction(drifting, 2.0),
                    UnsupportedRegimeError);
    CHECK_THROWS_AS((void)windowed_capture(drifting, {0.0, 1.0}),
                    UnsupportedRegimeError);
    CHECK_THROWS_AS((void)zero_drift_peak_time(drifting), UnsupportedRegimeError);
}

TEST_CASE("drift concentrates arrivals earlier") {
    ChannelParams drifting = kRef;
    drifting.drift_v = 0.5;
    // Peak of the drifting hit rate: (-D + sqrt(D^2 + v^2 x^2)) / v^2.
    double best_t = 0.0, best = -1.0;
    for (double t = 0.01; t <= 10.0; t += 0.001) {
        const double v = hit_concentration(drifting, t);
        if (v > best) {
            best = v;
            best_t = t;
        }
    }
    const double expected =
        (-0.1 + std::sqrt(0.1 * 0.1 + 0.25 * 1.0)) / 0.25;
    CHECK(best_t == doctest::Approx(expected).epsilon(5e-3));
    CHECK(best_t < 5.0); // earlier than the drift-free peak
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS((void)hit_concentration({0.0, 0.1}, 1.0), ValidationError);
    CHECK_THROWS_AS((void)hit_concentration({1.0, -0.1}, 1.0), ValidationError);
    CHECK_THROWS_AS((void)hit_concentration({1.0, 0.1, -0.5}, 1.0), ValidationError);
    CHECK_THROWS_AS((void)hit_concentration({1.0, 0.1, 0.0, 0.0}, 1.0),
                    ValidationError);
    CHECK_THROWS_AS((void)hit_concentration(kRef, 0.0), ValidationError);
    CHECK_THROWS_AS((void)hit_concentration(kRef, -1.0), ValidationError);
    CHECK_THROWS_AS((void)cumulative_capture_fraction(kRef, -0.1), ValidationError);
    CHECK_THROWS_AS((void)windowed_capture(kRef, {-1.0, 1.0}), ValidationError);
    CHECK_THROWS_AS((void)windowed_capture(kRef, {1.0, 0.0}), ValidationError);
}
