#include "pipelink/pulse.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

using namespace pipelink;

namespace {

const ChannelParams kRef{1.0, 0.1, 0.0, 1.0};

/// Triangle fixture with a flat zero head so the ingest baseline is 0:
/// zero on [0,2], rise 0->1 on [2,7], fall 1->0 on [7,17], zero to 18.
/// Delay spread is exactly 10 * (1 - 1/sqrt(2)) with the peak at t=7.
PulseTrace triangle_trace(double dt = 0.25) {
    PulseTrace t;
    t.sample_period = dt;
    t.start_time = 0.0;
    const auto n = static_cast<std::size_t>(std::lround(18.0 / dt)) + 1;
    t.samples.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = static_cast<double>(i) * dt;
        double v = 0.0;
        if (x > 2.0 && x <= 7.0) v = (x - 2.0) / 5.0;
        else if (x > 7.0 && x < 17.0) v = 1.0 - (x - 7.0) / 10.0;
        t.samples[i] = v;
    }
    return t;
}

constexpr double kTriangleTau = 10.0 * (1.0 - std::numbers::sqrt2 / 2.0);

} // namespace

TEST_CASE("triangle delay spread is the exact -3 dB width") {
    const DelaySpread ds = estimate_delay_spread(triangle_trace());
    CHECK(ds.peak_time == doctest::Approx(7.0).epsilon(1e-15));
    CHECK(ds.tau == doctest::Approx(kTriangleTau).epsilon(1e-12));
    CHECK(ds.cross_time == doctest::Approx(7.0 + kTriangleTau).epsilon(1e-12));
}

TEST_CASE("delay spread is exactly invariant under amplitude scaling") {
    const PulseTrace base = triangle_trace();
    const DelaySpread ref = estimate_delay_spread(base);

    PulseTrace scaled = base;
    for (auto& s : scaled.samples) s *= 4.0; // power-of-two: bitwise-exact path
    const DelaySpread ds = estimate_delay_spread(scaled);
    CHECK(ds.tau == ref.tau);
    CHECK(ds.peak_time == ref.peak_time);
    CHECK(ds.cross_time == ref.cross_time);

    PulseTrace odd = base;
    for (auto& s : odd.samples) s *= 3.7; // arbitrary positive scale
    const DelaySpread ds2 = estimate_delay_spread(odd);
    CHECK(ds2.tau == doctest::Approx(ref.tau).epsilon(1e-12));
}

TEST_CASE("delay spread is exactly invariant under time shifts") {
    const PulseTrace base = triangle_trace();
    const DelaySpread ref = estimate_delay_spread(base);

    PulseTrace shifted = base;
    shifted.start_time = 123.456;
    const DelaySpread ds = estimate_delay_spread(shifted);
    CHECK(ds.tau == ref.tau); // bitwise: tau never touches start_time
    CHECK(ds.peak_time == doctest::Approx(123.456 + 7.0).epsilon(1e-12));
}

TEST_CASE("flat or noise-only traces raise the no-signal error") {
    PulseTrace flat;
    flat.sample_period = 0.5;
    flat.samples.assign(64, 1.0);
    flat.samples[10] = 1.001; // ripple, but nothing resembling a pulse
    CHECK_THROWS_AS((void)estimate_delay_spread(flat), NoSignalError);

    PulseTrace zeros;
    zeros.sample_period = 0.5;
    zeros.samples.assign(64, 0.0);
    CHECK_THROWS_AS((void)estimate_delay_spread(zeros), NoSignalError);
}

TEST_CASE("a trace truncated before the crossing raises incomplete-trace") {
    PulseTrace rising;
    rising.sample_period = 0.5;
    rising.samples.resize(40);
    for (std::size_t i = 0; i < 20; ++i) rising.samples[i] = 0.0;
    for (std::size_t i = 20; i < 40; ++i)
        rising.samples[i] = static_cast<double>(i - 19);
    CHECK_THROWS_AS((void)estimate_delay_spread(rising), IncompleteTraceError);
}

TEST_CASE("synthesized impulse peaks near the analytic peak time") {
    const PulseTrace trace = synthesize_impulse_trace(kRef, 0.05, 30.0);
    std::size_t peak = 0;
    for (std::size_t i = 1; i < trace.samples.size(); ++i)
        if (trace.samples[i] > trace.samples[peak]) peak = i;
    CHECK(trace.time_at(peak) == doctest::Approx(5.0).epsilon(0.02));
    CHECK(trace.origin == TraceOrigin::synthesized);
    CHECK(trace.start_time == 0.05);
}

TEST_CASE("synthesized impulse scales linearly with the molecule count") {
    const PulseTrace one = synthesize_impulse_trace(kRef, 0.1, 20.0);
    ChannelParams doubled = kRef;
    doubled.molecules_m = 2.0;
    const PulseTrace two = synthesize_impulse_trace(doubled, 0.1, 20.0);
    REQUIRE(one.samples.size() == two.samples.size());
    for (std::size_t i = 0; i < one.samples.size(); ++i)
        CHECK(two.samples[i] == 2.0 * one.samples[i]);
}

TEST_CASE("drift pulls the synthesized peak earlier") {
    ChannelParams drifting = kRef;
    drifting.drift_v = 0.5;
    const PulseTrace still = synthesize_impulse_trace(kRef, 0.05, 20.0);
    const PulseTrace moved = synthesize_impulse_trace(drifting, 0.05, 20.0);
    const auto argmax = [](const PulseTrace& t) {
        std::size_t k = 0;
        for (std::size_t i = 1; i < t.samples.size(); ++i)
            if (t.samples[i] > t.samples[k]) k = i;
        return t.time_at(k);
    };
    CHECK(argmax(moved) < argmax(still));
}

TEST_CASE("horizon must cover the pulse body") {
    CHECK_THROWS_AS((void)synthesize_impulse_trace(kRef, 0.05, 10.0),
                    ValidationError); // < 3 * t_peak = 15
    CHECK_NOTHROW((void)synthesize_impulse_trace(kRef, 0.05, 15.0));
}

TEST_CASE("single-emission train equals the impulse trace bitwise") {
    EmissionSchedule sched;
    sched.bits = {1};
    sched.symbol_period = 2.5;
    const PulseTrace a = synthesize_impulse_trace(kRef, 0.125, 20.0);
    const PulseTrace b = synthesize_train_trace(kRef, sched, 0.125, 20.0);
    CHECK(a.samples == b.samples);
    CHECK(a.sample_period == b.sample_period);
}

TEST_CASE("trains superpose: more ones never lower the signal") {
    EmissionSchedule sparse, dense;
    sparse.bits = {1, 0, 1};
    dense.bits = {1, 1, 1};
    sparse.symbol_period = dense.symbol_period = 2.5;
    const PulseTrace lo = synthesize_train_trace(kRef, sparse, 0.125, 25.0);
    const PulseTrace hi = synthesize_train_trace(kRef, dense, 0.125, 25.0);
    REQUIRE(lo.samples.size() == hi.samples.size());
    for (std::size_t i = 0; i < lo.samples.size(); ++i)
        CHECK(hi.samples[i] >= lo.samples[i]);
}

TEST_CASE("trains with disjoint one-positions add up") {
    EmissionSchedule a, b, both;
    a.bits = {1, 0, 0, 1};
    b.bits = {0, 1, 0, 0};
    both.bits = {1, 1, 0, 1};
    a.symbol_period = b.symbol_period = both.symbol_period = 2.5;
    const PulseTrace ta = synthesize_train_trace(kRef, a, 0.125, 30.0);
    const PulseTrace tb = synthesize_train_trace(kRef, b, 0.125, 30.0);
    const PulseTrace tc = synthesize_train_trace(kRef, both, 0.125, 30.0);
    for (std::size_t i = 0; i < tc.samples.size(); ++i)
        CHECK(tc.samples[i]
              == doctest::Approx(ta.samples[i] + tb.samples[i]).epsilon(1e-12));
}

TEST_CASE("ISI floor before each emission grows with the symbol index") {
    // Short symbol period (half the peak time): stragglers from earlier
    // emissions pile up, so the sample just before each release climbs.
    EmissionSchedule sched;
    sched.bits.assign(8, 1);
    sched.symbol_period = 2.5;
    const double dt = 0.125;
    const PulseTrace t = synthesize_train_trace(kRef, sched, dt, 32.5);
    double prev = 0.0;
    for (std::size_t k = 1; k < 8; ++k) {
        // Sample at t = k*P - dt is index k*P/dt - 2 (grid starts at dt).
        const std::size_t idx =
            static_cast<std::size_t>(std::lround(2.5 * static_cast<double>(k) / dt)) - 2;
        const double floor_k = t.samples[idx];
        CHECK(floor_k >= prev);
        prev = floor_k;
    }
    CHECK(prev > 0.1); // the pile-up is substantial, not numerical dust
}

TEST_CASE("analytic delay spread matches a root-finding oracle") {
    // Independent oracle: locate the peak of the hit rate by golden-section
    // refinement of a dense grid, then bisect for the post-peak crossing of
    // peak/sqrt(2). The estimator must agree within one sample period.
    const auto phi = [](double t) {
        return 1.0 / std::sqrt(std::numbers::pi * 0.1 * t)
               * std::exp(-1.0 / (4.0 * 0.1 * t));
    };
    double peak_t = 0.0, peak_v = -1.0;
    for (double t = 0.5; t <= 40.0; t += 1e-4) {
        const double v = phi(t);
        if (v > peak_v) {
            peak_v = v;
            peak_t = t;
        }
    }
    const double target = peak_v / std::numbers::sqrt2;
    double lo = peak_t, hi = 400.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (phi(mid) > target ? lo : hi) = mid;
    }
    const double tau_oracle = 0.5 * (lo + hi) - peak_t;
    // Frozen from the analytic law: tau = 16.5553520350 s for x=1, D=0.1.
    CHECK(tau_oracle == doctest::Approx(16.555352035).epsilon(1e-6));

    const double dt = 0.05;
    const PulseTrace trace = synthesize_impulse_trace(kRef, dt, 200.0);
    const DelaySpread ds = estimate_delay_spread(trace);
    CHECK(std::abs(ds.tau - tau_oracle) <= dt);
    CHECK(std::abs(ds.peak_time - peak_t) <= dt);
}

TEST_CASE("delay spread scales as x^2/D") {
    const double dt1 = 0.05;
    const PulseTrace t1 = synthesize_impulse_trace(kRef, dt1, 200.0);
    const double tau1 = estimate_delay_spread(t1).tau;

    ChannelParams far = kRef;
    far.distance_x = 2.0; // t_peak and tau scale by 4
    const PulseTrace t2 = synthesize_impulse_trace(far, 4.0 * dt1, 800.0);
    const double tau2 = estimate_delay_spread(t2).tau;
    CHECK(tau2 == doctest::Approx(4.0 * tau1).epsilon(0.01));
}

TEST_CASE("trace CSV round-trips through ingest") {
    const PulseTrace tri = triangle_trace();
    std::ostringstream os;
    write_trace_csv(os, tri, "triangle fixture");
    std::istringstream is(os.str());
    const PulseTrace back = ingest_trace_csv(is);

    CHECK(back.origin == TraceOrigin::measured);
    CHECK(back.sample_period == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(back.start_time == doctest::Approx(0.0).scale(1.0));
    REQUIRE(back.samples.size() == tri.samples.size());
    // Leading zeros give a zero baseline, so samples survive unchanged.
    for (std::size_t i = 0; i < tri.samples.size(); ++i)
        CHECK(back.samples[i] == doctest::Approx(tri.samples[i]).epsilon(1e-9));

    const DelaySpread ds = estimate_delay_spread(back);
    CHECK(ds.tau == doctest::Approx(kTriangleTau).epsilon(1e-9));
}

TEST_CASE("ingest subtracts the leading-median baseline") {
    std::ostringstream os;
    os << "t_s,amplitude\n";
    for (int i = 0; i < 40; ++i) {
        double v = 2.0; // constant offset
        if (i >= 20 && i < 25) v = 2.0 + static_cast<double>(i - 19);
        if (i >= 25 && i < 30) v = 2.0 + static_cast<double>(30 - i);
        os << (0.5 * i) << ',' << v << '\n';
    }
    std::istringstream is(os.str());
    const PulseTrace t = ingest_trace_csv(is);
    CHECK(t.samples[0] == doctest::Approx(0.0).scale(1.0));
    CHECK(t.samples[24] == doctest::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("ingest accepts 0.5% jitter and rejects 3% jitter") {
    const auto make_csv = [](double jitter) {
        std::ostringstream os;
        os << "t_s,amplitude\n";
        double t = 0.0;
        for (int i = 0; i < 32; ++i) {
            os << t << ',' << (i == 16 ? 10.0 : 1.0) << '\n';
            t += 0.5 + (i % 2 == 0 ? jitter : -jitter); // wobbling gaps
        }
        return os.str();
    };
    std::istringstream ok(make_csv(0.0025)); // 0.5% of the 0.5 s period
    CHECK_NOTHROW((void)ingest_trace_csv(ok));
    std::istringstream bad(make_csv(0.015)); // 3%
    CHECK_THROWS_AS((void)ingest_trace_csv(bad), ValidationError);
}

TEST_CASE("ingest validation errors") {
    std::istringstream short_file("t_s,amplitude\n0,1\n1,2\n2,1\n");
    CHECK_THROWS_AS((void)ingest_trace_csv(short_file), ValidationError);

    std::istringstream bad_header("time,value\n0,1\n");
    CHECK_THROWS_AS((void)ingest_trace_csv(bad_header), ValidationError);

    std::ostringstream os;
    os << "t_s,amplitude\n";
    for (int i = 0; i < 10; ++i) os << i << ",1\n";
    std::string base = os.str();

    std::istringstream non_numeric(base + "10,abc\n");
    CHECK_THROWS_AS((void)ingest_trace_csv(non_numeric), ValidationError);

    std::istringstream not_increasing(base + "9,1\n");
    CHECK_THROWS_AS((void)ingest_trace_csv(not_increasing), ValidationError);

    std::istringstream three_fields(base + "10,1,9\n");
    CHECK_THROWS_AS((void)ingest_trace_csv(three_fields), ValidationError);
}

TEST_CASE("trace and schedule validation") {
    PulseTrace t;
    t.sample_period = 0.0;
    t.samples.assign(16, 1.0);
    CHECK_THROWS_AS(t.validate(), ValidationError);
    t.sample_period = 0.5;
    t.samples.resize(7);
    CHECK_THROWS_AS(t.validate(), ValidationError);

    EmissionSchedule s;
    s.symbol_period = 2.0;
    CHECK_THROWS_AS(s.validate(), ValidationError); // empty bits
    s.bits = {1, 2};
    CHECK_THROWS_AS(s.validate(), ValidationError); // non-binary
    s.bits = {1, 0};
    s.symbol_period = 0.4; // below the 0.5 s spray duration
    CHECK_THROWS_AS(s.validate(), ValidationError);
    s.symbol_period = 2.0;
    CHECK_NOTHROW(s.validate());

    CHECK_THROWS_AS((void)synthesize_impulse_trace(kRef, 0.0, 20.0),
                    ValidationError);
    CHECK_THROWS_AS((void)synthesize_impulse_trace(kRef, 3.0, 16.0),
                    ValidationError); // only 5 samples
}
