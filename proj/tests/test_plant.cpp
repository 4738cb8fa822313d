#include <doctest.h>

#include <cmath>
#include <random>

#include "softgrip/plant.hpp"

using namespace softgrip;

namespace {

// Analytic solution of dy/dt = k (p_src - y) with constant full duty and no
// leak; independent oracle for the Euler integrator.
double exponential_approach(double y0, double p_src, double k, double t) {
    return p_src + (y0 - p_src) * std::exp(-k * t);
}

PlantState simulate(double y0, ControllerMode mode, double duty, const PlantParams& params,
                    double seconds) {
    PlantState state{y0};
    AirflowState airflow = transition({}, mode, duty);
    const auto steps = static_cast<long>(std::llround(seconds / params.dt));
    for (long i = 0; i < steps; ++i)
        state = plant_step(state, airflow, duty, params);
    return state;
}

}  // namespace

TEST_CASE("ambient is the fixed point with valves closed") {
    PlantParams params;
    PlantState state{0.0};
    AirflowState closed;
    for (int i = 0; i < 1000; ++i) {
        state = plant_step(state, closed, 100.0, params);
        CHECK(state.y == 0.0);
    }
}

TEST_CASE("full-duty inflation matches the analytic oracle") {
    PlantParams params;
    params.k_pump = std::log(145.0 / 35.0) / 5.0;
    params.k_leak = 0.0;
    const double expected = exponential_approach(-25.0, 120.0, params.k_pump, 5.0);
    CHECK(expected == doctest::Approx(85.0).epsilon(1e-9));  // oracle self-check

    const auto state = simulate(-25.0, ControllerMode::Inflation, 100.0, params, 5.0);
    CHECK(state.y == doctest::Approx(expected).epsilon(0.005));
    CHECK(std::abs(state.y - 85.0) < 0.5);
}

TEST_CASE("leak decays pressure monotonically toward ambient") {
    PlantParams params;  // k_leak = 0.01
    PlantState state{85.0};
    AirflowState closed;
    double prev = state.y;
    for (int i = 0; i < 10000; ++i) {
        state = plant_step(state, closed, 0.0, params);
        CHECK(state.y < prev);
        CHECK(state.y > 0.0);
        prev = state.y;
    }

    state.y = -25.0;
    prev = state.y;
    for (int i = 0; i < 10000; ++i) {
        state = plant_step(state, closed, 0.0, params);
        CHECK(state.y > prev);
        CHECK(state.y < 0.0);
        prev = state.y;
    }
}

TEST_CASE("monotone approach to the pump limits without leak") {
    PlantParams params;
    params.k_leak = 0.0;
    for (double duty : {30.0, 70.0, 100.0}) {
        PlantState state{0.0};
        AirflowState inflating = transition({}, ControllerMode::Inflation, duty);
        double prev = state.y;
        for (int i = 0; i < 20000; ++i) {
            state = plant_step(state, inflating, duty, params);
            CHECK(state.y >= prev);
            CHECK(state.y <= params.p_pump_in);
            prev = state.y;
        }

        state.y = 0.0;
        AirflowState deflating = transition({}, ControllerMode::Deflation, duty);
        prev = state.y;
        for (int i = 0; i < 20000; ++i) {
            state = plant_step(state, deflating, duty, params);
            CHECK(state.y <= prev);
            CHECK(state.y >= params.p_pump_out);
            prev = state.y;
        }
    }
}

TEST_CASE("pressure never leaves the pump envelope under fuzzed commands") {
    PlantParams params;
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<int> cmd(0, 2);
    std::uniform_real_distribution<double> duty_dist(0.0, 100.0);
    PlantState state{0.0};
    AirflowState airflow;
    for (int i = 0; i < 100000; ++i) {
        const double duty = duty_dist(rng);
        airflow = transition(airflow, static_cast<ControllerMode>(cmd(rng)), duty);
        state = plant_step(state, airflow, duty, params);
        REQUIRE(state.y >= params.p_pump_out);
        REQUIRE(state.y <= params.p_pump_in);
    }
}

TEST_CASE("halving dt barely moves the 5 s rise endpoint") {
    PlantParams coarse;
    coarse.k_leak = 0.0;
    PlantParams fine = coarse;
    fine.dt = coarse.dt / 2.0;
    const double y_coarse = simulate(-25.0, ControllerMode::Inflation, 100.0, coarse, 5.0).y;
    const double y_fine = simulate(-25.0, ControllerMode::Inflation, 100.0, fine, 5.0).y;
    CHECK(std::abs(y_coarse - y_fine) < 0.5);
}

TEST_CASE("sensor passthrough and clamping") {
    std::mt19937_64 rng(1);
    SensorModel ideal;
    CHECK(read_sensor({85.0}, ideal, rng) == 85.0);

    SensorModel narrow;
    narrow.range_high = 50.0;
    CHECK(read_sensor({85.0}, narrow, rng) == 50.0);
    CHECK(read_sensor({-150.0}, ideal, rng) == -100.0);
}

TEST_CASE("noisy sensor is reproducible for a fixed seed") {
    SensorModel noisy;
    noisy.noise_sd = 1.0;
    auto rng_a = std::mt19937_64{2024};
    auto rng_b = std::mt19937_64{2024};
    for (int i = 0; i < 100; ++i) {
        const double a = read_sensor({85.0}, noisy, rng_a);
        const double b = read_sensor({85.0}, noisy, rng_b);
        CHECK(a == b);
        CHECK(a > 80.0);
        CHECK(a < 90.0);
    }
}

TEST_CASE("rate calibration from the timing anchor") {
    CHECK(calibrate_k_pump(5.0, -25.0, 85.0, 120.0) ==
          doctest::Approx(std::log(145.0 / 35.0) / 5.0).epsilon(1e-12));
    CHECK(calibrate_k_pump(5.0, -25.0, 85.0, 120.0) == doctest::Approx(0.2843).epsilon(1e-3));
    CHECK(calibrate_k_pump(5.0, -25.0, -25.0, 120.0) == 0.0);
    CHECK_THROWS_AS(calibrate_k_pump(5.0, -25.0, 130.0, 120.0), std::invalid_argument);
    CHECK_THROWS_AS(calibrate_k_pump(0.0, -25.0, 85.0, 120.0), std::invalid_argument);
    CHECK_THROWS_AS(calibrate_k_pump(5.0, 120.0, 85.0, 120.0), std::invalid_argument);
}

TEST_CASE("default k_pump matches the calibrated anchor") {
    PlantParams params;
    CHECK(params.k_pump == doctest::Approx(calibrate_k_pump(5.0, -25.0, 85.0, 120.0)).epsilon(2e-3));
}

TEST_CASE("plant parameter validation") {
    PlantParams params;
    CHECK_NOTHROW(params.validate());
    params.dt = 0.5;
    CHECK_THROWS_AS(params.validate(), std::invalid_argument);
    params = {};
    params.k_pump = -1.0;
    CHECK_THROWS_AS(params.validate(), std::invalid_argument);
    params = {};
    params.p_pump_out = 10.0;
    CHECK_THROWS_AS(params.validate(), std::invalid_argument);
}
