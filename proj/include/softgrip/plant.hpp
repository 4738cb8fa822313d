#pragma once

#include <random>
#include <stdexcept>

#include "softgrip/command.hpp"

namespace softgrip {

// First-order pneumatic plant: the chamber pressure approaches the pump
// limit exponentially while the matching valve is open, and leaks toward
// ambient at all times.
struct PlantParams {
    double p_pump_in = 120.0;    // pump pressure limit, inflation [kPa]
    double p_pump_out = -60.0;   // pump pressure limit, deflation [kPa]
    double k_pump = 0.284;       // pump rate coefficient [1/s]
    double k_leak = 0.01;        // leak coefficient toward ambient [1/s]
    double dt = 0.01;            // integration step [s]

    void validate() const;       // throws std::invalid_argument
};

struct PlantState {
    double y = 0.0;              // chamber gauge pressure [kPa]
};

struct SensorModel {
    double range_low = -100.0;   // [kPa]
    double range_high = 300.0;   // [kPa]
    double noise_sd = 0.0;       // gaussian noise, 0 = ideal sensor [kPa]
};

// One explicit-Euler step. Result clamped to [p_pump_out, p_pump_in].
PlantState plant_step(PlantState state, const AirflowState& airflow, double duty,
                      const PlantParams& params);

// Noisy, range-limited pressure reading. Deterministic for a fixed stream.
double read_sensor(const PlantState& state, const SensorModel& sensor, std::mt19937_64& rng);

// Rate coefficient that moves pressure from y0 to y1 in t_rise seconds when
// driven toward p_src: ln((p_src - y0)/(p_src - y1)) / t_rise.
double calibrate_k_pump(double t_rise, double y0, double y1, double p_src);

}  // namespace softgrip
