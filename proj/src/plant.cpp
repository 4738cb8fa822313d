#include "softgrip/plant.hpp"

#include <algorithm>
#include <cmath>

namespace softgrip {

void PlantParams::validate() const {
    if (!(p_pump_out < 0.0 && 0.0 < p_pump_in))
        throw std::invalid_argument("plant: require p_pump_out < 0 < p_pump_in");
    if (!(k_pump > 0.0))
        throw std::invalid_argument("plant: k_pump must be positive");
    if (!(k_leak >= 0.0))
        throw std::invalid_argument("plant: k_leak must be non-negative");
    if (!(dt > 0.0 && dt <= 0.1))
        throw std::invalid_argument("plant: require 0 < dt <= 0.1");
}

PlantState plant_step(PlantState state, const AirflowState& airflow, double duty,
                      const PlantParams& params) {
    const double drive = params.k_pump * (duty / 100.0);
    double dydt = -params.k_leak * state.y;
    if (airflow.valve_inflate)
        dydt += drive * (params.p_pump_in - state.y);
    else if (airflow.valve_deflate)
        dydt += drive * (params.p_pump_out - state.y);
    state.y += dydt * params.dt;
    state.y = std::clamp(state.y, params.p_pump_out, params.p_pump_in);
    return state;
}

double read_sensor(const PlantState& state, const SensorModel& sensor, std::mt19937_64& rng) {
    double reading = state.y;
    if (sensor.noise_sd > 0.0) {
        std::normal_distribution<double> noise(0.0, sensor.noise_sd);
        reading += noise(rng);
    }
    return std::clamp(reading, sensor.range_low, sensor.range_high);
}

double calibrate_k_pump(double t_rise, double y0, double y1, double p_src) {
    if (!(t_rise > 0.0))
        throw std::invalid_argument("calibrate_k_pump: t_rise must be positive");
    if (y0 == p_src)
        throw std::invalid_argument("calibrate_k_pump: y0 coincides with source pressure");
    const double a = p_src - y0;
    const double b = p_src - y1;
    // y1 must lie on the path from y0 to p_src (y1 == y0 allowed: zero rise).
    if (b == 0.0 || (a > 0.0) != (b > 0.0) || std::abs(b) > std::abs(a))
        throw std::invalid_argument("calibrate_k_pump: y1 not between y0 and p_src");
    return std::log(a / b) / t_rise;
}

}  // namespace softgrip
