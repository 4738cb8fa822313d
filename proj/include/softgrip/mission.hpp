#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "softgrip/command.hpp"
#include "softgrip/control.hpp"
#include "softgrip/grasp.hpp"
#include "softgrip/plant.hpp"
#include "softgrip/trace.hpp"

namespace softgrip {

// Parameter set for one simulation run.
struct SimConfig {
    ControllerParams control;
    PlantParams plant;
    SensorModel sensor;
    GripperGeometry geometry = GripperGeometry::defaults(BaseConfig::HBase);
    FeasibilityLimits limits;

    void validate() const;
};

enum class ControllerKind { FFP, POnly };

// Script actions. The flight vehicle is abstracted to events; vehicle
// tracking error enters only as the lateral offset of PlaceObject.
struct SetPwm { int width_us = 1500; };
struct PlaceObject { ObjectSpec object; double offset_mm = 0.0; };
struct Descend {};
struct Ascend {};
struct AssertHold { double duration_s = 30.0; };
struct Land { double incline_deg = 0.0; };
using MissionAction = std::variant<SetPwm, PlaceObject, Descend, Ascend, AssertHold, Land>;

struct MissionStep {
    double at_s = 0.0;
    MissionAction action;
};

struct MissionScript {
    std::vector<MissionStep> steps;  // times strictly increasing
    double duration_s = 0.0;         // >= last step time
    ControllerKind controller = ControllerKind::FFP;
    std::uint64_t seed = 0;

    void validate() const;           // throws std::invalid_argument
};

struct MissionMetrics {
    double rise_time_s = 0.0;
    double settle_time_s = 0.0;
    double steady_state_error_kpa = 0.0;
    bool hold_satisfied = true;
};

struct MissionResult {
    bool success = true;
    std::string failure_reason;
    MissionMetrics metrics;
};

// Fixed-timestep loop: decode PWM -> controller -> airflow transition ->
// plant step -> aperture -> grasp/hold evaluation. Deterministic for a
// fixed script + seed + config.
std::pair<std::vector<TraceRecord>, MissionResult> run_mission(const MissionScript& script,
                                                               const SimConfig& config);

// Per-segment metrics of a setpoint profile. Settle = first hold-band entry
// whose error stays inside the release band for the next second.
struct StepSegmentMetrics {
    double t_start_s = 0.0;
    double t_end_s = 0.0;
    double setpoint_kpa = 0.0;
    ControllerMode mode = ControllerMode::Rest;
    double rise_time_s = -1.0;    // 10-90% of the step; -1 if never reached
    double settle_time_s = -1.0;  // -1 if never settled
    double steady_state_error_kpa = 0.0;  // mean error over final 20% of the segment
};

struct StepProfile {
    std::vector<std::pair<double, double>> setpoints;  // (start time s, setpoint kPa); 0 = rest
    double duration_s = 0.0;

    // The reference profile: rest, then -25 kPa, then +85 kPa.
    static StepProfile reference();
};

struct StepResponse {
    std::vector<TraceRecord> trace;
    std::vector<StepSegmentMetrics> segments;
};

StepResponse step_response_experiment(ControllerKind controller, const StepProfile& profile,
                                      const SimConfig& config);

// Monte Carlo batch runner. Per-trial seeds derive from (seed, trial index);
// aggregation is a pure reduction, independent of execution order.
struct TrialOutcome {
    bool success = false;
    std::string reason;  // empty on success
};

struct BatchSummary {
    int trials = 0;
    int successes = 0;
    double fraction = 0.0;
    std::map<std::string, int> failure_counts;
};

BatchSummary monte_carlo(int trials, std::uint64_t seed,
                         const std::function<TrialOutcome(std::uint64_t trial_seed,
                                                          std::mt19937_64& rng)>& trial);

BatchSummary landing_batch(const GripperGeometry& geom, double incline_deg, int trials,
                           std::uint64_t seed);

// Static/aerial grasp trials with lateral placement error sampled uniformly
// from [-offset_halfwidth, +offset_halfwidth].
BatchSummary grasp_batch(const ObjectSpec& object, const GripperGeometry& geom,
                         double offset_halfwidth_mm, bool aerial, int trials, std::uint64_t seed,
                         const FeasibilityLimits& limits = {});

}  // namespace softgrip
