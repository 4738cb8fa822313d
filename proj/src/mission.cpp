#include "softgrip/mission.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "softgrip/rng.hpp"

namespace softgrip {

void SimConfig::validate() const {
    control.validate();
    plant.validate();
    geometry.validate();
    if (!(sensor.range_low < sensor.range_high))
        throw std::invalid_argument("sensor: require range_low < range_high");
    if (!(sensor.noise_sd >= 0.0))
        throw std::invalid_argument("sensor: noise_sd must be non-negative");
}

void MissionScript::validate() const {
    if (!(duration_s > 0.0))
        throw std::invalid_argument("script: duration must be positive");
    double prev = -1.0;
    for (const auto& step : steps) {
        if (step.at_s < 0.0)
            throw std::invalid_argument("script: step times must be non-negative");
        if (step.at_s <= prev)
            throw std::invalid_argument("script: step times must be strictly increasing");
        prev = step.at_s;
    }
    if (!steps.empty() && duration_s < steps.back().at_s)
        throw std::invalid_argument("script: duration must cover the last step");
}

namespace {

int pwm_for_mode(ControllerMode mode) {
    switch (mode) {
        case ControllerMode::Inflation: return 1900;
        case ControllerMode::Deflation: return 1100;
        case ControllerMode::Rest: return 1500;
    }
    return 1500;
}

// Metrics over trace indices [first, last) holding one setpoint segment.
StepSegmentMetrics segment_metrics(const std::vector<TraceRecord>& trace, std::size_t first,
                                   std::size_t last, double setpoint, ControllerMode mode,
                                   const ControllerParams& control, double dt) {
    StepSegmentMetrics m;
    m.setpoint_kpa = setpoint;
    m.mode = mode;
    if (first >= last)
        return m;
    m.t_start_s = trace[first].t_s;
    m.t_end_s = trace[last - 1].t_s;

    const double y0 = trace[first].pressure_kpa;
    const double delta = setpoint - y0;
    if (std::abs(delta) > 1e-12) {
        double t10 = -1.0, t90 = -1.0;
        for (std::size_t i = first; i < last; ++i) {
            const double progress = (trace[i].pressure_kpa - y0) / delta;
            if (t10 < 0.0 && progress >= 0.1)
                t10 = trace[i].t_s;
            if (t90 < 0.0 && progress >= 0.9) {
                t90 = trace[i].t_s;
                break;
            }
        }
        if (t10 >= 0.0 && t90 >= 0.0)
            m.rise_time_s = t90 - t10;
    }

    // Settle: hold-band entry whose error stays inside the release band for
    // the following second (window clipped at segment end).
    const auto window = static_cast<std::size_t>(std::lround(1.0 / dt));
    for (std::size_t i = first; i < last; ++i) {
        if (std::abs(setpoint - trace[i].pressure_kpa) > control.hold_band)
            continue;
        bool confirmed = true;
        for (std::size_t j = i; j < std::min(last, i + window + 1); ++j) {
            if (std::abs(setpoint - trace[j].pressure_kpa) > control.release_band()) {
                confirmed = false;
                break;
            }
        }
        if (confirmed) {
            m.settle_time_s = trace[i].t_s - m.t_start_s;
            break;
        }
    }

    const std::size_t tail = first + (last - first) * 4 / 5;
    double sum = 0.0;
    for (std::size_t i = tail; i < last; ++i)
        sum += setpoint - trace[i].pressure_kpa;
    if (last > tail)
        m.steady_state_error_kpa = sum / static_cast<double>(last - tail);
    return m;
}

struct HoldWindow {
    double start_s = 0.0;
    double end_s = 0.0;
    bool pressure_ok = true;
};

}  // namespace

std::pair<std::vector<TraceRecord>, MissionResult> run_mission(const MissionScript& script,
                                                               const SimConfig& config) {
    script.validate();
    config.validate();

    const double dt = config.plant.dt;
    const auto ticks = static_cast<std::size_t>(std::llround(script.duration_s / dt));
    const bool use_ff = script.controller == ControllerKind::FFP;

    auto rng = make_rng(script.seed);
    PlantState plant;
    AirflowState airflow;
    HoldSupervisor supervisor;
    ControllerMode prev_mode = ControllerMode::Rest;

    int pwm = 1500;
    bool aerial = false;
    std::optional<ObjectSpec> object;
    double object_offset = 0.0;
    std::optional<GraspOutcome> grasp;
    bool grasp_held = false;  // Success outcome that also survived the probability draw
    std::vector<HoldWindow> holds;

    MissionResult result;
    auto fail = [&result](const std::string& reason) {
        if (result.success) {
            result.success = false;
            result.failure_reason = reason;
        }
    };

    std::vector<TraceRecord> trace;
    trace.reserve(ticks);
    std::size_t next_step = 0;

    // Trace span of the last non-rest command segment, for the metrics block.
    std::size_t seg_first = 0;
    ControllerMode seg_mode = ControllerMode::Rest;
    double seg_setpoint = 0.0;
    StepSegmentMetrics last_segment;
    auto close_segment = [&](std::size_t end_index) {
        if (seg_mode != ControllerMode::Rest && end_index > seg_first)
            last_segment = segment_metrics(trace, seg_first, end_index, seg_setpoint, seg_mode,
                                           config.control, dt);
    };

    for (std::size_t i = 0; i < ticks; ++i) {
        const double t = static_cast<double>(i) * dt;
        std::string event;
        auto note = [&event](const std::string& s) {
            if (!event.empty())
                event += ';';
            event += s;
        };

        while (next_step < script.steps.size() && script.steps[next_step].at_s <= t + 1e-9) {
            const MissionAction& action = script.steps[next_step].action;
            if (const auto* set = std::get_if<SetPwm>(&action)) {
                pwm = set->width_us;
                note("set_pwm=" + std::to_string(pwm));
            } else if (const auto* place = std::get_if<PlaceObject>(&action)) {
                place->object.validate();
                object = place->object;
                object_offset = place->offset_mm;
                grasp.reset();
                grasp_held = false;
                note("place_object=" + place->object.name);
            } else if (std::get_if<Descend>(&action)) {
                aerial = true;
                note("descend");
            } else if (std::get_if<Ascend>(&action)) {
                note("ascend");
            } else if (const auto* hold = std::get_if<AssertHold>(&action)) {
                holds.push_back({t, t + hold->duration_s, true});
                note("assert_hold=" + std::to_string(hold->duration_s));
            } else if (const auto* land = std::get_if<Land>(&action)) {
                if (plant.y > config.geometry.close_onset_kpa) {
                    fail("landing-not-deflated");
                    note("land:not-deflated");
                } else if (landing_outcome(config.geometry, land->incline_deg, rng)) {
                    note("land:ok");
                } else {
                    fail("landing-failed");
                    note("land:failed");
                }
            }
            ++next_step;
        }

        const ControllerMode mode = decode_pwm_or_rest(pwm);
        if (mode != prev_mode) {
            supervisor.reset();
            close_segment(i);
            seg_first = i;
            seg_mode = mode;
            seg_setpoint = mode == ControllerMode::Rest ? 0.0 : config.control.setpoint(mode);
            prev_mode = mode;
        }

        const double y_meas = read_sensor(plant, config.sensor, rng);
        const ControllerOutput out = supervisor.apply(config.control, mode, y_meas, use_ff);
        airflow = transition(airflow, mode, out.duty);

        const double y_before = plant.y;
        plant = plant_step(plant, airflow, out.duty, config.plant);

        // Fingers reach the object when pressure crosses the closing knee.
        if (object && !grasp && y_before < config.geometry.close_onset_kpa &&
            plant.y >= config.geometry.close_onset_kpa) {
            grasp = grasp_feasible(*object, config.geometry, object_offset, aerial, config.limits);
            if (grasp->result != GraspResult::Success) {
                fail(to_string(grasp->result));
                note(std::string("grasp:") + to_string(grasp->result));
            } else {
                std::uniform_real_distribution<double> unit(0.0, 1.0);
                grasp_held = unit(rng) < grasp->success_probability;
                if (grasp_held) {
                    note("grasp:success");
                } else {
                    fail("slipped");
                    note("grasp:slipped");
                }
            }
        }

        for (auto& hold : holds) {
            if (t >= hold.start_s - 1e-9 && t <= hold.end_s + 1e-9 &&
                plant.y < config.geometry.close_onset_kpa)
                hold.pressure_ok = false;
        }

        TraceRecord rec;
        rec.t_s = t;
        rec.pwm_us = pwm;
        rec.command = mode;
        rec.valve_inflate = airflow.valve_inflate;
        rec.valve_deflate = airflow.valve_deflate;
        rec.pump_on = airflow.pump_on;
        rec.duty_pct = out.duty;
        rec.pressure_kpa = plant.y;
        rec.aperture_mm = aperture(plant.y, config.geometry);
        rec.event = std::move(event);
        trace.push_back(std::move(rec));
    }
    close_segment(ticks);

    bool hold_ok = true;
    for (const auto& hold : holds) {
        if (hold.end_s > script.duration_s + 1e-9)
            hold_ok = false;  // window ran past the mission
        if (!hold.pressure_ok)
            hold_ok = false;
        if (object && !grasp_held)
            hold_ok = false;  // a placed object must have been grasped successfully
    }
    if (!holds.empty() && !hold_ok)
        fail("hold-violated");

    result.metrics.rise_time_s = last_segment.rise_time_s;
    result.metrics.settle_time_s = last_segment.settle_time_s;
    result.metrics.steady_state_error_kpa = last_segment.steady_state_error_kpa;
    result.metrics.hold_satisfied = holds.empty() ? true : hold_ok;
    return {std::move(trace), std::move(result)};
}

StepProfile StepProfile::reference() {
    return {{{0.0, 0.0}, {2.0, -25.0}, {12.0, 85.0}}, 27.0};
}

StepResponse step_response_experiment(ControllerKind controller, const StepProfile& profile,
                                      const SimConfig& config) {
    if (profile.setpoints.empty())
        throw std::invalid_argument("step profile: setpoint sequence is empty");
    for (std::size_t i = 1; i < profile.setpoints.size(); ++i)
        if (profile.setpoints[i].first <= profile.setpoints[i - 1].first)
            throw std::invalid_argument("step profile: setpoint times must be strictly increasing");
    config.validate();

    const double dt = config.plant.dt;
    const auto ticks = static_cast<std::size_t>(std::llround(profile.duration_s / dt));
    const bool use_ff = controller == ControllerKind::FFP;

    auto rng = make_rng(0);
    PlantState plant;
    AirflowState airflow;
    HoldSupervisor supervisor;

    StepResponse response;
    response.trace.reserve(ticks);

    std::size_t next_seg = 0;
    std::size_t seg_first = 0;
    double setpoint = 0.0;
    ControllerMode mode = ControllerMode::Rest;
    ControllerParams params = config.control;

    auto close_segment = [&](std::size_t end_index) {
        if (end_index > seg_first)
            response.segments.push_back(segment_metrics(response.trace, seg_first, end_index,
                                                        setpoint, mode, params, dt));
    };

    for (std::size_t i = 0; i < ticks; ++i) {
        const double t = static_cast<double>(i) * dt;
        std::string event;
        if (next_seg < profile.setpoints.size() &&
            profile.setpoints[next_seg].first <= t + 1e-9) {
            if (i > 0)
                close_segment(i);
            seg_first = i;
            setpoint = profile.setpoints[next_seg].second;
            if (setpoint > 0.0) {
                mode = ControllerMode::Inflation;
                params.r_inflate = setpoint;
            } else if (setpoint < 0.0) {
                mode = ControllerMode::Deflation;
                params.r_deflate = setpoint;
            } else {
                mode = ControllerMode::Rest;
            }
            supervisor.reset();
            char buf[48];
            std::snprintf(buf, sizeof(buf), "setpoint=%g", setpoint);
            event = buf;
            ++next_seg;
        }

        const double y_meas = read_sensor(plant, config.sensor, rng);
        const ControllerOutput out = supervisor.apply(params, mode, y_meas, use_ff);
        airflow = transition(airflow, mode, out.duty);
        plant = plant_step(plant, airflow, out.duty, config.plant);

        TraceRecord rec;
        rec.t_s = t;
        rec.pwm_us = pwm_for_mode(mode);
        rec.command = mode;
        rec.valve_inflate = airflow.valve_inflate;
        rec.valve_deflate = airflow.valve_deflate;
        rec.pump_on = airflow.pump_on;
        rec.duty_pct = out.duty;
        rec.pressure_kpa = plant.y;
        rec.aperture_mm = aperture(plant.y, config.geometry);
        rec.event = std::move(event);
        response.trace.push_back(std::move(rec));
    }
    close_segment(ticks);
    return response;
}

BatchSummary monte_carlo(int trials, std::uint64_t seed,
                         const std::function<TrialOutcome(std::uint64_t, std::mt19937_64&)>& trial) {
    if (trials < 1)
        throw std::invalid_argument("monte_carlo: trial count must be at least 1");
    BatchSummary summary;
    summary.trials = trials;
    for (int i = 0; i < trials; ++i) {
        const std::uint64_t trial_seed = derive_seed(seed, static_cast<std::uint64_t>(i));
        auto rng = make_rng(trial_seed);
        const TrialOutcome outcome = trial(trial_seed, rng);
        if (outcome.success)
            ++summary.successes;
        else
            ++summary.failure_counts[outcome.reason.empty() ? "failure" : outcome.reason];
    }
    summary.fraction = static_cast<double>(summary.successes) / static_cast<double>(trials);
    return summary;
}

BatchSummary landing_batch(const GripperGeometry& geom, double incline_deg, int trials,
                           std::uint64_t seed) {
    return monte_carlo(trials, seed, [&](std::uint64_t, std::mt19937_64& rng) -> TrialOutcome {
        if (landing_outcome(geom, incline_deg, rng))
            return {true, {}};
        return {false, "landing-failed"};
    });
}

BatchSummary grasp_batch(const ObjectSpec& object, const GripperGeometry& geom,
                         double offset_halfwidth_mm, bool aerial, int trials, std::uint64_t seed,
                         const FeasibilityLimits& limits) {
    object.validate();
    return monte_carlo(trials, seed, [&](std::uint64_t, std::mt19937_64& rng) -> TrialOutcome {
        std::uniform_real_distribution<double> offset(-offset_halfwidth_mm, offset_halfwidth_mm);
        const GraspOutcome outcome =
            grasp_feasible(object, geom, offset(rng), aerial, limits);
        if (outcome.result != GraspResult::Success)
            return {false, to_string(outcome.result)};
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        if (unit(rng) < outcome.success_probability)
            return {true, {}};
        return {false, "slipped"};
    });
}

}  // namespace softgrip
