// gripsim: command-line front end for the soft gripper simulator.
//
// Subcommands map to the experiment presets: step-response, mission
// (aerial-grasp / payload), batch (landing-ground / landing-tilt /
// grasp-matrix). All randomness flows from --seed; identical flags and
// seed produce byte-identical CSV output.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <tuple>
#include <vector>

#include <CLI11.hpp>

#include "softgrip/config.hpp"
#include "softgrip/mission.hpp"
#include "softgrip/rng.hpp"
#include "softgrip/trace.hpp"

namespace fs = std::filesystem;
using namespace softgrip;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntimeFailure = 1;
constexpr int kExitConfigError = 2;

struct CommonOpts {
    std::string config_path;
    std::string out_dir = ".";
    std::uint64_t seed = 1;
    std::string base;  // "", "x", "h"
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--config", opts.config_path, "Simulation config file")
        ->envname("GRIPSIM_CONFIG");
    cmd->add_option("--out", opts.out_dir, "Output directory for CSV files")
        ->envname("GRIPSIM_OUT");
    cmd->add_option("--seed", opts.seed, "Master seed for all randomness")
        ->envname("GRIPSIM_SEED");
    cmd->add_option("--base", opts.base, "Gripper base configuration: x or h")
        ->check(CLI::IsMember({"x", "h"}))
        ->envname("GRIPSIM_BASE");
}

SimConfig make_config(const CommonOpts& opts) {
    SimConfig config;
    if (!opts.config_path.empty())
        config = load_sim_config(opts.config_path);
    if (opts.base == "x")
        config.geometry = GripperGeometry::defaults(BaseConfig::XBase);
    else if (opts.base == "h")
        config.geometry = GripperGeometry::defaults(BaseConfig::HBase);
    config.validate();
    return config;
}

std::string out_path(const CommonOpts& opts, const std::string& name) {
    fs::create_directories(opts.out_dir);
    return (fs::path(opts.out_dir) / name).string();
}

void print_segments(const char* label, const StepResponse& response) {
    std::printf("%s\n", label);
    std::printf("  %-10s %10s %12s %12s %14s\n", "segment", "setpoint", "rise_s", "settle_s",
                "sse_kpa");
    for (const auto& seg : response.segments) {
        std::printf("  %-10s %10.1f %12.2f %12.2f %14.3f\n", to_string(seg.mode),
                    seg.setpoint_kpa, seg.rise_time_s, seg.settle_time_s,
                    seg.steady_state_error_kpa);
    }
}

StepProfile make_profile(const std::string& name) {
    if (name == "full")
        return StepProfile::reference();
    if (name == "deflate-only")
        return {{{0.0, 0.0}, {2.0, -25.0}}, 12.0};
    if (name == "inflate-only")
        return {{{0.0, 0.0}, {2.0, 85.0}}, 17.0};
    throw ConfigError("unknown profile '" + name + "'");
}

int cmd_step_response(const CommonOpts& opts, const std::string& controller,
                      const std::string& profile_name) {
    const SimConfig config = make_config(opts);
    const StepProfile profile = make_profile(profile_name);

    const bool run_ffp = controller.empty() || controller == "ffp";
    const bool run_p = controller.empty() || controller == "p";

    StepResponse ffp, ponly;
    if (run_ffp) {
        ffp = step_response_experiment(ControllerKind::FFP, profile, config);
        write_trace_csv(out_path(opts, "step_ffp.csv"), ffp.trace);
        print_segments("feed-forward proportional", ffp);
    }
    if (run_p) {
        ponly = step_response_experiment(ControllerKind::POnly, profile, config);
        write_trace_csv(out_path(opts, "step_p.csv"), ponly.trace);
        print_segments("proportional only", ponly);
    }
    if (run_ffp && run_p) {
        for (std::size_t i = 0; i < std::min(ffp.segments.size(), ponly.segments.size()); ++i) {
            if (ffp.segments[i].mode != ControllerMode::Inflation)
                continue;
            std::printf("inflation settle: ffp %.2f s vs p %.2f s\n",
                        ffp.segments[i].settle_time_s, ponly.segments[i].settle_time_s);
        }
    }
    return kExitOk;
}

MissionScript aerial_grasp_script(const ObjectSpec& object, double offset_mm,
                                  ControllerKind controller, std::uint64_t seed) {
    MissionScript script;
    script.controller = controller;
    script.seed = seed;
    script.duration_s = 48.0;
    script.steps = {
        {0.0, SetPwm{1100}},                       // open the gripper while approaching
        {0.5, Descend{}},
        {6.0, PlaceObject{object, offset_mm}},
        {7.0, SetPwm{1900}},                       // close on the target
        {15.0, Ascend{}},
        {16.0, AssertHold{30.0}},
    };
    return script;
}

MissionScript payload_script(ControllerKind controller, std::uint64_t seed) {
    MissionScript script;
    script.controller = controller;
    script.seed = seed;
    script.duration_s = 45.0;
    script.steps = {
        {0.0, SetPwm{1900}},      // object is grasped before takeoff
        {10.0, AssertHold{30.0}},
    };
    return script;
}

int cmd_mission(const CommonOpts& opts, const std::string& preset, double mass_g,
                double offset_mm, const std::string& controller) {
    const SimConfig config = make_config(opts);
    const ControllerKind kind = controller == "p" ? ControllerKind::POnly : ControllerKind::FFP;

    MissionScript script;
    ObjectSpec object;
    if (preset == "aerial-grasp") {
        object = {"water_bottle", Shape::Cylinder, 60.0, 180.0, 0.0, 75.0, false};
        if (mass_g > 0.0)
            object.mass_g = mass_g;
        script = aerial_grasp_script(object, offset_mm, kind, opts.seed);
    } else if (preset == "payload") {
        object = {"plastic_container", Shape::Cylinder, 90.0, 120.0, 0.0, 217.0, false};
        if (mass_g > 0.0)
            object.mass_g = mass_g;
        if (!payload_check(object, config.limits.hover_payload_limit_g)) {
            std::printf("mission %s: Failure(payload-exceeded) — %s at %.0f g exceeds %.0f g\n",
                        preset.c_str(), object.name.c_str(), object.mass_g,
                        config.limits.hover_payload_limit_g);
            return kExitRuntimeFailure;
        }
        script = payload_script(kind, opts.seed);
    } else {
        throw ConfigError("unknown mission preset '" + preset + "'");
    }

    auto [trace, result] = run_mission(script, config);
    write_trace_csv(out_path(opts, "mission_" + preset + ".csv"), trace);

    if (result.success) {
        std::printf("mission %s: Success (settle %.2f s, sse %.3f kPa, hold %s)\n", preset.c_str(),
                    result.metrics.settle_time_s, result.metrics.steady_state_error_kpa,
                    result.metrics.hold_satisfied ? "ok" : "n/a");
        return kExitOk;
    }
    std::printf("mission %s: Failure(%s)\n", preset.c_str(), result.failure_reason.c_str());
    return kExitRuntimeFailure;
}

void write_batch_csv(const std::string& path,
                     const std::vector<std::tuple<std::string, std::string, BatchSummary>>& rows) {
    std::ofstream out(path, std::ios::binary);
    out << "name,base,trials,successes,fraction\n";
    char buf[64];
    for (const auto& [name, base, summary] : rows) {
        std::snprintf(buf, sizeof(buf), "%.6f", summary.fraction);
        out << name << ',' << base << ',' << summary.trials << ',' << summary.successes << ','
            << buf << '\n';
    }
}

int cmd_batch(const CommonOpts& opts, const std::string& preset, int trials, double incline,
              const std::string& objects_path, double offset_halfwidth) {
    if (trials < 1)
        throw ConfigError("batch: --trials must be at least 1");
    const SimConfig config = make_config(opts);

    std::vector<BaseConfig> bases;
    if (opts.base == "x")
        bases = {BaseConfig::XBase};
    else if (opts.base == "h")
        bases = {BaseConfig::HBase};
    else
        bases = {BaseConfig::XBase, BaseConfig::HBase};

    std::vector<std::tuple<std::string, std::string, BatchSummary>> rows;

    if (preset == "landing-ground" || preset == "landing-tilt") {
        const double angle = preset == "landing-ground" ? 0.0 : incline;
        std::printf("%-10s %8s %8s %10s %10s\n", "base", "incline", "trials", "successes",
                    "fraction");
        for (BaseConfig base : bases) {
            const auto geom = GripperGeometry::defaults(base);
            const auto summary = landing_batch(geom, angle, trials, opts.seed);
            std::printf("%-10s %8.1f %8d %10d %10.3f\n", to_string(base), angle, summary.trials,
                        summary.successes, summary.fraction);
            rows.emplace_back("landing", to_string(base), summary);
        }
        write_batch_csv(out_path(opts, "batch_" + preset + ".csv"), rows);
        return kExitOk;
    }

    if (preset == "grasp-matrix") {
        const std::vector<ObjectSpec> objects =
            objects_path.empty() ? default_object_set() : load_object_set(objects_path);
        if (objects.empty())
            throw ConfigError("grasp-matrix: object set is empty");
        std::printf("%-20s %-10s %8s %10s %10s  %s\n", "object", "base", "trials", "successes",
                    "fraction", "dominant failure");
        std::uint64_t batch_index = 0;
        for (const ObjectSpec& object : objects) {
            for (BaseConfig base : bases) {
                auto geom = GripperGeometry::defaults(base);
                geom.pair_gap_mm = config.geometry.pair_gap_mm;
                const auto summary =
                    grasp_batch(object, geom, offset_halfwidth, false, trials,
                                derive_seed(opts.seed, batch_index++), config.limits);
                std::string dominant;
                int best = 0;
                for (const auto& [reason, count] : summary.failure_counts)
                    if (count > best) {
                        best = count;
                        dominant = reason;
                    }
                std::printf("%-20s %-10s %8d %10d %10.3f  %s\n", object.name.c_str(),
                            to_string(base), summary.trials, summary.successes, summary.fraction,
                            dominant.c_str());
                rows.emplace_back(object.name, to_string(base), summary);
            }
        }
        write_batch_csv(out_path(opts, "batch_grasp_matrix.csv"), rows);
        return kExitOk;
    }

    throw ConfigError("unknown batch preset '" + preset + "'");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pneumatic soft gripper simulator"};
    app.require_subcommand(1);

    CommonOpts step_opts, mission_opts, batch_opts;
    std::string step_controller, step_profile = "full";
    std::string mission_preset = "aerial-grasp", mission_controller = "ffp";
    double mission_mass = 0.0, mission_offset = 0.0;
    std::string batch_preset = "landing-tilt", batch_objects;
    int batch_trials = 1000;
    double batch_incline = 10.0, batch_offset_halfwidth = 15.0;

    auto* step = app.add_subcommand("step-response",
                                    "Step response of both controllers over the setpoint profile");
    add_common(step, step_opts);
    step->add_option("--controller", step_controller, "Run a single controller: ffp or p")
        ->check(CLI::IsMember({"ffp", "p"}));
    step->add_option("--profile", step_profile, "Setpoint profile")
        ->check(CLI::IsMember({"full", "deflate-only", "inflate-only"}));

    auto* mission = app.add_subcommand("mission", "Run one scripted mission preset");
    add_common(mission, mission_opts);
    mission->add_option("--preset", mission_preset, "Mission preset")
        ->check(CLI::IsMember({"aerial-grasp", "payload"}));
    mission->add_option("--controller", mission_controller, "Controller: ffp or p")
        ->check(CLI::IsMember({"ffp", "p"}));
    mission->add_option("--mass", mission_mass, "Override target object mass [g]");
    mission->add_option("--offset", mission_offset, "Lateral placement offset [mm]");

    auto* batch = app.add_subcommand("batch", "Monte Carlo batch over a preset");
    add_common(batch, batch_opts);
    batch->add_option("--preset", batch_preset, "Batch preset")
        ->check(CLI::IsMember({"landing-ground", "landing-tilt", "grasp-matrix"}));
    batch->add_option("--trials", batch_trials, "Trials per entry")->envname("GRIPSIM_TRIALS");
    batch->add_option("--incline", batch_incline, "Platform incline for landing-tilt [deg]");
    batch->add_option("--objects", batch_objects, "Object fixture file for grasp-matrix");
    batch->add_option("--offset-halfwidth", batch_offset_halfwidth,
                      "Placement error half-width for grasp trials [mm]");

    try {
        app.parse(argc, argv);
        if (step->parsed())
            return cmd_step_response(step_opts, step_controller, step_profile);
        if (mission->parsed())
            return cmd_mission(mission_opts, mission_preset, mission_mass, mission_offset,
                               mission_controller);
        if (batch->parsed())
            return cmd_batch(batch_opts, batch_preset, batch_trials, batch_incline, batch_objects,
                             batch_offset_halfwidth);
        return kExitConfigError;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfigError;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntimeFailure;
    }
}
