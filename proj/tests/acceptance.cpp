// Acceptance suite: one pass/fail line per criterion.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "softgrip/config.hpp"
#include "softgrip/mission.hpp"
#include "softgrip/rng.hpp"
#include "softgrip/trace.hpp"

namespace fs = std::filesystem;
using namespace softgrip;

namespace {

int failures = 0;

void report(int index, const char* title, bool ok, const std::string& detail) {
    std::printf("[%s] %d. %s%s%s\n", ok ? "PASS" : "FAIL", index, title,
                detail.empty() ? "" : " — ", detail.c_str());
    if (!ok)
        ++failures;
}

void criterion(int index, const char* title,
               const std::function<std::pair<bool, std::string>()>& body) {
    try {
        auto [ok, detail] = body();
        report(index, title, ok, detail);
    } catch (const std::exception& e) {
        report(index, title, false, std::string("exception: ") + e.what());
    }
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), f, a, b, c);
    return buf;
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

int main(int argc, char** argv) {
    const std::string cli_path = argc > 1 ? argv[1] : "";

    // 1. Pre-clamp endpoint identities for both modes with default parameters.
    criterion(1, "controller endpoint identities", [] {
        ControllerParams params;
        double worst = 0.0;
        for (auto mode : {ControllerMode::Inflation, ControllerMode::Deflation}) {
            const double r = params.setpoint(mode);
            const double pmin = params.p_min(mode);
            worst = std::max(worst, std::abs(ffp_output(params, mode, 0.0).u - params.p_max));
            worst = std::max(worst, std::abs(ffp_output(params, mode, r).u - pmin));
            worst = std::max(worst, std::abs(p_only_output(params, mode, 0.0).u - params.p_max));
            worst = std::max(worst, std::abs(p_only_output(params, mode, r).u - pmin));
        }
        return std::make_pair(worst <= 1e-9, fmt("max deviation %.3g", worst));
    });

    // 2. Step response anchors: 5 +/- 1 s inflation settle for FFP, FFP
    //    strictly faster than P-only, deflation settle within 20%.
    criterion(2, "step response timing anchors", [] {
        SimConfig config;
        auto ffp = step_response_experiment(ControllerKind::FFP, StepProfile::reference(), config);
        auto p = step_response_experiment(ControllerKind::POnly, StepProfile::reference(), config);
        const double ffp_in = ffp.segments.at(2).settle_time_s;
        const double p_in = p.segments.at(2).settle_time_s;
        const double ffp_de = ffp.segments.at(1).settle_time_s;
        const double p_de = p.segments.at(1).settle_time_s;
        const bool ok = std::abs(ffp_in - 5.0) <= 1.0 && ffp_in < p_in && ffp_de > 0.0 &&
                        p_de > 0.0 && std::abs(ffp_de - p_de) / std::max(ffp_de, p_de) < 0.2;
        return std::make_pair(
            ok, fmt("inflation ffp %.2f s vs p %.2f s; deflation %.2f", ffp_in, p_in, ffp_de) +
                    fmt(" vs %.2f s", p_de));
    });

    // 3. Hysteresis hold keeps pressure within +/-4 kPa for 60 s with leakage.
    criterion(3, "hold regulation under leakage", [] {
        SimConfig config;
        MissionScript script;
        script.duration_s = 80.0;
        script.steps = {{0.0, SetPwm{1900}}};
        auto [trace, result] = run_mission(script, config);
        double settle = -1.0;
        double worst = 0.0;
        for (const auto& rec : trace) {
            if (settle < 0.0) {
                if (std::abs(rec.pressure_kpa - 85.0) <= config.control.hold_band)
                    settle = rec.t_s;
                continue;
            }
            if (rec.t_s <= settle + 60.0)
                worst = std::max(worst, std::abs(rec.pressure_kpa - 85.0));
        }
        const bool ok = settle > 0.0 && settle + 60.0 <= script.duration_s && worst <= 4.0;
        return std::make_pair(ok, fmt("settled at %.2f s, max |e| %.3f kPa over 60 s", settle,
                                      worst));
    });

    // 4. Valve exclusivity over 1e5 random steps; rest is all-off.
    criterion(4, "valve exclusivity", [] {
        std::mt19937_64 rng(4);
        std::uniform_int_distribution<int> cmd(0, 2);
        std::uniform_real_distribution<double> duty(0.0, 100.0);
        AirflowState state;
        for (int i = 0; i < 100000; ++i) {
            state = transition(state, static_cast<ControllerMode>(cmd(rng)), duty(rng));
            if (state.valve_inflate && state.valve_deflate)
                return std::make_pair(false, std::string("both valves open"));
            if (state.command == ControllerMode::Rest &&
                (state.valve_inflate || state.valve_deflate || state.pump_on))
                return std::make_pair(false, std::string("rest is not all-off"));
        }
        return std::make_pair(true, std::string("100000 steps"));
    });

    // 5. Aperture knots and monotonicity for both bases.
    criterion(5, "aperture knots", [] {
        for (auto base : {BaseConfig::XBase, BaseConfig::HBase}) {
            const auto geom = GripperGeometry::defaults(base);
            const double open_mm = base == BaseConfig::XBase ? 180.0 : 145.0;
            if (aperture(-25.0, geom) != open_mm || aperture(58.0, geom) != open_mm ||
                aperture(85.0, geom) != 0.0)
                return std::make_pair(false, std::string("knot mismatch on ") + to_string(base));
            double prev = aperture(-60.0, geom);
            for (double p = -60.0; p <= 120.0; p += 0.1) {
                const double a = aperture(p, geom);
                if (a > prev + 1e-12)
                    return std::make_pair(false, fmt("not monotone at %.1f kPa", p));
                prev = a;
            }
        }
        return std::make_pair(true, std::string("x-base 180 mm, h-base 145 mm, monotone"));
    });

    // 6. Grasp mass thresholds and the hover payload boundary.
    criterion(6, "grasp thresholds", [] {
        const auto h = GripperGeometry::defaults(BaseConfig::HBase);
        const auto x = GripperGeometry::defaults(BaseConfig::XBase);
        auto cyl = [](double d, double height, double mass) {
            return ObjectSpec{"c", Shape::Cylinder, d, height, 0.0, mass, false};
        };
        bool ok = grasp_feasible(cyl(66, 150, 65), h, 0, true).result == GraspResult::BlowAway;
        ok = ok && grasp_feasible(cyl(60, 180, 75), h, 0, true).result == GraspResult::Success;
        ok = ok && grasp_feasible(cyl(70, 100, 200), h, 0, false).result == GraspResult::Success;
        ok = ok && grasp_feasible(cyl(70, 100, 201), h, 0, false).result == GraspResult::TooHeavy;
        ok = ok && grasp_feasible(cyl(80, 100, 330), x, 0, false).result == GraspResult::Success;
        ok = ok && grasp_feasible(cyl(80, 100, 331), x, 0, false).result == GraspResult::TooHeavy;
        ok = ok && payload_check(cyl(90, 120, 217)) && !payload_check(cyl(90, 120, 218));
        return std::make_pair(ok, std::string("65/75 g, 200/201 g, 330/331 g, 217/218 g"));
    });

    // 7. Landing statistics over 1000 seeded trials per cell.
    criterion(7, "landing statistics", [] {
        const auto x = GripperGeometry::defaults(BaseConfig::XBase);
        const auto h = GripperGeometry::defaults(BaseConfig::HBase);
        const auto gx = landing_batch(x, 0.0, 1000, 7).fraction;
        const auto gh = landing_batch(h, 0.0, 1000, 7).fraction;
        const auto th = landing_batch(h, 10.0, 1000, 7).fraction;
        const auto tx = landing_batch(x, 10.0, 1000, 7).fraction;
        const bool ok = gx == 1.0 && gh == 1.0 && th == 1.0 && tx >= 0.55 && tx <= 0.65;
        return std::make_pair(ok, fmt("ground 1.0/1.0, tilt h %.3f, tilt x %.3f", th, tx));
    });

    // 8. Plant bounds under fuzzing plus Euler convergence on the rise anchor.
    criterion(8, "plant bounds and convergence", [] {
        PlantParams params;
        std::mt19937_64 rng(8);
        std::uniform_int_distribution<int> cmd(0, 2);
        std::uniform_real_distribution<double> duty_dist(0.0, 100.0);
        PlantState state{0.0};
        AirflowState airflow;
        for (int i = 0; i < 100000; ++i) {
            const double duty = duty_dist(rng);
            airflow = transition(airflow, static_cast<ControllerMode>(cmd(rng)), duty);
            state = plant_step(state, airflow, duty, params);
            if (state.y < params.p_pump_out || state.y > params.p_pump_in)
                return std::make_pair(false, fmt("pressure escaped to %.2f kPa", state.y));
        }

        auto rise = [](PlantParams p) {
            PlantState s{-25.0};
            AirflowState inflow = transition({}, ControllerMode::Inflation, 100.0);
            const auto steps = static_cast<long>(std::llround(5.0 / p.dt));
            for (long i = 0; i < steps; ++i)
                s = plant_step(s, inflow, 100.0, p);
            return s.y;
        };
        PlantParams coarse;
        coarse.k_leak = 0.0;
        PlantParams fine = coarse;
        fine.dt /= 2.0;
        const double shift = std::abs(rise(coarse) - rise(fine));
        return std::make_pair(shift < 0.5, fmt("dt-halving shift %.4f kPa", shift));
    });

    // 9. Byte-identical CSV for identical flags + seed; round-trip stability.
    criterion(9, "determinism and csv io", [&cli_path] {
        SimConfig config;
        MissionScript script;
        script.duration_s = 20.0;
        script.seed = 99;
        script.steps = {{0.0, SetPwm{1100}}, {8.0, SetPwm{1900}}};
        auto [trace, result] = run_mission(script, config);

        std::ostringstream first;
        write_trace_csv(first, trace);
        std::istringstream back(first.str());
        const auto parsed = parse_trace_csv(back);
        std::ostringstream second;
        write_trace_csv(second, parsed);
        if (first.str() != second.str())
            return std::make_pair(false, std::string("csv round-trip not byte-stable"));

        if (cli_path.empty())
            return std::make_pair(true, std::string("round-trip ok (cli binary not provided)"));

        const fs::path dir_a = fs::temp_directory_path() / "gripsim_accept_a";
        const fs::path dir_b = fs::temp_directory_path() / "gripsim_accept_b";
        fs::remove_all(dir_a);
        fs::remove_all(dir_b);
        const std::string base_cmd = "'" + cli_path + "' step-response --seed 5 --out ";
        if (std::system((base_cmd + "'" + dir_a.string() + "' > /dev/null").c_str()) != 0 ||
            std::system((base_cmd + "'" + dir_b.string() + "' > /dev/null").c_str()) != 0)
            return std::make_pair(false, std::string("cli run failed"));
        for (const char* name : {"step_ffp.csv", "step_p.csv"}) {
            const auto a = read_file(dir_a / name);
            const auto b = read_file(dir_b / name);
            if (a.empty() || a != b)
                return std::make_pair(false, std::string(name) + " differs between runs");
        }
        return std::make_pair(true, std::string("round-trip ok, cli output byte-identical"));
    });

    if (failures == 0) {
        std::printf("all acceptance criteria passed\n");
        return 0;
    }
    std::printf("%d acceptance criteria failed\n", failures);
    return 1;
}
