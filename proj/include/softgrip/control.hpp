#pragma once

#include <stdexcept>

namespace softgrip {

enum class ControllerMode { Inflation, Deflation, Rest };

const char* to_string(ControllerMode mode);

// Pump regulation parameters. Defaults follow the gripper firmware tuning:
// duty cycles in percent, pressures in kPa gauge.
struct ControllerParams {
    double r_inflate = 85.0;       // inflation setpoint [kPa]
    double r_deflate = -25.0;      // deflation setpoint [kPa]
    double p_max = 100.0;          // max pump duty [%]
    double p_min_inflate = 86.0;   // min pump duty during inflation [%]
    double p_min_deflate = 63.0;   // min pump duty during deflation [%]
    double f_in = 0.8;             // feed-forward coefficient, inflation
    double hold_band = 2.0;        // |e| below which the supervisor freezes actuation [kPa]
    double release_factor = 1.9;   // actuation resumes at |e| > release_factor * hold_band

    void validate() const;         // throws std::invalid_argument
    double setpoint(ControllerMode mode) const;  // rejects Rest
    double p_min(ControllerMode mode) const;     // rejects Rest
    double release_band() const { return release_factor * hold_band; }
};

struct ControllerOutput {
    double e = 0.0;      // pressure error [kPa]
    double kp = 0.0;     // proportional gain [%/kPa]
    double u = 0.0;      // proportional term output, pre-clamp [%]
    double g = 0.0;      // full controller output, pre-clamp [%]
    double duty = 0.0;   // commanded pump duty, in [0, p_max] [%]
    bool holding = false;
};

double error(double setpoint, double measured);

// (p_max - p_min) / r, signed. Undefined for Rest (r = 0).
double proportional_gain(const ControllerParams& params, ControllerMode mode);

// Inflation: constant f_in. Deflation: 1 / r_deflate.
double feed_forward(const ControllerParams& params, ControllerMode mode);

// Feed-forward proportional controller: g = u + f * y, duty = clamp(g, 0, p_max).
// duty forced to 0 when |e| <= hold_band.
ControllerOutput ffp_output(const ControllerParams& params, ControllerMode mode, double y);

// Proportional-only baseline: g = u, same clamp and hold rules.
ControllerOutput p_only_output(const ControllerParams& params, ControllerMode mode, double y);

// Rest: pump idle, both controller terms zero.
ControllerOutput rest_output();

// Stateful hysteresis around the hold band: once engaged at |e| <= hold_band,
// actuation stays frozen until |e| exceeds release_band(), so leakage drift
// does not cause chatter at the band edge.
class HoldSupervisor {
public:
    void reset() { engaged_ = false; }
    bool engaged() const { return engaged_; }

    ControllerOutput apply(const ControllerParams& params, ControllerMode mode,
                           double y, bool use_feed_forward);

private:
    bool engaged_ = false;
};

}  // namespace softgrip
