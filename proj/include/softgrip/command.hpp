#pragma once

#include <optional>

#include "softgrip/control.hpp"

namespace softgrip {

// RC servo convention: deflate / rest / inflate bands over the accepted
// pulse envelope. Widths in microseconds.
inline constexpr int kPwmEnvelopeMin = 800;
inline constexpr int kPwmEnvelopeMax = 2200;
inline constexpr int kPwmDeflateBelow = 1300;   // width <  1300 -> Deflation
inline constexpr int kPwmInflateAbove = 1700;   // width >  1700 -> Inflation

// Valve pair + pump snapshot. Exactly one valve routes airflow while the
// pump runs; rest keeps everything off.
struct AirflowState {
    bool valve_inflate = false;
    bool valve_deflate = false;
    bool pump_on = false;
    ControllerMode command = ControllerMode::Rest;
};

// nullopt for pulses outside the envelope; callers treat that as a Rest failsafe.
std::optional<ControllerMode> decode_pwm(int width_us);

// Failsafe wrapper: invalid pulse maps to Rest.
ControllerMode decode_pwm_or_rest(int width_us);

// Airflow state machine step. Pure function of (command, duty); switching is
// instantaneous.
AirflowState transition(const AirflowState& current, ControllerMode command, double duty);

}  // namespace softgrip
