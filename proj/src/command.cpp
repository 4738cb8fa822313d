#include "softgrip/command.hpp"

namespace softgrip {

std::optional<ControllerMode> decode_pwm(int width_us) {
    if (width_us < kPwmEnvelopeMin || width_us > kPwmEnvelopeMax)
        return std::nullopt;
    if (width_us < kPwmDeflateBelow)
        return ControllerMode::Deflation;
    if (width_us > kPwmInflateAbove)
        return ControllerMode::Inflation;
    return ControllerMode::Rest;
}

ControllerMode decode_pwm_or_rest(int width_us) {
    return decode_pwm(width_us).value_or(ControllerMode::Rest);
}

AirflowState transition(const AirflowState& /*current*/, ControllerMode command, double duty) {
    AirflowState next;
    next.command = command;
    switch (command) {
        case ControllerMode::Inflation:
            next.valve_inflate = true;
            next.pump_on = duty > 0.0;
            break;
        case ControllerMode::Deflation:
            next.valve_deflate = true;
            next.pump_on = duty > 0.0;
            break;
        case ControllerMode::Rest:
            break;
    }
    return next;
}

}  // namespace softgrip
