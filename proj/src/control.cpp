#include "softgrip/control.hpp"

#include <algorithm>
#include <cmath>

namespace softgrip {

const char* to_string(ControllerMode mode) {
    switch (mode) {
        case ControllerMode::Inflation: return "inflation";
        case ControllerMode::Deflation: return "deflation";
        case ControllerMode::Rest: return "rest";
    }
    return "?";
}

void ControllerParams::validate() const {
    if (!(p_min_inflate > 0.0 && p_min_inflate < p_max))
        throw std::invalid_argument("controller: require 0 < p_min_inflate < p_max");
    if (!(p_min_deflate > 0.0 && p_min_deflate < p_max))
        throw std::invalid_argument("controller: require 0 < p_min_deflate < p_max");
    if (!(r_inflate > 0.0))
        throw std::invalid_argument("controller: r_inflate must be positive");
    if (!(r_deflate < 0.0))
        throw std::invalid_argument("controller: r_deflate must be negative");
    if (!(hold_band > 0.0))
        throw std::invalid_argument("controller: hold_band must be positive");
    if (!(release_factor > 1.0))
        throw std::invalid_argument("controller: release_factor must exceed 1");
}

double ControllerParams::setpoint(ControllerMode mode) const {
    switch (mode) {
        case ControllerMode::Inflation: return r_inflate;
        case ControllerMode::Deflation: return r_deflate;
        default: throw std::invalid_argument("controller: no setpoint in rest mode");
    }
}

double ControllerParams::p_min(ControllerMode mode) const {
    switch (mode) {
        case ControllerMode::Inflation: return p_min_inflate;
        case ControllerMode::Deflation: return p_min_deflate;
        default: throw std::invalid_argument("controller: no p_min in rest mode");
    }
}

double error(double setpoint, double measured) {
    return setpoint - measured;
}

double proportional_gain(const ControllerParams& params, ControllerMode mode) {
    if (mode == ControllerMode::Rest)
        throw std::invalid_argument("controller: gain undefined in rest mode");
    return (params.p_max - params.p_min(mode)) / params.setpoint(mode);
}

double feed_forward(const ControllerParams& params, ControllerMode mode) {
    switch (mode) {
        case ControllerMode::Inflation: return params.f_in;
        case ControllerMode::Deflation: return 1.0 / params.r_deflate;
        default: throw std::invalid_argument("controller: feed-forward undefined in rest mode");
    }
}

namespace {

ControllerOutput compute(const ControllerParams& params, ControllerMode mode,
                         double y, bool use_feed_forward) {
    ControllerOutput out;
    const double r = params.setpoint(mode);
    out.e = error(r, y);
    out.kp = proportional_gain(params, mode);
    out.u = out.kp * out.e + params.p_min(mode);
    out.g = use_feed_forward ? out.u + feed_forward(params, mode) * y : out.u;
    out.holding = std::abs(out.e) <= params.hold_band;
    out.duty = out.holding ? 0.0 : std::clamp(out.g, 0.0, params.p_max);
    return out;
}

}  // namespace

ControllerOutput ffp_output(const ControllerParams& params, ControllerMode mode, double y) {
    return compute(params, mode, y, true);
}

ControllerOutput p_only_output(const ControllerParams& params, ControllerMode mode, double y) {
    return compute(params, mode, y, false);
}

ControllerOutput rest_output() {
    ControllerOutput out;
    out.holding = true;
    return out;
}

ControllerOutput HoldSupervisor::apply(const ControllerParams& params, ControllerMode mode,
                                       double y, bool use_feed_forward) {
    if (mode == ControllerMode::Rest) {
        engaged_ = false;
        return rest_output();
    }
    ControllerOutput out = compute(params, mode, y, use_feed_forward);
    if (engaged_) {
        if (std::abs(out.e) > params.release_band())
            engaged_ = false;
    } else if (std::abs(out.e) <= params.hold_band) {
        engaged_ = true;
    }
    out.holding = engaged_;
    out.duty = engaged_ ? 0.0 : std::clamp(out.g, 0.0, params.p_max);
    return out;
}

}  // namespace softgrip
