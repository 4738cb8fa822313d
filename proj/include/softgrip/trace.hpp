#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "softgrip/control.hpp"

namespace softgrip {

// One telemetry row per simulation tick.
struct TraceRecord {
    double t_s = 0.0;
    int pwm_us = 0;
    ControllerMode command = ControllerMode::Rest;
    bool valve_inflate = false;
    bool valve_deflate = false;
    bool pump_on = false;
    double duty_pct = 0.0;
    double pressure_kpa = 0.0;
    double aperture_mm = 0.0;
    std::string event;  // empty for plain ticks

    bool operator==(const TraceRecord&) const = default;
};

// CSV layout (fixed column order, header mandatory):
//   t_s,pwm_us,command,valve_in,valve_de,pump_on,duty_pct,pressure_kpa,aperture_mm,event
// Decimal point, LF terminators, fixed 6-digit fractional precision.
void write_trace_csv(std::ostream& out, const std::vector<TraceRecord>& records);
void write_trace_csv(const std::string& path, const std::vector<TraceRecord>& records);

// Throws std::runtime_error with a line-anchored message on malformed input.
std::vector<TraceRecord> parse_trace_csv(std::istream& in);
std::vector<TraceRecord> parse_trace_csv_file(const std::string& path);

ControllerMode mode_from_string(const std::string& s);  // throws on unknown

}  // namespace softgrip
