#include "softgrip/trace.hpp"

#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace softgrip {

namespace {

constexpr const char* kHeader =
    "t_s,pwm_us,command,valve_in,valve_de,pump_on,duty_pct,pressure_kpa,aperture_mm,event";

void format_fixed(std::ostream& out, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    out << buf;
}

}  // namespace

ControllerMode mode_from_string(const std::string& s) {
    if (s == "inflation") return ControllerMode::Inflation;
    if (s == "deflation") return ControllerMode::Deflation;
    if (s == "rest") return ControllerMode::Rest;
    throw std::runtime_error("unknown controller mode: '" + s + "'");
}

void write_trace_csv(std::ostream& out, const std::vector<TraceRecord>& records) {
    out << kHeader << '\n';
    for (const auto& r : records) {
        format_fixed(out, r.t_s);
        out << ',' << r.pwm_us << ',' << to_string(r.command) << ','
            << (r.valve_inflate ? 1 : 0) << ',' << (r.valve_deflate ? 1 : 0) << ','
            << (r.pump_on ? 1 : 0) << ',';
        format_fixed(out, r.duty_pct);
        out << ',';
        format_fixed(out, r.pressure_kpa);
        out << ',';
        format_fixed(out, r.aperture_mm);
        out << ',' << r.event << '\n';
    }
}

void write_trace_csv(const std::string& path, const std::vector<TraceRecord>& records) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open trace file for writing: " + path);
    write_trace_csv(out, records);
    if (!out)
        throw std::runtime_error("write failed: " + path);
}

std::vector<TraceRecord> parse_trace_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("trace csv: empty input");
    if (!line.empty() && line.back() == '\r')
        line.pop_back();
    if (line != kHeader)
        throw std::runtime_error("trace csv line 1: unexpected header");

    std::vector<TraceRecord> records;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        std::vector<std::string> fields;
        std::string field;
        std::istringstream ls(line);
        while (std::getline(ls, field, ','))
            fields.push_back(field);
        if (line.back() == ',')
            fields.emplace_back();  // trailing empty event column
        if (fields.size() != 10)
            throw std::runtime_error("trace csv line " + std::to_string(lineno) +
                                     ": expected 10 columns, got " + std::to_string(fields.size()));
        try {
            TraceRecord r;
            r.t_s = std::stod(fields[0]);
            r.pwm_us = std::stoi(fields[1]);
            r.command = mode_from_string(fields[2]);
            r.valve_inflate = fields[3] == "1";
            r.valve_deflate = fields[4] == "1";
            r.pump_on = fields[5] == "1";
            r.duty_pct = std::stod(fields[6]);
            r.pressure_kpa = std::stod(fields[7]);
            r.aperture_mm = std::stod(fields[8]);
            r.event = fields[9];
            records.push_back(std::move(r));
        } catch (const std::exception& e) {
            throw std::runtime_error("trace csv line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return records;
}

std::vector<TraceRecord> parse_trace_csv_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open trace file: " + path);
    return parse_trace_csv(in);
}

}  // namespace softgrip
