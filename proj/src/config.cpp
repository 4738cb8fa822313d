#include "softgrip/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace softgrip {

namespace {

struct Entry {
    std::string key;
    std::string value;
    int line = 0;
};

struct Section {
    std::string name;
    int line = 0;
    std::vector<Entry> entries;
};

std::string trim(const std::string& s) {
    auto begin = s.find_first_not_of(" \t");
    if (begin == std::string::npos)
        return {};
    auto end = s.find_last_not_of(" \t");
    return s.substr(begin, end - begin + 1);
}

[[noreturn]] void fail(const std::string& source, int line, const std::string& message) {
    throw ConfigError(source + ":" + std::to_string(line) + ": " + message);
}

std::vector<Section> parse_sections(const std::string& text, const std::string& source) {
    std::vector<Section> sections;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        if (!raw.empty() && raw.back() == '\r')
            raw.pop_back();
        auto comment = raw.find('#');
        if (comment != std::string::npos)
            raw.erase(comment);
        const std::string line = trim(raw);
        if (line.empty())
            continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                fail(source, lineno, "unterminated section header");
            const std::string name = trim(line.substr(1, line.size() - 2));
            if (name.empty())
                fail(source, lineno, "empty section name");
            sections.push_back({name, lineno, {}});
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos)
            fail(source, lineno, "expected 'key = value'");
        if (sections.empty())
            fail(source, lineno, "key outside of any section");
        Entry entry{trim(line.substr(0, eq)), trim(line.substr(eq + 1)), lineno};
        if (entry.key.empty())
            fail(source, lineno, "empty key");
        sections.back().entries.push_back(std::move(entry));
    }
    return sections;
}

double parse_double(const Entry& e, const std::string& source) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(e.value, &pos);
        if (pos != e.value.size())
            throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        fail(source, e.line, "invalid number for '" + e.key + "': '" + e.value + "'");
    }
}

bool parse_bool(const Entry& e, const std::string& source) {
    if (e.value == "true" || e.value == "1")
        return true;
    if (e.value == "false" || e.value == "0")
        return false;
    fail(source, e.line, "invalid boolean for '" + e.key + "': '" + e.value + "'");
}

bool is_object_section(const std::string& name) {
    return name.rfind("object.", 0) == 0;
}

void apply_control(const Section& s, ControllerParams& p, const std::string& source) {
    for (const auto& e : s.entries) {
        if (e.key == "r_inflate_kpa") p.r_inflate = parse_double(e, source);
        else if (e.key == "r_deflate_kpa") p.r_deflate = parse_double(e, source);
        else if (e.key == "p_max_pct") p.p_max = parse_double(e, source);
        else if (e.key == "p_min_inflate_pct") p.p_min_inflate = parse_double(e, source);
        else if (e.key == "p_min_deflate_pct") p.p_min_deflate = parse_double(e, source);
        else if (e.key == "f_in") p.f_in = parse_double(e, source);
        else if (e.key == "hold_band_kpa") p.hold_band = parse_double(e, source);
        else if (e.key == "release_factor") p.release_factor = parse_double(e, source);
        else fail(source, e.line, "unknown key '" + e.key + "' in [control]");
    }
}

void apply_plant(const Section& s, PlantParams& p, const std::string& source) {
    for (const auto& e : s.entries) {
        if (e.key == "p_pump_in_kpa") p.p_pump_in = parse_double(e, source);
        else if (e.key == "p_pump_out_kpa") p.p_pump_out = parse_double(e, source);
        else if (e.key == "k_pump") p.k_pump = parse_double(e, source);
        else if (e.key == "k_leak") p.k_leak = parse_double(e, source);
        else if (e.key == "dt_s") p.dt = parse_double(e, source);
        else fail(source, e.line, "unknown key '" + e.key + "' in [plant]");
    }
}

void apply_sensor(const Section& s, SensorModel& m, const std::string& source) {
    for (const auto& e : s.entries) {
        if (e.key == "range_low_kpa") m.range_low = parse_double(e, source);
        else if (e.key == "range_high_kpa") m.range_high = parse_double(e, source);
        else if (e.key == "noise_sd_kpa") m.noise_sd = parse_double(e, source);
        else fail(source, e.line, "unknown key '" + e.key + "' in [sensor]");
    }
}

void apply_geometry(const Section& s, GripperGeometry& g, const std::string& source) {
    // Base first: it decides the default open aperture.
    for (const auto& e : s.entries) {
        if (e.key != "base")
            continue;
        if (e.value == "x" || e.value == "x-base")
            g = GripperGeometry::defaults(BaseConfig::XBase);
        else if (e.value == "h" || e.value == "h-base")
            g = GripperGeometry::defaults(BaseConfig::HBase);
        else
            fail(source, e.line, "invalid base '" + e.value + "' (expected x or h)");
    }
    for (const auto& e : s.entries) {
        if (e.key == "base") continue;
        else if (e.key == "finger_length_mm") g.finger_length_mm = parse_double(e, source);
        else if (e.key == "finger_width_mm") g.finger_width_mm = parse_double(e, source);
        else if (e.key == "mount_angle_deg") g.mount_angle_deg = parse_double(e, source);
        else if (e.key == "aperture_open_mm") g.aperture_open_mm = parse_double(e, source);
        else if (e.key == "close_onset_kpa") g.close_onset_kpa = parse_double(e, source);
        else if (e.key == "close_full_kpa") g.close_full_kpa = parse_double(e, source);
        else if (e.key == "open_full_kpa") g.open_full_kpa = parse_double(e, source);
        else if (e.key == "pair_gap_mm") g.pair_gap_mm = parse_double(e, source);
        else fail(source, e.line, "unknown key '" + e.key + "' in [geometry]");
    }
}

void apply_limits(const Section& s, FeasibilityLimits& l, const std::string& source) {
    for (const auto& e : s.entries) {
        if (e.key == "blow_away_mass_g") l.blow_away_mass_g = parse_double(e, source);
        else if (e.key == "hbase_mass_limit_g") l.hbase_mass_limit_g = parse_double(e, source);
        else if (e.key == "xbase_mass_limit_g") l.xbase_mass_limit_g = parse_double(e, source);
        else if (e.key == "non_static_cg_probability")
            l.non_static_cg_probability = parse_double(e, source);
        else if (e.key == "hover_payload_limit_g")
            l.hover_payload_limit_g = parse_double(e, source);
        else fail(source, e.line, "unknown key '" + e.key + "' in [limits]");
    }
}

ObjectSpec parse_object(const Section& s, const std::string& source) {
    ObjectSpec obj;
    obj.name = s.name.substr(std::string("object.").size());
    if (obj.name.empty())
        fail(source, s.line, "object section needs a name: [object.<name>]");
    bool have_shape = false;
    for (const auto& e : s.entries) {
        if (e.key != "shape")
            continue;
        have_shape = true;
        if (e.value == "cylinder") obj.shape = Shape::Cylinder;
        else if (e.value == "sphere") obj.shape = Shape::Sphere;
        else if (e.value == "box") obj.shape = Shape::Box;
        else fail(source, e.line, "invalid shape '" + e.value + "'");
    }
    if (!have_shape)
        fail(source, s.line, "object '" + obj.name + "' is missing a shape");
    for (const auto& e : s.entries) {
        if (e.key == "shape") {
            continue;
        } else if (e.key == "diameter_mm") {
            obj.dim1_mm = parse_double(e, source);
        } else if (e.key == "width_mm") {
            obj.dim1_mm = parse_double(e, source);
        } else if (e.key == "depth_mm") {
            obj.dim2_mm = parse_double(e, source);
        } else if (e.key == "height_mm") {
            if (obj.shape == Shape::Cylinder) obj.dim2_mm = parse_double(e, source);
            else obj.dim3_mm = parse_double(e, source);
        } else if (e.key == "mass_g") {
            obj.mass_g = parse_double(e, source);
        } else if (e.key == "non_static_cg") {
            obj.non_static_cg = parse_bool(e, source);
        } else {
            fail(source, e.line, "unknown key '" + e.key + "' in [" + s.name + "]");
        }
    }
    try {
        obj.validate();
    } catch (const std::exception& e) {
        fail(source, s.line, e.what());
    }
    return obj;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

SimConfig parse_sim_config(const std::string& text, const std::string& source) {
    SimConfig config;
    for (const auto& section : parse_sections(text, source)) {
        if (section.name == "control") apply_control(section, config.control, source);
        else if (section.name == "plant") apply_plant(section, config.plant, source);
        else if (section.name == "sensor") apply_sensor(section, config.sensor, source);
        else if (section.name == "geometry") apply_geometry(section, config.geometry, source);
        else if (section.name == "limits") apply_limits(section, config.limits, source);
        else if (is_object_section(section.name)) continue;
        else fail(source, section.line, "unknown section [" + section.name + "]");
    }
    try {
        config.validate();
    } catch (const std::exception& e) {
        throw ConfigError(source + ": " + e.what());
    }
    return config;
}

SimConfig load_sim_config(const std::string& path) {
    return parse_sim_config(slurp(path), path);
}

std::vector<ObjectSpec> parse_object_set(const std::string& text, const std::string& source) {
    std::vector<ObjectSpec> objects;
    for (const auto& section : parse_sections(text, source))
        if (is_object_section(section.name))
            objects.push_back(parse_object(section, source));
    return objects;
}

std::vector<ObjectSpec> load_object_set(const std::string& path) {
    return parse_object_set(slurp(path), path);
}

}  // namespace softgrip
