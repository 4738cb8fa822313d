#include "softgrip/grasp.hpp"

#include <algorithm>
#include <cmath>

namespace softgrip {

const char* to_string(BaseConfig base) {
    return base == BaseConfig::XBase ? "x-base" : "h-base";
}

const char* to_string(GraspResult result) {
    switch (result) {
        case GraspResult::Success: return "success";
        case GraspResult::BlowAway: return "blow-away";
        case GraspResult::TooHeavy: return "too-heavy";
        case GraspResult::GeometryMismatch: return "geometry-mismatch";
        case GraspResult::OffsetOutOfTolerance: return "offset-out-of-tolerance";
    }
    return "?";
}

void GripperGeometry::validate() const {
    if (!(open_full_kpa < close_onset_kpa && close_onset_kpa < close_full_kpa))
        throw std::invalid_argument("geometry: require open_full < close_onset < close_full");
    if (!(aperture_open_mm > 0.0))
        throw std::invalid_argument("geometry: aperture_open must be positive");
    if (base == BaseConfig::HBase && !(pair_gap_mm > 0.0))
        throw std::invalid_argument("geometry: pair_gap must be positive for H-base");
}

GripperGeometry GripperGeometry::defaults(BaseConfig b) {
    GripperGeometry geom;
    geom.base = b;
    geom.aperture_open_mm = (b == BaseConfig::XBase) ? 180.0 : 145.0;
    return geom;
}

void ObjectSpec::validate() const {
    if (!(mass_g > 0.0))
        throw std::invalid_argument("object: mass must be positive");
    const bool dims_ok = shape == Shape::Sphere
                             ? dim1_mm > 0.0
                             : (shape == Shape::Cylinder ? dim1_mm > 0.0 && dim2_mm > 0.0
                                                         : dim1_mm > 0.0 && dim2_mm > 0.0 && dim3_mm > 0.0);
    if (!dims_ok)
        throw std::invalid_argument("object: dimensions must be positive");
}

double ObjectSpec::span_mm() const {
    switch (shape) {
        case Shape::Cylinder:
        case Shape::Sphere:
            return dim1_mm;
        case Shape::Box:
            return std::min(dim1_mm, dim2_mm);
    }
    return dim1_mm;
}

double aperture(double pressure_kpa, const GripperGeometry& geom) {
    if (pressure_kpa <= geom.close_onset_kpa)
        return geom.aperture_open_mm;
    if (pressure_kpa >= geom.close_full_kpa)
        return 0.0;
    const double frac =
        (geom.close_full_kpa - pressure_kpa) / (geom.close_full_kpa - geom.close_onset_kpa);
    return geom.aperture_open_mm * frac;
}

GraspOutcome grasp_feasible(const ObjectSpec& object, const GripperGeometry& geom,
                            double offset_mm, bool aerial, const FeasibilityLimits& limits) {
    if (aerial && object.mass_g < limits.blow_away_mass_g)
        return {GraspResult::BlowAway, 0.0};
    const double span = object.span_mm();
    if (span >= geom.aperture_open_mm)
        return {GraspResult::GeometryMismatch, 0.0};
    // H-base finger pairs cannot reach items smaller than the gap between them.
    if (geom.base == BaseConfig::HBase && object.shape == Shape::Sphere &&
        object.dim1_mm < geom.pair_gap_mm)
        return {GraspResult::GeometryMismatch, 0.0};
    if (std::abs(offset_mm) > (geom.aperture_open_mm - span) / 2.0)
        return {GraspResult::OffsetOutOfTolerance, 0.0};
    const double mass_limit = geom.base == BaseConfig::HBase ? limits.hbase_mass_limit_g
                                                             : limits.xbase_mass_limit_g;
    if (object.mass_g > mass_limit)
        return {GraspResult::TooHeavy, 0.0};
    return {GraspResult::Success, object.non_static_cg ? limits.non_static_cg_probability : 1.0};
}

bool payload_check(const ObjectSpec& object, double hover_payload_limit_g) {
    return object.mass_g <= hover_payload_limit_g;
}

double landing_success_probability(BaseConfig base, double incline_deg) {
    if (incline_deg < 0.0 || incline_deg > 45.0)
        throw std::invalid_argument("landing: incline must be in [0, 45] degrees");
    if (base == BaseConfig::HBase)
        return 1.0;
    // X-base: 100% on flat ground, 60% on a 10 degree slope, linear in between
    // and extrapolated beyond, floored at zero.
    return std::max(0.0, 1.0 - 0.04 * incline_deg);
}

bool landing_outcome(const GripperGeometry& geom, double incline_deg, std::mt19937_64& rng) {
    const double p = landing_success_probability(geom.base, incline_deg);
    if (p >= 1.0)
        return true;
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    return unit(rng) < p;
}

std::vector<ObjectSpec> default_object_set() {
    // Representative dimensions/masses for the ten-object grasping fixture.
    return {
        {"pen_holder", Shape::Cylinder, 80.0, 100.0, 0.0, 150.0, false},
        {"computer_mouse", Shape::Box, 60.0, 110.0, 35.0, 90.0, false},
        {"double_sided_tape", Shape::Cylinder, 100.0, 30.0, 0.0, 217.0, false},
        {"pen", Shape::Cylinder, 10.0, 140.0, 0.0, 10.0, false},
        {"spray_paint", Shape::Cylinder, 66.0, 195.0, 0.0, 180.0, true},
        {"syringe", Shape::Cylinder, 20.0, 120.0, 0.0, 25.0, false},
        {"membership_card", Shape::Box, 54.0, 86.0, 1.0, 5.0, false},
        {"pocket_tissue", Shape::Box, 75.0, 110.0, 25.0, 30.0, false},
        {"spherical_container", Shape::Sphere, 38.0, 0.0, 0.0, 100.0, false},
        {"plastic_box", Shape::Box, 70.0, 70.0, 90.0, 120.0, false},
    };
}

}  // namespace softgrip
