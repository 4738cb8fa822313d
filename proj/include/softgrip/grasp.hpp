#pragma once

#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace softgrip {

enum class BaseConfig { XBase, HBase };

const char* to_string(BaseConfig base);

// Four-finger gripper geometry. The open aperture is the fingertip distance
// when fully deflated: diagonal for X-base, tip-to-tip for H-base.
struct GripperGeometry {
    BaseConfig base = BaseConfig::HBase;
    double finger_length_mm = 100.0;
    double finger_width_mm = 15.0;
    double mount_angle_deg = 25.0;
    double aperture_open_mm = 145.0;   // 180 for X-base, 145 for H-base
    double close_onset_kpa = 58.0;     // fingers start closing here
    double close_full_kpa = 85.0;      // tips touch
    double open_full_kpa = -25.0;      // fully opened
    double pair_gap_mm = 40.0;         // distance between the two H-base finger pairs

    void validate() const;             // throws std::invalid_argument
    static GripperGeometry defaults(BaseConfig base);
};

enum class Shape { Cylinder, Sphere, Box };

struct ObjectSpec {
    std::string name;
    Shape shape = Shape::Cylinder;
    // Cylinder: diameter, height. Sphere: diameter. Box: width, depth, height.
    double dim1_mm = 0.0;
    double dim2_mm = 0.0;
    double dim3_mm = 0.0;
    double mass_g = 0.0;
    bool non_static_cg = false;

    void validate() const;
    // Horizontal span the fingers must clear when closing around the object.
    double span_mm() const;
};

enum class GraspResult { Success, BlowAway, TooHeavy, GeometryMismatch, OffsetOutOfTolerance };

const char* to_string(GraspResult result);

struct GraspOutcome {
    GraspResult result = GraspResult::Success;
    double success_probability = 0.0;
};

struct FeasibilityLimits {
    double blow_away_mass_g = 70.0;       // lighter objects get displaced by downwash
    double hbase_mass_limit_g = 200.0;
    double xbase_mass_limit_g = 330.0;
    double non_static_cg_probability = 0.8;
    double hover_payload_limit_g = 217.0;
};

// Fingertip distance as a function of chamber pressure: open aperture below
// the closing knee, linear ramp down to 0 at full closure.
double aperture(double pressure_kpa, const GripperGeometry& geom);

// Decision cascade over downwash, geometry, placement offset and mass.
GraspOutcome grasp_feasible(const ObjectSpec& object, const GripperGeometry& geom,
                            double offset_mm, bool aerial,
                            const FeasibilityLimits& limits = {});

// Can the vehicle hover with this object held?
bool payload_check(const ObjectSpec& object, double hover_payload_limit_g = 217.0);

double landing_success_probability(BaseConfig base, double incline_deg);

// One landing trial on a platform inclined by incline_deg in [0, 45].
bool landing_outcome(const GripperGeometry& geom, double incline_deg, std::mt19937_64& rng);

// The ten-object static grasping fixture set. Dimensions and masses are
// representative desk-scale values, not measurements.
std::vector<ObjectSpec> default_object_set();

}  // namespace softgrip
