#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gnevi/game.hpp"

namespace gnevi {

// On-disk problem description. Parsing is strict: unknown fields are
// rejected and every numeric field must be finite.
struct PreferenceSpec {
    enum class Kind { fixture, piecewise, utility };
    Kind kind = Kind::utility;

    std::string fixture_name;

    struct PiecewiseCase {
        double when_lo = 0, when_hi = 0;
        bool when_lo_closed = true, when_hi_closed = true;
        bool empty = false;
        std::string lo, hi;  // endpoint expressions over profile variables
        bool lo_strict = false, hi_strict = false;
    };
    std::vector<PiecewiseCase> cases;  // first matching case wins

    std::string utility;  // expression over profile variables x1..xN
};

struct ConstraintSpec {
    enum class Kind { constant_box, affine_box };
    Kind kind = Kind::constant_box;
    Vec lo, hi;
    std::vector<Vec> lo_coef, hi_coef;
    Vec lo_const, hi_const;
};

struct PlayerSpec {
    int dim = 1;
    Box box;
    ConstraintSpec constraint;
    PreferenceSpec preference;
};

struct SolverSpec {
    int grid = 101;
    double tol = 1e-6;
    std::uint64_t seed = 1;
    int max_iters = 10000;
    double step = 0.1;
    int classify_points = 21;
    int midpoint_t_grid = 64;
    int midpoint_w_samples = 25;
    double midpoint_min_radius = 1e-4;
};

struct InstanceFile {
    std::string version = "gnevi/1";
    std::vector<PlayerSpec> players;
    SolverSpec solver;
};

class instance_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

InstanceFile parse_instance(const std::string& json_text);
InstanceFile load_instance(const std::string& path);
std::string serialize_instance(const InstanceFile& inst);

// Realizes preference and constraint oracles into a playable game.
GameInstance build_game(const InstanceFile& inst);

// Builtin fixtures as single-player instances over K = [0, 1].
InstanceFile export_fixture_instance(const std::string& fixture_name);

MidpointResolution midpoint_resolution(const SolverSpec& solver);

}  // namespace gnevi
