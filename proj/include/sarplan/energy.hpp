#pragma once

#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sarplan/grid.hpp"

namespace sarplan {

enum class MoveKind { stay, orthogonal, diagonal };

// Per-robot power constants. Powers are watts, battery capacity joules.
// Immutable value object; all operations on it are pure.
struct EnergyProfile {
    std::string name;
    double battery_capacity = 0.0;       // joules
    double rx_power = 0.0;               // receiving, always on
    double tx_power_base = 0.0;          // transmission at distance 0
    double tx_distance_coeff = 0.0;      // watts / meter^exponent
    double tx_distance_exponent = 1.0;
    double sensing_power = 0.0;          // cameras + LiDAR + processing
    double idle_power = 0.0;             // no motion, no sensing
    std::map<double, double> motion_power; // speed (m/s) -> watts
    double diagonal_factor = 1.4142135623730951; // sqrt(2): diagonal covers sqrt(2) cells

    void validate() const {
        if (battery_capacity <= 0.0)
            throw std::invalid_argument("EnergyProfile: battery_capacity must be positive");
        if (rx_power < 0.0 || tx_power_base < 0.0 || tx_distance_coeff < 0.0 ||
            sensing_power < 0.0 || idle_power < 0.0)
            throw std::invalid_argument("EnergyProfile: powers must be >= 0");
        if (motion_power.empty())
            throw std::invalid_argument("EnergyProfile: motion_power needs at least one speed entry");
        for (const auto& [speed, watts] : motion_power)
            if (speed <= 0.0 || watts < 0.0)
                throw std::invalid_argument("EnergyProfile: motion_power entries must have speed > 0, watts >= 0");
        if (diagonal_factor <= 0.0)
            throw std::invalid_argument("EnergyProfile: diagonal_factor must be positive");
    }

    // Exact entry if present, linear interpolation between bracketing speeds,
    // clamped to the nearest entry outside the measured range.
    double motion_power_at(double speed) const {
        if (motion_power.empty())
            throw std::logic_error("EnergyProfile: motion_power is empty");
        auto hi = motion_power.lower_bound(speed);
        if (hi != motion_power.end() && hi->first == speed) return hi->second;
        if (hi == motion_power.begin()) return hi->second;
        if (hi == motion_power.end()) return std::prev(hi)->second;
        auto lo = std::prev(hi);
        const double w = (speed - lo->first) / (hi->first - lo->first);
        return lo->second + w * (hi->second - lo->second);
    }
};

enum class ProfileKind { wheeled, quadruped };

inline EnergyProfile builtin_profile(ProfileKind kind) {
    EnergyProfile p;
    if (kind == ProfileKind::wheeled) {
        p.name = "wheeled";
        p.battery_capacity = 72e3;
        p.rx_power = 4.0;
        p.tx_power_base = 4.95;
        p.sensing_power = 12.0;
        p.idle_power = 0.29;
        p.motion_power = {{1.0, 7.40}};
    } else {
        p.name = "quadruped";
        p.battery_capacity = 350e3;
        p.rx_power = 15.77;
        p.tx_power_base = 16.72;
        p.sensing_power = 76.09;
        p.idle_power = 80.33; // standing (idle up)
        p.motion_power = {{0.5, 53.26}, {1.0, 108.86}, {2.0, 211.22}};
    }
    return p;
}

struct ComponentPower {
    std::string element;
    double watts;
};

// Measured power breakdown of the quadruped platform, component by component.
inline const std::vector<ComponentPower>& quadruped_component_table() {
    static const std::vector<ComponentPower> table = {
        {"4G Peripheral", 15.77},
        {"Cameras and Nano Proc.", 19.25},
        {"Human Recognition", 29.38},
        {"3D LiDAR and SLAM", 56.84},
        {"Idle Down", 21.62},
        {"Flex Down", 75.79},
        {"Flex Up", 93.14},
        {"Idle Up", 80.33},
        {"Walking Circles 0.76 rad/s", 73.86},
        {"Walking 0.5 m/s", 53.26},
        {"Walking 1 m/s", 108.86},
        {"Walking 2 m/s", 211.22},
    };
    return table;
}

inline double quadruped_component_power(std::string_view element) {
    for (const auto& row : quadruped_component_table())
        if (row.element == element) return row.watts;
    throw std::invalid_argument("quadruped_component_power: unknown element '" +
                                std::string(element) + "'");
}

// Transmission power at a given distance from the base station. The default
// profile has coeff 0, making this the constant measured transmission draw.
inline double tx_power(const EnergyProfile& p, double distance) {
    if (distance < 0.0)
        throw std::invalid_argument("tx_power: distance must be >= 0");
    if (p.tx_distance_coeff == 0.0) return p.tx_power_base;
    return p.tx_power_base + p.tx_distance_coeff * std::pow(distance, p.tx_distance_exponent);
}

// Itemized energy spent by one robot during one epoch, joules.
struct EpochCost {
    double rx = 0.0;
    double tx = 0.0;
    double sensing = 0.0;
    double motion = 0.0;
    double idle = 0.0;
    double total = 0.0;
};

// Energy for one epoch. Receiving is always on. Motion power applies for
// moves (scaled by diagonal_factor and the grid terrain factor), idle power
// when staying put. Sensing and transmission are charged only when entering a
// cell that is not yet explored; transmission depends on the cell's distance
// to the base station. The traversal speed is fixed by the discretization:
// cell_size / epoch_duration.
inline EpochCost epoch_energy(const EnergyProfile& p, MoveKind move,
                              bool exploring_new_cell, Cell cell,
                              const GridMap& grid, double epoch_duration) {
    if (epoch_duration <= 0.0)
        throw std::invalid_argument("epoch_energy: epoch_duration must be positive");
    EpochCost c;
    c.rx = p.rx_power * epoch_duration;
    if (move == MoveKind::stay) {
        c.idle = p.idle_power * epoch_duration;
    } else {
        const double speed = grid.cell_size / epoch_duration;
        double watts = p.motion_power_at(speed) * grid.terrain_factor;
        if (move == MoveKind::diagonal) watts *= p.diagonal_factor;
        c.motion = watts * epoch_duration;
    }
    if (exploring_new_cell) {
        c.sensing = p.sensing_power * epoch_duration;
        c.tx = tx_power(p, base_distance(grid, cell)) * epoch_duration;
    }
    c.total = c.rx + c.tx + c.sensing + c.motion + c.idle;
    return c;
}

// Reference value reported for the quadruped with 1 s posture transitions.
inline constexpr double paper_posture_breakeven_seconds = 2.87;

struct PostureTable {
    double idle_up = 0.0;
    double idle_down = 0.0;
    double flex_down = 0.0;
    double flex_up = 0.0;
};

inline PostureTable default_posture_table() {
    return PostureTable{
        quadruped_component_power("Idle Up"),
        quadruped_component_power("Idle Down"),
        quadruped_component_power("Flex Down"),
        quadruped_component_power("Flex Up"),
    };
}

// Accounting conventions for the lay-down-while-idle break-even. They differ
// in whether the two posture transitions eat into the idle window and in what
// the standing baseline covers.
enum class PostureConvention {
    // Transition energy is paid on top of the window; standing pays idle-up
    // for the window only. Reproduces the reported 2.87 s figure.
    transitions_outside_window,
    // Window of length tau contains both transitions; lying lasts tau - 2t.
    transitions_inside_window,
    // Lying lasts the full window; the standing baseline also covers the
    // transition time (window + 2t).
    wall_clock_baseline,
};

// Idle duration above which flexing down, lying, and flexing back up beats
// standing idle. Returns +infinity when lying saves nothing.
inline double posture_breakeven(const PostureTable& t, double transition_time,
                                PostureConvention conv =
                                    PostureConvention::transitions_outside_window) {
    if (transition_time <= 0.0)
        throw std::invalid_argument("posture_breakeven: transition_time must be positive");
    const double saving = t.idle_up - t.idle_down;
    if (saving <= 0.0) return std::numeric_limits<double>::infinity();
    double numerator = 0.0;
    switch (conv) {
        case PostureConvention::transitions_outside_window:
            numerator = t.flex_down + t.flex_up;
            break;
        case PostureConvention::transitions_inside_window:
            numerator = t.flex_down + t.flex_up - 2.0 * t.idle_down;
            break;
        case PostureConvention::wall_clock_baseline:
            numerator = t.flex_down + t.flex_up - 2.0 * t.idle_up;
            break;
    }
    const double tau = transition_time * numerator / saving;
    return tau > 0.0 ? tau : 0.0;
}

} // namespace sarplan
