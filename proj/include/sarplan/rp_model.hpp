#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sarplan/cell_set.hpp"
#include "sarplan/energy.hpp"
#include "sarplan/grid.hpp"

namespace sarplan {

struct RobotSpec {
    int id = 0;
    EnergyProfile profile;
    Cell start{0, 0};
    double initial_battery = 0.0; // joules
};

// One fully specified resource-planning problem: explore at least a kappa
// fraction of the grid within the horizon, subject to per-robot mobility and
// battery constraints.
struct RpInstance {
    GridMap grid;
    int horizon = 0;        // number of epochs
    double epoch_duration = 0.0;
    std::vector<RobotSpec> robots;
    double kappa = 0.0;     // required exploration rate, (0,1]
    double speed = 0.0;     // m/s

    int robot_count() const { return static_cast<int>(robots.size()); }

    // Cells are integral, so a fractional required area rounds up.
    int required_cells() const {
        return static_cast<int>(std::ceil(kappa * grid.total_cells() - 1e-9));
    }

    int unique_start_count() const {
        std::vector<int> s;
        for (const auto& r : robots) s.push_back(grid.index_of(r.start));
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        return static_cast<int>(s.size());
    }

    void validate() const {
        if (horizon < 1) throw std::invalid_argument("RpInstance: horizon must be >= 1");
        if (!(kappa > 0.0 && kappa <= 1.0))
            throw std::invalid_argument("RpInstance: kappa must be in (0,1]");
        if (epoch_duration <= 0.0)
            throw std::invalid_argument("RpInstance: epoch_duration must be positive");
        if (speed <= 0.0) throw std::invalid_argument("RpInstance: speed must be positive");
        if (robots.empty()) throw std::invalid_argument("RpInstance: needs at least one robot");
        if (grid.total_cells() < 1) throw std::invalid_argument("RpInstance: empty grid");
        const double expected_cell = speed * epoch_duration;
        if (std::abs(expected_cell - grid.cell_size) > 1e-6 * expected_cell)
            throw std::invalid_argument(
                "RpInstance: cell_size must equal speed * epoch_duration");
        for (const auto& r : robots) {
            r.profile.validate();
            if (!grid.contains(r.start))
                throw std::invalid_argument("RpInstance: robot start outside grid");
            if (!(r.initial_battery > 0.0 &&
                  r.initial_battery <= r.profile.battery_capacity))
                throw std::invalid_argument(
                    "RpInstance: initial battery must be in (0, capacity]");
        }
    }
};

inline std::optional<MoveKind> move_kind_of(Cell from, Cell to) {
    const int da = std::abs(to.a - from.a);
    const int db = std::abs(to.b - from.b);
    if (da == 0 && db == 0) return MoveKind::stay;
    if (da <= 1 && db <= 1)
        return (da + db == 1) ? MoveKind::orthogonal : MoveKind::diagonal;
    return std::nullopt;
}

// Assignment of all decision variables: per-epoch completion indicators d,
// per-cell explored states e, per-robot occupancy l, and battery levels.
struct Solution {
    int horizon = 0;
    int cells = 0;
    int robot_count = 0;
    std::vector<uint8_t> d;       // [t]
    std::vector<uint8_t> e;       // [t * cells + c]
    std::vector<uint8_t> l;       // [(r * horizon + t) * cells + c]
    std::vector<double> battery;  // [r * horizon + t]
    double objective = 0.0;       // sum of d

    uint8_t e_at(int t, int c) const { return e[t * cells + c]; }
    uint8_t l_at(int r, int t, int c) const { return l[(r * horizon + t) * cells + c]; }
    double battery_at(int r, int t) const { return battery[r * horizon + t]; }

    // Row-major cell index occupied by robot r at epoch t; -1 if the one-hot
    // property does not hold there.
    int robot_cell(int r, int t) const {
        int found = -1;
        for (int c = 0; c < cells; ++c) {
            if (l_at(r, t, c)) {
                if (found >= 0) return -1;
                found = c;
            }
        }
        return found;
    }

    std::vector<std::vector<Cell>> paths(const GridMap& g) const {
        std::vector<std::vector<Cell>> out(robot_count);
        for (int r = 0; r < robot_count; ++r) {
            out[r].reserve(horizon);
            for (int t = 0; t < horizon; ++t) {
                const int c = robot_cell(r, t);
                if (c < 0) throw std::logic_error("Solution::paths: occupancy not one-hot");
                out[r].push_back(g.cell_at(c));
            }
        }
        return out;
    }
};

// Canonical solution arrays from per-robot trajectories: explored state is
// the visit history, the completion indicator follows the coverage threshold,
// batteries follow the per-epoch energy recursion. Does not judge move
// legality; evaluate() and replay() do.
inline Solution solution_from_paths(const RpInstance& inst,
                                    const std::vector<std::vector<Cell>>& paths) {
    const int T = inst.horizon;
    const int C = inst.grid.total_cells();
    const int R = inst.robot_count();
    if (static_cast<int>(paths.size()) != R)
        throw std::invalid_argument("solution_from_paths: robot count mismatch");
    for (const auto& p : paths)
        if (static_cast<int>(p.size()) != T)
            throw std::invalid_argument("solution_from_paths: path length mismatch");

    Solution s;
    s.horizon = T;
    s.cells = C;
    s.robot_count = R;
    s.d.assign(T, 0);
    s.e.assign(static_cast<size_t>(T) * C, 0);
    s.l.assign(static_cast<size_t>(R) * T * C, 0);
    s.battery.assign(static_cast<size_t>(R) * T, 0.0);

    CellSet explored(C);
    const int required = inst.required_cells();
    for (int t = 0; t < T; ++t) {
        for (int r = 0; r < R; ++r) {
            const int c = inst.grid.index_of(paths[r][t]);
            s.l[(static_cast<size_t>(r) * T + t) * C + c] = 1;
            explored.set(c);
        }
        for (int c = 0; c < C; ++c)
            s.e[static_cast<size_t>(t) * C + c] = explored.test(c) ? 1 : 0;
        s.d[t] = explored.count() < required ? 1 : 0;
        s.objective += s.d[t];
    }
    for (int r = 0; r < R; ++r) {
        double b = inst.robots[r].initial_battery;
        s.battery[static_cast<size_t>(r) * T] = b;
        for (int t = 0; t + 1 < T; ++t) {
            const Cell to = paths[r][t + 1];
            const auto kind = move_kind_of(paths[r][t], to);
            const bool exploring = !s.e_at(t, inst.grid.index_of(to));
            const EpochCost cost =
                epoch_energy(inst.robots[r].profile,
                             kind.value_or(MoveKind::diagonal), exploring, to,
                             inst.grid, inst.epoch_duration);
            b -= cost.total;
            s.battery[static_cast<size_t>(r) * T + t + 1] = b;
        }
    }
    return s;
}

// ---------------------------------------------------------------------------
// Explicit mixed-integer linear model
// ---------------------------------------------------------------------------

enum class VarKind { binary, continuous };
enum class Relation { le, eq, ge };

struct Variable {
    std::string name;
    VarKind kind = VarKind::binary;
    double lower = 0.0;
    double upper = 1.0;
};

struct LinTerm {
    int var = 0;
    double coeff = 0.0;
};

struct Constraint {
    std::string name;
    std::vector<LinTerm> terms;
    Relation rel = Relation::le;
    double rhs = 0.0;
};

struct MilpModel {
    std::vector<Variable> variables;
    std::vector<Constraint> constraints;
    std::vector<LinTerm> objective; // minimize

    int var_count() const { return static_cast<int>(variables.size()); }

    // Canonical plain-text form for debugging and cross-implementation diffs.
    std::string to_text() const;
};

struct ProvablyInfeasibleError : std::runtime_error {
    explicit ProvablyInfeasibleError(const std::string& why)
        : std::runtime_error(why) {}
};

// Variable layout of one RP model. Arcs exist for Moore-neighbor pairs only;
// gate binaries linearize the "entering an unexplored cell" product.
struct RpVarMap {
    int horizon = 0;
    int cells = 0;
    int robots = 0;
    std::vector<std::vector<int>> nbr; // per-cell neighbor indices, sorted
    std::vector<int> arc_offset;       // prefix sums over nbr sizes
    int arcs_per_epoch = 0;            // total Moore pairs in the grid

    int d_base = 0, e_base = 0, l_base = 0, arc_base = 0, gate_base = 0, b_base = 0;

    int d(int t) const { return d_base + t; }
    int e(int t, int c) const { return e_base + t * cells + c; }
    int l(int r, int t, int c) const {
        return l_base + (r * horizon + t) * cells + c;
    }
    // t indexes the transition t -> t+1, so t in [0, horizon-1).
    int arc(int r, int t, int from, int to) const {
        const auto& n = nbr[from];
        const auto it = std::lower_bound(n.begin(), n.end(), to);
        if (it == n.end() || *it != to)
            throw std::invalid_argument("RpVarMap::arc: not a neighbor pair");
        const int slot = arc_offset[from] + static_cast<int>(it - n.begin());
        return arc_base + (r * (horizon - 1) + t) * arcs_per_epoch + slot;
    }
    int gate(int r, int t, int c) const {
        return gate_base + (r * (horizon - 1) + t) * cells + c;
    }
    int b(int r, int t) const { return b_base + r * horizon + t; }
};

namespace detail {

inline std::string cell_name(const GridMap& g, int c) {
    const Cell cc = g.cell_at(c);
    return "(" + std::to_string(cc.a) + "," + std::to_string(cc.b) + ")";
}

inline RpVarMap make_var_map(const RpInstance& inst) {
    RpVarMap m;
    m.horizon = inst.horizon;
    m.cells = inst.grid.total_cells();
    m.robots = inst.robot_count();
    m.nbr.resize(m.cells);
    m.arc_offset.resize(m.cells, 0);
    for (int c = 0; c < m.cells; ++c) {
        for (const Cell n : neighbors(inst.grid, inst.grid.cell_at(c)))
            m.nbr[c].push_back(inst.grid.index_of(n));
        std::sort(m.nbr[c].begin(), m.nbr[c].end());
        m.arc_offset[c] = m.arcs_per_epoch;
        m.arcs_per_epoch += static_cast<int>(m.nbr[c].size());
    }
    const int T = m.horizon, C = m.cells, R = m.robots;
    m.d_base = 0;
    m.e_base = T;
    m.l_base = m.e_base + T * C;
    m.arc_base = m.l_base + R * T * C;
    m.gate_base = m.arc_base + R * std::max(0, T - 1) * m.arcs_per_epoch;
    m.b_base = m.gate_base + R * std::max(0, T - 1) * C;
    return m;
}

} // namespace detail

// Movement/battery linearization: binary arc variables for Moore-neighbor
// pairs tie consecutive occupancies together, gate binaries capture entry
// into not-yet-explored cells, and the battery recursion becomes a linear
// equality over them.
inline void linearize_movement(const RpInstance& inst, const RpVarMap& m,
                               MilpModel& model) {
    const int T = m.horizon, C = m.cells, R = m.robots;
    const double dt = inst.epoch_duration;
    for (int r = 0; r < R; ++r) {
        const EnergyProfile& p = inst.robots[r].profile;
        // Move-dependent energy per arc kind, via the same code path the
        // validator uses so the model constants match replayed costs.
        const Cell c0 = inst.grid.cell_at(0);
        const EpochCost stay_c = epoch_energy(p, MoveKind::stay, false, c0, inst.grid, dt);
        const EpochCost orth_c = epoch_energy(p, MoveKind::orthogonal, false, c0, inst.grid, dt);
        const EpochCost diag_c = epoch_energy(p, MoveKind::diagonal, false, c0, inst.grid, dt);
        const double rx_energy = stay_c.rx;

        for (int t = 0; t + 1 < T; ++t) {
            for (int from = 0; from < C; ++from) {
                for (int to : m.nbr[from]) {
                    const int mv = m.arc(r, t, from, to);
                    const int lf = m.l(r, t, from);
                    const int lt = m.l(r, t + 1, to);
                    const std::string tag = "[r" + std::to_string(r) + ",t" +
                                            std::to_string(t) + "," +
                                            detail::cell_name(inst.grid, from) + "->" +
                                            detail::cell_name(inst.grid, to) + "]";
                    model.constraints.push_back(
                        {"arc_lb" + tag, {{mv, 1.0}, {lf, -1.0}, {lt, -1.0}}, Relation::ge, -1.0});
                    model.constraints.push_back(
                        {"arc_ub_from" + tag, {{mv, 1.0}, {lf, -1.0}}, Relation::le, 0.0});
                    model.constraints.push_back(
                        {"arc_ub_to" + tag, {{mv, 1.0}, {lt, -1.0}}, Relation::le, 0.0});
                }
            }
            for (int c = 0; c < C; ++c) {
                const int nv = m.gate(r, t, c);
                const int lt = m.l(r, t + 1, c);
                const int ev = m.e(t, c);
                const std::string tag = "[r" + std::to_string(r) + ",t" +
                                        std::to_string(t) + "," +
                                        detail::cell_name(inst.grid, c) + "]";
                model.constraints.push_back(
                    {"gate_lb" + tag, {{nv, 1.0}, {lt, -1.0}, {ev, 1.0}}, Relation::ge, 0.0});
                model.constraints.push_back(
                    {"gate_ub_explored" + tag, {{nv, 1.0}, {ev, 1.0}}, Relation::le, 1.0});
                model.constraints.push_back(
                    {"gate_ub_occupied" + tag, {{nv, 1.0}, {lt, -1.0}}, Relation::le, 0.0});
            }
            // b[r,t+1] - b[r,t] + sum(move energy * arc) + sum(entry energy * gate)
            //   = -rx energy
            Constraint bal;
            bal.name = "battery[r" + std::to_string(r) + ",t" + std::to_string(t) + "]";
            bal.rel = Relation::eq;
            bal.rhs = -rx_energy;
            bal.terms.push_back({m.b(r, t + 1), 1.0});
            bal.terms.push_back({m.b(r, t), -1.0});
            for (int from = 0; from < C; ++from) {
                for (int to : m.nbr[from]) {
                    const auto kind = move_kind_of(inst.grid.cell_at(from), inst.grid.cell_at(to));
                    double energy = 0.0;
                    switch (*kind) {
                        case MoveKind::stay: energy = stay_c.idle; break;
                        case MoveKind::orthogonal: energy = orth_c.motion; break;
                        case MoveKind::diagonal: energy = diag_c.motion; break;
                    }
                    bal.terms.push_back({m.arc(r, t, from, to), energy});
                }
            }
            for (int c = 0; c < C; ++c) {
                const EpochCost entry = epoch_energy(p, MoveKind::stay, true,
                                                     inst.grid.cell_at(c), inst.grid, dt);
                bal.terms.push_back({m.gate(r, t, c), entry.sensing + entry.tx});
            }
            model.constraints.push_back(std::move(bal));
        }
    }
}

// Builds the full RP model: final-coverage target, one-cell-per-robot
// occupancy, Moore-neighborhood mobility, explored-state coupling, the
// completion indicator, the linearized battery recursion, and the
// minimize-completion-time objective.
inline MilpModel build_milp(const RpInstance& inst) {
    inst.validate();
    const RpVarMap m = detail::make_var_map(inst);
    const int T = m.horizon, C = m.cells, R = m.robots;
    const int required = inst.required_cells();
    if (required > R * T)
        throw ProvablyInfeasibleError(
            "required cells " + std::to_string(required) + " exceed " +
            std::to_string(R) + " robots x " + std::to_string(T) + " epochs");

    MilpModel model;
    model.variables.reserve(m.b_base + R * T);
    for (int t = 0; t < T; ++t)
        model.variables.push_back({"d[t" + std::to_string(t) + "]", VarKind::binary, 0, 1});
    for (int t = 0; t < T; ++t)
        for (int c = 0; c < C; ++c)
            model.variables.push_back({"e[t" + std::to_string(t) + "," +
                                           detail::cell_name(inst.grid, c) + "]",
                                       VarKind::binary, 0, 1});
    for (int r = 0; r < R; ++r)
        for (int t = 0; t < T; ++t)
            for (int c = 0; c < C; ++c)
                model.variables.push_back({"l[r" + std::to_string(r) + ",t" +
                                               std::to_string(t) + "," +
                                               detail::cell_name(inst.grid, c) + "]",
                                           VarKind::binary, 0, 1});
    for (int r = 0; r < R; ++r)
        for (int t = 0; t + 1 < T; ++t)
            for (int from = 0; from < C; ++from)
                for (int to : m.nbr[from])
                    model.variables.push_back({"m[r" + std::to_string(r) + ",t" +
                                                   std::to_string(t) + "," +
                                                   detail::cell_name(inst.grid, from) +
                                                   "->" + detail::cell_name(inst.grid, to) + "]",
                                               VarKind::binary, 0, 1});
    for (int r = 0; r < R; ++r)
        for (int t = 0; t + 1 < T; ++t)
            for (int c = 0; c < C; ++c)
                model.variables.push_back({"n[r" + std::to_string(r) + ",t" +
                                               std::to_string(t) + "," +
                                               detail::cell_name(inst.grid, c) + "]",
                                           VarKind::binary, 0, 1});
    for (int r = 0; r < R; ++r)
        for (int t = 0; t < T; ++t)
            model.variables.push_back({"b[r" + std::to_string(r) + ",t" +
                                           std::to_string(t) + "]",
                                       VarKind::continuous, 0.0,
                                       inst.robots[r].profile.battery_capacity});

    // minimize the number of epochs the mission is still incomplete
    for (int t = 0; t < T; ++t) model.objective.push_back({m.d(t), 1.0});

    // coverage target at the final epoch
    {
        Constraint c0;
        c0.name = "final_coverage";
        c0.rel = Relation::ge;
        c0.rhs = required;
        for (int c = 0; c < C; ++c) c0.terms.push_back({m.e(T - 1, c), 1.0});
        model.constraints.push_back(std::move(c0));
    }
    // each robot occupies exactly one cell per epoch
    for (int r = 0; r < R; ++r) {
        for (int t = 0; t < T; ++t) {
            Constraint c0;
            c0.name = "occupancy[r" + std::to_string(r) + ",t" + std::to_string(t) + "]";
            c0.rel = Relation::eq;
            c0.rhs = 1.0;
            for (int c = 0; c < C; ++c) c0.terms.push_back({m.l(r, t, c), 1.0});
            model.constraints.push_back(std::move(c0));
        }
    }
    // moves restricted to the Moore neighborhood (staying put included)
    for (int r = 0; r < R; ++r)
        for (int t = 0; t + 1 < T; ++t)
            for (int c = 0; c < C; ++c) {
                Constraint c0;
                c0.name = "mobility[r" + std::to_string(r) + ",t" + std::to_string(t) +
                          "," + detail::cell_name(inst.grid, c) + "]";
                c0.rel = Relation::le;
                c0.rhs = 0.0;
                c0.terms.push_back({m.l(r, t + 1, c), 1.0});
                for (int n : m.nbr[c]) c0.terms.push_back({m.l(r, t, n), -1.0});
                model.constraints.push_back(std::move(c0));
            }
    // a cell is explored once some robot has visited it, monotonically
    for (int t = 1; t < T; ++t) {
        for (int c = 0; c < C; ++c) {
            const std::string tag =
                "[t" + std::to_string(t) + "," + detail::cell_name(inst.grid, c) + "]";
            Constraint up;
            up.name = "explore_visit" + tag;
            up.rel = Relation::le;
            up.rhs = 0.0;
            up.terms.push_back({m.e(t, c), 1.0});
            up.terms.push_back({m.e(t - 1, c), -1.0});
            for (int r = 0; r < R; ++r) up.terms.push_back({m.l(r, t, c), -1.0});
            model.constraints.push_back(std::move(up));

            model.constraints.push_back({"explore_monotone" + tag,
                                         {{m.e(t, c), 1.0}, {m.e(t - 1, c), -1.0}},
                                         Relation::ge,
                                         0.0});
        }
    }
    for (int t = 0; t < T; ++t) {
        for (int c = 0; c < C; ++c) {
            Constraint c0;
            c0.name = "explore_occupied[t" + std::to_string(t) + "," +
                      detail::cell_name(inst.grid, c) + "]";
            c0.rel = Relation::ge;
            c0.rhs = 0.0;
            c0.terms.push_back({m.e(t, c), static_cast<double>(R)});
            for (int r = 0; r < R; ++r) c0.terms.push_back({m.l(r, t, c), -1.0});
            model.constraints.push_back(std::move(c0));
        }
    }
    // completion indicator: while the threshold is unmet, d stays 1
    for (int t = 0; t < T; ++t) {
        Constraint c0;
        c0.name = "completion[t" + std::to_string(t) + "]";
        c0.rel = Relation::ge;
        c0.rhs = required;
        for (int c = 0; c < C; ++c) c0.terms.push_back({m.e(t, c), 1.0});
        c0.terms.push_back({m.d(t), static_cast<double>(required)});
        model.constraints.push_back(std::move(c0));
    }
    // once complete, stays complete
    for (int t = 0; t + 1 < T; ++t)
        model.constraints.push_back({"completion_monotone[t" + std::to_string(t) + "]",
                                     {{m.d(t + 1), 1.0}, {m.d(t), -1.0}},
                                     Relation::le,
                                     0.0});

    linearize_movement(inst, m, model);

    // initial conditions: robots on their start cells, start cells explored,
    // batteries at their initial charge
    CellSet starts(C);
    for (const auto& r : inst.robots) starts.set(inst.grid.index_of(r.start));
    for (int r = 0; r < R; ++r) {
        const int sc = inst.grid.index_of(inst.robots[r].start);
        model.constraints.push_back({"init_l[r" + std::to_string(r) + "]",
                                     {{m.l(r, 0, sc), 1.0}},
                                     Relation::eq,
                                     1.0});
        model.constraints.push_back({"init_b[r" + std::to_string(r) + "]",
                                     {{m.b(r, 0), 1.0}},
                                     Relation::eq,
                                     inst.robots[r].initial_battery});
    }
    for (int c = 0; c < C; ++c)
        model.constraints.push_back({"init_e[" + detail::cell_name(inst.grid, c) + "]",
                                     {{m.e(0, c), 1.0}},
                                     Relation::eq,
                                     starts.test(c) ? 1.0 : 0.0});
    return model;
}

inline std::string MilpModel::to_text() const {
    std::string out;
    char buf[64];
    auto fmt = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return std::string(buf);
    };
    out += "minimize:";
    for (const auto& t : objective)
        out += " +" + fmt(t.coeff) + " " + variables[t.var].name;
    out += "\n";
    for (const auto& v : variables) {
        out += "var " + v.name + (v.kind == VarKind::binary ? " binary" : " continuous") +
               " [" + fmt(v.lower) + "," + fmt(v.upper) + "]\n";
    }
    out += "subject to:\n";
    for (const auto& c : constraints) {
        out += c.name + ":";
        for (const auto& t : c.terms) {
            out += (t.coeff >= 0 ? " +" : " ") + fmt(t.coeff) + " " + variables[t.var].name;
        }
        switch (c.rel) {
            case Relation::le: out += " <= "; break;
            case Relation::eq: out += " = "; break;
            case Relation::ge: out += " >= "; break;
        }
        out += fmt(c.rhs) + "\n";
    }
    return out;
}

// ---------------------------------------------------------------------------
// Independent constraint checker
// ---------------------------------------------------------------------------

struct Violation {
    std::string constraint;
    std::string where;
    std::string detail;
};

struct EvalResult {
    bool feasible = false;
    std::vector<Violation> violations;
};

// Re-checks every constraint family directly from its closed-form definition,
// recomputing the battery trajectory through epoch_energy. Never consults the
// MILP model, so model-building bugs cannot self-certify. Reports at most the
// first 100 violations.
inline EvalResult evaluate(const RpInstance& inst, const Solution& sol) {
    const int T = inst.horizon;
    const int C = inst.grid.total_cells();
    const int R = inst.robot_count();
    if (sol.horizon != T || sol.cells != C || sol.robot_count != R ||
        sol.d.size() != static_cast<size_t>(T) ||
        sol.e.size() != static_cast<size_t>(T) * C ||
        sol.l.size() != static_cast<size_t>(R) * T * C ||
        sol.battery.size() != static_cast<size_t>(R) * T)
        throw std::invalid_argument("evaluate: solution dimensions do not match instance");

    constexpr size_t max_violations = 100;
    EvalResult res;
    auto flag = [&](std::string constraint, std::string where, std::string detail) {
        if (res.violations.size() < max_violations)
            res.violations.push_back({std::move(constraint), std::move(where), std::move(detail)});
    };
    auto cname = [&](int c) { return detail::cell_name(inst.grid, c); };

    const int required = inst.required_cells();

    // initial conditions
    CellSet starts(C);
    for (const auto& r : inst.robots) starts.set(inst.grid.index_of(r.start));
    for (int c = 0; c < C; ++c) {
        const bool want = starts.test(c);
        if (sol.e_at(0, c) != (want ? 1 : 0))
            flag("init_explored", cname(c),
                 want ? "start cell not marked explored at the first epoch"
                      : "cell marked explored at the first epoch without a robot there");
    }
    for (int r = 0; r < R; ++r) {
        if (!sol.l_at(r, 0, inst.grid.index_of(inst.robots[r].start)))
            flag("init_position", "r" + std::to_string(r), "robot not on its start cell");
        if (sol.battery_at(r, 0) != inst.robots[r].initial_battery)
            flag("init_battery", "r" + std::to_string(r),
                 "initial battery does not match the instance");
    }

    // occupancy: one cell per robot per epoch
    std::vector<int> pos(static_cast<size_t>(R) * T, -1);
    for (int r = 0; r < R; ++r)
        for (int t = 0; t < T; ++t) {
            int count = 0, where = -1;
            for (int c = 0; c < C; ++c)
                if (sol.l_at(r, t, c)) { ++count; where = c; }
            if (count != 1)
                flag("occupancy", "r" + std::to_string(r) + ",t" + std::to_string(t),
                     "robot occupies " + std::to_string(count) + " cells");
            else
                pos[static_cast<size_t>(r) * T + t] = where;
        }

    // mobility: consecutive cells must be Moore neighbors
    for (int r = 0; r < R; ++r)
        for (int t = 0; t + 1 < T; ++t) {
            const int from = pos[static_cast<size_t>(r) * T + t];
            const int to = pos[static_cast<size_t>(r) * T + t + 1];
            if (from < 0 || to < 0) continue;
            if (!move_kind_of(inst.grid.cell_at(from), inst.grid.cell_at(to)))
                flag("mobility", "r" + std::to_string(r) + ",t" + std::to_string(t),
                     "step " + cname(from) + " -> " + cname(to) + " is not a neighbor move");
        }

    // explored-state coupling
    for (int t = 1; t < T; ++t)
        for (int c = 0; c < C; ++c) {
            int visits = 0;
            for (int r = 0; r < R; ++r) visits += sol.l_at(r, t, c);
            if (sol.e_at(t, c) > sol.e_at(t - 1, c) + visits)
                flag("explore_visit", "t" + std::to_string(t) + "," + cname(c),
                     "cell became explored without a visit");
            if (sol.e_at(t, c) < sol.e_at(t - 1, c))
                flag("explore_monotone", "t" + std::to_string(t) + "," + cname(c),
                     "explored state regressed");
        }
    for (int t = 0; t < T; ++t)
        for (int c = 0; c < C; ++c) {
            int visits = 0;
            for (int r = 0; r < R; ++r) visits += sol.l_at(r, t, c);
            if (R * sol.e_at(t, c) < visits)
                flag("explore_occupied", "t" + std::to_string(t) + "," + cname(c),
                     "occupied cell not marked explored");
        }

    // coverage target and completion indicator
    {
        int covered = 0;
        for (int c = 0; c < C; ++c) covered += sol.e_at(T - 1, c);
        if (covered < required)
            flag("final_coverage", "t" + std::to_string(T - 1),
                 std::to_string(covered) + " cells explored < required " +
                     std::to_string(required));
    }
    double objective = 0.0;
    for (int t = 0; t < T; ++t) {
        int covered = 0;
        for (int c = 0; c < C; ++c) covered += sol.e_at(t, c);
        if (sol.d[t] == 0 && covered < required)
            flag("completion", "t" + std::to_string(t),
                 "indicator cleared with " + std::to_string(covered) + " < " +
                     std::to_string(required) + " cells explored");
        if (t + 1 < T && sol.d[t + 1] > sol.d[t])
            flag("completion_monotone", "t" + std::to_string(t), "indicator rose again");
        objective += sol.d[t];
    }
    if (objective != sol.objective)
        flag("objective", "-", "stated objective does not equal the indicator sum");

    // battery recursion, recomputed from the energy model
    for (int r = 0; r < R; ++r) {
        const auto& spec = inst.robots[r];
        for (int t = 0; t + 1 < T; ++t) {
            const int from = pos[static_cast<size_t>(r) * T + t];
            const int to = pos[static_cast<size_t>(r) * T + t + 1];
            if (from < 0 || to < 0) continue;
            const auto kind = move_kind_of(inst.grid.cell_at(from), inst.grid.cell_at(to));
            const bool exploring = !sol.e_at(t, to);
            const EpochCost cost =
                epoch_energy(spec.profile, kind.value_or(MoveKind::diagonal), exploring,
                             inst.grid.cell_at(to), inst.grid, inst.epoch_duration);
            const double expected = sol.battery_at(r, t) - cost.total;
            if (sol.battery_at(r, t + 1) != expected)
                flag("battery_recursion", "r" + std::to_string(r) + ",t" + std::to_string(t),
                     "battery does not follow the energy recursion");
            if (sol.battery_at(r, t + 1) < 0.0)
                flag("battery_bounds", "r" + std::to_string(r) + ",t" + std::to_string(t + 1),
                     "battery below zero");
            if (sol.battery_at(r, t + 1) > spec.profile.battery_capacity)
                flag("battery_bounds", "r" + std::to_string(r) + ",t" + std::to_string(t + 1),
                     "battery above capacity");
        }
    }

    res.feasible = res.violations.empty();
    return res;
}

// Maps a Solution onto the MILP variable vector (deriving arc and gate
// binaries from occupancy and explored state) so solver output can be checked
// against the model row by row.
inline std::vector<double> to_assignment(const RpInstance& inst, const Solution& sol) {
    const RpVarMap m = detail::make_var_map(inst);
    const int T = m.horizon, C = m.cells, R = m.robots;
    std::vector<double> x(static_cast<size_t>(m.b_base + R * T), 0.0);
    for (int t = 0; t < T; ++t) x[m.d(t)] = sol.d[t];
    for (int t = 0; t < T; ++t)
        for (int c = 0; c < C; ++c) x[m.e(t, c)] = sol.e_at(t, c);
    for (int r = 0; r < R; ++r)
        for (int t = 0; t < T; ++t)
            for (int c = 0; c < C; ++c) x[m.l(r, t, c)] = sol.l_at(r, t, c);
    for (int r = 0; r < R; ++r)
        for (int t = 0; t + 1 < T; ++t) {
            const int from = sol.robot_cell(r, t);
            const int to = sol.robot_cell(r, t + 1);
            if (from >= 0 && to >= 0 &&
                move_kind_of(inst.grid.cell_at(from), inst.grid.cell_at(to)))
                x[m.arc(r, t, from, to)] = 1.0;
            for (int c = 0; c < C; ++c)
                x[m.gate(r, t, c)] = (1 - sol.e_at(t, c)) * sol.l_at(r, t + 1, c);
        }
    for (int r = 0; r < R; ++r)
        for (int t = 0; t < T; ++t) x[m.b(r, t)] = sol.battery_at(r, t);
    return x;
}

// Numeric check of an assignment against every model row.
inline std::vector<Violation> check_assignment(const MilpModel& model,
                                               const std::vector<double>& x,
                                               double tol = 1e-6) {
    std::vector<Violation> out;
    if (x.size() != model.variables.size()) {
        out.push_back({"dimensions", "-", "assignment length mismatch"});
        return out;
    }
    for (size_t i = 0; i < model.variables.size(); ++i) {
        const auto& v = model.variables[i];
        if (x[i] < v.lower - tol || x[i] > v.upper + tol)
            out.push_back({"bounds", v.name, "value out of bounds"});
        if (v.kind == VarKind::binary && std::abs(x[i] - std::round(x[i])) > tol)
            out.push_back({"integrality", v.name, "binary variable not integral"});
    }
    for (const auto& c : model.constraints) {
        double lhs = 0.0;
        double scale = 1.0;
        for (const auto& t : c.terms) {
            lhs += t.coeff * x[t.var];
            scale = std::max(scale, std::abs(t.coeff * x[t.var]));
        }
        const double eps = tol * scale;
        const bool ok = c.rel == Relation::le   ? lhs <= c.rhs + eps
                        : c.rel == Relation::ge ? lhs >= c.rhs - eps
                                                : std::abs(lhs - c.rhs) <= eps;
        if (!ok)
            out.push_back({c.name, "-",
                           "lhs " + std::to_string(lhs) + " violates rhs " +
                               std::to_string(c.rhs)});
    }
    return out;
}

} // namespace sarplan
