#pragma once

#include <cmath>
#include <compare>
#include <stdexcept>
#include <vector>

namespace sarplan {

// One grid cell: a is the column, b the row.
struct Cell {
    int a = 0;
    int b = 0;

    friend bool operator==(const Cell&, const Cell&) = default;
    friend auto operator<=>(const Cell&, const Cell&) = default;
};

// Discretized exploration area. Cells are squares of cell_size meters, the
// base station occupies one cell. Immutable after construction; safe to share
// across threads.
struct GridMap {
    int width_cells = 0;
    int height_cells = 0;
    double cell_size = 0.0;      // meters
    Cell base_station{0, 0};
    double terrain_factor = 1.0; // scales motion power, >= 0

    int total_cells() const { return width_cells * height_cells; }

    bool contains(Cell c) const {
        return c.a >= 0 && c.a < width_cells && c.b >= 0 && c.b < height_cells;
    }

    // Row-major index; the canonical cell ordering everywhere.
    int index_of(Cell c) const { return c.b * width_cells + c.a; }

    Cell cell_at(int index) const {
        return Cell{index % width_cells, index / width_cells};
    }
};

// Discretizes a rectangular area so that one cell is traversed in exactly one
// epoch at the given speed: cell_size = robot_speed * epoch_duration.
inline GridMap build_grid(double area_width, double area_height,
                          double robot_speed, double epoch_duration,
                          Cell base_station, double terrain_factor = 1.0) {
    if (area_width <= 0.0 || area_height <= 0.0)
        throw std::invalid_argument("build_grid: area dimensions must be positive");
    if (robot_speed <= 0.0)
        throw std::invalid_argument("build_grid: robot_speed must be positive");
    if (epoch_duration <= 0.0)
        throw std::invalid_argument("build_grid: epoch_duration must be positive");
    if (terrain_factor < 0.0)
        throw std::invalid_argument("build_grid: terrain_factor must be >= 0");

    GridMap g;
    g.cell_size = robot_speed * epoch_duration;
    g.width_cells = static_cast<int>(std::ceil(area_width / g.cell_size - 1e-12));
    g.height_cells = static_cast<int>(std::ceil(area_height / g.cell_size - 1e-12));
    g.terrain_factor = terrain_factor;
    g.base_station = base_station;
    if (!g.contains(base_station))
        throw std::invalid_argument("build_grid: base_station outside grid");
    return g;
}

// The cell itself plus its up-to-8 surrounding cells (staying put is a legal
// move). Out-of-grid entries are dropped. Sorted by row-major index.
inline std::vector<Cell> neighbors(const GridMap& g, Cell c) {
    if (!g.contains(c))
        throw std::invalid_argument("neighbors: cell outside grid");
    std::vector<Cell> out;
    out.reserve(9);
    for (int db = -1; db <= 1; ++db) {
        for (int da = -1; da <= 1; ++da) {
            Cell n{c.a + da, c.b + db};
            if (g.contains(n)) out.push_back(n);
        }
    }
    return out;
}

// Euclidean distance between the centers of c and the base-station cell.
inline double base_distance(const GridMap& g, Cell c) {
    if (!g.contains(c))
        throw std::invalid_argument("base_distance: cell outside grid");
    const double da = (c.a - g.base_station.a) * g.cell_size;
    const double db = (c.b - g.base_station.b) * g.cell_size;
    return std::hypot(da, db);
}

} // namespace sarplan
