#ifndef ORLICZ_GRID_HPP
#define ORLICZ_GRID_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace orlicz {

/// Point in R^n, n in {1,2}.
struct Point {
    int dim = 1;
    std::array<double, 2> c{0.0, 0.0};

    static Point d1(double x) { return Point{1, {x, 0.0}}; }
    static Point d2(double x, double y) { return Point{2, {x, y}}; }
    double norm() const;
};

/// Axis-parallel box in R^n.
struct Box {
    int dim = 1;
    std::array<double, 2> lo{0.0, 0.0};
    std::array<double, 2> hi{1.0, 0.0};

    static Box interval(double a, double b) { return Box{1, {a, 0.0}, {b, 0.0}}; }
    static Box square(double a, double b) { return Box{2, {a, a}, {b, b}}; }
    bool contains(const Point& p) const;
    double volume() const;
};

/// Uniform cell grid over a box.  Cells are indexed row-major; values of
/// sampled functions live at cell centers.
class Grid {
public:
    Grid(const Box& box, int resolution);
    Grid(const Box& box, std::array<int, 2> resolution);

    const Box& box() const { return box_; }
    int dim() const { return box_.dim; }
    int res(int axis) const { return res_[axis]; }
    std::int64_t cell_count() const { return cells_; }
    double cell_size(int axis) const { return h_[axis]; }
    double cell_volume() const { return cellvol_; }

    std::int64_t flat(std::array<int, 2> idx) const {
        return box_.dim == 1 ? idx[0]
                             : static_cast<std::int64_t>(idx[1]) * res_[0] + idx[0];
    }
    std::array<int, 2> unflat(std::int64_t i) const {
        if (box_.dim == 1) return {static_cast<int>(i), 0};
        return {static_cast<int>(i % res_[0]), static_cast<int>(i / res_[0])};
    }
    Point cell_center(std::int64_t i) const;
    /// Cell containing a point ("Q ∋ x" means the cell of x belongs to Q).
    std::array<int, 2> cell_of(const Point& p) const;

    bool operator==(const Grid& o) const;

private:
    Box box_;
    std::array<int, 2> res_{1, 1};
    std::array<double, 2> h_{0.0, 0.0};
    std::int64_t cells_ = 0;
    double cellvol_ = 0.0;
};

/// Samples of a real-valued function at cell centers.  Immutable after
/// construction.
class GridFunction {
public:
    GridFunction(const Grid& grid, std::vector<double> values);
    GridFunction(const Grid& grid, const std::function<double(const Point&)>& f);
    static GridFunction zeros(const Grid& grid);

    const Grid& grid() const { return grid_; }
    const std::vector<double>& values() const { return values_; }
    double operator[](std::int64_t i) const { return values_[i]; }
    std::int64_t size() const { return static_cast<std::int64_t>(values_.size()); }

    double max_abs() const;

    /// CSV rows "index,value".
    void save_csv(const std::string& path) const;
    static GridFunction load_csv(const Grid& grid, const std::string& path);

    /// Little-endian binary: u64 header length, JSON header {box, resolution},
    /// then one f64 per cell.
    void save_binary(const std::string& path) const;
    static GridFunction load_binary(const std::string& path);

private:
    Grid grid_;
    std::vector<double> values_;
};

/// Axis-parallel cube snapped to grid cells.
struct Cube {
    std::array<int, 2> anchor{0, 0}; // lowest cell index per axis
    int side = 1;                    // side length in cells

    bool contains_cell(std::array<int, 2> cell, int dim) const {
        for (int a = 0; a < dim; ++a)
            if (cell[a] < anchor[a] || cell[a] >= anchor[a] + side) return false;
        return true;
    }
    bool inside(const Cube& outer, int dim) const {
        for (int a = 0; a < dim; ++a) {
            if (anchor[a] < outer.anchor[a]) return false;
            if (anchor[a] + side > outer.anchor[a] + outer.side) return false;
        }
        return true;
    }
};

enum class CubeKind { Dyadic, Sliding, AllSubcubes };

/// Enumerable family of cubes lying fully inside the grid.
class CubeFamily {
public:
    /// Dyadic: sides res/2^k for k = 0..levels-1 (clamped to >= 1), anchors
    /// aligned with stride equal to the side.  Requires per-axis resolutions
    /// to be equal.
    static CubeFamily dyadic(const Grid& grid, int levels);
    /// Sliding: sides 2r+1 for each radius r (plus side 1 singletons when
    /// radius 0 is listed), every anchor position.
    static CubeFamily sliding(const Grid& grid, std::vector<int> radii);
    /// Every (anchor, side) pair.  Intended for small grids.
    static CubeFamily all_subcubes(const Grid& grid);

    CubeKind kind() const { return kind_; }
    const Grid& grid() const { return grid_; }
    /// Distinct sides, increasing; anchor stride is side for dyadic, 1 otherwise.
    const std::vector<int>& sides() const { return sides_; }
    int anchor_stride(int side) const { return kind_ == CubeKind::Dyadic ? side : 1; }

    std::vector<Cube> enumerate() const;
    std::int64_t count() const;
    /// Cubes of the family containing the given cell.
    std::vector<Cube> cubes_containing(std::array<int, 2> cell) const;
    /// Family restricted to subcubes of Q; singleton cells of Q are always
    /// included so restricted maximal functions dominate |f| on Q.
    std::vector<Cube> subcubes_of(const Cube& q) const;

    std::string kind_name() const;

private:
    CubeFamily(const Grid& grid, CubeKind kind, std::vector<int> sides)
        : grid_(grid), kind_(kind), sides_(std::move(sides)) {}
    Grid grid_;
    CubeKind kind_;
    std::vector<int> sides_;
};

/// Prefix sums of a GridFunction and of its absolute values; O(1) cube sums.
class Accumulator {
public:
    explicit Accumulator(const GridFunction& f);

    const Grid& grid() const { return grid_; }
    /// Sum of raw values over the cube's cells.
    double cube_sum(const Cube& q) const;
    /// Sum of |values| over the cube's cells.
    double cube_abs_sum(const Cube& q) const;
    /// Mean of raw values over the cube.
    double cube_mean(const Cube& q) const { return cube_sum(q) / cell_count(q); }
    double cell_count(const Cube& q) const;
    /// Cube volume |Q| in measure units.
    double cube_volume(const Cube& q) const;

private:
    double rect_sum(const std::vector<long double>& p, const Cube& q) const;
    Grid grid_;
    // stored in extended precision so cube-sum differences stay accurate
    std::vector<long double> psum_, pabs_;
};

/// Measure of a grid cube.
double cube_volume(const Grid& grid, const Cube& q);

/// Midpoint-rule integral of f over a cube or the whole grid.
double integrate(const GridFunction& f, const Cube& q);
double integrate(const GridFunction& f);

/// Prefix-sum cube average of |values|, normalized by cell count.
double cube_average(const Accumulator& acc, const Cube& q);

} // namespace orlicz

#endif
