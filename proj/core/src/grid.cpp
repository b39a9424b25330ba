#include "orlicz/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace orlicz {

double Point::norm() const {
    return dim == 1 ? std::abs(c[0]) : std::hypot(c[0], c[1]);
}

bool Box::contains(const Point& p) const {
    if (p.dim != dim) return false;
    for (int a = 0; a < dim; ++a)
        if (p.c[a] < lo[a] || p.c[a] > hi[a]) return false;
    return true;
}

double Box::volume() const {
    double v = 1.0;
    for (int a = 0; a < dim; ++a) v *= hi[a] - lo[a];
    return v;
}

Grid::Grid(const Box& box, int resolution)
    : Grid(box, std::array<int, 2>{resolution, resolution}) {}

Grid::Grid(const Box& box, std::array<int, 2> resolution) : box_(box), res_(resolution) {
    if (box.dim != 1 && box.dim != 2)
        throw std::invalid_argument("Grid: dimension must be 1 or 2");
    cells_ = 1;
    cellvol_ = 1.0;
    for (int a = 0; a < box.dim; ++a) {
        if (res_[a] < 2) throw std::invalid_argument("Grid: resolution must be >= 2 per axis");
        double w = box.hi[a] - box.lo[a];
        if (!(w > 0.0)) throw std::invalid_argument("Grid: degenerate box");
        h_[a] = w / res_[a];
        cells_ *= res_[a];
        cellvol_ *= h_[a];
    }
    if (box.dim == 1) res_[1] = 1;
}

Point Grid::cell_center(std::int64_t i) const {
    auto idx = unflat(i);
    Point p;
    p.dim = box_.dim;
    for (int a = 0; a < box_.dim; ++a) p.c[a] = box_.lo[a] + (idx[a] + 0.5) * h_[a];
    return p;
}

std::array<int, 2> Grid::cell_of(const Point& p) const {
    std::array<int, 2> idx{0, 0};
    for (int a = 0; a < box_.dim; ++a) {
        int i = static_cast<int>(std::floor((p.c[a] - box_.lo[a]) / h_[a]));
        idx[a] = std::clamp(i, 0, res_[a] - 1);
    }
    return idx;
}

bool Grid::operator==(const Grid& o) const {
    return box_.dim == o.box_.dim && res_ == o.res_ && box_.lo == o.box_.lo &&
           box_.hi == o.box_.hi;
}

GridFunction::GridFunction(const Grid& grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
    if (static_cast<std::int64_t>(values_.size()) != grid.cell_count())
        throw std::invalid_argument("GridFunction: value count must equal cell count");
}

GridFunction::GridFunction(const Grid& grid, const std::function<double(const Point&)>& f)
    : grid_(grid) {
    values_.resize(grid.cell_count());
    for (std::int64_t i = 0; i < grid.cell_count(); ++i) values_[i] = f(grid.cell_center(i));
}

GridFunction GridFunction::zeros(const Grid& grid) {
    return GridFunction(grid, std::vector<double>(grid.cell_count(), 0.0));
}

double GridFunction::max_abs() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

void GridFunction::save_csv(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out.precision(17);
    for (std::size_t i = 0; i < values_.size(); ++i) out << i << "," << values_[i] << "\n";
}

GridFunction GridFunction::load_csv(const Grid& grid, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::vector<double> vals(grid.cell_count(), 0.0);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::int64_t idx;
        char comma;
        double v;
        if (ss >> idx >> comma >> v) {
            if (idx < 0 || idx >= grid.cell_count())
                throw std::runtime_error("csv index out of range");
            vals[idx] = v;
        }
    }
    return GridFunction(grid, std::move(vals));
}

namespace {

nlohmann::json grid_header(const Grid& g) {
    nlohmann::json j;
    j["box"]["dim"] = g.dim();
    for (int a = 0; a < g.dim(); ++a) {
        j["box"]["lo"].push_back(g.box().lo[a]);
        j["box"]["hi"].push_back(g.box().hi[a]);
    }
    for (int a = 0; a < g.dim(); ++a) j["resolution"].push_back(g.res(a));
    return j;
}

Grid grid_from_header(const nlohmann::json& j) {
    Box box;
    box.dim = j.at("box").at("dim").get<int>();
    std::array<int, 2> res{2, 2};
    for (int a = 0; a < box.dim; ++a) {
        box.lo[a] = j.at("box").at("lo").at(a).get<double>();
        box.hi[a] = j.at("box").at("hi").at(a).get<double>();
        res[a] = j.at("resolution").at(a).get<int>();
    }
    return Grid(box, res);
}

} // namespace

void GridFunction::save_binary(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path);
    std::string header = grid_header(grid_).dump();
    std::uint64_t len = header.size();
    out.write(reinterpret_cast<const char*>(&len), sizeof(len));
    out.write(header.data(), static_cast<std::streamsize>(len));
    out.write(reinterpret_cast<const char*>(values_.data()),
              static_cast<std::streamsize>(values_.size() * sizeof(double)));
}

GridFunction GridFunction::load_binary(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::uint64_t len = 0;
    in.read(reinterpret_cast<char*>(&len), sizeof(len));
    std::string header(len, '\0');
    in.read(header.data(), static_cast<std::streamsize>(len));
    Grid grid = grid_from_header(nlohmann::json::parse(header));
    std::vector<double> vals(grid.cell_count());
    in.read(reinterpret_cast<char*>(vals.data()),
            static_cast<std::streamsize>(vals.size() * sizeof(double)));
    if (!in) throw std::runtime_error("truncated grid function file: " + path);
    return GridFunction(grid, std::move(vals));
}

CubeFamily CubeFamily::dyadic(const Grid& grid, int levels) {
    if (grid.dim() == 2 && grid.res(0) != grid.res(1))
        throw std::invalid_argument("dyadic family requires equal per-axis resolution");
    if (levels < 1) throw std::invalid_argument("dyadic family: levels must be >= 1");
    std::vector<int> sides;
    int side = grid.res(0);
    for (int k = 0; k < levels && side >= 1; ++k) {
        sides.push_back(side);
        if (side == 1) break;
        side /= 2;
    }
    std::sort(sides.begin(), sides.end());
    return CubeFamily(grid, CubeKind::Dyadic, std::move(sides));
}

CubeFamily CubeFamily::sliding(const Grid& grid, std::vector<int> radii) {
    std::vector<int> sides;
    int maxres = std::min(grid.res(0), grid.dim() == 2 ? grid.res(1) : grid.res(0));
    for (int r : radii) {
        if (r < 0) throw std::invalid_argument("sliding family: negative radius");
        int side = 2 * r + 1;
        if (side <= maxres) sides.push_back(side);
    }
    std::sort(sides.begin(), sides.end());
    sides.erase(std::unique(sides.begin(), sides.end()), sides.end());
    if (sides.empty()) throw std::invalid_argument("sliding family: empty");
    return CubeFamily(grid, CubeKind::Sliding, std::move(sides));
}

CubeFamily CubeFamily::all_subcubes(const Grid& grid) {
    int maxres = std::min(grid.res(0), grid.dim() == 2 ? grid.res(1) : grid.res(0));
    std::vector<int> sides(maxres);
    for (int s = 1; s <= maxres; ++s) sides[s - 1] = s;
    return CubeFamily(grid, CubeKind::AllSubcubes, std::move(sides));
}

std::vector<Cube> CubeFamily::enumerate() const {
    std::vector<Cube> out;
    const int dim = grid_.dim();
    for (int s : sides_) {
        const int stride = anchor_stride(s);
        for (int ay = 0; ay + (dim == 2 ? s : 0) <= (dim == 2 ? grid_.res(1) : 0);
             ay += stride) {
            for (int ax = 0; ax + s <= grid_.res(0); ax += stride) {
                out.push_back(Cube{{ax, ay}, s});
            }
            if (dim == 1) break;
        }
    }
    return out;
}

std::int64_t CubeFamily::count() const {
    std::int64_t n = 0;
    const int dim = grid_.dim();
    for (int s : sides_) {
        const int stride = anchor_stride(s);
        std::int64_t per_axis_x = (grid_.res(0) - s) / stride + 1;
        std::int64_t per_axis_y = dim == 2 ? (grid_.res(1) - s) / stride + 1 : 1;
        n += per_axis_x * per_axis_y;
    }
    return n;
}

std::vector<Cube> CubeFamily::cubes_containing(std::array<int, 2> cell) const {
    std::vector<Cube> out;
    const int dim = grid_.dim();
    for (int s : sides_) {
        const int stride = anchor_stride(s);
        // anchors a with a <= cell < a+s, snapped to the stride lattice
        auto range = [&](int c, int res) {
            int lo = std::max(0, c - s + 1);
            int hi = std::min(c, res - s);
            if (stride > 1) { // dyadic: unique aligned anchor
                lo = (c / stride) * stride;
                hi = (lo + s <= res) ? lo : lo - 1;
            }
            return std::pair<int, int>{lo, hi};
        };
        auto [lox, hix] = range(cell[0], grid_.res(0));
        if (lox > hix) continue;
        if (dim == 1) {
            for (int ax = lox; ax <= hix; ++ax) out.push_back(Cube{{ax, 0}, s});
        } else {
            auto [loy, hiy] = range(cell[1], grid_.res(1));
            for (int ay = loy; ay <= hiy; ++ay)
                for (int ax = lox; ax <= hix; ++ax) out.push_back(Cube{{ax, ay}, s});
        }
    }
    return out;
}

std::vector<Cube> CubeFamily::subcubes_of(const Cube& q) const {
    std::vector<Cube> out;
    const int dim = grid_.dim();
    bool has_singletons = false;
    for (int s : sides_) {
        if (s > q.side) break;
        if (s == 1) has_singletons = true;
        const int stride = anchor_stride(s);
        auto axis_anchors = [&](int lo) {
            std::vector<int> v;
            int first = stride > 1 ? ((lo + stride - 1) / stride) * stride : lo;
            for (int a = first; a + s <= lo + q.side; a += stride) v.push_back(a);
            return v;
        };
        auto ax = axis_anchors(q.anchor[0]);
        if (dim == 1) {
            for (int a : ax) out.push_back(Cube{{a, 0}, s});
        } else {
            auto ay = axis_anchors(q.anchor[1]);
            for (int y : ay)
                for (int x : ax) out.push_back(Cube{{x, y}, s});
        }
    }
    if (!has_singletons) {
        // singleton cells always participate in restricted maximal functions
        if (dim == 1) {
            for (int a = q.anchor[0]; a < q.anchor[0] + q.side; ++a)
                out.push_back(Cube{{a, 0}, 1});
        } else {
            for (int y = q.anchor[1]; y < q.anchor[1] + q.side; ++y)
                for (int x = q.anchor[0]; x < q.anchor[0] + q.side; ++x)
                    out.push_back(Cube{{x, y}, 1});
        }
    }
    return out;
}

std::string CubeFamily::kind_name() const {
    switch (kind_) {
    case CubeKind::Dyadic: return "dyadic";
    case CubeKind::Sliding: return "sliding";
    case CubeKind::AllSubcubes: return "all";
    }
    return "?";
}

namespace {

// Inclusive 2D prefix table with one guard row/column of zeros.  Stored in
// extended precision so cube-sum differences stay within 1e-12 relative
// error on grids up to 2^20 cells.
std::vector<long double> build_prefix(const Grid& g, const std::vector<double>& vals,
                                      bool use_abs) {
    const int nx = g.res(0);
    const int ny = g.dim() == 2 ? g.res(1) : 1;
    std::vector<long double> p(static_cast<std::size_t>(nx + 1) * (ny + 1), 0.0L);
    auto P = [&](int x, int y) -> long double& {
        return p[static_cast<std::size_t>(y) * (nx + 1) + x];
    };
    for (int y = 1; y <= ny; ++y) {
        long double row = 0.0L;
        for (int x = 1; x <= nx; ++x) {
            double v = vals[static_cast<std::size_t>(y - 1) * nx + (x - 1)];
            row += use_abs ? std::abs(v) : v;
            P(x, y) = P(x, y - 1) + row;
        }
    }
    return p;
}

} // namespace

Accumulator::Accumulator(const GridFunction& f) : grid_(f.grid()) {
    psum_ = build_prefix(grid_, f.values(), false);
    pabs_ = build_prefix(grid_, f.values(), true);
}

double Accumulator::rect_sum(const std::vector<long double>& p, const Cube& q) const {
    const int nx = grid_.res(0);
    auto P = [&](int x, int y) { return p[static_cast<std::size_t>(y) * (nx + 1) + x]; };
    int x0 = q.anchor[0], x1 = q.anchor[0] + q.side;
    if (grid_.dim() == 1) return static_cast<double>(P(x1, 1) - P(x0, 1));
    int y0 = q.anchor[1], y1 = q.anchor[1] + q.side;
    return static_cast<double>(P(x1, y1) - P(x0, y1) - P(x1, y0) + P(x0, y0));
}

double Accumulator::cube_sum(const Cube& q) const { return rect_sum(psum_, q); }
double Accumulator::cube_abs_sum(const Cube& q) const { return rect_sum(pabs_, q); }

double Accumulator::cell_count(const Cube& q) const {
    double n = q.side;
    if (grid_.dim() == 2) n *= q.side;
    return n;
}

double Accumulator::cube_volume(const Cube& q) const { return orlicz::cube_volume(grid_, q); }

double cube_volume(const Grid& grid, const Cube& q) {
    double v = q.side * grid.cell_size(0);
    if (grid.dim() == 2) v *= q.side * grid.cell_size(1);
    return v;
}

double integrate(const GridFunction& f, const Cube& q) {
    const Grid& g = f.grid();
    double s = 0.0;
    if (g.dim() == 1) {
        for (int x = q.anchor[0]; x < q.anchor[0] + q.side; ++x) s += f[x];
    } else {
        for (int y = q.anchor[1]; y < q.anchor[1] + q.side; ++y)
            for (int x = q.anchor[0]; x < q.anchor[0] + q.side; ++x)
                s += f[g.flat({x, y})];
    }
    return s * g.cell_volume();
}

double integrate(const GridFunction& f) {
    double s = 0.0;
    for (double v : f.values()) s += v;
    return s * f.grid().cell_volume();
}

double cube_average(const Accumulator& acc, const Cube& q) {
    return acc.cube_abs_sum(q) / acc.cell_count(q);
}

} // namespace orlicz
