#include "orlicz/operators.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <deque>
#include <limits>
#include <stdexcept>

namespace orlicz {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// weight c_s with value(Q) = c_s * cube_abs_sum(Q); alpha = 0 gives the
// plain average
double side_factor(const Grid& g, int side, double alpha) {
    Cube q{{0, 0}, side};
    double vol = cube_volume(g, q);
    return std::pow(vol, alpha / g.dim() - 1.0) * g.cell_volume();
}

void check_alpha(double alpha, int n, bool strict_lower) {
    if (alpha < 0.0 || alpha >= n || (strict_lower && alpha == 0.0))
        throw std::invalid_argument("alpha must lie in " +
                                    std::string(strict_lower ? "(0, n)" : "[0, n)"));
}

struct MaxState {
    std::vector<double> val;
    std::vector<Cube>* wit = nullptr;

    void update(std::int64_t i, double v, const Cube& q) {
        if (v > val[i]) {
            val[i] = v;
            if (wit) (*wit)[i] = q;
        }
    }
};

// paint max over anchors a with cell in [a, a+side) using a monotone deque
void sliding_paint_1d(const Grid& g, int side, const std::vector<double>& A,
                      MaxState& st) {
    const int res = g.res(0);
    const int na = res - side + 1;
    std::deque<int> dq;
    for (int c = 0; c < res; ++c) {
        int enter = c;
        if (enter < na) {
            while (!dq.empty() && A[dq.back()] <= A[enter]) dq.pop_back();
            dq.push_back(enter);
        }
        int leave = c - side;
        if (!dq.empty() && dq.front() <= leave) dq.pop_front();
        if (!dq.empty()) st.update(c, A[dq.front()], Cube{{dq.front(), 0}, side});
    }
}

void sliding_paint_2d(const Grid& g, int side, const std::vector<double>& A,
                      MaxState& st) {
    const int rx = g.res(0), ry = g.res(1);
    const int nax = rx - side + 1, nay = ry - side + 1;
    // row pass: per anchor row, max over ax windows; keep the argmax anchor
    std::vector<double> R(static_cast<std::size_t>(nay) * rx, 0.0);
    std::vector<int> Rarg(st.wit ? R.size() : 0, 0);
    for (int ay = 0; ay < nay; ++ay) {
        std::deque<int> dq;
        const double* row = A.data() + static_cast<std::size_t>(ay) * nax;
        for (int c = 0; c < rx; ++c) {
            if (c < nax) {
                while (!dq.empty() && row[dq.back()] <= row[c]) dq.pop_back();
                dq.push_back(c);
            }
            if (!dq.empty() && dq.front() <= c - side) dq.pop_front();
            if (!dq.empty()) {
                R[static_cast<std::size_t>(ay) * rx + c] = row[dq.front()];
                if (st.wit) Rarg[static_cast<std::size_t>(ay) * rx + c] = dq.front();
            } else {
                R[static_cast<std::size_t>(ay) * rx + c] = -1.0; // no valid anchor
            }
        }
    }
    // column pass
    for (int x = 0; x < rx; ++x) {
        std::deque<int> dq;
        auto Rv = [&](int ay) { return R[static_cast<std::size_t>(ay) * rx + x]; };
        for (int y = 0; y < ry; ++y) {
            if (y < nay) {
                while (!dq.empty() && Rv(dq.back()) <= Rv(y)) dq.pop_back();
                dq.push_back(y);
            }
            if (!dq.empty() && dq.front() <= y - side) dq.pop_front();
            if (!dq.empty() && Rv(dq.front()) >= 0.0) {
                int ay = dq.front();
                int ax = st.wit ? Rarg[static_cast<std::size_t>(ay) * rx + x] : 0;
                st.update(g.flat({x, y}), Rv(ay), Cube{{ax, ay}, side});
            }
        }
    }
}

// generic per-cube painting: value(Q) applied to every cell of Q
template <typename ValueFn>
void paint_cubes(const Grid& g, const std::vector<Cube>& cubes, ValueFn value,
                 MaxState& st) {
    const int dim = g.dim();
    for (const Cube& q : cubes) {
        double v = value(q);
        for (int y = q.anchor[1]; y < q.anchor[1] + (dim == 2 ? q.side : 1); ++y)
            for (int x = q.anchor[0]; x < q.anchor[0] + q.side; ++x)
                st.update(g.flat({x, y}), v, q);
    }
}

OperatorOutput maximal_like(const GridFunction& f, double alpha, const CubeFamily& family,
                            bool centered, bool record_witness) {
    auto t0 = Clock::now();
    const Grid& g = f.grid();
    if (!(family.grid() == g))
        throw std::invalid_argument("maximal operator: family grid mismatch");
    Accumulator acc(f);

    MaxState st;
    st.val.assign(g.cell_count(), 0.0);
    std::vector<Cube> wit;
    if (record_witness) {
        wit.assign(g.cell_count(), Cube{});
        st.wit = &wit;
    }

    if (centered) {
        // only odd-sided cubes whose center cell is the point
        for (std::int64_t i = 0; i < g.cell_count(); ++i) {
            auto c = g.unflat(i);
            for (int s : family.sides()) {
                if (s % 2 == 0) continue;
                int r = (s - 1) / 2;
                Cube q{{c[0] - r, c[1] - r}, s};
                bool ok = q.anchor[0] >= 0 && q.anchor[0] + s <= g.res(0);
                if (g.dim() == 2) ok = ok && q.anchor[1] >= 0 && q.anchor[1] + s <= g.res(1);
                if (g.dim() == 1) q.anchor[1] = 0;
                if (!ok) continue;
                st.update(i, side_factor(g, s, alpha) * acc.cube_abs_sum(q), q);
            }
        }
    } else if (family.kind() == CubeKind::Sliding && !record_witness) {
        for (int s : family.sides()) {
            double c_s = side_factor(g, s, alpha);
            const int nax = g.res(0) - s + 1;
            const int nay = g.dim() == 2 ? g.res(1) - s + 1 : 1;
            std::vector<double> A(static_cast<std::size_t>(nax) * nay);
            for (int ay = 0; ay < nay; ++ay)
                for (int ax = 0; ax < nax; ++ax)
                    A[static_cast<std::size_t>(ay) * nax + ax] =
                        c_s * acc.cube_abs_sum(Cube{{ax, ay}, s});
            if (g.dim() == 1)
                sliding_paint_1d(g, s, A, st);
            else
                sliding_paint_2d(g, s, A, st);
        }
    } else if (family.kind() == CubeKind::Dyadic) {
        for (std::int64_t i = 0; i < g.cell_count(); ++i) {
            for (const Cube& q : family.cubes_containing(g.unflat(i)))
                st.update(i, side_factor(g, q.side, alpha) * acc.cube_abs_sum(q), q);
        }
    } else {
        paint_cubes(g, family.enumerate(),
                    [&](const Cube& q) {
                        return side_factor(g, q.side, alpha) * acc.cube_abs_sum(q);
                    },
                    st);
    }

    OperatorOutput out{GridFunction(g, std::move(st.val)), std::nullopt, 0.0};
    if (record_witness) out.witness = std::move(wit);
    out.elapsed_seconds = seconds_since(t0);
    return out;
}

// kernel value at a displacement, in cells; zero displacement handled apart
double kernel_at(const Grid& g, int dx, int dy, double alpha) {
    double r = g.dim() == 1 ? std::abs(dx) * g.cell_size(0)
                            : std::hypot(dx * g.cell_size(0), dy * g.cell_size(1));
    return std::pow(r, alpha - g.dim());
}

// cell-averaged kernel at zero displacement.  The kernel is integrable at
// the origin for alpha > 0 and scale-invariant: the integral over the square
// [-s,s]^n equals s^alpha times a constant, so integrate the smooth annulus
// [-1,1]^n minus [-1/2,1/2]^n by oversampled midpoint quadrature and sum the
// geometric series over the shrinking center squares.
double self_kernel(const Grid& g, double alpha) {
    const int n = g.dim();
    double h0 = g.cell_size(0);
    double h1 = n == 2 ? g.cell_size(1) : h0;
    if (n == 2 && std::abs(h0 - h1) > 1e-15 * h0) {
        // non-square cells: plain oversampled midpoint fallback
        const int m = 2048;
        double sum = 0.0;
        for (int j = 0; j < m; ++j)
            for (int i = 0; i < m; ++i) {
                double zx = (-0.5 + (i + 0.5) / m) * h0;
                double zy = (-0.5 + (j + 0.5) / m) * h1;
                sum += std::pow(std::hypot(zx, zy), alpha - 2.0);
            }
        return sum / (static_cast<double>(m) * m);
    }
    double annulus = 0.0;
    if (n == 1) {
        const int m = 4096;
        // two symmetric smooth pieces [1/2, 1]
        for (int i = 0; i < m; ++i) {
            double z = 0.5 + 0.5 * (i + 0.5) / m;
            annulus += 2.0 * std::pow(z, alpha - 1.0) * (0.5 / m);
        }
    } else {
        const int m = 2048;
        for (int j = 0; j < m; ++j)
            for (int i = 0; i < m; ++i) {
                double zx = -1.0 + 2.0 * (i + 0.5) / m;
                double zy = -1.0 + 2.0 * (j + 0.5) / m;
                if (std::max(std::abs(zx), std::abs(zy)) < 0.5) continue;
                annulus += std::pow(std::hypot(zx, zy), alpha - 2.0) * (4.0 / (m * double(m)));
            }
    }
    double unit = annulus / (1.0 - std::pow(2.0, -alpha));
    double integral = unit * std::pow(h0 / 2.0, alpha);
    return integral / g.cell_volume();
}

void check_pair_cap(const Grid& g, bool override_cap) {
    double pairs = static_cast<double>(g.cell_count()) * static_cast<double>(g.cell_count());
    if (pairs > static_cast<double>(1LL << 26) && !override_cap)
        throw std::invalid_argument(
            "riesz: more than 2^26 point pairs; pass the override flag to proceed");
}

// displacement-indexed kernel table: K[|dx|] or K[|dy|*W + |dx|]
std::vector<double> kernel_table(const Grid& g, double alpha) {
    const int rx = g.res(0), ry = g.dim() == 2 ? g.res(1) : 1;
    std::vector<double> K(static_cast<std::size_t>(rx) * ry);
    for (int dy = 0; dy < ry; ++dy)
        for (int dx = 0; dx < rx; ++dx)
            K[static_cast<std::size_t>(dy) * rx + dx] =
                (dx == 0 && dy == 0) ? 0.0 : kernel_at(g, dx, dy, alpha);
    K[0] = self_kernel(g, alpha);
    return K;
}

GridFunction convolve(const GridFunction& f, const std::vector<double>& K) {
    const Grid& g = f.grid();
    const int rx = g.res(0), ry = g.dim() == 2 ? g.res(1) : 1;
    double cellvol = g.cell_volume();
    std::vector<double> out(g.cell_count(), 0.0);
    for (int y = 0; y < ry; ++y)
        for (int x = 0; x < rx; ++x) {
            double s = 0.0;
            for (int yy = 0; yy < ry; ++yy) {
                const double* Krow = K.data() + static_cast<std::size_t>(std::abs(y - yy)) * rx;
                const double* frow = f.values().data() + static_cast<std::size_t>(yy) * rx;
                for (int xx = 0; xx < rx; ++xx) s += Krow[std::abs(x - xx)] * frow[xx];
            }
            out[static_cast<std::size_t>(y) * rx + x] = s * cellvol;
        }
    return GridFunction(g, std::move(out));
}

} // namespace

OperatorOutput hl_maximal(const GridFunction& f, const CubeFamily& family, bool centered,
                          bool record_witness) {
    return maximal_like(f, 0.0, family, centered, record_witness);
}

OperatorOutput fractional_maximal(const GridFunction& f, double alpha,
                                  const CubeFamily& family, bool centered,
                                  bool record_witness) {
    check_alpha(alpha, f.grid().dim(), false);
    return maximal_like(f, alpha, family, centered, record_witness);
}

OperatorOutput sharp_maximal(const GridFunction& f, const CubeFamily& family,
                             bool record_witness) {
    auto t0 = Clock::now();
    const Grid& g = f.grid();
    if (!(family.grid() == g))
        throw std::invalid_argument("sharp_maximal: family grid mismatch");
    Accumulator acc(f);

    MaxState st;
    st.val.assign(g.cell_count(), 0.0);
    std::vector<Cube> wit;
    if (record_witness) {
        wit.assign(g.cell_count(), Cube{});
        st.wit = &wit;
    }

    const int dim = g.dim();
    auto oscillation = [&](const Cube& q) {
        double cells = acc.cell_count(q);
        double mean = acc.cube_sum(q) / cells;
        double s = 0.0;
        for (int y = q.anchor[1]; y < q.anchor[1] + (dim == 2 ? q.side : 1); ++y)
            for (int x = q.anchor[0]; x < q.anchor[0] + q.side; ++x)
                s += std::abs(f[g.flat({x, y})] - mean);
        return s / cells;
    };
    paint_cubes(g, family.enumerate(), oscillation, st);

    OperatorOutput out{GridFunction(g, std::move(st.val)), std::nullopt, 0.0};
    if (record_witness) out.witness = std::move(wit);
    out.elapsed_seconds = seconds_since(t0);
    return out;
}

OperatorOutput maximal_commutator(const GridFunction& b, const GridFunction& f,
                                  double alpha, const CubeFamily& family) {
    auto t0 = Clock::now();
    const Grid& g = f.grid();
    if (!(b.grid() == g)) throw std::invalid_argument("maximal_commutator: grid mismatch");
    check_alpha(alpha, g.dim(), false);

    MaxState st;
    st.val.assign(g.cell_count(), 0.0);
    const int dim = g.dim();

    std::vector<std::pair<double, double>> entries; // (b value, |f| weight)
    std::vector<double> prefW, prefB;
    for (const Cube& q : family.enumerate()) {
        entries.clear();
        for (int y = q.anchor[1]; y < q.anchor[1] + (dim == 2 ? q.side : 1); ++y)
            for (int x = q.anchor[0]; x < q.anchor[0] + q.side; ++x) {
                std::int64_t i = g.flat({x, y});
                entries.emplace_back(b[i], std::abs(f[i]));
            }
        std::sort(entries.begin(), entries.end());
        const std::size_t m = entries.size();
        prefW.assign(m + 1, 0.0);
        prefB.assign(m + 1, 0.0);
        for (std::size_t k = 0; k < m; ++k) {
            prefW[k + 1] = prefW[k] + entries[k].second;
            prefB[k + 1] = prefB[k] + entries[k].first * entries[k].second;
        }
        double c_s = side_factor(g, q.side, alpha);
        double Wtot = prefW[m], Btot = prefB[m];
        for (int y = q.anchor[1]; y < q.anchor[1] + (dim == 2 ? q.side : 1); ++y)
            for (int x = q.anchor[0]; x < q.anchor[0] + q.side; ++x) {
                std::int64_t i = g.flat({x, y});
                double bx = b[i];
                // entries with b(y) <= b(x)
                auto it = std::upper_bound(entries.begin(), entries.end(),
                                           std::make_pair(bx, std::numeric_limits<double>::infinity()));
                std::size_t k = static_cast<std::size_t>(it - entries.begin());
                double sum = bx * (prefW[k] - (Wtot - prefW[k])) -
                             (prefB[k] - (Btot - prefB[k]));
                st.update(i, c_s * sum, q);
            }
    }

    OperatorOutput out{GridFunction(g, std::move(st.val)), std::nullopt, 0.0};
    out.elapsed_seconds = seconds_since(t0);
    return out;
}

OperatorOutput fm_commutator(const GridFunction& b, const GridFunction& f, double alpha,
                             const CubeFamily& family) {
    auto t0 = Clock::now();
    const Grid& g = f.grid();
    if (!(b.grid() == g)) throw std::invalid_argument("fm_commutator: grid mismatch");
    check_alpha(alpha, g.dim(), false);

    std::vector<double> bf(g.cell_count());
    for (std::int64_t i = 0; i < g.cell_count(); ++i) bf[i] = b[i] * f[i];
    GridFunction mbf = maximal_like(GridFunction(g, std::move(bf)), alpha, family,
                                    false, false)
                           .result;
    GridFunction mf = maximal_like(f, alpha, family, false, false).result;

    std::vector<double> out(g.cell_count());
    for (std::int64_t i = 0; i < g.cell_count(); ++i) out[i] = mbf[i] - b[i] * mf[i];
    OperatorOutput res{GridFunction(g, std::move(out)), std::nullopt, 0.0};
    res.elapsed_seconds = seconds_since(t0);
    return res;
}

OperatorOutput riesz_potential(const GridFunction& f, double alpha, bool override_cap) {
    auto t0 = Clock::now();
    const Grid& g = f.grid();
    check_alpha(alpha, g.dim(), true);
    check_pair_cap(g, override_cap);
    OperatorOutput out{convolve(f, kernel_table(g, alpha)), std::nullopt, 0.0};
    out.elapsed_seconds = seconds_since(t0);
    return out;
}

OperatorOutput riesz_commutator(const GridFunction& b, const GridFunction& f, double alpha,
                                bool override_cap) {
    auto t0 = Clock::now();
    const Grid& g = f.grid();
    if (!(b.grid() == g)) throw std::invalid_argument("riesz_commutator: grid mismatch");
    check_alpha(alpha, g.dim(), true);
    check_pair_cap(g, override_cap);
    auto K = kernel_table(g, alpha);

    std::vector<double> bf(g.cell_count());
    for (std::int64_t i = 0; i < g.cell_count(); ++i) bf[i] = b[i] * f[i];
    GridFunction ibf = convolve(GridFunction(g, std::move(bf)), K);
    GridFunction iff = convolve(f, K);

    std::vector<double> out(g.cell_count());
    for (std::int64_t i = 0; i < g.cell_count(); ++i) out[i] = ibf[i] - b[i] * iff[i];
    OperatorOutput res{GridFunction(g, std::move(out)), std::nullopt, 0.0};
    res.elapsed_seconds = seconds_since(t0);
    return res;
}

OperatorOutput riesz_abs_commutator(const GridFunction& b, const GridFunction& f,
                                    double alpha, bool override_cap) {
    auto t0 = Clock::now();
    const Grid& g = f.grid();
    if (!(b.grid() == g)) throw std::invalid_argument("riesz_abs_commutator: grid mismatch");
    check_alpha(alpha, g.dim(), true);
    check_pair_cap(g, override_cap);
    auto K = kernel_table(g, alpha);

    const int rx = g.res(0), ry = g.dim() == 2 ? g.res(1) : 1;
    double cellvol = g.cell_volume();
    std::vector<double> out(g.cell_count(), 0.0);
    for (int y = 0; y < ry; ++y)
        for (int x = 0; x < rx; ++x) {
            std::int64_t i = static_cast<std::int64_t>(y) * rx + x;
            double bx = b[i];
            double s = 0.0;
            for (int yy = 0; yy < ry; ++yy) {
                const double* Krow = K.data() + static_cast<std::size_t>(std::abs(y - yy)) * rx;
                for (int xx = 0; xx < rx; ++xx) {
                    std::int64_t j = static_cast<std::int64_t>(yy) * rx + xx;
                    s += Krow[std::abs(x - xx)] * std::abs(bx - b[j]) * f[j];
                }
            }
            out[i] = s * cellvol;
        }
    OperatorOutput res{GridFunction(g, std::move(out)), std::nullopt, 0.0};
    res.elapsed_seconds = seconds_since(t0);
    return res;
}

GridFunction restricted_maximal(const GridFunction& f, double alpha,
                                const CubeFamily& family, const Cube& q0) {
    const Grid& g = f.grid();
    check_alpha(alpha, g.dim(), false);
    Accumulator acc(f);
    MaxState st;
    st.val.assign(g.cell_count(), 0.0);
    paint_cubes(g, family.subcubes_of(q0),
                [&](const Cube& q) {
                    return side_factor(g, q.side, alpha) * acc.cube_abs_sum(q);
                },
                st);
    return GridFunction(g, std::move(st.val));
}

} // namespace orlicz
