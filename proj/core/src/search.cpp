#include "vlp/search.hpp"

#include "vlp/errors.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace vlp {

namespace {

double sanitize(double v) { return std::isfinite(v) ? v : std::numeric_limits<double>::infinity(); }

double axis_spacing(double lo, double hi, int n) { return n > 1 ? (hi - lo) / (n - 1) : hi - lo; }

// One exploratory sweep over the three axes around `x`.
void explore(const Objective& f, const Box& box, Vec3& x, double& fx, const Vec3& step) {
    for (int axis = 0; axis < 3; ++axis) {
        for (double sign : {1.0, -1.0}) {
            Vec3 trial = x;
            trial[axis] += sign * step[axis];
            trial = box.clamp(trial);
            if (trial[axis] == x[axis]) continue;
            const double ft = sanitize(f(trial));
            if (ft < fx) {
                x = trial;
                fx = ft;
                break;
            }
        }
    }
}

}  // namespace

Lattice::Lattice(const Box& box, GridShape shape) : box_(box), shape_(shape) {
    if (shape.nx < 1 || shape.ny < 1 || shape.nz < 1) {
        throw ConfigError("search grid needs at least one point per axis");
    }
    if (!(box.volume() > 0.0)) throw ConfigError("search region is empty or degenerate");
    spacing_ = Vec3(axis_spacing(box.lo.x(), box.hi.x(), shape.nx),
                    axis_spacing(box.lo.y(), box.hi.y(), shape.ny),
                    axis_spacing(box.lo.z(), box.hi.z(), shape.nz));
}

Vec3 Lattice::point(std::size_t index) const {
    const std::size_t nz = shape_.nz;
    const std::size_t ny = shape_.ny;
    const std::size_t k = index % nz;
    const std::size_t j = (index / nz) % ny;
    const std::size_t i = index / (nz * ny);
    auto coord = [](double lo, double hi, std::size_t idx, int n) {
        if (n == 1) return 0.5 * (lo + hi);
        // Last point lands exactly on the upper face.
        return static_cast<int>(idx) == n - 1 ? hi : lo + (hi - lo) * double(idx) / double(n - 1);
    };
    return Vec3(coord(box_.lo.x(), box_.hi.x(), i, shape_.nx),
                coord(box_.lo.y(), box_.hi.y(), j, shape_.ny),
                coord(box_.lo.z(), box_.hi.z(), k, shape_.nz));
}

SearchResult pattern_search(const Objective& f, const Box& box, const Vec3& start,
                            double start_value, const Vec3& initial_step,
                            const SearchOptions& options) {
    Vec3 base = box.clamp(start);
    double fbase = sanitize(start_value);
    Vec3 step = initial_step;
    int iterations = 0;

    while (iterations < options.max_iterations && step.maxCoeff() >= options.step_tolerance) {
        Vec3 y = base;
        double fy = fbase;
        explore(f, box, y, fy, step);
        ++iterations;
        if (!(fy < fbase)) {
            step *= 0.5;
            continue;
        }
        // Pattern moves: keep extrapolating along the last successful
        // direction while exploration around the extrapolated point improves.
        while (fy < fbase && iterations < options.max_iterations) {
            const Vec3 direction = y - base;
            base = y;
            fbase = fy;
            Vec3 p = box.clamp(base + direction);
            double fp = sanitize(f(p));
            explore(f, box, p, fp, step);
            ++iterations;
            y = p;
            fy = fp;
        }
    }

    SearchResult out;
    out.point = base;
    out.value = fbase;
    out.stats.refine_iterations = iterations;
    return out;
}

SearchResult refine_best(const Objective& f, const Lattice& lattice,
                         std::span<const double> grid_values, const SearchOptions& options) {
    std::size_t best = grid_values.size();
    double best_value = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < grid_values.size(); ++i) {
        const double v = grid_values[i];
        if (std::isfinite(v) && v < best_value) {
            best_value = v;
            best = i;
        }
    }
    if (best == grid_values.size()) throw DomainError("objective is not finite at any grid point");

    SearchResult out = pattern_search(f, lattice.box(), lattice.point(best), best_value,
                                      0.5 * lattice.spacing(), options);
    out.stats.grid_points = grid_values.size();
    return out;
}

SearchResult grid_refine_minimize(const Objective& f, const Box& box, const SearchOptions& options) {
    const Lattice lattice(box, options.grid);
    std::vector<double> values(lattice.size());
    for (std::size_t i = 0; i < values.size(); ++i) values[i] = sanitize(f(lattice.point(i)));
    return refine_best(f, lattice, values, options);
}

}  // namespace vlp
