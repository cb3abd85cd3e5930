#pragma once

#include "vlp/geometry.hpp"

#include <cstddef>
#include <functional>
#include <span>

namespace vlp {

struct GridShape {
    int nx = 41;
    int ny = 41;
    int nz = 31;
};

/// Coarse uniform grid followed by a Hooke-Jeeves pattern search started at
/// the best grid point.
struct SearchOptions {
    GridShape grid;
    double step_tolerance = 1e-5;  // m
    int max_iterations = 200;
};

struct SearchStats {
    std::size_t grid_points = 0;
    int refine_iterations = 0;
};

struct SearchResult {
    Vec3 point = Vec3::Zero();
    double value = 0.0;
    SearchStats stats;
};

/// Objective to minimize. Non-finite return values mark inadmissible points.
using Objective = std::function<double(const Vec3&)>;

/// Uniform grid over a box including both faces. Flat indices run x-major,
/// so the first minimum in index order is the lexicographically smallest.
class Lattice {
public:
    Lattice(const Box& box, GridShape shape);

    std::size_t size() const { return static_cast<std::size_t>(shape_.nx) * shape_.ny * shape_.nz; }
    Vec3 point(std::size_t index) const;
    const Vec3& spacing() const { return spacing_; }
    const Box& box() const { return box_; }
    const GridShape& shape() const { return shape_; }

private:
    Box box_;
    GridShape shape_;
    Vec3 spacing_;
};

/// Pattern search inside `box` from `start`. Only strict improvements are
/// accepted, so the result is never worse than `start_value`.
SearchResult pattern_search(const Objective& f, const Box& box, const Vec3& start,
                            double start_value, const Vec3& initial_step,
                            const SearchOptions& options);

/// Picks the best finite entry of `grid_values` (one per lattice point) and
/// refines from it. Throws DomainError when no grid value is finite.
SearchResult refine_best(const Objective& f, const Lattice& lattice,
                         std::span<const double> grid_values, const SearchOptions& options);

/// Evaluates `f` on the lattice of `box` and refines the best point.
SearchResult grid_refine_minimize(const Objective& f, const Box& box, const SearchOptions& options);

}  // namespace vlp
