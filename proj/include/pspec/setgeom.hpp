#pragma once

#include <cstdint>
#include <functional>
#include <variant>
#include <vector>

#include "pspec/complex_matrix.hpp"
#include "pspec/levelsets.hpp"

namespace pspec {

// Finite point sets in C; duplicates permitted, order irrelevant, empty legal.
using PointSet = std::vector<cplx>;

// dist(z, S) = min |z - s|; +inf for empty S
double dist_point(cplx z, const PointSet& s);

// Hausdorff distance between finite sets. Both empty -> 0; exactly one
// empty -> +inf. The production implementation accelerates nearest-neighbor
// queries with a uniform bucket grid over the target set; the brute-force
// variant is the test oracle. Both compute identical squared distances, so
// results agree exactly.
double hausdorff(const PointSet& s, const PointSet& t);
double hausdorff_bruteforce(const PointSet& s, const PointSet& t);

// Bucket-grid nearest-neighbor index over a fixed point set.
class NearestNeighborIndex {
public:
    explicit NearestNeighborIndex(const PointSet& points);

    // squared distance to the nearest indexed point; +inf if the set is empty
    double nearest_sq(cplx z) const;
    double nearest(cplx z) const;

    bool empty() const { return points_.empty(); }

private:
    PointSet points_;
    double min_x_ = 0.0, min_y_ = 0.0, cell_ = 1.0;
    std::size_t nx_ = 0, ny_ = 0;
    std::vector<std::uint32_t> bucket_start_; // CSR layout over cells
    std::vector<std::uint32_t> bucket_items_;

    std::size_t cell_of(double v, double lo, std::size_t n) const;
};

// Exactly representable bounded regions (plus the whole plane).
struct Disk {
    cplx center;
    double radius = 0.0;
};
struct UnionOfDisks {
    std::vector<Disk> disks;
};
struct Annulus {
    cplx center;
    double r_in = 0.0;
    double r_out = 0.0;
};
struct Plane {};
using SymbolicRegion = std::variant<Disk, UnionOfDisks, Annulus, Plane>;

// distance from a point to the (closed) region
double region_distance(cplx z, const SymbolicRegion& r);

// Polar sample of a bounded region: radial and arc steps <= gap, so every
// region point lies within gap of a sample. Plane cannot be sampled.
PointSet sample_region(const SymbolicRegion& r, double gap);

// Grid nodes lying inside the region (strict containment test).
PointSet grid_sample(const SymbolicRegion& r, const GridSpec& grid);

// d_H(s, region) by sampling the region at the given gap; the sampling
// error is at most gap. Plane against a bounded set is +inf.
double hausdorff_symbolic(const PointSet& s, const SymbolicRegion& r, double gap);

// Rule-generated family n -> point set over an index range.
class SetSequence {
public:
    SetSequence(std::function<PointSet(std::int64_t)> generator, std::int64_t n_min,
                std::int64_t n_max);

    std::int64_t n_min() const { return n_min_; }
    std::int64_t n_max() const { return n_max_; }
    PointSet member(std::int64_t n) const;

private:
    std::function<PointSet(std::int64_t)> generator_;
    std::int64_t n_min_;
    std::int64_t n_max_;
};

// Finite-horizon liminf estimator: points of the last member that every
// member of the range matches within match_radius. An estimator only --
// the true liminf is a statement about all n, not a finite horizon.
PointSet liminf_estimate(const SetSequence& seq, std::int64_t n_lo, std::int64_t n_hi,
                         double match_radius);

// Finite-horizon limsup estimator: points drawn from the union of members
// (exact duplicates removed) matched by at least ceil(fraction * count)
// members within match_radius. The 0.5 default fraction is a configuration
// choice, not a canonical value.
PointSet limsup_estimate(const SetSequence& seq, std::int64_t n_lo, std::int64_t n_hi,
                         double match_radius, double fraction = 0.5);

// points of s at distance > margin from every point of t
PointSet difference_with_margin(const PointSet& s, const PointSet& t, double margin);

} // namespace pspec
