#include "pspec/setgeom.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

namespace pspec {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double dist_sq(cplx a, cplx b) {
    const double dx = a.real() - b.real();
    const double dy = a.imag() - b.imag();
    return dx * dx + dy * dy;
}

} // namespace

double dist_point(cplx z, const PointSet& s) {
    if (s.empty()) return kInf;
    double best = kInf;
    for (cplx p : s) best = std::min(best, dist_sq(z, p));
    return std::sqrt(best);
}

double hausdorff_bruteforce(const PointSet& s, const PointSet& t) {
    if (s.empty() && t.empty()) return 0.0;
    if (s.empty() || t.empty()) return kInf;
    double sup_sq = 0.0;
    for (cplx p : s) {
        double best = kInf;
        for (cplx q : t) best = std::min(best, dist_sq(p, q));
        sup_sq = std::max(sup_sq, best);
    }
    for (cplx q : t) {
        double best = kInf;
        for (cplx p : s) best = std::min(best, dist_sq(q, p));
        sup_sq = std::max(sup_sq, best);
    }
    return std::sqrt(sup_sq);
}

std::size_t NearestNeighborIndex::cell_of(double v, double lo, std::size_t n) const {
    if (v <= lo) return 0;
    const auto c = static_cast<std::size_t>((v - lo) / cell_);
    return std::min(c, n - 1);
}

NearestNeighborIndex::NearestNeighborIndex(const PointSet& points) : points_(points) {
    if (points_.empty()) return;
    double max_x = points_[0].real(), max_y = points_[0].imag();
    min_x_ = max_x;
    min_y_ = max_y;
    for (cplx p : points_) {
        min_x_ = std::min(min_x_, p.real());
        max_x = std::max(max_x, p.real());
        min_y_ = std::min(min_y_, p.imag());
        max_y = std::max(max_y, p.imag());
    }
    const double diam = std::max(max_x - min_x_, max_y - min_y_);
    // Grid resolution follows the data spread: about one point per cell,
    // capped to keep the cell table O(N).
    const double dim = std::clamp(std::sqrt(static_cast<double>(points_.size())), 8.0, 4096.0);
    cell_ = diam > 0.0 ? diam / dim : 1.0;
    nx_ = static_cast<std::size_t>((max_x - min_x_) / cell_) + 1;
    ny_ = static_cast<std::size_t>((max_y - min_y_) / cell_) + 1;

    const std::size_t ncells = nx_ * ny_;
    std::vector<std::uint32_t> counts(ncells + 1, 0);
    std::vector<std::size_t> cell_index(points_.size());
    for (std::size_t k = 0; k < points_.size(); ++k) {
        const std::size_t cx = cell_of(points_[k].real(), min_x_, nx_);
        const std::size_t cy = cell_of(points_[k].imag(), min_y_, ny_);
        cell_index[k] = cy * nx_ + cx;
        ++counts[cell_index[k] + 1];
    }
    for (std::size_t c = 0; c < ncells; ++c) counts[c + 1] += counts[c];
    bucket_start_ = counts;
    bucket_items_.resize(points_.size());
    std::vector<std::uint32_t> cursor(bucket_start_.begin(), bucket_start_.end() - 1);
    for (std::size_t k = 0; k < points_.size(); ++k) {
        bucket_items_[cursor[cell_index[k]]++] = static_cast<std::uint32_t>(k);
    }
}

double NearestNeighborIndex::nearest_sq(cplx z) const {
    if (points_.empty()) return kInf;
    const auto cx0 = static_cast<std::int64_t>(cell_of(z.real(), min_x_, nx_));
    const auto cy0 = static_cast<std::int64_t>(cell_of(z.imag(), min_y_, ny_));
    const auto nx = static_cast<std::int64_t>(nx_);
    const auto ny = static_cast<std::int64_t>(ny_);
    double best = kInf;
    bool ring_useful = true;

    auto scan_cell = [&](std::int64_t cx, std::int64_t cy) {
        // min squared distance from z to the cell rectangle; prune on it
        const double rx0 = min_x_ + static_cast<double>(cx) * cell_;
        const double ry0 = min_y_ + static_cast<double>(cy) * cell_;
        const double dx = z.real() < rx0 ? rx0 - z.real()
                          : z.real() > rx0 + cell_ ? z.real() - (rx0 + cell_) : 0.0;
        const double dy = z.imag() < ry0 ? ry0 - z.imag()
                          : z.imag() > ry0 + cell_ ? z.imag() - (ry0 + cell_) : 0.0;
        const double rect_sq = dx * dx + dy * dy;
        if (rect_sq >= best) return;
        ring_useful = true;
        const std::size_t c = static_cast<std::size_t>(cy) * nx_ + static_cast<std::size_t>(cx);
        for (std::uint32_t i = bucket_start_[c]; i < bucket_start_[c + 1]; ++i) {
            best = std::min(best, dist_sq(z, points_[bucket_items_[i]]));
        }
    };

    const std::int64_t max_ring = nx + ny;
    for (std::int64_t ring = 0; ring <= max_ring; ++ring) {
        ring_useful = false;
        bool any_in_bounds = false;
        // exact square frame at Chebyshev radius `ring` around (cx0, cy0)
        for (std::int64_t cx = cx0 - ring; cx <= cx0 + ring; ++cx) {
            if (cx < 0 || cx >= nx) continue;
            for (std::int64_t cy : {cy0 - ring, cy0 + ring}) {
                if (cy < 0 || cy >= ny) continue;
                any_in_bounds = true;
                scan_cell(cx, cy);
                if (ring == 0) break; // single cell
            }
        }
        for (std::int64_t cy = cy0 - ring + 1; cy <= cy0 + ring - 1; ++cy) {
            if (cy < 0 || cy >= ny) continue;
            for (std::int64_t cx : {cx0 - ring, cx0 + ring}) {
                if (cx < 0 || cx >= nx) continue;
                any_in_bounds = true;
                scan_cell(cx, cy);
            }
        }
        if (ring > 0 && !any_in_bounds) break;
        if (ring > 0 && !ring_useful && best < kInf) break;
    }
    return best;
}

double NearestNeighborIndex::nearest(cplx z) const {
    return std::sqrt(nearest_sq(z));
}

double hausdorff(const PointSet& s, const PointSet& t) {
    if (s.empty() && t.empty()) return 0.0;
    if (s.empty() || t.empty()) return kInf;
    const NearestNeighborIndex s_index(s);
    const NearestNeighborIndex t_index(t);
    double sup_sq = 0.0;
    for (cplx p : s) sup_sq = std::max(sup_sq, t_index.nearest_sq(p));
    for (cplx q : t) sup_sq = std::max(sup_sq, s_index.nearest_sq(q));
    return std::sqrt(sup_sq);
}

double region_distance(cplx z, const SymbolicRegion& r) {
    if (std::holds_alternative<Plane>(r)) return 0.0;
    if (const auto* d = std::get_if<Disk>(&r)) {
        return std::max(0.0, std::abs(z - d->center) - d->radius);
    }
    if (const auto* u = std::get_if<UnionOfDisks>(&r)) {
        double best = kInf;
        for (const Disk& d : u->disks) {
            best = std::min(best, std::max(0.0, std::abs(z - d.center) - d.radius));
        }
        return best;
    }
    const auto& a = std::get<Annulus>(r);
    const double rho = std::abs(z - a.center);
    return std::max({0.0, rho - a.r_out, a.r_in - rho});
}

namespace {

void sample_disk_shell(PointSet& out, cplx center, double r_in, double r_out, double gap) {
    const auto radial_steps =
        static_cast<std::size_t>(std::ceil((r_out - r_in) / gap)) + 1;
    for (std::size_t i = 0; i < radial_steps; ++i) {
        const double rho = radial_steps == 1
                               ? r_out
                               : r_in + (r_out - r_in) * static_cast<double>(i) /
                                            static_cast<double>(radial_steps - 1);
        if (rho == 0.0) {
            out.push_back(center);
            continue;
        }
        const auto arcs = std::max<std::size_t>(
            1, static_cast<std::size_t>(std::ceil(2.0 * 3.141592653589793 * rho / gap)));
        for (std::size_t k = 0; k < arcs; ++k) {
            const double theta = 2.0 * 3.141592653589793 * static_cast<double>(k) /
                                 static_cast<double>(arcs);
            out.push_back(center + cplx{rho * std::cos(theta), rho * std::sin(theta)});
        }
    }
}

} // namespace

PointSet sample_region(const SymbolicRegion& r, double gap) {
    if (!(gap > 0.0)) {
        throw std::invalid_argument("sample_region: gap must be positive");
    }
    PointSet out;
    if (std::holds_alternative<Plane>(r)) {
        throw std::invalid_argument("sample_region: the plane is unbounded");
    }
    if (const auto* d = std::get_if<Disk>(&r)) {
        sample_disk_shell(out, d->center, 0.0, d->radius, gap);
    } else if (const auto* u = std::get_if<UnionOfDisks>(&r)) {
        for (const Disk& d : u->disks) sample_disk_shell(out, d.center, 0.0, d.radius, gap);
    } else {
        const auto& a = std::get<Annulus>(r);
        sample_disk_shell(out, a.center, a.r_in, a.r_out, gap);
    }
    return out;
}

PointSet grid_sample(const SymbolicRegion& r, const GridSpec& grid) {
    PointSet out;
    const auto inside = [&](cplx z) {
        if (std::holds_alternative<Plane>(r)) return true;
        if (const auto* d = std::get_if<Disk>(&r)) return std::abs(z - d->center) < d->radius;
        if (const auto* u = std::get_if<UnionOfDisks>(&r)) {
            for (const Disk& d : u->disks) {
                if (std::abs(z - d.center) < d.radius) return true;
            }
            return false;
        }
        const auto& a = std::get<Annulus>(r);
        const double rho = std::abs(z - a.center);
        return rho > a.r_in && rho < a.r_out;
    };
    for (std::size_t iy = 0; iy < grid.ny; ++iy) {
        for (std::size_t ix = 0; ix < grid.nx; ++ix) {
            const cplx z = grid.node(ix, iy);
            if (inside(z)) out.push_back(z);
        }
    }
    return out;
}

double hausdorff_symbolic(const PointSet& s, const SymbolicRegion& r, double gap) {
    if (std::holds_alternative<Plane>(r)) {
        return kInf; // a bounded (or empty) set never Hausdorff-approximates the plane
    }
    return hausdorff(s, sample_region(r, gap));
}

SetSequence::SetSequence(std::function<PointSet(std::int64_t)> generator, std::int64_t n_min,
                         std::int64_t n_max)
    : generator_(std::move(generator)), n_min_(n_min), n_max_(n_max) {
    if (n_min_ > n_max_) {
        throw std::invalid_argument("SetSequence: empty index range");
    }
}

PointSet SetSequence::member(std::int64_t n) const {
    if (n < n_min_ || n > n_max_) {
        throw std::out_of_range("SetSequence: index out of range");
    }
    return generator_(n);
}

namespace {

void check_range(const SetSequence& seq, std::int64_t n_lo, std::int64_t n_hi,
                 double match_radius) {
    if (n_lo > n_hi || n_lo < seq.n_min() || n_hi > seq.n_max()) {
        throw std::invalid_argument("set estimator: bad n range");
    }
    if (!(match_radius > 0.0)) {
        throw std::invalid_argument("set estimator: match_radius must be positive");
    }
}

} // namespace

PointSet liminf_estimate(const SetSequence& seq, std::int64_t n_lo, std::int64_t n_hi,
                         double match_radius) {
    check_range(seq, n_lo, n_hi, match_radius);
    PointSet candidates = seq.member(n_hi);
    std::vector<bool> alive(candidates.size(), true);
    const double r_sq = match_radius * match_radius;
    for (std::int64_t n = n_lo; n <= n_hi; ++n) {
        const NearestNeighborIndex index(seq.member(n));
        for (std::size_t k = 0; k < candidates.size(); ++k) {
            if (alive[k] && index.nearest_sq(candidates[k]) > r_sq) alive[k] = false;
        }
    }
    PointSet out;
    for (std::size_t k = 0; k < candidates.size(); ++k) {
        if (alive[k]) out.push_back(candidates[k]);
    }
    return out;
}

PointSet limsup_estimate(const SetSequence& seq, std::int64_t n_lo, std::int64_t n_hi,
                         double match_radius, double fraction) {
    check_range(seq, n_lo, n_hi, match_radius);
    if (!(fraction > 0.0) || fraction > 1.0) {
        throw std::invalid_argument("limsup_estimate: fraction must be in (0, 1]");
    }
    // candidate pool: union of members, exact duplicates dropped
    std::set<std::pair<double, double>> seen;
    PointSet candidates;
    std::vector<PointSet> members;
    for (std::int64_t n = n_lo; n <= n_hi; ++n) {
        members.push_back(seq.member(n));
        for (cplx p : members.back()) {
            if (seen.emplace(p.real(), p.imag()).second) candidates.push_back(p);
        }
    }
    const auto count = static_cast<double>(n_hi - n_lo + 1);
    const auto needed = static_cast<std::size_t>(std::ceil(fraction * count));
    const double r_sq = match_radius * match_radius;
    std::vector<std::size_t> hits(candidates.size(), 0);
    for (const PointSet& m : members) {
        const NearestNeighborIndex index(m);
        for (std::size_t k = 0; k < candidates.size(); ++k) {
            if (index.nearest_sq(candidates[k]) <= r_sq) ++hits[k];
        }
    }
    PointSet out;
    for (std::size_t k = 0; k < candidates.size(); ++k) {
        if (hits[k] >= needed) out.push_back(candidates[k]);
    }
    return out;
}

PointSet difference_with_margin(const PointSet& s, const PointSet& t, double margin) {
    if (margin < 0.0) {
        throw std::invalid_argument("difference_with_margin: margin must be >= 0");
    }
    if (t.empty()) return s;
    const NearestNeighborIndex index(t);
    const double m_sq = margin * margin;
    PointSet out;
    for (cplx p : s) {
        if (index.nearest_sq(p) > m_sq) out.push_back(p);
    }
    return out;
}

} // namespace pspec
