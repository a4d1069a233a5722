#include "pspec/levelsets.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <unordered_map>

#include "pspec/errors.hpp"
#include "pspec/svd.hpp"

namespace pspec {

GridSpec::GridSpec(cplx c, double hw, double hh, std::size_t nx_, std::size_t ny_)
    : center(c), half_width(hw), half_height(hh), nx(nx_), ny(ny_) {
    if (!(half_width > 0.0) || !(half_height > 0.0)) {
        throw std::invalid_argument("GridSpec: half extents must be positive");
    }
    if (nx < 2 || ny < 2) {
        throw std::invalid_argument("GridSpec: nx and ny must be >= 2");
    }
}

double GridSpec::h() const {
    const double dx = hx();
    const double dy = hy();
    return std::sqrt(dx * dx + dy * dy);
}

cplx GridSpec::node(std::size_t ix, std::size_t iy) const {
    return center + cplx{-half_width + static_cast<double>(ix) * hx(),
                         -half_height + static_cast<double>(iy) * hy()};
}

GridSpec GridSpec::square(double half_extent, std::size_t nodes_per_side) {
    return {cplx{0.0, 0.0}, half_extent, half_extent, nodes_per_side, nodes_per_side};
}

double bounding_radius(const FiniteOperator& a, double eps) {
    if (!(eps > 0.0)) {
        throw std::invalid_argument("bounding_radius: eps must be positive");
    }
    return op_norm(a.matrix) + eps;
}

ScalarField::ScalarField(GridSpec g, std::vector<double> v, std::string src)
    : grid(g), values(std::move(v)), source(std::move(src)) {
    if (values.size() != grid.node_count()) {
        throw std::invalid_argument("ScalarField: value count does not match grid");
    }
    for (double x : values) {
        if (!std::isfinite(x) || x < 0.0) {
            throw std::invalid_argument("ScalarField: values must be finite and nonnegative");
        }
    }
}

double AnalyticFamily::operator()(cplx lambda) const {
    const double x = std::abs(lambda);
    switch (id) {
        case FamilyId::ex2:
            return n == 0 ? 0.0 : x / static_cast<double>(n);
        case FamilyId::ex3: {
            const double h = std::max(std::min(x, 1.0), x - 1.0);
            if (n == 0) return h;
            const double h1 = 0.25 * x * x;
            return h + (h1 - h) / static_cast<double>(n);
        }
        case FamilyId::ex5: {
            if (x > 1.0) return x - 1.0;
            return std::abs(std::sin(static_cast<double>(n) * 3.141592653589793238462643383279502884 * x));
        }
    }
    throw std::logic_error("AnalyticFamily: unknown id");
}

std::string AnalyticFamily::tag() const {
    std::string base = id == FamilyId::ex2 ? "ex2" : id == FamilyId::ex3 ? "ex3" : "ex5";
    return base + (n == 0 ? "[limit]" : "[n=" + std::to_string(n) + "]");
}

AnalyticFamily make_family(const std::string& id, std::int64_t n) {
    if (n < 0) {
        throw std::invalid_argument("AnalyticFamily: n must be >= 0");
    }
    if (id == "ex2") return {FamilyId::ex2, n};
    if (id == "ex3") return {FamilyId::ex3, n};
    if (id == "ex5") {
        if (n == 0) {
            throw std::invalid_argument("AnalyticFamily: ex5 has no pointwise limit member");
        }
        return {FamilyId::ex5, n};
    }
    throw std::invalid_argument("AnalyticFamily: unknown id '" + id + "'");
}

namespace {

// Upper- or lower-bidiagonal shifted operators admit a direct sigma_min via
// Sturm bisection; singular values depend only on the entry magnitudes, and
// mu(A) = sigma_min(A) is exact on this path (A and A* have equal magnitudes).
struct BidiagonalProfile {
    bool applies = false;
    bool upper = true;
};

BidiagonalProfile bidiagonal_profile(const ComplexMatrix& m) {
    bool upper = true, lower = true;
    for (std::size_t i = 0; i < m.rows() && (upper || lower); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            const cplx v = m(i, j);
            if (v == cplx{0.0, 0.0} || i == j) continue;
            if (j != i + 1) upper = false;
            if (i != j + 1) lower = false;
        }
    }
    return {upper || lower, upper};
}

double mu_bidiagonal(const ComplexMatrix& m, bool upper, cplx lambda) {
    const std::size_t n = m.rows();
    std::vector<double> diag(n), off(n - 1);
    for (std::size_t i = 0; i < n; ++i) diag[i] = std::abs(m(i, i) - lambda);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        off[i] = upper ? std::abs(m(i, i + 1)) : std::abs(m(i + 1, i));
    }
    return sigma_min_bidiagonal(diag, off);
}

template <typename NodeFn>
void parallel_nodes(const GridSpec& grid, std::vector<double>& out, NodeFn&& fn) {
    const std::size_t ny = grid.ny;
    std::size_t nthreads = std::max<std::size_t>(1, std::thread::hardware_concurrency());
    nthreads = std::min(nthreads, ny);

    std::vector<std::string> errors(nthreads);
    auto worker = [&](std::size_t t) {
        const std::size_t y0 = ny * t / nthreads;
        const std::size_t y1 = ny * (t + 1) / nthreads;
        for (std::size_t iy = y0; iy < y1 && errors[t].empty(); ++iy) {
            for (std::size_t ix = 0; ix < grid.nx; ++ix) {
                try {
                    out[iy * grid.nx + ix] = fn(ix, iy);
                } catch (const std::exception& e) {
                    errors[t] = "evaluate_field: node (ix=" + std::to_string(ix) +
                                ", iy=" + std::to_string(iy) + "): " + e.what();
                    break;
                }
            }
        }
    };

    if (nthreads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nthreads);
        for (std::size_t t = 0; t < nthreads; ++t) pool.emplace_back(worker, t);
        for (auto& th : pool) th.join();
    }
    for (const auto& err : errors) {
        if (!err.empty()) throw NumericalError(err);
    }
}

} // namespace

ScalarField evaluate_field(const FiniteOperator& a, const GridSpec& grid) {
    std::vector<double> values(grid.node_count());
    const BidiagonalProfile profile = bidiagonal_profile(a.matrix);
    parallel_nodes(grid, values, [&](std::size_t ix, std::size_t iy) {
        const cplx lambda = grid.node(ix, iy);
        if (profile.applies) {
            return mu_bidiagonal(a.matrix, profile.upper, lambda);
        }
        return mu(shift_diagonal(a.matrix, lambda));
    });
    return {grid, std::move(values), "operator[dim=" + std::to_string(a.dim()) + "]"};
}

ScalarField evaluate_field(const AnalyticFamily& family, const GridSpec& grid) {
    std::vector<double> values(grid.node_count());
    parallel_nodes(grid, values, [&](std::size_t ix, std::size_t iy) {
        return family(grid.node(ix, iy));
    });
    return {grid, std::move(values), family.tag()};
}

RegionSample sublevel(const ScalarField& field, double eps, Closedness closedness) {
    if (!(eps > 0.0)) {
        throw std::invalid_argument("sublevel: eps must be positive");
    }
    RegionSample region{field.grid, {}, {}, {}, eps, closedness};
    region.mask.resize(field.values.size());
    for (std::size_t k = 0; k < field.values.size(); ++k) {
        region.mask[k] = closedness == Closedness::strict ? field.values[k] < eps
                                                          : field.values[k] <= eps;
    }
    for (std::size_t iy = 0; iy < field.grid.ny; ++iy) {
        for (std::size_t ix = 0; ix < field.grid.nx; ++ix) {
            if (region.mask[iy * field.grid.nx + ix]) {
                region.points.push_back(field.grid.node(ix, iy));
            }
        }
    }
    region.boundary = boundary_polyline(field, eps);
    return region;
}

namespace {

// key of a grid edge: node index * 2, +1 for the vertical edge at that node
std::uint64_t edge_key(std::size_t nx, std::size_t ix, std::size_t iy, bool vertical) {
    return (static_cast<std::uint64_t>(iy) * nx + ix) * 2 + (vertical ? 1 : 0);
}

struct ContourGraph {
    std::vector<cplx> vertex_pos;
    std::vector<std::array<int, 2>> incident; // up to 2 segments per vertex
    std::vector<std::array<int, 2>> segments; // vertex index pairs
    std::unordered_map<std::uint64_t, int> vertex_of_edge;

    int vertex(const ScalarField& f, double eps, std::size_t ix, std::size_t iy, bool vertical) {
        const std::uint64_t key = edge_key(f.grid.nx, ix, iy, vertical);
        auto it = vertex_of_edge.find(key);
        if (it != vertex_of_edge.end()) return it->second;
        const double va = f.value(ix, iy);
        const double vb = vertical ? f.value(ix, iy + 1) : f.value(ix + 1, iy);
        const double t = (eps - va) / (vb - va);
        const cplx a = f.grid.node(ix, iy);
        const cplx b = vertical ? f.grid.node(ix, iy + 1) : f.grid.node(ix + 1, iy);
        const int id = static_cast<int>(vertex_pos.size());
        vertex_pos.push_back(a + t * (b - a));
        incident.push_back({-1, -1});
        vertex_of_edge.emplace(key, id);
        return id;
    }

    void add_segment(int u, int v) {
        const int sid = static_cast<int>(segments.size());
        segments.push_back({u, v});
        for (int w : {u, v}) {
            if (incident[w][0] < 0) {
                incident[w][0] = sid;
            } else {
                incident[w][1] = sid;
            }
        }
    }
};

} // namespace

std::vector<std::vector<cplx>> boundary_polyline(const ScalarField& field, double eps) {
    if (!(eps > 0.0)) {
        throw std::invalid_argument("boundary_polyline: eps must be positive");
    }
    const GridSpec& g = field.grid;
    ContourGraph graph;

    for (std::size_t cy = 0; cy + 1 < g.ny; ++cy) {
        for (std::size_t cx = 0; cx + 1 < g.nx; ++cx) {
            const double v00 = field.value(cx, cy);
            const double v10 = field.value(cx + 1, cy);
            const double v11 = field.value(cx + 1, cy + 1);
            const double v01 = field.value(cx, cy + 1);
            const int code = (v00 < eps ? 1 : 0) | (v10 < eps ? 2 : 0) |
                             (v11 < eps ? 4 : 0) | (v01 < eps ? 8 : 0);
            if (code == 0 || code == 15) continue;

            const auto bottom = [&] { return graph.vertex(field, eps, cx, cy, false); };
            const auto top = [&] { return graph.vertex(field, eps, cx, cy + 1, false); };
            const auto left = [&] { return graph.vertex(field, eps, cx, cy, true); };
            const auto right = [&] { return graph.vertex(field, eps, cx + 1, cy, true); };

            switch (code) {
                case 1: case 14: graph.add_segment(left(), bottom()); break;
                case 2: case 13: graph.add_segment(bottom(), right()); break;
                case 4: case 11: graph.add_segment(right(), top()); break;
                case 8: case 7: graph.add_segment(top(), left()); break;
                case 3: case 12: graph.add_segment(left(), right()); break;
                case 6: case 9: graph.add_segment(bottom(), top()); break;
                case 5: {
                    const bool center_in = 0.25 * (v00 + v10 + v11 + v01) < eps;
                    if (center_in) {
                        graph.add_segment(bottom(), right());
                        graph.add_segment(top(), left());
                    } else {
                        graph.add_segment(left(), bottom());
                        graph.add_segment(right(), top());
                    }
                    break;
                }
                case 10: {
                    const bool center_in = 0.25 * (v00 + v10 + v11 + v01) < eps;
                    if (center_in) {
                        graph.add_segment(left(), bottom());
                        graph.add_segment(right(), top());
                    } else {
                        graph.add_segment(bottom(), right());
                        graph.add_segment(top(), left());
                    }
                    break;
                }
                default: break;
            }
        }
    }

    // stitch segments into chains (border-to-border) and cycles
    std::vector<std::vector<cplx>> polylines;
    std::vector<bool> used(graph.segments.size(), false);

    auto walk = [&](int start_vertex, int first_segment) {
        std::vector<cplx> line;
        line.push_back(graph.vertex_pos[start_vertex]);
        int v = start_vertex;
        int sid = first_segment;
        while (sid >= 0 && !used[sid]) {
            used[sid] = true;
            const auto& seg = graph.segments[sid];
            v = seg[0] == v ? seg[1] : seg[0];
            line.push_back(graph.vertex_pos[v]);
            const auto& inc = graph.incident[v];
            sid = inc[0] == sid ? inc[1] : inc[0];
        }
        return line;
    };

    const int nv = static_cast<int>(graph.vertex_pos.size());
    for (int v = 0; v < nv; ++v) {
        if (graph.incident[v][1] < 0 && graph.incident[v][0] >= 0 &&
            !used[graph.incident[v][0]]) {
            polylines.push_back(walk(v, graph.incident[v][0]));
        }
    }
    for (int sid = 0; sid < static_cast<int>(graph.segments.size()); ++sid) {
        if (!used[sid]) {
            polylines.push_back(walk(graph.segments[sid][0], sid));
        }
    }
    return polylines;
}

} // namespace pspec
