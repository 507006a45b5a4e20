#pragma once

/// Symmetric TSP instances: explicit cost matrices, random generators and
/// TSPLIB geometric files. Node labels are 0-based in memory; file formats
/// (TSPLIB, snapshot CSV, tour lists) use 1-based labels.

#include <cassert>
#include <cmath>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace twopt {

enum class InstanceKind { ExplicitMatrix, Euclidean, TsplibEuc2d, TsplibCeil2d };

const char* kind_name(InstanceKind kind);

struct Point {
    double x = 0.0;
    double y = 0.0;
};

/// Immutable cost oracle over n >= 4 nodes. Explicit instances hold the
/// upper triangle of the cost matrix (row-major). Geometric instances hold
/// the points and compute costs from coordinates; those with
/// n <= materialize_threshold also cache the triangle so hot loops run on
/// O(1) lookups. The cached and on-the-fly paths produce identical doubles.
class Instance {
  public:
    static constexpr int kDefaultMaterializeThreshold = 3000;

    /// Upper triangle in row-major order: (0,1), (0,2), ..., (n-2,n-1).
    static Instance explicit_matrix(int n, std::vector<double> upper_triangle);
    /// Full n*n row-major matrix; validated symmetric with zero diagonal.
    static Instance from_full_matrix(int n, const std::vector<double>& full);
    static Instance from_points(InstanceKind kind, std::vector<Point> points,
                                int materialize_threshold = kDefaultMaterializeThreshold);

    int n() const { return n_; }
    InstanceKind kind() const { return kind_; }
    bool materialized() const { return !tri_.empty(); }
    const std::vector<Point>& points() const { return points_; }

    double cost(int u, int v) const {
        assert(u >= 0 && u < n_ && v >= 0 && v < n_ && u != v);
        if (!tri_.empty()) {
            if (u > v)
                std::swap(u, v);
            return tri_[tri_index(u, v)];
        }
        return geometric_cost(u, v);
    }

    /// Cost computed from coordinates, bypassing any cached matrix.
    double geometric_cost(int u, int v) const {
        const double dx = points_[u].x - points_[v].x;
        const double dy = points_[u].y - points_[v].y;
        const double d = std::sqrt(dx * dx + dy * dy);
        switch (kind_) {
        case InstanceKind::TsplibEuc2d:
            return std::floor(d + 0.5); // TSPLIB nint()
        case InstanceKind::TsplibCeil2d:
            return std::ceil(d);
        default:
            return d;
        }
    }

  private:
    Instance() = default;

    std::size_t tri_index(int u, int v) const { // requires u < v
        const std::size_t su = static_cast<std::size_t>(u);
        return su * static_cast<std::size_t>(n_ - 1) - su * (su - 1) / 2 +
               static_cast<std::size_t>(v - u - 1);
    }

    int n_ = 0;
    InstanceKind kind_ = InstanceKind::ExplicitMatrix;
    std::vector<double> tri_;
    std::vector<Point> points_;
};

/// Random instance with each of the n(n-1)/2 edge costs drawn independently
/// and uniformly in [0,1). The triangle is filled row-major: (0,1), (0,2),
/// ..., (n-2,n-1), one uniform01() draw per entry, so seeds are portable.
Instance gen_uniform(int n, std::uint64_t seed);

/// Random instance of n points uniform in the unit square; for each point
/// x is drawn before y.
Instance gen_euclidean(int n, std::uint64_t seed,
                       int materialize_threshold = Instance::kDefaultMaterializeThreshold);

/// Per-vertex minimum incident cost, computed in Theta(n^2).
/// Every edge satisfies cost(u,v) >= (values[u] + values[v]) / 2.
struct CminTable {
    std::vector<double> values;
};

CminTable cmin_table(const Instance& inst);

/// TSPLIB NODE_COORD_SECTION files with EDGE_WEIGHT_TYPE EUC_2D or CEIL_2D.
/// Failures throw std::runtime_error naming the offending line.
Instance parse_tsplib(std::istream& in,
                      int materialize_threshold = Instance::kDefaultMaterializeThreshold);
Instance parse_tsplib_file(const std::string& path,
                           int materialize_threshold = Instance::kDefaultMaterializeThreshold);

/// Snapshot of all pairwise costs as `u,v,cost` rows (1-based, u < v),
/// round-trippable to the exact doubles.
void write_snapshot_csv(const Instance& inst, std::ostream& out);
Instance read_snapshot_csv(std::istream& in);

} // namespace twopt
