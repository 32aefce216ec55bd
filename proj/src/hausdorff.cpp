#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <limits>
#include <mutex>

#include "flab/hausdorff.hpp"
#include "flab/parallel.hpp"

namespace flab {

namespace {

// Uniform bucket grid over a cloud, CSR layout. Cell size is chosen so the
// grid holds roughly one point per cell; queries expand Chebyshev rings and
// stop once no unscanned cell can beat the best squared distance, so the
// result matches the brute-force scan exactly.
class BucketGrid {
public:
    explicit BucketGrid(const GraphCloud& cloud) : points_(&cloud.points) {
        mn_ = cloud.min_corner();
        const auto mx = cloud.max_corner();
        double side = 0.0;
        for (int a = 0; a < 3; ++a) side = std::max(side, mx[a] - mn_[a]);
        const auto n_pts = static_cast<double>(cloud.points.size());
        const auto per_axis = std::clamp(std::lround(std::cbrt(n_pts)), 1L, 128L);
        cell_ = side > 0.0 ? side / static_cast<double>(per_axis) : 1.0;
        for (int a = 0; a < 3; ++a) {
            n_[a] = static_cast<std::int64_t>(std::floor((mx[a] - mn_[a]) / cell_)) + 1;
            n_[a] = std::max<std::int64_t>(n_[a], 1);
        }

        const std::int64_t n_cells = n_[0] * n_[1] * n_[2];
        std::vector<std::int64_t> cell_of(cloud.points.size());
        offsets_.assign(static_cast<std::size_t>(n_cells) + 1, 0);
        for (std::size_t i = 0; i < cloud.points.size(); ++i) {
            cell_of[i] = cell_index(coords(cloud.points[i]));
            ++offsets_[static_cast<std::size_t>(cell_of[i]) + 1];
        }
        for (std::size_t c = 1; c < offsets_.size(); ++c) offsets_[c] += offsets_[c - 1];
        order_.resize(cloud.points.size());
        std::vector<std::int64_t> cursor(offsets_.begin(), offsets_.end() - 1);
        for (std::size_t i = 0; i < cloud.points.size(); ++i)
            order_[static_cast<std::size_t>(cursor[static_cast<std::size_t>(cell_of[i])]++)] =
                static_cast<std::int64_t>(i);
    }

    /// Squared distance from p to the cloud; may return early with any value
    /// <= prune_sq once it is certain the true distance is <= prune_sq.
    double min_dist_sq(const std::array<double, 3>& p, double prune_sq) const {
        std::array<std::int64_t, 3> c{};
        for (int a = 0; a < 3; ++a)
            c[a] = static_cast<std::int64_t>(std::floor((p[a] - mn_[a]) / cell_));
        double best = std::numeric_limits<double>::infinity();
        for (std::int64_t r = 0;; ++r) {
            scan_ring(c, r, p, best);
            if (best <= prune_sq) return best;
            // Unscanned cells sit at Chebyshev ring > r, hence >= r*cell away.
            const double reach = static_cast<double>(r) * cell_;
            if (best <= reach * reach) return best;
            bool full = true;
            for (int a = 0; a < 3; ++a)
                if (c[a] - r > 0 || c[a] + r < n_[a] - 1) full = false;
            if (full) return best;
        }
    }

private:
    std::array<std::int64_t, 3> coords(const std::array<double, 3>& p) const {
        std::array<std::int64_t, 3> c{};
        for (int a = 0; a < 3; ++a) {
            c[a] = static_cast<std::int64_t>(std::floor((p[a] - mn_[a]) / cell_));
            c[a] = std::clamp<std::int64_t>(c[a], 0, n_[a] - 1);
        }
        return c;
    }

    std::int64_t cell_index(const std::array<std::int64_t, 3>& c) const {
        return (c[0] * n_[1] + c[1]) * n_[2] + c[2];
    }

    /// Scans the in-bounds cells at exact Chebyshev distance r from c: for
    /// each axis, the two faces with that axis pinned at +-r, earlier axes
    /// restricted to the ring interior so no cell is visited twice.
    void scan_ring(const std::array<std::int64_t, 3>& c, std::int64_t r,
                   const std::array<double, 3>& p, double& best) const {
        if (r == 0) {
            if (in_bounds(c)) scan_cell(c, p, best);
            return;
        }
        for (int axis = 0; axis < 3; ++axis) {
            for (int sign = -1; sign <= 1; sign += 2) {
                std::array<std::int64_t, 3> cell{};
                cell[axis] = c[axis] + sign * r;
                if (cell[axis] < 0 || cell[axis] >= n_[axis]) continue;
                const int u = axis == 0 ? 1 : 0;
                const int v = axis == 2 ? 1 : 2;
                const std::int64_t su = u < axis ? r - 1 : r;
                const std::int64_t sv = v < axis ? r - 1 : r;
                const std::int64_t u_lo = std::max<std::int64_t>(c[u] - su, 0);
                const std::int64_t u_hi = std::min<std::int64_t>(c[u] + su, n_[u] - 1);
                const std::int64_t v_lo = std::max<std::int64_t>(c[v] - sv, 0);
                const std::int64_t v_hi = std::min<std::int64_t>(c[v] + sv, n_[v] - 1);
                for (cell[u] = u_lo; cell[u] <= u_hi; ++cell[u])
                    for (cell[v] = v_lo; cell[v] <= v_hi; ++cell[v]) scan_cell(cell, p, best);
            }
        }
    }

    bool in_bounds(const std::array<std::int64_t, 3>& c) const {
        for (int a = 0; a < 3; ++a)
            if (c[a] < 0 || c[a] >= n_[a]) return false;
        return true;
    }

    void scan_cell(const std::array<std::int64_t, 3>& c, const std::array<double, 3>& p,
                   double& best) const {
        const auto idx = static_cast<std::size_t>(cell_index(c));
        for (std::int64_t k = offsets_[idx]; k < offsets_[idx + 1]; ++k) {
            const auto& q = (*points_)[static_cast<std::size_t>(order_[static_cast<std::size_t>(k)])];
            const double dx = p[0] - q[0], dy = p[1] - q[1], dz = p[2] - q[2];
            best = std::min(best, dx * dx + dy * dy + dz * dz);
        }
    }

    const std::vector<std::array<double, 3>>* points_;
    std::array<double, 3> mn_{};
    std::array<std::int64_t, 3> n_{};
    double cell_ = 1.0;
    std::vector<std::int64_t> offsets_;
    std::vector<std::int64_t> order_;
};

// sup_{a in A} inf_{b in B} |a - b|, squared. Points that provably cannot
// raise the running maximum are skipped; the maximum itself is exact.
double directed_sq(const GraphCloud& from, const GraphCloud& to) {
    const BucketGrid grid(to);
    std::atomic<double> floor_sq{0.0};
    double result = 0.0;
    std::mutex mu;
    parallel_for(static_cast<std::int64_t>(from.points.size()),
                 [&](std::int64_t begin, std::int64_t end) {
                     double local = 0.0;
                     for (std::int64_t i = begin; i < end; ++i) {
                         const double d =
                             grid.min_dist_sq(from.points[static_cast<std::size_t>(i)],
                                              floor_sq.load(std::memory_order_relaxed));
                         if (d > local) {
                             local = d;
                             double cur = floor_sq.load(std::memory_order_relaxed);
                             while (cur < local &&
                                    !floor_sq.compare_exchange_weak(cur, local,
                                                                    std::memory_order_relaxed)) {
                             }
                         }
                     }
                     const std::lock_guard<std::mutex> lock(mu);
                     result = std::max(result, local);
                 });
    return result;
}

} // namespace

double hausdorff_distance(const GraphCloud& a, const GraphCloud& b) {
    require_input(!a.points.empty() && !b.points.empty(), "clouds must be nonempty");
    require_input(a.dim == b.dim, "clouds must share a dimension");
    return std::sqrt(std::max(directed_sq(a, b), directed_sq(b, a)));
}

} // namespace flab
