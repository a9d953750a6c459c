#pragma once

#include <cassert>
#include <cmath>
#include <cstddef>
#include <vector>

namespace tvflow {

/// Dense 2-D scalar field. Row-major storage, indexed (x, y) where x is the
/// column (paper index i, 0..width-1) and y the row (paper index j,
/// 0..height-1). All solver arithmetic is double precision.
class Grid {
public:
    Grid() = default;
    Grid(int width, int height, double fill = 0.0)
        : width_(width), height_(height),
          data_(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill) {
        assert(width >= 0 && height >= 0);
    }

    int width() const { return width_; }
    int height() const { return height_; }
    std::size_t size() const { return data_.size(); }
    bool empty() const { return data_.empty(); }

    double& operator()(int x, int y) {
        assert(x >= 0 && x < width_ && y >= 0 && y < height_);
        return data_[static_cast<std::size_t>(y) * width_ + x];
    }
    double operator()(int x, int y) const {
        assert(x >= 0 && x < width_ && y >= 0 && y < height_);
        return data_[static_cast<std::size_t>(y) * width_ + x];
    }

    std::vector<double>& values() { return data_; }
    const std::vector<double>& values() const { return data_; }

    bool same_shape(const Grid& o) const { return width_ == o.width_ && height_ == o.height_; }

    bool all_finite() const {
        for (double v : data_)
            if (!std::isfinite(v)) return false;
        return true;
    }

    void fill(double v) { data_.assign(data_.size(), v); }

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<double> data_;
};

/// Single-channel intensity image; intensities live in [0,1] once loaded.
using Image = Grid;

/// Two-channel displacement field (v1, v2) in pixels per frame. Components
/// with magnitude >= kUnknownFlowThreshold mark pixels without valid flow
/// (Middlebury "unknown" convention); such pixels pass through I/O verbatim
/// and are skipped by the error measures.
struct FlowField {
    Grid v1;
    Grid v2;

    FlowField() = default;
    FlowField(int width, int height, double f1 = 0.0, double f2 = 0.0)
        : v1(width, height, f1), v2(width, height, f2) {}

    int width() const { return v1.width(); }
    int height() const { return v1.height(); }
    bool same_shape(const FlowField& o) const { return v1.same_shape(o.v1); }
};

inline constexpr double kUnknownFlowThreshold = 1e9;

inline bool flow_known(const FlowField& f, int x, int y) {
    return std::fabs(f.v1(x, y)) < kUnknownFlowThreshold &&
           std::fabs(f.v2(x, y)) < kUnknownFlowThreshold;
}

/// Discretized image derivatives u_t, u_x, u_y of a frame pair; evaluated at
/// the first frame and treated as constants by the solvers.
struct ImageDerivatives {
    Grid ut;
    Grid ux;
    Grid uy;

    int width() const { return ut.width(); }
    int height() const { return ut.height(); }
};

/// Forward-difference gradient of one scalar channel. gx vanishes on the last
/// column and gy on the last row (Neumann boundary).
struct GradientField {
    Grid gx;
    Grid gy;
};

/// Spatial difference quotient used for u_x, u_y.
///   central_undivided : u[i+1] - u[i-1], zero on boundary columns/rows.
///                       Twice the true gradient; kept as the faithful default
///                       for the grid operator itself.
///   central           : (u[i+1] - u[i-1]) / 2, the conventional quotient.
///                       This is the variant whose estimates are on the same
///                       scale as the true motion; the benchmark and CLI map
///                       "central" here.
///   forward           : u[i+1] - u[i], zero on the last column/row.
enum class GradientScheme { central_undivided, central, forward };

/// u_t = u1 - u0 everywhere; u_x, u_y from `scheme` applied to u0.
/// Throws ConfigError on dimension mismatch.
ImageDerivatives image_derivatives(const Image& u0, const Image& u1,
                                   GradientScheme scheme = GradientScheme::central_undivided);

/// Forward differences with Neumann boundary: gx(i,j) = c(i+1,j) - c(i,j) for
/// i < width-1 and 0 on the last column; gy analogous in j.
GradientField grad_forward(const Grid& channel);

/// Discrete divergence adjoint to grad_forward, backward differences with the
/// three boundary cases per axis:
///   i = 0:        y1(0,j)
///   0 < i < n:    y1(i,j) - y1(i-1,j)
///   i = n:        -y1(i-1,j)
/// summed with the analogous j-axis term. Satisfies
/// <grad_forward(v), y> = -<v, div_backward(y)> exactly for every y.
Grid div_backward(const GradientField& y);

// Elementwise helpers shared by the solver and the tests.
double dot(const Grid& a, const Grid& b);
double norm_sq(const Grid& a);

} // namespace tvflow
