#include "tvflow/prox.hpp"

#include "tvflow/errors.hpp"

#include <algorithm>
#include <cmath>

namespace tvflow {

namespace {

void check_ctx(const ProxContext& ctx) {
    if (!ctx.derivs) throw ConfigError("prox: ProxContext.derivs not set");
    if (!(ctx.tau > 0.0)) throw ConfigError("prox: tau must be positive");
}

} // namespace

FlowField prox_data_l2(const FlowField& v_tilde, const ProxContext& ctx,
                       const FlowField* bregman_b) {
    check_ctx(ctx);
    const ImageDerivatives& d = *ctx.derivs;
    if (d.width() != v_tilde.width() || d.height() != v_tilde.height())
        throw ConfigError("prox_data_l2: derivative/flow dimensions differ");
    if (bregman_b && !bregman_b->same_shape(v_tilde))
        throw ConfigError("prox_data_l2: Bregman variable dimensions differ");

    const int w = v_tilde.width(), h = v_tilde.height();
    const double tau = ctx.tau;
    FlowField out(w, h);
    for (int j = 0; j < h; ++j) {
        for (int i = 0; i < w; ++i) {
            double t1 = v_tilde.v1(i, j);
            double t2 = v_tilde.v2(i, j);
            if (bregman_b) {
                t1 += tau * ctx.alpha * bregman_b->v1(i, j);
                t2 += tau * ctx.alpha * bregman_b->v2(i, j);
            }
            const double ux = d.ux(i, j), uy = d.uy(i, j);
            const double g2 = ux * ux + uy * uy;
            const double rho = ux * t1 + uy * t2 + d.ut(i, j);
            const double c = tau * rho / (1.0 + tau * g2);
            out.v1(i, j) = t1 - c * ux;
            out.v2(i, j) = t2 - c * uy;
        }
    }
    return out;
}

FlowField prox_data_l1(const FlowField& v_tilde, const ProxContext& ctx) {
    check_ctx(ctx);
    const ImageDerivatives& d = *ctx.derivs;
    if (d.width() != v_tilde.width() || d.height() != v_tilde.height())
        throw ConfigError("prox_data_l1: derivative/flow dimensions differ");

    const int w = v_tilde.width(), h = v_tilde.height();
    const double tau = ctx.tau;
    FlowField out(w, h);
    for (int j = 0; j < h; ++j) {
        for (int i = 0; i < w; ++i) {
            const double t1 = v_tilde.v1(i, j);
            const double t2 = v_tilde.v2(i, j);
            const double ux = d.ux(i, j), uy = d.uy(i, j);
            const double g2 = ux * ux + uy * uy;
            if (g2 == 0.0) {
                out.v1(i, j) = t1;
                out.v2(i, j) = t2;
                continue;
            }
            const double rho = ux * t1 + uy * t2 + d.ut(i, j);
            double c;
            if (rho < -tau * g2)
                c = tau;
            else if (rho > tau * g2)
                c = -tau;
            else
                c = -rho / g2;
            out.v1(i, j) = t1 + c * ux;
            out.v2(i, j) = t2 + c * uy;
        }
    }
    return out;
}

void prox_w_l2(std::vector<Grid>& w_channels, const ProxContext& ctx) {
    if (ctx.alpha1 < 0.0) throw ConfigError("prox_w_l2: alpha1 must be nonnegative");
    const double s = 1.0 / (1.0 + ctx.tau * ctx.alpha1);
    for (Grid& g : w_channels)
        for (double& v : g.values()) v *= s;
}

void prox_dual_l2(std::vector<Grid>& y_channels, const ProxContext& ctx) {
    if (!(ctx.alpha > 0.0))
        throw ConfigError("prox_dual_l2: quadratic regularization requires alpha > 0");
    const double s = 1.0 / (1.0 + ctx.sigma / ctx.alpha);
    for (Grid& g : y_channels)
        for (double& v : g.values()) v *= s;
}

void project_linf_ball(std::vector<Grid*> block, double weight, Isotropy mode) {
    if (weight < 0.0) throw ConfigError("project_linf_ball: weight must be nonnegative");
    if (block.empty()) return;

    if (mode == Isotropy::anisotropic) {
        for (Grid* g : block)
            for (double& v : g->values()) v = std::clamp(v, -weight, weight);
        return;
    }

    if (weight == 0.0) {
        for (Grid* g : block) g->fill(0.0);
        return;
    }

    // q <- q / max(1, |q|_2 / weight), grouping all block channels per pixel.
    const std::size_t n = block.front()->size();
    for (std::size_t k = 0; k < n; ++k) {
        double sq = 0.0;
        for (Grid* g : block) {
            const double v = g->values()[k];
            sq += v * v;
        }
        const double norm = std::sqrt(sq);
        if (norm > weight) {
            const double s = weight / norm;
            for (Grid* g : block) g->values()[k] *= s;
        }
    }
}

} // namespace tvflow
