#pragma once

#include "tvflow/grid.hpp"

#include <vector>

namespace tvflow {

/// anisotropic  : componentwise |.|, dual ball is a box.
/// isotropic    : per-pixel Euclidean norm over all channels of one
///                regularization block, dual ball is a Euclidean ball.
enum class Isotropy { anisotropic, isotropic };

/// Step sizes, weights and the frozen image derivatives every proximal map
/// needs. The derivatives act as constants inside the prox formulas.
struct ProxContext {
    double tau = 0.0;
    double sigma = 0.0;
    double alpha = 0.0;
    double alpha0 = 0.0;
    double alpha1 = 0.0;
    const ImageDerivatives* derivs = nullptr;
};

/// argmin_v 1/2|v - v_tilde|^2 + tau/2 rho(v)^2 with rho(v) = grad(u).v + u_t,
/// solved per pixel by the closed form
///   v = v_tilde - tau rho(v_tilde) / (1 + tau |grad u|^2) * grad u.
/// With a Bregman variable b the data term gains -alpha<b, v>, which shifts
/// the input: v_tilde <- v_tilde + tau alpha b before the same formula.
FlowField prox_data_l2(const FlowField& v_tilde, const ProxContext& ctx,
                       const FlowField* bregman_b = nullptr);

/// argmin_v 1/2|v - v_tilde|^2 + tau |rho(v)|, three-case shrinkage:
///   v = v_tilde + tau grad u                       if rho(v_tilde) < -tau |grad u|^2
///   v = v_tilde - tau grad u                       if rho(v_tilde) >  tau |grad u|^2
///   v = v_tilde - rho(v_tilde)/|grad u|^2 grad u   otherwise.
/// Pixels with grad u = 0 reduce to v = v_tilde.
FlowField prox_data_l1(const FlowField& v_tilde, const ProxContext& ctx);

/// Prox of tau * alpha1/2 |w|^2: w = w_tilde / (1 + tau alpha1), applied to
/// every channel of the auxiliary variable.
void prox_w_l2(std::vector<Grid>& w_channels, const ProxContext& ctx);

/// Prox of sigma * 1/(2 alpha) |y|^2: y = y_tilde / (1 + sigma/alpha).
/// Requires alpha > 0.
void prox_dual_l2(std::vector<Grid>& y_channels, const ProxContext& ctx);

/// Projection of one dual block onto its alpha-ball.
/// anisotropic: clamp each channel to [-weight, weight].
/// isotropic:   per pixel, q <- q / max(1, |q|_2 / weight) over the block's
///              channels grouped into one vector.
/// The channel pointers select the block; weight 0 maps the block to zero.
void project_linf_ball(std::vector<Grid*> block, double weight, Isotropy mode);

} // namespace tvflow
