#pragma once

#include "tvflow/grid.hpp"
#include "tvflow/prox.hpp"

#include <string>
#include <vector>

namespace tvflow {

/// The five variational models. Gradient models regularize grad(v) directly;
/// the extended models couple v to an auxiliary field w through |grad v - w|.
enum class ModelKind { l2_l2, l2_tv, l1_tv, l1_tv_l2, l1_tv_tv };

/// Coupling of w to the gradient channels in the extended models.
///   shared        : one 2-vector w subtracted from grad v1 and grad v2 alike.
///   per_component : one 2-vector per flow component (w in R^{2x2}), the
///                   usual second-order (TGV-style) coupling.
enum class WCoupling { shared, per_component };

struct ModelSpec {
    ModelKind kind = ModelKind::l1_tv;
    double alpha = 0.1;   // gradient models
    double alpha0 = 0.1;  // extended models, weight of |grad v - w|
    double alpha1 = 1.0;  // extended models, weight of S(w)
    Isotropy isotropy = Isotropy::isotropic;
    WCoupling coupling = WCoupling::shared;
    int max_iters = 5000;
    double tol = 1e-6;
    int bregman_iters = 0; // > 0 only valid with kind = l2_tv

    /// Spec with the static benchmark parameters for `kind`:
    /// l2-l2 0.15, l2-tv 0.002 (0.02 when run under Bregman), l1-tv 0.1,
    /// l1-tv-l2 (0.1, 50), l1-tv-tv (0.1, 1).
    static ModelSpec with_static_defaults(ModelKind kind, int bregman_iters = 0);
};

/// Throws ConfigError on invalid weight signs, iteration counts, or a Bregman
/// request outside the l2-tv model.
void validate(const ModelSpec& spec);

bool is_extended(ModelKind kind);
bool has_l1_data(ModelKind kind);

std::string model_name(ModelKind kind);
/// Accepts the CLI spellings l2-l2, l2-tv, l1-tv, l1-tv-l2, l1-tv-tv.
ModelKind parse_model_kind(const std::string& name);

/// Primal unknowns. w is empty for gradient models, 2 channels (w1, w2) for
/// shared coupling, 4 channels (w11, w12, w21, w22) for per-component
/// coupling.
struct PrimalState {
    FlowField v;
    std::vector<Grid> w;

    int width() const { return v.width(); }
    int height() const { return v.height(); }
};

/// Stacked dual channels. Layout, fixed so serialized debug dumps stay
/// stable: first the 4 channels of the (grad v - w) block in the order
/// [dx v1, dy v1, dx v2, dy v2], then for l1-tv-tv the grad-w block,
/// [dx w1, dy w1, dx w2, dy w2] (shared) or the analogous 8 channels over
/// w11..w22 (per-component).
struct DualState {
    std::vector<Grid> ch;

    int width() const { return ch.empty() ? 0 : ch.front().width(); }
    int height() const { return ch.empty() ? 0 : ch.front().height(); }
};

int w_channel_count(const ModelSpec& spec);
int dual_channel_count(const ModelSpec& spec);

PrimalState make_primal(const ModelSpec& spec, int width, int height);
DualState make_dual(const ModelSpec& spec, int width, int height);

/// K applied to the primal state: gradient channels of v, minus the w
/// couplings, plus the gradient channels of w for l1-tv-tv.
DualState apply_K(const ModelSpec& spec, const PrimalState& x);

/// Exact discrete adjoint of apply_K. The v block receives -div of its dual
/// channels; w receives the negated identity couplings and, for l1-tv-tv,
/// -div of the grad-w channels.
PrimalState apply_K_adjoint(const ModelSpec& spec, const DualState& y);

struct StepSizes {
    double tau;
    double sigma;
};

/// (1/4, 1/2) for the gradient models, (1/5, 1/3) for the extended ones.
StepSizes step_sizes(const ModelSpec& spec);

ProxContext make_prox_context(const ModelSpec& spec, const ImageDerivatives& derivs);

/// Primal prox dispatch: data prox on the v block (L2 with optional Bregman
/// shift, or the L1 three-case formula), quadratic shrink or identity on w.
PrimalState resolve_G(const ModelSpec& spec, const PrimalState& x_tilde,
                      const ProxContext& ctx, const FlowField* bregman_b = nullptr);

/// Dual prox dispatch: quadratic scaling for l2-l2, otherwise ball
/// projections per regularization block with weights alpha / alpha0 / alpha1.
DualState resolve_Fstar(const ModelSpec& spec, const DualState& y_tilde,
                        const ProxContext& ctx);

/// Value of G(x) + F(Kx), including the -alpha<b, v> extension when a Bregman
/// variable is passed.
double primal_energy(const ModelSpec& spec, const ImageDerivatives& derivs,
                     const PrimalState& x, const FlowField* bregman_b = nullptr);

} // namespace tvflow
