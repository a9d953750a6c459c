#include "tvflow/model.hpp"

#include "tvflow/errors.hpp"

#include <cmath>

namespace tvflow {

ModelSpec ModelSpec::with_static_defaults(ModelKind kind, int bregman_iters) {
    ModelSpec s;
    s.kind = kind;
    s.bregman_iters = bregman_iters;
    switch (kind) {
    case ModelKind::l2_l2: s.alpha = 0.15; break;
    case ModelKind::l2_tv: s.alpha = bregman_iters > 0 ? 0.02 : 0.002; break;
    case ModelKind::l1_tv: s.alpha = 0.1; break;
    case ModelKind::l1_tv_l2:
        s.alpha0 = 0.1;
        s.alpha1 = 50.0;
        break;
    case ModelKind::l1_tv_tv:
        s.alpha0 = 0.1;
        s.alpha1 = 1.0;
        break;
    }
    return s;
}

void validate(const ModelSpec& spec) {
    if (is_extended(spec.kind)) {
        if (spec.alpha0 < 0.0 || spec.alpha1 < 0.0)
            throw ConfigError("model: alpha0 and alpha1 must be nonnegative");
    } else {
        if (spec.alpha < 0.0) throw ConfigError("model: alpha must be nonnegative");
        if (spec.kind == ModelKind::l2_l2 && spec.alpha == 0.0)
            throw ConfigError("model: l2-l2 requires alpha > 0 (quadratic dual prox)");
    }
    if (spec.max_iters < 1) throw ConfigError("model: max_iters must be >= 1");
    if (!(spec.tol >= 0.0)) throw ConfigError("model: tol must be nonnegative");
    if (spec.bregman_iters < 0) throw ConfigError("model: bregman_iters must be >= 0");
    if (spec.bregman_iters > 0 && spec.kind != ModelKind::l2_tv)
        throw ConfigError("model: Bregman iterations require the l2-tv model; "
                          "models with an L1 data term are not supported");
}

bool is_extended(ModelKind kind) {
    return kind == ModelKind::l1_tv_l2 || kind == ModelKind::l1_tv_tv;
}

bool has_l1_data(ModelKind kind) {
    return kind == ModelKind::l1_tv || is_extended(kind);
}

std::string model_name(ModelKind kind) {
    switch (kind) {
    case ModelKind::l2_l2: return "l2-l2";
    case ModelKind::l2_tv: return "l2-tv";
    case ModelKind::l1_tv: return "l1-tv";
    case ModelKind::l1_tv_l2: return "l1-tv-l2";
    case ModelKind::l1_tv_tv: return "l1-tv-tv";
    }
    return "?";
}

ModelKind parse_model_kind(const std::string& name) {
    if (name == "l2-l2") return ModelKind::l2_l2;
    if (name == "l2-tv") return ModelKind::l2_tv;
    if (name == "l1-tv") return ModelKind::l1_tv;
    if (name == "l1-tv-l2") return ModelKind::l1_tv_l2;
    if (name == "l1-tv-tv") return ModelKind::l1_tv_tv;
    throw ConfigError("unknown model '" + name +
                      "' (expected l2-l2, l2-tv, l1-tv, l1-tv-l2, l1-tv-tv)");
}

int w_channel_count(const ModelSpec& spec) {
    if (!is_extended(spec.kind)) return 0;
    return spec.coupling == WCoupling::shared ? 2 : 4;
}

int dual_channel_count(const ModelSpec& spec) {
    if (spec.kind != ModelKind::l1_tv_tv) return 4;
    return spec.coupling == WCoupling::shared ? 8 : 12;
}

PrimalState make_primal(const ModelSpec& spec, int width, int height) {
    PrimalState x;
    x.v = FlowField(width, height);
    x.w.assign(w_channel_count(spec), Grid(width, height));
    return x;
}

DualState make_dual(const ModelSpec& spec, int width, int height) {
    DualState y;
    y.ch.assign(dual_channel_count(spec), Grid(width, height));
    return y;
}

namespace {

void check_primal(const ModelSpec& spec, const PrimalState& x) {
    if (static_cast<int>(x.w.size()) != w_channel_count(spec))
        throw ConfigError("model: primal state has wrong number of w channels");
    for (const Grid& g : x.w)
        if (!g.same_shape(x.v.v1)) throw ConfigError("model: w channel shape mismatch");
}

void check_dual(const ModelSpec& spec, const DualState& y) {
    if (static_cast<int>(y.ch.size()) != dual_channel_count(spec))
        throw ConfigError("model: dual state has wrong channel count");
    for (const Grid& g : y.ch)
        if (!g.same_shape(y.ch.front())) throw ConfigError("model: dual channel shape mismatch");
}

void subtract_into(Grid& dst, const Grid& src) {
    auto& d = dst.values();
    const auto& s = src.values();
    for (std::size_t k = 0; k < d.size(); ++k) d[k] -= s[k];
}

void add_scaled(Grid& dst, const Grid& src, double a) {
    auto& d = dst.values();
    const auto& s = src.values();
    for (std::size_t k = 0; k < d.size(); ++k) d[k] += a * s[k];
}

} // namespace

DualState apply_K(const ModelSpec& spec, const PrimalState& x) {
    check_primal(spec, x);
    const int w = x.width(), h = x.height();
    DualState y = make_dual(spec, w, h);

    GradientField g1 = grad_forward(x.v.v1);
    GradientField g2 = grad_forward(x.v.v2);
    y.ch[0] = std::move(g1.gx);
    y.ch[1] = std::move(g1.gy);
    y.ch[2] = std::move(g2.gx);
    y.ch[3] = std::move(g2.gy);

    if (is_extended(spec.kind)) {
        if (spec.coupling == WCoupling::shared) {
            // grad v_i - w with the same 2-vector w for both components.
            subtract_into(y.ch[0], x.w[0]);
            subtract_into(y.ch[1], x.w[1]);
            subtract_into(y.ch[2], x.w[0]);
            subtract_into(y.ch[3], x.w[1]);
        } else {
            for (int c = 0; c < 4; ++c) subtract_into(y.ch[c], x.w[c]);
        }
    }

    if (spec.kind == ModelKind::l1_tv_tv) {
        const int nw = static_cast<int>(x.w.size());
        for (int c = 0; c < nw; ++c) {
            GradientField gw = grad_forward(x.w[c]);
            y.ch[4 + 2 * c] = std::move(gw.gx);
            y.ch[5 + 2 * c] = std::move(gw.gy);
        }
    }
    return y;
}

PrimalState apply_K_adjoint(const ModelSpec& spec, const DualState& y) {
    check_dual(spec, y);
    const int w = y.width(), h = y.height();
    PrimalState x = make_primal(spec, w, h);

    Grid d1 = div_backward({y.ch[0], y.ch[1]});
    Grid d2 = div_backward({y.ch[2], y.ch[3]});
    add_scaled(x.v.v1, d1, -1.0);
    add_scaled(x.v.v2, d2, -1.0);

    if (is_extended(spec.kind)) {
        if (spec.coupling == WCoupling::shared) {
            add_scaled(x.w[0], y.ch[0], -1.0);
            add_scaled(x.w[0], y.ch[2], -1.0);
            add_scaled(x.w[1], y.ch[1], -1.0);
            add_scaled(x.w[1], y.ch[3], -1.0);
        } else {
            for (int c = 0; c < 4; ++c) add_scaled(x.w[c], y.ch[c], -1.0);
        }
    }

    if (spec.kind == ModelKind::l1_tv_tv) {
        const int nw = static_cast<int>(x.w.size());
        for (int c = 0; c < nw; ++c) {
            Grid dw = div_backward({y.ch[4 + 2 * c], y.ch[5 + 2 * c]});
            add_scaled(x.w[c], dw, -1.0);
        }
    }
    return x;
}

StepSizes step_sizes(const ModelSpec& spec) {
    if (is_extended(spec.kind)) return {1.0 / 5.0, 1.0 / 3.0};
    return {1.0 / 4.0, 1.0 / 2.0};
}

ProxContext make_prox_context(const ModelSpec& spec, const ImageDerivatives& derivs) {
    const StepSizes s = step_sizes(spec);
    return ProxContext{s.tau, s.sigma, spec.alpha, spec.alpha0, spec.alpha1, &derivs};
}

PrimalState resolve_G(const ModelSpec& spec, const PrimalState& x_tilde,
                      const ProxContext& ctx, const FlowField* bregman_b) {
    check_primal(spec, x_tilde);
    PrimalState out;
    if (has_l1_data(spec.kind)) {
        out.v = prox_data_l1(x_tilde.v, ctx);
    } else {
        out.v = prox_data_l2(x_tilde.v, ctx, bregman_b);
    }
    out.w = x_tilde.w;
    if (spec.kind == ModelKind::l1_tv_l2) prox_w_l2(out.w, ctx);
    // l1-tv-tv: the w block carries no G term, prox is the identity.
    return out;
}

DualState resolve_Fstar(const ModelSpec& spec, const DualState& y_tilde,
                        const ProxContext& ctx) {
    check_dual(spec, y_tilde);
    DualState out = y_tilde;

    if (spec.kind == ModelKind::l2_l2) {
        prox_dual_l2(out.ch, ctx);
        return out;
    }

    const double w0 = is_extended(spec.kind) ? ctx.alpha0 : ctx.alpha;
    std::vector<Grid*> block1{&out.ch[0], &out.ch[1], &out.ch[2], &out.ch[3]};
    project_linf_ball(block1, w0, spec.isotropy);

    if (spec.kind == ModelKind::l1_tv_tv) {
        std::vector<Grid*> block2;
        for (std::size_t c = 4; c < out.ch.size(); ++c) block2.push_back(&out.ch[c]);
        project_linf_ball(block2, ctx.alpha1, spec.isotropy);
    }
    return out;
}

namespace {

// Sum over pixels of the block's norm: Euclidean across channels for the
// isotropic variant, plain |.| summed over channels otherwise.
double block_l1(const std::vector<const Grid*>& block, Isotropy mode) {
    if (block.empty()) return 0.0;
    const std::size_t n = block.front()->size();
    double total = 0.0;
    if (mode == Isotropy::isotropic) {
        for (std::size_t k = 0; k < n; ++k) {
            double sq = 0.0;
            for (const Grid* g : block) {
                const double v = g->values()[k];
                sq += v * v;
            }
            total += std::sqrt(sq);
        }
    } else {
        for (const Grid* g : block)
            for (double v : g->values()) total += std::fabs(v);
    }
    return total;
}

} // namespace

double primal_energy(const ModelSpec& spec, const ImageDerivatives& derivs,
                     const PrimalState& x, const FlowField* bregman_b) {
    check_primal(spec, x);
    const int w = x.width(), h = x.height();
    if (derivs.width() != w || derivs.height() != h)
        throw ConfigError("primal_energy: derivative/state dimensions differ");

    double data = 0.0;
    for (int j = 0; j < h; ++j) {
        for (int i = 0; i < w; ++i) {
            const double rho =
                derivs.ux(i, j) * x.v.v1(i, j) + derivs.uy(i, j) * x.v.v2(i, j) + derivs.ut(i, j);
            data += has_l1_data(spec.kind) ? std::fabs(rho) : 0.5 * rho * rho;
        }
    }
    if (bregman_b) data -= spec.alpha * (dot(bregman_b->v1, x.v.v1) + dot(bregman_b->v2, x.v.v2));

    if (spec.kind == ModelKind::l1_tv_l2)
        for (const Grid& g : x.w) data += 0.5 * spec.alpha1 * norm_sq(g);

    const DualState z = apply_K(spec, x);
    double reg = 0.0;
    if (spec.kind == ModelKind::l2_l2) {
        for (const Grid& g : z.ch) reg += 0.5 * spec.alpha * norm_sq(g);
    } else {
        std::vector<const Grid*> block1{&z.ch[0], &z.ch[1], &z.ch[2], &z.ch[3]};
        const double w0 = is_extended(spec.kind) ? spec.alpha0 : spec.alpha;
        reg += w0 * block_l1(block1, spec.isotropy);
        if (spec.kind == ModelKind::l1_tv_tv) {
            std::vector<const Grid*> block2;
            for (std::size_t c = 4; c < z.ch.size(); ++c) block2.push_back(&z.ch[c]);
            reg += spec.alpha1 * block_l1(block2, spec.isotropy);
        }
    }
    return data + reg;
}

} // namespace tvflow
