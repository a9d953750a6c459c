#include "tvflow/solver.hpp"

#include "tvflow/errors.hpp"

#include <cmath>
#include <string>

namespace tvflow {

namespace {

std::vector<Grid*> primal_channels(PrimalState& x) {
    std::vector<Grid*> ch{&x.v.v1, &x.v.v2};
    for (Grid& g : x.w) ch.push_back(&g);
    return ch;
}

std::vector<const Grid*> primal_channels(const PrimalState& x) {
    std::vector<const Grid*> ch{&x.v.v1, &x.v.v2};
    for (const Grid& g : x.w) ch.push_back(&g);
    return ch;
}

double diff_norm(const std::vector<const Grid*>& a, const std::vector<const Grid*>& b) {
    double s = 0.0;
    for (std::size_t c = 0; c < a.size(); ++c) {
        const auto& va = a[c]->values();
        const auto& vb = b[c]->values();
        for (std::size_t k = 0; k < va.size(); ++k) {
            const double d = va[k] - vb[k];
            s += d * d;
        }
    }
    return std::sqrt(s);
}

bool all_finite(const std::vector<const Grid*>& ch) {
    for (const Grid* g : ch)
        if (!g->all_finite()) return false;
    return true;
}

} // namespace

std::pair<PrimalState, SolveReport>
chambolle_pock(const ModelSpec& spec, const ImageDerivatives& derivs,
               const PrimalState* init, const FlowField* bregman_b,
               const ProgressFn& progress) {
    validate(spec);
    const int w = derivs.width(), h = derivs.height();
    if (w < 2 || h < 2) throw ConfigError("chambolle_pock: grid must be at least 2x2");

    const ProxContext ctx = make_prox_context(spec, derivs);
    const double npix = static_cast<double>(w) * static_cast<double>(h);

    PrimalState x = init ? *init : make_primal(spec, w, h);
    if (init) {
        if (init->width() != w || init->height() != h ||
            static_cast<int>(init->w.size()) != w_channel_count(spec))
            throw ConfigError("chambolle_pock: init state shape mismatch");
    }
    DualState y = make_dual(spec, w, h);
    PrimalState xhat = x;

    SolveReport report;
    double residual = 0.0;

    for (int k = 0; k < spec.max_iters; ++k) {
        // y^{k+1} = prox_{sigma F*}(y^k + sigma K xhat^k)
        DualState ky = apply_K(spec, xhat);
        for (std::size_t c = 0; c < y.ch.size(); ++c) {
            auto& t = ky.ch[c].values();
            const auto& yc = y.ch[c].values();
            for (std::size_t n = 0; n < t.size(); ++n) t[n] = yc[n] + ctx.sigma * t[n];
        }
        DualState y_new = resolve_Fstar(spec, ky, ctx);

        // x^{k+1} = prox_{tau G}(x^k - tau K^T y^{k+1})
        PrimalState kty = apply_K_adjoint(spec, y_new);
        {
            auto xc = primal_channels(x);
            auto tc = primal_channels(kty);
            for (std::size_t c = 0; c < xc.size(); ++c) {
                auto& t = tc[c]->values();
                const auto& xv = xc[c]->values();
                for (std::size_t n = 0; n < t.size(); ++n) t[n] = xv[n] - ctx.tau * t[n];
            }
        }
        PrimalState x_new = resolve_G(spec, kty, ctx, bregman_b);

        // xhat^{k+1} = 2 x^{k+1} - x^k
        {
            auto hc = primal_channels(xhat);
            auto nc = primal_channels(std::as_const(x_new));
            auto oc = primal_channels(std::as_const(x));
            for (std::size_t c = 0; c < hc.size(); ++c) {
                auto& hv = hc[c]->values();
                const auto& nv = nc[c]->values();
                const auto& ov = oc[c]->values();
                for (std::size_t n = 0; n < hv.size(); ++n) hv[n] = 2.0 * nv[n] - ov[n];
            }
        }

        const double dx = diff_norm(primal_channels(std::as_const(x_new)),
                                    primal_channels(std::as_const(x)));
        double dy = 0.0;
        for (std::size_t c = 0; c < y.ch.size(); ++c) {
            const auto& a = y_new.ch[c].values();
            const auto& b = y.ch[c].values();
            for (std::size_t n = 0; n < a.size(); ++n) {
                const double d = a[n] - b[n];
                dy += d * d;
            }
        }
        dy = std::sqrt(dy);
        residual = std::max(dx, dy) / npix;

        x = std::move(x_new);
        y = std::move(y_new);
        report.iterations_run = k + 1;

        if (!std::isfinite(residual) ||
            !all_finite(primal_channels(std::as_const(x))))
            throw DivergenceError("chambolle_pock: non-finite values at iteration " +
                                      std::to_string(k),
                                  k);

        const double energy = primal_energy(spec, derivs, x, bregman_b);
        report.energy_history.push_back(energy);
        if (progress) progress(k, residual, energy);
        if (residual <= spec.tol) break;
    }

    report.final_residual = residual;
    return {std::move(x), std::move(report)};
}

std::pair<FlowField, std::vector<SolveReport>>
bregman_solve(const ModelSpec& spec, const ImageDerivatives& derivs,
              const ProgressFn& progress) {
    validate(spec);
    if (spec.kind != ModelKind::l2_tv)
        throw ConfigError("bregman_solve: only the l2-tv model supports Bregman iterations");
    if (spec.bregman_iters < 1)
        throw ConfigError("bregman_solve: bregman_iters must be >= 1");
    if (!(spec.alpha > 0.0))
        throw ConfigError("bregman_solve: the b-update requires alpha > 0");

    const int w = derivs.width(), h = derivs.height();
    BregmanState state{FlowField(w, h), 0};
    PrimalState x = make_primal(spec, w, h);
    std::vector<SolveReport> reports;

    for (int n = 0; n < spec.bregman_iters; ++n) {
        // Round 0 has b = 0 and is exactly the plain solve.
        const FlowField* b = n == 0 ? nullptr : &state.b;
        const PrimalState* init = n == 0 ? nullptr : &x;
        auto [solution, report] = chambolle_pock(spec, derivs, init, b, progress);
        x = std::move(solution);
        report.bregman_round = n;
        reports.push_back(std::move(report));

        // b^{n+1} = b^n - (1/alpha) (u_t + grad u . v) grad u
        for (int j = 0; j < h; ++j) {
            for (int i = 0; i < w; ++i) {
                const double rho = derivs.ux(i, j) * x.v.v1(i, j) +
                                   derivs.uy(i, j) * x.v.v2(i, j) + derivs.ut(i, j);
                state.b.v1(i, j) -= rho * derivs.ux(i, j) / spec.alpha;
                state.b.v2(i, j) -= rho * derivs.uy(i, j) / spec.alpha;
            }
        }
        state.round = n + 1;
    }
    return {std::move(x.v), std::move(reports)};
}

} // namespace tvflow
