#pragma once

#include "tvflow/model.hpp"

#include <functional>
#include <utility>
#include <vector>

namespace tvflow {

struct SolveReport {
    int iterations_run = 0;
    double final_residual = 0.0;
    std::vector<double> energy_history; // primal objective per iteration
    int bregman_round = 0;
};

/// Subgradient carrier of the Bregman outer loop; b = 0 at round 0.
struct BregmanState {
    FlowField b;
    int round = 0;
};

/// Called once per iteration with (iteration index, residual, primal energy).
using ProgressFn = std::function<void(int, double, double)>;

/// Primal-dual iteration
///   y^{k+1}   = prox_{sigma F*}(y^k + sigma K xhat^k)
///   x^{k+1}   = prox_{tau G}(x^k - tau K^T y^{k+1})
///   xhat^{k+1} = 2 x^{k+1} - x^k
/// from x^0 = init (or 0), y^0 = 0, xhat^0 = x^0, run until the normalized
/// fixed-point residual max(|dx|, |dy|) / (width*height) drops to spec.tol or
/// max_iters is reached. Throws DivergenceError when non-finite values appear.
std::pair<PrimalState, SolveReport>
chambolle_pock(const ModelSpec& spec, const ImageDerivatives& derivs,
               const PrimalState* init = nullptr, const FlowField* bregman_b = nullptr,
               const ProgressFn& progress = {});

/// Outer loop for the l2-tv model: each round solves the inner problem with
/// the data term extended by -alpha<b^n, v>, warm-started from the previous
/// solution, then updates
///   b^{n+1} = b^n - (1/alpha) (u_t + grad u . v) grad u
/// with the freshly solved v. Round 1 with b^0 = 0 is the plain solve.
std::pair<FlowField, std::vector<SolveReport>>
bregman_solve(const ModelSpec& spec, const ImageDerivatives& derivs,
              const ProgressFn& progress = {});

} // namespace tvflow
