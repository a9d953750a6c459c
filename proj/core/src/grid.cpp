#include "tvflow/grid.hpp"

#include "tvflow/errors.hpp"

namespace tvflow {

ImageDerivatives image_derivatives(const Image& u0, const Image& u1, GradientScheme scheme) {
    if (!u0.same_shape(u1))
        throw ConfigError("image_derivatives: frame dimensions differ");
    if (u0.width() < 2 || u0.height() < 2)
        throw ConfigError("image_derivatives: frames must be at least 2x2");

    const int w = u0.width(), h = u0.height();
    ImageDerivatives d{Grid(w, h), Grid(w, h), Grid(w, h)};

    for (int j = 0; j < h; ++j)
        for (int i = 0; i < w; ++i)
            d.ut(i, j) = u1(i, j) - u0(i, j);

    switch (scheme) {
    case GradientScheme::central_undivided:
    case GradientScheme::central: {
        const double s = scheme == GradientScheme::central ? 0.5 : 1.0;
        for (int j = 0; j < h; ++j)
            for (int i = 1; i < w - 1; ++i)
                d.ux(i, j) = s * (u0(i + 1, j) - u0(i - 1, j));
        for (int j = 1; j < h - 1; ++j)
            for (int i = 0; i < w; ++i)
                d.uy(i, j) = s * (u0(i, j + 1) - u0(i, j - 1));
        break;
    }
    case GradientScheme::forward:
        for (int j = 0; j < h; ++j)
            for (int i = 0; i < w - 1; ++i)
                d.ux(i, j) = u0(i + 1, j) - u0(i, j);
        for (int j = 0; j < h - 1; ++j)
            for (int i = 0; i < w; ++i)
                d.uy(i, j) = u0(i, j + 1) - u0(i, j);
        break;
    }
    return d;
}

GradientField grad_forward(const Grid& channel) {
    if (channel.width() < 2 || channel.height() < 2)
        throw ConfigError("grad_forward: channel must be at least 2x2");

    const int w = channel.width(), h = channel.height();
    GradientField g{Grid(w, h), Grid(w, h)};
    for (int j = 0; j < h; ++j)
        for (int i = 0; i < w - 1; ++i)
            g.gx(i, j) = channel(i + 1, j) - channel(i, j);
    for (int j = 0; j < h - 1; ++j)
        for (int i = 0; i < w; ++i)
            g.gy(i, j) = channel(i, j + 1) - channel(i, j);
    return g;
}

Grid div_backward(const GradientField& y) {
    const int w = y.gx.width(), h = y.gx.height();
    Grid div(w, h);
    // The last column of gx / last row of gy is never read, which is what
    // makes the pair (grad_forward, -div_backward) exactly adjoint.
    for (int j = 0; j < h; ++j) {
        for (int i = 0; i < w; ++i) {
            double dx;
            if (i == 0)
                dx = y.gx(0, j);
            else if (i < w - 1)
                dx = y.gx(i, j) - y.gx(i - 1, j);
            else
                dx = -y.gx(i - 1, j);

            double dy;
            if (j == 0)
                dy = y.gy(i, 0);
            else if (j < h - 1)
                dy = y.gy(i, j) - y.gy(i, j - 1);
            else
                dy = -y.gy(i, j - 1);

            div(i, j) = dx + dy;
        }
    }
    return div;
}

double dot(const Grid& a, const Grid& b) {
    assert(a.same_shape(b));
    double s = 0.0;
    const auto& va = a.values();
    const auto& vb = b.values();
    for (std::size_t k = 0; k < va.size(); ++k) s += va[k] * vb[k];
    return s;
}

double norm_sq(const Grid& a) { return dot(a, a); }

} // namespace tvflow
