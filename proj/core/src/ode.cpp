#include "slinv/ode.hpp"

#include <cmath>

namespace slinv {

namespace {

const double g1 = 0.5 - std::sqrt(3.0) / 6.0;
const double g2 = 0.5 + std::sqrt(3.0) / 6.0;

struct Prop {
    cplx p00, p01, p10, p11;
    cplx d00, d01, d10, d11;
};

// c = cosh(sqrt z), s = sinh(sqrt z)/sqrt z, sp = ds/dz.
void cosh_sinhc(cplx z, cplx& c, cplx& s, cplx& sp) {
    if (std::abs(z) < 1e-2) {
        c = 1.0 + z * (1.0 / 2 + z * (1.0 / 24 + z * (1.0 / 720 + z * (1.0 / 40320 + z / 3628800.0))));
        s = 1.0 + z * (1.0 / 6 + z * (1.0 / 120 + z * (1.0 / 5040 + z * (1.0 / 362880 + z / 39916800.0))));
        sp = 1.0 / 6 + z * (2.0 / 120 + z * (3.0 / 5040 + z * (4.0 / 362880 + z * 5.0 / 39916800.0)));
        return;
    }
    const cplx r = std::sqrt(z);
    c = std::cosh(r);
    s = std::sinh(r) / r;
    sp = (c - s) / (2.0 * z);
}

Prop magnus_step(cplx sa, cplx sb, cplx lambda, double hs, bool deriv) {
    const double k = std::sqrt(3.0) * hs * hs / 12.0;
    const cplx qa = sa * sa + lambda, qb = sb * sb + lambda;
    const cplx o00 = 0.5 * hs * (sa + sb) + k * (sb * sb - sa * sa);
    const cplx o01 = hs + 2.0 * k * (sb - sa);
    const cplx o10 = -0.5 * hs * (qa + qb) + k * (2.0 * sb * qa - 2.0 * sa * qb);
    const cplx z = o00 * o00 + o01 * o10;
    cplx c, s, sp;
    cosh_sinhc(z, c, s, sp);
    Prop p;
    p.p00 = c + s * o00;
    p.p01 = s * o01;
    p.p10 = s * o10;
    p.p11 = c - s * o00;
    if (deriv) {
        const cplx e = -hs + 2.0 * k * (sb - sa);
        const cplx dz = o01 * e;
        const cplx dc = 0.5 * s * dz, ds = sp * dz;
        p.d00 = dc + ds * o00;
        p.d01 = ds * o01;
        p.d10 = ds * o10 + s * e;
        p.d11 = dc - ds * o00;
    }
    return p;
}

// Calls visit(prop) for every substep and after_cell(k) once cell k is done.
template <class Visit, class AfterCell>
void march(const SigmaFunction& sigma, cplx lambda, const OdeOptions& opts, bool deriv, Visit&& visit,
           AfterCell&& after_cell) {
    const int ns = substeps(sigma, lambda, opts);
    const double hs = sigma.grid().step() / ns;
    for (int k = 0; k < sigma.cells(); ++k) {
        const auto [s0, s1] = sigma.cell(k);
        const cplx ds = (s1 - s0) / static_cast<double>(ns);
        for (int j = 0; j < ns; ++j) {
            const cplx sa = s0 + ds * (j + g1);
            const cplx sb = s0 + ds * (j + g2);
            visit(magnus_step(sa, sb, lambda, hs, deriv));
        }
        after_cell(k);
    }
}

void check_finite(cplx a, cplx b) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag()) || !std::isfinite(b.real()) || !std::isfinite(b.imag()))
        throw StepFailure("solution overflowed; lambda or sigma out of supported magnitude");
}

Trajectory forward_trajectory(const SigmaFunction& sigma, cplx lambda, cplx y0, cplx yq0, const OdeOptions& opts) {
    Trajectory tr;
    tr.lambda = lambda;
    tr.y.resize(sigma.grid().nodes());
    tr.yq.resize(sigma.grid().nodes());
    tr.y[0] = y0;
    tr.yq[0] = yq0;
    cplx y = y0, yq = yq0;
    march(
        sigma, lambda, opts, false,
        [&](const Prop& p) {
            const cplx ny = p.p00 * y + p.p01 * yq;
            yq = p.p10 * y + p.p11 * yq;
            y = ny;
        },
        [&](int k) {
            check_finite(y, yq);
            tr.y[k + 1] = y;
            tr.yq[k + 1] = yq;
        });
    return tr;
}

}  // namespace

int substeps(const SigmaFunction& sigma, cplx lambda, const OdeOptions& opts) {
    const double rate = std::abs(branch_sqrt(lambda)) + sigma.max_abs();
    const double n = std::ceil(rate * sigma.grid().step() / opts.theta);
    if (!(n <= opts.max_substeps)) throw StepFailure("step size underflow: |lambda| too large for the sigma grid");
    return std::max(opts.min_substeps, static_cast<int>(n));
}

Trajectory solve_cauchy(const SigmaFunction& sigma, cplx lambda, cplx y0, cplx yq0, Direction direction,
                        const OdeOptions& opts) {
    if (direction == Direction::forward) return forward_trajectory(sigma, lambda, y0, yq0, opts);
    const Trajectory r = forward_trajectory(sigma.reflected(), lambda, y0, -yq0, opts);
    const int M = sigma.cells();
    Trajectory tr;
    tr.lambda = lambda;
    tr.direction = Direction::backward;
    tr.y.resize(M + 1);
    tr.yq.resize(M + 1);
    for (int k = 0; k <= M; ++k) {
        tr.y[k] = r.y[M - k];
        tr.yq[k] = -r.yq[M - k];
    }
    return tr;
}

Transfer transfer(const SigmaFunction& sigma, cplx lambda, bool with_derivative, const OdeOptions& opts) {
    Transfer t;
    march(
        sigma, lambda, opts, with_derivative,
        [&](const Prop& p) {
            if (with_derivative) {
                const cplx d00 = p.d00 * t.t00 + p.d01 * t.t10 + p.p00 * t.d00 + p.p01 * t.d10;
                const cplx d01 = p.d00 * t.t01 + p.d01 * t.t11 + p.p00 * t.d01 + p.p01 * t.d11;
                const cplx d10 = p.d10 * t.t00 + p.d11 * t.t10 + p.p10 * t.d00 + p.p11 * t.d10;
                const cplx d11 = p.d10 * t.t01 + p.d11 * t.t11 + p.p10 * t.d01 + p.p11 * t.d11;
                t.d00 = d00, t.d01 = d01, t.d10 = d10, t.d11 = d11;
            }
            const cplx a = p.p00 * t.t00 + p.p01 * t.t10;
            const cplx b = p.p00 * t.t01 + p.p01 * t.t11;
            const cplx c = p.p10 * t.t00 + p.p11 * t.t10;
            const cplx d = p.p10 * t.t01 + p.p11 * t.t11;
            t.t00 = a, t.t01 = b, t.t10 = c, t.t11 = d;
        },
        [&](int) { check_finite(t.t00, t.t11); });
    return t;
}

std::pair<Trajectory, Trajectory> fundamental_pair(const SigmaFunction& sigma, cplx lambda, const OdeOptions& opts) {
    return {forward_trajectory(sigma, lambda, 0.0, 1.0, opts), forward_trajectory(sigma, lambda, 1.0, 0.0, opts)};
}

Trajectory lambda_derivative(const SigmaFunction& sigma, cplx lambda, Which which, const OdeOptions& opts) {
    Trajectory tr;
    tr.lambda = lambda;
    tr.y = CVec::Zero(sigma.grid().nodes());
    tr.yq = CVec::Zero(sigma.grid().nodes());
    cplx y = which == Which::S ? 0.0 : 1.0;
    cplx yq = which == Which::S ? 1.0 : 0.0;
    cplx dy = 0.0, dyq = 0.0;
    march(
        sigma, lambda, opts, true,
        [&](const Prop& p) {
            const cplx ndy = p.d00 * y + p.d01 * yq + p.p00 * dy + p.p01 * dyq;
            const cplx ndyq = p.d10 * y + p.d11 * yq + p.p10 * dy + p.p11 * dyq;
            const cplx ny = p.p00 * y + p.p01 * yq;
            yq = p.p10 * y + p.p11 * yq;
            y = ny;
            dy = ndy;
            dyq = ndyq;
        },
        [&](int k) {
            check_finite(dy, dyq);
            tr.y[k + 1] = dy;
            tr.yq[k + 1] = dyq;
        });
    return tr;
}

}  // namespace slinv
