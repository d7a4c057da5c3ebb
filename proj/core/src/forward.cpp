#include "slinv/forward.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/tools/roots.hpp>
#include <Eigen/SVD>

#include "slinv/parallel.hpp"
#include "slinv/representation.hpp"

namespace slinv {

DeltaPair char_pair(const SigmaFunction& sigma, const BoundaryPolyPair& pair, cplx lambda, const OdeOptions& opts) {
    const Transfer t = transfer(sigma, lambda, false, opts);
    const cplx P1 = pair.p1(lambda), P2 = pair.p2(lambda);
    return {P1 * t.t00 - P2 * t.t01, P1 * t.t10 - P2 * t.t11};
}

cplx char_delta(const SigmaFunction& sigma, const BoundaryPolyPair& pair, const EntirePair& f, cplx lambda,
                const OdeOptions& opts) {
    const DeltaPair d = char_pair(sigma, pair, lambda, opts);
    const FValues fv = f(lambda);
    return fv.f1 * d.d1 + fv.f2 * d.d0;
}

cplx weyl(const SigmaFunction& sigma, const BoundaryPolyPair& pair, cplx lambda, double pole_tol,
          const OdeOptions& opts) {
    const DeltaPair d = char_pair(sigma, pair, lambda, opts);
    const cplx rho = branch_sqrt(lambda);
    const double scale = (std::abs(pair.p1(lambda)) * (1.0 + std::abs(rho)) + std::abs(pair.p2(lambda))) *
                         std::exp(std::abs(rho.imag()) * sigma.length());
    if (std::abs(d.d1) <= pole_tol * scale) throw PoleProximity("lambda is within tolerance of a pole of the Weyl function");
    return d.d0 / d.d1;
}

namespace {

double signed_sqrt(double x) { return x < 0 ? -std::sqrt(-x) : std::sqrt(x); }

struct Contour {
    double turns = 0.0;
    double min_abs = std::numeric_limits<double>::infinity();
    double max_abs = 0.0;
};

void refine_segment(const DeltaFn& delta, cplx a, cplx b, cplx fa, cplx fb, int depth, Contour& c) {
    const double darg = std::arg(fb / fa);
    if (depth >= 30) {
        c.turns += darg;
        return;
    }
    const cplx m = 0.5 * (a + b);
    const cplx fm = delta(m);
    c.min_abs = std::min(c.min_abs, std::abs(fm));
    c.max_abs = std::max(c.max_abs, std::abs(fm));
    if (fm == 0.0) throw RootLoss("zero of the characteristic function on an argument-principle contour");
    const double d1 = std::arg(fm / fa), d2 = std::arg(fb / fm);
    if (std::abs(darg) > pi / 8 || std::abs(d1 + d2 - darg) > 1e-6) {
        refine_segment(delta, a, m, fa, fm, depth + 1, c);
        refine_segment(delta, m, b, fm, fb, depth + 1, c);
        return;
    }
    c.turns += d1 + d2;
}

// Rough length of the image of [a, b] under lambda -> sqrt(lambda).
double rho_length(cplx a, cplx b) {
    double len = 0.0;
    const int n = 64;
    for (int j = 0; j < n; ++j) {
        const cplx m = a + (b - a) * ((j + 0.5) / n);
        len += std::abs(b - a) / n / (2.0 * std::sqrt(std::max(std::abs(m), 1e-2)));
    }
    return len;
}

Contour trace_contour(const DeltaFn& delta, double x0, double x1, double y0, double y1) {
    const cplx corners[5] = {{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}, {x0, y0}};
    Contour c;
    for (int e = 0; e < 4; ++e) {
        const int n = 16 + static_cast<int>(std::ceil(16.0 * rho_length(corners[e], corners[e + 1])));
        cplx prev = corners[e];
        cplx fprev = delta(prev);
        for (int j = 1; j <= n; ++j) {
            const cplx z = corners[e] + (corners[e + 1] - corners[e]) * (static_cast<double>(j) / n);
            const cplx fz = delta(z);
            for (const cplx v : {fprev, fz}) {
                c.min_abs = std::min(c.min_abs, std::abs(v));
                c.max_abs = std::max(c.max_abs, std::abs(v));
            }
            if (fz == 0.0 || fprev == 0.0) throw RootLoss("zero of the characteristic function on an argument-principle contour");
            refine_segment(delta, prev, z, fprev, fz, 0, c);
            prev = z;
            fprev = fz;
        }
    }
    c.turns /= 2 * pi;
    return c;
}

cplx newton(const DeltaFn& g, cplx z, int max_iter, double max_step, bool& converged) {
    converged = false;
    for (int it = 0; it < max_iter; ++it) {
        const cplx f = g(z);
        if (f == 0.0) {
            converged = true;
            return z;
        }
        const double h = 1e-7 * (1.0 + std::abs(z));
        const cplx d = (g(z + h) - g(z - h)) / (2.0 * h);
        if (d == 0.0 || !std::isfinite(std::abs(d))) return z;
        cplx step = f / d;
        if (std::abs(step) > max_step) step *= max_step / std::abs(step);
        z -= step;
        if (std::abs(step) <= 1e-12 * (1.0 + std::abs(z))) {
            converged = true;
            return z;
        }
    }
    return z;
}

std::vector<cplx> real_roots(const DeltaFn& delta, const std::vector<double>& lam, const std::vector<cplx>& val,
                             const EigenSearchOptions& opts) {
    double vmax = 0.0;
    cplx phase = 1.0;
    for (const auto& v : val)
        if (std::abs(v) > vmax) vmax = std::abs(v), phase = v / std::abs(v);
    if (vmax == 0.0) throw RootLoss("characteristic function vanishes on the whole scan");
    std::vector<double> g(val.size());
    for (size_t i = 0; i < val.size(); ++i) {
        const cplx r = val[i] / phase;
        if (std::abs(r.imag()) > 1e-6 * std::abs(r) + 1e-14 * vmax)
            throw InvalidArgument("characteristic function is not real on the real axis; search with imag_band > 0");
        g[i] = r.real();
    }
    auto real_fn = [&](double x) { return (delta(x) / phase).real(); };
    std::vector<cplx> roots;
    for (size_t i = 0; i < lam.size(); ++i) {
        if (g[i] == 0.0) {
            roots.emplace_back(lam[i]);
            continue;
        }
        if (i + 1 == lam.size() || g[i + 1] == 0.0 || (g[i] > 0) == (g[i + 1] > 0)) continue;
        boost::uintmax_t iters = 200;
        const auto bracket = boost::math::tools::toms748_solve(real_fn, lam[i], lam[i + 1], g[i], g[i + 1],
                                                               boost::math::tools::eps_tolerance<double>(52), iters);
        const double root = 0.5 * (bracket.first + bracket.second);
        const double scale = std::max(std::abs(val[i]), std::abs(val[i + 1]));
        if (std::abs(delta(root)) > opts.verify_tol * scale)
            throw RootLoss("refined root fails the residual check near lambda = " + std::to_string(root));
        roots.emplace_back(root);
    }
    return roots;
}

int contour_count(const Contour& c) {
    const int k = static_cast<int>(std::lround(c.turns));
    if (std::abs(c.turns - k) > 0.05) throw RootLoss("argument principle did not return an integer count");
    if (k < 0) throw RootLoss("negative winding number for an entire function");
    return k;
}

struct Rect {
    double x0, x1, y0, y1;
    bool contains(cplx z, double margin) const {
        return z.real() >= x0 - margin && z.real() <= x1 + margin && z.imag() >= y0 - margin && z.imag() <= y1 + margin;
    }
};

// Zeros inside r, known to number k; bisects the longer side until deflated Newton from a few seeds lands
// every zero inside its own rectangle.
void rect_roots(const DeltaFn& delta, const Rect& r, int k, double ref_abs, int depth, const EigenSearchOptions& opts,
                std::vector<cplx>& out) {
    if (k == 0) return;
    const double w = r.x1 - r.x0, h = r.y1 - r.y0;
    const double diam = std::hypot(w, h);
    const double margin = 1e-9 * (1.0 + diam);
    const bool small = diam <= 0.5 || depth >= 40;
    if (k == 1 || small) {
        std::vector<cplx> found;
        const cplx seeds[5] = {{r.x0 + 0.5 * w, r.y0 + 0.5 * h}, {r.x0 + 0.25 * w, r.y0 + 0.25 * h},
                               {r.x0 + 0.75 * w, r.y0 + 0.75 * h}, {r.x0 + 0.25 * w, r.y0 + 0.75 * h},
                               {r.x0 + 0.75 * w, r.y0 + 0.25 * h}};
        for (int attempt = 0; attempt < k; ++attempt) {
            auto deflated = [&](cplx z) {
                cplx v = delta(z);
                for (const auto& f : found) v /= (z - f);
                return v;
            };
            bool added = false;
            for (const cplx s : seeds) {
                bool ok = false;
                cplx z = newton(deflated, s, opts.max_newton, diam, ok);
                if (!ok) continue;
                z = newton(delta, z, std::min(opts.max_newton, 4), diam, ok);
                if (!r.contains(z, margin) || std::abs(delta(z)) > opts.verify_tol * ref_abs) continue;
                if (std::any_of(found.begin(), found.end(),
                                [&](cplx f) { return std::abs(f - z) <= 1e-8 * (1.0 + std::abs(z)); }))
                    continue;
                found.push_back(z);
                added = true;
                break;
            }
            if (!added) break;
        }
        if (static_cast<int>(found.size()) == k) {
            out.insert(out.end(), found.begin(), found.end());
            return;
        }
        if (depth >= 40)
            throw RootLoss("argument principle counts " + std::to_string(k) + " zeros near lambda = (" +
                           std::to_string(r.x0) + ", " + std::to_string(r.y0) + ") but only " +
                           std::to_string(found.size()) + " were refined");
    }
    // Split the longer side, shifting the cut off-centre if it passes through a zero.
    for (int attempt = 0; attempt < 6; ++attempt) {
        const double t = 0.5317 + 0.0731 * attempt * (attempt % 2 ? 1 : -1);
        Rect a = r, b = r;
        if (w >= h)
            a.x1 = b.x0 = r.x0 + t * w;
        else
            a.y1 = b.y0 = r.y0 + t * h;
        int ka, kb;
        try {
            ka = contour_count(trace_contour(delta, a.x0, a.x1, a.y0, a.y1));
            kb = contour_count(trace_contour(delta, b.x0, b.x1, b.y0, b.y1));
        } catch (const RootLoss&) {
            continue;
        }
        if (ka + kb != k) continue;
        rect_roots(delta, a, ka, ref_abs, depth + 1, opts, out);
        rect_roots(delta, b, kb, ref_abs, depth + 1, opts, out);
        return;
    }
    throw RootLoss("could not split an argument-principle cell cleanly near lambda = (" + std::to_string(r.x0) +
                   ", " + std::to_string(r.y0) + ")");
}

std::vector<cplx> cell_roots(const DeltaFn& delta, double x0, double x1, double band, const EigenSearchOptions& opts) {
    double y = band;
    Contour c;
    for (int attempt = 0;; ++attempt) {
        c = trace_contour(delta, x0, x1, -y, y);
        if (c.min_abs > 1e-9 * c.max_abs || attempt == 4) break;
        y *= 1.07;
    }
    std::vector<cplx> found;
    rect_roots(delta, Rect{x0, x1, -y, y}, contour_count(c), c.max_abs, 0, opts, found);
    return found;
}

}  // namespace

int winding_number(const DeltaFn& delta, double x0, double x1, double y0, double y1) {
    return static_cast<int>(std::lround(trace_contour(delta, x0, x1, y0, y1).turns));
}

Subspectrum find_eigenvalues(const DeltaFn& delta, double re_lo, double re_hi, double imag_band, int count,
                             const EigenSearchOptions& opts) {
    if (!(re_hi > re_lo) || !std::isfinite(re_lo) || !std::isfinite(re_hi))
        throw InvalidArgument("eigenvalue window must be a finite interval");
    if (imag_band < 0) throw InvalidArgument("imag_band must be nonnegative");
    const double s_lo = signed_sqrt(re_lo), s_hi = signed_sqrt(re_hi);
    const int n = std::max(2, static_cast<int>(std::ceil((s_hi - s_lo) / opts.scan_step)));
    std::vector<double> lam(n + 1);
    for (int i = 0; i <= n; ++i) {
        const double s = s_lo + (s_hi - s_lo) * i / n;
        lam[i] = s * std::abs(s);
    }
    lam.front() = re_lo;
    lam.back() = re_hi;

    std::vector<cplx> roots;
    if (imag_band == 0.0) {
        std::vector<cplx> val(lam.size());
        parallel_for(static_cast<int>(lam.size()), [&](int i) { val[i] = delta(lam[i]); }, opts.threads);
        roots = real_roots(delta, lam, val, opts);
    } else {
        std::vector<int> bounds;
        for (int i = 0; i < n; i += std::max(1, opts.cell_steps)) bounds.push_back(i);
        bounds.push_back(n);
        // Nudge interior cell boundaries towards the largest |delta| nearby so contours avoid zeros.
        for (size_t b = 1; b + 1 < bounds.size(); ++b) {
            int best = bounds[b];
            double best_abs = -1.0;
            for (int j = std::max(bounds[b - 1] + 1, bounds[b] - 2); j <= std::min(bounds[b + 1] - 1, bounds[b] + 2); ++j) {
                const double a = std::abs(delta(lam[j]));
                if (a > best_abs) best_abs = a, best = j;
            }
            bounds[b] = best;
        }
        std::vector<std::vector<cplx>> per_cell(bounds.size() - 1);
        parallel_for(
            static_cast<int>(per_cell.size()),
            [&](int c) { per_cell[c] = cell_roots(delta, lam[bounds[c]], lam[bounds[c + 1]], imag_band, opts); },
            opts.threads);
        for (const auto& v : per_cell) roots.insert(roots.end(), v.begin(), v.end());
    }

    std::sort(roots.begin(), roots.end(), [](cplx a, cplx b) {
        return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
    });
    std::vector<cplx> unique;
    for (const auto& r : roots) {
        const bool dup = std::any_of(unique.begin(), unique.end(), [&](cplx u) {
            return std::abs(u - r) <= opts.min_separation * (1.0 + std::abs(r));
        });
        if (!dup) unique.push_back(r);
    }
    if (count > 0 && static_cast<int>(unique.size()) > count) unique.resize(count);
    return Subspectrum(unique);
}

Extraction extract_cauchy(const SigmaFunction& sigma, const BoundaryPolyPair& pair, const ExtractOptions& opts) {
    validate_rp(pair);
    if (std::abs(sigma.length() - pi) > 1e-12) throw InvalidArgument("extract_cauchy expects sigma on [0, pi]");
    if (opts.K < 1 || opts.degree < 0) throw InvalidArgument("extract_cauchy needs K >= 1 and degree >= 0");
    const BoundaryPolyPair q = pair.padded();
    const RepForm form(q.p());
    const int K = opts.K, L = opts.degree, S = 2 * K;
    std::vector<double> rho(S);
    for (int k = 1; k <= K; ++k) {
        rho[k - 1] = k;
        rho[K + k - 1] = k + 0.5;
    }
    std::vector<DeltaPair> d(S);
    parallel_for(S, [&](int i) { d[i] = char_pair(sigma, q, rho[i] * rho[i], opts.ode); }, opts.threads);

    const GaussRule rule = oscillatory_rule(L, K + 0.5, pi);
    const Eigen::MatrixXd P = legendre_basis(L, pi, rule.nodes);
    const int D = 2 * (L + 1) + form.p;
    CMat A = CMat::Zero(2 * S, D);
    CVec b(2 * S);
    for (int i = 0; i < S; ++i) {
        const cplx r = rho[i], lam = r * r;
        CVec k1(rule.nodes.size()), k0(rule.nodes.size());
        for (Eigen::Index j = 0; j < rule.nodes.size(); ++j) {
            k1[j] = rule.weights[j] * form.kernel1(r, rule.nodes[j]);
            k0[j] = rule.weights[j] * form.kernel0(r, rule.nodes[j]);
        }
        A.row(i).segment(0, L + 1) = (P.cast<cplx>() * k1).transpose();
        A.row(S + i).segment(L + 1, L + 1) = (P.cast<cplx>() * k0).transpose();
        const cplx s1 = ipow(lam, form.e1), s0 = ipow(lam, form.e0);
        for (int a = 0; a < form.p; ++a) {
            const int row = form.a_in_delta1(a) ? i : S + i;
            A(row, 2 * (L + 1) + a) = ipow(lam, form.a_power(a)) / (form.a_in_delta1(a) ? s1 : s0);
        }
        b[i] = d[i].d1 / s1 - form.lead1(r);
        b[S + i] = d[i].d0 / s0 - form.lead0(r);
    }
    for (int i = 0; i < 2 * S; ++i) {
        const double sc = A.row(i).cwiseAbs().maxCoeff();
        A.row(i) /= sc;
        b[i] /= sc;
    }
    Eigen::BDCSVD<CMat> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const RVec& sv = svd.singularValues();
    Extraction out;
    out.condition = sv[sv.size() - 1] > 0 ? sv[0] / sv[sv.size() - 1] : std::numeric_limits<double>::infinity();
    if (out.condition > opts.cond_limit)
        throw IllConditioned("extraction design matrix condition " + std::to_string(out.condition) + " exceeds limit");
    const CVec x = svd.solve(b);
    out.residual = (A * x - b).norm() / std::max(b.norm(), 1e-300);
    out.K = K;
    out.degree = L;
    out.data = CauchyData::from_series(sigma.grid(), LegendreSeries{pi, x.segment(0, L + 1)},
                                       LegendreSeries{pi, x.segment(L + 1, L + 1)}, x.tail(form.p));
    return out;
}

DeltaPair deltas_from_cauchy(const CauchyData& data, int p, cplx lambda) {
    if (p < 1) throw InvalidArgument("p must be positive");
    if (data.p() != p) throw DimensionMismatch("Cauchy data carries " + std::to_string(data.p()) + " constants, p = " + std::to_string(p));
    const RepForm form(p);
    const cplx rho = branch_sqrt(lambda);
    cplx IJ = 0.0, IG = 0.0;
    if (data.J_series && data.G_series) {
        const int deg = std::max(data.J_series->degree(), data.G_series->degree());
        const GaussRule rule = oscillatory_rule(deg, std::abs(rho), pi);
        const CVec J = data.J_series->sample(rule.nodes), G = data.G_series->sample(rule.nodes);
        for (Eigen::Index j = 0; j < rule.nodes.size(); ++j) {
            IJ += rule.weights[j] * J[j] * form.kernel1(rho, rule.nodes[j]);
            IG += rule.weights[j] * G[j] * form.kernel0(rho, rule.nodes[j]);
        }
    } else {
        const RVec w = data.grid.weights();
        for (int j = 0; j < data.grid.nodes(); ++j) {
            const double t = data.grid.node(j);
            IJ += w[j] * data.J[j] * form.kernel1(rho, t);
            IG += w[j] * data.G[j] * form.kernel0(rho, t);
        }
    }
    DeltaPair d{ipow(lambda, form.e0) * (form.lead0(rho) + IG), ipow(lambda, form.e1) * (form.lead1(rho) + IJ)};
    for (int a = 0; a < p; ++a) {
        const cplx term = data.A[a] * ipow(lambda, form.a_power(a));
        (form.a_in_delta1(a) ? d.d1 : d.d0) += term;
    }
    return d;
}

}  // namespace slinv
