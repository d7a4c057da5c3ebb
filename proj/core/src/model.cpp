#include "slinv/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace slinv {

EntirePair EntirePair::constant(cplx f1, cplx f2) {
    EntirePair f;
    f.eval = [f1, f2](cplx) { return FValues{f1, f2}; };
    f.kind = "constant";
    return f;
}

EntirePair EntirePair::polynomial(std::vector<cplx> c1, std::vector<cplx> c2) {
    EntirePair f;
    f.eval = [c1 = std::move(c1), c2 = std::move(c2)](cplx l) { return FValues{polyval(c1, l), polyval(c2, l)}; };
    f.kind = "polynomial";
    return f;
}

bool no_common_zero(const EntirePair& f, const std::vector<cplx>& lambdas, double tol) {
    for (const auto& l : lambdas) {
        const FValues v = f(l);
        const double scale = 1.0 + std::abs(l);
        if (std::abs(v.f1) <= tol && std::abs(v.f2) <= tol * scale) return false;
    }
    return true;
}

Subspectrum::Subspectrum(std::vector<cplx> lambdas) : lambdas_(std::move(lambdas)) {
    rhos_.reserve(lambdas_.size());
    for (const auto& l : lambdas_) {
        if (!std::isfinite(l.real()) || !std::isfinite(l.imag())) throw InvalidArgument("eigenvalues must be finite");
        rhos_.push_back(branch_sqrt(l));
    }
}

Subspectrum Subspectrum::slice(int first, int count) const {
    if (first < 0 || count < 0 || first + count > size()) throw InvalidArgument("subspectrum slice out of range");
    return Subspectrum(std::vector<cplx>(lambdas_.begin() + first, lambdas_.begin() + first + count));
}

SubspectrumReport Subspectrum::classify(double sep_tol, double im_bound) const {
    SubspectrumReport r;
    r.min_separation = std::numeric_limits<double>::infinity();
    for (int n = 0; n < size(); ++n)
        for (int k = n + 1; k < size(); ++k) r.min_separation = std::min(r.min_separation, std::abs(lambdas_[n] - lambdas_[k]));
    r.class_s = r.min_separation > sep_tol;
    r.nonzero = std::none_of(lambdas_.begin(), lambdas_.end(), [](cplx l) { return l == 0.0; });
    for (const auto& rho : rhos_) {
        r.max_abs_im_rho = std::max(r.max_abs_im_rho, std::abs(rho.imag()));
        if (rho != 0.0) r.inv_rho_sq_sum += 1.0 / std::norm(rho);
    }
    r.class_a = r.nonzero && r.max_abs_im_rho <= im_bound && std::isfinite(r.inv_rho_sq_sum);
    return r;
}

HpVector::HpVector(Grid g, CVec h1, CVec h2, CVec hv) : grid(g), H1(std::move(h1)), H2(std::move(h2)), h(std::move(hv)) {
    if (H1.size() != grid.nodes() || H2.size() != grid.nodes())
        throw DimensionMismatch("HpVector functions must have one value per grid node");
}

HpVector HpVector::zero(Grid g, int p) {
    return HpVector(g, CVec::Zero(g.nodes()), CVec::Zero(g.nodes()), CVec::Zero(p));
}

cplx hp_inner(const HpVector& g, const HpVector& h) {
    if (!(g.grid == h.grid)) throw DimensionMismatch("hp_inner: grids differ");
    if (g.p() != h.p()) throw DimensionMismatch("hp_inner: scalar parts differ in length");
    const RVec w = g.grid.weights();
    cplx acc = 0.0;
    for (Eigen::Index k = 0; k < w.size(); ++k)
        acc += w[k] * (std::conj(g.H1[k]) * h.H1[k] + std::conj(g.H2[k]) * h.H2[k]);
    return acc + g.h.dot(h.h);
}

double hp_norm(const HpVector& v) { return std::sqrt(std::max(0.0, hp_inner(v, v).real())); }

CauchyData CauchyData::from_series(const Grid& grid, LegendreSeries J, LegendreSeries G, CVec A) {
    CauchyData d;
    d.grid = grid;
    const RVec t = grid.points();
    d.J = J.sample(t);
    d.G = G.sample(t);
    d.A = std::move(A);
    d.J_series = std::move(J);
    d.G_series = std::move(G);
    return d;
}

HpVector pack_u(const CauchyData& data) {
    return HpVector(data.grid, data.J.conjugate(), data.G.conjugate(), data.A.conjugate());
}

CauchyData unpack_u(const HpVector& u) {
    if (u.H1.size() != u.grid.nodes() || u.H2.size() != u.grid.nodes())
        throw DimensionMismatch("unpack_u: function sizes do not match the grid");
    CauchyData d;
    d.grid = u.grid;
    d.J = u.H1.conjugate();
    d.G = u.H2.conjugate();
    d.A = u.h.conjugate();
    return d;
}

}  // namespace slinv
