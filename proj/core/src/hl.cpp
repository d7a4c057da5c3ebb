#include "slinv/hl.hpp"

#include <cmath>

namespace slinv {

namespace {

void check_full(const SigmaFunction& s) {
    if (s.cells() % 2) throw InvalidArgument("two-sided sigma needs an even number of cells");
    if (std::abs(s.length() - 2 * pi) > 1e-12) throw InvalidArgument("two-sided sigma must live on [0, 2 pi]");
}

}  // namespace

SigmaFunction TwoSidedProblem::sigma_left() const {
    check_full(sigma_full);
    return sigma_full.restrict(0, sigma_full.cells() / 2);
}

SigmaFunction TwoSidedProblem::sigma_right() const {
    check_full(sigma_full);
    return sigma_full.restrict(sigma_full.cells() / 2, sigma_full.cells());
}

std::pair<cplx, cplx> psi_mid(const SigmaFunction& sigma_right, const BoundaryPolyPair& right, cplx lambda,
                              const OdeOptions& opts) {
    const Transfer t = transfer(sigma_right.reflected(), lambda, false, opts);
    const cplx r1 = right.p1(lambda), r2 = right.p2(lambda);
    // Reflected solution z(s) = psi(2 pi - s), z^[1] = -psi^[1](2 pi - s): z(0) = r1, z^[1](0) = r2.
    return {t.t00 * r1 + t.t01 * r2, -(t.t10 * r1 + t.t11 * r2)};
}

EntirePair hl_entire_pair(const SigmaFunction& sigma_right, const BoundaryPolyPair& right, const OdeOptions& opts) {
    validate_rp(right);
    EntirePair f;
    const SigmaFunction refl = sigma_right.reflected();
    f.eval = [refl, right, opts](cplx lambda) {
        const Transfer t = transfer(refl, lambda, false, opts);
        const cplx r1 = right.p1(lambda), r2 = right.p2(lambda);
        const cplx psi = t.t00 * r1 + t.t01 * r2;
        const cplx psiq = -(t.t10 * r1 + t.t11 * r2);
        return FValues{-psi, psiq};
    };
    f.alpha = {static_cast<double>(right.p() - 1)};
    f.kind = "hl_right_half";
    return f;
}

Subspectrum hl_spectrum(const TwoSidedProblem& problem, int count, const HlSearchOptions& opts) {
    if (count < 1) throw InvalidArgument("hl_spectrum needs count >= 1");
    validate_rp(problem.left);
    const SigmaFunction left = problem.sigma_left();
    const EntirePair f = hl_entire_pair(problem.sigma_right(), problem.right, opts.ode);
    const DeltaFn delta = [&](cplx lambda) { return char_delta(left, problem.left, f, lambda, opts.ode); };
    double s_hi = (count + 4) / 2.0 + 1.0;
    for (int attempt = 0; attempt < 4; ++attempt, s_hi *= 1.5) {
        const Subspectrum s = find_eigenvalues(delta, opts.re_lo, s_hi * s_hi, opts.imag_band, count, opts.search);
        if (s.size() >= count) return s;
    }
    throw RootLoss("could not locate " + std::to_string(count) + " eigenvalues of the two-sided problem");
}

HlReconstruction hl_reconstruct(const SigmaFunction& sigma_right, const BoundaryPolyPair& right, int p,
                                const Subspectrum& spectrum, int drop, const Grid& grid, int rows,
                                const ReconstructOptions& opts) {
    const int r = right.p();
    if (p % 2 == 0 || r % 2 == 0)
        throw ParityMismatch("the half-inverse driver supports odd p and r only (p = " + std::to_string(p) +
                             ", r = " + std::to_string(r) + ")");
    if (r < p) throw ParityMismatch("the half-inverse driver requires r >= p");
    if (drop < 0 || drop >= spectrum.size()) throw InvalidArgument("drop must lie in [0, spectrum size)");
    const int available = spectrum.size() - drop;
    const int n = rows > 0 ? std::min(rows, available) : available;
    HlReconstruction out;
    out.hl.drop = drop;
    out.hl.guaranteed_drop = (r - p) / 2;
    out.hl.drop_exceeds_rule = drop > out.hl.guaranteed_drop;
    const EntirePair f = hl_entire_pair(sigma_right, right);
    out.rec = reconstruct(p, f, spectrum.slice(drop, n), grid, opts);
    return out;
}

}  // namespace slinv
