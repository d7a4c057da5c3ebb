#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "slinv/poly.hpp"
#include "slinv/quadrature.hpp"
#include "slinv/types.hpp"

namespace slinv {

struct FValues {
    cplx f1;
    cplx f2;
};

// Pair of entire functions (f1, f2) evaluated together.
struct EntirePair {
    std::function<FValues(cplx)> eval;
    std::vector<double> alpha;
    std::optional<std::array<double, 3>> bounds;
    std::string kind = "custom";

    FValues operator()(cplx lambda) const { return eval(lambda); }

    static EntirePair constant(cplx f1, cplx f2);
    static EntirePair polynomial(std::vector<cplx> c1, std::vector<cplx> c2);
};

// True when f1 and f2 do not vanish simultaneously at any of the points.
bool no_common_zero(const EntirePair& f, const std::vector<cplx>& lambdas, double tol = 1e-12);

struct SubspectrumReport {
    bool class_s = false;
    double min_separation = 0.0;
    bool nonzero = false;
    double max_abs_im_rho = 0.0;
    double inv_rho_sq_sum = 0.0;
    bool class_a = false;
};

class Subspectrum {
public:
    Subspectrum() = default;
    explicit Subspectrum(std::vector<cplx> lambdas);

    int size() const { return static_cast<int>(lambdas_.size()); }
    bool empty() const { return lambdas_.empty(); }
    const std::vector<cplx>& lambdas() const { return lambdas_; }
    const std::vector<cplx>& rhos() const { return rhos_; }
    cplx lambda(int n) const { return lambdas_[n]; }
    cplx rho(int n) const { return rhos_[n]; }

    // Entries [first, first + count).
    Subspectrum slice(int first, int count) const;

    SubspectrumReport classify(double sep_tol = 1e-10, double im_bound = 10.0) const;

private:
    std::vector<cplx> lambdas_;
    std::vector<cplx> rhos_;
};

// Element [H1, H2, h] of L2(0,pi) + L2(0,pi) + C^p, functions sampled on a grid.
struct HpVector {
    Grid grid;
    CVec H1;
    CVec H2;
    CVec h;

    HpVector() = default;
    HpVector(Grid g, CVec h1, CVec h2, CVec hv);
    static HpVector zero(Grid g, int p);

    int p() const { return static_cast<int>(h.size()); }
};

// Conjugate-linear in the first argument.
cplx hp_inner(const HpVector& g, const HpVector& h);
double hp_norm(const HpVector& v);

struct CauchyData {
    Grid grid;
    CVec J;
    CVec G;
    CVec A;
    // Smooth representation of J and G, when the producer has one.
    std::optional<LegendreSeries> J_series;
    std::optional<LegendreSeries> G_series;

    int p() const { return static_cast<int>(A.size()); }
    static CauchyData from_series(const Grid& grid, LegendreSeries J, LegendreSeries G, CVec A);
};

// u = [conj J, conj G, conj A].
HpVector pack_u(const CauchyData& data);
CauchyData unpack_u(const HpVector& u);

}  // namespace slinv
