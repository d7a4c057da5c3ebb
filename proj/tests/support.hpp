#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <string>
#include <random>
#include <vector>

#include "slinv/slinv.hpp"

namespace testing {

using namespace slinv;

inline double l2(const Grid& g, const CVec& v) { return std::sqrt((g.weights().array() * v.array().abs2()).sum()); }

inline double max_abs(const CVec& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

// Sign-change scan on lambda = s|s| with a fixed step, refined by bisection on a real-valued g.
inline std::vector<double> scan_zeros(const std::function<double(double)>& g, double s_lo, double s_hi, double step) {
    std::vector<double> out;
    auto lam = [](double s) { return s * std::abs(s); };
    double a = s_lo, ga = g(lam(a));
    for (double b = s_lo + step; b <= s_hi + 1e-12; b += step) {
        const double gb = g(lam(b));
        if (ga == 0.0) {
            out.push_back(lam(a));
        } else if (ga * gb < 0.0) {
            double lo = a, hi = b, glo = ga;
            for (int it = 0; it < 80; ++it) {
                const double mid = 0.5 * (lo + hi);
                const double gm = g(lam(mid));
                if ((gm < 0) == (glo < 0)) {
                    lo = mid;
                    glo = gm;
                } else {
                    hi = mid;
                }
            }
            out.push_back(lam(0.5 * (lo + hi)));
        }
        a = b;
        ga = gb;
    }
    return out;
}

inline HpVector random_hp(const Grid& g, int p, std::mt19937_64& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    auto vec = [&](int k) {
        CVec v(k);
        for (int i = 0; i < k; ++i) v[i] = cplx(n(rng), n(rng));
        return v;
    };
    return HpVector(g, vec(g.nodes()), vec(g.nodes()), vec(p));
}

inline SigmaFunction step_sigma(int cells = 512, double length = pi) {
    return SigmaFunction::step(cells, cells / 2, 0.0, 1.0, length);
}

}  // namespace testing

namespace testing {

// Spectra of the reference problems, computed once per process.
inline const Subspectrum& corpus_spectrum(const std::string& name, int count = 52) {
    static std::map<std::string, Subspectrum> cache;
    auto it = cache.find(name);
    if (it == cache.end() || it->second.size() < count)
        it = cache.insert_or_assign(name, hl_spectrum(corpus_problem(name).problem, count)).first;
    return it->second;
}

struct OracleErrors {
    double rel_J = 0, rel_G = 0, abs_A = 0, rel_u = 0;
    double worst() const { return std::max({rel_J, rel_G, abs_A}); }
};

inline OracleErrors oracle_errors(const CauchyData& rec, const SigmaFunction& sigma, const BoundaryPolyPair& pair) {
    const Extraction ex = extract_cauchy(sigma, pair);
    const CauchyData orc = CauchyData::from_series(rec.grid, *ex.data.J_series, *ex.data.G_series, ex.data.A);
    const CauchyErrors e = cauchy_difference(rec, orc);
    const double nj = l2(rec.grid, orc.J), ng = l2(rec.grid, orc.G);
    return {e.J / nj, e.G / ng, e.A, e.u / std::sqrt(nj * nj + ng * ng + orc.A.squaredNorm())};
}

}  // namespace testing
