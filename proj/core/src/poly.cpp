#include "slinv/poly.hpp"

#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

namespace slinv {

const char* to_string(Parity p) { return p == Parity::odd ? "odd" : "even"; }

cplx polyval(const std::vector<cplx>& c, cplx x) {
    cplx acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
}

std::vector<cplx> polyroots(const std::vector<cplx>& c) {
    double scale = 0.0;
    for (const auto& v : c) scale = std::max(scale, std::abs(v));
    int n = static_cast<int>(c.size()) - 1;
    while (n >= 0 && std::abs(c[n]) <= 1e-14 * scale) --n;
    if (n <= 0) return {};
    CMat companion = CMat::Zero(n, n);
    for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) companion(i, n - 1) = -c[i] / c[n];
    Eigen::ComplexEigenSolver<CMat> es(companion, false);
    std::vector<cplx> roots(es.eigenvalues().data(), es.eigenvalues().data() + n);
    // One Newton polish per root against the original coefficients.
    for (auto& z : roots) {
        for (int it = 0; it < 3; ++it) {
            cplx f = 0.0, df = 0.0;
            for (int k = n; k >= 0; --k) {
                df = df * z + f;
                f = f * z + c[k];
            }
            if (std::abs(df) == 0.0) break;
            z -= f / df;
        }
    }
    return roots;
}

BoundaryPolyPair BoundaryPolyPair::padded() const {
    BoundaryPolyPair out = *this;
    if (parity() == Parity::odd)
        out.b.resize(std::max(out.a.size(), out.b.size()), 0.0);
    else
        out.a.resize(out.b.size() - 1, 0.0);
    return out;
}

RpDiagnostics diagnose_rp(const BoundaryPolyPair& pair, double tol) {
    if (pair.a.empty() || pair.b.empty()) throw InvalidArgument("boundary polynomial coefficients must be nonempty");
    RpDiagnostics d;
    d.p = pair.p();
    d.parity = pair.parity();
    const BoundaryPolyPair q = pair.padded();
    const cplx lead = d.parity == Parity::odd ? q.a.back() : q.b.back();
    d.normalization_ok = std::abs(lead - 1.0) <= 1e-12;

    d.roots_p1 = polyroots(q.a);
    const int N2 = q.n2();
    double scale_a = 0.0;
    for (const auto& v : q.a) scale_a = std::max(scale_a, std::abs(v));
    if (scale_a == 0.0) {
        d.min_separation = 0.0;
        d.coprime_ok = polyroots(q.b).empty() && std::abs(q.b[0]) > tol;
        return d;
    }
    d.min_separation = std::numeric_limits<double>::infinity();
    for (const auto& z : d.roots_p1) {
        const double sep = std::abs(q.p2(z)) / (1.0 + std::pow(std::abs(z), N2));
        d.min_separation = std::min(d.min_separation, sep);
    }
    d.coprime_ok = d.min_separation > tol;
    return d;
}

RpDiagnostics validate_rp(const BoundaryPolyPair& pair, double tol) {
    RpDiagnostics d = diagnose_rp(pair, tol);
    if (!d.normalization_ok)
        throw NormalizationViolation(std::string("leading coefficient of ") + (d.parity == Parity::odd ? "p1" : "p2") +
                                     " must be 1 for p = " + std::to_string(d.p));
    if (!d.coprime_ok)
        throw CommonRoot("p1 and p2 share a root (separation " + std::to_string(d.min_separation) + ")");
    return d;
}

}  // namespace slinv
