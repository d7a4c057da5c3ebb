#pragma once

#include <vector>

#include "slinv/types.hpp"

namespace slinv {

enum class Parity { odd, even };

const char* to_string(Parity p);

cplx polyval(const std::vector<cplx>& c, cplx x);
// Roots of sum c_k x^k after trimming (numerically) zero leading coefficients.
std::vector<cplx> polyroots(const std::vector<cplx>& c);

// Boundary polynomials p1 = sum a_k lambda^k, p2 = sum b_k lambda^k.
struct BoundaryPolyPair {
    std::vector<cplx> a;
    std::vector<cplx> b;

    int n1() const { return static_cast<int>(a.size()) - 1; }
    int n2() const { return static_cast<int>(b.size()) - 1; }
    int p() const { return std::max(2 * n1() + 1, 2 * n2()); }
    Parity parity() const { return p() % 2 ? Parity::odd : Parity::even; }
    cplx p1(cplx lambda) const { return polyval(a, lambda); }
    cplx p2(cplx lambda) const { return polyval(b, lambda); }
    // Copy with the shorter array padded by zeros so that N1 = N2 (odd) or N1 = N2 - 1 (even).
    BoundaryPolyPair padded() const;
};

struct RpDiagnostics {
    int p = 0;
    Parity parity = Parity::odd;
    bool normalization_ok = false;
    bool coprime_ok = false;
    // min over roots z of p1 of |p2(z)| / (1 + |z|^N2); infinity when p1 has no roots.
    double min_separation = 0.0;
    std::vector<cplx> roots_p1;
};

// Pure diagnosis: never throws on invalid pairs.
RpDiagnostics diagnose_rp(const BoundaryPolyPair& pair, double tol = 1e-8);
// Throws NormalizationViolation or CommonRoot.
RpDiagnostics validate_rp(const BoundaryPolyPair& pair, double tol = 1e-8);

}  // namespace slinv
