#pragma once

#include <cmath>

#include "slinv/types.hpp"

namespace slinv {

inline cplx ipow(cplx z, int n) {
    cplx r = 1.0;
    for (int i = 0; i < n; ++i) r *= z;
    return r;
}

// rho^p sin(rho t) (odd p) or rho^p cos(rho t) (even p), via lambda powers so the branch never matters.
inline cplx v_kernel1(cplx lambda, cplx rho, int p, double t) {
    return p % 2 ? ipow(lambda, (p - 1) / 2) * rho * std::sin(rho * t) : ipow(lambda, p / 2) * std::cos(rho * t);
}

// rho^(p-1) cos(rho t) (odd p) or rho^(p-1) sin(rho t) (even p).
inline cplx v_kernel2(cplx lambda, cplx rho, int p, double t) {
    return p % 2 ? ipow(lambda, (p - 1) / 2) * std::cos(rho * t) : ipow(lambda, p / 2) * sinc_rho(rho, t);
}

// Shape of the integral representations of Delta_1 and Delta_0 for a given p:
//   Delta_1 = lambda^e1 (lead1 + int J kernel1) + sum of A_a lambda^pow(a) with a even (0-based),
//   Delta_0 = lambda^e0 (lead0 + int G kernel0) + sum of A_a lambda^pow(a) with a odd.
struct RepForm {
    int p;
    bool odd;
    int e1;
    int e0;

    explicit RepForm(int p_) : p(p_), odd(p_ % 2 == 1) {
        const int N = odd ? (p - 1) / 2 : p / 2;
        e1 = odd ? N + 1 : N;
        e0 = N;
    }

    cplx kernel1(cplx rho, double t) const { return odd ? sinc_rho(rho, t) : std::cos(rho * t); }
    cplx kernel0(cplx rho, double t) const { return odd ? std::cos(rho * t) : sinc_rho(rho, t); }
    cplx lead1(cplx rho) const { return odd ? -sinc_rho(rho, pi) : -std::cos(rho * pi); }
    cplx lead0(cplx rho) const { return odd ? std::cos(rho * pi) : -sinc_rho(rho, pi); }
    bool a_in_delta1(int a) const { return a % 2 == 0; }
    int a_power(int a) const { return a / 2; }
};

}  // namespace slinv
