#include <doctest.h>

#include "support.hpp"

using namespace slinv;
using namespace testing;

namespace {

const BoundaryPolyPair kDirichlet{{1.0}, {0.0}};
const BoundaryPolyPair kP1{{1.0}, {0.5}};
const BoundaryPolyPair kP2{{0.7}, {0.4, 1.0}};
const BoundaryPolyPair kP3{{0.3, 1.0}, {0.5, 0.2}};

double max_dev(const CVec& v, const std::function<cplx(double)>& fn, const Grid& g) {
    const RVec t = g.points();
    double e = 0;
    for (int k = 0; k < t.size(); ++k) e = std::max(e, std::abs(v[k] - fn(t[k])));
    return e;
}

}  // namespace

TEST_SUITE("hp") {

TEST_CASE("build_v examples") {
    const Grid g(128, pi);
    const HpVector a = build_v(1.0, FValues{1.0, 0.0}, 1, g);
    CHECK(max_dev(a.H1, [](double t) { return std::sin(t); }, g) <= 1e-14);
    CHECK(max_abs(a.H2) == 0.0);
    REQUIRE(a.p() == 1);
    CHECK(a.h[0] == cplx(1.0));

    const HpVector b = build_v(4.0, FValues{1.0, 1.0}, 3, g);
    REQUIRE(b.p() == 3);
    CHECK(std::abs(b.h[0] - 1.0) <= 1e-14);
    CHECK(std::abs(b.h[1] - 1.0) <= 1e-14);
    CHECK(std::abs(b.h[2] - 4.0) <= 1e-14);

    const HpVector c = build_v(1.0, FValues{0.0, 1.0}, 2, g);
    CHECK(max_abs(c.H1) == 0.0);
    CHECK(max_dev(c.H2, [](double t) { return std::sin(t); }, g) <= 1e-14);
    REQUIRE(c.p() == 2);
    CHECK(c.h[0] == cplx(0.0));
    CHECK(c.h[1] == cplx(1.0));
    CHECK_THROWS_AS(build_v(1.0, FValues{1.0, 0.0}, 0, g), ParityMismatch);
}

TEST_CASE("build_w examples") {
    CHECK(std::abs(build_w(0.25, FValues{1.0, 0.0}, 1) - 0.5) <= 1e-14);
    CHECK(std::abs(build_w(1.0, FValues{0.0, 1.0}, 1) - 1.0) <= 1e-14);
    CHECK(std::abs(build_w(1.0, FValues{1.0, 0.0}, 2) + 1.0) <= 1e-14);
}

TEST_CASE("scalar slot count equals p") {
    const Grid g(32, pi);
    for (int p = 1; p <= 6; ++p) CHECK(build_v(cplx(2.0, 0.5), FValues{0.3, 0.7}, p, g).p() == p);
}

TEST_CASE("rows are real for real data") {
    const Grid g(64, pi);
    for (int p = 1; p <= 4; ++p) {
        const HpVector v = build_v(6.3, FValues{0.4, -1.2}, p, g);
        CHECK(v.H1.imag().cwiseAbs().maxCoeff() == 0.0);
        CHECK(v.H2.imag().cwiseAbs().maxCoeff() == 0.0);
        CHECK(v.h.imag().cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("closed-form norm agrees with quadrature") {
    const Grid g(1024, pi);
    for (int p = 1; p <= 4; ++p) {
        for (cplx l : {cplx(3.0), cplx(-2.0), cplx(10.0, 2.0)}) {
            const FValues f{0.4, cplx(-1.2, 0.3)};
            CHECK(v_norm(l, f, p) == doctest::Approx(hp_norm(build_v(l, f, p, g))).epsilon(1e-8));
        }
    }
}

TEST_CASE("moment identity") {
    const SigmaFunction z = SigmaFunction::zero(512);
    const Extraction ez = extract_cauchy(z, kDirichlet);
    const EntirePair dir = EntirePair::constant(0.0, 1.0);
    CHECK(moment_identity_check(ez.data, 2.0, dir(2.0), 1, char_delta(z, kDirichlet, dir, 2.0)) <= 1e-6);
    for (int n = 1; n <= 5; ++n) {
        const cplx l = std::pow(n - 0.5, 2);
        CHECK(moment_identity_check(ez.data, l, dir(l), 1, 0.0) <= 1e-6);
    }
    const Grid g(64, pi);
    CHECK(moment_identity_check(HpVector::zero(g, 2), 3.0, FValues{0.0, 0.0}, 2, 0.0) == 0.0);

    const SigmaFunction s = step_sigma();
    const EntirePair f = hl_entire_pair(SigmaFunction::zero(512), kP3);
    for (const auto& pair : {kP1, kP2, kP3}) {
        const Extraction ex = extract_cauchy(s, pair);
        for (cplx l : {cplx(2.3, 0.3), cplx(17.1, -0.3), cplx(55.0, 1.0), cplx(-1.0)})
            CHECK(moment_identity_check(ex.data, l, f(l), pair.p(), char_delta(s, pair, f, l)) <= 1e-6);
        // The sampled-vector form agrees on the same data.
        const cplx l(9.0, 0.5);
        CHECK(moment_identity_check(pack_u(ex.data), l, f(l), pair.p(), char_delta(s, pair, f, l)) <= 1e-4);
    }
}

TEST_CASE("g and v are collinear at eigenvalues") {
    const Grid g(128, pi);
    const SigmaFunction s = step_sigma();
    const EntirePair f = hl_entire_pair(SigmaFunction::zero(512), kP3);
    for (const auto& pair : {kP1, kP2, kP3}) {
        const Subspectrum ev = find_eigenvalues([&](cplx l) { return char_delta(s, pair, f, l); }, -20.0, 150.0, 5.0, 0);
        REQUIRE(ev.size() >= 8);
        for (int n = 0; n < ev.size(); ++n) {
            const cplx l = ev.lambda(n);
            const DeltaPair d = char_pair(s, pair, l);
            CHECK(collinearity(build_g(l, d.d0, d.d1, pair.p(), g), build_v(l, f, pair.p(), g)) <= 1e-8);
        }
        // Away from eigenvalues the two rows are independent.
        const DeltaPair d = char_pair(s, pair, 7.7);
        CHECK(collinearity(build_g(7.7, d.d0, d.d1, pair.p(), g), build_v(7.7, f, pair.p(), g)) > 1e-3);
    }
}

TEST_CASE("xi identity") {
    CHECK(xi_identity_residual({1.0, 2.0, 3.0}) <= 1e-8);
    CHECK(xi_identity_residual({0.9, 2.1}) <= 1e-8);
    CHECK(xi_identity_residual({1.3, 1.3}) <= 1e-12);
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> re(0.5, 20.0), im(0.0, 0.3);
    double worst = 0;
    for (int i = 0; i < 100; ++i) worst = std::max(worst, xi_identity_residual({{re(rng), im(rng)}, {re(rng), im(rng)}}));
    CHECK(worst <= 1e-8);
}

TEST_CASE("basis diagnostics") {
    std::vector<cplx> integers, dirichlet;
    for (int n = 1; n <= 40; ++n) {
        integers.emplace_back(n);
        dirichlet.emplace_back(n - 0.5);
    }
    const BasisDiagnostics on_pi = basis_diagnostics(sine_gram({integers.begin(), integers.begin() + 20}, pi));
    CHECK(on_pi.cond == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(basis_diagnostics(sine_gram(integers, 2 * pi)).cond == doctest::Approx(1.0).epsilon(1e-8));
    for (int n : {10, 20, 40}) {
        const BasisDiagnostics d = basis_diagnostics(sine_gram({dirichlet.begin(), dirichlet.begin() + n}, 2 * pi));
        CHECK(d.cond < 10.0);
        CHECK(d.basis_like);
    }
    std::vector<cplx> dup{1.0, 2.0, 2.0, 3.0};
    CHECK(basis_diagnostics(sine_gram(dup, pi)).min_sv <= 1e-10);
    CHECK_FALSE(basis_diagnostics(sine_gram(dup, pi)).basis_like);
}

TEST_CASE("moment system rows") {
    const Grid g(64, pi);
    const EntirePair f = EntirePair::polynomial({0.5, 1.0}, {1.0});
    const Subspectrum sub({0.3, 2.0, cplx(5.0, 0.4), 11.0});
    for (int p : {1, 2, 3}) {
        const MomentSystem sys = build_moment_system(sub, f, p, g);
        REQUIRE(sys.size() == 4);
        for (int n = 0; n < 4; ++n) {
            const cplx l = sub.lambda(n);
            const HpVector v = build_v(l, f, p, g);
            CHECK(max_abs(sys.vs[n].H1 - v.H1) == 0.0);
            CHECK(max_abs(sys.vs[n].h - v.h) == 0.0);
            CHECK(sys.ws[n] == build_w(l, f, p));
            CHECK(sys.norms[n] == doctest::Approx(v_norm(l, f(l), p)));
        }
    }
    CHECK_THROWS_AS(build_moment_system(Subspectrum({1.0, 2.0, 2.0}), f, 1, g), DuplicateEigenvalue);
    const EntirePair shared = EntirePair::polynomial({0.5, 1.0}, {1.0, 2.0});
    CHECK_THROWS_AS(build_moment_system(Subspectrum({-0.5, 2.0}), shared, 1, g), InvalidArgument);
    CHECK_THROWS_AS(build_moment_system(Subspectrum(), f, 1, g), InvalidArgument);
}

}
