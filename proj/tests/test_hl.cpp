#include <doctest.h>

#include "support.hpp"

using namespace slinv;
using namespace testing;

namespace {

const BoundaryPolyPair kNeumann{{1.0}, {0.0}};
const BoundaryPolyPair kP3{{0.3, 1.0}, {0.5, 0.2}};

// sigma = 1 on [pi/2, pi), 0 elsewhere on [0, 2 pi].
SigmaFunction step_left_zero_right() {
    CVec s = CVec::Zero(513);
    for (int k = 128; k < 256; ++k) s[k] = 1.0;
    return SigmaFunction(Grid(512, 2 * pi), s, {{128, 0.0}, {256, 1.0}});
}

double condition_at(const std::string& name, int drop, int n) {
    const TwoSidedProblem& tp = corpus_problem(name).problem;
    return hl_reconstruct(tp.sigma_right(), tp.right, tp.p(), corpus_spectrum(name), drop, Grid(128, pi), n).rec.report.condition;
}

}  // namespace

TEST_SUITE("hl") {

TEST_CASE("psi_mid closed forms") {
    const SigmaFunction z = SigmaFunction::zero(256);
    for (cplx l : {cplx(2.0), cplx(6.5, 0.8), cplx(-1.3)}) {
        const cplx rho = branch_sqrt(l);
        const auto [a, aq] = psi_mid(z, kNeumann, l);
        CHECK(std::abs(a - std::cos(rho * pi)) <= 1e-9 * envelope(rho, 0));
        CHECK(std::abs(aq - rho * std::sin(rho * pi)) <= 1e-9 * envelope(rho, 1));
        // psi(2 pi) = 0, psi^[1](2 pi) = -1 gives psi(x) = sin(rho (2 pi - x)) / rho.
        const auto [b, bq] = psi_mid(z, {{0.0}, {1.0}}, l);
        CHECK(std::abs(b - sinc_rho(rho, pi)) <= 1e-9 * envelope(rho, 0));
        CHECK(std::abs(bq + std::cos(rho * pi)) <= 1e-9 * envelope(rho, 0));
        const FValues f = hl_entire_pair(z, kNeumann)(l);
        CHECK(std::abs(f.f1 + std::cos(rho * pi)) <= 1e-9 * envelope(rho, 0));
        CHECK(std::abs(f.f2 - rho * std::sin(rho * pi)) <= 1e-9 * envelope(rho, 1));
    }
}

TEST_CASE("psi_mid matches backward integration") {
    const SigmaFunction full = step_left_zero_right();
    const SigmaFunction right = SigmaFunction::step(256, 64, 0.3, -0.6, pi);
    for (cplx l : {cplx(3.0), cplx(10.0, 2.0)}) {
        const Trajectory back = solve_cauchy(right, l, kP3.p1(l), -kP3.p2(l), Direction::backward);
        const auto [psi, psiq] = psi_mid(right, kP3, l);
        CHECK(std::abs(psi - back.y[0]) <= 1e-6 * std::abs(back.y[0]));
        CHECK(std::abs(psiq - back.yq[0]) <= 1e-6 * std::abs(back.yq[0]));
        const FValues f = hl_entire_pair(right, kP3)(l);
        CHECK(f.f1 == -psi);
        CHECK(f.f2 == psiq);
    }
    CHECK(full.restrict(256, 512).max_abs() == 0.0);
}

TEST_CASE("hl_spectrum closed form") {
    const TwoSidedProblem tp{SigmaFunction::zero(512, 2 * pi), kNeumann, kNeumann};
    const Subspectrum s = hl_spectrum(tp, 20);
    REQUIRE(s.size() >= 20);
    for (int n = 1; n <= 20; ++n) CHECK(std::abs(s.lambda(n - 1) - std::pow((n - 1) / 2.0, 2)) <= 1e-8);
    CHECK_THROWS_AS(hl_spectrum(tp, 0), InvalidArgument);
    const TwoSidedProblem odd{SigmaFunction::zero(513, 2 * pi), kNeumann, kNeumann};
    CHECK_THROWS_AS(hl_spectrum(odd, 4), InvalidArgument);
}

TEST_CASE("hl_spectrum matches a dense scan") {
    const BoundaryPolyPair right{{1.0}, {0.4}};
    const TwoSidedProblem tp{step_left_zero_right(), {{1.0}, {0.5}}, right};
    const SigmaFunction left = tp.sigma_left();
    const EntirePair f = hl_entire_pair(tp.sigma_right(), right);
    const auto ref = scan_zeros([&](double l) { return char_delta(left, tp.left, f, l).real(); }, -3.0, 8.0, 1e-3);
    const Subspectrum s = hl_spectrum(tp, static_cast<int>(ref.size()));
    REQUIRE(s.size() >= static_cast<int>(ref.size()));
    for (size_t i = 0; i < ref.size(); ++i) CHECK(std::abs(s.lambda(i) - ref[i]) <= 1e-6 * (1 + std::abs(ref[i])));
    CHECK(no_common_zero(f, s.lambdas(), 1e-8));
}

TEST_CASE("half-inverse reconstruction and the drop rule") {
    const Grid g(128, pi);
    {
        const BoundaryPolyPair right{{1.0}, {0.4}};
        const TwoSidedProblem tp{step_left_zero_right(), {{1.0}, {0.5}}, right};
        const Subspectrum s = hl_spectrum(tp, 42);
        const HlReconstruction hr = hl_reconstruct(tp.sigma_right(), right, 1, s, 0, g, 40);
        CHECK(hr.hl.guaranteed_drop == 0);
        CHECK_FALSE(hr.hl.drop_exceeds_rule);
        CHECK(oracle_errors(hr.rec.data, tp.sigma_left(), tp.left).worst() <= 1e-3);
        CHECK(hl_reconstruct(tp.sigma_right(), right, 1, s, 1, g, 40).hl.drop_exceeds_rule);
    }
    const std::string name = "step-p1-r3";
    const TwoSidedProblem& tp = corpus_problem(name).problem;
    const Subspectrum& s = corpus_spectrum(name);
    const HlReconstruction one = hl_reconstruct(tp.sigma_right(), tp.right, 1, s, 1, g, 40);
    CHECK(one.hl.guaranteed_drop == 1);
    CHECK_FALSE(one.hl.drop_exceeds_rule);
    CHECK(oracle_errors(one.rec.data, tp.sigma_left(), tp.left).worst() <= 1e-3);
    for (int n : {32, 40, 48}) {
        const HlReconstruction two = hl_reconstruct(tp.sigma_right(), tp.right, 1, s, 2, g, n);
        CHECK(two.hl.drop_exceeds_rule);
        CHECK(two.rec.report.sv_ratio <= 1e-8);
        CHECK(two.rec.report.non_unique);
    }
}

TEST_CASE("driver preconditions") {
    const Grid g(64, pi);
    const SigmaFunction z = SigmaFunction::zero(256);
    const Subspectrum s({1.0, 2.0, 3.0, 4.0, 5.0});
    CHECK_THROWS_AS(hl_reconstruct(z, kP3, 2, s, 0, g), ParityMismatch);
    CHECK_THROWS_AS(hl_reconstruct(z, {{0.7}, {0.4, 1.0}}, 1, s, 0, g), ParityMismatch);
    CHECK_THROWS_AS(hl_reconstruct(z, kNeumann, 3, s, 0, g), ParityMismatch);
    CHECK_THROWS_AS(hl_reconstruct(z, kP3, 1, s, 5, g), InvalidArgument);
    CHECK_THROWS_AS(hl_reconstruct(z, kP3, 1, s, -1, g), InvalidArgument);
}

TEST_CASE("growth envelope of f at the eigenvalues") {
    for (const auto& c : hl_corpus()) {
        const TwoSidedProblem& tp = c.problem;
        const int r = tp.r();
        const EntirePair f = hl_entire_pair(tp.sigma_right(), tp.right);
        const Subspectrum& s = corpus_spectrum(c.name);
        REQUIRE(no_common_zero(f, s.lambdas(), 1e-8));
        // (1 + |rho|) stands in for |rho| so the bounds stay meaningful near lambda = 0.
        double upper = 0, lower = INFINITY;
        for (int n = 0; n < 30; ++n) {
            const FValues v = f(s.lambda(n));
            const double m = 1.0 + std::abs(s.rho(n));
            upper = std::max({upper, std::abs(v.f1) / std::pow(m, r - 1), std::abs(v.f2) / std::pow(m, r)});
            lower = std::min(lower, (std::norm(v.f1) + std::norm(v.f2) / (m * m)) / std::pow(m, 2 * (r - 1)));
        }
        CHECK(upper / std::sqrt(lower) < 1e3);
    }
}

TEST_CASE("conditioning collapses one drop past the rule") {
    for (const std::string name : {"step-p1-r1", "smooth-p1-r3", "step-p3-r5", "smooth-p3-r3", "zero-p1-r3", "step-p1-r3"}) {
        const TwoSidedProblem& tp = corpus_problem(name).problem;
        const int rule = (tp.r() - tp.p()) / 2;
        for (int n : {32, 48}) {
            double worst_ok = 0;
            for (int drop = 0; drop <= rule; ++drop) worst_ok = std::max(worst_ok, condition_at(name, drop, n));
            CHECK(worst_ok < 1e6);
            CHECK(condition_at(name, rule + 1, n) >= 10.0 * worst_ok);
        }
    }
}

TEST_CASE("corpus spectra are simple and nonzero") {
    for (const CorpusProblem& c : corpus()) {
        CAPTURE(c.name);
        const SubspectrumReport rep = corpus_spectrum(c.name).classify();
        CHECK(rep.class_s);
        CHECK(rep.nonzero);
    }
}

}
