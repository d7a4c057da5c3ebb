#include "slinv/corpus.hpp"

#include <cmath>

namespace slinv {

namespace {

const BoundaryPolyPair kP1{{1.0}, {0.5}};
const BoundaryPolyPair kP2{{0.7}, {0.4, 1.0}};
const BoundaryPolyPair kP3{{0.3, 1.0}, {0.5, 0.2}};
const BoundaryPolyPair kR1{{1.0}, {0.4}};
const BoundaryPolyPair kR5{{0.1, 0.2, 1.0}, {0.5, 0.2, 0.3}};

}  // namespace

SigmaFunction corpus_sigma(const std::string& kind, int cells, double length) {
    if (kind == "zero") return SigmaFunction::zero(cells, length);
    if (kind == "step") return SigmaFunction::step(cells, cells / 4, 0.0, 0.8, length);
    if (kind == "smooth")
        return SigmaFunction::sampled(cells, length, [](double t) { return 0.5 * std::sin(2 * t) + 0.3 * std::cos(t); });
    throw InvalidArgument("unknown corpus sigma '" + kind + "'");
}

std::vector<CorpusProblem> corpus() {
    return {
        {"step-p1-r1", {corpus_sigma("step"), kP1, kR1}},
        {"smooth-p1-r3", {corpus_sigma("smooth"), kP1, kP3}},
        {"smooth-p2-r3", {corpus_sigma("smooth"), kP2, kP3}},
        {"step-p2-r3", {corpus_sigma("step"), kP2, kP3}},
        {"smooth-p3-r3", {corpus_sigma("smooth"), kP3, kP3}},
        {"step-p3-r5", {corpus_sigma("step"), kP3, kR5}},
    };
}

std::vector<CorpusProblem> hl_corpus() {
    return {
        {"zero-p1-r3", {corpus_sigma("zero"), kP1, kP3}},
        {"step-p1-r3", {corpus_sigma("step"), kP1, kP3}},
    };
}

const CorpusProblem& corpus_problem(const std::string& name) {
    static const std::vector<CorpusProblem> all = [] {
        auto v = corpus();
        for (auto& p : hl_corpus()) v.push_back(p);
        return v;
    }();
    for (const auto& p : all)
        if (p.name == name) return p;
    throw InvalidArgument("unknown corpus problem '" + name + "'");
}

}  // namespace slinv
