#pragma once

#include <string>
#include <vector>

#include "slinv/hl.hpp"

namespace slinv {

// Reference problems on [0, 2 pi] used by the tests, the benchmarks and `slinv corpus`.
struct CorpusProblem {
    std::string name;
    TwoSidedProblem problem;
};

SigmaFunction corpus_sigma(const std::string& kind, int cells = 512, double length = 2 * pi);

std::vector<CorpusProblem> corpus();
// The two instances used for the eigenvalue asymptotics check (sigma = 0 and a step, p = 1, r = 3).
std::vector<CorpusProblem> hl_corpus();

const CorpusProblem& corpus_problem(const std::string& name);

}  // namespace slinv
