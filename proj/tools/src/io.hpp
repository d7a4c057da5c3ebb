#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "slinv/slinv.hpp"

namespace slinv::cli {

using json = nlohmann::ordered_json;

// Malformed or inconsistent input files; mapped to exit code 2.
class SchemaError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);
json parse_json(const std::string& text, const std::string& where);
// 64-bit FNV-1a, lowercase hex.
std::string fnv1a_hex(const std::string& bytes);

cplx parse_complex(const json& j, const std::string& where);
std::vector<cplx> parse_complex_list(const json& j, const std::string& where);
SigmaFunction parse_sigma(const json& j, const std::string& where);
BoundaryPolyPair parse_pair(const json& obj, const char* k1, const char* k2, const std::string& where);
EntirePair parse_f(const json& j);
Subspectrum parse_subspectrum(const json& j, const std::string& where);

struct ProblemFile {
    std::optional<SigmaFunction> sigma;
    std::optional<BoundaryPolyPair> pair;
    int p = 0;
    std::optional<EntirePair> f;
    std::optional<Subspectrum> subspectrum;
};

ProblemFile parse_problem(const json& j);

struct TwoSidedFile {
    TwoSidedProblem problem;
    std::optional<Subspectrum> spectrum;
};

TwoSidedFile parse_two_sided(const json& j);

json to_json(cplx z);
json to_json(const CVec& v);
json to_json(const std::vector<cplx>& v);
json to_json(const SigmaFunction& s);
json to_json(const BoundaryPolyPair& pair, const char* k1, const char* k2);
json to_json(const CauchyData& d);
json to_json(const SubspectrumReport& r);
json to_json(const ReconstructReport& r);

// Deterministic text form: two-space indent and a trailing newline.
std::string dump(const json& j);

}  // namespace slinv::cli
