#include "io.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <sstream>

namespace slinv::cli {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SchemaError("cannot read '" + path + "'");
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << content;
}

json parse_json(const std::string& text, const std::string& where) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw SchemaError(where + ": " + e.what());
    }
}

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

namespace {

double parse_real(const json& j, const std::string& where) {
    if (!j.is_number()) throw SchemaError(where + ": expected a number");
    const double x = j.get<double>();
    if (!std::isfinite(x)) throw SchemaError(where + ": non-finite number");
    return x;
}

const json& require(const json& obj, const char* key, const std::string& where) {
    if (!obj.is_object()) throw SchemaError(where + ": expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) throw SchemaError(where + ": missing field '" + key + "'");
    return *it;
}

}  // namespace

cplx parse_complex(const json& j, const std::string& where) {
    if (j.is_number()) return parse_real(j, where);
    if (j.is_array() && j.size() == 2) return {parse_real(j[0], where + "[0]"), parse_real(j[1], where + "[1]")};
    throw SchemaError(where + ": expected a number or a [re, im] pair");
}

std::vector<cplx> parse_complex_list(const json& j, const std::string& where) {
    if (!j.is_array()) throw SchemaError(where + ": expected an array");
    std::vector<cplx> out;
    out.reserve(j.size());
    for (size_t i = 0; i < j.size(); ++i) out.push_back(parse_complex(j[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

SigmaFunction parse_sigma(const json& j, const std::string& where) {
    const double X = parse_real(require(j, "interval", where), where + ".interval");
    const std::vector<cplx> s = parse_complex_list(require(j, "samples", where), where + ".samples");
    if (s.size() < 17) throw SchemaError(where + ".samples: need at least 17 samples (16 cells)");
    CVec samples = Eigen::Map<const CVec>(s.data(), static_cast<Eigen::Index>(s.size()));
    std::map<int, cplx> jumps;
    if (auto it = j.find("jumps"); it != j.end()) {
        if (!it->is_array()) throw SchemaError(where + ".jumps: expected an array");
        for (size_t i = 0; i < it->size(); ++i) {
            const std::string w = where + ".jumps[" + std::to_string(i) + "]";
            const json& node = require((*it)[i], "node", w);
            if (!node.is_number_integer()) throw SchemaError(w + ".node: expected an integer");
            jumps[node.get<int>()] = parse_complex(require((*it)[i], "left", w), w + ".left");
        }
    }
    try {
        return SigmaFunction(Grid(static_cast<int>(s.size()) - 1, X), samples, jumps);
    } catch (const InvalidArgument& e) {
        throw SchemaError(where + ": " + e.what());
    }
}

BoundaryPolyPair parse_pair(const json& obj, const char* k1, const char* k2, const std::string& where) {
    BoundaryPolyPair pair{parse_complex_list(require(obj, k1, where), where + "." + k1),
                          parse_complex_list(require(obj, k2, where), where + "." + k2)};
    if (pair.a.empty() || pair.b.empty()) throw SchemaError(where + ": polynomial coefficient arrays must be nonempty");
    try {
        validate_rp(pair);
    } catch (const Error& e) {
        throw SchemaError(where + ": " + e.what());
    }
    return pair;
}

EntirePair parse_f(const json& j) {
    const std::string where = "f";
    const json& kind = require(j, "kind", where);
    if (!kind.is_string()) throw SchemaError("f.kind: expected a string");
    const std::string k = kind.get<std::string>();
    EntirePair f;
    if (k == "closed_form_neumann_right") {
        f = EntirePair::constant(1.0, 0.0);
    } else if (k == "closed_form_dirichlet_right") {
        f = EntirePair::constant(0.0, 1.0);
    } else if (k == "constant") {
        f = EntirePair::constant(parse_complex(require(j, "f1", where), "f.f1"), parse_complex(require(j, "f2", where), "f.f2"));
    } else if (k == "polynomial") {
        f = EntirePair::polynomial(parse_complex_list(require(j, "f1", where), "f.f1"),
                                   parse_complex_list(require(j, "f2", where), "f.f2"));
    } else if (k == "hl_right_half") {
        const SigmaFunction s = parse_sigma(require(j, "sigma", where), "f.sigma");
        f = hl_entire_pair(s, parse_pair(j, "r1", "r2", where));
    } else {
        throw SchemaError("f.kind: unknown kind '" + k + "'");
    }
    f.kind = k;
    return f;
}

Subspectrum parse_subspectrum(const json& j, const std::string& where) {
    const json* arr = &j;
    if (j.is_object()) {
        if (j.contains("subspectrum"))
            arr = &j["subspectrum"];
        else if (j.contains("eigenvalues"))
            arr = &j["eigenvalues"];
        else
            throw SchemaError(where + ": expected 'subspectrum' or 'eigenvalues'");
    }
    const std::vector<cplx> l = parse_complex_list(*arr, where);
    if (l.empty()) throw SchemaError(where + ": subspectrum is empty");
    return Subspectrum(l);
}

ProblemFile parse_problem(const json& j) {
    if (!j.is_object()) throw SchemaError("problem: expected an object");
    ProblemFile pf;
    if (j.contains("sigma")) pf.sigma = parse_sigma(j["sigma"], "sigma");
    if (j.contains("p1") || j.contains("p2")) pf.pair = parse_pair(j, "p1", "p2", "problem");
    if (j.contains("p")) {
        if (!j["p"].is_number_integer() || j["p"].get<int>() < 1) throw SchemaError("p: expected a positive integer");
        pf.p = j["p"].get<int>();
        if (pf.pair && pf.pair->p() != pf.p) throw SchemaError("p disagrees with the degrees of p1, p2");
    } else if (pf.pair) {
        pf.p = pf.pair->p();
    }
    if (j.contains("f")) pf.f = parse_f(j["f"]);
    if (j.contains("subspectrum")) pf.subspectrum = parse_subspectrum(j["subspectrum"], "subspectrum");
    return pf;
}

TwoSidedFile parse_two_sided(const json& j) {
    TwoSidedFile tf;
    tf.problem.sigma_full = parse_sigma(require(j, "sigma_full", "two_sided"), "sigma_full");
    const Grid& g = tf.problem.sigma_full.grid();
    if (g.cells % 2 || std::abs(g.length - 2 * pi) > 1e-9)
        throw SchemaError("sigma_full: must live on [0, 2 pi] with an even number of cells");
    if (g.length != 2 * pi) tf.problem.sigma_full = SigmaFunction(Grid(g.cells, 2 * pi), tf.problem.sigma_full.samples(),
                                                                   tf.problem.sigma_full.jumps());
    tf.problem.left = parse_pair(j, "p1", "p2", "two_sided");
    tf.problem.right = parse_pair(j, "r1", "r2", "two_sided");
    if (j.contains("spectrum")) tf.spectrum = parse_subspectrum(j["spectrum"], "spectrum");
    return tf;
}

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

json to_json(const CVec& v) {
    json a = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(to_json(v[i]));
    return a;
}

json to_json(const std::vector<cplx>& v) {
    json a = json::array();
    for (const auto& z : v) a.push_back(to_json(z));
    return a;
}

json to_json(const SigmaFunction& s) {
    json j;
    j["interval"] = s.length();
    j["samples"] = to_json(s.samples());
    if (!s.jumps().empty()) {
        json jumps = json::array();
        for (const auto& [node, left] : s.jumps()) jumps.push_back({{"node", node}, {"left", to_json(left)}});
        j["jumps"] = jumps;
    }
    return j;
}

json to_json(const BoundaryPolyPair& pair, const char* k1, const char* k2) {
    return {{k1, to_json(pair.a)}, {k2, to_json(pair.b)}};
}

json to_json(const CauchyData& d) {
    json j;
    j["p"] = d.p();
    j["grid"] = {{"cells", d.grid.cells}, {"length", d.grid.length}};
    j["J"] = to_json(d.J);
    j["G"] = to_json(d.G);
    j["A"] = to_json(d.A);
    if (d.J_series && d.G_series) {
        j["legendre"] = {{"degree", d.J_series->degree()},
                         {"J", to_json(d.J_series->coeffs)},
                         {"G", to_json(d.G_series->coeffs)}};
    }
    return j;
}

json to_json(const SubspectrumReport& r) {
    return {{"class_s", r.class_s},       {"min_separation", r.min_separation}, {"nonzero", r.nonzero},
            {"max_abs_im_rho", r.max_abs_im_rho}, {"inv_rho_sq_sum", r.inv_rho_sq_sum}, {"class_a", r.class_a}};
}

json to_json(const ReconstructReport& r) {
    return {{"rows", r.rows},
            {"dimension", r.dimension},
            {"rank", r.rank},
            {"degree", r.degree},
            {"basis", r.basis},
            {"reg", r.reg},
            {"residual", r.residual},
            {"condition", std::isfinite(r.condition) ? json(r.condition) : json(nullptr)},
            {"sv_ratio", r.sv_ratio},
            {"underdetermined", r.underdetermined},
            {"non_unique", r.non_unique},
            {"f_common_zero_free", r.f_common_zero_free},
            {"classes", to_json(r.classes)}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace slinv::cli
