/*
   Copyright 2026 The kmf authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef KMF_IO_HPP
#define KMF_IO_HPP

#include <fstream>
#include <json.hpp>
#include <string>
#include <variant>

#include "sing.hpp"

namespace kmf {

using nlohmann::json;

inline constexpr int kFormatVersion = 1;

/// Runtime description of the coefficient field, as read from a file.
struct FieldSpec {
    bool rational = true;
    int64_t p = 0;

    friend bool operator==(const FieldSpec& a, const FieldSpec& b) {
        return a.rational == b.rational && (a.rational || a.p == b.p);
    }
};

inline json field_spec_to_json(const FieldSpec& fs) {
    if (fs.rational) return json("Q");
    return json{{"Fp", fs.p}};
}

inline FieldSpec parse_field_spec(const json& j) {
    if (j.is_string() && j.get<std::string>() == "Q") return FieldSpec{true, 0};
    if (j.is_object() && j.contains("Fp") && j["Fp"].is_number_integer())
        return FieldSpec{false, j["Fp"].get<int64_t>()};
    throw ParseError("field must be \"Q\" or {\"Fp\": p}");
}

// element <-> json
inline json elem_to_json(const Rationals& f, const Rationals::Elem& e) { return json(f.to_string(e)); }
inline json elem_to_json(const PrimeField&, const PrimeField::Elem& e) { return json(e); }

inline Rationals::Elem elem_from_json(const Rationals& f, const json& j) {
    if (j.is_string()) return f.parse(j.get<std::string>());
    if (j.is_number_integer()) return f.from_int(j.get<long long>());
    throw ParseError("rational coefficients must be \"num/den\" strings");
}
inline PrimeField::Elem elem_from_json(const PrimeField& f, const json& j) {
    if (j.is_number_integer()) return f.from_int(j.get<long long>());
    throw ParseError("F_p coefficients must be plain integers");
}

template <CoefficientField F>
json poly_to_json(const Poly<F>& p) {
    json out = json::array();
    for (const auto& c : p.coeffs()) out.push_back(elem_to_json(p.field(), c));
    return out;
}

template <CoefficientField F>
Poly<F> poly_from_json(const F& f, const json& j) {
    if (!j.is_array()) throw ParseError("polynomial must be an array of coefficients");
    std::vector<typename F::Elem> c;
    for (const auto& e : j) c.push_back(elem_from_json(f, e));
    return Poly<F>(f, std::move(c));
}

template <CoefficientField F>
json matrix_to_json(const PolyMatrix<F>& m) {
    json entries = json::array();
    for (size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (size_t c = 0; c < m.cols(); ++c) row.push_back(poly_to_json(m.at(r, c)));
        entries.push_back(std::move(row));
    }
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

template <CoefficientField F>
PolyMatrix<F> matrix_from_json(const F& f, const json& j) {
    if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("entries"))
        throw ParseError("matrix needs rows, cols and entries");
    size_t rows = j["rows"].get<size_t>(), cols = j["cols"].get<size_t>();
    const auto& entries = j["entries"];
    if (!entries.is_array() || entries.size() != rows) throw ParseError("matrix entries have wrong row count");
    PolyMatrix<F> out(f, rows, cols);
    for (size_t r = 0; r < rows; ++r) {
        if (!entries[r].is_array() || entries[r].size() != cols)
            throw ParseError("matrix row " + std::to_string(r) + " has wrong length");
        for (size_t c = 0; c < cols; ++c) out.at(r, c) = poly_from_json(f, entries[r][c]);
    }
    return out;
}

inline FieldSpec spec_of_field(const Rationals&) { return FieldSpec{true, 0}; }
inline FieldSpec spec_of_field(const PrimeField& f) { return FieldSpec{false, f.p}; }

template <CoefficientField F>
json tower_to_json(const RingTower<F>& t) {
    return json{{"field", field_spec_to_json(spec_of_field(t.field))}, {"e", t.e}, {"u", elem_to_json(t.field, t.u)}};
}

template <CoefficientField F>
RingTower<F> tower_from_json(const F& f, const json& j) {
    if (!j.is_object() || !j.contains("e") || !j.contains("u")) throw ParseError("tower needs e and u");
    if (j.contains("field") && !(parse_field_spec(j["field"]) == spec_of_field(f)))
        throw ParseError("tower field disagrees with the ambient field");
    long e = j["e"].get<long>();
    auto u = elem_from_json(f, j["u"]);
    try {
        return RingTower<F>(f, e, u);
    } catch (const InvalidObject& err) {
        throw ParseError(err.what());
    }
}

template <CoefficientField F>
std::vector<PolyMatrix<F>> matrices_from_json(const F& f, const json& j, const std::string& name) {
    if (!j.contains(name)) throw ParseError("missing matrix list '" + name + "'");
    if (!j[name].is_array()) throw ParseError("'" + name + "' must be an array of matrices");
    std::vector<PolyMatrix<F>> out;
    for (const auto& m : j[name]) out.push_back(matrix_from_json(f, m));
    return out;
}

// ---------------------------------------------------------------------------
// objects

template <CoefficientField F>
json to_json(const OneHomotopyModule<F>& m) {
    json d = json::array(), h = json::array();
    for (const auto& mat : m.d) d.push_back(matrix_to_json(mat));
    for (const auto& mat : m.h[0]) h.push_back(matrix_to_json(mat));
    return json{{"version", kFormatVersion}, {"tower", tower_to_json(m.tower)},     {"kind", "one"},
                {"min_degree", m.shape.min_degree}, {"ranks", m.shape.ranks},
                {"matrices", json{{"d", std::move(d)}, {"h", std::move(h)}}}};
}

template <CoefficientField F>
json to_json(const TwoHomotopyModule<F>& m) {
    json d = json::array(), h1 = json::array(), h2 = json::array();
    for (const auto& mat : m.d) d.push_back(matrix_to_json(mat));
    for (const auto& mat : m.h[0]) h1.push_back(matrix_to_json(mat));
    for (const auto& mat : m.h[1]) h2.push_back(matrix_to_json(mat));
    return json{{"version", kFormatVersion}, {"tower", tower_to_json(m.tower)},     {"kind", "two"},
                {"min_degree", m.shape.min_degree}, {"ranks", m.shape.ranks},
                {"matrices", json{{"d", std::move(d)}, {"h1", std::move(h1)}, {"h2", std::move(h2)}}}};
}

template <CoefficientField F>
json to_json(const MatrixFactorization<F>& e) {
    return json{{"version", kFormatVersion},
                {"tower", tower_to_json(e.tower)},
                {"kind", "mf"},
                {"ranks", json::array({e.rank0(), e.rank1()})},
                {"matrices", json{{"d", json::array({matrix_to_json(e.d)})}, {"h", json::array({matrix_to_json(e.h)})}}}};
}

/// A parsed object file of any kind, over a fixed field.
template <CoefficientField F>
struct LoadedObject {
    std::variant<OneHomotopyModule<F>, TwoHomotopyModule<F>, MatrixFactorization<F>> value;

    const RingTower<F>& tower() const {
        return std::visit([](const auto& v) -> const RingTower<F>& { return v.tower; }, value);
    }
    std::string kind() const {
        if (std::holds_alternative<OneHomotopyModule<F>>(value)) return "one";
        if (std::holds_alternative<TwoHomotopyModule<F>>(value)) return "two";
        return "mf";
    }
};

template <CoefficientField F>
json to_json(const LoadedObject<F>& obj) {
    return std::visit([](const auto& v) { return to_json(v); }, obj.value);
}

template <CoefficientField F>
LoadedObject<F> object_from_json(const F& f, const json& j) {
    if (!j.is_object()) throw ParseError("object file must be a JSON object");
    if (!j.contains("version") || j["version"].get<int>() != kFormatVersion)
        throw ParseError("unsupported or missing format version");
    if (!j.contains("tower") || !j.contains("kind") || !j.contains("matrices"))
        throw ParseError("object file needs tower, kind and matrices");
    auto tower = tower_from_json(f, j["tower"]);
    std::string kind = j["kind"].get<std::string>();
    const auto& mats = j["matrices"];
    try {
        if (kind == "mf") {
            auto d = matrices_from_json(f, mats, "d");
            auto h = matrices_from_json(f, mats, "h");
            if (d.size() != 1 || h.size() != 1) throw ParseError("mf objects carry exactly one d and one h");
            auto e = make_mf(tower, d[0], h[0]);
            if (j.contains("ranks")) {
                auto ranks = j["ranks"].get<std::vector<size_t>>();
                if (ranks.size() != 2 || ranks[0] != e.rank0() || ranks[1] != e.rank1())
                    throw ParseError("declared mf ranks disagree with the matrices");
            }
            return LoadedObject<F>{std::move(e)};
        }
        if (!j.contains("min_degree") || !j.contains("ranks"))
            throw ParseError("module objects need min_degree and ranks");
        GradedFree shape(j["min_degree"].get<int>(), j["ranks"].get<std::vector<size_t>>());
        auto d = matrices_from_json(f, mats, "d");
        if (kind == "one")
            return LoadedObject<F>{make_one(tower, shape, d, matrices_from_json(f, mats, "h"))};
        if (kind == "two")
            return LoadedObject<F>{
                make_two(tower, shape, d, matrices_from_json(f, mats, "h1"), matrices_from_json(f, mats, "h2"))};
        throw ParseError("unknown kind '" + kind + "'");
    } catch (const DimMismatch& e) {
        throw ParseError(std::string("inconsistent dimensions: ") + e.what());
    } catch (const FieldMismatch& e) {
        throw ParseError(std::string("inconsistent fields: ") + e.what());
    }
}

// ---------------------------------------------------------------------------
// morphism files: self-contained, embedding source and target

template <CoefficientField F, int NH>
json morphism_to_json(const DgMorphism<F, NH>& phi) {
    json comps = json::array();
    for (const auto& mat : phi.comps) comps.push_back(matrix_to_json(mat));
    json src = to_json(phi.source), tgt = to_json(phi.target);
    return json{{"version", kFormatVersion}, {"kind", "map"},      {"degree", phi.degree},
                {"source", std::move(src)},  {"target", std::move(tgt)}, {"components", std::move(comps)}};
}

template <CoefficientField F>
json morphism_to_json(const MfMorphism<F>& phi) {
    return json{{"version", kFormatVersion},
                {"kind", "map"},
                {"degree", 0},
                {"source", to_json(phi.source)},
                {"target", to_json(phi.target)},
                {"components", json::array({matrix_to_json(phi.phi0), matrix_to_json(phi.phi1)})}};
}

template <CoefficientField F>
struct LoadedMap {
    std::variant<DgMorphism<F, 1>, DgMorphism<F, 2>, MfMorphism<F>> value;
};

template <CoefficientField F>
LoadedMap<F> map_from_json(const F& f, const json& j) {
    if (!j.is_object() || !j.contains("kind") || j["kind"].get<std::string>() != "map")
        throw ParseError("not a morphism file");
    if (!j.contains("source") || !j.contains("target") || !j.contains("components"))
        throw ParseError("morphism file needs source, target and components");
    auto src = object_from_json(f, j["source"]);
    auto tgt = object_from_json(f, j["target"]);
    if (src.kind() != tgt.kind()) throw ParseError("morphism endpoints have different kinds");
    int degree = j.contains("degree") ? j["degree"].get<int>() : 0;
    std::vector<PolyMatrix<F>> comps;
    for (const auto& m : j["components"]) comps.push_back(matrix_from_json(f, m));
    try {
        if (src.kind() == "one")
            return LoadedMap<F>{make_morphism(std::get<OneHomotopyModule<F>>(src.value),
                                              std::get<OneHomotopyModule<F>>(tgt.value), degree, std::move(comps))};
        if (src.kind() == "two")
            return LoadedMap<F>{make_morphism(std::get<TwoHomotopyModule<F>>(src.value),
                                              std::get<TwoHomotopyModule<F>>(tgt.value), degree, std::move(comps))};
        auto& e = std::get<MatrixFactorization<F>>(src.value);
        auto& t = std::get<MatrixFactorization<F>>(tgt.value);
        if (comps.size() != 2) throw ParseError("mf morphisms carry exactly two components");
        require_same_tower(e.tower, t.tower, "morphism endpoints");
        if (comps[0].rows() != t.rank0() || comps[0].cols() != e.rank0() || comps[1].rows() != t.rank1() ||
            comps[1].cols() != e.rank1())
            throw ParseError("mf morphism components have wrong shapes");
        return LoadedMap<F>{MfMorphism<F>{e, t, std::move(comps[0]), std::move(comps[1])}};
    } catch (const DimMismatch& e) {
        throw ParseError(std::string("inconsistent dimensions: ") + e.what());
    } catch (const TowerMismatch& e) {
        throw ParseError(std::string("inconsistent towers: ") + e.what());
    }
}

// ---------------------------------------------------------------------------
// presentations and reports

template <CoefficientField F>
json to_json(const FgModulePresentation<F>& p) {
    json tors = json::array();
    for (const auto& t : p.torsion) tors.push_back(poly_to_json(t));
    return json{{"free_rank", p.free_rank}, {"torsion", std::move(tors)}, {"pretty", p.to_string()}};
}

template <CoefficientField F>
json to_json(const CohomologyTable<F>& t) {
    json groups = json::array();
    for (const auto& g : t.groups) groups.push_back(to_json(g));
    return json{{"min_degree", t.min_degree}, {"groups", std::move(groups)}, {"pretty", t.to_string()}};
}

inline json to_json(const SingReport& r) {
    json j{{"object", r.object_id},
           {"is_perfect", r.is_perfect},
           {"relative_kernel_member", r.relative_kernel_member},
           {"euler_class", r.euler_class},
           {"diagnostics", r.diagnostics}};
    if (r.periodicity_verified) j["periodicity_verified"] = *r.periodicity_verified;
    return j;
}

// ---------------------------------------------------------------------------
// files

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
}

inline void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write '" + path + "'");
    out << j.dump(2) << "\n";
}

}  // namespace kmf

#endif
