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

// kmf: exact calculator for Koszul dg-modules over ramified towers k[t] -> k[s]
// and their matrix-factorization model of the singularity category.
//
// Exit codes: 0 success, 1 mathematical failure, 2 I/O or parse failure.

#include <CLI11.hpp>
#include <iostream>

#include <kmf/io.hpp>
#include <kmf/selftest.hpp>

namespace {

using namespace kmf;

constexpr int kExitOk = 0;
constexpr int kExitMath = 1;
constexpr int kExitParse = 2;

struct RunOptions {
    std::string op;
    std::vector<std::string> paths;
    int i = 1;       // pushforward/pullback index
    int k = 1;       // shift amount
    std::string c;   // twist scalar literal
    long e2 = 1;     // extension degree
    std::string u2;  // extension image unit literal
    std::string out;
    std::string out_sub, out_quot, out_incl, out_proj;  // split3 outputs
};

/// Parses the field of the first input file and dispatches fn on the typed
/// field object.
template <class Fn>
int with_field_of(const std::string& path, Fn&& fn) {
    json j = read_json_file(path);
    const json* tower = nullptr;
    if (j.contains("tower"))
        tower = &j["tower"];
    else if (j.contains("source") && j["source"].contains("tower"))
        tower = &j["source"]["tower"];
    if (!tower || !tower->contains("field")) throw ParseError(path + ": no field description found");
    FieldSpec fs = parse_field_spec((*tower)["field"]);
    if (fs.rational) return fn(Rationals{});
    return fn(PrimeField(fs.p));
}

template <CoefficientField F>
LoadedObject<F> load_object(const F& f, const std::string& path) {
    return object_from_json(f, read_json_file(path));
}

template <CoefficientField F, class T>
const T& expect_kind(const LoadedObject<F>& obj, const std::string& path) {
    if (!std::holds_alternative<T>(obj.value))
        throw InvalidObject(path + ": object has kind '" + obj.kind() + "', which this operation does not accept");
    return std::get<T>(obj.value);
}

void emit(const json& report) { std::cout << report.dump(2) << "\n"; }

template <CoefficientField F>
json save_or_inline(const std::string& out, const json& obj) {
    if (out.empty()) return obj;
    write_json_file(out, obj);
    return json(out);
}

// -------------------------------------------------------------------------
// validate

template <CoefficientField F>
int cmd_validate_typed(const F& f, const std::string& path) {
    auto obj = load_object(f, path);
    ValidationReport<F> rep = std::visit([](const auto& v) { return validate(v); }, obj.value);
    json violations = json::array();
    for (const auto& v : rep.violations)
        violations.push_back(json{{"rule", v.rule}, {"degree", v.degree}, {"residual", matrix_to_json(v.residual)}});
    std::cout << "object: " << path << " (kind " << obj.kind() << ", tower " << obj.tower().to_string() << ")\n";
    if (rep.ok()) {
        std::cout << "valid: every defining identity holds\n";
    } else {
        std::cout << "INVALID:\n";
        for (const auto& v : rep.violations)
            std::cout << "  " << v.rule << " fails in degree " << v.degree << "\n";
    }
    emit(json{{"object", path}, {"kind", obj.kind()}, {"valid", rep.ok()}, {"violations", violations}});
    return rep.ok() ? kExitOk : kExitMath;
}

// -------------------------------------------------------------------------
// run

template <CoefficientField F>
int cmd_run_typed(const F& f, const RunOptions& opt) {
    const std::string& op = opt.op;
    auto need_paths = [&](size_t n) {
        if (opt.paths.size() != n)
            throw ParseError("operation '" + op + "' needs " + std::to_string(n) + " input file(s)");
    };

    if (op == "cohomology") {
        need_paths(1);
        auto obj = load_object(f, opt.paths[0]);
        CohomologyTable<F> table;
        if (std::holds_alternative<OneHomotopyModule<F>>(obj.value))
            table = cohomology(std::get<OneHomotopyModule<F>>(obj.value));
        else
            table = cohomology(expect_kind<F, TwoHomotopyModule<F>>(obj, opt.paths[0]), nullptr);
        std::cout << (table.groups.empty() ? std::string("all cohomology vanishes\n") : table.to_string());
        emit(json{{"op", op}, {"input", opt.paths[0]}, {"cohomology", to_json(table)}});
        return kExitOk;
    }
    if (op == "hom") {
        need_paths(2);
        auto a = load_object(f, opt.paths[0]);
        auto b = load_object(f, opt.paths[1]);
        if (a.kind() != b.kind()) throw InvalidObject("hom needs two objects of the same kind");
        json terms = json::array();
        if (a.kind() == "one") {
            auto hc = hom_complex(std::get<OneHomotopyModule<F>>(a.value), std::get<OneHomotopyModule<F>>(b.value));
            for (const auto& t : hc.terms)
                terms.push_back(json{{"degree", t.n},
                                     {"rank", t.dim()},
                                     {"cohomology", to_json(hom_cohomology_at(hc, t.n))}});
        } else if (a.kind() == "two") {
            auto hc = hom_complex(std::get<TwoHomotopyModule<F>>(a.value), std::get<TwoHomotopyModule<F>>(b.value));
            for (const auto& t : hc.terms)
                terms.push_back(json{{"degree", t.n},
                                     {"rank", t.dim()},
                                     {"cohomology", to_json(hom_cohomology_at(hc, t.n))}});
        } else {
            throw InvalidObject("hom acts on module objects; use homotopy-classes for mf pairs");
        }
        for (const auto& t : terms)
            std::cout << "Hom^" << t["degree"] << ": free rank " << t["rank"] << ", H = "
                      << t["cohomology"]["pretty"].template get<std::string>() << "\n";
        emit(json{{"op", op}, {"inputs", opt.paths}, {"terms", terms}});
        return kExitOk;
    }
    if (op == "homotopy-classes") {
        need_paths(2);
        auto a = load_object(f, opt.paths[0]);
        auto b = load_object(f, opt.paths[1]);
        if (a.kind() != b.kind()) throw InvalidObject("homotopy-classes needs two objects of the same kind");
        FgModulePresentation<F> classes;
        if (a.kind() == "one")
            classes = homotopy_classes(std::get<OneHomotopyModule<F>>(a.value), std::get<OneHomotopyModule<F>>(b.value));
        else if (a.kind() == "two")
            classes = homotopy_classes(std::get<TwoHomotopyModule<F>>(a.value), std::get<TwoHomotopyModule<F>>(b.value));
        else
            classes = mf_hom_classes(std::get<MatrixFactorization<F>>(a.value), std::get<MatrixFactorization<F>>(b.value));
        std::cout << "homotopy classes: " << classes.to_string() << "\n";
        emit(json{{"op", op}, {"inputs", opt.paths}, {"classes", to_json(classes)}});
        return kExitOk;
    }
    if (op == "fold") {
        need_paths(1);
        auto m = expect_kind<F, OneHomotopyModule<F>>(load_object(f, opt.paths[0]), opt.paths[0]);
        auto e = fold(m);
        emit(json{{"op", op}, {"input", opt.paths[0]}, {"result", save_or_inline<F>(opt.out, to_json(e))}});
        return kExitOk;
    }
    if (op == "unfold") {
        need_paths(1);
        auto e = expect_kind<F, MatrixFactorization<F>>(load_object(f, opt.paths[0]), opt.paths[0]);
        auto m = unfold(e);
        emit(json{{"op", op}, {"input", opt.paths[0]}, {"result", save_or_inline<F>(opt.out, to_json(m))}});
        return kExitOk;
    }
    if (op == "pushforward") {
        need_paths(1);
        auto m = expect_kind<F, TwoHomotopyModule<F>>(load_object(f, opt.paths[0]), opt.paths[0]);
        auto r = pushforward_a(opt.i, m);
        emit(json{{"op", op}, {"i", opt.i}, {"input", opt.paths[0]}, {"result", save_or_inline<F>(opt.out, to_json(r))}});
        return kExitOk;
    }
    if (op == "pullback") {
        need_paths(1);
        auto m = expect_kind<F, OneHomotopyModule<F>>(load_object(f, opt.paths[0]), opt.paths[0]);
        auto r = pullback_a(opt.i, m);
        emit(json{{"op", op}, {"i", opt.i}, {"input", opt.paths[0]}, {"result", save_or_inline<F>(opt.out, to_json(r))}});
        return kExitOk;
    }
    if (op == "diagonal") {
        need_paths(1);
        auto m = expect_kind<F, OneHomotopyModule<F>>(load_object(f, opt.paths[0]), opt.paths[0]);
        auto r = diagonal_pushforward(m);
        emit(json{{"op", op}, {"input", opt.paths[0]}, {"result", save_or_inline<F>(opt.out, to_json(r))}});
        return kExitOk;
    }
    if (op == "cone") {
        need_paths(1);
        auto phi = map_from_json(f, read_json_file(opt.paths[0]));
        json result;
        if (std::holds_alternative<DgMorphism<F, 1>>(phi.value))
            result = to_json(cone(std::get<DgMorphism<F, 1>>(phi.value)).cone);
        else if (std::holds_alternative<DgMorphism<F, 2>>(phi.value))
            result = to_json(cone(std::get<DgMorphism<F, 2>>(phi.value)).cone);
        else
            result = to_json(mf_cone(std::get<MfMorphism<F>>(phi.value)).cone);
        emit(json{{"op", op}, {"input", opt.paths[0]}, {"result", save_or_inline<F>(opt.out, result)}});
        return kExitOk;
    }
    if (op == "shift") {
        need_paths(1);
        auto obj = load_object(f, opt.paths[0]);
        json result;
        if (std::holds_alternative<OneHomotopyModule<F>>(obj.value))
            result = to_json(shift(std::get<OneHomotopyModule<F>>(obj.value), opt.k));
        else if (std::holds_alternative<TwoHomotopyModule<F>>(obj.value))
            result = to_json(shift(std::get<TwoHomotopyModule<F>>(obj.value), opt.k));
        else {
            auto e = std::get<MatrixFactorization<F>>(obj.value);
            for (int s = ((opt.k % 2) + 2) % 2; s > 0; --s) e = mf_shift(e);
            result = to_json(e);
        }
        emit(json{{"op", op}, {"k", opt.k}, {"input", opt.paths[0]}, {"result", save_or_inline<F>(opt.out, result)}});
        return kExitOk;
    }
    if (op == "twist") {
        need_paths(1);
        if (opt.c.empty()) throw ParseError("twist needs --c <scalar>");
        auto c = f.parse(opt.c);
        auto obj = load_object(f, opt.paths[0]);
        json result = std::visit([&](const auto& v) { return to_json(galois_twist(v, c)); }, obj.value);
        emit(json{{"op", op}, {"c", opt.c}, {"input", opt.paths[0]}, {"result", save_or_inline<F>(opt.out, result)}});
        return kExitOk;
    }
    if (op == "extend") {
        need_paths(1);
        auto u2 = opt.u2.empty() ? f.one() : f.parse(opt.u2);
        auto obj = load_object(f, opt.paths[0]);
        json result;
        if (std::holds_alternative<OneHomotopyModule<F>>(obj.value))
            result = to_json(extend_scalars(std::get<OneHomotopyModule<F>>(obj.value), opt.e2, u2));
        else if (std::holds_alternative<TwoHomotopyModule<F>>(obj.value))
            result = to_json(extend_scalars(std::get<TwoHomotopyModule<F>>(obj.value), opt.e2, u2));
        else
            throw InvalidObject("extend acts on module objects");
        emit(json{{"op", op}, {"e2", opt.e2}, {"input", opt.paths[0]}, {"result", save_or_inline<F>(opt.out, result)}});
        return kExitOk;
    }
    if (op == "split3") {
        need_paths(1);
        auto m = expect_kind<F, TwoHomotopyModule<F>>(load_object(f, opt.paths[0]), opt.paths[0]);
        auto split = split_three_term(m);
        json rep{{"op", op},
                 {"input", opt.paths[0]},
                 {"sub", save_or_inline<F>(opt.out_sub, to_json(split.sub))},
                 {"quotient", save_or_inline<F>(opt.out_quot, to_json(split.quotient))},
                 {"inclusion", save_or_inline<F>(opt.out_incl, morphism_to_json(split.inclusion))},
                 {"projection", save_or_inline<F>(opt.out_proj, morphism_to_json(split.projection))},
                 {"middle_cokernel", to_json(split.coker_presentation)}};
        std::cout << "split: sub in degrees [" << split.sub.shape.min_degree << "," << split.sub.shape.top_degree()
                  << "], quotient in degrees [" << split.quotient.shape.min_degree << ","
                  << split.quotient.shape.top_degree() << "]\n";
        emit(rep);
        return kExitOk;
    }
    if (op == "periodicity") {
        need_paths(1);
        auto m = expect_kind<F, TwoHomotopyModule<F>>(load_object(f, opt.paths[0]), opt.paths[0]);
        auto wit = periodicity_witness(m);  // throws ConventionViolation on failure
        std::cout << "QUASI-ISO VERIFIED\n";
        emit(json{{"op", op},
                  {"input", opt.paths[0]},
                  {"verified", true},
                  {"cone", save_or_inline<F>(opt.out, to_json(wit.triangle_cone))}});
        return kExitOk;
    }
    if (op == "perfect") {
        need_paths(1);
        auto m = expect_kind<F, OneHomotopyModule<F>>(load_object(f, opt.paths[0]), opt.paths[0]);
        bool p = is_perfect(m);
        std::cout << (p ? "PERFECT (zero in Sing(t))" : "NOT PERFECT (nontrivial in Sing(t))") << "\n";
        emit(json{{"op", op}, {"input", opt.paths[0]}, {"perfect", p}});
        return kExitOk;
    }
    if (op == "kernel-member") {
        need_paths(1);
        auto m = expect_kind<F, TwoHomotopyModule<F>>(load_object(f, opt.paths[0]), opt.paths[0]);
        bool member = in_relative_kernel(m);
        std::cout << (member ? "IN relative kernel Coh(G_t -> t)" : "NOT in relative kernel") << "\n";
        emit(json{{"op", op}, {"input", opt.paths[0]}, {"kernel_member", member}});
        return kExitOk;
    }
    if (op == "euler") {
        need_paths(1);
        auto m = expect_kind<F, OneHomotopyModule<F>>(load_object(f, opt.paths[0]), opt.paths[0]);
        auto chi = euler_class(m);
        std::cout << "euler class: " << chi << "\n";
        emit(json{{"op", op}, {"input", opt.paths[0]}, {"euler_class", chi}});
        return kExitOk;
    }
    if (op == "report") {
        need_paths(1);
        auto m = expect_kind<F, TwoHomotopyModule<F>>(load_object(f, opt.paths[0]), opt.paths[0]);
        auto rep = localization_diagnostics(m, opt.paths[0]);
        std::cout << rep.diagnostics;
        emit(to_json(rep));
        return kExitOk;
    }
    throw ParseError("unknown operation '" + op + "'");
}

int cmd_run(const RunOptions& opt) {
    if (opt.paths.empty()) throw ParseError("run needs at least one input file");
    return with_field_of(opt.paths[0], [&](auto field) { return cmd_run_typed(field, opt); });
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"kmf: exact Koszul dg-module and matrix-factorization calculator"};
    app.require_subcommand(1);

    std::string validate_path;
    auto* validate_cmd = app.add_subcommand("validate", "check every defining identity of an object file");
    validate_cmd->add_option("file", validate_path, "object file")->required();

    RunOptions ropt;
    auto* run_cmd = app.add_subcommand("run", "apply one engine operation to object files");
    run_cmd->add_option("op", ropt.op,
                        "one of: cohomology hom homotopy-classes fold unfold pushforward pullback diagonal cone "
                        "shift twist extend split3 periodicity perfect kernel-member euler report")
        ->required();
    run_cmd->add_option("paths", ropt.paths, "input files");
    run_cmd->add_option("--i", ropt.i, "index for pushforward/pullback (1 or 2)")->check(CLI::Range(1, 2));
    run_cmd->add_option("--k", ropt.k, "shift amount");
    run_cmd->add_option("--c", ropt.c, "twist scalar (field literal)");
    run_cmd->add_option("--e2", ropt.e2, "extension degree");
    run_cmd->add_option("--u2", ropt.u2, "extension image unit (field literal, default 1)");
    run_cmd->add_option("-o,--out", ropt.out, "output object file");
    run_cmd->add_option("--out-sub", ropt.out_sub, "split3: subobject output file");
    run_cmd->add_option("--out-quot", ropt.out_quot, "split3: quotient output file");
    run_cmd->add_option("--out-incl", ropt.out_incl, "split3: inclusion map output file");
    run_cmd->add_option("--out-proj", ropt.out_proj, "split3: projection map output file");

    kmf::selftest::Config stc;
    std::string field_name = "Q";
    auto* selftest_cmd = app.add_subcommand("selftest", "run the randomized invariant battery");
    selftest_cmd->add_option("--count", stc.count, "base case count per suite");
    selftest_cmd->add_option("--seed", stc.seed, "random seed (fixed seed => byte-identical report)");
    selftest_cmd->add_option("--field", field_name, "Q or Fp")->check(CLI::IsMember({"Q", "Fp"}));
    selftest_cmd->add_option("--p", stc.p, "prime for Fp");
    selftest_cmd->add_option("--emax", stc.emax, "largest ramification degree exercised");
    selftest_cmd->add_option("--reproducer-dir", stc.reproducer_dir, "where failing cases are written");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*validate_cmd)
            return with_field_of(validate_path, [&](auto field) { return cmd_validate_typed(field, validate_path); });
        if (*run_cmd) return cmd_run(ropt);
        stc.rational = (field_name == "Q");
        return kmf::selftest::run_selftest(stc, std::cout, std::cerr) ? kExitOk : kExitMath;
    } catch (const kmf::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const kmf::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitMath;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return kExitMath;
    }
}
