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

#ifndef KMF_SING_HPP
#define KMF_SING_HPP

#include <optional>
#include <sstream>

#include "mf.hpp"

namespace kmf {

/// M is zero in Sing(t) iff its folded matrix factorization is contractible.
/// This is the computable criterion the MF model provides.
template <CoefficientField F>
bool is_perfect(const OneHomotopyModule<F>& m, const CancelToken* cancel = nullptr) {
    return is_contractible(fold(m), cancel).has_value();
}

/// Membership in the relative kernel Coh(G_t -> t): the a_1-pushforward is
/// perfect.
template <CoefficientField F>
bool in_relative_kernel(const TwoHomotopyModule<F>& m, const CancelToken* cancel = nullptr) {
    return is_perfect(pushforward_a(1, m), cancel);
}

/// K_0-shadow Euler characteristic: sum of (-1)^n * length_k H^n(M).
/// Cohomology of a valid module is pi_K-torsion ([d,h] = pi_K * id kills it);
/// a free part would contradict that and is surfaced loudly.
template <CoefficientField F>
long long euler_class(const OneHomotopyModule<F>& m, const CancelToken* cancel = nullptr) {
    auto table = cohomology(m, cancel);
    long long chi = 0;
    for (size_t i = 0; i < table.groups.size(); ++i) {
        const auto& g = table.groups[i];
        if (!g.is_torsion())
            throw StructuralViolation("cohomology has a free part in degree " +
                                      std::to_string(table.min_degree + static_cast<int>(i)));
        long long sign = ((table.min_degree + static_cast<int>(i)) % 2 == 0) ? 1 : -1;
        chi += sign * static_cast<long long>(g.length());
    }
    return chi;
}

/// Bundled singularity-category diagnostics for a two-homotopy module.
/// All fields are recomputed from scratch; nothing is cached.
struct SingReport {
    std::string object_id;
    bool is_perfect = false;            // of the a_1-pushforward
    bool relative_kernel_member = false;
    long long euler_class = 0;          // of the a_1-pushforward
    std::optional<bool> periodicity_verified;
    std::string diagnostics;
};

/// Checks the computable shadow of the localization sequence on one object:
/// kernel membership, perfectness and Euler bookkeeping of the quotient
/// image, the periodicity triangle, and the always-true source-side fact
/// that a_1* a_2^* a_2* M is perfect.
template <CoefficientField F>
SingReport localization_diagnostics(const TwoHomotopyModule<F>& m, const std::string& object_id = "module",
                                    const CancelToken* cancel = nullptr) {
    if (m.shape.num_degrees() > 3)
        throw NeedsReduction("localization_diagnostics needs at most 3 degrees");
    SingReport rep;
    rep.object_id = object_id;
    auto a1m = pushforward_a(1, m);
    rep.is_perfect = is_perfect(a1m, cancel);
    rep.relative_kernel_member = rep.is_perfect;  // definitionally the same test
    rep.euler_class = euler_class(a1m, cancel);

    std::ostringstream diag;
    diag << "object " << object_id << " over tower " << m.tower.to_string() << "\n";
    diag << "a_1-image: " << (rep.is_perfect ? "perfect (zero in Sing(t))" : "nontrivial in Sing(t)") << "\n";
    diag << "euler class of a_1-image: " << rep.euler_class << "\n";

    try {
        auto wit = periodicity_witness(m);
        rep.periodicity_verified = true;
        diag << "periodicity triangle verified (comparison is a quasi-isomorphism)\n";

        // source of the counit lies in the relative kernel (base change)
        bool source_in_kernel = in_relative_kernel(wit.counit.source, cancel);
        diag << "counit source a_2^* a_2* M in relative kernel: " << (source_in_kernel ? "yes" : "NO") << "\n";
        if (!source_in_kernel)
            throw StructuralViolation("a_2^* a_2* M escaped the relative kernel");

        // Euler bookkeeping along the counit triangle
        long long chi_source = euler_class(pushforward_a(1, wit.counit.source), cancel);
        long long chi_cone = euler_class(pushforward_a(1, wit.triangle_cone), cancel);
        diag << "euler additivity on the counit triangle: " << chi_cone << " = " << rep.euler_class << " - "
             << chi_source << "\n";
        if (chi_cone != rep.euler_class - chi_source)
            throw StructuralViolation("euler class is not additive on the counit triangle");

        // when M is in the kernel, so is the cone, hence its a_1-image is perfect
        if (rep.relative_kernel_member) {
            bool cone_perfect = is_perfect(pushforward_a(1, wit.triangle_cone), cancel);
            diag << "quotient side: a_1-image of the counit cone perfect: " << (cone_perfect ? "yes" : "NO") << "\n";
            if (!cone_perfect)
                throw StructuralViolation("counit cone of a kernel object escaped the kernel");
        }
    } catch (const NeedsReduction&) {
        rep.periodicity_verified = std::nullopt;
        diag << "periodicity not attempted (needs reduction)\n";
    }

    rep.diagnostics = diag.str();
    return rep;
}

}  // namespace kmf

#endif
