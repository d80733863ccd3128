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

#ifndef KMF_TOWER_HPP
#define KMF_TOWER_HPP

#include "poly.hpp"

namespace kmf {

/// The ramified tower O_K = k[t] -> O_L = k[s], t |-> u * s^e: a base field,
/// a ramification degree e >= 1 and a unit u of k.  The uniformizers are
/// pi_L = s and pi_K = u * s^e.
template <CoefficientField F>
struct RingTower {
    using Elem = typename F::Elem;

    F field;
    long e;
    Elem u;

    RingTower(const F& k, long ram_degree, const Elem& unit) : field(k), e(ram_degree), u(unit) {
        if (e < 1) throw InvalidObject("ring tower needs ramification degree e >= 1");
        if (field.is_zero(u)) throw InvalidObject("ring tower needs a nonzero unit");
    }

    /// pi_K = u * s^e as an element of k[s].
    Poly<F> pi() const { return Poly<F>::monomial(field, u, static_cast<int>(e)); }

    /// pi_K * identity.
    PolyMatrix<F> pi_id(size_t n) const { return PolyMatrix<F>::scalar(field, n, pi()); }

    friend bool operator==(const RingTower& a, const RingTower& b) {
        return a.field == b.field && a.e == b.e && a.u == b.u;
    }
    friend bool operator!=(const RingTower& a, const RingTower& b) { return !(a == b); }

    std::string to_string() const {
        return "(e=" + std::to_string(e) + ", u=" + field.to_string(u) + ")";
    }
};

template <CoefficientField F>
void require_same_tower(const RingTower<F>& a, const RingTower<F>& b, const char* where) {
    if (!(a == b)) throw TowerMismatch(where);
}

}  // namespace kmf

#endif
