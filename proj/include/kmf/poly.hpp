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

#ifndef KMF_POLY_HPP
#define KMF_POLY_HPP

#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "field.hpp"

namespace kmf {

/// Degree of the zero polynomial.  Distinguished "-infinity" marker; it is
/// absorbing for the arithmetic this library needs (deg comparisons only).
inline constexpr int kNegInfDegree = std::numeric_limits<int>::min();

/// Dense univariate polynomial over a coefficient field, coefficients stored
/// lowest degree first.  Always in canonical form: no trailing zeros, and the
/// zero polynomial is the empty sequence.
template <CoefficientField F>
class Poly {
   public:
    using Elem = typename F::Elem;

    explicit Poly(const F& field) : field_(field) {}
    Poly(const F& field, std::vector<Elem> coeffs) : field_(field), c_(std::move(coeffs)) { trim(); }

    static Poly zero(const F& field) { return Poly(field); }
    static Poly constant(const F& field, const Elem& e) { return Poly(field, {e}); }
    static Poly one(const F& field) { return constant(field, field.one()); }
    /// c * s^k
    static Poly monomial(const F& field, const Elem& c, int k) {
        std::vector<Elem> v(static_cast<size_t>(k) + 1, field.zero());
        v.back() = c;
        return Poly(field, std::move(v));
    }

    const F& field() const { return field_; }
    bool is_zero() const { return c_.empty(); }
    int deg() const { return c_.empty() ? kNegInfDegree : static_cast<int>(c_.size()) - 1; }
    /// Coefficient of s^i; zero outside the stored range.
    Elem at(size_t i) const { return i < c_.size() ? c_[i] : field_.zero(); }
    const std::vector<Elem>& coeffs() const { return c_; }
    Elem lead() const { return c_.empty() ? field_.zero() : c_.back(); }

    bool is_one() const { return deg() == 0 && c_[0] == field_.one(); }
    bool is_monic() const { return !c_.empty() && c_.back() == field_.one(); }
    bool is_unit() const { return deg() == 0; }

    friend Poly operator+(const Poly& a, const Poly& b) {
        require_same_field(a.field_, b.field_, "poly add");
        std::vector<Elem> v(std::max(a.c_.size(), b.c_.size()), a.field_.zero());
        for (size_t i = 0; i < v.size(); ++i) v[i] = a.field_.add(a.at(i), b.at(i));
        return Poly(a.field_, std::move(v));
    }
    friend Poly operator-(const Poly& a, const Poly& b) {
        require_same_field(a.field_, b.field_, "poly sub");
        std::vector<Elem> v(std::max(a.c_.size(), b.c_.size()), a.field_.zero());
        for (size_t i = 0; i < v.size(); ++i) v[i] = a.field_.sub(a.at(i), b.at(i));
        return Poly(a.field_, std::move(v));
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        require_same_field(a.field_, b.field_, "poly mul");
        if (a.is_zero() || b.is_zero()) return Poly(a.field_);
        std::vector<Elem> v(a.c_.size() + b.c_.size() - 1, a.field_.zero());
        for (size_t i = 0; i < a.c_.size(); ++i) {
            if (a.field_.is_zero(a.c_[i])) continue;
            for (size_t j = 0; j < b.c_.size(); ++j)
                v[i + j] = a.field_.add(v[i + j], a.field_.mul(a.c_[i], b.c_[j]));
        }
        return Poly(a.field_, std::move(v));
    }
    Poly operator-() const {
        std::vector<Elem> v(c_.size(), field_.zero());
        for (size_t i = 0; i < c_.size(); ++i) v[i] = field_.neg(c_[i]);
        return Poly(field_, std::move(v));
    }
    Poly scaled(const Elem& e) const {
        if (field_.is_zero(e)) return Poly(field_);
        std::vector<Elem> v(c_.size(), field_.zero());
        for (size_t i = 0; i < c_.size(); ++i) v[i] = field_.mul(c_[i], e);
        return Poly(field_, std::move(v));
    }

    friend bool operator==(const Poly& a, const Poly& b) { return a.field_ == b.field_ && a.c_ == b.c_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    /// Euclidean division by a nonzero divisor: a = q*b + r with deg r < deg b.
    friend std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
        require_same_field(a.field_, b.field_, "poly divmod");
        if (b.is_zero()) throw Error("polynomial division by zero");
        const F& f = a.field_;
        std::vector<Elem> rem = a.c_;
        int db = b.deg();
        Elem lb_inv = f.inv(b.lead());
        std::vector<Elem> quot(a.deg() >= db ? a.deg() - db + 1 : 0, f.zero());
        for (int i = static_cast<int>(rem.size()) - 1; i >= db; --i) {
            if (f.is_zero(rem[i])) continue;
            Elem q = f.mul(rem[i], lb_inv);
            quot[i - db] = q;
            for (int j = 0; j <= db; ++j)
                rem[i - db + j] = f.sub(rem[i - db + j], f.mul(q, b.at(j)));
        }
        return {Poly(f, std::move(quot)), Poly(f, std::move(rem))};
    }

    /// Exact quotient a/b, or nullopt when b does not divide a.
    friend std::optional<Poly> exact_div(const Poly& a, const Poly& b) {
        auto [q, r] = divmod(a, b);
        if (!r.is_zero()) return std::nullopt;
        return q;
    }

    friend bool divides(const Poly& a, const Poly& b) {
        // a | b; everything divides zero.
        if (b.is_zero()) return true;
        if (a.is_zero()) return false;
        return divmod(b, a).second.is_zero();
    }

    Poly monic() const {
        if (is_zero() || is_monic()) return *this;
        return scaled(field_.inv(lead()));
    }

    /// Monic gcd by the Euclidean algorithm; gcd(0, 0) = 0.
    friend Poly gcd(Poly a, Poly b) {
        while (!b.is_zero()) {
            auto r = divmod(a, b).second;
            a = std::move(b);
            b = std::move(r);
        }
        return a.monic();
    }

    /// Composition a(g(s)) by Horner evaluation in k[s].
    friend Poly compose(const Poly& a, const Poly& g) {
        require_same_field(a.field_, g.field_, "poly compose");
        Poly acc(a.field_);
        for (int i = a.deg(); i >= 0; --i)
            acc = acc * g + Poly::constant(a.field_, a.at(static_cast<size_t>(i)));
        return acc;
    }

    std::string to_string(const std::string& var = "s") const {
        if (is_zero()) return "0";
        std::string out;
        for (int i = deg(); i >= 0; --i) {
            Elem c = at(static_cast<size_t>(i));
            if (field_.is_zero(c)) continue;
            if (!out.empty()) out += " + ";
            if (i == 0 || !(c == field_.one()))
                out += field_.to_string(c) + (i > 0 ? "*" : "");
            if (i > 0) out += var + (i > 1 ? "^" + std::to_string(i) : "");
        }
        return out;
    }

   private:
    F field_;
    std::vector<Elem> c_;

    void trim() {
        while (!c_.empty() && field_.is_zero(c_.back())) c_.pop_back();
    }
};

}  // namespace kmf

#endif
