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

#ifndef KMF_FIELD_HPP
#define KMF_FIELD_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <concepts>
#include <cstdint>
#include <string>

#include "errors.hpp"

namespace kmf {

/// A coefficient field: a small stateful object through which all element
/// arithmetic flows.  Field objects are values; two of them compare equal
/// exactly when their elements may be mixed.
template <class F>
concept CoefficientField = std::regular<typename F::Elem> && requires(const F f, typename F::Elem a, typename F::Elem b, long long n) {
    { f.zero() } -> std::same_as<typename F::Elem>;
    { f.one() } -> std::same_as<typename F::Elem>;
    { f.add(a, b) } -> std::same_as<typename F::Elem>;
    { f.sub(a, b) } -> std::same_as<typename F::Elem>;
    { f.mul(a, b) } -> std::same_as<typename F::Elem>;
    { f.neg(a) } -> std::same_as<typename F::Elem>;
    { f.inv(a) } -> std::same_as<typename F::Elem>;
    { f.from_int(n) } -> std::same_as<typename F::Elem>;
    { f.is_zero(a) } -> std::same_as<bool>;
    { f.to_string(a) } -> std::same_as<std::string>;
    { f == f } -> std::same_as<bool>;
};

/// The rational numbers with arbitrary-precision arithmetic.  Stateless.
struct Rationals {
    using Elem = boost::multiprecision::cpp_rational;

    Elem zero() const { return Elem(0); }
    Elem one() const { return Elem(1); }
    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    Elem neg(const Elem& a) const { return -a; }
    Elem inv(const Elem& a) const {
        if (a == 0) throw Error("division by zero in Q");
        return Elem(1) / a;
    }
    Elem div(const Elem& a, const Elem& b) const { return mul(a, inv(b)); }
    Elem from_int(long long n) const { return Elem(n); }
    bool is_zero(const Elem& a) const { return a == 0; }

    std::string to_string(const Elem& a) const {
        return numerator(a).str() + "/" + denominator(a).str();
    }
    /// Accepts "n" and "n/d"; normalization is canonical (gcd reduced, d > 0).
    Elem parse(const std::string& s) const {
        try {
            return Elem(s);
        } catch (const std::exception& e) {
            throw ParseError("bad rational literal '" + s + "'");
        }
    }

    /// A unit c such that scaling the given coefficients by c makes them
    /// primitive integers (lcm of denominators over gcd of numerators).
    /// Keeps coefficient bit-length bounded during elimination.
    template <class Iter>
    Elem content_unit(Iter begin, Iter end) const {
        using Int = boost::multiprecision::cpp_int;
        Int g = 0, l = 1;
        for (Iter it = begin; it != end; ++it) {
            if (*it == 0) continue;
            g = boost::multiprecision::gcd(g, boost::multiprecision::abs(numerator(*it)));
            Int d = denominator(*it);
            l = l / boost::multiprecision::gcd(l, d) * d;
        }
        if (g == 0) return Elem(1);
        return Elem(l) / Elem(g);
    }

    friend bool operator==(const Rationals&, const Rationals&) { return true; }
};

namespace detail {
inline bool is_prime_small(int64_t p) {
    if (p < 2) return false;
    for (int64_t q = 2; q * q <= p; ++q)
        if (p % q == 0) return false;
    return true;
}
}  // namespace detail

/// The prime field F_p, 2 <= p < 2^31.  Elements are canonical residues in
/// [0, p); products fit in 64 bits without overflow.
struct PrimeField {
    using Elem = int64_t;

    int64_t p;

    explicit PrimeField(int64_t prime) : p(prime) {
        if (p < 2 || p >= (int64_t(1) << 31) || !detail::is_prime_small(p))
            throw Error("PrimeField modulus must be a prime in [2, 2^31), got " + std::to_string(prime));
    }

    Elem zero() const { return 0; }
    Elem one() const { return p == 2 ? 1 % p : 1; }
    Elem add(Elem a, Elem b) const { return (a + b) % p; }
    Elem sub(Elem a, Elem b) const { return ((a - b) % p + p) % p; }
    Elem mul(Elem a, Elem b) const { return (a * b) % p; }
    Elem neg(Elem a) const { return (p - a) % p; }
    Elem inv(Elem a) const {
        if (a == 0) throw Error("division by zero in F_" + std::to_string(p));
        // extended Euclid
        int64_t t = 0, new_t = 1, r = p, new_r = a;
        while (new_r != 0) {
            int64_t q = r / new_r;
            int64_t tmp = t - q * new_t;
            t = new_t;
            new_t = tmp;
            tmp = r - q * new_r;
            r = new_r;
            new_r = tmp;
        }
        return (t % p + p) % p;
    }
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
    Elem from_int(long long n) const { return ((n % p) + p) % p; }
    bool is_zero(Elem a) const { return a == 0; }

    std::string to_string(Elem a) const { return std::to_string(a); }
    Elem parse(const std::string& s) const {
        try {
            return from_int(std::stoll(s));
        } catch (const std::exception&) {
            throw ParseError("bad F_p literal '" + s + "'");
        }
    }

    /// No coefficient growth in F_p; scaling is never needed.
    template <class Iter>
    Elem content_unit(Iter, Iter) const {
        return one();
    }

    friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.p == b.p; }
};

static_assert(CoefficientField<Rationals>);
static_assert(CoefficientField<PrimeField>);

template <CoefficientField F>
void require_same_field(const F& a, const F& b, const char* where) {
    if (!(a == b)) throw FieldMismatch(where);
}

}  // namespace kmf

#endif
