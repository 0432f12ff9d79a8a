#pragma once
/**
 * @file fp_poly.hpp
 * @brief Dense polynomials over the prime field F_p (p < 2^62) and their
 *        complete factorization: squarefree decomposition, distinct-degree
 *        splitting and Cantor-Zassenhaus equal-degree splitting.
 */

#include "intpoly.hpp"

#include <algorithm>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

namespace weilpoly {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>((static_cast<u128>(a) * b) % p); }
inline u64 addmod(u64 a, u64 b, u64 p) {
    u64 s = a + b;
    return s >= p ? s - p : s;
}
inline u64 submod(u64 a, u64 b, u64 p) { return a >= b ? a - b : a + p - b; }
inline u64 powmod(u64 a, u64 e, u64 p) {
    u64 r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1U) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1U;
    }
    return r;
}
inline u64 invmod(u64 a, u64 p) {
    if (a % p == 0) throw std::domain_error("invmod: zero divisor");
    return powmod(a, p - 2, p);
}
inline u64 reduce_int(const Int& v, u64 p) {
    Int r = v % Int(static_cast<unsigned long>(p));
    if (r < 0) r += static_cast<unsigned long>(p);
    return r.get_ui();
}

/// Polynomial over F_p, ascending coefficients, normalized (no trailing zeros).
struct FpPoly {
    u64 p = 2;
    std::vector<u64> c;

    FpPoly() = default;
    FpPoly(u64 prime, std::vector<u64> coeffs) : p(prime), c(std::move(coeffs)) {
        for (auto& v : c) v %= p;
        trim();
    }
    static FpPoly from_int(const IntPoly& f, u64 prime) {
        std::vector<u64> c;
        for (const auto& v : f.coeffs()) c.push_back(reduce_int(v, prime));
        return FpPoly(prime, std::move(c));
    }
    static FpPoly one(u64 prime) { return FpPoly(prime, {1}); }
    static FpPoly x(u64 prime) { return FpPoly(prime, {0, 1}); }

    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    int degree() const { return static_cast<int>(c.size()) - 1; }
    u64 lead() const { return c.back(); }
    u64 at(int i) const { return (i < 0 || i > degree()) ? 0 : c[static_cast<std::size_t>(i)]; }

    /// Symmetric-free integer lift (coefficients in [0, p)).
    IntPoly lift() const {
        std::vector<Int> r;
        for (u64 v : c) r.emplace_back(static_cast<unsigned long>(v));
        return IntPoly(std::move(r));
    }

    friend bool operator==(const FpPoly& a, const FpPoly& b) { return a.p == b.p && a.c == b.c; }
    friend bool operator<(const FpPoly& a, const FpPoly& b) {
        if (a.degree() != b.degree()) return a.degree() < b.degree();
        for (int i = a.degree(); i >= 0; --i)
            if (a.c[static_cast<std::size_t>(i)] != b.c[static_cast<std::size_t>(i)])
                return a.c[static_cast<std::size_t>(i)] < b.c[static_cast<std::size_t>(i)];
        return false;
    }

    friend FpPoly operator+(const FpPoly& a, const FpPoly& b) {
        std::vector<u64> r(std::max(a.c.size(), b.c.size()), 0);
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = addmod(i < a.c.size() ? a.c[i] : 0, i < b.c.size() ? b.c[i] : 0, a.p);
        return FpPoly(a.p, std::move(r));
    }
    friend FpPoly operator-(const FpPoly& a, const FpPoly& b) {
        std::vector<u64> r(std::max(a.c.size(), b.c.size()), 0);
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = submod(i < a.c.size() ? a.c[i] : 0, i < b.c.size() ? b.c[i] : 0, a.p);
        return FpPoly(a.p, std::move(r));
    }
    friend FpPoly operator*(const FpPoly& a, const FpPoly& b) {
        if (a.is_zero() || b.is_zero()) return FpPoly(a.p, {});
        std::vector<u64> r(a.c.size() + b.c.size() - 1, 0);
        for (std::size_t i = 0; i < a.c.size(); ++i) {
            if (!a.c[i]) continue;
            for (std::size_t j = 0; j < b.c.size(); ++j) r[i + j] = addmod(r[i + j], mulmod(a.c[i], b.c[j], a.p), a.p);
        }
        return FpPoly(a.p, std::move(r));
    }
    FpPoly scale(u64 s) const {
        std::vector<u64> r = c;
        for (auto& v : r) v = mulmod(v, s, p);
        return FpPoly(p, std::move(r));
    }
    FpPoly monic() const { return is_zero() ? *this : scale(invmod(lead(), p)); }
};

/// (quotient, remainder)
inline std::pair<FpPoly, FpPoly> divmod(const FpPoly& a, const FpPoly& b) {
    if (b.is_zero()) throw std::domain_error("FpPoly division by zero");
    const u64 p = a.p;
    if (a.degree() < b.degree()) return {FpPoly(p, {}), a};
    std::vector<u64> r = a.c;
    std::vector<u64> q(static_cast<std::size_t>(a.degree() - b.degree() + 1), 0);
    u64 inv = invmod(b.lead(), p);
    int db = b.degree();
    for (int i = a.degree() - db; i >= 0; --i) {
        u64 coef = mulmod(r[static_cast<std::size_t>(i + db)], inv, p);
        q[static_cast<std::size_t>(i)] = coef;
        if (!coef) continue;
        for (int j = 0; j <= db; ++j) {
            auto& slot = r[static_cast<std::size_t>(i + j)];
            slot = submod(slot, mulmod(coef, b.c[static_cast<std::size_t>(j)], p), p);
        }
    }
    return {FpPoly(p, std::move(q)), FpPoly(p, std::move(r))};
}
inline FpPoly operator%(const FpPoly& a, const FpPoly& b) { return divmod(a, b).second; }
inline FpPoly operator/(const FpPoly& a, const FpPoly& b) { return divmod(a, b).first; }

/// Monic gcd.
inline FpPoly gcd(FpPoly a, FpPoly b) {
    while (!b.is_zero()) {
        FpPoly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

/// Returns (g, s, t) with s*a + t*b = g monic.
inline std::tuple<FpPoly, FpPoly, FpPoly> extended_gcd(const FpPoly& a, const FpPoly& b) {
    const u64 p = a.p;
    FpPoly r0 = a, r1 = b, s0 = FpPoly::one(p), s1(p, {}), t0(p, {}), t1 = FpPoly::one(p);
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        r0 = std::exchange(r1, r);
        s0 = std::exchange(s1, s0 - q * s1);
        t0 = std::exchange(t1, t0 - q * t1);
    }
    u64 inv = invmod(r0.lead(), p);
    return {r0.scale(inv), s0.scale(inv), t0.scale(inv)};
}

inline FpPoly derivative(const FpPoly& f) {
    std::vector<u64> r;
    for (int i = 1; i <= f.degree(); ++i) r.push_back(mulmod(f.c[static_cast<std::size_t>(i)], static_cast<u64>(i) % f.p, f.p));
    return FpPoly(f.p, std::move(r));
}

/// base^e mod m, with e an arbitrary-precision exponent.
inline FpPoly powmod(const FpPoly& base, const Int& e, const FpPoly& m) {
    FpPoly result = FpPoly::one(base.p) % m, b = base % m;
    std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
        result = (result * result) % m;
        if (mpz_tstbit(e.get_mpz_t(), i)) result = (result * b) % m;
    }
    return result;
}

/// For f with f' == 0 (so f(x) = g(x^p)), return g.
inline FpPoly pth_root(const FpPoly& f) {
    std::vector<u64> r;
    for (int i = 0; i <= f.degree(); i += static_cast<int>(f.p)) r.push_back(f.c[static_cast<std::size_t>(i)]);
    return FpPoly(f.p, std::move(r));
}

/// Squarefree factorization of a monic f: list of (squarefree g, multiplicity).
inline std::vector<std::pair<FpPoly, int>> squarefree_factor(const FpPoly& f_in) {
    std::vector<std::pair<FpPoly, int>> out;
    FpPoly f = f_in.monic();
    if (f.degree() <= 0) return out;
    const u64 p = f.p;
    FpPoly d = derivative(f);
    if (d.is_zero()) {
        for (auto& [g, m] : squarefree_factor(pth_root(f))) out.emplace_back(g, m * static_cast<int>(p));
        return out;
    }
    FpPoly c = gcd(f, d);
    FpPoly w = f / c;
    int i = 1;
    while (w.degree() > 0) {
        FpPoly y = gcd(w, c);
        FpPoly z = w / y;
        if (z.degree() > 0) out.emplace_back(z.monic(), i);
        ++i;
        w = y;
        c = c / y;
    }
    if (c.degree() > 0) {
        for (auto& [g, m] : squarefree_factor(pth_root(c.monic()))) out.emplace_back(g, m * static_cast<int>(p));
    }
    return out;
}

/// Distinct-degree factorization of a monic squarefree f: (product of all degree-d factors, d).
inline std::vector<std::pair<FpPoly, int>> distinct_degree_factor(const FpPoly& f_in) {
    std::vector<std::pair<FpPoly, int>> out;
    FpPoly f = f_in.monic();
    const u64 p = f.p;
    const Int pz(static_cast<unsigned long>(p));
    FpPoly h = FpPoly::x(p) % f;
    int d = 0;
    while (f.degree() >= 2 * (d + 1)) {
        ++d;
        h = powmod(h, pz, f);
        FpPoly g = gcd(f, h - FpPoly::x(p));
        if (g.degree() > 0) {
            out.emplace_back(g, d);
            f = f / g;
            h = h % f;
        }
    }
    if (f.degree() > 0) out.emplace_back(f, f.degree());
    return out;
}

/// Cantor-Zassenhaus split of a product of distinct degree-d monic irreducibles.
inline void equal_degree_factor(const FpPoly& f, int d, std::mt19937_64& rng, std::vector<FpPoly>& out) {
    if (f.degree() == d) {
        out.push_back(f.monic());
        return;
    }
    const u64 p = f.p;
    std::uniform_int_distribution<u64> coef(0, p - 1);
    while (true) {
        std::vector<u64> r(static_cast<std::size_t>(f.degree()));
        for (auto& v : r) v = coef(rng);
        FpPoly a(p, r);
        if (a.degree() <= 0) continue;
        FpPoly g = gcd(f, a);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            equal_degree_factor(g, d, rng, out);
            equal_degree_factor(f / g, d, rng, out);
            return;
        }
        FpPoly b;
        if (p == 2) {
            // Trace map a + a^2 + ... + a^(2^(d-1)).
            FpPoly t = a % f, acc = t;
            for (int i = 1; i < d; ++i) {
                t = (t * t) % f;
                acc = acc + t;
            }
            b = acc;
        } else {
            Int e = (ipow(Int(static_cast<unsigned long>(p)), static_cast<unsigned long>(d)) - 1) / 2;
            b = powmod(a, e, f) - FpPoly::one(p);
        }
        g = gcd(f, b);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            equal_degree_factor(g, d, rng, out);
            equal_degree_factor(f / g, d, rng, out);
            return;
        }
    }
}

struct FpFactor {
    FpPoly factor;  // monic irreducible
    int multiplicity;
};

/// Deterministic seed derived from the polynomial and the prime.
inline u64 default_seed(const IntPoly& f, u64 p) {
    u64 h = 1469598103934665603ULL ^ p;
    for (const auto& v : f.coeffs()) {
        for (char ch : v.get_str(16)) {
            h ^= static_cast<unsigned char>(ch);
            h *= 1099511628211ULL;
        }
        h ^= 0x9e3779b97f4a7c15ULL;
        h *= 1099511628211ULL;
    }
    return h;
}

/// Complete factorization of f over F_p into monic irreducibles with
/// multiplicities, sorted by (degree, coefficients). The leading coefficient is
/// dropped. f must be nonzero modulo p.
inline std::vector<FpFactor> factor_mod_p(const FpPoly& f, u64 seed) {
    if (f.is_zero()) throw ShapeError("factor_mod_p: polynomial vanishes modulo p");
    std::mt19937_64 rng(seed);
    std::vector<FpFactor> out;
    for (auto& [sf, mult] : squarefree_factor(f)) {
        for (auto& [block, d] : distinct_degree_factor(sf)) {
            std::vector<FpPoly> parts;
            equal_degree_factor(block, d, rng, parts);
            for (auto& g : parts) out.push_back({g, mult});
        }
    }
    std::sort(out.begin(), out.end(), [](const FpFactor& a, const FpFactor& b) {
        if (a.factor == b.factor) return a.multiplicity < b.multiplicity;
        return a.factor < b.factor;
    });
    return out;
}

}  // namespace weilpoly
