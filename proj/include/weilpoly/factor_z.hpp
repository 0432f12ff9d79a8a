#pragma once
/**
 * @file factor_z.hpp
 * @brief Factorization and irreducibility certification over Z[t].
 *
 * Route: degree-set filter across factorizations modulo the first five good
 * primes (p not dividing lc(f), f squarefree mod p); when the filter cannot
 * rule out a factor, Hensel-lift modulo one of those primes past a Mignotte
 * bound and recombine lifted factors by subset search.
 */

#include "fp_poly.hpp"
#include "intpoly.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace weilpoly {

/// Canonical order: by degree, then coefficients from the top.
inline bool poly_less(const IntPoly& a, const IntPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (int i = a.degree(); i >= 0; --i)
        if (a.coeff(i) != b.coeff(i)) return a.coeff(i) < b.coeff(i);
    return false;
}

inline Int mod_sym(const Int& v, const Int& m) {
    Int r = v % m;
    if (r < 0) r += m;
    if (2 * r > m) r -= m;
    return r;
}

inline IntPoly mod_poly(const IntPoly& f, const Int& m, bool symmetric = false) {
    std::vector<Int> c;
    for (const auto& v : f.coeffs()) {
        Int r = v % m;
        if (r < 0) r += m;
        if (symmetric && 2 * r > m) r -= m;
        c.push_back(r);
    }
    return IntPoly(std::move(c));
}

inline bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 d : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % d == 0) return n == d;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1U) == 0) {
        d >>= 1U;
        ++s;
    }
    for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

inline bool is_prime(const Int& n) { return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0; }

/// Lift T = g0*h0 (mod p, both monic, coprime) to T = g*h (mod p^k). T must be
/// monic modulo p^k.
inline std::pair<IntPoly, IntPoly> hensel_lift_pair(const IntPoly& target, const FpPoly& g0, const FpPoly& h0,
                                                    u64 p, unsigned k) {
    auto [one, s, t] = extended_gcd(g0, h0);
    if (one.degree() != 0) throw CertificationError("hensel_lift_pair: factors not coprime mod p");
    const Int pz(static_cast<unsigned long>(p));
    IntPoly g = g0.lift(), h = h0.lift();
    Int pj = pz;
    for (unsigned j = 1; j < k; ++j) {
        Int pj1 = pj * pz;
        IntPoly e = mod_poly(target - g * h, pj1);
        // e is divisible by p^j.
        FpPoly ebar = FpPoly::from_int(e.divexact(pj), p);
        FpPoly dh = (ebar * s) % h0;
        FpPoly dg = (ebar * t) % g0;
        g = mod_poly(g + pj * dg.lift(), pj1);
        h = mod_poly(h + pj * dh.lift(), pj1);
        pj = pj1;
    }
    return {g, h};
}

/// Lift the factorization f = lc * prod factors (mod p) to modulus p^k.
/// Returned factors are monic with coefficients in [0, p^k).
inline std::vector<IntPoly> hensel_lift(const IntPoly& f, const std::vector<FpPoly>& factors, u64 p, unsigned k) {
    const Int m = ipow(Int(static_cast<unsigned long>(p)), k);
    Int lc_inv;
    Int lcm = f.lead() % m;
    if (lcm < 0) lcm += m;
    if (mpz_invert(lc_inv.get_mpz_t(), lcm.get_mpz_t(), m.get_mpz_t()) == 0)
        throw CertificationError("hensel_lift: leading coefficient not invertible");
    IntPoly target = mod_poly(lc_inv * f, m);
    std::vector<IntPoly> out;
    for (std::size_t i = 0; i + 1 < factors.size(); ++i) {
        FpPoly rest = FpPoly::one(p);
        for (std::size_t j = i + 1; j < factors.size(); ++j) rest = rest * factors[j];
        auto [g, h] = hensel_lift_pair(target, factors[i], rest, p, k);
        out.push_back(g);
        target = h;
    }
    out.push_back(target);
    return out;
}

inline Int mignotte_bound(const IntPoly& f) {
    Int norm2 = 0;
    for (const auto& v : f.coeffs()) norm2 += v * v;
    Int norm = isqrt(norm2) + 1;
    return abs(f.lead()) * ipow(Int(2), static_cast<unsigned long>(f.degree())) * norm;
}

struct GoodPrime {
    u64 p;
    std::vector<FpFactor> factors;
};

/// First `count` primes with p not dividing lc(f) and f squarefree mod p.
inline std::vector<GoodPrime> good_primes(const IntPoly& f, std::size_t count, u64 bound = 100000) {
    std::vector<GoodPrime> out;
    for (u64 p = 2; p < bound && out.size() < count; ++p) {
        if (!is_prime_u64(p)) continue;
        FpPoly fb = FpPoly::from_int(f, p);
        if (fb.degree() != f.degree()) continue;
        if (gcd(fb, derivative(fb)).degree() != 0) continue;
        out.push_back({p, factor_mod_p(fb, default_seed(f, p))});
    }
    if (out.empty()) throw CertificationError("no good prime below " + std::to_string(bound));
    return out;
}

namespace detail {
inline std::set<int> subset_degree_sums(const std::vector<FpFactor>& fs) {
    std::set<int> sums{0};
    for (const auto& fac : fs) {
        std::set<int> next = sums;
        for (int s : sums) next.insert(s + fac.factor.degree());
        sums = std::move(next);
    }
    return sums;
}
}  // namespace detail

struct SquarefreeFactorization {
    std::vector<IntPoly> factors;  // primitive, positive leads
    std::string certificate;
};

/// Factor a primitive squarefree f (deg >= 1, positive lead) into irreducibles over Z.
inline SquarefreeFactorization factor_squarefree(const IntPoly& f) {
    if (f.degree() <= 1) return {{f}, "degree <= 1"};
    auto primes = good_primes(f, 5);
    std::set<int> possible;
    for (int d = 1; d < f.degree(); ++d) possible.insert(d);
    std::ostringstream cert;
    cert << "degree-set filter mod";
    for (const auto& gp : primes) {
        auto sums = detail::subset_degree_sums(gp.factors);
        std::set<int> keep;
        for (int d : possible)
            if (sums.count(d)) keep.insert(d);
        possible = std::move(keep);
        cert << ' ' << gp.p;
    }
    if (possible.empty()) return {{f}, cert.str()};

    const GoodPrime& best = *std::min_element(primes.begin(), primes.end(), [](const auto& a, const auto& b) {
        return a.factors.size() < b.factors.size();
    });
    if (best.factors.size() == 1) return {{f}, "irreducible mod " + std::to_string(best.p)};

    const Int pz(static_cast<unsigned long>(best.p));
    Int bound = 2 * mignotte_bound(f) + 1;
    unsigned k = 1;
    Int m = pz;
    while (m <= bound) {
        m *= pz;
        ++k;
    }
    std::vector<FpPoly> modp;
    for (const auto& fac : best.factors) modp.push_back(fac.factor);
    std::vector<IntPoly> lifted = hensel_lift(f, modp, best.p, k);

    std::vector<IntPoly> found;
    IntPoly cur = f;
    std::size_t d = 1;
    while (2 * d <= lifted.size()) {
        bool hit = false;
        std::vector<std::size_t> idx(d);
        for (std::size_t i = 0; i < d; ++i) idx[i] = i;
        while (true) {
            IntPoly g = IntPoly::constant(cur.lead());
            for (std::size_t i : idx) g = mod_poly(g * lifted[i], m);
            g = primitive_part(mod_poly(g, m, true));
            if (auto q = try_exact_quotient(cur, g)) {
                found.push_back(g);
                cur = *q;
                std::vector<IntPoly> rest;
                for (std::size_t i = 0; i < lifted.size(); ++i)
                    if (std::find(idx.begin(), idx.end(), i) == idx.end()) rest.push_back(lifted[i]);
                lifted = std::move(rest);
                hit = true;
                break;
            }
            // Next combination.
            std::size_t pos = d;
            while (pos > 0 && idx[pos - 1] == lifted.size() - d + pos - 1) --pos;
            if (pos == 0) break;
            ++idx[pos - 1];
            for (std::size_t i = pos; i < d; ++i) idx[i] = idx[i - 1] + 1;
        }
        if (!hit) ++d;
    }
    if (cur.degree() > 0) found.push_back(primitive_part(cur));
    std::sort(found.begin(), found.end(), poly_less);
    std::ostringstream c2;
    c2 << "Hensel lift mod " << best.p << "^" << k << " with subset recombination";
    return {found, c2.str()};
}

struct Factorization {
    Int unit;  // content with sign
    std::vector<std::pair<IntPoly, int>> factors;  // irreducible, primitive, positive lead

    IntPoly expand() const {
        IntPoly acc = IntPoly::constant(unit);
        for (const auto& [g, k] : factors) acc *= g.pow(static_cast<unsigned>(k));
        return acc;
    }
};

/// Complete factorization over Q (equivalently Z) of a nonzero polynomial.
inline Factorization factor_over_q(const IntPoly& f) {
    if (f.is_zero()) throw ShapeError("factorization of the zero polynomial");
    Factorization out;
    out.unit = content(f);
    if (f.lead() < 0) out.unit = -out.unit;
    for (auto& [s, k] : squarefree_decomposition(f)) {
        for (auto& g : factor_squarefree(s).factors) out.factors.emplace_back(g, k);
    }
    std::sort(out.factors.begin(), out.factors.end(),
              [](const auto& a, const auto& b) { return poly_less(a.first, b.first); });
    return out;
}

enum class IrreducibilityStatus { irreducible, reducible, composite_of };

inline const char* to_string(IrreducibilityStatus s) {
    switch (s) {
        case IrreducibilityStatus::irreducible: return "irreducible";
        case IrreducibilityStatus::reducible: return "reducible";
        case IrreducibilityStatus::composite_of: return "composite-of";
    }
    return "?";
}

struct IrreducibilityVerdict {
    IrreducibilityStatus status;
    /// For composite-of: irreducible factors listed with repetition; their
    /// product equals the input exactly (the first factor carries the sign).
    std::vector<IntPoly> factors;
    std::string certificate;
};

/// Certified irreducibility over Q of a primitive polynomial of degree >= 1.
inline IrreducibilityVerdict rational_irreducibility(const IntPoly& f) {
    if (f.degree() < 1) throw ShapeError("rational_irreducibility: degree must be >= 1");
    if (content(f) != 1) throw ShapeError("rational_irreducibility: input must be primitive");
    auto sqf = squarefree_decomposition(f);
    if (sqf.size() == 1 && sqf[0].second == 1) {
        auto fz = factor_squarefree(sqf[0].first);
        if (fz.factors.size() == 1) return {IrreducibilityStatus::irreducible, {}, fz.certificate};
    }
    Factorization full = factor_over_q(f);
    std::vector<IntPoly> parts;
    for (const auto& [g, k] : full.factors)
        for (int i = 0; i < k; ++i) parts.push_back(g);
    if (full.unit != 1) parts.front() = full.unit * parts.front();
    return {IrreducibilityStatus::composite_of, parts, "squarefree decomposition and Zassenhaus recombination"};
}

}  // namespace weilpoly
