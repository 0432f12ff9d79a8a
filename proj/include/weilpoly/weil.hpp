#pragma once
/**
 * @file weil.hpp
 * @brief q-Weil candidates, the exact Weil test and coefficient intervals.
 *
 * f is Weil iff its real Weil polynomial h has all roots real in [-2 sqrt q, 2 sqrt q].
 * The closed interval is handled without irrational endpoints: when q is a
 * square the endpoints are rational; otherwise roots at the endpoints are
 * exactly the roots of x^2 - 4q (irreducible), which is divided out, and the
 * remaining part is counted on a rational bracket (-u, l] with l < 2 sqrt q < u
 * refined until neither [l, u] nor [-u, -l] holds a root.
 */

#include "factor_z.hpp"
#include "intpoly.hpp"

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

namespace weilpoly {

struct WeilCandidate {
    Int p;
    int n = 1;
    int g = 1;
    std::vector<Int> a;  // a_1 .. a_g

    Int q() const { return ipow(p, static_cast<unsigned long>(n)); }

    void validate() const {
        if (p < 2 || !is_prime(p)) throw ShapeError("p must be prime");
        if (n < 1) throw ShapeError("n must be positive");
        if (g < 1) throw ShapeError("g must be positive");
        if (a.size() != static_cast<std::size_t>(g)) throw ShapeError("expected g coefficients a_1..a_g");
    }
};

inline IntPoly expand(const WeilCandidate& c) {
    c.validate();
    const Int q = c.q();
    const int g = c.g;
    std::vector<Int> co(static_cast<std::size_t>(2 * g + 1));
    co[static_cast<std::size_t>(2 * g)] = 1;
    co[0] = ipow(q, static_cast<unsigned long>(g));
    Int qi = 1;
    for (int i = 0; i < g; ++i) {
        // coefficient of t^(g+i) is a_(g-i); of t^(g-i) it is q^i a_(g-i).
        const Int& ak = c.a[static_cast<std::size_t>(g - i - 1)];
        co[static_cast<std::size_t>(g + i)] = ak;
        co[static_cast<std::size_t>(g - i)] = qi * ak;
        qi *= q;
    }
    return IntPoly(std::move(co));
}

struct RatInterval {
    Rat lo, hi;
};

namespace detail {

/// lo <= sqrt(v) <= hi with hi - lo <= 2^-bits; exact when v is a square.
inline RatInterval sqrt_bracket(const Int& v, unsigned bits) {
    Int den = Int(1) << bits;
    Int r = isqrt(v * den * den);
    Rat lo(r, den);
    lo.canonicalize();
    if (r * r == v * den * den) return {lo, lo};
    Rat hi(r + 1, den);
    hi.canonicalize();
    return {lo, hi};
}

inline int count_on(const std::vector<IntPoly>& seq, const std::optional<Rat>& lo, const std::optional<Rat>& hi) {
    return variations_at(seq, lo, false) - variations_at(seq, hi, true);
}

inline RatInterval mul(const RatInterval& a, const RatInterval& b) {
    Rat c[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    return {*std::min_element(c, c + 4), *std::max_element(c, c + 4)};
}

/// Enclosure of {f(x) : x in [x.lo, x.hi]} by interval Horner.
inline RatInterval eval_interval(const IntPoly& f, const RatInterval& x) {
    RatInterval acc{Rat(0), Rat(0)};
    for (int i = f.degree(); i >= 0; --i) {
        acc = mul(acc, x);
        acc.lo += f.coeff(i);
        acc.hi += f.coeff(i);
    }
    return acc;
}

/// Distinct roots of squarefree s in [-2 sqrt q, 2 sqrt q].
inline int roots_in_closed_interval(const IntPoly& s, const Int& q) {
    if (s.degree() <= 0) return 0;
    Int r = isqrt(q);
    if (r * r == q) {
        Rat b(2 * r);
        auto seq = sturm_sequence(s);
        return count_on(seq, Rat(-b), b) + (s.sign_at(-b) == 0 ? 1 : 0);
    }
    int at_boundary = 0;
    IntPoly rest = s;
    if (auto quo = try_exact_quotient(s, IntPoly(std::vector<Int>{-4 * q, 0, 1}))) {
        at_boundary = 2;
        rest = *quo;
    }
    if (rest.degree() <= 0) return at_boundary;
    auto seq = sturm_sequence(rest);
    for (unsigned bits = 8;; bits *= 2) {
        RatInterval b = sqrt_bracket(4 * q, bits);
        if (count_on(seq, b.lo, b.hi) == 0 && count_on(seq, Rat(-b.hi), Rat(-b.lo)) == 0)
            return at_boundary + count_on(seq, Rat(-b.hi), b.lo);
    }
}

/// Isolating intervals (lo, hi] of the real roots of squarefree s, left to right.
inline std::vector<RatInterval> isolate_roots(const IntPoly& s) {
    std::vector<RatInterval> out;
    if (s.degree() <= 0) return out;
    auto seq = sturm_sequence(s);
    Int bound = 0;
    for (int i = 0; i < s.degree(); ++i) bound = std::max(bound, Int(abs(s.coeff(i))));
    bound = bound / abs(s.lead()) + 2;
    std::vector<std::pair<RatInterval, int>> stack{{{Rat(-bound), Rat(bound)}, count_on(seq, Rat(-bound), Rat(bound))}};
    while (!stack.empty()) {
        auto [iv, k] = stack.back();
        stack.pop_back();
        if (k == 0) continue;
        if (k == 1) {
            out.push_back(iv);
            continue;
        }
        Rat mid = (iv.lo + iv.hi) / 2;
        int left = count_on(seq, iv.lo, mid);
        stack.push_back({{mid, iv.hi}, k - left});
        stack.push_back({{iv.lo, mid}, left});
    }
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.lo < y.lo; });
    return out;
}

}  // namespace detail

/// True iff h has all its roots (with multiplicity) real and in [-2 sqrt q, 2 sqrt q].
inline bool real_roots_in_weil_interval(const IntPoly& h, const Int& q) {
    if (h.is_zero()) throw ShapeError("zero polynomial");
    int total = 0;
    for (const auto& [s, m] : squarefree_decomposition(h)) {
        int inside = detail::roots_in_closed_interval(s, q);
        if (inside != s.degree()) return false;
        total += m * inside;
    }
    return total == h.degree();
}

/// Weil test for a monic degree-2g polynomial satisfying the functional equation.
inline bool is_weil_polynomial(const IntPoly& f, const Int& q) {
    return real_roots_in_weil_interval(real_weil_transform(f, q), q);
}

inline bool is_weil(const WeilCandidate& c) { return is_weil_polynomial(expand(c), c.q()); }

struct RealRootMultiplicity {
    bool q_is_square = false;
    Int sqrt_q;     // p^(n/2) when q is a square
    int plus = 0;   // t - sqrt q
    int minus = 0;  // t + sqrt q
    int pair = 0;   // t^2 - q, q not a square
    bool any() const { return plus + minus + pair > 0; }
};

namespace detail {
inline int divide_out(IntPoly& f, const IntPoly& d) {
    int k = 0;
    while (auto quo = try_exact_quotient(f, d)) {
        f = *quo;
        ++k;
    }
    return k;
}
}  // namespace detail

inline RealRootMultiplicity real_sqrt_q_roots(const IntPoly& f, const Int& p, int n) {
    RealRootMultiplicity out;
    IntPoly rest = f;
    if (n % 2 == 0) {
        out.q_is_square = true;
        out.sqrt_q = ipow(p, static_cast<unsigned long>(n / 2));
        out.plus = detail::divide_out(rest, IntPoly(std::vector<Int>{-out.sqrt_q, 1}));
        rest = f;
        out.minus = detail::divide_out(rest, IntPoly(std::vector<Int>{out.sqrt_q, 1}));
    } else {
        out.pair = detail::divide_out(rest, IntPoly(std::vector<Int>{-ipow(p, static_cast<unsigned long>(n)), 0, 1}));
    }
    return out;
}

inline RealRootMultiplicity real_sqrt_q_roots(const WeilCandidate& c) { return real_sqrt_q_roots(expand(c), c.p, c.n); }

struct CoeffInterval {
    Int lo, hi;
    bool empty() const { return lo > hi; }
    Int size() const { return empty() ? Int(0) : Int(hi - lo + 1); }
    bool contains(const Int& v) const { return lo <= v && v <= hi; }
};

/// |a_k| <= C(2g, k) q^(k/2).
inline CoeffInterval baseline_interval(int g, const Int& q, int k) {
    Int c = binomial(static_cast<unsigned long>(2 * g), static_cast<unsigned long>(k));
    Int b = isqrt(c * c * ipow(q, static_cast<unsigned long>(k)));
    return {-b, b};
}

/// sum_(j>=1) b_(k-2j) C(g-k+2j, j) q^j, so that a_k = b_k + shift.
inline Int real_shift(const std::vector<Int>& b, int g, const Int& q, int k) {
    Int s = 0;
    for (int j = 1; 2 * j <= k; ++j)
        s += b[static_cast<std::size_t>(k - 2 * j)] *
             binomial(static_cast<unsigned long>(g - k + 2 * j), static_cast<unsigned long>(j)) *
             ipow(q, static_cast<unsigned long>(j));
    return s;
}

/// Coefficients b_0 = 1, b_1, .., b_m of h = sum b_i x^(g-i) from a_1..a_m.
inline std::vector<Int> real_coefficients(const std::vector<Int>& a, int g, const Int& q) {
    std::vector<Int> b{Int(1)};
    for (std::size_t k = 1; k <= a.size(); ++k) b.push_back(a[k - 1] - real_shift(b, g, q, static_cast<int>(k)));
    return b;
}

/**
 * Interval for a_k given a_1..a_(k-1) (k = prefix.size() + 1).
 *
 * depth 0: the binomial bound. depth >= 1: additionally, P = h^(g-k) has
 * degree k, depends on b_0..b_k only, and contains b_k in its constant term
 * (g-k)! b_k. Every root of P must be real and in [-2 sqrt q, 2 sqrt q]; this
 * forces P' to be real-rooted, P >= 0 at local maxima, P <= 0 at local minima
 * and sign conditions at +-2 sqrt q. Critical values are enclosed by rational
 * interval evaluation on isolating intervals, so the bound is exact and sound.
 */
inline CoeffInterval coefficient_interval(const Int& p, int n, int g, const std::vector<Int>& prefix, int depth = 1) {
    const int k = static_cast<int>(prefix.size()) + 1;
    if (k > g) throw ShapeError("prefix already has g coefficients");
    const Int q = ipow(p, static_cast<unsigned long>(n));
    CoeffInterval base = baseline_interval(g, q, k);
    if (depth <= 0) return base;

    std::vector<Int> b = real_coefficients(prefix, g, q);
    const Int shift = real_shift(b, g, q, k);
    Int fact_gk = 1;
    for (int i = 2; i <= g - k; ++i) fact_gk *= i;
    // Q = P - (g-k)! b_k, degree k, positive lead.
    std::vector<Int> qc(static_cast<std::size_t>(k + 1));
    for (int i = 0; i < k; ++i) {
        Int w = 1;
        for (int j = k - i + 1; j <= g - i; ++j) w *= j;
        qc[static_cast<std::size_t>(k - i)] = b[static_cast<std::size_t>(i)] * w;
    }
    IntPoly Q(std::move(qc));

    std::optional<Rat> lower, upper;
    auto raise = [&](const Rat& v) { if (!lower || v > *lower) lower = v; };
    auto cap = [&](const Rat& v) { if (!upper || v < *upper) upper = v; };

    IntPoly dQ = derivative(Q);
    if (k >= 2) {
        auto enclose = [&](const IntPoly& S, const std::vector<IntPoly>& seq, RatInterval iv) {
            while (true) {
                if (S.sign_at(iv.hi) == 0) {
                    Rat v = Rat(0);
                    for (int i = Q.degree(); i >= 0; --i) v = v * iv.hi + Q.coeff(i);
                    return RatInterval{v, v};
                }
                RatInterval val = detail::eval_interval(Q, iv);
                if (val.hi - val.lo < Rat(fact_gk, 8)) return val;
                Rat mid = (iv.lo + iv.hi) / 2;
                if (detail::count_on(seq, iv.lo, mid) == 1)
                    iv.hi = mid;
                else
                    iv.lo = mid;
            }
        };
        IntPoly odd = IntPoly::constant(1);
        int real_total = 0;
        for (const auto& [s, m] : squarefree_decomposition(dQ)) {
            real_total += m * sturm_count(s, std::nullopt, std::nullopt);
            if (m % 2 == 1) odd *= s;
            if (m >= 2) {
                // A multiple critical point of a real-rooted P is a root of P.
                auto seq = sturm_sequence(s);
                for (const auto& iv : detail::isolate_roots(s)) {
                    RatInterval val = enclose(s, seq, iv);
                    raise(-val.hi);
                    cap(-val.lo);
                }
            }
        }
        if (real_total != k - 1) return {Int(1), Int(0)};
        auto roots = detail::isolate_roots(odd);
        auto seq = sturm_sequence(odd);
        // Right of the largest sign change dQ > 0: local minima and maxima alternate from the right.
        for (std::size_t idx = 0; idx < roots.size(); ++idx) {
            bool local_min = (roots.size() - 1 - idx) % 2 == 0;
            RatInterval val = enclose(odd, seq, roots[idx]);
            if (local_min)
                cap(-val.lo);
            else
                raise(-val.hi);
        }
    }
    // Roots <= B: P(B) >= 0. Roots >= -B: (-1)^k P(-B) >= 0.
    for (unsigned bits = 16;; bits *= 2) {
        RatInterval sb = detail::sqrt_bracket(q, bits);
        RatInterval B{2 * sb.lo, 2 * sb.hi};
        RatInterval at_b = detail::eval_interval(Q, B);
        RatInterval at_mb = detail::eval_interval(Q, {-B.hi, -B.lo});
        bool wide = at_b.hi - at_b.lo >= Rat(fact_gk, 8) || at_mb.hi - at_mb.lo >= Rat(fact_gk, 8);
        if (wide && bits < 4096) continue;
        raise(-at_b.hi);
        if (k % 2 == 0)
            raise(-at_mb.hi);
        else
            cap(-at_mb.lo);
        break;
    }
    CoeffInterval out = base;
    if (lower) {
        Rat v = *lower / fact_gk;
        Int c;
        mpz_cdiv_q(c.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
        out.lo = std::max(out.lo, Int(c + shift));
    }
    if (upper) {
        Rat v = *upper / fact_gk;
        Int c;
        mpz_fdiv_q(c.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
        out.hi = std::min(out.hi, Int(c + shift));
    }
    return out;
}

}  // namespace weilpoly
