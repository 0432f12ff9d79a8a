#pragma once
/**
 * @file hondatate.hpp
 * @brief Honda-Tate invariants of Weil polynomials: Brauer invariants, the
 *        multiplicity e, dimensions, simplicity, and the explicit criteria for
 *        (t^2 + a t + q)^g classes and for dimension 5.
 */

#include "factor_z.hpp"
#include "intpoly.hpp"
#include "padic.hpp"
#include "weil.hpp"

#include <array>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace weilpoly {

enum class Place { real, complex, finite_not_over_p, over_p };

inline const char* to_string(Place p) {
    switch (p) {
        case Place::real: return "real";
        case Place::complex: return "complex";
        case Place::finite_not_over_p: return "finite";
        case Place::over_p: return "over-p";
    }
    return "?";
}

struct BrauerInvariant {
    Place place;
    int factor_index = -1;  // index into the Q_p profile for over-p places
    Rat value;              // in [0, 1)
};

/// Fractional part in [0, 1).
inline Rat frac(const Rat& r) {
    Int fl;
    mpz_fdiv_q(fl.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    Rat out = r - Rat(fl);
    out.canonicalize();
    return out;
}

namespace detail {

inline std::vector<BrauerInvariant> invariants_from(const IntPoly& m, const QpFactorProfile& pr, int n) {
    std::vector<BrauerInvariant> out;
    int real = sturm_count(m, std::nullopt, std::nullopt);
    for (int i = 0; i < real; ++i) out.push_back({Place::real, -1, Rat(1, 2)});
    for (std::size_t i = 0; i < pr.factors.size(); ++i) {
        Rat v = pr.factors[i].slope * pr.factors[i].degree / n;
        out.push_back({Place::over_p, static_cast<int>(i), frac(v)});
    }
    return out;
}

inline int lcd_of(const std::vector<BrauerInvariant>& inv) {
    Int l = 1;
    for (const auto& b : inv) l = lcm(l, Int(b.value.get_den()));
    return static_cast<int>(l.get_si());
}

inline void require_irreducible(const IntPoly& m) {
    if (!m.is_monic() || m.degree() < 1) throw ShapeError("minimal polynomial must be monic of positive degree");
    if (rational_irreducibility(m).status != IrreducibilityStatus::irreducible)
        throw ShapeError("minimal polynomial must be irreducible over Q");
}

}  // namespace detail

/// Invariants at real places and places over p; zero invariants elsewhere are omitted.
inline std::vector<BrauerInvariant> frobenius_invariants(const IntPoly& m, const Int& p, int n) {
    detail::require_irreducible(m);
    return detail::invariants_from(m, qp_factor_profile(m, p), n);
}

inline int multiplicity_e(const IntPoly& m, const Int& p, int n) { return detail::lcd_of(frobenius_invariants(m, p, n)); }

inline int dimension_of_simple(const IntPoly& m, const Int& p, int n) {
    int e = multiplicity_e(m, p, n);
    if ((e * m.degree()) % 2 != 0) throw CertificationError("e * deg(m) is odd for " + m.to_string());
    return e * m.degree() / 2;
}

inline int lemma24_real_dimension(int n) {
    if (n < 1) throw ShapeError("n must be positive");
    return n % 2 == 0 ? 1 : 2;
}

inline std::set<int> prop35_allowed_e(int l) {
    if (l < 3 || !is_prime(Int(l))) throw ShapeError("l must be an odd prime");
    return {1, l};
}

struct Verdict {
    bool ok;
    std::string reason;
};

/// (t^2 + a t + b)^g is the characteristic polynomial of a simple g-dimensional variety over F_(p^n).
inline Verdict test_theorem12(const Int& p, int n, int g, const Int& a, const Int& b) {
    if (g <= 2) throw ShapeError("test_theorem12 requires g > 2");
    const Int q = ipow(p, static_cast<unsigned long>(n));
    if (n % g != 0) return {false, "g does not divide n"};
    if (b != q) return {false, "b != q"};
    if (a * a >= 4 * q) return {false, "a^2 >= 4q"};
    Valuation v = vp(a, p);
    if (!v) return {false, "a = 0"};
    if ((static_cast<long>(g) * *v) % n != 0) return {false, "g v_p(a) / n is not an integer"};
    long s = static_cast<long>(g) * *v / n;
    if (std::gcd(s, static_cast<long>(g)) != 1) return {false, "gcd(s, g) != 1"};
    if (s < 1 || 2 * s >= g) return {false, "s outside [1, g/2)"};
    return {true, "s = " + std::to_string(s)};
}

/// Dimension of the simple class with minimal polynomial t^2 + a t + q.
inline int lemma26_dimension(const Int& a, const Int& p, int n) {
    const Int q = ipow(p, static_cast<unsigned long>(n));
    if (a * a >= 4 * q) throw ShapeError("lemma26_dimension requires a^2 < 4q");
    Valuation m = vp(a, p);
    if (m && 2 * *m < n) return n / std::gcd(static_cast<int>(*m), n);
    return is_square_in_qp(a * a - 4 * q, p) ? 2 : 1;
}

struct Dim5Label {
    bool accepted;
    std::string label;  // I(1), II(k) or rejected(reason)
    std::vector<std::string> tags;
};

namespace detail {

struct Dim5Condition {
    int number;
    const char* polygon;  // which of several possible polygons the pattern is, or ""
    // v_p(a_k) >= lo[k] n (or == when exact[k]); nullopt means unconstrained.
    std::array<std::optional<Rat>, 5> bound;
    std::array<bool, 5> exact;
    std::vector<Rat> no_root;  // multiples of n
    std::vector<int> no_factor_degree;
    int two_factors_of_degree = 0;
};

inline const std::vector<Dim5Condition>& dim5_conditions() {
    using R = std::optional<Rat>;
    auto r = [](long a, long b = 1) { return R(Rat(a, b)); };
    static const std::vector<Dim5Condition> table = {
        {2, "", {r(0), r(1, 2), r(1), r(3, 2), r(2)}, {true, false, false, false, false}, {Rat(1, 2)}, {3}, 0},
        {3, "", {r(0), r(1, 3), r(2, 3), r(1), r(1, 2)}, {true, false, false, true, false}, {Rat(1, 3), Rat(1, 2), Rat(2, 3)}, {}, 0},
        {4, "", {r(0), r(1, 4), r(1, 2), r(3, 4), r(1)}, {true, false, false, false, true}, {Rat(1, 4), Rat(3, 4)}, {2}, 0},
        {5, "", {R(), r(0), r(1, 2), r(1), r(3, 2)}, {false, true, false, false, false}, {Rat(1, 2)}, {3}, 0},
        {6, "", {R(), r(0), r(1, 3), r(2, 3), r(1)}, {false, true, false, false, true}, {Rat(1, 3), Rat(2, 3)}, {}, 0},
        {7, "lower", {R(), R(), r(0), r(1, 2), r(1)}, {false, false, true, false, false}, {Rat(1, 2)}, {}, 0},
        {8, "upper", {r(1, 3), r(2, 3), r(1), r(3, 2), r(2)}, {false, false, true, false, false}, {Rat(1, 3), Rat(1, 2), Rat(2, 3)}, {}, 0},
        {9, "lower", {R(), R(), R(), r(0), r(1, 2)}, {false, false, false, true, false}, {Rat(1, 2)}, {}, 0},
        {10, "upper", {r(1, 4), r(1, 2), r(3, 4), r(1), r(3, 2)}, {false, false, false, true, false}, {Rat(1, 4), Rat(1, 2), Rat(3, 4)}, {}, 4},
        {11, "bottom", {R(), R(), R(), R(), r(0)}, {false, false, false, false, true}, {}, {}, 0},
        {12, "middle", {r(1, 5), r(2, 5), r(3, 5), r(4, 5), r(1)}, {false, false, false, false, true}, {}, {}, 5},
        {13, "top", {r(2, 5), r(4, 5), r(6, 5), r(8, 5), r(2)}, {false, false, false, false, true}, {}, {}, 5},
        {14, "", {r(1, 2), r(1), r(3, 2), r(2), r(5, 2)}, {false, false, false, false, false}, {Rat(1, 2)}, {3, 5}, 0},
    };
    return table;
}

inline bool condition_holds(const Dim5Condition& c, const std::vector<Valuation>& v, const QpFactorProfile& pr, int n) {
    for (std::size_t k = 0; k < 5; ++k) {
        if (!c.bound[k]) continue;
        Rat t = *c.bound[k] * n;
        if (c.exact[k] ? !val_equals(v[k], t) : !val_at_least(v[k], t)) return false;
    }
    for (const auto& r : c.no_root)
        if (has_root_of_valuation(pr, r * n)) return false;
    for (int d : c.no_factor_degree)
        if (has_factor_of_degree(pr, d)) return false;
    if (c.two_factors_of_degree && count_factors_of_degree(pr, c.two_factors_of_degree) != 2) return false;
    return true;
}

}  // namespace detail

/**
 * Explicit dimension-5 criterion. `profile` is the Q_p profile of expand(c)
 * when f is irreducible (computed here when absent).
 */
inline Dim5Label classify_dim5(const WeilCandidate& c, const std::optional<QpFactorProfile>& profile = std::nullopt,
                               const std::optional<Factorization>& factored = std::nullopt, const ProfileOptions& opt = {}) {
    if (c.g != 5) throw ShapeError("classify_dim5 requires g = 5");
    IntPoly f = expand(c);
    Factorization fz = factored ? *factored : factor_over_q(f);
    if (fz.factors.size() == 1 && fz.factors[0].second == 5 && fz.factors[0].first.degree() == 2) {
        const IntPoly& m = fz.factors[0].first;
        Verdict v = test_theorem12(c.p, c.n, 5, m.coeff(1), m.coeff(0));
        if (v.ok) return {true, "I(1)", {}};
        return {false, "rejected(" + v.reason + ")", {}};
    }
    if (fz.factors.size() != 1 || fz.factors[0].second != 1)
        return {false, "rejected(neither irreducible nor a fifth power of a quadratic)", {}};
    QpFactorProfile pr = profile ? *profile : qp_factor_profile(f, c.p, opt);
    std::vector<Valuation> v;
    for (const auto& a : c.a) v.push_back(vp(a, c.p));
    for (const auto& cond : detail::dim5_conditions()) {
        if (!detail::condition_holds(cond, v, pr, c.n)) continue;
        Dim5Label out{true, "II(" + std::to_string(cond.number) + ")", {}};
        if (!cond.no_factor_degree.empty()) out.tags.push_back("factor-degree=irreducible");
        if (*cond.polygon) out.tags.push_back(std::string("polygon=") + cond.polygon);
        return out;
    }
    return {false, "rejected(no condition (2)-(14) holds)", {"factor-degree=irreducible"}};
}

struct IsogenyClassReport {
    WeilCandidate candidate;
    IntPoly f;
    bool weil = false;
    bool simple = false;
    IntPoly min_poly;    // zero when undefined
    int multiplicity = 0;  // e of the simple class of min_poly; 0 when undefined
    int dimension = 0;     // dimension of that simple class; 0 when undefined
    std::vector<BrauerInvariant> invariants;
    std::string case_label;
    bool real_root = false;
    std::vector<std::string> tags;
};

/// Full classification of a candidate. Inconsistencies with the explicit
/// criteria raise CertificationError naming the candidate.
inline IsogenyClassReport classify(const WeilCandidate& c, const ProfileOptions& opt = {}) {
    IsogenyClassReport r;
    r.candidate = c;
    r.f = expand(c);
    auto fail = [&](const std::string& what) {
        std::ostringstream os;
        os << what << " for p=" << c.p << " n=" << c.n << " a=(";
        for (std::size_t i = 0; i < c.a.size(); ++i) os << (i ? "," : "") << c.a[i];
        os << ")";
        throw CertificationError(os.str());
    };
    r.weil = is_weil_polynomial(r.f, c.q());
    if (!r.weil) {
        r.case_label = "rejected(not-weil)";
        return r;
    }
    Factorization fz = factor_over_q(r.f);
    std::optional<QpFactorProfile> f_profile;
    if (fz.factors.size() == 1) {
        const auto& [m, k] = fz.factors[0];
        QpFactorProfile pr = qp_factor_profile(m, c.p, opt);
        if (k == 1) f_profile = pr;
        r.min_poly = m;
        r.invariants = detail::invariants_from(m, pr, c.n);
        r.multiplicity = detail::lcd_of(r.invariants);
        if ((r.multiplicity * m.degree()) % 2 != 0) fail("odd e * deg(m)");
        r.dimension = r.multiplicity * m.degree() / 2;
        r.simple = (k == r.multiplicity);
        r.real_root = sturm_count(m, std::nullopt, std::nullopt) > 0;
    } else {
        r.min_poly = squarefree_part(r.f);
        r.real_root = real_sqrt_q_roots(r.f, c.p, c.n).any();
    }
    if (r.real_root) r.tags.push_back("real-root");
    if (c.a.back() % c.p != 0) r.tags.push_back("ordinary");

    if (r.simple) {
        if ((2 * r.dimension) % r.multiplicity != 0) fail("e does not divide 2 dim");
        if (!r.real_root && c.n % r.multiplicity != 0) fail("e does not divide n without a real root");
        if (r.real_root) {
            const IntPoly& m = r.min_poly;
            bool shape = (c.n % 2 == 0)
                             ? (m == IntPoly(std::vector<Int>{-ipow(c.p, c.n / 2), 1}) ||
                                m == IntPoly(std::vector<Int>{ipow(c.p, c.n / 2), 1}))
                             : m == IntPoly(std::vector<Int>{-c.q(), 0, 1});
            if (!shape) fail("real-root minimal polynomial of unexpected shape");
            if (r.dimension != lemma24_real_dimension(c.n)) fail("real-root dimension mismatch");
        }
    }

    if (c.g == 5) {
        Dim5Label lab = classify_dim5(c, f_profile, fz, opt);
        bool general = r.simple && r.dimension == 5;
        if (lab.accepted != general)
            fail("explicit dimension-5 criterion (" + lab.label + ") disagrees with the invariant test (simple=" +
                 std::string(r.simple ? "true" : "false") + ")");
        r.case_label = lab.label;
        r.tags.insert(r.tags.end(), lab.tags.begin(), lab.tags.end());
    } else {
        r.case_label = r.simple ? "non-dim5" : "rejected(not-simple)";
    }
    return r;
}

}  // namespace weilpoly
