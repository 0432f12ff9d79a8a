#pragma once
/**
 * @file padic.hpp
 * @brief p-adic valuations, Newton polygons, square classes in Q_p and the
 *        certified (degree, slope) profile of the irreducible factors over Q_p.
 *
 * The profile is computed per rational irreducible factor phi by building the
 * p-maximal order of Q[t]/(phi) (Round 2: p-radical via a Frobenius power,
 * then the ring of multipliers until it stabilizes). On the p-maximal order O,
 * O/pO splits as a product of local rings, one per factor of phi over Q_p; the
 * primitive idempotents are found in the Frobenius-fixed subalgebra. Factor
 * degrees are the F_p-dimensions e_i O/pO and slopes come from v_p of the norm
 * of alpha e_i + 1 - e_i with e_i lifted to precision v_p(phi(0)) + 1.
 * When phi is p-regular (every residual polynomial of its Newton polygon is
 * squarefree) the profile is read off the residual factorizations instead.
 * Every profile is checked against the Newton polygon before it is returned.
 */

#include "factor_z.hpp"
#include "fp_poly.hpp"
#include "intpoly.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace weilpoly {

/// v_p(x); nullopt stands for +infinity (x = 0).
using Valuation = std::optional<long>;

inline Valuation vp(const Int& x, const Int& p) {
    if (p < 2) throw ShapeError("vp: p must be at least 2");
    if (x == 0) return std::nullopt;
    Int rest;
    return static_cast<long>(mpz_remove(rest.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t()));
}

inline bool val_at_least(const Valuation& v, const Rat& bound) { return !v || Rat(*v) >= bound; }
inline bool val_equals(const Valuation& v, const Rat& value) { return v && Rat(*v) == value; }

inline std::string rat_string(const Rat& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

// ---------------------------------------------------------------------------
// Newton polygons
// ---------------------------------------------------------------------------

struct NewtonSegment {
    Rat slope;  // root valuation
    int length;
};

struct NewtonPolygon {
    Int p;
    std::vector<std::pair<int, Valuation>> points;
    std::vector<std::pair<int, long>> vertices;
    std::vector<NewtonSegment> segments;  // left to right, slopes decreasing

    std::vector<Rat> root_valuations() const {
        std::vector<Rat> out;
        for (const auto& s : segments)
            for (int i = 0; i < s.length; ++i) out.push_back(s.slope);
        return out;
    }
};

inline NewtonPolygon newton_polygon(const IntPoly& f, const Int& p) {
    if (f.is_zero()) throw ShapeError("newton_polygon: zero polynomial");
    if (f.coeff(0) == 0) throw ShapeError("newton_polygon: constant term must be nonzero");
    NewtonPolygon np;
    np.p = p;
    std::vector<std::pair<int, long>> finite;
    for (int i = 0; i <= f.degree(); ++i) {
        Valuation v = vp(f.coeff(i), p);
        np.points.emplace_back(i, v);
        if (v) finite.emplace_back(i, *v);
    }
    auto& hull = np.vertices;
    for (const auto& pt : finite) {
        while (hull.size() >= 2) {
            const auto& a = hull[hull.size() - 2];
            const auto& b = hull.back();
            // Keep strict left turns only.
            Int cross = Int(b.first - a.first) * (pt.second - a.second) - Int(b.second - a.second) * (pt.first - a.first);
            if (cross > 0) break;
            hull.pop_back();
        }
        hull.push_back(pt);
    }
    for (std::size_t i = 0; i + 1 < hull.size(); ++i) {
        int len = hull[i + 1].first - hull[i].first;
        Rat s(hull[i].second - hull[i + 1].second, len);
        s.canonicalize();
        np.segments.push_back({s, len});
    }
    return np;
}

inline bool vertex_lattice_check(const NewtonPolygon& np, int n) {
    for (const auto& [i, v] : np.vertices)
        if (v % n != 0) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Square classes
// ---------------------------------------------------------------------------

inline bool is_square_in_qp(const Int& d, const Int& p) {
    if (d == 0) throw ShapeError("is_square_in_qp: d must be nonzero");
    Int u;
    long v = static_cast<long>(mpz_remove(u.get_mpz_t(), d.get_mpz_t(), p.get_mpz_t()));
    if (v % 2 != 0) return false;
    if (p == 2) {
        Int r = u % 8;
        if (r < 0) r += 8;
        return r == 1;
    }
    return mpz_legendre(u.get_mpz_t(), p.get_mpz_t()) == 1;
}

/// Factorization over F_p of an integer polynomial (leading coefficient dropped).
inline std::vector<FpFactor> factor_mod_p(const IntPoly& f, const Int& p, std::optional<u64> seed = std::nullopt) {
    if (!p.fits_ulong_p()) throw ShapeError("factor_mod_p: p too large");
    u64 pp = p.get_ui();
    FpPoly fb = FpPoly::from_int(f, pp);
    if (fb.degree() < 0) throw ShapeError("factor_mod_p: polynomial vanishes mod p");
    return factor_mod_p(fb, seed ? *seed : default_seed(f, pp));
}

// ---------------------------------------------------------------------------
// Factor profile over Q_p
// ---------------------------------------------------------------------------

struct QpFactor {
    int degree;
    Rat slope;
    bool operator==(const QpFactor&) const = default;
};

struct QpFactorProfile {
    std::vector<QpFactor> factors;  // sorted by (degree, slope)
    long precision_used = 0;

    int total_degree() const {
        int s = 0;
        for (const auto& f : factors) s += f.degree;
        return s;
    }
};

struct ProfileOptions {
    long precision_cap = 1L << 14;
    std::optional<u64> seed;
    /// Read p-regular factors off residual polynomials instead of building the maximal order.
    bool regular_shortcut = true;
};

inline bool has_root_of_valuation(const QpFactorProfile& pr, const Rat& v) {
    return std::any_of(pr.factors.begin(), pr.factors.end(), [&](const QpFactor& f) { return f.degree == 1 && f.slope == v; });
}

inline int count_factors_of_degree(const QpFactorProfile& pr, int d) {
    return static_cast<int>(std::count_if(pr.factors.begin(), pr.factors.end(), [&](const QpFactor& f) { return f.degree == d; }));
}

inline bool has_factor_of_degree(const QpFactorProfile& pr, int d) { return count_factors_of_degree(pr, d) > 0; }

namespace detail {

using Vec = std::vector<Int>;
using Mat = std::vector<Vec>;
using FpVec = std::vector<u64>;
using FpMat = std::vector<FpVec>;

inline u64 to_fp(const Int& v, u64 p) { return reduce_int(v, p); }

/// Basis of {x : A x = 0} over F_p for an m x n matrix A.
inline FpMat right_nullspace(FpMat A, std::size_t n, u64 p) {
    std::vector<int> pivot_col;
    std::size_t row = 0;
    for (std::size_t col = 0; col < n && row < A.size(); ++col) {
        std::size_t piv = row;
        while (piv < A.size() && A[piv][col] == 0) ++piv;
        if (piv == A.size()) continue;
        std::swap(A[piv], A[row]);
        u64 inv = invmod(A[row][col], p);
        for (auto& x : A[row]) x = mulmod(x, inv, p);
        for (std::size_t r = 0; r < A.size(); ++r) {
            if (r == row || A[r][col] == 0) continue;
            u64 factor = A[r][col];
            for (std::size_t c = 0; c < n; ++c) A[r][c] = submod(A[r][c], mulmod(factor, A[row][c], p), p);
        }
        pivot_col.push_back(static_cast<int>(col));
        ++row;
    }
    std::vector<bool> is_pivot(n, false);
    for (int c : pivot_col) is_pivot[static_cast<std::size_t>(c)] = true;
    FpMat basis;
    for (std::size_t free = 0; free < n; ++free) {
        if (is_pivot[free]) continue;
        FpVec x(n, 0);
        x[free] = 1;
        for (std::size_t r = 0; r < pivot_col.size(); ++r)
            x[static_cast<std::size_t>(pivot_col[r])] = (p - A[r][free]) % p;
        basis.push_back(std::move(x));
    }
    return basis;
}

/// Basis of {x : x M = 0} over F_p, M given by rows.
inline FpMat left_nullspace(const FpMat& M, u64 p) {
    if (M.empty()) return {};
    std::size_t rows = M.size(), cols = M[0].size();
    FpMat T(cols, FpVec(rows));
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) T[j][i] = M[i][j];
    return right_nullspace(std::move(T), rows, p);
}

inline std::size_t rank_mod_p(const FpMat& M, u64 p) {
    if (M.empty()) return 0;
    return M[0].size() - right_nullspace(M, M[0].size(), p).size();
}

/// Lower-triangular basis (row i has its pivot in column i, positive) of the
/// lattice spanned by full-rank integer generators in Z^d.
inline Mat hnf_lower(Mat rows, std::size_t d) {
    Mat basis(d, Vec(d, 0));
    for (std::size_t cc = d; cc-- > 0;) {
        while (true) {
            std::size_t best = rows.size();
            for (std::size_t r = 0; r < rows.size(); ++r) {
                if (rows[r][cc] == 0) continue;
                if (best == rows.size() || abs(rows[r][cc]) < abs(rows[best][cc])) best = r;
            }
            if (best == rows.size()) throw CertificationError("hnf_lower: generators are not of full rank");
            bool done = true;
            for (std::size_t r = 0; r < rows.size(); ++r) {
                if (r == best || rows[r][cc] == 0) continue;
                Int qt;
                mpz_fdiv_q(qt.get_mpz_t(), rows[r][cc].get_mpz_t(), rows[best][cc].get_mpz_t());
                for (std::size_t c = 0; c <= cc; ++c) rows[r][c] -= qt * rows[best][c];
                if (rows[r][cc] != 0) done = false;
            }
            if (done) {
                Vec piv = rows[best];
                rows.erase(rows.begin() + static_cast<long>(best));
                if (piv[cc] < 0)
                    for (auto& x : piv) x = -x;
                basis[cc] = std::move(piv);
                break;
            }
        }
        rows.erase(std::remove_if(rows.begin(), rows.end(),
                                  [](const Vec& v) { return std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; }); }),
                   rows.end());
    }
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i; j-- > 0;) {
            Int qt;
            mpz_fdiv_q(qt.get_mpz_t(), basis[i][j].get_mpz_t(), basis[j][j].get_mpz_t());
            if (qt != 0)
                for (std::size_t c = 0; c <= j; ++c) basis[i][c] -= qt * basis[j][c];
        }
    return basis;
}

/// Solve z L = w / D for lower-triangular L with integral z; throws otherwise.
inline Vec solve_lower(const Mat& L, const Vec& w, const Int& D = 1) {
    std::size_t d = L.size();
    Vec z(d);
    Int acc;
    for (std::size_t j = d; j-- > 0;) {
        acc = w[j];
        for (std::size_t i = j + 1; i < d; ++i)
            if (z[i] != 0 && L[i][j] != 0) acc -= z[i] * L[i][j];
        if (!mpz_divisible_p(acc.get_mpz_t(), L[j][j].get_mpz_t()))
            throw CertificationError("order arithmetic: non-integral coordinates");
        mpz_divexact(z[j].get_mpz_t(), acc.get_mpz_t(), L[j][j].get_mpz_t());
    }
    if (D != 1)
        for (auto& v : z) {
            if (!mpz_divisible_p(v.get_mpz_t(), D.get_mpz_t())) throw CertificationError("order arithmetic: non-integral coordinates");
            mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), D.get_mpz_t());
        }
    return z;
}

inline Int det_bareiss(Mat a) {
    std::size_t n = a.size();
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t r = k + 1;
            while (r < n && a[r][k] == 0) ++r;
            if (r == n) return 0;
            std::swap(a[r], a[k]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                a[i][j] = a[i][j] * a[k][k] - a[i][k] * a[k][j];
                mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
            }
        prev = a[k][k];
    }
    return n == 0 ? Int(1) : Int(sign * a[n - 1][n - 1]);
}

/// An order of Q[t]/(phi): omega_i = (1/den) sum_j basis[i][j] alpha^j, basis lower triangular.
struct Order {
    IntPoly phi;
    std::size_t d;
    Mat basis;
    Int den;
    std::vector<std::vector<Vec>> table;  // omega_i omega_j = sum_k table[i][j][k] omega_k

    Order(IntPoly f, Mat b, Int dn) : phi(std::move(f)), d(static_cast<std::size_t>(phi.degree())), basis(std::move(b)), den(std::move(dn)) {
        build_table();
    }

    IntPoly row_poly(std::size_t i) const { return IntPoly(basis[i]); }

    /// Coordinates of w(alpha) / scale.
    Vec coords_of(const IntPoly& w, const Int& scale) const {
        Vec rhs(d);
        for (std::size_t j = 0; j < d; ++j) rhs[j] = w.coeff(static_cast<int>(j)) * den;
        return solve_lower(basis, rhs, scale);
    }

    void build_table() {
        table.assign(d, std::vector<Vec>(d));
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = i; j < d; ++j) {
                IntPoly w = pseudo_remainder(row_poly(i) * row_poly(j), phi);
                table[i][j] = coords_of(w, den * den);
                table[j][i] = table[i][j];
            }
    }

    Vec one() const { return coords_of(IntPoly::constant(1), Int(1)); }
    Vec alpha() const { return coords_of(IntPoly::monomial(1, 1), Int(1)); }

    Vec mul(const Vec& x, const Vec& y, const Int& m) const {
        Vec out(d, 0);
        for (std::size_t i = 0; i < d; ++i) {
            if (x[i] == 0) continue;
            for (std::size_t j = 0; j < d; ++j) {
                if (y[j] == 0) continue;
                Int xy = x[i] * y[j];
                for (std::size_t k = 0; k < d; ++k) out[k] += xy * table[i][j][k];
            }
        }
        for (auto& v : out) {
            v %= m;
            if (v < 0) v += m;
        }
        return out;
    }

    Vec pow(Vec x, Int e, const Int& m) const {
        Vec r = one();
        for (auto& v : r) v %= m;
        while (e > 0) {
            if (mpz_odd_p(e.get_mpz_t())) r = mul(r, x, m);
            e >>= 1;
            if (e > 0) x = mul(x, x, m);
        }
        return r;
    }

    Vec unit_vec(std::size_t i) const {
        Vec v(d, 0);
        v[i] = 1;
        return v;
    }
};

/// Replace O by a larger order until it is p-maximal.
inline Order p_maximal_order(const IntPoly& phi, const Int& p) {
    const std::size_t d = static_cast<std::size_t>(phi.degree());
    Mat id(d, Vec(d, 0));
    for (std::size_t i = 0; i < d; ++i) id[i][i] = 1;
    Order O(phi, id, Int(1));
    const u64 pp = p.get_ui();
    Int frob = p;
    while (frob < Int(static_cast<unsigned long>(d))) frob *= p;
    for (int round = 0;; ++round) {
        if (round > 64 * static_cast<int>(d)) throw CertificationError("p-maximal order did not stabilize");
        // p-radical: kernel of x -> x^(p^j) on O/pO.
        FpMat F;
        for (std::size_t i = 0; i < d; ++i) {
            Vec v = O.pow(O.unit_vec(i), frob, p);
            FpVec row;
            for (const auto& x : v) row.push_back(to_fp(x, pp));
            F.push_back(row);
        }
        FpMat rad = left_nullspace(F, pp);
        Mat gens;
        for (std::size_t i = 0; i < d; ++i) {
            Vec v(d, 0);
            v[i] = p;
            gens.push_back(v);
        }
        for (const auto& k : rad) {
            Vec v;
            for (u64 x : k) v.emplace_back(static_cast<unsigned long>(x));
            gens.push_back(v);
        }
        Mat Ip = hnf_lower(gens, d);
        // U/pO = {y : y Ip subset p Ip}.
        FpMat M;
        for (std::size_t i = 0; i < d; ++i) {
            FpVec row;
            for (std::size_t j = 0; j < d; ++j) {
                Vec w(d, 0);
                for (std::size_t k = 0; k < d; ++k) {
                    if (Ip[j][k] == 0) continue;
                    for (std::size_t l = 0; l < d; ++l) w[l] += Ip[j][k] * O.table[i][k][l];
                }
                for (const auto& z : solve_lower(Ip, w)) row.push_back(to_fp(z, pp));
            }
            M.push_back(row);
        }
        FpMat ker = left_nullspace(M, pp);
        if (ker.empty()) return O;
        Mat ugens;
        for (std::size_t i = 0; i < d; ++i) {
            Vec v(d, 0);
            v[i] = p;
            ugens.push_back(v);
        }
        for (const auto& k : ker) {
            Vec v;
            for (u64 x : k) v.emplace_back(static_cast<unsigned long>(x));
            ugens.push_back(v);
        }
        Mat U = hnf_lower(ugens, d);
        Mat nb(d, Vec(d, 0));
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t k = 0; k < d; ++k) {
                if (U[i][k] == 0) continue;
                for (std::size_t j = 0; j < d; ++j) nb[i][j] += U[i][k] * O.basis[k][j];
            }
        nb = hnf_lower(nb, d);
        Int nd = O.den * p;
        Int g = nd;
        for (const auto& r : nb)
            for (const auto& x : r) g = gcd(g, x);
        for (auto& r : nb)
            for (auto& x : r) x /= g;
        nd /= g;
        O = Order(phi, nb, nd);
    }
}

/// Minimal polynomial over F_p (ascending, monic) of w inside e A, e the unit.
inline FpVec minimal_poly_in(const Order& O, const Vec& e, const Vec& w, const Int& p) {
    const u64 pp = p.get_ui();
    std::vector<Vec> pw{e};
    while (true) {
        Vec next = O.mul(pw.back(), w, p);
        // Solve next = sum c_i pw_i.
        FpMat A(O.d, FpVec(pw.size() + 1));
        for (std::size_t r = 0; r < O.d; ++r) {
            for (std::size_t i = 0; i < pw.size(); ++i) A[r][i] = to_fp(pw[i][r], pp);
            A[r][pw.size()] = to_fp(next[r], pp);
        }
        FpMat ns = right_nullspace(A, pw.size() + 1, pp);
        for (const auto& v : ns) {
            if (v.back() == 0) continue;
            u64 inv = invmod(v.back(), pp);
            FpVec mu;
            for (const auto& x : v) mu.push_back(mulmod(x, inv, pp));
            return mu;
        }
        pw.push_back(next);
        if (pw.size() > O.d + 1) throw CertificationError("minimal polynomial search exceeded dimension");
    }
}

struct LocalFactor {
    int degree;
    long norm_valuation;
};

/**
 * Factor degrees read off the residual polynomials of the Newton polygon.
 * A segment of slope h/e (lowest terms) and length e r has a residual
 * polynomial of degree r over F_p; when every residual polynomial is
 * squarefree (phi is p-regular) each irreducible factor of degree k yields
 * one factor of degree e k over Q_p. Returns nullopt otherwise.
 */
inline std::optional<std::vector<LocalFactor>> regular_local_factors(const IntPoly& phi, const Int& p, std::optional<u64> seed) {
    const u64 pp = p.get_ui();
    NewtonPolygon np = newton_polygon(phi, p);
    std::vector<LocalFactor> out;
    for (std::size_t s = 0; s + 1 < np.vertices.size(); ++s) {
        const auto [i0, v0] = np.vertices[s];
        const int i1 = np.vertices[s + 1].first;
        const long e = static_cast<long>(np.segments[s].slope.get_den().get_si());
        const long h = static_cast<long>(np.segments[s].slope.get_num().get_si());
        const long r = (i1 - i0) / e;
        std::vector<u64> res(static_cast<std::size_t>(r + 1), 0);
        for (long j = 0; j <= r; ++j) {
            const Int& a = phi.coeffs()[static_cast<std::size_t>(i0 + j * e)];
            Valuation va = vp(a, p);
            long expect = v0 - j * h;
            if (va && *va == expect) res[static_cast<std::size_t>(j)] = reduce_int(a / ipow(p, static_cast<unsigned long>(expect)), pp);
        }
        if (r == 1) {
            out.push_back({static_cast<int>(e), h});
            continue;
        }
        auto fs = factor_mod_p(FpPoly(pp, res), seed ? *seed : default_seed(phi, pp));
        for (const auto& fc : fs) {
            if (fc.multiplicity != 1) return std::nullopt;
            long k = fc.factor.degree();
            out.push_back({static_cast<int>(e * k), h * k});
        }
    }
    return out;
}

inline std::vector<LocalFactor> round2_local_factors(const IntPoly& phi, const Int& p, const ProfileOptions& opt) {
    const long N = *vp(phi.coeff(0), p) + 1;
    if (N > opt.precision_cap) throw CertificationError("precision cap exceeded: need p^" + std::to_string(N));
    Order O = p_maximal_order(phi, p);
    const std::size_t d = O.d;
    const u64 pp = p.get_ui();
    const Vec one = O.one();
    // Frobenius-fixed subalgebra: kernel of x -> x^p - x.
    FpMat F;
    for (std::size_t i = 0; i < d; ++i) {
        Vec v = O.pow(O.unit_vec(i), p, p);
        FpVec row;
        for (std::size_t k = 0; k < d; ++k) row.push_back(submod(to_fp(v[k], pp), k == i ? 1 : 0, pp));
        F.push_back(row);
    }
    FpMat fixed = left_nullspace(F, pp);
    std::vector<Vec> idem{one};
    if (fixed.size() > 1) {
        for (const auto& z : fixed) {
            Vec zv;
            for (u64 x : z) zv.emplace_back(static_cast<unsigned long>(x));
            std::vector<Vec> next;
            for (const auto& e : idem) {
                Vec w = O.mul(zv, e, p);
                FpVec mu = minimal_poly_in(O, e, w, p);
                FpPoly mp(pp, mu);
                std::vector<u64> roots;
                for (const auto& fac : factor_mod_p(mp, opt.seed ? *opt.seed : 1)) {
                    if (fac.factor.degree() != 1 || fac.multiplicity != 1)
                        throw CertificationError("Frobenius-fixed element with non-split minimal polynomial");
                    roots.push_back((pp - fac.factor.c[0]) % pp);
                }
                if (roots.size() <= 1) {
                    next.push_back(e);
                    continue;
                }
                for (std::size_t j = 0; j < roots.size(); ++j) {
                    Vec acc = e;
                    for (std::size_t l = 0; l < roots.size(); ++l) {
                        if (l == j) continue;
                        u64 scale = invmod(submod(roots[j], roots[l], pp), pp);
                        Vec lin = w;
                        for (std::size_t k = 0; k < d; ++k) {
                            lin[k] -= Int(static_cast<unsigned long>(roots[l])) * e[k];
                            lin[k] *= Int(static_cast<unsigned long>(scale));
                        }
                        acc = O.mul(acc, lin, p);
                    }
                    next.push_back(acc);
                }
            }
            idem = std::move(next);
        }
    }
    if (idem.size() != fixed.size()) throw CertificationError("idempotent splitting incomplete");
    const Int pN = ipow(p, static_cast<unsigned long>(N));
    const Vec alpha = O.alpha();
    std::vector<LocalFactor> out;
    for (auto e : idem) {
        FpMat mult;
        for (std::size_t k = 0; k < d; ++k) {
            Vec v = O.mul(e, O.unit_vec(k), p);
            FpVec row;
            for (const auto& x : v) row.push_back(to_fp(x, pp));
            mult.push_back(row);
        }
        int deg = static_cast<int>(rank_mod_p(mult, pp));
        for (int it = 0; it < 80; ++it) {
            Vec e2 = O.mul(e, e, pN);
            if (e2 == e) break;
            Vec e3 = O.mul(e2, e, pN);
            for (std::size_t k = 0; k < d; ++k) {
                e[k] = (3 * e2[k] - 2 * e3[k]) % pN;
                if (e[k] < 0) e[k] += pN;
            }
        }
        if (O.mul(e, e, pN) != e) throw CertificationError("idempotent lifting failed");
        Vec y = O.mul(alpha, e, pN);
        for (std::size_t k = 0; k < d; ++k) y[k] += one[k] - e[k];
        Mat m;
        for (std::size_t k = 0; k < d; ++k) m.push_back(O.mul(y, O.unit_vec(k), pN));
        Int det = det_bareiss(m) % pN;
        if (det == 0) throw CertificationError("norm vanishes at working precision");
        out.push_back({deg, *vp(det, p)});
    }
    return out;
}

inline std::vector<LocalFactor> local_factors(const IntPoly& phi, const Int& p, const ProfileOptions& opt) {
    if (opt.regular_shortcut)
        if (auto reg = regular_local_factors(phi, p, opt.seed)) return *reg;
    return round2_local_factors(phi, p, opt);
}

}  // namespace detail

/// Exact multiset of (degree, root valuation) of the irreducible factors of f over Q_p.
inline QpFactorProfile qp_factor_profile(const IntPoly& f, const Int& p, const ProfileOptions& opt = {}) {
    if (f.is_zero() || !f.is_monic()) throw ShapeError("qp_factor_profile: polynomial must be monic");
    if (f.coeff(0) == 0) throw ShapeError("qp_factor_profile: constant term must be nonzero");
    if (!p.fits_ulong_p() || !is_prime(p)) throw ShapeError("qp_factor_profile: p must be a machine-size prime");
    QpFactorProfile out;
    for (const auto& [phi, mult] : factor_over_q(f).factors) {
        std::vector<detail::LocalFactor> local;
        if (phi.degree() == 1) {
            local.push_back({1, *vp(phi.coeff(0), p)});
        } else {
            local = detail::local_factors(phi, p, opt);
        }
        std::vector<Rat> vals;
        long total = 0;
        int deg = 0;
        for (const auto& lf : local) {
            Rat s(lf.norm_valuation, lf.degree);
            s.canonicalize();
            for (int k = 0; k < mult; ++k) out.factors.push_back({lf.degree, s});
            for (int i = 0; i < lf.degree; ++i) vals.push_back(s);
            total += lf.norm_valuation;
            deg += lf.degree;
        }
        out.precision_used = std::max(out.precision_used, *vp(phi.coeff(0), p) + 1);
        auto np = newton_polygon(phi, p).root_valuations();
        std::sort(vals.begin(), vals.end());
        std::sort(np.begin(), np.end());
        if (deg != phi.degree() || total != *vp(phi.coeff(0), p) || vals != np)
            throw CertificationError("factor profile inconsistent with Newton polygon of " + phi.to_string());
    }
    std::sort(out.factors.begin(), out.factors.end(), [](const QpFactor& a, const QpFactor& b) {
        return a.degree != b.degree ? a.degree < b.degree : a.slope < b.slope;
    });
    return out;
}

}  // namespace weilpoly
