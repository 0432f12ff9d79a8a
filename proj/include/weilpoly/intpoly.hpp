#pragma once
/**
 * @file intpoly.hpp
 * @brief Exact univariate polynomials over Z, with Sturm sequences for
 *        counting real roots over the rationals.
 *
 * Coefficients are stored in ascending order: c[i] is the coefficient of t^i.
 * The zero polynomial is representable (it shows up as an intermediate
 * remainder) but every public algorithm that needs a genuine polynomial
 * rejects it with ShapeError.
 */

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace weilpoly {

using Int = mpz_class;
using Rat = mpq_class;

/// Input does not have the shape an operation requires (degree, monicity, zero).
class ShapeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A certified computation could not be completed within its configured limits.
class CertificationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IntPoly {
public:
    IntPoly() = default;
    explicit IntPoly(std::vector<Int> coeffs) : c_(std::move(coeffs)) { normalize(); }
    IntPoly(std::initializer_list<long> coeffs) {
        c_.reserve(coeffs.size());
        for (long v : coeffs) c_.emplace_back(v);
        normalize();
    }

    static IntPoly constant(const Int& v) { return IntPoly(std::vector<Int>{v}); }
    static IntPoly monomial(const Int& v, int deg) {
        std::vector<Int> c(static_cast<std::size_t>(deg) + 1, 0);
        c.back() = v;
        return IntPoly(std::move(c));
    }
    /// t - r
    static IntPoly linear_root(const Int& r) { return IntPoly(std::vector<Int>{-r, 1}); }

    bool is_zero() const { return c_.empty(); }
    /// Degree; -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<Int>& coeffs() const { return c_; }
    Int coeff(int i) const {
        if (i < 0 || i > degree()) return 0;
        return c_[static_cast<std::size_t>(i)];
    }
    const Int& lead() const {
        if (is_zero()) throw ShapeError("leading coefficient of the zero polynomial");
        return c_.back();
    }
    bool is_monic() const { return !is_zero() && c_.back() == 1; }

    Int eval(const Int& x) const {
        Int acc = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    /// Sign of h(num/den) for den > 0, computed as the sign of den^d * h(num/den).
    int sign_at(const Rat& x) const {
        if (is_zero()) return 0;
        Int num = x.get_num(), den = x.get_den();
        Int acc = 0, dpow = 1;
        // Horner on the homogenized form sum c_i num^i den^(d-i).
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
            acc = acc * num + *it * dpow;
            dpow *= den;
        }
        return sgn(acc);
    }

    friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const IntPoly& a, const IntPoly& b) { return !(a == b); }

    friend IntPoly operator+(const IntPoly& a, const IntPoly& b) {
        std::vector<Int> r(std::max(a.c_.size(), b.c_.size()), 0);
        for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
        return IntPoly(std::move(r));
    }
    friend IntPoly operator-(const IntPoly& a) {
        std::vector<Int> r = a.c_;
        for (auto& v : r) v = -v;
        return IntPoly(std::move(r));
    }
    friend IntPoly operator-(const IntPoly& a, const IntPoly& b) { return a + (-b); }
    friend IntPoly operator*(const IntPoly& a, const IntPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Int> r(a.c_.size() + b.c_.size() - 1, 0);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        }
        return IntPoly(std::move(r));
    }
    friend IntPoly operator*(const Int& s, const IntPoly& a) {
        std::vector<Int> r = a.c_;
        for (auto& v : r) v *= s;
        return IntPoly(std::move(r));
    }
    IntPoly& operator+=(const IntPoly& o) { return *this = *this + o; }
    IntPoly& operator-=(const IntPoly& o) { return *this = *this - o; }
    IntPoly& operator*=(const IntPoly& o) { return *this = *this * o; }

    /// Divide every coefficient by d; d must divide each exactly.
    IntPoly divexact(const Int& d) const {
        std::vector<Int> r = c_;
        for (auto& v : r) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), d.get_mpz_t());
        return IntPoly(std::move(r));
    }

    IntPoly pow(unsigned e) const {
        IntPoly acc = constant(1), base = *this;
        while (e) {
            if (e & 1U) acc *= base;
            e >>= 1U;
            if (e) base *= base;
        }
        return acc;
    }

    /// Ascending, comma separated, e.g. "4,2,1" for t^2 + 2t + 4.
    std::string to_csv() const {
        std::ostringstream os;
        for (std::size_t i = 0; i < c_.size(); ++i) os << (i ? "," : "") << c_[i];
        if (c_.empty()) os << "0";
        return os.str();
    }

    std::string to_string(char var = 't') const {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (int i = degree(); i >= 0; --i) {
            const Int& v = c_[static_cast<std::size_t>(i)];
            if (v == 0) continue;
            Int mag = abs(v);
            if (first) {
                if (v < 0) os << "-";
            } else {
                os << (v < 0 ? " - " : " + ");
            }
            first = false;
            if (i == 0 || mag != 1) os << mag;
            if (i >= 1) os << var;
            if (i >= 2) os << '^' << i;
        }
        return os.str();
    }

private:
    void normalize() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<Int> c_;
};

inline IntPoly parse_poly_csv(const std::string& text) {
    std::vector<Int> c;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
        if (item.empty()) throw ShapeError("empty coefficient in '" + text + "'");
        Int v;
        if (v.set_str(item, 10) != 0) throw ShapeError("bad integer '" + item + "'");
        c.push_back(v);
    }
    return IntPoly(std::move(c));
}

inline IntPoly derivative(const IntPoly& f) {
    std::vector<Int> r;
    for (int i = 1; i <= f.degree(); ++i) r.push_back(f.coeff(i) * i);
    return IntPoly(std::move(r));
}

inline Int content(const IntPoly& f) {
    Int g = 0;
    for (const auto& v : f.coeffs()) g = gcd(g, v);
    return g;
}

/// Primitive part with positive leading coefficient.
inline IntPoly primitive_part(const IntPoly& f) {
    if (f.is_zero()) return f;
    Int g = content(f);
    if (f.lead() < 0) g = -g;
    return f.divexact(g);
}

/// lc(b)^(deg a - deg b + 1) * a = q*b + r, returns r.
inline IntPoly pseudo_remainder(const IntPoly& a, const IntPoly& b) {
    if (b.is_zero()) throw ShapeError("pseudo-division by zero polynomial");
    std::vector<Int> r = a.coeffs();
    int db = b.degree();
    const Int& lb = b.lead();
    int steps = a.degree() - db + 1;
    if (steps <= 0) return a;
    for (int i = a.degree(); i >= db; --i) {
        Int lr = r[static_cast<std::size_t>(i)];
        for (auto& v : r) v *= lb;
        for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(i - db + j)] -= lr * b.coeff(j);
    }
    return IntPoly(std::move(r));
}

/// Exact quotient a / b over Z; throws if b does not divide a.
inline IntPoly exact_quotient(const IntPoly& a, const IntPoly& b) {
    if (b.is_zero()) throw ShapeError("division by zero polynomial");
    if (a.is_zero()) return a;
    int da = a.degree(), db = b.degree();
    if (da < db) throw ShapeError("exact_quotient: divisor does not divide");
    std::vector<Int> r = a.coeffs();
    std::vector<Int> q(static_cast<std::size_t>(da - db + 1), 0);
    const Int& lb = b.lead();
    for (int i = da - db; i >= 0; --i) {
        const Int& top = r[static_cast<std::size_t>(i + db)];
        if (!mpz_divisible_p(top.get_mpz_t(), lb.get_mpz_t()))
            throw ShapeError("exact_quotient: divisor does not divide");
        Int qi = top / lb;
        for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(i + j)] -= qi * b.coeff(j);
        q[static_cast<std::size_t>(i)] = qi;
    }
    for (const auto& v : r)
        if (v != 0) throw ShapeError("exact_quotient: divisor does not divide");
    return IntPoly(std::move(q));
}

/// Returns the quotient if b divides a over Z, nullopt otherwise.
inline std::optional<IntPoly> try_exact_quotient(const IntPoly& a, const IntPoly& b) {
    try {
        return exact_quotient(a, b);
    } catch (const ShapeError&) {
        return std::nullopt;
    }
}

/// Primitive gcd over Z[t] (primitive polynomial remainder sequence), positive lead.
inline IntPoly gcd(IntPoly a, IntPoly b) {
    if (a.is_zero()) return primitive_part(b);
    if (b.is_zero()) return primitive_part(a);
    Int cg = gcd(content(a), content(b));
    a = primitive_part(a);
    b = primitive_part(b);
    if (a.degree() < b.degree()) std::swap(a, b);
    while (!b.is_zero()) {
        IntPoly r = pseudo_remainder(a, b);
        a = std::move(b);
        b = primitive_part(r);
    }
    return cg * primitive_part(a);
}

/// Squarefree decomposition f = c * prod s_k^k, with s_k primitive, squarefree
/// and pairwise coprime (Musser's repeated-gcd scheme). Returns the nonconstant
/// (s_k, k).
inline std::vector<std::pair<IntPoly, int>> squarefree_decomposition(const IntPoly& f) {
    if (f.is_zero()) throw ShapeError("squarefree decomposition of zero");
    std::vector<std::pair<IntPoly, int>> out;
    IntPoly a = primitive_part(f);
    if (a.degree() <= 0) return out;
    IntPoly d = gcd(a, derivative(a));
    IntPoly w = primitive_part(exact_quotient(a, d));
    int k = 1;
    while (w.degree() > 0) {
        IntPoly y = gcd(w, d);
        IntPoly s = primitive_part(exact_quotient(w, y));
        if (s.degree() > 0) out.emplace_back(s, k);
        d = primitive_part(exact_quotient(d, y));
        w = y;
        ++k;
    }
    return out;
}

/// The squarefree part rad(f), primitive with positive lead.
inline IntPoly squarefree_part(const IntPoly& f) {
    IntPoly g = primitive_part(gcd(f, derivative(f)));
    return primitive_part(exact_quotient(primitive_part(f), g));
}

// ---------------------------------------------------------------------------
// Sturm sequences
// ---------------------------------------------------------------------------

/// Sturm chain of h with content stripped at each step; signs are preserved.
inline std::vector<IntPoly> sturm_sequence(const IntPoly& h) {
    if (h.is_zero()) throw ShapeError("Sturm sequence of zero polynomial");
    std::vector<IntPoly> seq{primitive_part(h), primitive_part(derivative(h))};
    if (h.lead() < 0) seq[0] = -seq[0];
    if (seq[1].is_zero()) {
        seq.pop_back();
        return seq;
    }
    if (h.lead() < 0) seq[1] = -seq[1];
    while (true) {
        const IntPoly& a = seq[seq.size() - 2];
        const IntPoly& b = seq.back();
        IntPoly r = pseudo_remainder(a, b);
        if (r.is_zero()) break;
        // prem multiplies by lc(b)^k; undo its sign, then negate.
        int k = a.degree() - b.degree() + 1;
        bool flip = (b.lead() < 0) && (k % 2 == 1);
        Int ct = content(r);
        IntPoly next = r.divexact(ct);
        if (!flip) next = -next;
        seq.push_back(std::move(next));
    }
    return seq;
}

namespace detail {
inline int sign_at_infinity(const IntPoly& p, bool positive) {
    int s = sgn(p.lead());
    if (!positive && (p.degree() % 2 != 0)) s = -s;
    return s;
}
inline int variations(const std::vector<int>& signs) {
    int v = 0, last = 0;
    for (int s : signs) {
        if (s == 0) continue;
        if (last != 0 && s != last) ++v;
        last = s;
    }
    return v;
}
inline int variations_at(const std::vector<IntPoly>& seq, const std::optional<Rat>& x, bool plus_inf) {
    std::vector<int> signs;
    signs.reserve(seq.size());
    for (const auto& p : seq) signs.push_back(x ? p.sign_at(*x) : sign_at_infinity(p, plus_inf));
    return variations(signs);
}
}  // namespace detail

/// Number of distinct real roots of h in (lo, hi]; nullopt endpoints mean -inf / +inf.
inline int sturm_count(const IntPoly& h, const std::optional<Rat>& lo, const std::optional<Rat>& hi) {
    if (h.is_zero()) throw ShapeError("sturm_count of zero polynomial");
    if (h.degree() == 0) return 0;
    if (lo && hi && *lo >= *hi) return 0;
    auto seq = sturm_sequence(squarefree_part(h));
    return detail::variations_at(seq, lo, false) - detail::variations_at(seq, hi, true);
}

inline Int isqrt(const Int& v) {
    Int r;
    mpz_sqrt(r.get_mpz_t(), v.get_mpz_t());
    return r;
}

inline Int ipow(const Int& b, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

inline Int binomial(unsigned long n, unsigned long k) {
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

// ---------------------------------------------------------------------------
// Palindromic (q-symmetric) polynomials
// ---------------------------------------------------------------------------

namespace detail {
inline void require_weil_shape(const IntPoly& f, int g) {
    if (g < 1) throw ShapeError("g must be positive");
    if (!f.is_monic()) throw ShapeError("polynomial must be monic");
    if (f.degree() % 2 != 0) throw ShapeError("polynomial must have even degree");
    if (f.degree() != 2 * g) throw ShapeError("polynomial degree must equal 2g");
}
}  // namespace detail

/// t^(2g) f(q/t) == q^g f(t): with f = sum_i c_i t^(2g-i), c_(2g-i) = q^(g-i) c_i.
inline bool functional_equation_holds(const IntPoly& f, const Int& q, int g) {
    detail::require_weil_shape(f, g);
    const int d = 2 * g;
    for (int i = 0; i <= g; ++i) {
        // Descending index i is ascending index d - i.
        if (f.coeff(i) != ipow(q, static_cast<unsigned long>(g - i)) * f.coeff(d - i)) return false;
    }
    return true;
}

/// The monic degree-g h with f(t) = t^g h(t + q/t).
///
/// Uses t^k + q^k t^-k = P_k(t + q/t), P_0 = 2, P_1 = x, P_(k+1) = x P_k - q P_(k-1),
/// so h = c_g + sum_(k=1..g) c_(g-k) P_k with c_i the descending coefficients.
inline IntPoly real_weil_transform(const IntPoly& f, const Int& q) {
    if (f.is_zero() || f.degree() % 2 != 0) throw ShapeError("real_weil_transform: degree must be even");
    const int g = f.degree() / 2;
    if (!functional_equation_holds(f, q, g)) throw ShapeError("real_weil_transform: functional equation fails");
    const IntPoly x{0, 1};
    IntPoly prev = IntPoly::constant(2), cur = x;
    auto desc = [&](int i) { return f.coeff(2 * g - i); };
    IntPoly h = IntPoly::constant(desc(g));
    for (int k = 1; k <= g; ++k) {
        h += desc(g - k) * cur;
        IntPoly next = x * cur - q * prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return h;
}

/// Inverse of real_weil_transform: t^g h(t + q/t).
inline IntPoly expand_real_weil(const IntPoly& h, const Int& q) {
    const int g = h.degree();
    // (t^2 + q)^k t^(g-k) summed with the coefficients of h.
    IntPoly quad = IntPoly(std::vector<Int>{q, 0, 1});
    IntPoly acc;
    for (int k = 0; k <= g; ++k) acc += h.coeff(k) * (quad.pow(static_cast<unsigned>(k)) * IntPoly::monomial(1, g - k));
    return acc;
}

}  // namespace weilpoly
