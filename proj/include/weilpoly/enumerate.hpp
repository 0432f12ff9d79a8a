#pragma once
/**
 * @file enumerate.hpp
 * @brief Pruned enumeration and sampling of Weil candidates and batch
 *        classification in canonical order.
 */

#include "hondatate.hpp"
#include "weil.hpp"

#include <atomic>
#include <chrono>
#include <exception>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <thread>
#include <vector>

namespace weilpoly {

class CapError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class SampleMode { full, sample };
enum class Sampler { box, tree };

inline constexpr u64 default_seed_value = 42;

struct EnumerationJob {
    Int p = 2;
    int n = 1;
    int g = 1;
    int depth = 1;
    /// Optional explicit range for a_k at index k-1; intersected with the computed interval.
    std::vector<std::optional<CoeffInterval>> overrides;
    /// Permits full mode beyond the node cap.
    bool acknowledge_cap = false;
    SampleMode mode = SampleMode::full;
    std::size_t count = 0;
    u64 seed = default_seed_value;
    Sampler sampler = Sampler::box;
    Int node_cap = 100000000;
    int workers = 1;
    ProfileOptions profile;

    Int q() const { return ipow(p, static_cast<unsigned long>(n)); }

    std::optional<CoeffInterval> override_at(int k) const {
        if (k - 1 < static_cast<int>(overrides.size())) return overrides[static_cast<std::size_t>(k - 1)];
        return std::nullopt;
    }

    void validate() const {
        WeilCandidate{p, n, g, std::vector<Int>(static_cast<std::size_t>(g))}.validate();
        if (depth < 0) throw ShapeError("pruning depth must be nonnegative");
        if (static_cast<int>(overrides.size()) > g) throw ShapeError("more overrides than coefficients");
        if (workers < 1) throw ShapeError("worker count must be positive");
        if (mode == SampleMode::sample && count == 0) throw ShapeError("sample mode needs a positive count");
    }
};

inline CoeffInterval intersect(const CoeffInterval& a, const CoeffInterval& b) {
    return {a.lo > b.lo ? a.lo : b.lo, a.hi < b.hi ? a.hi : b.hi};
}

/// Number of tuples in the (overridden) baseline box.
inline Int baseline_space_size(const EnumerationJob& job) {
    Int total = 1;
    for (int k = 1; k <= job.g; ++k) {
        CoeffInterval iv = baseline_interval(job.g, job.q(), k);
        if (auto o = job.override_at(k)) iv = intersect(iv, *o);
        total *= iv.size();
    }
    return total;
}

namespace detail {

inline CoeffInterval level_interval(const EnumerationJob& job, const std::vector<Int>& prefix) {
    int k = static_cast<int>(prefix.size()) + 1;
    CoeffInterval iv = coefficient_interval(job.p, job.n, job.g, prefix, job.depth);
    if (auto o = job.override_at(k)) iv = intersect(iv, *o);
    return iv;
}

inline void check_cap(const EnumerationJob& job) {
    if (job.mode == SampleMode::full && !job.acknowledge_cap && baseline_space_size(job) > job.node_cap)
        throw CapError("full enumeration refused: baseline space " + baseline_space_size(job).get_str() +
                       " exceeds the node cap " + job.node_cap.get_str() + "; use sample mode or acknowledge the cap");
}

}  // namespace detail

struct EnumerationStats {
    long nodes = 0;   // interval evaluations (inner nodes)
    long leaves = 0;  // complete tuples tested with is_weil
    long emitted = 0;
};

/// Calls `leaf(c, weil)` for every complete tuple of the pruned tree whose
/// first coefficient is `a1`, in lexicographic order.
inline void walk_subtree(const EnumerationJob& job, const Int& a1, EnumerationStats& st,
                         const std::function<void(const WeilCandidate&, bool)>& leaf) {
    WeilCandidate c{job.p, job.n, job.g, {a1}};
    const Int q = job.q();
    std::function<void()> rec = [&]() {
        if (static_cast<int>(c.a.size()) == job.g) {
            ++st.leaves;
            bool w = is_weil_polynomial(expand(c), q);
            if (w) ++st.emitted;
            leaf(c, w);
            return;
        }
        ++st.nodes;
        CoeffInterval iv = detail::level_interval(job, c.a);
        for (Int v = iv.lo; v <= iv.hi; ++v) {
            c.a.push_back(v);
            rec();
            c.a.pop_back();
        }
    };
    rec();
}

/// Top-level range of a_1.
inline CoeffInterval first_level(const EnumerationJob& job) { return detail::level_interval(job, {}); }

/// Weil candidates of the pruned tree in lexicographic order of (a_1, .., a_g).
inline EnumerationStats enumerate_weil(const EnumerationJob& job, const std::function<void(const WeilCandidate&)>& emit) {
    job.validate();
    if (job.mode != SampleMode::full) throw ShapeError("enumerate_weil requires full mode");
    detail::check_cap(job);
    EnumerationStats st;
    ++st.nodes;
    CoeffInterval top = first_level(job);
    for (Int a1 = top.lo; a1 <= top.hi; ++a1)
        walk_subtree(job, a1, st, [&](const WeilCandidate& c, bool w) {
            if (w) emit(c);
        });
    return st;
}

inline std::vector<WeilCandidate> enumerate_weil(const EnumerationJob& job) {
    std::vector<WeilCandidate> out;
    enumerate_weil(job, [&](const WeilCandidate& c) { out.push_back(c); });
    return out;
}

struct SampleDraws {
    std::vector<WeilCandidate> candidates;
    long attempts = 0;  // tree sampler: descents including dead ends
};

namespace detail {

inline Int draw(std::mt19937_64& rng, const CoeffInterval& iv) {
    Int span = iv.hi - iv.lo + 1;
    Int r = 0;
    std::size_t bits = mpz_sizeinbase(span.get_mpz_t(), 2) + 64;
    for (std::size_t b = 0; b < bits; b += 64) {
        r <<= 64;
        u64 x = rng();
        Int limb;
        mpz_import(limb.get_mpz_t(), 1, -1, sizeof x, 0, 0, &x);
        r += limb;
    }
    return iv.lo + Int(r % span);
}

}  // namespace detail

/// Box sampler: tuples uniform in the baseline box (with overrides), unfiltered.
/// Tree sampler: descends the pruned tree drawing each a_k uniformly from its
/// interval, restarting on empty intervals.
inline SampleDraws draw_samples(const EnumerationJob& job) {
    job.validate();
    std::mt19937_64 rng(job.seed);
    SampleDraws out;
    const Int q = job.q();
    while (out.candidates.size() < job.count) {
        ++out.attempts;
        WeilCandidate c{job.p, job.n, job.g, {}};
        bool dead = false;
        for (int k = 1; k <= job.g && !dead; ++k) {
            CoeffInterval iv;
            if (job.sampler == Sampler::box) {
                iv = baseline_interval(job.g, q, k);
                if (auto o = job.override_at(k)) iv = intersect(iv, *o);
            } else {
                iv = detail::level_interval(job, c.a);
            }
            if (iv.empty()) {
                if (job.sampler == Sampler::box) throw ShapeError("override leaves an empty range");
                dead = true;
                break;
            }
            c.a.push_back(detail::draw(rng, iv));
        }
        if (!dead) out.candidates.push_back(std::move(c));
    }
    return out;
}

struct ClassificationSummary {
    std::map<std::string, long> cases;  // I(1), II(k), non-dim5, not-simple, not-weil, rejected
    std::map<std::pair<int, int>, long> by_e_dim;  // simple classes only
    long visited = 0;
    long weil = 0;
    long attempts = 0;
    long theorem11_checks = 0;
    long equivalence_checks = 0;
    double wall_seconds = 0;

    double acceptance_rate() const { return attempts ? static_cast<double>(weil) / static_cast<double>(attempts) : 0.0; }

    long case_total() const {
        long s = 0;
        for (const auto& [k, v] : cases) s += v;
        return s;
    }
};

/// Summary bucket of a report.
inline std::string summary_case(const IsogenyClassReport& r) {
    if (!r.weil) return "not-weil";
    if (r.case_label.rfind("rejected", 0) == 0) return r.candidate.g == 5 ? "rejected" : "not-simple";
    return r.case_label;
}

inline void add_to_summary(ClassificationSummary& s, const IsogenyClassReport& r) {
    ++s.visited;
    ++s.cases[summary_case(r)];
    if (!r.weil) return;
    ++s.weil;
    if (r.simple) {
        ++s.by_e_dim[{r.multiplicity, r.dimension}];
        if (!r.real_root) ++s.theorem11_checks;
    }
    if (r.candidate.g == 5) ++s.equivalence_checks;
}

struct ClassificationRun {
    ClassificationSummary summary;
    std::vector<IsogenyClassReport> reports;  // Weil candidates, canonical order
};

namespace detail {

// Runs task(i) for i in [0, count) on `workers` threads; results are merged
// by the caller in index order. The first exception by index is rethrown.
inline void run_indexed(std::size_t count, int workers, const std::function<void(std::size_t)>& task) {
    std::vector<std::exception_ptr> errors(count);
    std::atomic<std::size_t> next{0};
    auto body = [&]() {
        for (std::size_t i; (i = next.fetch_add(1)) < count;) {
            try {
                task(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    int threads = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(workers), count));
    if (threads <= 1) {
        body();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(body);
        for (auto& th : pool) th.join();
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace detail

/**
 * Classifies every candidate of the job. Full mode partitions the a_1 range
 * across workers; sample mode draws all tuples from the seed first and then
 * classifies them in parallel. Reports (Weil candidates only) are passed to
 * `sink` in canonical order; the summary counts every visited tuple.
 */
inline ClassificationSummary classify_all(const EnumerationJob& job, const std::function<void(const IsogenyClassReport&)>& sink) {
    auto start = std::chrono::steady_clock::now();
    job.validate();
    ClassificationSummary summary;
    std::vector<std::vector<IsogenyClassReport>> parts;

    if (job.mode == SampleMode::full) {
        detail::check_cap(job);
        CoeffInterval top = first_level(job);
        std::size_t width = top.empty() ? 0 : top.size().get_ui();
        parts.resize(width);
        std::vector<long> not_weil(width, 0);
        detail::run_indexed(width, job.workers, [&](std::size_t i) {
            EnumerationStats st;
            walk_subtree(job, top.lo + Int(static_cast<unsigned long>(i)), st, [&](const WeilCandidate& c, bool w) {
                if (w)
                    parts[i].push_back(classify(c, job.profile));
                else
                    ++not_weil[i];
            });
        });
        for (long v : not_weil) {
            if (v == 0) continue;
            summary.visited += v;
            summary.cases["not-weil"] += v;
        }
        summary.attempts = summary.visited;
        for (const auto& part : parts) summary.attempts += static_cast<long>(part.size());
    } else {
        SampleDraws draws = draw_samples(job);
        summary.attempts = draws.attempts;
        const std::size_t chunk = 64;
        std::size_t chunks = (draws.candidates.size() + chunk - 1) / chunk;
        parts.resize(chunks);
        detail::run_indexed(chunks, job.workers, [&](std::size_t i) {
            for (std::size_t j = i * chunk; j < std::min(draws.candidates.size(), (i + 1) * chunk); ++j)
                parts[i].push_back(classify(draws.candidates[j], job.profile));
        });
    }

    for (const auto& part : parts)
        for (const auto& r : part) {
            add_to_summary(summary, r);
            if (r.weil) sink(r);
        }
    summary.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return summary;
}

inline ClassificationRun classify_all(const EnumerationJob& job) {
    ClassificationRun run;
    run.summary = classify_all(job, [&](const IsogenyClassReport& r) { run.reports.push_back(r); });
    return run;
}

/// Multiset of Frobenius traces p + 1 - #E(F_p) over all Weierstrass curves
/// (long form for p in {2, 3}, short form otherwise).
inline std::map<long, long> elliptic_trace_oracle(long p) {
    if (p > 97 || !is_prime(Int(p))) throw ShapeError("elliptic_trace_oracle needs a prime p <= 97");
    std::map<long, long> traces;
    auto md = [p](long v) { return ((v % p) + p) % p; };
    if (p >= 5) {
        std::vector<int> roots(static_cast<std::size_t>(p), 0);
        for (long y = 0; y < p; ++y) ++roots[static_cast<std::size_t>(y * y % p)];
        for (long A = 0; A < p; ++A)
            for (long B = 0; B < p; ++B) {
                if (md(4 * A * A * A + 27 * B * B) == 0) continue;
                long pts = 1;
                for (long x = 0; x < p; ++x) pts += roots[static_cast<std::size_t>(md(x * x * x + A * x + B))];
                ++traces[p + 1 - pts];
            }
        return traces;
    }
    for (long a1 = 0; a1 < p; ++a1)
        for (long a2 = 0; a2 < p; ++a2)
            for (long a3 = 0; a3 < p; ++a3)
                for (long a4 = 0; a4 < p; ++a4)
                    for (long a6 = 0; a6 < p; ++a6) {
                        long b2 = a1 * a1 + 4 * a2, b4 = 2 * a4 + a1 * a3, b6 = a3 * a3 + 4 * a6;
                        long b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
                        if (md(-b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6) == 0) continue;
                        long pts = 1;
                        for (long x = 0; x < p; ++x)
                            for (long y = 0; y < p; ++y)
                                if (md(y * y + a1 * x * y + a3 * y - x * x * x - a2 * x * x - a4 * x - a6) == 0) ++pts;
                        ++traces[p + 1 - pts];
                    }
    return traces;
}

}  // namespace weilpoly
