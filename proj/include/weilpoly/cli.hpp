#pragma once
/**
 * @file cli.hpp
 * @brief The weilpoly command line: check, newton, profile, enumerate.
 *
 * Exit codes: 0 success (check: simple characteristic polynomial),
 * 1 check on a valid input that is not simple or not Weil,
 * 2 usage, validation, cap or certification errors.
 *
 * Global options may also come from a key=value config file given by
 * --config or the WEILPOLY_CONFIG environment variable; explicit flags win.
 */

#include "enumerate.hpp"
#include "hondatate.hpp"
#include "padic.hpp"
#include "report_io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

namespace weilpoly::cli {

enum class Format { text, json, csv };

struct CliConfig {
    Format format = Format::text;
    long precision_cap = 1L << 14;
    int depth = 1;
    u64 seed = default_seed_value;
    int workers = 1;
    bool tags = true;
};

namespace detail {

inline std::vector<Int> parse_ints(const std::vector<std::string>& parts) {
    std::vector<Int> out;
    for (const auto& s : parts) {
        Int v;
        if (s.empty() || v.set_str(s, 10) != 0) throw ShapeError("not an integer: '" + s + "'");
        out.push_back(v);
    }
    return out;
}

inline IntPoly parse_poly(const std::vector<std::string>& parts) {
    IntPoly f(parse_ints(parts));
    if (f.is_zero()) throw ShapeError("polynomial is zero");
    return f;
}

inline Int parse_prime(const std::string& s) {
    auto v = parse_ints({s});
    if (!is_prime(v[0])) throw ShapeError("p = " + s + " is not prime");
    return v[0];
}

inline ProfileOptions profile_options(const CliConfig& cfg) {
    ProfileOptions o;
    o.precision_cap = cfg.precision_cap;
    o.seed = cfg.seed;
    return o;
}

inline void strip_tags(IsogenyClassReport& r, const CliConfig& cfg) {
    if (!cfg.tags) r.tags.clear();
}

inline std::string report_line(const IsogenyClassReport& r, Format f) {
    switch (f) {
        case Format::json: return report_jsonl(r);
        case Format::csv: return report_csv(r);
        case Format::text: break;
    }
    std::ostringstream os;
    os << "a=(";
    for (std::size_t i = 0; i < r.candidate.a.size(); ++i) os << (i ? "," : "") << r.candidate.a[i];
    os << ") " << (r.simple ? "simple" : "not-simple");
    if (r.multiplicity) os << " e=" << r.multiplicity << " dim=" << r.dimension;
    os << " " << r.case_label;
    if (r.real_root) os << " real-root";
    return os.str();
}

}  // namespace detail

inline int cmd_check(const CliConfig& cfg, const std::string& p, int n, int g, const std::vector<std::string>& coeffs, std::ostream& out) {
    WeilCandidate c{detail::parse_ints({p})[0], n, g == 0 ? static_cast<int>(coeffs.size()) : g, detail::parse_ints(coeffs)};
    c.validate();
    IsogenyClassReport r = classify(c, detail::profile_options(cfg));
    detail::strip_tags(r, cfg);
    switch (cfg.format) {
        case Format::text: out << report_text(r); break;
        case Format::json: out << report_jsonl(r) << "\n"; break;
        case Format::csv: out << csv_header() << "\n" << report_csv(r) << "\n"; break;
    }
    return r.simple ? 0 : 1;
}

inline int cmd_newton(const CliConfig& cfg, const std::string& p, const std::vector<std::string>& poly, int n, std::ostream& out) {
    Int P = detail::parse_prime(p);
    IntPoly f = detail::parse_poly(poly);
    NewtonPolygon np = newton_polygon(f, P);
    if (cfg.format == Format::json) {
        ordered_json j;
        j["p"] = weilpoly::detail::int_json(P);
        ordered_json v = ordered_json::array();
        for (const auto& [i, val] : np.vertices) v.push_back({i, val});
        j["vertices"] = v;
        ordered_json s = ordered_json::array();
        for (const auto& seg : np.segments) s.push_back({{"slope", rat_string(seg.slope)}, {"length", seg.length}});
        j["segments"] = s;
        j["lattice"] = n > 0 ? ordered_json(vertex_lattice_check(np, n)) : ordered_json(nullptr);
        out << j.dump() << "\n";
        return 0;
    }
    out << "vertices:";
    for (const auto& [i, val] : np.vertices) out << " (" << i << "," << val << ")";
    out << "\n";
    for (const auto& seg : np.segments) out << "segment: slope " << rat_string(seg.slope) << " length " << seg.length << "\n";
    if (n > 0) out << "lattice(n=" << n << "): " << (vertex_lattice_check(np, n) ? "yes" : "no") << "\n";
    return 0;
}

inline int cmd_profile(const CliConfig& cfg, const std::string& p, const std::vector<std::string>& poly, std::ostream& out) {
    Int P = detail::parse_prime(p);
    IntPoly f = detail::parse_poly(poly);
    QpFactorProfile pr = qp_factor_profile(f, P, detail::profile_options(cfg));
    if (cfg.format == Format::json) {
        ordered_json j;
        j["p"] = weilpoly::detail::int_json(P);
        ordered_json fs = ordered_json::array();
        for (const auto& x : pr.factors) fs.push_back({{"degree", x.degree}, {"slope", rat_string(x.slope)}});
        j["factors"] = fs;
        j["precision_used"] = pr.precision_used;
        out << j.dump() << "\n";
        return 0;
    }
    for (const auto& x : pr.factors) out << "factor: degree " << x.degree << " slope " << rat_string(x.slope) << "\n";
    out << "precision_used: " << pr.precision_used << "\n";
    return 0;
}

struct EnumerateArgs {
    std::string p;
    int n = 1;
    int g = 1;
    std::string mode = "full";
    std::size_t count = 0;
    std::string sampler = "box";
    std::string out_path;
    std::vector<std::string> overrides;  // k:lo:hi
    bool acknowledge_cap = false;
    std::string node_cap = "100000000";
};

inline int cmd_enumerate(const CliConfig& cfg, const EnumerateArgs& a, std::ostream& out, std::ostream& err) {
    EnumerationJob job;
    job.p = detail::parse_prime(a.p);
    job.n = a.n;
    job.g = a.g;
    job.depth = cfg.depth;
    job.mode = a.mode == "sample" ? SampleMode::sample : SampleMode::full;
    job.count = a.count;
    job.seed = cfg.seed;
    job.sampler = a.sampler == "tree" ? Sampler::tree : Sampler::box;
    job.workers = cfg.workers;
    job.acknowledge_cap = a.acknowledge_cap;
    job.node_cap = detail::parse_ints({a.node_cap})[0];
    job.profile = detail::profile_options(cfg);
    for (const auto& o : a.overrides) {
        auto first = o.find(':'), second = o.rfind(':');
        if (first == std::string::npos || first == second) throw ShapeError("override must be k:lo:hi, got '" + o + "'");
        int k = std::stoi(o.substr(0, first));
        auto lohi = detail::parse_ints({o.substr(first + 1, second - first - 1), o.substr(second + 1)});
        if (k < 1 || k > job.g) throw ShapeError("override index out of range: " + o);
        if (static_cast<int>(job.overrides.size()) < k) job.overrides.resize(static_cast<std::size_t>(k));
        job.overrides[static_cast<std::size_t>(k - 1)] = CoeffInterval{lohi[0], lohi[1]};
    }
    job.validate();

    std::unique_ptr<std::ofstream> file;
    std::ostream* stream = &out;
    if (!a.out_path.empty()) {
        file = std::make_unique<std::ofstream>(a.out_path);
        if (!*file) throw ShapeError("cannot open " + a.out_path);
        stream = file.get();
    }
    if (cfg.format == Format::csv) *stream << csv_header() << "\n";
    ClassificationSummary s = classify_all(job, [&](const IsogenyClassReport& r) {
        IsogenyClassReport copy = r;
        detail::strip_tags(copy, cfg);
        *stream << detail::report_line(copy, cfg.format) << "\n";
    });
    (a.out_path.empty() ? err : out) << summary_json(job, s).dump() << "\n";
    return 0;
}

/// Parses argv and dispatches; never throws.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Weil polynomials and isogeny classes of abelian varieties over finite fields", "weilpoly"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "key=value config file")->envname("WEILPOLY_CONFIG");

    CliConfig cfg;
    std::string format = "text";
    std::string tags = "all";
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json", "csv"}))->capture_default_str();
    app.add_option("--precision-cap", cfg.precision_cap, "Largest p-adic precision exponent")->capture_default_str();
    app.add_option("--depth", cfg.depth, "Pruning depth (0 = binomial bounds only)")->capture_default_str();
    app.add_option("--seed", cfg.seed, "Seed for all randomized steps")->capture_default_str();
    app.add_option("--workers", cfg.workers, "Worker threads for enumerate")->capture_default_str();
    app.add_option("--tags", tags, "Interpretation tags in reports")->check(CLI::IsMember({"all", "none"}))->capture_default_str();

    std::string p;
    int n = 1, g = 0;
    std::vector<std::string> coeffs, poly;

    auto* check = app.add_subcommand("check", "Classify one candidate t^2g + a_1 t^(2g-1) + ...");
    check->add_option("--p", p, "Prime")->required();
    check->add_option("--n", n, "q = p^n")->capture_default_str();
    check->add_option("--g", g, "Half degree (defaults to the number of coefficients)");
    check->add_option("--coeffs", coeffs, "a_1,...,a_g")->required()->delimiter(',')->allow_extra_args(false);

    int newton_n = 0;
    auto* newton = app.add_subcommand("newton", "Newton polygon of a polynomial");
    newton->add_option("--p", p, "Prime")->required();
    newton->add_option("--poly", poly, "Ascending coefficients c_0,c_1,...")->required()->delimiter(',')->allow_extra_args(false);
    newton->add_option("--n", newton_n, "Check vertices against Z x nZ");

    auto* profile = app.add_subcommand("profile", "Degrees and slopes of the factors over Q_p");
    profile->add_option("--p", p, "Prime")->required();
    profile->add_option("--poly", poly, "Ascending coefficients c_0,c_1,...")->required()->delimiter(',')->allow_extra_args(false);

    EnumerateArgs ea;
    auto* enumerate = app.add_subcommand("enumerate", "Enumerate or sample candidates and classify them");
    enumerate->add_option("--p", ea.p, "Prime")->required();
    enumerate->add_option("--n", ea.n, "q = p^n")->capture_default_str();
    enumerate->add_option("--g", ea.g, "Dimension")->capture_default_str();
    enumerate->add_option("--mode", ea.mode, "full or sample")->check(CLI::IsMember({"full", "sample"}))->capture_default_str();
    enumerate->add_option("--count", ea.count, "Samples to draw");
    enumerate->add_option("--sampler", ea.sampler, "box or tree")->check(CLI::IsMember({"box", "tree"}))->capture_default_str();
    enumerate->add_option("--out", ea.out_path, "Record stream file (default: standard output, summary on standard error)");
    enumerate->add_option("--override", ea.overrides, "Explicit range k:lo:hi for a_k")->allow_extra_args(false);
    enumerate->add_flag("--acknowledge-cap", ea.acknowledge_cap, "Allow full mode above the node cap");
    enumerate->add_option("--node-cap", ea.node_cap, "Largest baseline space for full mode")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }
    cfg.format = format == "json" ? Format::json : format == "csv" ? Format::csv : Format::text;
    cfg.tags = tags == "all";

    try {
        if (*check) return cmd_check(cfg, p, n, g, coeffs, out);
        if (*newton) return cmd_newton(cfg, p, poly, newton_n, out);
        if (*profile) return cmd_profile(cfg, p, poly, out);
        if (*enumerate) return cmd_enumerate(cfg, ea, out, err);
    } catch (const CapError& e) {
        err << "refused: " << e.what() << "\n";
        return 2;
    } catch (const CertificationError& e) {
        err << "certification error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

}  // namespace weilpoly::cli
