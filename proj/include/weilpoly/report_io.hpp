#pragma once
/**
 * @file report_io.hpp
 * @brief JSON-lines, CSV and text renderings of classification reports.
 *
 * JSONL record (fixed field order):
 *   p, n, g, a, weil, simple, e, dim, case_label, invariants, real_root, min_poly, tags
 * Integers are JSON numbers when they fit in 64 bits and decimal strings
 * otherwise. e, dim and min_poly are null when undefined. Invariants are
 * objects {place, factor?, value} with value a reduced fraction "num/den".
 */

#include "enumerate.hpp"
#include "hondatate.hpp"
#include "padic.hpp"

#include <json.hpp>

#include <ostream>
#include <sstream>
#include <string>

namespace weilpoly {

using ordered_json = nlohmann::ordered_json;

namespace detail {

inline ordered_json int_json(const Int& v) {
    if (v.fits_slong_p()) return ordered_json(v.get_si());
    return ordered_json(v.get_str());
}

inline Int json_int(const ordered_json& j) {
    if (j.is_number_integer()) return Int(std::to_string(j.get<long long>()));
    if (j.is_number_unsigned()) return Int(std::to_string(j.get<unsigned long long>()));
    if (j.is_string()) return Int(j.get<std::string>());
    throw ShapeError("expected an integer");
}

inline Rat parse_rat(const std::string& s) {
    Rat r(s);
    r.canonicalize();
    return r;
}

inline Place parse_place(const std::string& s) {
    if (s == "real") return Place::real;
    if (s == "complex") return Place::complex;
    if (s == "finite") return Place::finite_not_over_p;
    if (s == "over-p") return Place::over_p;
    throw ShapeError("unknown place " + s);
}

inline std::string invariant_text(const BrauerInvariant& b) {
    std::string s = to_string(b.place);
    if (b.place == Place::over_p) s += "[" + std::to_string(b.factor_index) + "]";
    return s + ":" + rat_string(b.value);
}

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

}  // namespace detail

inline ordered_json report_json(const IsogenyClassReport& r) {
    ordered_json j;
    j["p"] = detail::int_json(r.candidate.p);
    j["n"] = r.candidate.n;
    j["g"] = r.candidate.g;
    ordered_json a = ordered_json::array();
    for (const auto& v : r.candidate.a) a.push_back(detail::int_json(v));
    j["a"] = a;
    j["weil"] = r.weil;
    j["simple"] = r.simple;
    j["e"] = r.multiplicity ? ordered_json(r.multiplicity) : ordered_json(nullptr);
    j["dim"] = r.dimension ? ordered_json(r.dimension) : ordered_json(nullptr);
    j["case_label"] = r.case_label;
    ordered_json inv = ordered_json::array();
    for (const auto& b : r.invariants) {
        ordered_json o;
        o["place"] = to_string(b.place);
        if (b.place == Place::over_p) o["factor"] = b.factor_index;
        o["value"] = rat_string(b.value);
        inv.push_back(o);
    }
    j["invariants"] = inv;
    j["real_root"] = r.real_root;
    if (r.min_poly.is_zero()) {
        j["min_poly"] = nullptr;
    } else {
        ordered_json m = ordered_json::array();
        for (const auto& v : r.min_poly.coeffs()) m.push_back(detail::int_json(v));
        j["min_poly"] = m;
    }
    j["tags"] = r.tags;
    return j;
}

inline std::string report_jsonl(const IsogenyClassReport& r) { return report_json(r).dump(); }

inline IsogenyClassReport report_from_json(const ordered_json& j) {
    IsogenyClassReport r;
    r.candidate.p = detail::json_int(j.at("p"));
    r.candidate.n = j.at("n").get<int>();
    r.candidate.g = j.at("g").get<int>();
    for (const auto& v : j.at("a")) r.candidate.a.push_back(detail::json_int(v));
    r.candidate.validate();
    r.f = expand(r.candidate);
    r.weil = j.at("weil").get<bool>();
    r.simple = j.at("simple").get<bool>();
    r.multiplicity = j.at("e").is_null() ? 0 : j.at("e").get<int>();
    r.dimension = j.at("dim").is_null() ? 0 : j.at("dim").get<int>();
    r.case_label = j.at("case_label").get<std::string>();
    for (const auto& o : j.at("invariants")) {
        BrauerInvariant b{detail::parse_place(o.at("place").get<std::string>()), -1, detail::parse_rat(o.at("value").get<std::string>())};
        if (o.contains("factor")) b.factor_index = o.at("factor").get<int>();
        r.invariants.push_back(b);
    }
    r.real_root = j.at("real_root").get<bool>();
    if (!j.at("min_poly").is_null()) {
        std::vector<Int> c;
        for (const auto& v : j.at("min_poly")) c.push_back(detail::json_int(v));
        r.min_poly = IntPoly(c);
    }
    r.tags = j.at("tags").get<std::vector<std::string>>();
    return r;
}

inline IsogenyClassReport report_from_jsonl(const std::string& line) { return report_from_json(ordered_json::parse(line)); }

inline std::string csv_header() { return "p,n,g,a,weil,simple,e,dim,case_label,invariants,real_root,min_poly,tags"; }

inline std::string report_csv(const IsogenyClassReport& r) {
    auto join = [](const auto& xs, auto fn) {
        std::string s;
        for (const auto& x : xs) s += (s.empty() ? "" : " ") + fn(x);
        return s;
    };
    auto istr = [](const Int& v) { return v.get_str(); };
    std::ostringstream os;
    os << r.candidate.p << ',' << r.candidate.n << ',' << r.candidate.g << ',' << join(r.candidate.a, istr) << ','
       << (r.weil ? "true" : "false") << ',' << (r.simple ? "true" : "false") << ','
       << (r.multiplicity ? std::to_string(r.multiplicity) : "") << ',' << (r.dimension ? std::to_string(r.dimension) : "")
       << ',' << detail::csv_field(r.case_label) << ',' << join(r.invariants, detail::invariant_text) << ','
       << (r.real_root ? "true" : "false") << ',' << join(r.min_poly.coeffs(), istr) << ','
       << join(r.tags, [](const std::string& t) { return t; });
    return os.str();
}

inline std::string report_text(const IsogenyClassReport& r) {
    std::ostringstream os;
    auto yes = [](bool b) { return b ? "yes" : "no"; };
    os << "f: " << r.f.to_string() << "\n";
    os << "q: " << r.candidate.q() << " (p=" << r.candidate.p << ", n=" << r.candidate.n << ", g=" << r.candidate.g << ")\n";
    os << "weil: " << yes(r.weil) << "\n";
    if (!r.weil) {
        os << "case: " << r.case_label << "\n";
        return os.str();
    }
    os << "simple: " << yes(r.simple) << "\n";
    os << "min_poly: " << (r.min_poly.is_zero() ? "-" : r.min_poly.to_string()) << "\n";
    os << "e: " << (r.multiplicity ? std::to_string(r.multiplicity) : "-") << "\n";
    os << "dim: " << (r.dimension ? std::to_string(r.dimension) : "-") << "\n";
    os << "real_root: " << yes(r.real_root) << "\n";
    os << "invariants:";
    for (const auto& b : r.invariants) os << " " << detail::invariant_text(b);
    os << "\n";
    os << "case: " << r.case_label << "\n";
    if (!r.tags.empty()) {
        os << "tags:";
        for (const auto& t : r.tags) os << " " << t;
        os << "\n";
    }
    return os.str();
}

inline ordered_json summary_json(const EnumerationJob& job, const ClassificationSummary& s, bool with_time = true) {
    ordered_json j;
    j["p"] = detail::int_json(job.p);
    j["n"] = job.n;
    j["g"] = job.g;
    j["mode"] = job.mode == SampleMode::full ? "full" : "sample";
    if (job.mode == SampleMode::sample) {
        j["sampler"] = job.sampler == Sampler::box ? "box" : "tree";
        j["seed"] = job.seed;
        j["count"] = job.count;
    }
    j["depth"] = job.depth;
    j["visited"] = s.visited;
    j["weil"] = s.weil;
    j["attempts"] = s.attempts;
    j["acceptance_rate"] = s.acceptance_rate();
    ordered_json cases = ordered_json::object();
    for (const auto& [k, v] : s.cases) cases[k] = v;
    j["cases"] = cases;
    ordered_json ed = ordered_json::array();
    for (const auto& [k, v] : s.by_e_dim) ed.push_back({{"e", k.first}, {"dim", k.second}, {"count", v}});
    j["by_e_dim"] = ed;
    j["theorem11_checks"] = s.theorem11_checks;
    j["equivalence_checks"] = s.equivalence_checks;
    if (with_time) j["wall_seconds"] = s.wall_seconds;
    return j;
}

}  // namespace weilpoly
