#include "pres/io.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "pres/poly.hpp"

namespace pres {

using nlohmann::json;

namespace {

long long to_ll(const std::string& s, const std::string& what) {
    try {
        std::size_t used = 0;
        const long long v = std::stoll(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ParseError("invalid " + what + ": '" + s + "'");
    }
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

// Big integers that fit in int64 stay JSON numbers; larger ones become
// decimal strings.
json big_to_json(const mpz_class& v) {
    if (v.fits_slong_p()) return static_cast<std::int64_t>(v.get_si());
    return v.get_str();
}

json table_to_json(const std::vector<code_t>& values) {
    json arr = json::array();
    for (code_t v : values) arr.push_back(v);
    return arr;
}

json shifts_to_json(const ShiftSet& s) {
    json arr = json::array();
    for (code_t c : s.shifts) arr.push_back(c);
    return arr;
}

} // namespace

GroupPtr parse_group_spec(const std::string& spec, int order_limit) {
    const std::size_t colon = spec.find(':');
    if (colon == std::string::npos) throw ParseError("group spec needs a kind prefix: " + spec);
    const std::string kind = spec.substr(0, colon);
    const std::string body = spec.substr(colon + 1);

    if (kind == "gf") {
        const std::vector<std::string> parts = split(body, ':');
        if (parts.empty() || parts.size() > 2) throw ParseError("bad field spec: " + spec);
        int p = 0, e = 1;
        const std::size_t caret = parts[0].find('^');
        if (caret == std::string::npos) {
            p = static_cast<int>(to_ll(parts[0], "characteristic"));
        } else {
            p = static_cast<int>(to_ll(parts[0].substr(0, caret), "characteristic"));
            e = static_cast<int>(to_ll(parts[0].substr(caret + 1), "degree"));
        }
        std::optional<std::vector<int>> irreducible;
        if (parts.size() == 2) {
            std::vector<int> coeffs;
            for (const std::string& c : split(parts[1], ',')) {
                coeffs.push_back(static_cast<int>(to_ll(c, "modulus coefficient")));
            }
            irreducible = std::move(coeffs);
        }
        return make_field(p, e, std::move(irreducible), order_limit);
    }
    if (kind == "zn") {
        std::vector<int> factors;
        for (const std::string& f : split(body, 'x')) {
            factors.push_back(static_cast<int>(to_ll(f, "cyclic factor")));
        }
        return make_cyclic_product(factors, order_limit);
    }
    if (kind == "cayley") {
        std::ifstream in(body);
        if (!in) throw ParseError("cannot open Cayley file: " + body);
        json doc;
        try {
            in >> doc;
        } catch (const json::exception& e) {
            throw ParseError("bad Cayley JSON in " + body + ": " + e.what());
        }
        if (!doc.contains("order") || !doc.contains("add")) {
            throw ParseError("Cayley JSON needs {\"order\": n, \"add\": [[...]]}");
        }
        const int n = doc["order"].get<int>();
        std::vector<std::vector<int>> table = doc["add"].get<std::vector<std::vector<int>>>();
        if (static_cast<int>(table.size()) != n) {
            throw ParseError("Cayley table size disagrees with the declared order");
        }
        return make_cayley(table, body, order_limit);
    }
    throw ParseError("unknown group kind: " + kind);
}

FuncTable function_from_json(const json& doc, int order_limit) {
    if (!doc.is_object() || !doc.contains("group")) {
        throw ParseError("function JSON needs a \"group\" field");
    }
    GroupPtr g = parse_group_spec(doc["group"].get<std::string>(), order_limit);
    if (doc.contains("table")) {
        std::vector<code_t> values;
        for (const json& v : doc["table"]) {
            const long long x = v.get<long long>();
            if (x < 0 || x >= g->order()) throw ParseError("table value out of range");
            values.push_back(static_cast<code_t>(x));
        }
        return FuncTable(std::move(g), std::move(values));
    }
    if (doc.contains("poly")) {
        const Polynomial p = parse_poly(doc["poly"].get<std::string>(), *g);
        return eval_poly(std::move(g), p);
    }
    throw ParseError("function JSON needs \"table\" or \"poly\"");
}

json function_to_json(const FuncTable& f) {
    return json{{"group", f.group().spec()}, {"table", table_to_json(f.values())}};
}

json stats_to_json(const StatsReport& r) {
    json j;
    j["q"] = r.q;
    j["v"] = r.dist.image_size;
    j["u"] = r.dist.uniformity;
    j["m"] = r.dist.m;
    json ns = json::array();
    for (const mpz_class& v : r.ns) ns.push_back(big_to_json(v));
    j["n_s"] = std::move(ns);
    j["nb"] = r.nb;
    if (r.delta) {
        j["delta"] = *r.delta;
    } else {
        j["delta"] = nullptr;
    }
    if (r.nbb) j["nbb"] = *r.nbb;
    if (r.ambiguity_a) j["ambiguity"] = *r.ambiguity_a;
    if (!r.alpha.empty()) {
        json alpha = json::object();
        for (const auto& [i, count] : r.alpha) alpha[std::to_string(i)] = count;
        j["alpha"] = std::move(alpha);
    }
    j["bounds"] = json{{"lower", r.bounds.lower}, {"upper", r.bounds.upper}};
    j["lbub_char"] = r.bounds.lb_eq_ub;
    return j;
}

std::string stats_to_csv(const StatsReport& r) {
    std::ostringstream head, row;
    head << "q,V,u";
    row << r.q << ',' << r.dist.image_size << ',' << r.dist.uniformity;
    for (std::size_t i = 0; i < r.dist.m.size(); ++i) {
        head << ",M_" << i;
        row << ',' << r.dist.m[i];
    }
    for (std::size_t i = 0; i < r.ns.size(); ++i) {
        head << ",N_" << (i + 2);
        row << ',' << r.ns[i].get_str();
    }
    head << ",delta,Nb,NB,A,lb,ub";
    row << ',';
    if (r.delta) row << *r.delta;
    row << ',' << r.nb << ',';
    if (r.nbb) row << *r.nbb;
    row << ',';
    if (r.ambiguity_a) row << *r.ambiguity_a;
    row << ',' << r.bounds.lower << ',' << r.bounds.upper;
    return head.str() + "\n" + row.str() + "\n";
}

json certificate_to_json(const PresCertificate& c) {
    json j;
    j["status"] = c.status == SolveStatus::Solved ? "solved" : "bound-limited";
    switch (c.method) {
        case SolveMethod::MatchingSearch: j["method"] = "matching-search"; break;
        case SolveMethod::BruteForceOracle: j["method"] = "brute-force-oracle"; break;
        case SolveMethod::ClosedForm: j["method"] = "closed-form"; break;
    }
    if (c.status == SolveStatus::Solved) {
        j["pres"] = c.pres;
        j["shifts"] = shifts_to_json(c.witness_shifts);
        j["g"] = table_to_json(c.witness_g->values());
        j["verified"] = c.verified;
    } else {
        j["pres_gt"] = c.lower_bound - 1;  // every k below lower_bound is exhausted
        j["upper_bound"] = c.upper_bound;
        j["limit_reason"] = c.limit_reason;
    }
    json searched = json::array();
    for (const SearchLevel& lvl : c.searched) {
        searched.push_back(
            json{{"k", lvl.k}, {"sets", lvl.sets_tested}, {"exhausted", lvl.exhausted}});
    }
    j["searched"] = std::move(searched);
    j["sets_tested_total"] = c.sets_tested_total;
    if (c.optimal_count > 0) {
        j["optimal_count"] = c.optimal_count;
        json sets = json::array();
        for (const ShiftSet& s : c.optimal_sets) sets.push_back(shifts_to_json(s));
        j["optimal_shifts"] = std::move(sets);
    }
    if (!c.limit_reason.empty()) j["limit_reason"] = c.limit_reason;
    return j;
}

json family_to_json(const FamilyPrediction& p) {
    json j;
    j["function"] = function_to_json(p.f);
    j["predicted_pres"] = p.predicted_pres;
    j["source"] = p.source;
    j["verified"] = p.witness_verified;
    if (p.witness_g) {
        j["witness_g"] = table_to_json(p.witness_g->values());
        json im = json::array();
        for (code_t c : p.witness_image) im.push_back(c);
        j["witness_image"] = std::move(im);
    }
    return j;
}

json planar_check_to_json(const PlanarCheck& c) {
    json j;
    j["function"] = function_to_json(c.f);
    j["exponent"] = c.exponent;
    j["planar"] = c.planar;
    return j;
}

json pipeline_to_json(const PipelineReport& r) {
    json j;
    j["function"] = function_to_json(r.f);
    j["planar"] = r.planar;
    j["delta_f"] = r.delta_f;
    j["pres"] = r.pres;
    j["bound"] = r.bound;
    j["optimal_sets_total"] = r.optimal_total;
    j["best_delta"] = r.best_delta;
    json cands = json::array();
    for (const PipelineCandidate& c : r.candidates) {
        cands.push_back(json{{"shifts", shifts_to_json(c.shifts)},
                             {"g", table_to_json(c.g.values())},
                             {"delta_gf", c.delta_gf}});
    }
    j["candidates"] = std::move(cands);
    return j;
}

std::string pipeline_to_csv(const PipelineReport& r) {
    std::ostringstream out;
    out << "candidate,shifts,delta_gf,bound\n";
    for (std::size_t i = 0; i < r.candidates.size(); ++i) {
        const PipelineCandidate& c = r.candidates[i];
        out << i << ',';
        for (std::size_t k = 0; k < c.shifts.shifts.size(); ++k) {
            if (k) out << ';';
            out << c.shifts.shifts[k];
        }
        out << ',' << c.delta_gf << ',' << r.bound << "\n";
    }
    return out.str();
}

std::string mpz_to_string(const mpz_class& v) { return v.get_str(); }

std::string mpq_to_string(const mpq_class& v) {
    mpq_class c = v;
    c.canonicalize();
    if (c.get_den() == 1) return c.get_num().get_str();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

mpq_class parse_rational(const std::string& text) {
    try {
        mpq_class v(text);
        v.canonicalize();
        return v;
    } catch (const std::invalid_argument&) {
        throw ParseError("invalid rational: '" + text + "'");
    }
}

} // namespace pres
