#include "pres/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "pres/equivalence.hpp"
#include "pres/families.hpp"
#include "pres/io.hpp"
#include "pres/solver.hpp"
#include "pres/stats.hpp"
#include "pres/verify.hpp"

namespace pres {

namespace {

using nlohmann::json;

constexpr int exit_ok = 0;
constexpr int exit_verify_failed = 1;
constexpr int exit_usage = 2;
constexpr int exit_internal = 3;

int default_jobs() {
    if (const char* env = std::getenv("PRES_JOBS")) {
        const int v = std::atoi(env);
        if (v >= 0) return v;
    }
    return 1;
}

struct FuncInput {
    std::string group_spec;
    std::string poly;
    std::string table;  // inline JSON array, or "-" for function JSON on stdin
    std::string file;   // function JSON file
    int order_limit = GroupTable::default_order_limit;
};

void add_func_options(CLI::App* cmd, FuncInput& in) {
    cmd->add_option("--group", in.group_spec,
                    "group spec: gf:p^e[:c0,c1,...,1], zn:n1xn2x..., cayley:<path>");
    cmd->add_option("--poly", in.poly, "polynomial over the field, e.g. \"x^2 + 3*x\"");
    cmd->add_option("--table", in.table,
                    "function table as a JSON array, or '-' to read function JSON from stdin");
    cmd->add_option("--func", in.file, "function JSON file");
    cmd->add_option("--order-limit", in.order_limit, "maximum allowed group order");
}

FuncTable load_input(const FuncInput& in, std::istream& stdin_stream) {
    const int given = (!in.poly.empty()) + (!in.table.empty()) + (!in.file.empty());
    if (given != 1) {
        throw ParseError("provide exactly one of --poly, --table, --func");
    }
    if (!in.file.empty()) {
        std::ifstream f(in.file);
        if (!f) throw ParseError("cannot open function file: " + in.file);
        json doc;
        try {
            f >> doc;
        } catch (const json::exception& e) {
            throw ParseError(std::string("bad function JSON: ") + e.what());
        }
        return function_from_json(doc, in.order_limit);
    }
    if (in.table == "-") {
        json doc;
        try {
            stdin_stream >> doc;
        } catch (const json::exception& e) {
            throw ParseError(std::string("bad function JSON on stdin: ") + e.what());
        }
        return function_from_json(doc, in.order_limit);
    }
    if (in.group_spec.empty()) {
        throw ParseError("--group is required with --poly or an inline --table");
    }
    GroupPtr g = parse_group_spec(in.group_spec, in.order_limit);
    if (!in.table.empty()) {
        json arr;
        try {
            arr = json::parse(in.table);
        } catch (const json::exception& e) {
            throw ParseError(std::string("bad table JSON: ") + e.what());
        }
        json doc{{"group", in.group_spec}, {"table", arr}};
        return function_from_json(doc, in.order_limit);
    }
    const Polynomial p = parse_poly(in.poly, *g);
    return eval_poly(std::move(g), p);
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stoi(item));
    }
    return out;
}

struct CommandContext {
    std::istream* in;
    std::ostream* out;
    std::ostream* err;
    int exit_code = exit_ok;
};

void emit(std::ostream& out, const json& j) { out << j.dump(2) << "\n"; }

} // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err) {
    CLI::App app{"exact permutation-resemblance and differential-uniformity toolkit"};
    app.require_subcommand(1);
    CommandContext ctx{&in, &out, &err};

    // ---- analyze ----
    auto* analyze = app.add_subcommand("analyze", "full statistics report for a function");
    FuncInput an_in;
    std::string an_format = "json";
    bool an_nonabelian = false;
    int an_jobs = default_jobs();
    add_func_options(analyze, an_in);
    analyze->add_option("--format", an_format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    analyze->add_flag("--nonabelian-delta", an_nonabelian,
                      "compute difference statistics on nonabelian groups "
                      "(right-negation convention)");
    analyze->add_option("--jobs", an_jobs, "worker threads (0 = all)");
    analyze->callback([&] {
        const FuncTable f = load_input(an_in, *ctx.in);
        const StatsReport r = function_stats(f, an_nonabelian, an_jobs);
        if (an_format == "csv") {
            *ctx.out << stats_to_csv(r);
        } else {
            emit(*ctx.out, stats_to_json(r));
        }
    });

    // ---- pres ----
    auto* presc = app.add_subcommand("pres", "exact permutation resemblance with certificate");
    FuncInput pr_in;
    bool pr_oracle = false, pr_all = false, pr_nonabelian = false;
    int pr_jobs = default_jobs();
    int pr_max_k = 0, pr_solver_limit = 31;
    std::uint64_t pr_max_sets = 0, pr_cap = 100;
    double pr_time_limit = 0;
    add_func_options(presc, pr_in);
    presc->add_flag("--oracle", pr_oracle, "cross-check with the q! brute force (q <= 8)");
    presc->add_flag("--all-optimal", pr_all, "enumerate all optimal shift sets");
    presc->add_option("--optimal-cap", pr_cap, "how many optimal sets to list");
    presc->add_option("--max-k", pr_max_k, "stop after this image size");
    presc->add_option("--max-sets", pr_max_sets, "candidate budget (0 = unlimited)");
    presc->add_option("--time-limit", pr_time_limit, "wall-clock budget in seconds");
    presc->add_option("--jobs", pr_jobs, "worker threads (0 = all)");
    presc->add_option("--solver-order-limit", pr_solver_limit,
                      "largest group order the solver accepts");
    presc->add_flag("--nonabelian", pr_nonabelian,
                    "accept nonabelian groups (right-negation convention)");
    presc->callback([&] {
        const FuncTable f = load_input(pr_in, *ctx.in);
        SolveOptions opts;
        if (pr_max_k > 0) opts.max_k = pr_max_k;
        opts.jobs = pr_jobs;
        opts.enumerate_all_optimal = pr_all;
        opts.optimal_set_cap = pr_cap;
        opts.max_sets = pr_max_sets;
        opts.time_limit_seconds = pr_time_limit;
        opts.allow_nonabelian = pr_nonabelian;
        opts.order_limit = pr_solver_limit;
        const PresCertificate cert = pres_exact(f, opts);
        json j = certificate_to_json(cert);
        if (pr_oracle) {
            if (f.size() > 8) throw ParseError("--oracle requires q <= 8");
            if (cert.status != SolveStatus::Solved) {
                throw ParseError("--oracle needs a completed solve; raise the budget");
            }
            const int oracle = pres_oracle_bruteforce(f);
            j["oracle"] = oracle;
            if (oracle != cert.pres) {
                emit(*ctx.out, j);
                *ctx.err << "oracle disagreement: solver " << cert.pres << " vs oracle "
                         << oracle << "\n";
                ctx.exit_code = exit_verify_failed;
                return;
            }
        }
        emit(*ctx.out, j);
    });

    // ---- construct ----
    auto* construct = app.add_subcommand(
        "construct", "build the ascending-pairing witness g with g + f a permutation");
    FuncInput co_in;
    add_func_options(construct, co_in);
    construct->callback([&] {
        const FuncTable f = load_input(co_in, *ctx.in);
        const FuncTable g = construct_upper_bound_g(f);
        json j;
        j["function"] = function_to_json(f);
        j["g"] = json::array();
        for (code_t v : g.values()) j["g"].push_back(v);
        j["v_g"] = image_size(g);
        j["upper_bound"] = f.size() - image_size(f) + 1;
        j["verified"] = is_permutation(add_func(g, f));
        emit(*ctx.out, j);
    });

    // ---- family ----
    auto* family = app.add_subcommand(
        "family", "generate a family member: ppoly:<group>:a0,a1,... | quadchar:p | "
                  "monomial:<group>:d");
    std::string fam_spec;
    bool fam_solve = false;
    int fam_jobs = default_jobs();
    family->add_option("spec", fam_spec, "family spec string")->required();
    family->add_flag("--solve", fam_solve, "also run the exact solver and compare");
    family->add_option("--jobs", fam_jobs, "worker threads (0 = all)");
    family->callback([&] {
        const std::size_t colon = fam_spec.find(':');
        if (colon == std::string::npos) throw ParseError("bad family spec: " + fam_spec);
        const std::string kind = fam_spec.substr(0, colon);
        const std::string rest = fam_spec.substr(colon + 1);
        json j;
        const FuncTable* solver_target = nullptr;
        FamilyPrediction pred{.f = FuncTable(make_cyclic_product({2}), {0, 0})};
        PlanarCheck planar{.f = pred.f};
        if (kind == "quadchar") {
            pred = gen_quadratic_character(static_cast<int>(std::strtol(rest.c_str(), nullptr, 10)));
            j = family_to_json(pred);
            solver_target = &pred.f;
        } else if (kind == "ppoly" || kind == "monomial") {
            const std::size_t last = rest.rfind(':');
            if (last == std::string::npos) throw ParseError("bad family spec: " + fam_spec);
            GroupPtr g = parse_group_spec(rest.substr(0, last));
            const std::string tail = rest.substr(last + 1);
            if (kind == "ppoly") {
                std::vector<code_t> coeffs;
                for (int v : parse_int_list(tail)) {
                    if (v < 0 || v >= g->order()) throw ParseError("coefficient out of range");
                    coeffs.push_back(static_cast<code_t>(v));
                }
                pred = gen_p_polynomial(g, coeffs);
                j = family_to_json(pred);
                solver_target = &pred.f;
            } else {
                planar = gen_planar_monomial(
                    g, static_cast<std::uint32_t>(std::strtoul(tail.c_str(), nullptr, 10)));
                j = planar_check_to_json(planar);
                solver_target = &planar.f;
            }
        } else {
            throw ParseError("unknown family kind: " + kind);
        }
        if (fam_solve && solver_target) {
            const PresCertificate cert = pres_exact(*solver_target, {.jobs = fam_jobs});
            j["solved_pres"] = cert.pres;
            if (j.contains("predicted_pres") && cert.pres != j["predicted_pres"].get<int>()) {
                emit(*ctx.out, j);
                *ctx.err << "prediction mismatch\n";
                ctx.exit_code = exit_verify_failed;
                return;
            }
        }
        emit(*ctx.out, j);
    });

    // ---- pipeline ----
    auto* pipeline = app.add_subcommand(
        "pipeline", "pres-optimal witnesses of a (planar) function ranked by the DU of g + f");
    FuncInput pi_in;
    int pi_cap = 50;
    int pi_jobs = default_jobs();
    std::string pi_format = "json";
    add_func_options(pipeline, pi_in);
    pipeline->add_option("--cap", pi_cap, "maximum optimal witnesses to realize");
    pipeline->add_option("--jobs", pi_jobs, "worker threads (0 = all)");
    pipeline->add_option("--format", pi_format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    pipeline->callback([&] {
        const FuncTable f = load_input(pi_in, *ctx.in);
        const PipelineReport rep = lowdu_pipeline(f, pi_cap, pi_jobs);
        if (pi_format == "csv") {
            *ctx.out << pipeline_to_csv(rep);
        } else {
            emit(*ctx.out, pipeline_to_json(rep));
        }
    });

    // ---- transform ----
    auto* transform = app.add_subcommand(
        "transform", "compose with permutations or affine maps; emits function JSON");
    FuncInput tr_in;
    std::string tr_left, tr_right, tr_a1, tr_a2, tr_a3;
    add_func_options(transform, tr_in);
    transform->add_option("--left", tr_left, "cycle notation; computes phi o f");
    transform->add_option("--right", tr_right, "cycle notation; computes f o phi");
    transform->add_option("--a1", tr_a1, "affine polynomial A1");
    transform->add_option("--a2", tr_a2, "affine polynomial A2");
    transform->add_option("--a3", tr_a3,
                          "affine polynomial A3; switches to A2 o f o A1 + A3");
    transform->callback([&] {
        const FuncTable f = load_input(tr_in, *ctx.in);
        const bool affine = !tr_a1.empty() || !tr_a2.empty();
        const int kinds = (!tr_left.empty()) + (!tr_right.empty()) + (affine ? 1 : 0);
        if (kinds != 1) {
            throw ParseError("provide exactly one of --left, --right, or --a1/--a2 [--a3]");
        }
        FuncTable result = f;
        if (!tr_left.empty()) {
            result = compose_left(parse_cycles(f.group_ptr(), tr_left), f);
        } else if (!tr_right.empty()) {
            result = compose_right(f, parse_cycles(f.group_ptr(), tr_right));
        } else {
            if (tr_a1.empty() || tr_a2.empty()) {
                throw ParseError("affine transforms need both --a1 and --a2");
            }
            const GroupPtr g = f.group_ptr();
            const AffineMap a1 = affine_from_poly(g, parse_poly(tr_a1, *g));
            const AffineMap a2 = affine_from_poly(g, parse_poly(tr_a2, *g));
            if (tr_a3.empty()) {
                result = affine_transform(f, a1, a2);
            } else {
                const AffineMap a3 = affine_from_poly(g, parse_poly(tr_a3, *g));
                result = ea_transform(f, a1, a2, a3);
            }
        }
        emit(*ctx.out, function_to_json(result));
    });

    // ---- verify ----
    auto* verify = app.add_subcommand("verify", "run a named self-check suite");
    std::string ve_suite, ve_plist, ve_field, ve_out_path;
    VerifyOptions ve_opts;
    ve_opts.jobs = default_jobs();
    verify->add_option("suite", ve_suite, "suite name or 'all'")->required();
    verify->add_option("--q-max", ve_opts.q_max, "largest group order to sample");
    verify->add_option("--samples", ve_opts.samples, "random samples per suite");
    verify->add_option("--p-list", ve_plist, "comma-separated primes");
    verify->add_option("--field", ve_field, "field spec for field-based suites");
    verify->add_option("--seed", ve_opts.seed, "RNG seed");
    verify->add_option("--jobs", ve_opts.jobs, "worker threads (0 = all)");
    verify->add_option("--out", ve_out_path, "write the CSV report to a file");
    verify->callback([&] {
        if (!ve_plist.empty()) ve_opts.p_list = parse_int_list(ve_plist);
        ve_opts.field_spec = ve_field;
        const std::vector<CheckResult> results = run_suite(ve_suite, ve_opts);
        std::ostringstream csv;
        csv << "suite,check,pass,details\n";
        int passed = 0;
        for (const CheckResult& r : results) {
            std::string safe_name = r.name, safe_details = r.details;
            std::replace(safe_name.begin(), safe_name.end(), ',', ';');
            std::replace(safe_details.begin(), safe_details.end(), ',', ';');
            csv << ve_suite << ',' << safe_name << ',' << (r.pass ? "pass" : "fail") << ','
                << safe_details << "\n";
            passed += r.pass;
        }
        if (!ve_out_path.empty()) {
            std::ofstream f(ve_out_path);
            if (!f) throw ParseError("cannot open output file: " + ve_out_path);
            f << csv.str();
        } else {
            *ctx.out << csv.str();
        }
        *ctx.err << passed << "/" << results.size() << " checks passed\n";
        if (passed != static_cast<int>(results.size())) ctx.exit_code = exit_verify_failed;
    });

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return exit_usage;
    } catch (const InternalError& e) {
        err << "internal identity violation: " << e.what() << "\n";
        return exit_internal;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    }
    return ctx.exit_code;
}

} // namespace pres
