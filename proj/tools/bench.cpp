// Compares the serial reference kernels against their OpenMP versions and
// checks that both produce identical results.

#include <chrono>
#include <cstring>
#include <iomanip>
#include <iostream>

#include <omp.h>

#include "pres/families.hpp"
#include "pres/poly.hpp"
#include "pres/solver.hpp"
#include "pres/stats.hpp"

using namespace pres;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

template <typename Fn>
double timed(Fn&& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    return seconds_since(t0);
}

void report(const std::string& name, double serial, double parallel, bool equal) {
    std::cout << std::left << std::setw(38) << name << std::right << std::fixed
              << std::setprecision(3) << std::setw(9) << serial << " s" << std::setw(9)
              << parallel << " s   x" << std::setprecision(2) << (serial / parallel)
              << (equal ? "   results equal" : "   RESULTS DIFFER") << "\n";
}

} // namespace

int main(int argc, char** argv) {
    bool quick = false;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--quick") == 0) quick = true;
    }
    const int jobs = omp_get_max_threads();
    std::cout << "threads: " << jobs << "\n\n";
    std::cout << std::left << std::setw(38) << "kernel" << std::right << std::setw(11)
              << "serial" << std::setw(11) << "parallel"
              << "\n";

    {
        GroupPtr g = make_field(3, quick ? 5 : 6);  // order 243 or 729
        const FuncTable f = eval_poly(g, parse_poly("x^2 + x^10", *g));
        DifferenceTable a, b;
        const double ts = timed([&] { a = ddt_serial(f); });
        const double tp = timed([&] { b = ddt_parallel(f, jobs); });
        report("difference table gf:" + std::to_string(g->order()), ts, tp,
               a.counts == b.counts);
    }

    {
        const int p = quick ? 17 : 19;
        const FamilyPrediction pred = gen_quadratic_character(p);
        PresCertificate cs, cp;
        const double ts = timed([&] { cs = pres_exact(pred.f, {.jobs = 1}); });
        const double tp = timed([&] { cp = pres_exact(pred.f, {.jobs = 0}); });
        const bool equal = cs.pres == cp.pres &&
                           cs.witness_shifts.shifts == cp.witness_shifts.shifts &&
                           cs.witness_g->values() == cp.witness_g->values();
        report("pres solve quadchar gf:" + std::to_string(p), ts, tp, equal);
    }

    {
        GroupPtr g = make_field(13, 1);
        const FuncTable f = eval_poly(g, parse_poly("x^2", *g));
        PipelineReport rs{.f = f}, rp{.f = f};
        const double ts = timed([&] { rs = lowdu_pipeline(f, 50, 1); });
        const double tp = timed([&] { rp = lowdu_pipeline(f, 50, 0); });
        bool equal = rs.pres == rp.pres && rs.best_delta == rp.best_delta &&
                     rs.candidates.size() == rp.candidates.size();
        for (std::size_t i = 0; equal && i < rs.candidates.size(); ++i) {
            equal = rs.candidates[i].shifts.shifts == rp.candidates[i].shifts.shifts &&
                    rs.candidates[i].delta_gf == rp.candidates[i].delta_gf;
        }
        report("low-DU pipeline x^2 gf:13", ts, tp, equal);
    }

    return 0;
}
