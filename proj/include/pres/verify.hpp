#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace pres {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string details;
};

struct VerifyOptions {
    int q_max = 9;
    int samples = 200;
    std::vector<int> p_list;
    std::string field_spec;
    std::uint64_t seed = 1;
    int jobs = 1;
};

using VerifySuite = std::function<std::vector<CheckResult>(const VerifyOptions&)>;

// Registered self-check suites, keyed by name (thm2.1, thm2.2, thm2.3,
// thm2.4 / eq5, cor3.2, thm3.3, thm4.1, thm4.5, lemma4.2, lemma4.4, thm5.1,
// identities, all).
const std::map<std::string, VerifySuite>& verify_suites();

std::vector<CheckResult> run_suite(const std::string& name, const VerifyOptions& opts);

} // namespace pres
