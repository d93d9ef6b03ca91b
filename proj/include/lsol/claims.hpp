#pragma once

#include <functional>
#include <string>
#include <vector>

namespace lsol {

struct ClaimOutcome {
    bool pass = false;
    std::string detail;
};

/// One executable property with its verify suite and acceptance criterion number.
struct Claim {
    std::string name;
    std::string suite;  // phase | blowup | bvp | spectral | ladders
    int criterion = 0;
    std::function<ClaimOutcome()> run;
};

struct ClaimRun {
    const Claim* claim = nullptr;
    ClaimOutcome outcome;
    double seconds = 0.0;
};

const std::vector<Claim>& all_claims();

/// Runs the claims of one suite ("all" for every claim). Exceptions count as failures.
std::vector<ClaimRun> run_suite(const std::string& suite);

/// Runs the claims attached to one acceptance criterion.
std::vector<ClaimRun> run_criterion(int criterion);

}  // namespace lsol
