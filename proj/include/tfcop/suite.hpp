#ifndef TFCOP_SUITE_HPP
#define TFCOP_SUITE_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace tfcop {

// One line of the acceptance matrix.
struct CriterionResult {
    int id = 0;
    std::string label;
    bool passed = false;
    std::vector<std::string> rows; // per-subcase details, "PASS ..."/"FAIL ..."
    std::string note;              // context for expected deviations
};

struct SuiteOptions {
    std::uint64_t seed = 42;
    std::size_t n_rank = 10000;  // rank-correlation sample size
    std::size_t n_mass = 200000; // Monte-Carlo mass sample size
    int grid = 200;
    bool quick = false; // smoke mode: smaller samples, wider Monte-Carlo bands
};

// Runs the whole matrix; rows come back in criterion order.
std::vector<CriterionResult> run_acceptance(const SuiteOptions& opt = {});

} // namespace tfcop

#endif
