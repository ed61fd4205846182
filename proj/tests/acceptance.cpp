// Runs every acceptance criterion and prints one PASS/FAIL line per
// criterion plus the per-configuration evidence rows. Exits nonzero if any
// criterion fails.
#include <cstdio>
#include <cstring>

#include "tfcop/suite.hpp"

int main(int argc, char** argv) {
    tfcop::SuiteOptions opt;
    for (int i = 1; i < argc; ++i)
        if (std::strcmp(argv[i], "--quick") == 0) opt.quick = true;

    const auto results = tfcop::run_acceptance(opt);
    int failed = 0;
    for (const auto& r : results) {
        std::printf("%s  criterion %2d: %s\n", r.passed ? "PASS" : "FAIL", r.id, r.label.c_str());
        for (const auto& row : r.rows) std::printf("        %s\n", row.c_str());
        if (!r.note.empty()) std::printf("        note: %s\n", r.note.c_str());
        if (!r.passed) ++failed;
    }
    std::printf("%zu/%zu criteria passed\n", results.size() - failed, results.size());
    return failed == 0 ? 0 : 1;
}
