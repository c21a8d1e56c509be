// Acceptance gate: runs every release property at full replication counts and
// prints one line per property. Exits nonzero if any property fails, so CI
// surfaces regressions without parsing the lines.

#include <cstdio>
#include <string>
#include <vector>

#include "gbs/checks.hpp"

int main(int argc, char** argv) {
    gbs::CheckOptions options;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--quick") options.quick = true;
    }
    const std::vector<gbs::CheckResult> results = gbs::run_all_checks(options);
    int failed = 0;
    for (const gbs::CheckResult& r : results) {
        if (!r.pass) ++failed;
        std::printf("[%s] %2d %-28s %s\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(),
                    r.detail.c_str());
    }
    std::printf("%zu properties, %d failed\n", results.size(), failed);
    return failed == 0 ? 0 : 1;
}
