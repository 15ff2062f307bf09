// Acceptance suite runner: one pass/fail line per criterion.
//   acceptance                 run everything
//   acceptance --criterion N   run a single criterion
#include <cstdio>
#include <cstring>
#include <string>

#include "plasmatw/verify.hpp"

int main(int argc, char** argv) {
    using namespace plasmatw::verify;
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
            only = std::atoi(argv[++i]);
        } else if (std::strcmp(argv[i], "--help") == 0) {
            std::printf("usage: acceptance [--criterion N]\n");
            return 0;
        }
    }
    if (only > 0) {
        const CriterionResult r = run_criterion(only);
        std::printf("[%s] criterion %d (%s)\n%s", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(),
                    r.detail.c_str());
        return r.pass ? 0 : 1;
    }
    return run_all() == 0 ? 0 : 1;
}
