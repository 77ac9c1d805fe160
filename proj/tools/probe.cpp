// Scratch probe used during development; not installed.
#include <chrono>
#include <cstdio>
#include <cstring>

#include "harper/gaps.hpp"
#include "harper/ids.hpp"
#include "harper/rotation.hpp"

using namespace harper;

int main(int argc, char** argv) {
    Frequency golden = Frequency::golden();
    double blist[] = {0.1, 0.5, 1.0, 2.0, 3.0};
    long long kmax = 13;
    int L = argc > 1 ? std::atoi(argv[1]) : 10000;

    for (double b : blist) {
        auto t0 = std::chrono::steady_clock::now();
        GapSearchOptions opts;
        opts.L = L;
        GapScanResult res = scan_gaps(b, golden, kmax, opts);
        auto t1 = std::chrono::steady_clock::now();
        double dt = std::chrono::duration<double>(t1 - t0).count();
        std::printf("b=%.2f  (%.1fs)  gaps sorted by width:\n", b, dt);
        for (const Gap& g : res.gaps)
            std::printf("  k=%4lld  left=%12.7f right=%12.7f width=%12.3e ids=%8.5f %s\n",
                        g.k, g.left, g.right, g.width(), g.ids_value,
                        g.collapsed ? "collapsed" : "");
        for (auto& [k, msg] : res.failures) std::printf("  k=%4lld FAILED: %s\n", k, msg.c_str());
    }
    return 0;
}
