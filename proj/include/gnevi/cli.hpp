#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

namespace gnevi::cli {

struct Options {
    std::string command;  // classify, solve-vi, solve-qvi, verify, audit, reproduce-paper
    std::string instance_path;
    int grid = 0;          // 0: use the instance's solver block
    double tol = 0;        // 0: instance default
    std::uint64_t seed = 0;
    bool seed_set = false;
    int max_iters = 0;
    std::string out_path;  // base path; writes <out>.json and <out>.txt
    std::string format = "human";
    bool trace = false;
    std::string point;     // verify: comma-separated coordinates
    bool serial = false;   // force the serial kernels
};

// Exit codes: 0 all verdicts as expected, 1 verdict failures, 2 usage or
// parse errors.
int run(const Options& opts, std::ostream& out, std::ostream& err);

}  // namespace gnevi::cli
