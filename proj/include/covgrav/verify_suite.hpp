#pragma once

// Cross-module identity suite: every numerical invariant the modules promise,
// evaluated over seeded random jets and the shipped metric corpus, collected
// into a Report. Sample points fan out over a worker pool; per-index RNG
// streams keep results independent of the thread count.

#include <functional>

#include "covgrav/report.hpp"

namespace covgrav {

struct VerifyOptions {
    std::uint64_t seed = 42;
    long samples = 1000;
    double tolerance_override = 0.0;  // 0 = per-check defaults
    int order = 3;                    // prolongation order for corpus checks
    std::string corpus_dir = "corpus";
};

Report run_verify(const VerifyOptions& opts);

// evaluates fn(i) for i in [0, n) across a worker pool and max-reduces
double parallel_max(long n, const std::function<double(long)>& fn);

}  // namespace covgrav
