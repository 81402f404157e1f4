#pragma once

#include <cstdint>

namespace zsl {

struct GradCheckReport {
    double max_rel_error = 0.0;
    std::size_t instances = 0;
    std::size_t coordinates = 0;  // total parameter coordinates compared
};

// Self-contained verification harness: builds small random instances
// (input dim 6, hidden 5, attribute dim 4, 3 seen + 2 unseen classes, cycling
// through all four activations, DU labels q=0.3 tau=0.5, lambda=gamma=0.01)
// and compares every analytic gradient coordinate against a central finite
// difference of the loss (h=1e-5). Relative error uses
// |analytic - numeric| / max(|analytic|, |numeric|, 1e-4).
//
// inject_fault perturbs one analytic coordinate per instance — a negative
// control that must push the reported error far above any sane tolerance.
GradCheckReport gradcheck(std::uint64_t seed, std::size_t instances = 20, bool inject_fault = false);

}  // namespace zsl
