// reproduce.hpp: scripted end-to-end checks covering the library's headline results.
#pragma once

#include <string>
#include <vector>

#include "spinbath/measures.hpp"

namespace spinbath {

/// One scalar comparison inside a criterion.
struct CheckLine {
    std::string label;
    double expected = 0.0;
    double computed = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

/// A named group of checks; passes only if every check passes.
struct CriterionResult {
    std::string name;
    std::vector<CheckLine> checks;
    bool pass = true;
};

/// Runs the full battery of reproduction criteria. Deterministic for a fixed seed.
std::vector<CriterionResult> run_acceptance_checks(unsigned long seed = 12345);

/// Total-system entropy against system size for one dissipation regime.
/// regime "thermal": independent damping, product Gibbs target (extensive entropy).
/// regime "uniform": fully collective damping from the fully polarized state,
/// entropy saturates because the dynamics stays on one angular-momentum ladder.
EntropyScalingResult entropy_scaling(const std::string& regime, int n_min, int n_max,
                                     double beta_omega0);

/// Fixed-width console table, one line per criterion plus failing check detail.
std::string acceptance_table(const std::vector<CriterionResult>& results);

/// JSON document with every check line.
std::string acceptance_to_json(const std::vector<CriterionResult>& results);

/// Number of failed criteria (CLI exit code helper).
int count_failures(const std::vector<CriterionResult>& results);

}  // namespace spinbath
