#ifndef SPROUTFORGE_SPROUT_ENGINE_HPP
#define SPROUTFORGE_SPROUT_ENGINE_HPP

#include <map>
#include <vector>

#include "sproutforge/cohomology.hpp"
#include "sproutforge/conv_element.hpp"
#include "sproutforge/solve.hpp"

namespace sforge::engine {

struct EngineOptions {
    int arity_bound = 6;
    linalg::PivotRule pivot = linalg::PivotRule::markowitz;
    conv::Exec exec = {};
    bool check_result = true;   // verify is_sprout on every extension output
};

// The reference second sprout: seven hard-coded terms in arities 2 and 3.
// Throws if the built-in sign conventions fail its curvature check.
conv::ConvElement seed_paper();

// Bootstraps a second sprout from the cohomology of Br alone: lifts the
// two generator classes through the harmonic splitting, then solves
// d y = -(a1 . a1) on the arity-3 classes.
conv::ConvElement seed_construct(const EngineOptions& opts = {});

// pi_H coordinates of the arity-2 part, per dual word, against the
// harmonic representatives; the reference is seed_paper's image.
std::map<ger::GerWord, std::vector<Rational>> project_arity2(const conv::ConvElement& sprout);
bool diagram_commutes(const conv::ConvElement& sprout);

// The (MC0)/(MC1A) system for extending an order-n sprout: unknowns are
// the degree-1 classes in arities n+1 and n+2, equations the degree-2
// classes there.
struct ExtensionProblem {
    int order = 0;
    std::vector<conv::ConvKey> unknowns_low;    // arity n+1
    std::vector<conv::ConvKey> unknowns_high;   // arity n+2
    std::vector<conv::ConvKey> rows_low;
    std::vector<conv::ConvKey> rows_high;
    linalg::SparseMatrix matrix{0, 0};
    linalg::SparseVector rhs;
};

ExtensionProblem assemble(const conv::ConvElement& sprout, int order,
                          const EngineOptions& opts = {});

struct ExtensionStats {
    int rows = 0;
    int cols = 0;
    std::size_t nnz = 0;
    int rank = 0;
    int kernel_dim = 0;
    std::map<int, std::size_t> term_counts;   // per arity, of the result
    double assemble_seconds = 0;              // log only, never serialized
    double solve_seconds = 0;
};

struct ExtendOutcome {
    bool extended = false;
    conv::ConvElement result;
    linalg::SparseVector certificate;   // y with yA = 0, y.rhs != 0
    ExtensionStats stats;
};

// One extension step; the certificate is verified exactly before a
// NotExtendable outcome is reported.
ExtendOutcome extend(const conv::ConvElement& sprout, int order,
                     const EngineOptions& opts = {});

// Deterministic solution choice: the canonical particular solution reduced
// greedily (first improvement, fixed order) against the kernel to shrink
// its support.
linalg::SparseVector solution_select(const linalg::SolveOutcome& outcome);

} // namespace sforge::engine

#endif
