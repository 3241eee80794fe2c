#ifndef SPROUTFORGE_SOLVE_HPP
#define SPROUTFORGE_SOLVE_HPP

#include <vector>

#include "sproutforge/sparse.hpp"

namespace sforge::linalg {

enum class SolveStatus { consistent, inconsistent };

// Which row is taken as pivot among the candidates of the current column.
// Columns are always scanned in index order, so the reduced echelon form
// (and with it the particular solution and kernel basis) is the same for
// both rules; only the elimination path and the inconsistency certificate
// may differ.
enum class PivotRule {
    first_nonzero,  // lowest row index
    markowitz,      // fewest stored entries, ties by lowest row index
};

struct SolveOutcome {
    SolveStatus status = SolveStatus::consistent;
    SparseVector particular;               // valid when consistent
    std::vector<SparseVector> kernel;      // nullspace basis, always computed
    SparseVector certificate;              // y with yA = 0, y.b != 0 when inconsistent
    int rank = 0;
};

// Exact Gauss-Jordan elimination over Q.  Deterministic for a fixed pivot
// rule; free variables are set to zero in the particular solution.
SolveOutcome solve(const SparseMatrix& a, const SparseVector& rhs,
                   PivotRule rule = PivotRule::markowitz);

int rank(const SparseMatrix& a, PivotRule rule = PivotRule::markowitz);

} // namespace sforge::linalg

#endif
