#include "sproutforge/solve.hpp"

#include <limits>

namespace sforge::linalg {

namespace {

struct Elimination {
    std::vector<SparseVector> rows;
    std::vector<Rational> rhs;
    std::vector<SparseVector> hist;   // row i as combination of input rows
    std::vector<int> pivot_row;       // per pivot column, in column order
    std::vector<int> pivot_col;       // aligned with pivot_row
    std::vector<char> is_pivot;
    bool track_hist = false;
};

void run_forward(Elimination& e, int cols, PivotRule rule) {
    const int m = static_cast<int>(e.rows.size());
    std::vector<char> active(m, 1);
    for (int col = 0; col < cols; ++col) {
        int pick = -1;
        std::size_t best = std::numeric_limits<std::size_t>::max();
        for (int r = 0; r < m; ++r) {
            if (!active[r] || e.rows[r].leading_index() != col) continue;
            if (rule == PivotRule::first_nonzero) { pick = r; break; }
            std::size_t sz = e.rows[r].nnz();
            if (sz < best) { best = sz; pick = r; }
        }
        if (pick < 0) continue;
        Rational inv = 1 / e.rows[pick].get(col);
        e.rows[pick].scale(inv);
        e.rhs[pick] *= inv;
        if (e.track_hist) e.hist[pick].scale(inv);
        for (int r = 0; r < m; ++r) {
            if (r == pick || !active[r]) continue;
            Rational f = e.rows[r].get(col);
            if (is_zero(f)) continue;
            f = -f;
            e.rows[r].axpy(f, e.rows[pick]);
            e.rhs[r] += f * e.rhs[pick];
            if (e.track_hist) e.hist[r].axpy(f, e.hist[pick]);
        }
        active[pick] = 0;
        e.is_pivot[pick] = 1;
        e.pivot_row.push_back(pick);
        e.pivot_col.push_back(col);
    }
}

// Clear pivot columns from earlier pivot rows (reduced echelon form).
void run_backward(Elimination& e) {
    for (int k = static_cast<int>(e.pivot_row.size()) - 1; k >= 0; --k) {
        int p = e.pivot_row[k];
        int c = e.pivot_col[k];
        for (int j = 0; j < k; ++j) {
            int q = e.pivot_row[j];
            Rational f = e.rows[q].get(c);
            if (is_zero(f)) continue;
            f = -f;
            e.rows[q].axpy(f, e.rows[p]);
            e.rhs[q] += f * e.rhs[p];
            if (e.track_hist) e.hist[q].axpy(f, e.hist[p]);
        }
    }
}

Elimination eliminate(const SparseMatrix& a, const SparseVector& rhs,
                      PivotRule rule, bool track_hist) {
    if (!rhs.entries().empty() && rhs.entries().back().first >= a.rows())
        throw UsageError("rhs length does not match row count");
    Elimination e;
    const int m = a.rows();
    e.rows.reserve(m);
    e.rhs.assign(m, Rational(0));
    e.is_pivot.assign(m, 0);
    e.track_hist = track_hist;
    for (int r = 0; r < m; ++r) e.rows.push_back(a.row(r));
    for (const auto& [i, v] : rhs.entries()) e.rhs[i] = v;
    if (track_hist) {
        e.hist.resize(m);
        for (int r = 0; r < m; ++r) e.hist[r].set(r, Rational(1));
    }
    run_forward(e, a.cols(), rule);
    return e;
}

int first_inconsistent_row(const Elimination& e) {
    for (int r = 0; r < static_cast<int>(e.rows.size()); ++r)
        if (!e.is_pivot[r] && e.rows[r].empty() && !is_zero(e.rhs[r])) return r;
    return -1;
}

} // namespace

SolveOutcome solve(const SparseMatrix& a, const SparseVector& rhs, PivotRule rule) {
    Elimination e = eliminate(a, rhs, rule, false);
    SolveOutcome out;
    out.rank = static_cast<int>(e.pivot_row.size());

    int bad = first_inconsistent_row(e);
    if (bad >= 0) {
        // Rerun with history to recover the row combination certifying
        // the contradiction; the elimination path is identical.
        Elimination h = eliminate(a, rhs, rule, true);
        out.status = SolveStatus::inconsistent;
        out.certificate = h.hist[first_inconsistent_row(h)];
        return out;
    }

    run_backward(e);
    out.status = SolveStatus::consistent;

    std::vector<int> col_pivot_row(a.cols(), -1);
    for (std::size_t k = 0; k < e.pivot_col.size(); ++k)
        col_pivot_row[e.pivot_col[k]] = e.pivot_row[k];

    std::vector<SparseVector::Entry> part;
    for (std::size_t k = 0; k < e.pivot_col.size(); ++k)
        if (!is_zero(e.rhs[e.pivot_row[k]]))
            part.emplace_back(e.pivot_col[k], e.rhs[e.pivot_row[k]]);
    out.particular = SparseVector::from_entries(std::move(part));

    for (int c = 0; c < a.cols(); ++c) {
        if (col_pivot_row[c] >= 0) continue;
        std::vector<SparseVector::Entry> ker;
        ker.emplace_back(c, Rational(1));
        for (std::size_t k = 0; k < e.pivot_col.size(); ++k) {
            Rational v = e.rows[e.pivot_row[k]].get(c);
            if (!is_zero(v)) ker.emplace_back(e.pivot_col[k], -v);
        }
        out.kernel.push_back(SparseVector::from_entries(std::move(ker)));
    }
    return out;
}

int rank(const SparseMatrix& a, PivotRule rule) {
    Elimination e = eliminate(a, SparseVector(), rule, false);
    return static_cast<int>(e.pivot_row.size());
}

} // namespace sforge::linalg
