#include "sproutforge/sprout_engine.hpp"

#include <chrono>
#include <mutex>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "sproutforge/errors.hpp"

namespace sforge::engine {

using conv::ConvElement;
using conv::ConvKey;
using linalg::SparseMatrix;
using linalg::SparseVector;

namespace {

ConvElement component(const ConvElement& f, int arity) {
    ConvElement out;
    if (const auto* c = f.component(arity)) out.comp[arity] = *c;
    return out;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string residue_summary(const ConvElement& residue) {
    std::ostringstream os;
    for (const auto& [n, m] : residue.comp) {
        if (m.empty()) continue;
        os << " arity " << n << ": " << m.size() << " classes, first "
           << rat_str(m.begin()->second) << "*" << br::tree_text(m.begin()->first.tree)
           << " (x) " << ger::word_text(m.begin()->first.word) << ";";
    }
    return os.str();
}

} // namespace

ConvElement seed_paper() {
    struct Term {
        const char* coeff;
        const char* tree;
        const char* word;
    };
    static const Term terms[] = {
        {"1", "r(1(2))", "b1 b2"},
        {"1/2", "r(•(1,2))", "{b1,b2}"},
        {"1/2", "r(1(2,3))", "b1{b2,b3}"},
        {"-1/3", "r(•(1,2,3))", "{b1,{b2,b3}}"},
        {"-1/6", "r(•(1,2,3))", "{b2,{b1,b3}}"},
        {"-1/6", "r(1(•(2,3)))", "{b2,{b1,b3}}"},
        {"-1/12", "r(1(•(2,3)))", "{b1,{b2,b3}}"},
    };
    std::vector<conv::RawTerm> raw;
    for (const auto& t : terms)
        raw.push_back({parse_rational(t.coeff), br::parse_tree(t.tree), ger::parse_word(t.word)});
    ConvElement alpha = conv::av_normalize(raw);
    auto check = conv::is_sprout(alpha, 2);
    if (!check.ok)
        throw std::logic_error("sign-convention mismatch: the built-in second sprout fails "
                               "its curvature check;" + residue_summary(check.residue));
    return alpha;
}

// ------------------------------------------------------------- projections

std::map<ger::GerWord, std::vector<Rational>> project_arity2(const ConvElement& sprout) {
    std::map<ger::GerWord, std::vector<Rational>> out;
    auto hom = conv::expand_hom(sprout, 2);
    for (const auto& w : ger::enumerate_basis(2)) {
        int value_degree = 1 - w.shifted_degree();
        const auto& block = cohomology(2, value_degree);
        auto it = hom.find(w);
        br::BrElement value;
        value.arity = 2;
        if (it != hom.end()) value = it->second;
        out[w] = block.project(value);
    }
    return out;
}

bool diagram_commutes(const ConvElement& sprout) {
    static const auto reference = project_arity2(seed_paper());
    return project_arity2(sprout) == reference;
}

// ------------------------------------------------------------ constructed seed

ConvElement seed_construct(const EngineOptions& opts) {
    // arity-2 part: lift the reference classes through the harmonic splitting
    static const auto reference = project_arity2(seed_paper());
    ConvElement alpha1;
    {
        std::vector<conv::RawTerm> raw;
        for (const auto& [w, coords] : reference) {
            const auto& block = cohomology(2, 1 - w.shifted_degree());
            br::BrElement lifted = block.lift(coords);
            for (const auto& [t, c] : lifted.terms) raw.push_back({c, t, w});
        }
        // the hom-to-class dictionary divides by |S_2|
        alpha1 = conv::av_normalize(raw);
        alpha1.scale_by(rat(1, 2));
    }

    // arity-3 part: solve d y = (a1 . a1) on the degree-1 classes and take -y
    ConvElement square = conv::pre_lie(alpha1, alpha1, 3, opts.exec);
    auto cols = conv::enumerate_classes(3, 1);
    auto rows = conv::enumerate_classes(3, 2);
    std::map<ConvKey, int> row_index;
    for (std::size_t i = 0; i < rows.size(); ++i) row_index[rows[i]] = static_cast<int>(i);

    SparseMatrix d(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
    for (std::size_t j = 0; j < cols.size(); ++j) {
        ConvElement unit;
        unit.add_class(cols[j], Rational(1));
        for (const auto& [n, m] : conv::differential(unit).comp)
            for (const auto& [k, c] : m) d.add(row_index.at(k), static_cast<int>(j), c);
    }
    std::vector<SparseVector::Entry> rhs_entries;
    if (const auto* m = square.component(3))
        for (const auto& [k, c] : *m) rhs_entries.emplace_back(row_index.at(k), c);
    auto outcome = linalg::solve(d, SparseVector::from_entries(std::move(rhs_entries)), opts.pivot);
    if (outcome.status != linalg::SolveStatus::consistent)
        throw std::logic_error("sign-convention mismatch: the bootstrap lift system is "
                               "inconsistent");
    SparseVector y = solution_select(outcome);

    ConvElement alpha = alpha1;
    for (const auto& [j, c] : y.entries()) alpha.add_class(cols[j], -c);
    auto check = conv::is_sprout(alpha, 2, opts.exec);
    if (!check.ok)
        throw std::logic_error("sign-convention mismatch: constructed seed fails its sprout "
                               "check;" + residue_summary(check.residue));
    return alpha;
}

// ----------------------------------------------------------------- assembly

ExtensionProblem assemble(const ConvElement& sprout, int order, const EngineOptions& opts) {
    if (order < 2) throw UsageError("extension starts from sprouts of order >= 2");
    if (order + 2 > opts.arity_bound)
        throw ResourceError("extending an order-" + std::to_string(order) +
                            " sprout needs arity " + std::to_string(order + 2) +
                            " classes, above the configured bound " +
                            std::to_string(opts.arity_bound));
    if (sprout.max_arity() > order + 1)
        throw UsageError("sprout has components above arity order+1");
    auto check = conv::is_sprout(sprout, order, opts.exec);
    if (!check.ok)
        throw UsageError("input is not a sprout of order " + std::to_string(order) + ":" +
                         residue_summary(check.residue));

    ExtensionProblem p;
    p.order = order;
    p.unknowns_low = conv::enumerate_classes(order + 1, 1);
    p.unknowns_high = conv::enumerate_classes(order + 2, 1);
    p.rows_low = conv::enumerate_classes(order + 1, 2);
    p.rows_high = conv::enumerate_classes(order + 2, 2);

    const int rows = static_cast<int>(p.rows_low.size() + p.rows_high.size());
    const int cols = static_cast<int>(p.unknowns_low.size() + p.unknowns_high.size());
    p.matrix = SparseMatrix(rows, cols);

    std::map<ConvKey, int> row_of;
    for (std::size_t i = 0; i < p.rows_low.size(); ++i) row_of[p.rows_low[i]] = static_cast<int>(i);
    for (std::size_t i = 0; i < p.rows_high.size(); ++i)
        row_of[p.rows_high[i]] = static_cast<int>(p.rows_low.size() + i);

    ConvElement alpha1 = component(sprout, 2);

    // column blocks: d on the low unknowns feeds (MC0), [a1, .] feeds
    // (MC1A); d on the high unknowns feeds (MC1A)
    const long n_low = static_cast<long>(p.unknowns_low.size());
    const long n_cols = static_cast<long>(cols);
    std::vector<std::vector<SparseVector::Entry>> col_entries(cols);

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 2)
#endif
    for (long j = 0; j < n_cols; ++j) {
        ConvElement unit;
        if (j < n_low) unit.add_class(p.unknowns_low[j], Rational(1));
        else unit.add_class(p.unknowns_high[j - n_low], Rational(1));
        ConvElement image = conv::differential(unit);
        if (j < n_low) {
            ConvElement link = conv::bracket(alpha1, unit, order + 2, conv::Exec{false});
            image.add(link);
        }
        std::vector<SparseVector::Entry> entries;
        for (const auto& [n, m] : image.comp)
            for (const auto& [k, c] : m) {
                auto it = row_of.find(k);
                if (it != row_of.end()) entries.emplace_back(it->second, c);
            }
        col_entries[j] = std::move(entries);
    }
    for (int j = 0; j < cols; ++j)
        for (const auto& [r, c] : col_entries[j]) p.matrix.add(r, j, c);

    // right-hand side: the known bracket terms, negated
    ConvElement rhs_low, rhs_high;
    for (int i = 1; i <= order - 1; ++i) {
        int jj = order - i;
        if (jj >= 1 && jj <= order - 1)
            rhs_low.add(conv::bracket(component(sprout, i + 1), component(sprout, jj + 1),
                                      order + 1, opts.exec),
                        rat(1, 2));
    }
    for (int i = 2; i <= order - 1; ++i) {
        int jj = order + 1 - i;
        if (jj >= 2 && jj <= order - 1)
            rhs_high.add(conv::bracket(component(sprout, i + 1), component(sprout, jj + 1),
                                       order + 2, opts.exec),
                         rat(1, 2));
    }
    std::vector<SparseVector::Entry> rhs_entries;
    if (const auto* m = rhs_low.component(order + 1))
        for (const auto& [k, c] : *m) rhs_entries.emplace_back(row_of.at(k), -c);
    if (const auto* m = rhs_high.component(order + 2))
        for (const auto& [k, c] : *m) rhs_entries.emplace_back(row_of.at(k), -c);
    p.rhs = SparseVector::from_entries(std::move(rhs_entries));
    return p;
}

// -------------------------------------------------------------------- solve

SparseVector solution_select(const linalg::SolveOutcome& outcome) {
    SparseVector best = outcome.particular;
    for (const auto& k : outcome.kernel) {
        for (const auto& [i, kv] : k.entries()) {
            Rational pi = best.get(i);
            if (is_zero(pi)) continue;
            SparseVector candidate = best;
            candidate.axpy(-pi / kv, k);
            if (candidate.nnz() < best.nnz()) {
                best = std::move(candidate);
                break;   // first improvement, then next kernel vector
            }
        }
    }
    return best;
}

ExtendOutcome extend(const ConvElement& sprout, int order, const EngineOptions& opts) {
    if (!diagram_commutes(sprout))
        throw UsageError("sprout does not project to the generator classes on arity 2");

    ExtendOutcome out;
    auto t0 = std::chrono::steady_clock::now();
    ExtensionProblem p = assemble(sprout, order, opts);
    out.stats.assemble_seconds = seconds_since(t0);
    out.stats.rows = p.matrix.rows();
    out.stats.cols = p.matrix.cols();
    out.stats.nnz = p.matrix.nnz();

    t0 = std::chrono::steady_clock::now();
    auto solved = linalg::solve(p.matrix, p.rhs, opts.pivot);
    out.stats.solve_seconds = seconds_since(t0);
    out.stats.rank = solved.rank;
    out.stats.kernel_dim = static_cast<int>(solved.kernel.size());

    if (solved.status == linalg::SolveStatus::inconsistent) {
        // verify y A = 0, y rhs != 0 before reporting
        SparseVector yA;
        for (const auto& [r, yc] : solved.certificate.entries()) yA.axpy(yc, p.matrix.row(r));
        if (!yA.empty() || is_zero(solved.certificate.dot(p.rhs)))
            throw std::logic_error("inconsistency certificate failed verification");
        out.extended = false;
        out.certificate = solved.certificate;
        return out;
    }

    SparseVector chosen = solution_select(solved);
    ConvElement result = sprout;
    result.comp.erase(order + 1);
    result.comp.erase(order + 2);
    const long n_low = static_cast<long>(p.unknowns_low.size());
    for (const auto& [j, c] : chosen.entries()) {
        if (j < n_low) result.add_class(p.unknowns_low[j], c);
        else result.add_class(p.unknowns_high[j - n_low], c);
    }
    result.prune();

    if (opts.check_result) {
        auto check = conv::is_sprout(result, order + 1, opts.exec);
        if (!check.ok)
            throw std::logic_error("extension output fails its sprout check:" +
                                   residue_summary(check.residue));
    }
    for (const auto& [n, m] : result.comp) out.stats.term_counts[n] = m.size();
    out.extended = true;
    out.result = std::move(result);
    return out;
}

} // namespace sforge::engine
