#include "sproutforge/cohomology.hpp"

#include <map>
#include <mutex>

#include "sproutforge/errors.hpp"
#include "sproutforge/solve.hpp"

namespace sforge::engine {

namespace {

using br::BraceTree;
using br::BrElement;
using linalg::SparseMatrix;
using linalg::SparseVector;

SparseVector to_vector(const BrElement& x, const std::map<BraceTree, int>& index) {
    std::vector<SparseVector::Entry> entries;
    for (const auto& [t, c] : x.terms) entries.emplace_back(index.at(t), c);
    return SparseVector::from_entries(std::move(entries));
}

BrElement to_element(const SparseVector& v, const std::vector<BraceTree>& basis, int arity) {
    BrElement out;
    out.arity = arity;
    for (const auto& [i, c] : v.entries()) out.add(basis[i], c);
    return out;
}

// columns are the differentials of the degree-d basis trees
SparseMatrix diff_matrix(int arity, int degree) {
    const auto& dom = br::enumerate_basis(arity, degree);
    const auto& cod = br::enumerate_basis(arity, degree + 1);
    std::map<BraceTree, int> index;
    for (std::size_t i = 0; i < cod.size(); ++i) index[cod[i]] = static_cast<int>(i);
    SparseMatrix m(static_cast<int>(cod.size()), static_cast<int>(dom.size()));
    for (std::size_t j = 0; j < dom.size(); ++j)
        for (const auto& st : br::differential_trees(dom[j]))
            m.add(index.at(st.tree), static_cast<int>(j), Rational(st.sign));
    return m;
}

// incremental echelon set for independence tests; rows are kept sorted by
// leading index so one ascending reduction pass is complete
struct Echelon {
    std::vector<SparseVector> rows;

    bool insert(SparseVector v) {
        reduce(v);
        if (v.empty()) return false;
        auto at = std::lower_bound(rows.begin(), rows.end(), v.leading_index(),
                                   [](const SparseVector& r, int lead) {
                                       return r.leading_index() < lead;
                                   });
        rows.insert(at, std::move(v));
        return true;
    }

    void reduce(SparseVector& v) const {
        for (const auto& r : rows) {
            if (v.empty()) return;
            Rational c = v.get(r.leading_index());
            if (!is_zero(c)) v.axpy(-c / r.entries().front().second, r);
        }
    }
};

long long catalan(int n) {
    long long c = 1;
    for (int i = 0; i < n; ++i) c = c * 2 * (2 * i + 1) / (i + 2);
    return c;
}

} // namespace

std::vector<Rational> CohomologyBlock::project(const br::BrElement& cocycle) const {
    const auto& basis = br::enumerate_basis(arity, degree);
    std::map<BraceTree, int> index;
    for (std::size_t i = 0; i < basis.size(); ++i) index[basis[i]] = static_cast<int>(i);

    int nb = static_cast<int>(coboundaries.size());
    int nh = static_cast<int>(harmonic.size());
    SparseMatrix a(static_cast<int>(basis.size()), nb + nh);
    for (int j = 0; j < nb; ++j) {
        SparseVector col = to_vector(coboundaries[j], index);
        for (const auto& [i, c] : col.entries()) a.add(i, j, c);
    }
    for (int j = 0; j < nh; ++j) {
        SparseVector col = to_vector(harmonic[j], index);
        for (const auto& [i, c] : col.entries()) a.add(i, nb + j, c);
    }

    auto out = linalg::solve(a, to_vector(cocycle, index));
    if (out.status != linalg::SolveStatus::consistent)
        throw UsageError("projection input is not a cocycle of this block");
    std::vector<Rational> coords(nh, Rational(0));
    for (const auto& [i, c] : out.particular.entries())
        if (i >= nb) coords[i - nb] = c;
    return coords;
}

br::BrElement CohomologyBlock::lift(const std::vector<Rational>& coords) const {
    if (coords.size() != harmonic.size()) throw UsageError("coordinate count mismatch");
    BrElement out;
    out.arity = arity;
    for (std::size_t j = 0; j < coords.size(); ++j)
        for (const auto& [t, c] : harmonic[j].terms) out.add(t, c * coords[j]);
    return out;
}

br::BrElement CohomologyBlock::d_preimage(const br::BrElement& target) const {
    const auto& dom = br::enumerate_basis(arity, degree - 1);
    const auto& cod = br::enumerate_basis(arity, degree);
    std::map<BraceTree, int> index;
    for (std::size_t i = 0; i < cod.size(); ++i) index[cod[i]] = static_cast<int>(i);
    SparseMatrix d = diff_matrix(arity, degree - 1);
    auto out = linalg::solve(d, to_vector(target, index));
    if (out.status != linalg::SolveStatus::consistent)
        throw UsageError("target is not a coboundary");
    return to_element(out.particular, dom, arity);
}

const CohomologyBlock& cohomology(int arity, int degree, int arity_bound) {
    if (arity > arity_bound) {
        long long est = catalan(arity + 1) * 1;
        for (int i = 2; i <= arity; ++i) est *= i;
        throw ResourceError("cohomology arity " + std::to_string(arity) +
                            " exceeds the configured bound " + std::to_string(arity_bound) +
                            " (on the order of " + std::to_string(est) +
                            " basis trees per degree)");
    }
    static std::map<std::pair<int, int>, CohomologyBlock> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto key = std::make_pair(arity, degree);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    CohomologyBlock block;
    block.arity = arity;
    block.degree = degree;

    const auto& basis = br::enumerate_basis(arity, degree);

    // cocycles: kernel of d at this degree
    SparseMatrix d_here = diff_matrix(arity, degree);
    auto ker = linalg::solve(d_here, SparseVector());
    for (const auto& v : ker.kernel) block.cocycles.push_back(to_element(v, basis, arity));

    // coboundaries: first independent images in basis order
    Echelon ech;
    const auto& below = br::enumerate_basis(arity, degree - 1);
    std::map<BraceTree, int> index;
    for (std::size_t i = 0; i < basis.size(); ++i) index[basis[i]] = static_cast<int>(i);
    for (const auto& t : below) {
        BrElement img;
        img.arity = arity;
        for (const auto& st : br::differential_trees(t)) img.add(st.tree, Rational(st.sign));
        if (img.terms.empty()) continue;
        if (ech.insert(to_vector(img, index))) block.coboundaries.push_back(img);
    }

    // harmonic: extend the coboundaries to a basis of the cocycles
    for (const auto& z : block.cocycles)
        if (ech.insert(to_vector(z, index))) block.harmonic.push_back(z);

    return cache.emplace(key, std::move(block)).first->second;
}

} // namespace sforge::engine
