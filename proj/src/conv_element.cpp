#include "sproutforge/conv_element.hpp"

#include <algorithm>
#include <numeric>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "sproutforge/errors.hpp"

namespace sforge::conv {

namespace {

int par(int x) { return ((x % 2) + 2) % 2; }

void preorder_labels(const br::TreeNode& v, std::vector<int>& out) {
    if (v.tag > 0) out.push_back(v.tag);
    for (const auto& k : v.kids) preorder_labels(k, out);
}

} // namespace

int key_degree(const ConvKey& k) {
    return k.tree.degree() + k.word.shifted_degree();
}

int key_arity(const ConvKey& k) { return k.tree.arity(); }

bool tree_is_orbit_canonical(const br::BraceTree& t) {
    std::vector<int> labels;
    br::TreeNode root = t.node();
    preorder_labels(root, labels);
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i] != static_cast<int>(i) + 1) return false;
    return true;
}

// ----------------------------------------------------------------- element

bool ConvElement::zero() const {
    for (const auto& [n, c] : comp)
        if (!c.empty()) return false;
    return true;
}

void ConvElement::add_class(const ConvKey& k, const Rational& c) {
    if (is_zero(c)) return;
    auto& m = comp[key_arity(k)];
    auto [it, ins] = m.emplace(k, c);
    if (!ins) {
        it->second += c;
        if (is_zero(it->second)) m.erase(it);
    }
}

void ConvElement::add_raw(const Rational& c, const br::BraceTree& t, const ger::GerWord& w) {
    if (is_zero(c)) return;
    if (t.arity() != w.arity()) throw UsageError("tree and word arities differ");
    br::TreeNode root = t.node();
    std::vector<int> labels;
    preorder_labels(root, labels);
    bool canonical = true;
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i] != static_cast<int>(i) + 1) { canonical = false; break; }
    if (canonical) {
        add_class({t, w}, c);
        return;
    }
    std::vector<int> sigma(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) sigma[labels[i] - 1] = static_cast<int>(i) + 1;
    br::BraceTree t2 = br::act(sigma, t);
    for (const auto& [w2, c2] : ger::act(sigma, w)) add_class({t2, w2}, c * c2);
}

void ConvElement::add(const ConvElement& other, const Rational& scale) {
    for (const auto& [n, m] : other.comp)
        for (const auto& [k, c] : m) add_class(k, c * scale);
}

void ConvElement::scale_by(const Rational& c) {
    if (is_zero(c)) { comp.clear(); return; }
    for (auto& [n, m] : comp)
        for (auto& [k, v] : m) v *= c;
}

void ConvElement::prune() {
    for (auto it = comp.begin(); it != comp.end();) {
        if (it->second.empty()) it = comp.erase(it);
        else ++it;
    }
}

const Component* ConvElement::component(int arity) const {
    auto it = comp.find(arity);
    return it == comp.end() ? nullptr : &it->second;
}

std::size_t ConvElement::term_count() const {
    std::size_t n = 0;
    for (const auto& [a, m] : comp) n += m.size();
    return n;
}

int ConvElement::max_arity() const {
    int mx = 0;
    for (const auto& [a, m] : comp)
        if (!m.empty()) mx = std::max(mx, a);
    return mx;
}

std::set<int> ConvElement::degrees() const {
    std::set<int> out;
    for (const auto& [a, m] : comp)
        for (const auto& [k, c] : m) out.insert(key_degree(k));
    return out;
}

bool ConvElement::homogeneous(int& deg) const {
    auto ds = degrees();
    if (ds.empty()) return true;
    deg = *ds.begin();
    return ds.size() == 1;
}

bool ConvElement::operator==(const ConvElement& o) const {
    auto a = comp, b = o.comp;
    for (auto it = a.begin(); it != a.end();)
        it = it->second.empty() ? a.erase(it) : std::next(it);
    for (auto it = b.begin(); it != b.end();)
        it = it->second.empty() ? b.erase(it) : std::next(it);
    return a == b;
}

ConvElement av_normalize(const std::vector<RawTerm>& raw) {
    ConvElement out;
    for (const auto& r : raw) out.add_raw(r.coeff, r.tree, r.word);
    out.prune();
    return out;
}

// ----------------------------------------------------------------- products

namespace {

struct PairItem {
    const ConvKey* kf;
    const Rational* cf;
    const ConvKey* kg;
    const Rational* cg;
    int host_arity;
};

// One class pair of the pre-Lie product: all slots, componentwise
// insertion of the guest pair into the host pair.  Equivariance of both
// compositions folds the full symmetrization of the coinvariant classes
// away, leaving per-slot terms with the single Koszul factor below; the
// overall sign convention is the one certified by the second-sprout and
// Jacobi/Leibniz oracles in the test suite.
void process_pair(const PairItem& it, ConvElement& acc) {
    int eps_exp = 1 + par(key_degree(*it.kg)) * par(it.kf->word.ger_degree());
    Rational base = (*it.cf) * (*it.cg);
    if (eps_exp % 2) base = -base;
    for (int slot = 1; slot <= it.host_arity; ++slot) {
        auto trees = br::insert_trees(it.kf->tree, slot, it.kg->tree);
        auto words = ger::compose(it.kf->word, slot, it.kg->word);
        for (const auto& st : trees) {
            Rational c = base * st.sign;
            for (const auto& [w, wc] : words) acc.add_raw(c * wc, st.tree, w);
        }
    }
}

} // namespace

ConvElement pre_lie(const ConvElement& f, const ConvElement& g, int max_arity, Exec exec) {
    std::vector<PairItem> items;
    for (const auto& [k, compf] : f.comp) {
        for (const auto& [m, compg] : g.comp) {
            if (k + m - 1 > max_arity) continue;
            for (const auto& [kf, cf] : compf)
                for (const auto& [kg, cg] : compg) items.push_back({&kf, &cf, &kg, &cg, k});
        }
    }

    ConvElement out;
    if (!exec.parallel) {
        for (const auto& item : items) process_pair(item, out);
    } else {
#ifdef _OPENMP
#pragma omp parallel
        {
            ConvElement local;
#pragma omp for schedule(dynamic, 4)
            for (long i = 0; i < static_cast<long>(items.size()); ++i)
                process_pair(items[i], local);
#pragma omp critical(sforge_prelie_merge)
            out.add(local);
        }
#else
        for (const auto& item : items) process_pair(item, out);
#endif
    }
    out.prune();
    return out;
}

namespace {

std::map<int, ConvElement> split_by_degree(const ConvElement& f) {
    std::map<int, ConvElement> out;
    for (const auto& [n, m] : f.comp)
        for (const auto& [k, c] : m) out[key_degree(k)].add_class(k, c);
    return out;
}

} // namespace

ConvElement bracket(const ConvElement& f, const ConvElement& g, int max_arity, Exec exec) {
    ConvElement out;
    for (const auto& [df, fp] : split_by_degree(f)) {
        for (const auto& [dg, gp] : split_by_degree(g)) {
            out.add(pre_lie(fp, gp, max_arity, exec));
            int s = par(df) * par(dg);
            out.add(pre_lie(gp, fp, max_arity, exec), Rational(s ? 1 : -1));
        }
    }
    out.prune();
    return out;
}

ConvElement differential(const ConvElement& f) {
    ConvElement out;
    for (const auto& [n, m] : f.comp)
        for (const auto& [k, c] : m)
            for (const auto& st : br::differential_trees(k.tree))
                out.add_raw(c * st.sign, st.tree, k.word);
    out.prune();
    return out;
}

ConvElement curvature(const ConvElement& f, int max_arity, Exec exec) {
    int deg = 0;
    if (!f.homogeneous(deg) || (!f.zero() && deg != 1))
        throw UsageError("curvature requires a homogeneous degree-1 element");
    ConvElement out = differential(f);
    // 1/2 [f,f] = f.f for odd f
    out.add(pre_lie(f, f, max_arity, exec));
    out.prune();
    return out;
}

ConvElement truncate(const ConvElement& f, int order) {
    if (order < 1) throw UsageError("truncation order must be >= 1");
    ConvElement out;
    for (const auto& [n, m] : f.comp)
        if (n <= order + 1) out.comp[n] = m;
    out.prune();
    return out;
}

SproutCheck is_sprout(const ConvElement& f, int order, Exec exec) {
    if (order < 1) throw UsageError("sprout order must be >= 1");
    ConvElement curv = curvature(f, order + 2, exec);
    SproutCheck res;
    for (const auto& [n, m] : curv.comp)
        if (n >= 2 && n <= order + 1 && !m.empty()) res.residue.comp[n] = m;
    res.ok = res.residue.zero();
    return res;
}

// ------------------------------------------------------------------- bases

std::vector<ConvKey> enumerate_classes(int arity, int total_degree) {
    std::vector<ConvKey> out;
    for (const auto& w : ger::enumerate_basis(arity)) {
        int dtree = total_degree - w.shifted_degree();
        for (const auto& t : br::enumerate_basis(arity, dtree))
            if (tree_is_orbit_canonical(t)) out.push_back({t, w});
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::map<ger::GerWord, br::BrElement> expand_hom(const ConvElement& f, int arity) {
    std::map<ger::GerWord, br::BrElement> out;
    const Component* comp = f.component(arity);
    if (!comp) return out;
    std::vector<int> perm(arity);
    std::iota(perm.begin(), perm.end(), 1);
    do {
        for (const auto& [k, c] : *comp) {
            br::BraceTree t2 = br::act(perm, k.tree);
            for (const auto& [w2, c2] : ger::act(perm, k.word)) {
                auto& el = out[w2];
                el.arity = arity;
                el.add(t2, c * c2);
            }
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    for (auto it = out.begin(); it != out.end();)
        it = it->second.terms.empty() ? out.erase(it) : std::next(it);
    return out;
}

} // namespace sforge::conv
