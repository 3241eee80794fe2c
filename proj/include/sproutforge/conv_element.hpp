#ifndef SPROUTFORGE_CONV_ELEMENT_HPP
#define SPROUTFORGE_CONV_ELEMENT_HPP

#include <climits>
#include <map>
#include <set>
#include <tuple>
#include <vector>

#include "sproutforge/brace_tree.hpp"
#include "sproutforge/ger_word.hpp"
#include "sproutforge/rational.hpp"

namespace sforge::conv {

// Orbit-canonical coinvariant class of Br(n) (x) Ger(n) [suspended]: the
// stored tree carries labels 1..n in preorder.  Relabeling acts freely on
// the tree part, so these pairs form a basis of the coinvariants.
struct ConvKey {
    br::BraceTree tree;
    ger::GerWord word;

    bool operator<(const ConvKey& o) const {
        if (tree != o.tree) return tree < o.tree;
        return word < o.word;
    }
    bool operator==(const ConvKey& o) const { return tree == o.tree && word == o.word; }
};

// total degree: deg_Br + ger degree + 2(n-1)
int key_degree(const ConvKey& k);
int key_arity(const ConvKey& k);

bool tree_is_orbit_canonical(const br::BraceTree& t);

using Component = std::map<ConvKey, Rational>;

struct RawTerm {
    Rational coeff;
    br::BraceTree tree;
    ger::GerWord word;
};

class ConvElement {
public:
    std::map<int, Component> comp;   // arity (>= 2) -> classes

    bool zero() const;
    // folds an arbitrary basis pair onto canonical classes
    void add_raw(const Rational& c, const br::BraceTree& t, const ger::GerWord& w);
    void add_class(const ConvKey& k, const Rational& c);
    void add(const ConvElement& other, const Rational& scale = Rational(1));
    void scale_by(const Rational& c);
    void prune();

    const Component* component(int arity) const;
    std::size_t term_count() const;
    int max_arity() const;
    std::set<int> degrees() const;
    // true when all terms share one total degree (vacuously true if zero)
    bool homogeneous(int& deg) const;

    bool operator==(const ConvElement& o) const;
};

// Folds raw (coefficient, tree, word) terms to canonical classes; inputs in
// one S_n orbit land on the same class with matching signs.
ConvElement av_normalize(const std::vector<RawTerm>& raw);

struct Exec {
    bool parallel = true;
};

// Convolution pre-Lie product.  Components of arity above max_arity are
// not computed.
ConvElement pre_lie(const ConvElement& f, const ConvElement& g,
                    int max_arity = INT_MAX, Exec exec = {});

// [f,g] = f.g - (-1)^{|f||g|} g.f, extended bilinearly over the
// degree-homogeneous pieces of f and g.
ConvElement bracket(const ConvElement& f, const ConvElement& g,
                    int max_arity = INT_MAX, Exec exec = {});

// Induced by the Br differential; the Ger^v side has zero differential.
ConvElement differential(const ConvElement& f);

// Curv(f) = df + (1/2)[f,f]; input must be homogeneous of degree 1.
ConvElement curvature(const ConvElement& f, int max_arity = INT_MAX, Exec exec = {});

// Keeps arities <= order+1.
ConvElement truncate(const ConvElement& f, int order);

struct SproutCheck {
    bool ok = false;
    ConvElement residue;   // curvature components at arities 2..order+1
};

SproutCheck is_sprout(const ConvElement& f, int order, Exec exec = {});

// All canonical classes of one arity and total degree, in key order.
std::vector<ConvKey> enumerate_classes(int arity, int total_degree);

// The element as an equivariant map on the dual word basis at one arity:
// word w |-> value in Br(n).  Used by cohomology projections.
std::map<ger::GerWord, br::BrElement> expand_hom(const ConvElement& f, int arity);

} // namespace sforge::conv

#endif
