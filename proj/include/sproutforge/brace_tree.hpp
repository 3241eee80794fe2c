#ifndef SPROUTFORGE_BRACE_TREE_HPP
#define SPROUTFORGE_BRACE_TREE_HPP

#include <map>
#include <string>
#include <vector>

#include "sproutforge/rational.hpp"

namespace sforge::br {

// Working form of a brace tree: planar rooted, vertices either Labeled
// (tag = 1..n) or Neutral (tag = 0).  edge_id identifies the edge to the
// parent while operations shuffle subtrees around; -1 at the root.
struct TreeNode {
    int tag = 0;
    int edge_id = -1;
    std::vector<TreeNode> kids;
};

// Canonical value type: the preorder byte encoding (tag, child count per
// vertex).  Equal trees compare equal bytewise.
class BraceTree {
public:
    BraceTree() = default;
    static BraceTree from_encoding(const std::string& enc);
    static BraceTree from_node(const TreeNode& root);

    const std::string& encoding() const { return enc_; }
    int arity() const { return arity_; }
    int neutrals() const { return neutrals_; }
    // 2*nu - e with e the non-stub edge count; equals nu - arity + 1.
    int degree() const { return neutrals_ - arity_ + 1; }

    TreeNode node() const;

    bool operator<(const BraceTree& o) const { return enc_ < o.enc_; }
    bool operator==(const BraceTree& o) const { return enc_ == o.enc_; }
    bool operator!=(const BraceTree& o) const { return enc_ != o.enc_; }

private:
    std::string enc_;
    int arity_ = 0;
    int neutrals_ = 0;
};

// Nested text form: r(1(2)) for the 2-chain, r(•(1,2)) for the cup tree.
std::string tree_text(const BraceTree& t);
BraceTree parse_tree(const std::string& text);

// The operad unit: a single labeled vertex.
BraceTree unit_tree();

// All canonical trees with n labels and nu = d + n - 1 neutral vertices,
// in encoding order.  Cached per (n, d).
const std::vector<BraceTree>& enumerate_basis(int arity, int degree);

// Relabels Labeled(i) -> Labeled(perm[i-1]).  perm must be a permutation
// of 1..arity.  No sign: the S_n action on Br is orientation-free.
BraceTree act(const std::vector<int>& perm, const BraceTree& t);

// One insertion term: a basis tree with the Koszul sign of the edge-order
// permutation it induces.
struct SignedTree {
    BraceTree tree;
    int sign = 1;
};

// Operadic composition host o_slot guest on basis trees: the labeled
// vertex `slot` is replaced by the guest and its former children are
// distributed over the guest's planar gaps in all order-preserving ways.
std::vector<SignedTree> insert_trees(const BraceTree& host, int slot,
                                     const BraceTree& guest);

// Degree +1 differential: sum over vertex splittings v -> v'--v'' where
// one part is Neutral and the other keeps v's tag, the upper vertex
// receiving a consecutive block of v's children.  Splittings that leave a
// Neutral vertex with fewer than 2 children are dropped.
std::vector<SignedTree> differential_trees(const BraceTree& t);

// Linear combination of same-arity trees.
struct BrElement {
    int arity = 0;
    std::map<BraceTree, Rational> terms;

    bool zero() const { return terms.empty(); }
    void add(const BraceTree& t, const Rational& c);
};

BrElement make_element(int arity, std::initializer_list<std::pair<BraceTree, Rational>> ts);
BrElement insert(const BrElement& host, int slot, const BrElement& guest);
BrElement differential(const BrElement& x);
BrElement act(const std::vector<int>& perm, const BrElement& x);

} // namespace sforge::br

#endif
