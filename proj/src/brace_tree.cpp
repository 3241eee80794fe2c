#include "sproutforge/brace_tree.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <numeric>

#include "sproutforge/errors.hpp"

namespace sforge::br {

namespace {

// Neutral vertices encode above every label so that labeled-rooted trees
// come first in the canonical order.
constexpr unsigned char kNeutralByte = 0x3F;

void encode_rec(const TreeNode& v, std::string& out) {
    out.push_back(static_cast<char>(v.tag == 0 ? kNeutralByte : v.tag));
    out.push_back(static_cast<char>(v.kids.size()));
    for (const auto& k : v.kids) encode_rec(k, out);
}

TreeNode decode_rec(const std::string& enc, std::size_t& pos) {
    if (pos + 2 > enc.size()) throw FormatError("truncated tree encoding");
    TreeNode v;
    unsigned char tag = static_cast<unsigned char>(enc[pos]);
    if (tag >= kNeutralByte && tag != kNeutralByte)
        throw FormatError("bad tag byte in tree encoding");
    v.tag = (tag == kNeutralByte) ? 0 : tag;
    int nk = static_cast<unsigned char>(enc[pos + 1]);
    pos += 2;
    v.kids.reserve(nk);
    for (int i = 0; i < nk; ++i) v.kids.push_back(decode_rec(enc, pos));
    return v;
}

void scan(const TreeNode& v, std::vector<int>& labels, int& neutrals, bool& valence_ok) {
    if (v.tag == 0) {
        ++neutrals;
        if (v.kids.size() < 2) valence_ok = false;
    } else {
        labels.push_back(v.tag);
    }
    for (const auto& k : v.kids) scan(k, labels, neutrals, valence_ok);
}

// Preorder edge ids 0,1,2,... (the canonical orientation).
void number_edges(TreeNode& v, int& next, bool root = true) {
    if (!root) v.edge_id = next++;
    for (auto& k : v.kids) number_edges(k, next, false);
}

void collect_edge_ids(const TreeNode& v, std::vector<int>& ids, bool root = true) {
    if (!root) ids.push_back(v.edge_id);
    for (const auto& k : v.kids) collect_edge_ids(k, ids, false);
}

int inversion_sign(const std::vector<int>& ids) {
    int inv = 0;
    for (std::size_t i = 0; i < ids.size(); ++i)
        for (std::size_t j = i + 1; j < ids.size(); ++j)
            if (ids[i] > ids[j]) ++inv;
    return (inv % 2 == 0) ? 1 : -1;
}

int result_sign(const TreeNode& root) {
    std::vector<int> ids;
    collect_edge_ids(root, ids);
    return inversion_sign(ids);
}

void relabel_rec(TreeNode& v, const std::vector<int>& map_one_based) {
    if (v.tag > 0) v.tag = map_one_based[v.tag - 1];
    for (auto& k : v.kids) relabel_rec(k, map_one_based);
}

} // namespace

BraceTree BraceTree::from_encoding(const std::string& enc) {
    std::size_t pos = 0;
    TreeNode root = decode_rec(enc, pos);
    if (pos != enc.size()) throw FormatError("trailing bytes in tree encoding");
    return from_node(root);
}

BraceTree BraceTree::from_node(const TreeNode& root) {
    std::vector<int> labels;
    int neutrals = 0;
    bool valence_ok = true;
    scan(root, labels, neutrals, valence_ok);
    if (!valence_ok) throw FormatError("neutral vertex with fewer than 2 children");
    std::vector<int> sorted = labels;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i)
        if (sorted[i] != static_cast<int>(i) + 1)
            throw FormatError("labels are not 1..n without repeats");
    BraceTree t;
    encode_rec(root, t.enc_);
    t.arity_ = static_cast<int>(labels.size());
    t.neutrals_ = neutrals;
    return t;
}

TreeNode BraceTree::node() const {
    std::size_t pos = 0;
    TreeNode root = decode_rec(enc_, pos);
    return root;
}

BraceTree unit_tree() {
    TreeNode v;
    v.tag = 1;
    return BraceTree::from_node(v);
}

// ---------------------------------------------------------------- text form

namespace {

void text_rec(const TreeNode& v, std::string& out) {
    if (v.tag == 0) out += "•";
    else out += std::to_string(v.tag);
    if (!v.kids.empty()) {
        out.push_back('(');
        for (std::size_t i = 0; i < v.kids.size(); ++i) {
            if (i) out.push_back(',');
            text_rec(v.kids[i], out);
        }
        out.push_back(')');
    }
}

struct TreeParser {
    const std::string& s;
    std::size_t pos = 0;

    void expect(char c) {
        if (pos >= s.size() || s[pos] != c)
            throw FormatError("tree text: expected '" + std::string(1, c) + "' at offset " +
                              std::to_string(pos) + " in '" + s + "'");
        ++pos;
    }

    TreeNode vertex() {
        TreeNode v;
        if (pos < s.size() && (s.compare(pos, 3, "•") == 0)) {
            v.tag = 0;
            pos += 3;
        } else if (pos < s.size() && s[pos] == '*') {
            v.tag = 0;
            ++pos;
        } else {
            std::size_t start = pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
            if (pos == start) throw FormatError("tree text: expected label at offset " +
                                                std::to_string(pos) + " in '" + s + "'");
            v.tag = std::stoi(s.substr(start, pos - start));
            if (v.tag <= 0) throw FormatError("tree text: labels start at 1");
        }
        if (pos < s.size() && s[pos] == '(') {
            ++pos;
            while (true) {
                v.kids.push_back(vertex());
                if (pos < s.size() && s[pos] == ',') { ++pos; continue; }
                break;
            }
            expect(')');
        }
        return v;
    }
};

} // namespace

std::string tree_text(const BraceTree& t) {
    std::string out = "r(";
    text_rec(t.node(), out);
    out.push_back(')');
    return out;
}

BraceTree parse_tree(const std::string& text) {
    TreeParser p{text};
    p.expect('r');
    p.expect('(');
    TreeNode root = p.vertex();
    p.expect(')');
    if (p.pos != text.size()) throw FormatError("tree text: trailing input in '" + text + "'");
    return BraceTree::from_node(root);
}

// -------------------------------------------------------------- enumeration

namespace {

// All plane trees with v vertices, as uncolored shapes (tag unused).
std::vector<TreeNode> plane_shapes(int v) {
    static std::map<int, std::vector<TreeNode>> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    std::function<const std::vector<TreeNode>&(int)> gen = [&](int n) -> const std::vector<TreeNode>& {
        auto it = cache.find(n);
        if (it != cache.end()) return it->second;
        std::vector<TreeNode> res;
        if (n == 1) {
            res.emplace_back();
        } else {
            // unique split: first child subtree + root with remaining children
            for (int s = 1; s < n; ++s) {
                const auto firsts = gen(s);
                const auto rests = gen(n - s);
                for (const auto& rest : rests)
                    for (const auto& first : firsts) {
                        TreeNode t = rest;
                        t.kids.insert(t.kids.begin(), first);
                        res.push_back(std::move(t));
                    }
            }
        }
        return cache.emplace(n, std::move(res)).first->second;
    };
    return gen(v);
}

void collect_vertices(TreeNode& v, std::vector<TreeNode*>& out) {
    out.push_back(&v);
    for (auto& k : v.kids) collect_vertices(k, out);
}

void choose_subsets(int from, int take, std::vector<int>& cur,
                    const std::function<void(const std::vector<int>&)>& fn, int start = 0) {
    if (take == 0) { fn(cur); return; }
    for (int i = start; i <= from - take; ++i) {
        cur.push_back(i);
        choose_subsets(from, take - 1, cur, fn, i + 1);
        cur.pop_back();
    }
}

} // namespace

const std::vector<BraceTree>& enumerate_basis(int arity, int degree) {
    static std::map<std::pair<int, int>, std::vector<BraceTree>> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto key = std::make_pair(arity, degree);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    std::vector<BraceTree> res;
    if (arity < 1) throw UsageError("arity must be >= 1");
    int nu = degree + arity - 1;
    if (nu >= 0) {
        for (TreeNode shape : plane_shapes(arity + nu)) {
            std::vector<TreeNode*> verts;
            collect_vertices(shape, verts);
            std::vector<int> candidates;   // vertices that may be Neutral
            for (std::size_t i = 0; i < verts.size(); ++i)
                if (verts[i]->kids.size() >= 2) candidates.push_back(static_cast<int>(i));
            if (static_cast<int>(candidates.size()) < nu) continue;
            std::vector<int> cur;
            choose_subsets(static_cast<int>(candidates.size()), nu, cur,
                           [&](const std::vector<int>& pick) {
                for (auto* v : verts) v->tag = 1;      // provisional: labeled
                for (int c : pick) verts[candidates[c]]->tag = 0;
                std::vector<TreeNode*> labeled;
                for (auto* v : verts) if (v->tag != 0) labeled.push_back(v);
                std::vector<int> perm(labeled.size());
                std::iota(perm.begin(), perm.end(), 1);
                do {
                    for (std::size_t i = 0; i < labeled.size(); ++i) labeled[i]->tag = perm[i];
                    res.push_back(BraceTree::from_node(shape));
                    for (auto* v : labeled) v->tag = 1;
                } while (std::next_permutation(perm.begin(), perm.end()));
            });
        }
        std::sort(res.begin(), res.end());
    }
    return cache.emplace(key, std::move(res)).first->second;
}

// -------------------------------------------------------------------- action

BraceTree act(const std::vector<int>& perm, const BraceTree& t) {
    if (static_cast<int>(perm.size()) != t.arity())
        throw UsageError("permutation size does not match arity");
    TreeNode root = t.node();
    relabel_rec(root, perm);
    return BraceTree::from_node(root);
}

BrElement act(const std::vector<int>& perm, const BrElement& x) {
    BrElement out;
    out.arity = x.arity;
    for (const auto& [t, c] : x.terms) out.add(act(perm, t), c);
    return out;
}

// ----------------------------------------------------------------- insertion

namespace {

TreeNode* find_label(TreeNode& v, int tag) {
    if (v.tag == tag) return &v;
    for (auto& k : v.kids)
        if (TreeNode* r = find_label(k, tag)) return r;
    return nullptr;
}

int count_vertices(const TreeNode& v) {
    int n = 1;
    for (const auto& k : v.kids) n += count_vertices(k);
    return n;
}

// Rebuilds the guest with the host's former child subtrees attached at the
// chosen planar gaps.  Gaps are consumed in planar order: one before each
// child subtree, one after the last; pieces mapped to one gap keep their
// original order.
TreeNode graft(const TreeNode& gv, int& next_gap,
               const std::vector<std::vector<int>>& at_gap,
               const std::vector<TreeNode>& pieces) {
    TreeNode res;
    res.tag = gv.tag;
    res.edge_id = gv.edge_id;
    int gap = next_gap++;
    for (int p : at_gap[gap]) res.kids.push_back(pieces[p]);
    for (const auto& child : gv.kids) {
        res.kids.push_back(graft(child, next_gap, at_gap, pieces));
        gap = next_gap++;
        for (int p : at_gap[gap]) res.kids.push_back(pieces[p]);
    }
    return res;
}

// Labels after host o_slot guest: guest labels were offset by +1000.
void compose_relabel(TreeNode& v, int slot, int guest_arity) {
    if (v.tag > 1000) v.tag = slot + (v.tag - 1001);
    else if (v.tag > 0) v.tag = (v.tag < slot) ? v.tag : v.tag + guest_arity - 1;
    for (auto& k : v.kids) compose_relabel(k, slot, guest_arity);
}

} // namespace

std::vector<SignedTree> insert_trees(const BraceTree& host, int slot, const BraceTree& guest) {
    if (slot < 1 || slot > host.arity()) throw UsageError("insertion slot out of range");

    TreeNode h = host.node();
    TreeNode g = guest.node();
    int next_edge = 0;
    number_edges(h, next_edge);
    number_edges(g, next_edge);

    std::function<void(TreeNode&)> mark_guest = [&](TreeNode& v) {
        if (v.tag > 0) v.tag += 1000;
        for (auto& k : v.kids) mark_guest(k);
    };
    mark_guest(g);

    TreeNode* site = find_label(h, slot);
    std::vector<TreeNode> pieces = std::move(site->kids);
    site->kids.clear();

    std::vector<SignedTree> out;
    const int npieces = static_cast<int>(pieces.size());
    const int total_gaps = 2 * count_vertices(g) - 1;

    std::vector<int> assign(npieces, 0);
    std::function<void(int, int)> recurse = [&](int idx, int min_gap) {
        if (idx == npieces) {
            std::vector<std::vector<int>> at_gap(total_gaps);
            for (int p = 0; p < npieces; ++p) at_gap[assign[p]].push_back(p);
            int gap_counter = 0;
            TreeNode grafted = graft(g, gap_counter, at_gap, pieces);
            grafted.edge_id = site->edge_id;
            TreeNode result;
            if (site == &h) {
                result = std::move(grafted);
            } else {
                result = h;
                *find_label(result, slot) = std::move(grafted);
            }
            int sign = result_sign(result);
            compose_relabel(result, slot, guest.arity());
            out.push_back({BraceTree::from_node(result), sign});
            return;
        }
        for (int s = min_gap; s < total_gaps; ++s) {
            assign[idx] = s;
            recurse(idx + 1, s);
        }
    };
    recurse(0, 0);
    return out;
}

// -------------------------------------------------------------- differential

std::vector<SignedTree> differential_trees(const BraceTree& t) {
    std::vector<SignedTree> out;
    TreeNode base = t.node();
    int next_edge = 1;          // the new edge gets id 0: it comes first
    number_edges(base, next_edge);

    std::vector<TreeNode*> verts;
    collect_vertices(base, verts);

    const int n_verts = static_cast<int>(verts.size());
    for (int vi = 0; vi < n_verts; ++vi) {
        // re-collect: emit() swaps child vectors and the old pointers into
        // descendant nodes go stale
        verts.clear();
        collect_vertices(base, verts);
        TreeNode* v = verts[vi];
        const int k = static_cast<int>(v->kids.size());
        const int tag = v->tag;
        std::vector<TreeNode> saved = v->kids;

        auto emit = [&](int bot_tag, int top_tag, int a, int s, int gap_for_empty) {
            // Rebuild v as bot with top spliced in; top takes kids a..a+s-1.
            TreeNode top;
            top.tag = top_tag;
            top.edge_id = 0;
            int pos = (s == 0) ? gap_for_empty : a;
            std::vector<TreeNode> bot_kids;
            for (int i = 0; i < pos; ++i) bot_kids.push_back(saved[i]);
            for (int i = a; i < a + s; ++i) top.kids.push_back(saved[i]);
            bot_kids.push_back(std::move(top));
            for (int i = pos + s; i < k; ++i) bot_kids.push_back(saved[i]);
            v->tag = bot_tag;
            v->kids = std::move(bot_kids);
            int sign = result_sign(base);
            out.push_back({BraceTree::from_node(base), sign});
            v->tag = tag;
            v->kids = saved;
        };

        if (tag > 0) {
            // Neutral below, the label moves up.  Blocks of size 0..k-1;
            // an empty block chooses one of the k+1 gaps.
            if (k >= 1) {
                for (int gap = 0; gap <= k; ++gap) emit(0, tag, 0, 0, gap);
                for (int s = 1; s <= k - 1; ++s)
                    for (int a = 0; a + s <= k; ++a) emit(0, tag, a, s, 0);
            }
            // Neutral above: it must absorb at least 2 children.
            for (int s = 2; s <= k; ++s)
                for (int a = 0; a + s <= k; ++a) emit(tag, 0, a, s, 0);
        } else {
            // Splitting a Neutral vertex into two Neutrals; both ends need
            // valence >= 2, and the two placements coincide.
            for (int s = 2; s <= k - 1; ++s)
                for (int a = 0; a + s <= k; ++a) emit(0, 0, a, s, 0);
        }
    }
    return out;
}

// ------------------------------------------------------------------ elements

void BrElement::add(const BraceTree& t, const Rational& c) {
    if (is_zero(c)) return;
    auto [it, inserted] = terms.emplace(t, c);
    if (!inserted) {
        it->second += c;
        if (is_zero(it->second)) terms.erase(it);
    }
}

BrElement make_element(int arity, std::initializer_list<std::pair<BraceTree, Rational>> ts) {
    BrElement e;
    e.arity = arity;
    for (const auto& [t, c] : ts) {
        if (t.arity() != arity) throw UsageError("mixed arities in element");
        e.add(t, c);
    }
    return e;
}

BrElement insert(const BrElement& host, int slot, const BrElement& guest) {
    if (slot < 1 || slot > host.arity) throw UsageError("insertion slot out of range");
    BrElement out;
    out.arity = host.arity + guest.arity - 1;
    for (const auto& [ht, hc] : host.terms)
        for (const auto& [gt, gc] : guest.terms)
            for (const auto& st : insert_trees(ht, slot, gt))
                out.add(st.tree, hc * gc * st.sign);
    return out;
}

BrElement differential(const BrElement& x) {
    BrElement out;
    out.arity = x.arity;
    for (const auto& [t, c] : x.terms)
        for (const auto& st : differential_trees(t))
            out.add(st.tree, c * st.sign);
    return out;
}

} // namespace sforge::br
