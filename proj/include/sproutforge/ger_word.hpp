#ifndef SPROUTFORGE_GER_WORD_HPP
#define SPROUTFORGE_GER_WORD_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "sproutforge/rational.hpp"

namespace sforge::ger {

// Normal-form Lie word over distinct generators: the right-nested comb
// {b_{j1}, {b_{j2}, ... {b_{j_{L-1}}, b_M}...}} stored as the index
// sequence (j1, ..., j_{L-1}, M) with M the maximal index.  Such combs
// form the standard (L-1)!-element basis of the multilinear Lie part.
using LieComb = std::vector<int>;

bool comb_is_normal(const LieComb& c);

// Monomial of Ger(n): commutative product of Lie factors over a partition
// of {1..n}, factors stored sorted by minimal generator index.
class GerWord {
public:
    GerWord() = default;
    static GerWord from_factors(const std::vector<LieComb>& factors);

    const std::string& encoding() const { return enc_; }
    std::vector<LieComb> factors() const;
    int arity() const { return arity_; }
    int factor_count() const { return nfactors_; }
    int ger_degree() const { return -(arity_ - nfactors_); }
    int shifted_degree() const { return ger_degree() + 2 * (arity_ - 1); }

    bool operator<(const GerWord& o) const { return enc_ < o.enc_; }
    bool operator==(const GerWord& o) const { return enc_ == o.enc_; }
    bool operator!=(const GerWord& o) const { return enc_ != o.enc_; }

private:
    std::string enc_;
    int arity_ = 0;
    int nfactors_ = 0;
};

using GerSum = std::map<GerWord, Rational>;

// Display form: singleton factors first, e.g. "b1 b2", "b2{b1,b3}",
// "{b1,{b2,b3}}".  parse_word requires normal form (exact round trips).
std::string word_text(const GerWord& w);
GerWord parse_word(const std::string& text);

// All n! normal-form words of arity n, in encoding order.  Cached.
const std::vector<GerWord>& enumerate_basis(int arity);

// Sorts Lie factors by minimal index; the returned sign is the Koszul sign
// of the reordering (brackets are odd).
std::pair<GerWord, int> make_word(std::vector<LieComb> factors);

// {a, b} of two normal combs on disjoint index sets, expanded in the comb
// basis.  Lie bracket has degree -1; generators sit in degree 0.
const std::map<LieComb, long long>& lie_bracket(const LieComb& a, const LieComb& b);

// Normal form of the right-nested sequence {s0,{s1,...}} for an arbitrary
// index order (used after relabelings).
std::map<LieComb, long long> normalize_comb(const std::vector<int>& seq);

// Relabels generators b_i -> b_{perm[i-1]} and expands back into the
// normal-form basis with exact Koszul signs.
GerSum act(const std::vector<int>& perm, const GerWord& w);

// Operadic composition: substitutes the guest for b_slot, expands with the
// Leibniz rule {uv,w} = u{v,w} + (-1)^{|v|(|w|-1)}{u,w}v, antisymmetry and
// Jacobi, and renumbers by the standard shift.
GerSum compose(const GerWord& host, int slot, const GerWord& guest);

// Transpose of compose on the enumerated bases: all (coeff, host, guest)
// with dual_word appearing in compose(host, slot, guest).  Blocks are
// computed lazily and memoized.
struct CocomposeEntry {
    Rational coeff;
    GerWord host;
    GerWord guest;
};
const std::vector<CocomposeEntry>& cocompose(const GerWord& dual_word,
                                             int host_arity, int slot, int guest_arity);

} // namespace sforge::ger

#endif
