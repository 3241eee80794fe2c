#include "sproutforge/ger_word.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <numeric>

#include "sproutforge/errors.hpp"

namespace sforge::ger {

namespace {

int comb_min(const LieComb& c) { return *std::min_element(c.begin(), c.end()); }

// ger degree of a single Lie factor, mod 2.
int factor_parity(const LieComb& c) { return static_cast<int>(c.size() + 1) % 2; }

} // namespace

bool comb_is_normal(const LieComb& c) {
    if (c.empty()) return false;
    return *std::max_element(c.begin(), c.end()) == c.back();
}

GerWord GerWord::from_factors(const std::vector<LieComb>& factors) {
    std::vector<int> seen;
    for (const auto& f : factors) {
        if (!comb_is_normal(f)) throw UsageError("factor is not a normal comb");
        for (int i : f) seen.push_back(i);
    }
    std::sort(seen.begin(), seen.end());
    for (std::size_t i = 0; i < seen.size(); ++i)
        if (seen[i] != static_cast<int>(i) + 1)
            throw UsageError("factors do not partition 1..n");
    for (std::size_t i = 1; i < factors.size(); ++i)
        if (comb_min(factors[i - 1]) > comb_min(factors[i]))
            throw UsageError("factors not sorted by minimal index");

    GerWord w;
    w.arity_ = static_cast<int>(seen.size());
    w.nfactors_ = static_cast<int>(factors.size());
    w.enc_.push_back(static_cast<char>(factors.size()));
    for (const auto& f : factors) {
        w.enc_.push_back(static_cast<char>(f.size()));
        for (int i : f) w.enc_.push_back(static_cast<char>(i));
    }
    return w;
}

std::vector<LieComb> GerWord::factors() const {
    std::vector<LieComb> out;
    std::size_t pos = 1;
    int nf = static_cast<unsigned char>(enc_[0]);
    for (int f = 0; f < nf; ++f) {
        int len = static_cast<unsigned char>(enc_[pos++]);
        LieComb c(len);
        for (int i = 0; i < len; ++i) c[i] = static_cast<unsigned char>(enc_[pos++]);
        out.push_back(std::move(c));
    }
    return out;
}

std::pair<GerWord, int> make_word(std::vector<LieComb> factors) {
    // insertion sort by minimal index, counting odd-odd transpositions
    int sign = 1;
    for (std::size_t i = 1; i < factors.size(); ++i) {
        for (std::size_t j = i; j > 0 && comb_min(factors[j]) < comb_min(factors[j - 1]); --j) {
            if (factor_parity(factors[j]) && factor_parity(factors[j - 1])) sign = -sign;
            std::swap(factors[j], factors[j - 1]);
        }
    }
    return {GerWord::from_factors(factors), sign};
}

// ----------------------------------------------------------------- text form

std::string word_text(const GerWord& w) {
    auto fs = w.factors();
    std::stable_partition(fs.begin(), fs.end(),
                          [](const LieComb& c) { return c.size() == 1; });
    std::string out;
    std::function<std::string(const LieComb&, std::size_t)> brk =
        [&](const LieComb& c, std::size_t from) -> std::string {
        if (from + 1 == c.size()) return "b" + std::to_string(c[from]);
        return "{b" + std::to_string(c[from]) + "," + brk(c, from + 1) + "}";
    };
    for (std::size_t i = 0; i < fs.size(); ++i) {
        bool bare = fs[i].size() == 1;
        if (i && !out.empty() && bare) out += " ";
        out += bare ? "b" + std::to_string(fs[i][0]) : brk(fs[i], 0);
    }
    return out;
}

namespace {

struct WordParser {
    const std::string& s;
    std::size_t pos = 0;

    void skip_ws() { while (pos < s.size() && s[pos] == ' ') ++pos; }

    int generator() {
        skip_ws();
        if (pos >= s.size() || s[pos] != 'b')
            throw FormatError("word text: expected generator at offset " +
                              std::to_string(pos) + " in '" + s + "'");
        ++pos;
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) throw FormatError("word text: generator index missing in '" + s + "'");
        return std::stoi(s.substr(start, pos - start));
    }

    // right-nested bracket {bi, rest}
    void bracket(LieComb& out) {
        skip_ws();
        if (pos >= s.size() || s[pos] != '{')
            throw FormatError("word text: expected '{' in '" + s + "'");
        ++pos;
        out.push_back(generator());
        skip_ws();
        if (pos >= s.size() || s[pos] != ',')
            throw FormatError("word text: expected ',' in '" + s + "'");
        ++pos;
        skip_ws();
        if (pos < s.size() && s[pos] == '{') bracket(out);
        else out.push_back(generator());
        skip_ws();
        if (pos >= s.size() || s[pos] != '}')
            throw FormatError("word text: expected '}' in '" + s + "'");
        ++pos;
    }
};

} // namespace

GerWord parse_word(const std::string& text) {
    WordParser p{text};
    std::vector<LieComb> factors;
    while (true) {
        p.skip_ws();
        if (p.pos >= p.s.size()) break;
        LieComb c;
        if (p.s[p.pos] == '{') p.bracket(c);
        else c.push_back(p.generator());
        if (!comb_is_normal(c))
            throw FormatError("word text: factor not in normal form (maximal index must be "
                              "innermost) in '" + text + "'");
        factors.push_back(std::move(c));
    }
    if (factors.empty()) throw FormatError("word text: empty word");
    std::sort(factors.begin(), factors.end(),
              [](const LieComb& a, const LieComb& b) { return comb_min(a) < comb_min(b); });
    return GerWord::from_factors(factors);
}

// --------------------------------------------------------------- enumeration

namespace {

void set_partitions(int n, std::vector<std::vector<int>>& cur,
                    const std::function<void(const std::vector<std::vector<int>>&)>& fn,
                    int next = 1) {
    if (next > n) { fn(cur); return; }
    // index-based: recursion grows and shrinks cur behind the loop
    const std::size_t stable = cur.size();
    for (std::size_t bi = 0; bi < stable; ++bi) {
        cur[bi].push_back(next);
        set_partitions(n, cur, fn, next + 1);
        cur[bi].pop_back();
    }
    cur.push_back({next});
    set_partitions(n, cur, fn, next + 1);
    cur.pop_back();
}

} // namespace

const std::vector<GerWord>& enumerate_basis(int arity) {
    static std::map<int, std::vector<GerWord>> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(arity);
    if (it != cache.end()) return it->second;
    if (arity < 1) throw UsageError("arity must be >= 1");

    std::vector<GerWord> res;
    std::vector<std::vector<int>> cur;
    set_partitions(arity, cur, [&](const std::vector<std::vector<int>>& blocks) {
        // per block: all combs = permutations of the non-maximal indices
        std::vector<std::vector<LieComb>> choices;
        for (const auto& b : blocks) {
            std::vector<int> rest(b.begin(), b.end() - 0);
            int mx = *std::max_element(rest.begin(), rest.end());
            rest.erase(std::find(rest.begin(), rest.end(), mx));
            std::sort(rest.begin(), rest.end());
            std::vector<LieComb> combs;
            do {
                LieComb c = rest;
                c.push_back(mx);
                combs.push_back(std::move(c));
            } while (std::next_permutation(rest.begin(), rest.end()));
            choices.push_back(std::move(combs));
        }
        std::vector<std::size_t> idx(choices.size(), 0);
        while (true) {
            std::vector<LieComb> factors;
            for (std::size_t i = 0; i < choices.size(); ++i) factors.push_back(choices[i][idx[i]]);
            std::sort(factors.begin(), factors.end(),
                      [](const LieComb& a, const LieComb& b) { return comb_min(a) < comb_min(b); });
            res.push_back(GerWord::from_factors(factors));
            std::size_t p = 0;
            while (p < idx.size() && ++idx[p] == choices[p].size()) idx[p++] = 0;
            if (p == idx.size()) break;
        }
    });
    std::sort(res.begin(), res.end());
    return cache.emplace(arity, std::move(res)).first->second;
}

// --------------------------------------------------------------- Lie algebra

namespace {

using CombSum = std::map<LieComb, long long>;

void acc(CombSum& m, const LieComb& c, long long v) {
    if (v == 0) return;
    auto [it, ins] = m.emplace(c, v);
    if (!ins) {
        it->second += v;
        if (it->second == 0) m.erase(it);
    }
}

} // namespace

namespace {

// Classical Lie rewriting on even generators: [x,y] = -[y,x] and
// [[h,x'],y] = [h,[x',y]] - [x',[h,y]], no grading anywhere.
const CombSum& plain_bracket(const LieComb& a, const LieComb& b) {
    static std::map<std::pair<LieComb, LieComb>, CombSum> memo;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);

    std::function<const CombSum&(const LieComb&, const LieComb&)> go =
        [&](const LieComb& x, const LieComb& y) -> const CombSum& {
        auto key = std::make_pair(x, y);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;

        CombSum out;
        int mx = *std::max_element(x.begin(), x.end());
        int my = *std::max_element(y.begin(), y.end());
        if (mx > my) {
            for (const auto& [c, v] : go(y, x)) acc(out, c, -v);
        } else if (x.size() == 1) {
            LieComb c;
            c.push_back(x[0]);
            c.insert(c.end(), y.begin(), y.end());
            acc(out, c, 1);
        } else {
            LieComb head{x[0]};
            LieComb rest(x.begin() + 1, x.end());
            for (const auto& [c, v] : go(rest, y)) {
                LieComb pre;
                pre.push_back(x[0]);
                pre.insert(pre.end(), c.begin(), c.end());
                acc(out, pre, v);
            }
            const CombSum hy = go(head, y);   // copy: go() can grow memo
            for (const auto& [c, v] : hy)
                for (const auto& [c2, v2] : go(rest, c)) acc(out, c2, -v * v2);
        }
        return memo.emplace(std::move(key), std::move(out)).first->second;
    };
    return go(a, b);
}

// Orientation of a comb: the sign sorting its index sequence ascending.
int comb_orientation(const LieComb& c) {
    int inv = 0;
    for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = i + 1; j < c.size(); ++j)
            if (c[i] > c[j]) ++inv;
    return (inv % 2) ? -1 : 1;
}

// Sign merging the ascending index sets of a and b into one ascending run.
int shuffle_sign(const LieComb& a, const LieComb& b) {
    int cross = 0;
    for (int s : a)
        for (int t : b)
            if (s > t) ++cross;
    return (cross % 2) ? -1 : 1;
}


} // namespace

// The factor bracket of the suspended Lie part: the untwisted bracket
// corrected by the comb orientations, the index-set shuffle sign, and the
// length twist.  These corrections implement the sgn-representation tensor
// of the suspension on the comb basis.
const CombSum& lie_bracket(const LieComb& a, const LieComb& b) {
    static std::map<std::pair<LieComb, LieComb>, CombSum> memo;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto key = std::make_pair(a, b);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    CombSum out;
    int base = comb_orientation(a) * comb_orientation(b) * shuffle_sign(a, b);
    for (const auto& [c, v] : plain_bracket(a, b)) acc(out, c, base * comb_orientation(c) * v);
    return memo.emplace(std::move(key), std::move(out)).first->second;
}

std::map<LieComb, long long> normalize_comb(const std::vector<int>& seq) {
    CombSum out;
    if (seq.size() == 1) {
        out[{seq[0]}] = 1;
        return out;
    }
    std::vector<int> rest(seq.begin() + 1, seq.end());
    LieComb head{seq[0]};
    for (const auto& [c, v] : normalize_comb(rest))
        for (const auto& [c2, v2] : lie_bracket(head, c)) acc(out, c2, v * v2);
    return out;
}

// -------------------------------------------------------------------- action

GerSum act(const std::vector<int>& perm, const GerWord& w) {
    if (static_cast<int>(perm.size()) != w.arity())
        throw UsageError("permutation size does not match arity");
    std::vector<std::vector<std::pair<long long, LieComb>>> options;
    for (auto f : w.factors()) {
        for (int& i : f) i = perm[i - 1];
        std::vector<std::pair<long long, LieComb>> alt;
        for (const auto& [c, v] : normalize_comb(f)) alt.emplace_back(v, c);
        options.push_back(std::move(alt));
    }
    GerSum out;
    std::vector<std::size_t> idx(options.size(), 0);
    while (true) {
        long long coeff = 1;
        std::vector<LieComb> factors;
        for (std::size_t i = 0; i < options.size(); ++i) {
            coeff *= options[i][idx[i]].first;
            factors.push_back(options[i][idx[i]].second);
        }
        auto [word, sgn] = make_word(std::move(factors));
        Rational c = Rational(static_cast<long>(coeff * sgn));
        auto [it, ins] = out.emplace(word, c);
        if (!ins) {
            it->second += c;
            if (is_zero(it->second)) out.erase(it);
        }
        std::size_t p = 0;
        while (p < idx.size() && ++idx[p] == options[p].size()) idx[p++] = 0;
        if (p == idx.size()) break;
    }
    return out;
}

// --------------------------------------------------------------- composition

namespace {

using FactorList = std::vector<LieComb>;
// unsorted factor lists with integer coefficients
using WordSum = std::vector<std::pair<long long, FactorList>>;

int list_parity(const FactorList& fs) {
    int p = 0;
    for (const auto& f : fs) p ^= factor_parity(f);
    return p;
}

// Ger bracket of two (unsorted) products of Lie factors, expanded with the
// Leibniz rule {uv,w} = u{v,w} + (-1)^{|v|(|w|-1)}{u,w}v, the shifted
// antisymmetry {x,y} = -(-1)^{(|x|+1)(|y|+1)}{y,x}, and lie_bracket on
// single factors.
WordSum gbracket(const FactorList& x, const FactorList& y) {
    WordSum out;
    if (x.size() >= 2) {
        FactorList rest(x.begin() + 1, x.end());
        // f1 {rest, y}
        for (auto& [c, p] : gbracket(rest, y)) {
            FactorList withf;
            withf.push_back(x[0]);
            withf.insert(withf.end(), p.begin(), p.end());
            out.push_back({c, std::move(withf)});
        }
        // (-1)^{|rest|(|y|-1)} {f1, y} rest
        int s = (list_parity(rest) && (list_parity(y) ^ 1)) ? -1 : 1;
        for (auto& [c, p] : gbracket({x[0]}, y)) {
            FactorList pr = std::move(p);
            pr.insert(pr.end(), rest.begin(), rest.end());
            out.push_back({s * c, std::move(pr)});
        }
        return out;
    }
    if (y.size() >= 2) {
        // flip with the shifted antisymmetry, then Leibniz applies to y
        int s = ((list_parity(x) ^ 1) && (list_parity(y) ^ 1)) ? 1 : -1;
        for (auto& [c, p] : gbracket(y, x)) out.push_back({s * c, std::move(p)});
        return out;
    }
    for (const auto& [c, v] : lie_bracket(x[0], y[0])) out.push_back({v, {c}});
    return out;
}

// b_slot := V inside the binary comb structure of seq
WordSum subst_slot(const LieComb& seq, int slot, const FactorList& v) {
    if (seq.size() == 1) {
        if (seq[0] != slot) throw UsageError("slot generator missing from factor");
        return {{1, v}};
    }
    LieComb rest(seq.begin() + 1, seq.end());
    if (seq[0] == slot) return gbracket(v, {rest});
    WordSum out;
    bool in_rest = std::find(rest.begin(), rest.end(), slot) != rest.end();
    if (!in_rest) throw UsageError("slot generator missing from factor");
    for (const auto& [c, q] : subst_slot(rest, slot, v))
        for (auto& [c2, q2] : gbracket({{seq[0]}}, q)) out.push_back({c * c2, std::move(q2)});
    return out;
}

} // namespace

GerSum compose(const GerWord& host, int slot, const GerWord& guest) {
    if (slot < 1 || slot > host.arity()) throw UsageError("composition slot out of range");
    const int m = guest.arity();

    // standard operadic renumbering; both shifts are monotone so factor
    // normal forms survive unchanged
    std::vector<LieComb> hfs = host.factors();
    for (auto& f : hfs)
        for (int& i : f)
            if (i > slot) i += m - 1;
    std::vector<LieComb> gfs = guest.factors();
    for (auto& f : gfs)
        for (int& i : f) i += slot - 1;

    LieComb target;
    std::size_t target_at = 0;
    for (std::size_t i = 0; i < hfs.size(); ++i)
        if (std::find(hfs[i].begin(), hfs[i].end(), slot) != hfs[i].end()) {
            target = hfs[i];
            target_at = i;
        }
    if (target.empty()) throw UsageError("slot not found in host word");

    WordSum expanded;
    if (target.size() == 1) {
        expanded.push_back({1, gfs});
    } else {
        expanded = subst_slot(target, slot, gfs);
    }

    // Koszul transport of the guest to the substitution site: it crosses
    // the factors left of the target and the generators above the slot in
    // the target comb.
    int travel = 0;
    for (std::size_t i = 0; i < target_at; ++i) travel += factor_parity(hfs[i]);
    for (std::size_t i = 0; i < target.size(); ++i)
        if (target[i] == slot) { travel += static_cast<int>(i); break; }
    int list_par_g = 0;
    for (const auto& f : gfs) list_par_g ^= factor_parity(f);
    int transport = (list_par_g && (travel % 2)) ? -1 : 1;

    GerSum out;
    for (auto& [c, prod] : expanded) {
        if (c == 0) continue;
        c *= transport;
        // the expansion replaces the target factor in place
        FactorList spliced(hfs.begin(), hfs.begin() + target_at);
        spliced.insert(spliced.end(), prod.begin(), prod.end());
        spliced.insert(spliced.end(), hfs.begin() + target_at + 1, hfs.end());
        auto [word, sgn] = make_word(std::move(spliced));
        Rational coeff = Rational(static_cast<long>(c * sgn));
        auto [it, ins] = out.emplace(word, coeff);
        if (!ins) {
            it->second += coeff;
            if (is_zero(it->second)) out.erase(it);
        }
    }
    return out;
}

// -------------------------------------------------------------- cocomposition

const std::vector<CocomposeEntry>& cocompose(const GerWord& dual_word,
                                             int host_arity, int slot, int guest_arity) {
    if (host_arity < 1 || guest_arity < 1 || slot < 1 || slot > host_arity)
        throw UsageError("bad cocomposition split");
    if (host_arity + guest_arity - 1 != dual_word.arity())
        throw UsageError("cocomposition split does not match word arity");

    using Block = std::map<GerWord, std::vector<CocomposeEntry>>;
    static std::map<std::tuple<int, int, int>, Block> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);

    auto key = std::make_tuple(host_arity, slot, guest_arity);
    auto it = cache.find(key);
    if (it == cache.end()) {
        Block block;
        for (const auto& u : enumerate_basis(host_arity))
            for (const auto& v : enumerate_basis(guest_arity))
                for (const auto& [w, c] : compose(u, slot, v))
                    block[w].push_back({c, u, v});
        it = cache.emplace(key, std::move(block)).first;
    }
    static const std::vector<CocomposeEntry> empty;
    auto hit = it->second.find(dual_word);
    return hit == it->second.end() ? empty : hit->second;
}

} // namespace sforge::ger
