#include "sproutforge/serialize.hpp"

#include <cstdint>
#include <fstream>
#include <mutex>
#include <sstream>

#include "sproutforge/errors.hpp"
#include "sproutforge/sprout_engine.hpp"

namespace sforge::io {

namespace {

std::uint64_t fnv1a(const std::string& s, std::uint64_t h = 1469598103934665603ULL) {
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string element_lines(const conv::ConvElement& e) {
    std::ostringstream os;
    for (const auto& [arity, m] : e.comp)
        for (const auto& [k, c] : m)
            os << "term " << rat_str(c) << " " << br::tree_text(k.tree) << " "
               << ger::word_text(k.word) << "\n";
    return os.str();
}

} // namespace

const std::string& convention_fingerprint() {
    static std::string fp = [] {
        std::ostringstream os;
        for (int arity = 1; arity <= 3; ++arity) {
            for (int nu = 0; nu <= 2; ++nu) {
                for (const auto& t : br::enumerate_basis(arity, nu - arity + 1)) {
                    os << "d " << br::tree_text(t) << " =";
                    for (const auto& st : br::differential_trees(t))
                        os << " " << st.sign << "*" << br::tree_text(st.tree);
                    os << "\n";
                }
            }
        }
        for (int k = 2; k <= 3; ++k)
            for (int m = 2; m + k <= 5; ++m)
                for (const auto& u : ger::enumerate_basis(k))
                    for (const auto& v : ger::enumerate_basis(m))
                        for (int slot = 1; slot <= k; ++slot) {
                            os << "c " << ger::word_text(u) << " o" << slot << " "
                               << ger::word_text(v) << " =";
                            for (const auto& [w, c] : ger::compose(u, slot, v))
                                os << " " << rat_str(c) << "*" << ger::word_text(w);
                            os << "\n";
                        }
        os << element_lines(engine::seed_paper());
        std::uint64_t h = fnv1a(os.str());
        std::ostringstream hex;
        hex << std::hex;
        for (int i = 15; i >= 0; --i) hex << "0123456789abcdef"[(h >> (4 * i)) & 0xF];
        return hex.str();
    }();
    return fp;
}

std::string serialize_sprout(const SproutFile& f) {
    std::ostringstream os;
    os << "sprout-forge " << f.format_version << "\n";
    os << "pair " << f.pair << "\n";
    os << "order " << f.order << "\n";
    os << "convention " << f.fingerprint << "\n";
    os << element_lines(f.element);
    return os.str();
}

SproutFile parse_sprout(const std::string& text) {
    SproutFile f;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    bool saw_version = false, saw_pair = false, saw_order = false, saw_conv = false;
    std::vector<conv::RawTerm> raw;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string key;
        ls >> key;
        auto fail = [&](const std::string& what) {
            throw FormatError("sprout file line " + std::to_string(lineno) + ": " + what);
        };
        if (key == "sprout-forge") {
            if (!(ls >> f.format_version) || f.format_version != 1) fail("unsupported version");
            saw_version = true;
        } else if (key == "pair") {
            ls >> f.pair;
            if (f.pair != "ger-br") fail("unknown operad pair '" + f.pair + "'");
            saw_pair = true;
        } else if (key == "order") {
            if (!(ls >> f.order) || f.order < 1) fail("bad order");
            saw_order = true;
        } else if (key == "convention") {
            ls >> f.fingerprint;
            if (f.fingerprint != convention_fingerprint())
                fail("convention fingerprint mismatch: file has '" + f.fingerprint +
                     "', this build is '" + convention_fingerprint() + "'");
            saw_conv = true;
        } else if (key == "term") {
            std::string coeff, tree;
            if (!(ls >> coeff >> tree)) fail("malformed term");
            std::string word;
            std::getline(ls, word);
            std::size_t at = word.find_first_not_of(' ');
            if (at == std::string::npos) fail("term is missing its word");
            word = word.substr(at);
            try {
                raw.push_back({parse_rational(coeff), br::parse_tree(tree), ger::parse_word(word)});
            } catch (const FormatError& e) {
                fail(e.what());
            }
            if (raw.back().tree.arity() != raw.back().word.arity())
                fail("tree and word arities differ");
        } else {
            fail("unknown directive '" + key + "'");
        }
    }
    if (!saw_version || !saw_pair || !saw_order || !saw_conv)
        throw FormatError("sprout file is missing a header line "
                          "(sprout-forge / pair / order / convention)");
    f.element = conv::av_normalize(raw);
    return f;
}

SproutFile read_sprout_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open sprout file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_sprout(buf.str());
}

void write_sprout_file(const std::string& path, const SproutFile& f) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ResourceError("cannot write sprout file '" + path + "'");
    out << serialize_sprout(f);
}

} // namespace sforge::io
