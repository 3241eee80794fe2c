#include "sproutforge/render.hpp"

#include <sstream>

#include "sproutforge/errors.hpp"

namespace sforge::io {

namespace {

struct Layout {
    std::vector<double> x, y;   // per preorder vertex
    std::vector<int> tag;
    std::vector<int> parent;
    double width = 0, height = 0;
};

int walk(const br::TreeNode& v, Layout& lo, int parent, int depth, double& cursor) {
    int id = static_cast<int>(lo.x.size());
    lo.x.push_back(0);
    lo.y.push_back(depth);
    lo.tag.push_back(v.tag);
    lo.parent.push_back(parent);
    if (v.kids.empty()) {
        lo.x[id] = cursor;
        cursor += 1;
    } else {
        double first = 0, last = 0;
        for (std::size_t i = 0; i < v.kids.size(); ++i) {
            int child = walk(v.kids[i], lo, id, depth + 1, cursor);
            if (i == 0) first = lo.x[child];
            last = lo.x[child];
        }
        lo.x[id] = (first + last) / 2;
    }
    return id;
}

Layout layout_tree(const br::BraceTree& t) {
    Layout lo;
    double cursor = 0;
    br::TreeNode root = t.node();
    walk(root, lo, -1, 0, cursor);
    for (double& v : lo.x) lo.width = std::max(lo.width, v);
    for (double& v : lo.y) lo.height = std::max(lo.height, v);
    return lo;
}

std::string tikz_term(const Rational& c, const br::BraceTree& t, const ger::GerWord& w) {
    Layout lo = layout_tree(t);
    std::ostringstream os;
    os << "\\begin{tikzpicture}[scale=0.7]\n";
    os << "\\tikzstyle{lab}=[circle, draw, minimum size=5, inner sep=1]\n";
    os << "\\tikzstyle{n}=[circle, draw, fill, minimum size=3]\n";
    os << "\\node[circle, draw, fill, minimum size=0, inner sep=1] (r) at ("
       << lo.x[0] << ",-0.7) {};\n";
    for (std::size_t i = 0; i < lo.x.size(); ++i) {
        if (lo.tag[i] == 0)
            os << "\\node[n] (v" << i << ") at (" << lo.x[i] << "," << lo.y[i] << ") {};\n";
        else
            os << "\\node[lab] (v" << i << ") at (" << lo.x[i] << "," << lo.y[i] << ") {$"
               << lo.tag[i] << "$};\n";
    }
    os << "\\draw (r) edge (v0);\n";
    for (std::size_t i = 1; i < lo.x.size(); ++i)
        os << "\\draw (v" << lo.parent[i] << ") edge (v" << i << ");\n";
    os << "\\node at (" << lo.width + 2.2 << "," << lo.height / 2 << ") {$" << rat_str(c)
       << " \\;\\otimes\\; \\mathrm{" << ger::word_text(w) << "}$};\n";
    os << "\\end{tikzpicture}\n";
    return os.str();
}

std::string svg_term(const Rational& c, const br::BraceTree& t, const ger::GerWord& w,
                     double yoff) {
    Layout lo = layout_tree(t);
    const double ux = 42, uy = 46, r = 11;
    auto X = [&](double v) { return 30 + v * ux; };
    auto Y = [&](double v) { return yoff + 24 + (lo.height - v) * uy; };
    std::ostringstream os;
    os << "<g>\n";
    os << "<line x1='" << X(lo.x[0]) << "' y1='" << Y(-0.6) << "' x2='" << X(lo.x[0])
       << "' y2='" << Y(0) << "' stroke='black'/>\n";
    os << "<circle cx='" << X(lo.x[0]) << "' cy='" << Y(-0.6) << "' r='2.5' fill='black'/>\n";
    for (std::size_t i = 1; i < lo.x.size(); ++i)
        os << "<line x1='" << X(lo.x[lo.parent[i]]) << "' y1='" << Y(lo.y[lo.parent[i]])
           << "' x2='" << X(lo.x[i]) << "' y2='" << Y(lo.y[i]) << "' stroke='black'/>\n";
    for (std::size_t i = 0; i < lo.x.size(); ++i) {
        if (lo.tag[i] == 0) {
            os << "<circle cx='" << X(lo.x[i]) << "' cy='" << Y(lo.y[i])
               << "' r='5' fill='black'/>\n";
        } else {
            os << "<circle cx='" << X(lo.x[i]) << "' cy='" << Y(lo.y[i]) << "' r='" << r
               << "' fill='white' stroke='black'/>\n";
            os << "<text x='" << X(lo.x[i]) << "' y='" << Y(lo.y[i]) + 4
               << "' text-anchor='middle' font-size='12'>" << lo.tag[i] << "</text>\n";
        }
    }
    os << "<text x='" << X(lo.width) + 46 << "' y='" << yoff + 24 + lo.height * uy / 2
       << "' font-size='14'>" << rat_str(c) << " &#8855; " << ger::word_text(w) << "</text>\n";
    os << "</g>\n";
    return os.str();
}

double term_height(const br::BraceTree& t) { return (layout_tree(t).height + 1.6) * 46; }

} // namespace

std::string render_sprout(const SproutFile& f, const std::string& format) {
    std::string body = serialize_sprout(f);
    std::ostringstream os;
    if (format == "tikz") {
        std::istringstream lines(body);
        std::string line;
        while (std::getline(lines, line)) os << "% " << line << "\n";
        os << "\\documentclass{article}\n\\usepackage{tikz}\n\\begin{document}\n";
        for (const auto& [arity, m] : f.element.comp)
            for (const auto& [k, c] : m) os << tikz_term(c, k.tree, k.word) << "\n";
        os << "\\end{document}\n";
        return os.str();
    }
    if (format == "svg") {
        double total = 20;
        for (const auto& [arity, m] : f.element.comp)
            for (const auto& [k, c] : m) total += term_height(k.tree);
        os << "<svg xmlns='http://www.w3.org/2000/svg' width='640' height='"
           << static_cast<int>(total) << "'>\n";
        os << "<!--sprout\n" << body << "-->\n";
        double yoff = 0;
        for (const auto& [arity, m] : f.element.comp)
            for (const auto& [k, c] : m) {
                os << svg_term(c, k.tree, k.word, yoff);
                yoff += term_height(k.tree);
            }
        os << "</svg>\n";
        return os.str();
    }
    throw UsageError("unknown render format '" + format + "' (expected tikz or svg)");
}

SproutFile parse_rendered(const std::string& text) {
    std::ostringstream recovered;
    if (text.rfind("<svg", 0) == 0) {
        auto a = text.find("<!--sprout\n");
        auto b = text.find("-->", a);
        if (a == std::string::npos || b == std::string::npos)
            throw FormatError("rendering does not embed a sprout block");
        recovered << text.substr(a + 11, b - a - 11);
    } else {
        std::istringstream lines(text);
        std::string line;
        while (std::getline(lines, line))
            if (line.rfind("% ", 0) == 0) recovered << line.substr(2) << "\n";
    }
    return parse_sprout(recovered.str());
}

} // namespace sforge::io
