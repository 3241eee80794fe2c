#include "doctest.h"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "sproutforge/config.hpp"
#include "sproutforge/render.hpp"
#include "sproutforge/selftest.hpp"
#include "sproutforge/serialize.hpp"
#include "sproutforge/sprout_engine.hpp"

using namespace sforge;
using namespace sforge::io;

namespace {

SproutFile seed_file() {
    SproutFile f;
    f.order = 2;
    f.fingerprint = convention_fingerprint();
    f.element = engine::seed_paper();
    return f;
}

} // namespace

TEST_CASE("sprout files round trip exactly") {
    SproutFile f = seed_file();
    std::string text = serialize_sprout(f);
    SproutFile back = parse_sprout(text);
    CHECK(back.order == f.order);
    CHECK(back.element == f.element);
    CHECK(serialize_sprout(back) == text);

    auto step = engine::extend(f.element, 2);
    SproutFile g;
    g.order = 3;
    g.fingerprint = convention_fingerprint();
    g.element = step.result;
    CHECK(parse_sprout(serialize_sprout(g)).element == g.element);
}

TEST_CASE("fingerprint is stable and protects against convention drift") {
    CHECK(convention_fingerprint() == convention_fingerprint());
    CHECK(convention_fingerprint().size() == 16);

    SproutFile f = seed_file();
    std::string text = serialize_sprout(f);
    std::string tampered = text;
    auto at = tampered.find("convention ");
    tampered[at + 11] = tampered[at + 11] == '0' ? '1' : '0';
    CHECK_THROWS_AS(parse_sprout(tampered), FormatError);
}

TEST_CASE("parse failures name the offending line") {
    CHECK_THROWS_AS(parse_sprout("order 2\n"), FormatError);
    std::string text = serialize_sprout(seed_file());
    CHECK_THROWS_AS(parse_sprout(text + "term 1/0 r(1(2)) b1 b2\n"), FormatError);
    CHECK_THROWS_AS(parse_sprout(text + "term 1 r(•(1)) {b1,b2}\n"), FormatError);
    CHECK_THROWS_AS(parse_sprout(text + "mystery 3\n"), FormatError);
    try {
        parse_sprout(text + "term x r(1(2)) b1 b2\n");
        FAIL("expected a format error");
    } catch (const FormatError& e) {
        CHECK(std::string(e.what()).find("line") != std::string::npos);
    }
}

TEST_CASE("renderings embed the sprout and parse back") {
    SproutFile f = seed_file();
    for (const char* format : {"tikz", "svg"}) {
        std::string text = render_sprout(f, format);
        SproutFile back = parse_rendered(text);
        CHECK(back.element == f.element);
        CHECK(back.order == f.order);
    }
    // one drawing per term, first is the 2-chain with its word
    std::string svg = render_sprout(f, "svg");
    std::size_t count = 0;
    for (std::size_t at = svg.find("<g>"); at != std::string::npos; at = svg.find("<g>", at + 1))
        ++count;
    CHECK(count == f.element.term_count());
    // the first drawing is the 2-chain with caption b1 b2
    CHECK(svg.find("b1 b2") != std::string::npos);
    CHECK(svg.find("1 &#8855; b1 b2") < svg.find("1/2 &#8855; {b1,b2}"));

    SproutFile empty;
    empty.order = 1;
    empty.fingerprint = convention_fingerprint();
    std::string none = render_sprout(empty, "svg");
    CHECK(none.find("<g>") == std::string::npos);
    CHECK_THROWS_AS(render_sprout(f, "png"), UsageError);
}

TEST_CASE("config parsing") {
    RunConfig cfg;
    apply_key(cfg, "arity_bound", "5");
    CHECK(cfg.arity_bound == 5);
    apply_key(cfg, "pivot_rule", "first-nonzero");
    CHECK(cfg.pivot() == linalg::PivotRule::first_nonzero);
    CHECK_THROWS_AS(apply_key(cfg, "zzz", "1"), UsageError);
    CHECK_THROWS_AS(apply_key(cfg, "report_format", "yaml"), UsageError);
    CHECK_THROWS_AS(apply_key(cfg, "workers", "x"), UsageError);

    setenv("SPROUT_FORGE_ARITY_BOUND", "7", 1);
    RunConfig cfg2 = load_config("");
    CHECK(cfg2.arity_bound == 7);
    unsetenv("SPROUT_FORGE_ARITY_BOUND");
}

TEST_CASE("selftest passes on a healthy build") {
    auto rep = run_selftest();
    for (const auto& c : rep.checks) {
        INFO(c.name);
        CHECK(c.ok);
    }
    CHECK(rep.fingerprint == convention_fingerprint());
}

#ifdef SPROUT_FORGE_BIN
TEST_CASE("CLI exit-code contract") {
    std::string bin = SPROUT_FORGE_BIN;
    auto run = [&](const std::string& args) {
        int rc = std::system((bin + " " + args + " >/dev/null 2>&1").c_str());
        return WEXITSTATUS(rc);
    };
    CHECK(run("selftest") == 0);
    CHECK(run("basis br --arity 2 --degree -5") == 0);   // empty, success
    CHECK(run("basis wat --arity 2") == 2);              // usage
    CHECK(run("basis br --arity 40") == 4);              // resource
    CHECK(run("check /nonexistent.sprout --order 2") == 3);   // format
    std::string tmp = "cli_seed_test.sprout";
    CHECK(run("seed --out " + tmp) == 0);
    CHECK(run("check " + tmp + " --order 2") == 0);
    CHECK(run("check " + tmp + " --order 3") == 1);
    std::remove(tmp.c_str());
}
#endif
