#include <filesystem>
#include <fstream>
#include <iostream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "CLI11.hpp"
#include "json.hpp"

#include "sproutforge/config.hpp"
#include "sproutforge/render.hpp"
#include "sproutforge/selftest.hpp"
#include "sproutforge/serialize.hpp"
#include "sproutforge/sprout_engine.hpp"

using namespace sforge;
using json = nlohmann::ordered_json;

namespace {

struct DegreeOpt {
    int value = 0;
    bool set = false;
};

void apply_workers(const io::RunConfig& cfg) {
#ifdef _OPENMP
    if (cfg.workers > 0) omp_set_num_threads(cfg.workers);
#else
    (void)cfg;
#endif
}

void guard_arity(int arity, const io::RunConfig& cfg) {
    if (arity < 1) throw UsageError("arity must be >= 1");
    if (arity > cfg.arity_bound)
        throw ResourceError("arity " + std::to_string(arity) + " exceeds the configured bound " +
                            std::to_string(cfg.arity_bound) +
                            " (raise arity_bound in the config to go further)");
}

int cmd_basis(const std::string& kind, int arity, const DegreeOpt& degree,
              const io::RunConfig& cfg) {
    guard_arity(arity, cfg);
    if (kind == "ger") {
        const auto& basis = ger::enumerate_basis(arity);
        for (const auto& w : basis) std::cout << ger::word_text(w) << "\n";
        std::cout << "# ger arity " << arity << ": " << basis.size() << " words\n";
        return 0;
    }
    if (kind != "br") throw UsageError("basis kind must be br or ger");
    auto list_degree = [&](int d) {
        const auto& basis = br::enumerate_basis(arity, d);
        for (const auto& t : basis) std::cout << br::tree_text(t) << "\n";
        std::cout << "# br arity " << arity << " degree " << d << ": " << basis.size()
                  << " trees\n";
    };
    if (degree.set) {
        list_degree(degree.value);
    } else {
        for (int d = 1 - arity; d <= arity - 1; ++d)
            if (!br::enumerate_basis(arity, d).empty()) list_degree(d);
    }
    return 0;
}

int cmd_check(const std::string& path, int order, const io::RunConfig& cfg) {
    io::SproutFile file = io::read_sprout_file(path);
    guard_arity(order + 1, cfg);
    auto check = conv::is_sprout(file.element, order, cfg.engine_options().exec);
    if (check.ok) {
        std::cout << "ok: sprout of order " << order << " (" << file.element.term_count()
                  << " terms)\n";
        return 0;
    }
    std::cout << "not a sprout of order " << order << "; nonzero curvature residues:\n";
    for (const auto& [arity, m] : check.residue.comp) {
        for (const auto& [k, c] : m)
            std::cout << "  arity " << arity << " degree " << conv::key_degree(k) << ": "
                      << rat_str(c) << " " << br::tree_text(k.tree) << " "
                      << ger::word_text(k.word) << "\n";
    }
    return 1;
}

json stats_json(const engine::ExtensionStats& st, int order_from) {
    json j;
    j["order_from"] = order_from;
    j["order_to"] = order_from + 1;
    j["rows"] = st.rows;
    j["cols"] = st.cols;
    j["nnz"] = st.nnz;
    j["rank"] = st.rank;
    j["kernel_dim"] = st.kernel_dim;
    json tc = json::object();
    for (const auto& [arity, n] : st.term_counts) tc[std::to_string(arity)] = n;
    j["term_counts"] = tc;
    return j;
}

void write_text_report(std::ostream& os, const std::vector<json>& steps,
                       const std::string& fingerprint) {
    os << "sprout-forge extension report\n";
    os << "convention " << fingerprint << "\n";
    for (const auto& s : steps) {
        os << "step order " << s["order_from"] << " -> " << s["order_to"] << "\n";
        os << "  system " << s["rows"] << " x " << s["cols"] << ", nnz " << s["nnz"]
           << ", rank " << s["rank"] << ", kernel dim " << s["kernel_dim"] << "\n";
        os << "  terms per arity:";
        std::size_t total = 0;
        for (const auto& [a, n] : s["term_counts"].items()) {
            os << " " << a << ":" << n.get<std::size_t>();
            total += n.get<std::size_t>();
        }
        os << " (total " << total << ")\n";
    }
}

int cmd_extend(const std::string& path, int to, std::string out_base,
               const io::RunConfig& cfg) {
    io::SproutFile file = io::read_sprout_file(path);
    if (to < file.order) throw UsageError("--to is below the file's order");
    if (to + 1 > cfg.arity_bound && to > file.order)
        throw ResourceError("order " + std::to_string(to) + " needs arity " +
                            std::to_string(to + 1) + " classes, above the configured bound " +
                            std::to_string(cfg.arity_bound));
    if (out_base.empty()) out_base = std::filesystem::path(path).stem().string();

    auto precheck = conv::is_sprout(file.element, file.order, cfg.engine_options().exec);
    if (!precheck.ok) throw UsageError("input fails its own order-" + std::to_string(file.order) +
                                       " sprout check; run `sprout-forge check` for details");

    std::vector<json> steps;
    conv::ConvElement current = file.element;
    auto opts = cfg.engine_options();
    for (int order = file.order; order < to; ++order) {
        auto outcome = engine::extend(current, order, opts);
        std::cerr << "extend " << order << "->" << order + 1 << ": assemble "
                  << outcome.stats.assemble_seconds << "s, solve " << outcome.stats.solve_seconds
                  << "s\n";
        if (!outcome.extended) {
            std::string cert_path = out_base + ".certificate.txt";
            std::ofstream cf(cert_path, std::ios::binary);
            cf << "# inconsistency certificate: row combination y with y.A = 0, y.b != 0\n";
            for (const auto& [r, c] : outcome.certificate.entries())
                cf << r << " " << rat_str(c) << "\n";
            std::cout << "not extendable beyond order " << order << "; certificate written to "
                      << cert_path << "\n";
            return static_cast<int>(ExitCode::not_extendable);
        }
        current = outcome.result;
        steps.push_back(stats_json(outcome.stats, order));

        io::SproutFile stage;
        stage.order = order + 1;
        stage.fingerprint = io::convention_fingerprint();
        stage.element = current;
        io::write_sprout_file(out_base + ".order" + std::to_string(order + 1) + ".sprout", stage);
    }

    if (to == file.order) {
        io::SproutFile stage = file;
        stage.fingerprint = io::convention_fingerprint();
        io::write_sprout_file(out_base + ".order" + std::to_string(to) + ".sprout", stage);
    }

    std::string report_path = out_base + ".report." +
                              (cfg.report_format == "json" ? "json" : "txt");
    std::ofstream rf(report_path, std::ios::binary);
    if (cfg.report_format == "json") {
        json j;
        j["command"] = "extend";
        j["convention"] = io::convention_fingerprint();
        j["order_from"] = file.order;
        j["order_to"] = to;
        j["steps"] = steps;
        rf << j.dump(2) << "\n";
    } else {
        write_text_report(rf, steps, io::convention_fingerprint());
    }
    std::cout << "reached order " << to << "; report written to " << report_path << "\n";
    return 0;
}

int cmd_render(const std::string& path, const std::string& format, const std::string& out,
               const io::RunConfig&) {
    io::SproutFile file = io::read_sprout_file(path);
    std::string text = io::render_sprout(file, format);
    if (out.empty()) {
        std::cout << text;
    } else {
        std::ofstream of(out, std::ios::binary);
        if (!of) throw ResourceError("cannot write '" + out + "'");
        of << text;
    }
    return 0;
}

int cmd_selftest() {
    auto rep = io::run_selftest();
    for (const auto& c : rep.checks)
        std::cout << (c.ok ? "pass " : "FAIL ") << c.name << "\n";
    std::cout << "convention fingerprint " << rep.fingerprint << "\n";
    if (!rep.ok()) {
        std::cout << "first failed oracle: " << *rep.first_failure() << "\n";
        return 1;
    }
    return 0;
}

int cmd_cohomology(int arity_max, const io::RunConfig& cfg) {
    guard_arity(arity_max, cfg);
    bool all_match = true;
    for (int n = 2; n <= arity_max; ++n) {
        std::map<int, int> ger_dims;
        for (const auto& w : ger::enumerate_basis(n)) ++ger_dims[w.ger_degree()];
        int total = 0;
        for (int d = 1 - n; d <= 0; ++d) {
            int dim = engine::cohomology(n, d, cfg.arity_bound).dim();
            int expect = ger_dims.count(d) ? ger_dims[d] : 0;
            total += dim;
            std::cout << "H^" << d << "(Br(" << n << ")) = " << dim << "  Ger(" << n << ")^" << d
                      << " = " << expect << (dim == expect ? "" : "   MISMATCH") << "\n";
            if (dim != expect) all_match = false;
        }
        std::cout << "total dim H(Br(" << n << ")) = " << total << "\n";
    }
    return all_match ? 0 : 1;
}

int cmd_stats(const std::string& path) {
    io::SproutFile file = io::read_sprout_file(path);
    std::cout << "order " << file.order << "\n";
    std::cout << "convention " << file.fingerprint << "\n";
    std::size_t total = 0;
    for (const auto& [arity, m] : file.element.comp) {
        std::cout << "arity " << arity << ": " << m.size() << " terms\n";
        total += m.size();
    }
    std::cout << "total " << total << " terms\n";
    return 0;
}

int cmd_seed(bool construct, const std::string& out, const io::RunConfig& cfg) {
    io::SproutFile file;
    file.order = 2;
    file.fingerprint = io::convention_fingerprint();
    file.element = construct ? engine::seed_construct(cfg.engine_options())
                             : engine::seed_paper();
    if (out.empty()) {
        std::cout << io::serialize_sprout(file);
    } else {
        io::write_sprout_file(out, file);
        std::cout << "seed written to " << out << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"sprout-forge: exact Maurer-Cartan sprouts in Conv(Ger^v, Br)"};
    app.require_subcommand(1);
    std::string config_path;
    app.add_option("--config", config_path, "key=value configuration file");

    std::string kind = "br", file, out, format = "tikz";
    int arity = 2, order = 2, to = 3, arity_max = 4;
    DegreeOpt degree;
    bool construct = false;

    auto* sc_basis = app.add_subcommand("basis", "list canonical basis elements");
    sc_basis->add_option("kind", kind, "br or ger")->required();
    sc_basis->add_option("--arity", arity)->required();
    auto* degopt = sc_basis->add_option("--degree", degree.value);

    auto* sc_check = app.add_subcommand("check", "verify the sprout condition");
    sc_check->add_option("file", file)->required();
    sc_check->add_option("--order", order)->required();

    auto* sc_extend = app.add_subcommand("extend", "extend a sprout to higher order");
    sc_extend->add_option("file", file)->required();
    sc_extend->add_option("--to", to)->required();
    sc_extend->add_option("--out", out, "output base path");

    auto* sc_render = app.add_subcommand("render", "figure source for a sprout");
    sc_render->add_option("file", file)->required();
    sc_render->add_option("--format", format, "tikz or svg");
    sc_render->add_option("--out", out);

    app.add_subcommand("selftest", "run the convention oracles");

    auto* sc_cohomology = app.add_subcommand("cohomology", "H(Br(n)) dimension table");
    sc_cohomology->add_option("--arity-max", arity_max);

    auto* sc_stats = app.add_subcommand("stats", "term counts of a sprout file");
    sc_stats->add_option("file", file)->required();

    auto* sc_seed = app.add_subcommand("seed", "write the second MC-sprout");
    sc_seed->add_flag("--construct", construct, "bootstrap from cohomology instead of the "
                                                "built-in seven terms");
    sc_seed->add_option("--out", out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : static_cast<int>(ExitCode::usage);
    }

    try {
        io::RunConfig cfg = io::load_config(config_path);
        apply_workers(cfg);
        if (sc_basis->parsed()) {
            degree.set = degopt->count() > 0;
            return cmd_basis(kind, arity, degree, cfg);
        }
        if (sc_check->parsed()) return cmd_check(file, order, cfg);
        if (sc_extend->parsed()) return cmd_extend(file, to, out, cfg);
        if (sc_render->parsed()) return cmd_render(file, format, out, cfg);
        if (app.get_subcommand("selftest")->parsed()) return cmd_selftest();
        if (sc_cohomology->parsed()) return cmd_cohomology(arity_max, cfg);
        if (sc_stats->parsed()) return cmd_stats(file);
        if (sc_seed->parsed()) return cmd_seed(construct, out, cfg);
        throw UsageError("no subcommand");
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return static_cast<int>(ExitCode::usage);
    } catch (const FormatError& e) {
        std::cerr << "format error: " << e.what() << "\n";
        return static_cast<int>(ExitCode::format);
    } catch (const ResourceError& e) {
        std::cerr << "resource error: " << e.what() << "\n";
        return static_cast<int>(ExitCode::resource);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return static_cast<int>(ExitCode::failure);
    }
}
