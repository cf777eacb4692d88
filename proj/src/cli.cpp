#include "resonf/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace resonf {

namespace {

TangentialSet require_sites(const RunConfig& c)
{
    if (c.sites.empty()) throw InputError("this subcommand needs sites (--sites or \"S\" in the config)");
    return c.sites_set();
}

std::string verdict(bool ok) { return ok ? "pass" : "FAIL"; }

int cmd_check_genericity(const RunConfig& c, std::ostream& out, json& rep)
{
    TangentialSet S = require_sites(c);
    Catalog cat = load_or_build_catalog(S.n(), c.q);
    GenericityReport g = check_all(S, c.q, cat);
    CompletenessVerdict cv = check_completeness_integrability(S, c.q);
    rep["genericity"] = to_json(g);
    rep["completeness"] = to_json(cv);
    for (const auto& v : g.verdicts) {
        out << v.name << ": " << verdict(v.pass) << " (" << v.checked << " checked, " << v.failures << " failures)\n";
        for (const auto& w : v.violations)
            out << "  " << w.item << (w.graph.empty() ? "" : " [" + w.graph + "]")
                << (w.witness.empty() ? "" : " witness " + e_string(w.witness)) << ": " << w.detail << "\n";
    }
    out << "complete: " << (cv.complete ? "yes" : "no") << ", integrable: " << (cv.integrable ? "yes" : "no") << "\n";
    out << "generic: " << (g.pass() ? "yes" : "no") << "\n";
    return g.pass() ? kPass : kViolations;
}

GeoGraph graph_for(const RunConfig& c, const TangentialSet& S)
{
    BuildOptions opt;
    opt.drop_isolated = true;
    return build_graph(S, c.q, c.window, opt);
}

int cmd_build_graph(const RunConfig& c, std::ostream& out, json& rep)
{
    TangentialSet S = require_sites(c);
    GeoGraph g = graph_for(c, S);
    SizeAudit a = component_size_audit(g.components, S.n());
    json comps = json::array();
    for (const auto& A : g.components) comps.push_back(to_json(A));
    rep["window"] = g.window;
    rep["points"] = g.points;
    rep["edges"] = g.edge_count;
    rep["special"] = to_json(g.special);
    rep["components"] = comps;
    rep["audit"] = to_json(a);
    out << "window " << g.window << ": " << g.points << " points, " << g.edge_count << " edges, " << g.components.size()
        << " components with edges\n";
    out << "largest black-only " << a.max_black << ", largest red " << a.max_red << "\n";
    for (const auto& [k, v] : a.histogram) out << "  " << k << " vertices: " << v << "\n";
    out << "size audit: " << verdict(a.pass) << "\n";
    return a.pass ? kPass : kViolations;
}

int cmd_catalog(const RunConfig& c, std::ostream& out, json& rep)
{
    if (c.n < 1) throw InputError("catalog needs --n");
    Catalog cat = load_or_build_catalog(c.n, c.q, c.max_vertices);
    rep["catalog"] = to_json(cat);
    out << "catalog n=" << cat.n << " q=" << cat.q << ", up to " << cat.max_vertices << " vertices, "
        << cat.graphs_examined << " graphs examined\n";
    for (EntryKind k : {EntryKind::Possible, EntryKind::ZeroResonance, EntryKind::Avoidable, EntryKind::RankExcess})
        out << "  " << kind_name(k) << ": " << cat.of_kind(k).size() << "\n";
    return kPass;
}

const CatalogEntry& find_entry(const Catalog& cat, const std::string& id)
{
    for (const auto& e : cat.entries)
        if (e.id == id) return e;
    throw InputError("no catalog entry with id " + id);
}

int cmd_realize(const RunConfig& c, std::ostream& out, json& rep)
{
    TangentialSet S = require_sites(c);
    Catalog cat = load_or_build_catalog(S.n(), c.q);
    json list = json::array();
    std::size_t tried = 0;
    for (const auto& e : cat.entries) {
        if (!c.entry.empty() ? e.id != c.entry
                             : (e.kind != EntryKind::Possible && e.kind != EntryKind::ZeroResonance))
            continue;
        if (support(e.graph).size() > static_cast<std::size_t>(S.m())) continue;
        for (const auto& map : injections(e.graph, S.m())) {
            CombGraph G = inject(e.graph, map, S.m());
            ++tried;
            Realization r = realize(G, S);
            if (r.kind == Realization::None) continue;
            json j = to_json(r);
            j["entry"] = e.id;
            j["graph"] = to_json(G);
            list.push_back(j);
            out << e.id << " as";
            for (const auto& g : G.vertices) out << " " << to_string(g);
            out << ": " << r.summary() << "\n";
        }
    }
    if (!c.entry.empty() && tried == 0) find_entry(cat, c.entry);
    rep["instances"] = tried;
    rep["realizations"] = list;
    out << list.size() << " of " << tried << " instances realized\n";
    return kPass;
}

struct Blocks {
    std::vector<BlockMatrix> mats;
    std::vector<json> meta;
    bool ok = true;
};

Blocks collect_blocks(const RunConfig& c, std::ostream& out)
{
    Blocks b;
    if (!c.edge.empty()) {
        EdgeBlock eb = general_edge_block(c.edge, c.q);
        b.mats.push_back(eb.block);
        b.meta.push_back(json{{"edge", e_string(c.edge)},
                              {"a", eb.a.to_string()},
                              {"b", eb.b.to_string()},
                              {"template_ok", eb.template_ok}});
        b.ok = eb.template_ok;
        out << "edge " << e_string(c.edge) << ": a = " << eb.a.to_string() << ", b = " << eb.b.to_string()
            << ", template " << verdict(eb.template_ok) << "\n";
        return b;
    }
    if (!c.entry.empty()) {
        if (c.n < 1) throw InputError("--entry needs --n");
        Catalog cat = load_or_build_catalog(c.n, c.q);
        const CatalogEntry& e = find_entry(cat, c.entry);
        BlockMatrix C = block_matrix(e.graph, c.q);
        bool sa = sigma_self_adjoint(C);
        b.mats.push_back(C);
        b.meta.push_back(json{{"entry", e.id}, {"sigma_self_adjoint", sa}});
        b.ok = sa;
        out << "entry " << e.id << ": " << C.dim() << "x" << C.dim() << ", sigma-self-adjoint " << verdict(sa) << "\n";
        return b;
    }
    TangentialSet S = require_sites(c);
    GeoGraph g = graph_for(c, S);
    for (const auto& A : g.components) {
        Lift L = lift_component(A, S, c.q);
        json meta{{"root", to_json(A.root())}, {"size", A.vertices.size()}, {"lift", L.ok}};
        if (!L.ok) {
            b.ok = false;
            meta["detail"] = L.detail;
            b.meta.push_back(meta);
            b.mats.emplace_back();
            out << "component at " << e_string(A.root()) << ": lift FAIL " << L.detail << "\n";
            continue;
        }
        ConstCoeffCertificate cc = verify_constant_coefficients(A, L);
        BlockMatrix C = block_matrix(L.graph, c.q);
        bool sa = sigma_self_adjoint(C);
        meta["constant_coefficients"] = cc.ok;
        meta["sigma_self_adjoint"] = sa;
        b.ok = b.ok && cc.ok && sa;
        b.mats.push_back(C);
        b.meta.push_back(meta);
    }
    out << b.mats.size() << " component blocks\n";
    return b;
}

int cmd_normal_form(const RunConfig& c, std::ostream& out, json& rep)
{
    Blocks b = collect_blocks(c, out);
    json list = json::array();
    for (std::size_t i = 0; i < b.mats.size(); ++i) {
        json j = b.meta[i];
        if (b.mats[i].dim() > 0) j["matrix"] = to_json(b.mats[i]);
        list.push_back(j);
    }
    rep["blocks"] = list;
    rep["pass"] = b.ok;
    out << "normal form checks: " << verdict(b.ok) << "\n";
    return b.ok ? kPass : kViolations;
}

int cmd_spectrum(const RunConfig& c, std::ostream& out, json& rep)
{
    if (c.s.empty()) throw InputError("spectrum needs --xi (s values, xi = s^2)");
    Blocks b = collect_blocks(c, out);
    json list = json::array();
    std::size_t complex_blocks = 0;
    for (std::size_t i = 0; i < b.mats.size(); ++i) {
        if (b.mats[i].dim() == 0) continue;
        if (static_cast<int>(c.s.size()) != b.mats[i].m)
            throw InputError("--xi needs " + std::to_string(b.mats[i].m) + " values");
        SpectrumReport sp = spectrum(b.mats[i], c.s);
        json j = b.meta[i];
        j["spectrum"] = to_json(sp);
        list.push_back(j);
        if (!sp.all_real) ++complex_blocks;
        out << "block " << i << ": " << sp.real_count << " real, " << sp.complex_count << " non-real"
            << (sp.all_real_distinct ? ", all real and distinct" : "") << "\n";
    }
    rep["spectra"] = list;
    rep["xi_s"] = to_json(c.s);
    rep["blocks_with_complex_eigenvalues"] = complex_blocks;
    return kPass;
}

int cmd_stability_region(const RunConfig& c, std::ostream& out, json& rep)
{
    if (c.m < 2) throw InputError("stability-region needs --m >= 2");
    RegionCertificate r = discriminant_region(c.q, c.m);
    rep["region"] = to_json(r);
    out << r.entries.size() << " red single-edge discriminants\n";
    if (r.ok) out << "all positive on the curve at t = " << r.t << "\n";
    else out << "inconclusive: " << r.note << "\n";
    return r.ok ? kPass : kViolations;
}

int cmd_arithmetic_search(const RunConfig& c, std::ostream& out, json& rep)
{
    SearchOptions o;
    o.n = c.n > 0 ? c.n : 2;
    o.m = c.m > 0 ? c.m : 4;
    o.q = c.q;
    o.radius = c.radius;
    o.seed = c.seed;
    o.max_candidates = c.max_candidates;
    Catalog cat = load_or_build_catalog(o.n, o.q);
    SearchResult r = find_arithmetically_generic(o, cat);
    rep["search"] = to_json(r);
    rep["seed"] = o.seed;
    out << r.report << "\n";
    if (!r.found) return kViolations;
    for (const auto& s : r.S.sites()) out << "  " << e_string(s) << "\n";

    // independent re-verification of the returned sites
    GenericityReport g = check_all(r.S, o.q, cat);
    ArithmeticVerdict av = certify_arithmetic_genericity(r.S, o.q);
    int window = static_cast<int>(10 * r.S.max_abs());
    GeoGraph gg = build_graph(r.S, o.q, window, {true, true});
    std::size_t largest = 0;
    for (const auto& A : gg.components) largest = std::max(largest, A.vertices.size());
    bool ok = g.pass() && av.pass && largest <= 2;
    rep["reverify"] = json{{"genericity", g.pass()}, {"arithmetic", to_json(av)}, {"window", window},
                           {"largest_component", largest}, {"pass", ok}};
    out << "re-verification: " << verdict(ok) << " (largest component " << largest << " in window " << window << ")\n";
    return ok ? kPass : kViolations;
}

int cmd_audit(const RunConfig& c, std::ostream& out, json& rep)
{
    TangentialSet S = require_sites(c);
    int n = S.n();
    Catalog cat = load_or_build_catalog(n, c.q);
    GenericityReport g = check_all(S, c.q, cat);
    GeoGraph gg = graph_for(c, S);
    SizeAudit a = component_size_audit(gg.components, n);
    std::size_t lifted = 0, iso = 0, coeff = 0, considered = 0;
    json failures = json::array();
    for (const auto& A : gg.components) {
        if (A.vertices.size() > static_cast<std::size_t>(2 * n + 2)) continue;
        ++considered;
        Lift L = lift_component(A, S, c.q);
        if (!L.ok) {
            failures.push_back(json{{"root", to_json(A.root())}, {"check", "lift"}, {"detail", L.detail}});
            continue;
        }
        ++lifted;
        IsoCertificate ic = certify_isomorphism(A, L, S, c.q);
        if (ic.ok) ++iso;
        else failures.push_back(json{{"root", to_json(A.root())}, {"check", "isomorphism"}, {"detail", ic.detail}});
        ConstCoeffCertificate cc = verify_constant_coefficients(A, L);
        if (cc.ok) ++coeff;
        else failures.push_back(json{{"root", to_json(A.root())}, {"check", "constant-coefficients"}, {"detail", cc.detail}});
    }
    bool ok = g.pass() && a.pass && failures.empty();
    rep["genericity"] = to_json(g);
    rep["size_audit"] = to_json(a);
    rep["lifts"] = json{{"considered", considered}, {"lifted", lifted}, {"isomorphism", iso}, {"constant_coefficients", coeff}};
    rep["failures"] = failures;
    rep["pass"] = ok;
    out << "genericity: " << verdict(g.pass()) << "\n";
    out << "components: " << a.components << " (" << a.black_only << " black-only, max " << a.max_black << "; "
        << a.red_containing << " with red, max " << a.max_red << ")\n";
    for (const auto& [k, v] : a.histogram) out << "  " << k << " vertices: " << v << "\n";
    out << "size audit: " << verdict(a.pass) << "\n";
    out << "lifted " << lifted << "/" << considered << ", isomorphism " << iso << ", constant coefficients " << coeff << "\n";
    out << "audit: " << verdict(ok) << "\n";
    return ok ? kPass : kViolations;
}

}  // namespace

const std::vector<std::string>& subcommands()
{
    static const std::vector<std::string> names{"check-genericity", "build-graph",      "catalog",
                                                "realize",          "normal-form",      "spectrum",
                                                "stability-region", "arithmetic-search", "audit"};
    return names;
}

int run_subcommand(const std::string& name, const RunConfig& cfg, std::ostream& out, json& report)
{
    report = report_envelope(name, cfg);
    if (name == "check-genericity") return cmd_check_genericity(cfg, out, report);
    if (name == "build-graph") return cmd_build_graph(cfg, out, report);
    if (name == "catalog") return cmd_catalog(cfg, out, report);
    if (name == "realize") return cmd_realize(cfg, out, report);
    if (name == "normal-form") return cmd_normal_form(cfg, out, report);
    if (name == "spectrum") return cmd_spectrum(cfg, out, report);
    if (name == "stability-region") return cmd_stability_region(cfg, out, report);
    if (name == "arithmetic-search") return cmd_arithmetic_search(cfg, out, report);
    if (name == "audit") return cmd_audit(cfg, out, report);
    throw InputError("unknown subcommand: " + name);
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"resonance graphs, genericity checks and block normal forms"};
    std::string name, config, sites, xi, outdir, entry, edge;
    int n = 0, q = 1, window = 0, jobs = 0, m = 0, maxv = -1;
    std::uint64_t seed = 1;
    Int radius = 40;
    std::size_t max_candidates = 4000;
    app.add_option("subcommand", name, "one of: check-genericity build-graph catalog realize normal-form spectrum "
                                       "stability-region arithmetic-search audit")
        ->required();
    auto* o_config = app.add_option("--config", config, "JSON config file");
    auto* o_n = app.add_option("--n", n, "lattice dimension");
    auto* o_q = app.add_option("--q", q, "nonlinearity degree parameter");
    auto* o_sites = app.add_option("--sites", sites, "sites as \"x1,y1;x2,y2;...\"");
    auto* o_window = app.add_option("--window", window, "half-width of the lattice window");
    auto* o_xi = app.add_option("--xi", xi, "actions given as s values \"s1,s2,...\" with xi = s^2");
    auto* o_seed = app.add_option("--seed", seed, "search seed");
    auto* o_out = app.add_option("--out", outdir, "report directory, or - for JSON on stdout");
    auto* o_jobs = app.add_option("--jobs", jobs, "worker threads");
    auto* o_m = app.add_option("--m", m, "number of sites for searches and regions");
    auto* o_radius = app.add_option("--radius", radius, "coordinate bound for searches");
    auto* o_maxv = app.add_option("--max-vertices", maxv, "catalog vertex cap");
    auto* o_maxc = app.add_option("--max-candidates", max_candidates, "search budget");
    auto* o_entry = app.add_option("--entry", entry, "catalog entry id");
    auto* o_edge = app.add_option("--edge", edge, "single edge label \"l1,l2,...\"");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kPass;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    }

    const auto& names = subcommands();
    if (std::find(names.begin(), names.end(), name) == names.end()) {
        err << "error: unknown subcommand '" << name << "'\n";
        return kInputError;
    }

    try {
        RunConfig cfg = o_config->count() ? parse_config_file(config) : RunConfig{};
        if (o_n->count()) cfg.n = n;
        if (o_q->count()) cfg.q = q;
        if (o_sites->count()) cfg.sites = parse_sites(sites);
        if (o_window->count()) cfg.window = window;
        if (o_xi->count()) cfg.s = parse_rationals(xi);
        if (o_seed->count()) cfg.seed = seed;
        if (o_out->count()) cfg.out = outdir;
        if (o_jobs->count()) cfg.jobs = jobs;
        if (o_m->count()) cfg.m = m;
        if (o_radius->count()) cfg.radius = radius;
        if (o_maxv->count()) cfg.max_vertices = maxv;
        if (o_maxc->count()) cfg.max_candidates = max_candidates;
        if (o_entry->count()) cfg.entry = entry;
        if (o_edge->count()) cfg.edge = parse_ints(edge);
        finalize_config(cfg);
#ifdef _OPENMP
        if (cfg.jobs > 0) omp_set_num_threads(cfg.jobs);
#endif
        json report;
        bool to_stdout = cfg.out == "-";
        std::ostringstream summary;
        int code = run_subcommand(name, cfg, to_stdout ? summary : out, report);
        report["exit_code"] = code;
        std::string text = report.dump(2) + "\n";
        if (to_stdout) {
            out << text;
        } else {
            std::filesystem::create_directories(cfg.out);
            std::string path = (std::filesystem::path(cfg.out) / (name + ".json")).string();
            std::ofstream f(path);
            if (!f) throw InputError("cannot write report to " + path);
            f << text;
            out << "report: " << path << "\n";
        }
        return code;
    } catch (const InputError& e) {
        err << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "input error: " << e.what() << "\n";
        return kInputError;
    }
}

}  // namespace resonf
