#include "resonf/io.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace resonf {

namespace fs = std::filesystem;

json int_json(const mpz_class& x)
{
    static const mpz_class limit("9007199254740992");
    if (abs(x) <= limit) return json(x.get_si());
    return json(x.get_str());
}

json int_json(Int x) { return int_json(mpz_class(static_cast<long>(x))); }

json rational_json(const mpq_class& x)
{
    if (x.get_den() == 1) return int_json(x.get_num());
    return json(x.get_str());
}

json to_json(const IVec& v)
{
    json a = json::array();
    for (Int x : v) a.push_back(int_json(x));
    return a;
}

json to_json(const QVec& v)
{
    json a = json::array();
    for (const auto& x : v) a.push_back(rational_json(x));
    return a;
}

json to_json(const Poly& p)
{
    json a = json::array();
    for (const auto& [e, c] : p.terms()) a.push_back(json::array({e, int_json(c)}));
    return a;
}

json to_json(const QuadraticTag& t)
{
    json a = json::array();
    for (const auto& [ij, c] : t.terms()) a.push_back(json::array({ij.first + 1, ij.second + 1, int_json(c)}));
    return json{{"terms", a}, {"text", t.to_string()}};
}

json to_json(const GroupElement& g) { return json{{"a", to_json(g.a)}, {"sigma", g.sigma}, {"text", to_string(g)}}; }

json to_json(const CombGraph& G)
{
    json v = json::array();
    for (const auto& g : G.vertices) v.push_back(to_json(g));
    return json{{"m", G.m}, {"vertices", v}};
}

json to_json(const CatalogEntry& e)
{
    json rel = json::array(), res = json::array();
    for (const auto& r : e.relations) rel.push_back(to_json(r));
    for (const auto& r : e.resonances) res.push_back(to_json(r));
    return json{{"id", e.id},
                {"kind", kind_name(e.kind)},
                {"graph", to_json(e.graph)},
                {"ranks",
                 {{"black", e.ranks.black},
                  {"red", e.ranks.red},
                  {"total", e.ranks.total},
                  {"degenerate", e.ranks.degenerate},
                  {"colored_degenerate", e.ranks.colored_degenerate}}},
                {"relations", rel},
                {"resonances", res}};
}

json to_json(const Catalog& c)
{
    json entries = json::array();
    std::map<std::string, std::size_t> counts;
    for (const auto& e : c.entries) {
        entries.push_back(to_json(e));
        ++counts[kind_name(e.kind)];
    }
    return json{{"version", catalog_version()},
                {"n", c.n},
                {"q", c.q},
                {"m_eff", c.m_eff},
                {"max_vertices", c.max_vertices},
                {"graphs_examined", c.graphs_examined},
                {"counts", counts},
                {"entries", entries}};
}

Catalog catalog_from_json(const json& j)
{
    if (j.value("version", "") != catalog_version()) throw InputError("catalog version mismatch");
    Catalog c;
    c.n = j.at("n");
    c.q = j.at("q");
    c.m_eff = j.at("m_eff");
    c.max_vertices = j.at("max_vertices");
    c.graphs_examined = j.at("graphs_examined");
    for (const auto& je : j.at("entries")) {
        CatalogEntry e;
        e.id = je.at("id");
        std::string kind = je.at("kind");
        bool known = false;
        for (EntryKind k : {EntryKind::Possible, EntryKind::ZeroResonance, EntryKind::Avoidable, EntryKind::RankExcess})
            if (kind == kind_name(k)) {
                e.kind = k;
                known = true;
            }
        if (!known) throw InputError("catalog entry " + e.id + " has unknown kind " + kind);
        e.graph.m = je.at("graph").at("m");
        for (const auto& v : je.at("graph").at("vertices"))
            e.graph.vertices.push_back(GroupElement{v.at("a").get<IVec>(), v.at("sigma").get<int>()});
        // derived data is recomputed rather than trusted
        e.ranks = colored_rank(e.graph);
        e.relations = relations(e.graph);
        for (const auto& r : e.relations) e.resonances.push_back(avoidable_resonance(e.graph, r));
        c.entries.push_back(std::move(e));
    }
    return c;
}

json to_json(const GeoComponent& A)
{
    json v = json::array(), e = json::array();
    for (const auto& k : A.vertices) v.push_back(to_json(k));
    for (const auto& x : A.edges)
        e.push_back(json{{"u", to_json(x.u)}, {"v", to_json(x.v)}, {"ell", to_json(x.ell)}, {"label", e_string(x.ell)},
                         {"color", color_name(x.color)}});
    return json{{"root", to_json(A.root())},
                {"vertices", v},
                {"edges", e},
                {"contains_red", A.contains_red},
                {"special", A.is_special},
                {"truncated", A.truncated},
                {"self_conjugate", A.self_conjugate}};
}

json to_json(const SizeAudit& a)
{
    json hist = json::object(), viol = json::array();
    for (const auto& [k, v] : a.histogram) hist[std::to_string(k)] = v;
    for (const auto& v : a.violations)
        viol.push_back(json{{"kind", v.kind}, {"root", to_json(v.root)}, {"size", v.size}, {"detail", v.detail}});
    return json{{"pass", a.pass},
                {"components", a.components},
                {"black_only", a.black_only},
                {"red_containing", a.red_containing},
                {"truncated", a.truncated},
                {"max_black", a.max_black},
                {"max_red", a.max_red},
                {"histogram", hist},
                {"violations", viol}};
}

json to_json(const ConstraintVerdict& v)
{
    json viol = json::array();
    for (const auto& x : v.violations)
        viol.push_back(json{{"item", x.item}, {"witness", to_json(x.witness)}, {"graph", x.graph}, {"detail", x.detail}});
    return json{{"name", v.name},      {"pass", v.pass},   {"checked", v.checked},
                {"failures", v.failures}, {"violations", viol}, {"notes", v.notes}};
}

json to_json(const GenericityReport& r)
{
    json v = json::array();
    for (const auto& x : r.verdicts) v.push_back(to_json(x));
    return json{{"pass", r.pass()}, {"special_graphs", r.special_graphs}, {"constraints", v}};
}

json to_json(const CompletenessVerdict& v)
{
    json a = json::array(), b = json::array();
    for (const auto& x : v.pair_a) a.push_back(to_json(x));
    for (const auto& x : v.pair_b) b.push_back(to_json(x));
    return json{{"constraint_pass", v.constraint_pass},
                {"complete", v.complete},
                {"integrable", v.integrable},
                {"missing", to_json(v.missing)},
                {"pair_a", a},
                {"pair_b", b}};
}

json to_json(const BlockMatrix& C)
{
    json rows = json::array(), verts = json::array();
    for (const auto& r : C.entries) {
        json row = json::array();
        for (const auto& e : r) row.push_back(json{{"terms", to_json(e)}, {"text", e.to_string()}});
        rows.push_back(row);
    }
    for (const auto& g : C.vertices) verts.push_back(to_json(g));
    return json{{"m", C.m}, {"q", C.q}, {"vertices", verts}, {"signs", C.signs}, {"entries", rows}};
}

json to_json(const SpectrumReport& s)
{
    json roots = json::array(), approx = json::array();
    for (const auto& r : s.real_roots)
        roots.push_back(json{{"lo", rational_json(r.lo)}, {"hi", rational_json(r.hi)}, {"multiplicity", r.multiplicity}});
    for (const auto& z : s.approx) {
        std::ostringstream re, im;
        re.precision(10);
        im.precision(10);
        re << z.real();
        im << z.imag();
        approx.push_back(json::array({re.str(), im.str()}));
    }
    return json{{"charpoly", to_json(s.charpoly)},
                {"real_roots", roots},
                {"real_count", s.real_count},
                {"complex_count", s.complex_count},
                {"all_real", s.all_real},
                {"all_real_distinct", s.all_real_distinct},
                {"approx", approx}};
}

json to_json(const RegionCertificate& r)
{
    json e = json::array();
    for (const auto& d : r.entries) {
        Poly lead = Poly::monomial(d.leading.first, d.leading.second);
        e.push_back(json{{"ell", to_json(d.ell)},
                         {"label", e_string(d.ell)},
                         {"discriminant", d.disc.to_string()},
                         {"leading", lead.to_string()},
                         {"positive", d.positive}});
    }
    return json{{"ok", r.ok}, {"q", r.q}, {"m", r.m}, {"t", r.t}, {"xi", to_json(r.xi)}, {"entries", e}, {"note", r.note}};
}

json to_json(const Realization& r)
{
    json pts = json::array();
    for (std::size_t i = 0; i < r.points.size(); ++i)
        pts.push_back(json{{"x", to_json(r.points[i])},
                           {"location", i < r.locations.size() ? location_name(r.locations[i]) : ""}});
    return json{{"summary", r.summary()}, {"dimension", r.dimension}, {"irrational", r.irrational}, {"points", pts}};
}

json to_json(const ArithmeticVerdict& v)
{
    json labels = json::array();
    for (const auto& l : v.labels) labels.push_back(e_string(l));
    return json{{"pass", v.pass},
                {"sphere_points", v.sphere_points},
                {"black_pairs", v.black_pairs},
                {"witness", to_json(v.witness)},
                {"labels", labels},
                {"detail", v.detail}};
}

json to_json(const SearchResult& r)
{
    json sites = json::array();
    if (r.found)
        for (const auto& s : r.S.sites()) sites.push_back(to_json(s));
    return json{{"found", r.found},
                {"sites", sites},
                {"index", r.index},
                {"tried", r.tried},
                {"rejected_sector", r.rejected_sector},
                {"rejected_geometric", r.rejected_geometric},
                {"rejected_arithmetic", r.rejected_arithmetic},
                {"report", r.report}};
}

json to_json(const Certificate& c)
{
    return json{{"ok", c.ok}, {"s", to_json(c.s)}, {"det", rational_json(c.det)}, {"trials", c.trials}, {"note", c.note}};
}

// ---------------------------------------------------------------- config

TangentialSet RunConfig::sites_set() const { return TangentialSet(n, sites); }

json RunConfig::to_json() const
{
    json S = json::array();
    for (const auto& v : sites) S.push_back(resonf::to_json(v));
    return json{{"n", n},
                {"q", q},
                {"S", S},
                {"window", window},
                {"xi_s", resonf::to_json(s)},
                {"seed", seed},
                {"m", m},
                {"radius", radius},
                {"max_vertices", max_vertices},
                {"max_candidates", max_candidates},
                {"entry", entry},
                {"edge", resonf::to_json(edge)}};
}

namespace {

std::string trim_ws(const std::string& s)
{
    auto b = s.find_first_not_of(" \t\n\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\n\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(trim_ws(cur));
    return out;
}

Int parse_int(const std::string& t, const std::string& field)
{
    std::size_t pos = 0;
    long long v = 0;
    try {
        v = std::stoll(t, &pos);
    } catch (const std::exception&) {
        throw InputError(field + ": not an integer: '" + t + "'");
    }
    if (pos != t.size()) throw InputError(field + ": not an integer: '" + t + "'");
    return v;
}

template <class T>
T field(const json& j, const char* name, const T& dflt)
{
    if (!j.contains(name)) return dflt;
    try {
        return j.at(name).get<T>();
    } catch (const json::exception& e) {
        throw InputError(std::string("config field '") + name + "': " + e.what());
    }
}

}  // namespace

std::vector<IVec> parse_sites(const std::string& text)
{
    std::vector<IVec> sites;
    int idx = 0;
    for (const auto& part : split(text, ';')) {
        ++idx;
        if (part.empty()) continue;
        IVec v;
        for (const auto& x : split(part, ',')) v.push_back(parse_int(x, "site " + std::to_string(idx)));
        sites.push_back(v);
    }
    return sites;
}

IVec parse_ints(const std::string& text)
{
    IVec v;
    for (const auto& x : split(text, ',')) v.push_back(parse_int(x, "integer list"));
    return v;
}

QVec parse_rationals(const std::string& text)
{
    QVec v;
    for (const auto& x : split(text, ',')) {
        try {
            mpq_class r(x);
            r.canonicalize();
            v.push_back(r);
        } catch (const std::exception&) {
            throw InputError("not a rational number: '" + x + "'");
        }
    }
    return v;
}

RunConfig parse_config_json(const std::string& text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("malformed config: ") + e.what());
    }
    if (!j.is_object()) throw InputError("config must be a JSON object");
    RunConfig c;
    c.n = field<int>(j, "n", 0);
    c.q = field<int>(j, "q", 1);
    if (j.contains("S")) {
        if (!j["S"].is_array()) throw InputError("config field 'S': expected an array of sites");
        for (std::size_t i = 0; i < j["S"].size(); ++i) {
            try {
                c.sites.push_back(j["S"][i].get<IVec>());
            } catch (const json::exception&) {
                throw InputError("config field 'S[" + std::to_string(i) + "]': expected an integer vector");
            }
        }
    }
    c.window = field<int>(j, "window", 0);
    if (j.contains("xi")) {
        for (std::size_t i = 0; i < j["xi"].size(); ++i) {
            const auto& x = j["xi"][i];
            if (x.is_string()) c.s.push_back(parse_rationals(x.get<std::string>()).at(0));
            else if (x.is_number_integer()) c.s.push_back(mpq_class(x.get<long>()));
            else throw InputError("config field 'xi[" + std::to_string(i) + "]': expected an integer or a rational string");
        }
    }
    c.seed = field<std::uint64_t>(j, "seed", 1);
    c.out = field<std::string>(j, "out", ".");
    c.jobs = field<int>(j, "jobs", 0);
    c.m = field<int>(j, "m", 0);
    c.radius = field<Int>(j, "radius", 40);
    c.max_vertices = field<int>(j, "max_vertices", -1);
    c.max_candidates = field<std::size_t>(j, "max_candidates", 4000);
    c.entry = field<std::string>(j, "entry", "");
    c.edge = field<IVec>(j, "edge", {});
    return c;
}

RunConfig parse_config_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw InputError("cannot read config file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_json(ss.str());
}

void finalize_config(RunConfig& c)
{
    if (c.q < 1) throw InputError("q must be at least 1");
    if (!c.sites.empty()) {
        if (c.n == 0) c.n = static_cast<int>(c.sites[0].size());
        TangentialSet S(c.n, c.sites);  // validates dimensions and distinctness
        if (c.m == 0) c.m = S.m();
        if (c.window == 0) c.window = static_cast<int>(10 * S.max_abs());
    }
    if (c.window < 0) throw InputError("window must be positive");
    if (c.n < 0) throw InputError("n must be positive");
}

std::uint64_t fnv1a(const std::string& s)
{
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string config_hash(const RunConfig& c)
{
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(c.to_json().dump())));
    return buf;
}

std::string catalog_cache_dir()
{
    if (const char* d = std::getenv("RESONF_CATALOG_DIR"); d && *d) return d;
    if (const char* d = std::getenv("XDG_CACHE_HOME"); d && *d) return std::string(d) + "/resonf";
    if (const char* d = std::getenv("HOME"); d && *d) return std::string(d) + "/.cache/resonf";
    return "";
}

Catalog load_or_build_catalog(int n, int q, int max_vertices, bool parallel)
{
    std::string dir = catalog_cache_dir();
    int cap = max_vertices < 0 ? 2 * n + 2 : max_vertices;
    fs::path file = dir.empty() ? fs::path() : fs::path(dir) / ("catalog_n" + std::to_string(n) + "_q" + std::to_string(q) + ".json");
    if (!file.empty() && fs::exists(file)) {
        try {
            std::ifstream in(file);
            json j = json::parse(in);
            Catalog c = catalog_from_json(j);
            if (c.n == n && c.q == q && c.max_vertices == cap) return c;
        } catch (const std::exception&) {
            // stale or damaged cache: rebuild below
        }
    }
    Catalog c = enumerate_catalog(n, q, cap, parallel);
    if (!file.empty()) {
        std::error_code ec;
        fs::create_directories(file.parent_path(), ec);
        fs::path tmp = file;
        tmp += ".tmp";
        std::ofstream out(tmp);
        if (out) {
            out << to_json(c).dump(1) << "\n";
            out.close();
            fs::rename(tmp, file, ec);
        }
    }
    return c;
}

json report_envelope(const std::string& kind, const RunConfig& c)
{
    return json{{"schema", std::string(kSchemaPrefix) + kind},
                {"config", c.to_json()},
                {"config_hash", config_hash(c)},
                {"catalog_version", catalog_version()}};
}

}  // namespace resonf
