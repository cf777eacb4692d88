#pragma once

#include "resonf/arithmetic.hpp"
#include "resonf/normal_form.hpp"

#include <json.hpp>

#include <optional>

namespace resonf {

using json = nlohmann::json;

inline constexpr const char* kSchemaPrefix = "resonf/v1/";

// Integers beyond 2^53 are written as decimal strings.
json int_json(const mpz_class& x);
json int_json(Int x);
json rational_json(const mpq_class& x);

json to_json(const IVec& v);
json to_json(const QVec& v);
json to_json(const Poly& p);  // sorted [exponents, coefficient] pairs
json to_json(const QuadraticTag& t);
json to_json(const GroupElement& g);
json to_json(const CombGraph& G);
json to_json(const CatalogEntry& e);
json to_json(const Catalog& c);
json to_json(const GeoComponent& A);
json to_json(const SizeAudit& a);
json to_json(const ConstraintVerdict& v);
json to_json(const GenericityReport& r);
json to_json(const CompletenessVerdict& v);
json to_json(const BlockMatrix& C);
json to_json(const SpectrumReport& s);
json to_json(const RegionCertificate& r);
json to_json(const Realization& r);
json to_json(const ArithmeticVerdict& v);
json to_json(const SearchResult& r);
json to_json(const Certificate& c);

Catalog catalog_from_json(const json& j);

struct RunConfig {
    int n = 0, q = 1;
    std::vector<IVec> sites;
    int window = 0;          // 0 selects 10 max|v_i|
    QVec s;                  // xi supplied as s values, xi = s^2
    std::uint64_t seed = 1;
    std::string out = ".";
    int jobs = 0;
    int m = 0;               // site count for searches and stability regions
    Int radius = 40;
    int max_vertices = -1;
    std::size_t max_candidates = 4000;
    std::string entry;       // catalog id
    IVec edge;               // single-edge label
    TangentialSet sites_set() const;
    json to_json() const;    // resolved values that influence results
};

// Config file: {"n":2,"q":1,"S":[[1,0],[0,1]], ...}. Errors name the field.
RunConfig parse_config_json(const std::string& text);
RunConfig parse_config_file(const std::string& path);
void finalize_config(RunConfig& c);
std::vector<IVec> parse_sites(const std::string& text);
QVec parse_rationals(const std::string& text);
IVec parse_ints(const std::string& text);

std::uint64_t fnv1a(const std::string& s);
std::string config_hash(const RunConfig& c);

std::string catalog_cache_dir();
// Loads the cached catalog when present and current, otherwise builds and stores it.
Catalog load_or_build_catalog(int n, int q, int max_vertices = -1, bool parallel = true);

json report_envelope(const std::string& kind, const RunConfig& c);

}  // namespace resonf
