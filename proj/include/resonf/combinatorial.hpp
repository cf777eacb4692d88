#pragma once

#include "resonf/core.hpp"
#include "resonf/geometric.hpp"
#include "resonf/linalg.hpp"

#include <optional>

namespace resonf {

struct CombGraph {
    int m = 0;
    std::vector<GroupElement> vertices;  // vertices[0] is the root (0,+)
    std::size_t size() const { return vertices.size(); }
};

CombGraph single_vertex(int m);

// vertices[to] = (ell, color) * vertices[from]
struct CombEdge {
    int from, to;
    IVec ell;
    Color color;
};

// Label x with to = x * from, if x lies in X_q.
std::optional<GroupElement> edge_between(const GroupElement& from, const GroupElement& to, int q);
std::vector<CombEdge> graph_edges(const CombGraph& G, int q);
bool is_connected(const CombGraph& G, int q);

struct Ranks {
    int black = 0, red = 0, total = 0;
    int black_count = 0, red_count = 0;
    bool degenerate = false;          // total < #vertices - 1
    bool colored_degenerate = false;  // some color has dependent vertices
};

Ranks colored_rank(const CombGraph& G);
// Primitive integer relations sum_i c_i a_i = 0 over the non-root vertices (c_i refers to vertices[i+1]).
std::vector<IVec> relations(const CombGraph& G);
// sum_i c_i C(g_i); throws InputError if c is not a relation
QuadraticTag avoidable_resonance(const CombGraph& G, const IVec& c);

enum class EntryKind { Possible, ZeroResonance, Avoidable, RankExcess };
const char* kind_name(EntryKind k);

struct CatalogEntry {
    std::string id;
    EntryKind kind = EntryKind::Possible;
    CombGraph graph;
    Ranks ranks;
    std::vector<IVec> relations;
    std::vector<QuadraticTag> resonances;
};

struct Catalog {
    int n = 0, q = 0, m_eff = 0, max_vertices = 0;
    std::vector<CatalogEntry> entries;
    std::size_t graphs_examined = 0;
    std::vector<const CatalogEntry*> of_kind(EntryKind k) const;
};

inline const char* catalog_version() { return "resonf-catalog/1"; }

// Breadth-first growth from (0,+); possible graphs are extended, leaves are recorded.
Catalog enumerate_catalog(int n, int q, int max_vertices = -1, bool parallel = true);

using Encoding = std::vector<IVec>;
// Minimal encoding over re-rooting (right translation) and index permutations.
Encoding canonical_form(const CombGraph& G);
CombGraph from_encoding(const Encoding& e, int m);
// Indices used by some vertex.
std::vector<int> support(const CombGraph& G);
// Map index i of G to map[i]; the result has m indices.
CombGraph inject(const CombGraph& G, const std::vector<int>& map, int m);
// All injective maps from the support of G into {0..m-1}, as full index maps.
std::vector<std::vector<int>> injections(const CombGraph& G, int m);

struct EquationSystem {
    int n = 0;
    QMat lin_rows;      // black rows and differences of red rows
    QVec lin_rhs;
    bool has_quadratic = false;
    QVec quad_p;        // |x|^2 + (x, quad_p) = quad_rhs
    mpq_class quad_rhs;
    std::vector<std::string> origin;
};

EquationSystem equations(const CombGraph& G, const TangentialSet& S);

enum class Location { InS, InSc, NonIntegral, OutsideSpan };
const char* location_name(Location l);
Location locate(const QVec& x, const TangentialSet& S, const Lattice& span);

struct Realization {
    enum Kind { None, Unique, TwoPoints, Positive } kind = None;
    int dimension = -1;
    std::vector<QVec> points;
    std::vector<Location> locations;
    bool irrational = false;  // two real points that are not rational
    std::string summary() const;
};

Realization realize(const CombGraph& G, const TangentialSet& S);

struct Compatibility {
    int linear_rank = 0;
    bool consistent = false;  // all equations hold for the solved x
    bool determined = false;  // linear rows pin down a single x
    QVec x;
};

Compatibility compatibility(const CombGraph& G, const TangentialSet& S);

struct Lift {
    bool ok = false;
    std::vector<GroupElement> g;  // g[i] lifts comp.vertices[i]
    CombGraph graph;
    std::vector<GeoEdge> obstruction;  // closing edge of a failing cycle
    bool energy_constant = false;
    std::string detail;
};

Lift lift_component(const GeoComponent& A, const TangentialSet& S, int q);

struct IsoCertificate {
    bool ok = false;
    int kernel_checks = 0;
    std::string detail;
};

IsoCertificate certify_isomorphism(const GeoComponent& A, const Lift& L, const TangentialSet& S, int q);

}  // namespace resonf
