#pragma once

#include "resonf/core.hpp"
#include "resonf/linalg.hpp"

#include <map>
#include <tuple>

namespace resonf {

// |x|^2 + (x, pi(l)) = -(|pi(l)|^2 + sum l_i |v_i|^2)/2
bool sphere_membership(const QVec& x, const IVec& l, const TangentialSet& S);
// (x, pi(l)) = (|pi(l)|^2 + sum l_i |v_i|^2)/2
bool plane_membership(const QVec& x, const IVec& l, const TangentialSet& S);

// v = (l, color) . u, i.e. v = u - pi(l) (black) or v = -u - pi(l) (red)
struct GeoEdge {
    IVec u, v, ell;
    Color color;
    bool operator<(const GeoEdge& o) const { return std::tie(u, v, ell) < std::tie(o.u, o.v, o.ell); }
};

// Does the pair satisfy the defining relations of an edge with label l?
bool edge_relation_holds(const GeoEdge& e, const TangentialSet& S);

struct GeoComponent {
    std::vector<IVec> vertices;  // sorted; vertices[0] is the root
    std::vector<GeoEdge> edges;
    bool contains_red = false;
    bool is_special = false;
    bool truncated = false;       // some vertex has a neighbour outside the window
    bool self_conjugate = false;  // red edge from a vertex to itself
    const IVec& root() const { return vertices.front(); }
    int index_of(const IVec& k) const;
};

struct GeoGraph {
    int window = 0;
    std::vector<GeoComponent> components;  // ordered by root
    GeoComponent special;
    std::size_t points = 0;
    std::size_t edge_count = 0;
};

struct BuildOptions {
    bool parallel = true;
    bool drop_isolated = false;  // drop vertices with no edge, unless the edge leaves the window
};

GeoGraph build_graph(const TangentialSet& S, int q, int window, const BuildOptions& opt = {});

// Edges of the window, generated either in parallel shards or serially; both are sorted.
std::vector<GeoEdge> window_edges(const TangentialSet& S, int q, int window, bool parallel);

// Component on S itself, edges between sites.
GeoComponent special_component(const TangentialSet& S, int q);

struct AuditViolation {
    std::string kind;
    IVec root;
    std::size_t size = 0;
    std::string detail;
};

struct SizeAudit {
    bool pass = true;
    std::size_t components = 0, black_only = 0, red_containing = 0, truncated = 0;
    std::size_t max_black = 0, max_red = 0;
    std::map<std::size_t, std::size_t> histogram;  // vertex count -> components
    std::vector<AuditViolation> violations;
};

SizeAudit component_size_audit(const std::vector<GeoComponent>& comps, int n);

}  // namespace resonf
