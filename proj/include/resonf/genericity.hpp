#pragma once

#include "resonf/combinatorial.hpp"

#include <functional>

namespace resonf {

struct Violation {
    std::string item;
    IVec witness;
    std::string graph;  // catalog id when the witness comes from a graph
    std::string detail;
};

struct ConstraintVerdict {
    std::string name;
    bool pass = true;
    std::size_t checked = 0;
    std::size_t failures = 0;
    std::vector<Violation> violations;  // first few witnesses
    std::vector<std::string> notes;
    void fail(Violation v);
};

struct GenericityReport {
    std::vector<ConstraintVerdict> verdicts;
    std::size_t special_graphs = 0;
    bool pass() const;
    const ConstraintVerdict* find(const std::string& name) const;
};

// Integer vectors of length m with given mass and min_l1 <= |a|_1 <= max_l1, enumerated in
// a fixed order. Returns the number visited; `bad` marks witnesses, the first `limit` are kept.
struct BoxScan {
    std::size_t checked = 0, hits = 0;
    std::vector<IVec> witnesses;
};
BoxScan scan_box(int m, int min_l1, int max_l1, Int mass, const std::function<bool(const IVec&)>& bad,
                 bool parallel, std::size_t limit = 8);

ConstraintVerdict check_constraint_1(const TangentialSet& S, int q, bool parallel = true);

struct CompletenessVerdict {
    bool constraint_pass = false;  // no vanishing combination of mass 0, no resonant one of mass 1
    bool complete = false;
    bool integrable = false;
    IVec missing;                  // resonant w outside S
    std::vector<IVec> pair_a, pair_b;  // non-trivial resonant pair
};
CompletenessVerdict check_completeness_integrability(const TangentialSet& S, int q);

// Coefficient box bound 4q(n+1) unless given.
ConstraintVerdict check_constraint_4(const TangentialSet& S, int q, int bound = -1, bool parallel = true);
ConstraintVerdict check_constraint_5(const TangentialSet& S, int q, int bound = -1, bool parallel = true);
// The S^2 element whose image is the co5 expression; zero exactly for the exempt families.
QuadraticTag co5_tag(const IVec& a, const IVec& l);

// Returns {co6, co8}.
std::vector<ConstraintVerdict> check_constraint_6_8(const TangentialSet& S, int q, const Catalog& cat);
ConstraintVerdict check_constraint_7(const TangentialSet& S, int q, const Catalog& cat, std::size_t* special = nullptr);

// Deterministic pool of random site sets used to detect identically compatible systems.
std::vector<TangentialSet> random_pool(int n, int m, int count = 3, unsigned seed = 7);

GenericityReport check_all(const TangentialSet& S, int q, const Catalog& cat, bool parallel = true);

}  // namespace resonf
