#pragma once

#include "resonf/core.hpp"

#include <optional>

namespace resonf {

using QMat = std::vector<QVec>;

QMat to_qmat(const std::vector<IVec>& rows);
int rank(QMat A);
int rank(const std::vector<IVec>& rows);
// Fraction-free elimination; A must be square.
mpq_class det(QMat A);

// Basis of {x : A x = 0}; `cols` is needed when A has no rows.
std::vector<QVec> nullspace(const QMat& A, int cols);

// Primitive integer vectors c spanning the rational relations sum_i c_i vecs[i] = 0.
std::vector<IVec> integer_relations(const std::vector<IVec>& vecs);

struct AffineSolution {
    bool consistent = false;
    QVec particular;
    std::vector<QVec> directions;
    int dimension() const { return consistent ? static_cast<int>(directions.size()) : -1; }
};

AffineSolution solve_affine(const QMat& A, const QVec& b, int cols);

// Z-span of a finite set of integer vectors, kept in row Hermite form.
class Lattice {
public:
    Lattice() = default;
    explicit Lattice(const std::vector<IVec>& gens);

    int rank() const { return static_cast<int>(rows_.size()); }
    int dim() const { return dim_; }
    bool contains(const IVec& v) const;
    // Coordinates with respect to basis(), if v is in the lattice.
    std::optional<std::vector<mpz_class>> coordinates(const IVec& v) const;
    const std::vector<std::vector<mpz_class>>& basis() const { return rows_; }

private:
    int dim_ = 0;
    std::vector<std::vector<mpz_class>> rows_;
    std::vector<int> pivots_;
};

}  // namespace resonf
