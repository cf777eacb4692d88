#include "resonf/linalg.hpp"

#include <algorithm>
#include <numeric>

namespace resonf {

QMat to_qmat(const std::vector<IVec>& rows)
{
    QMat A;
    A.reserve(rows.size());
    for (const auto& r : rows) A.push_back(to_q(r));
    return A;
}

// Reduced row echelon form in place; returns pivot columns.
static std::vector<int> rref(QMat& A, int cols)
{
    std::vector<int> piv;
    int r = 0;
    for (int c = 0; c < cols && r < static_cast<int>(A.size()); ++c) {
        int p = -1;
        for (int i = r; i < static_cast<int>(A.size()); ++i)
            if (sgn(A[i][c]) != 0) {
                p = i;
                break;
            }
        if (p < 0) continue;
        std::swap(A[r], A[p]);
        mpq_class inv = 1 / A[r][c];
        for (int j = c; j < cols; ++j) A[r][j] *= inv;
        for (int i = 0; i < static_cast<int>(A.size()); ++i) {
            if (i == r || sgn(A[i][c]) == 0) continue;
            mpq_class f = A[i][c];
            for (int j = c; j < cols; ++j) A[i][j] -= f * A[r][j];
        }
        piv.push_back(c);
        ++r;
    }
    return piv;
}

int rank(QMat A)
{
    if (A.empty()) return 0;
    int cols = static_cast<int>(A[0].size());
    return static_cast<int>(rref(A, cols).size());
}

int rank(const std::vector<IVec>& rows) { return rank(to_qmat(rows)); }

mpq_class det(QMat A)
{
    int n = static_cast<int>(A.size());
    mpq_class d = 1;
    for (int c = 0; c < n; ++c) {
        int p = -1;
        for (int i = c; i < n; ++i)
            if (sgn(A[i][c]) != 0) {
                p = i;
                break;
            }
        if (p < 0) return 0;
        if (p != c) {
            std::swap(A[p], A[c]);
            d = -d;
        }
        d *= A[c][c];
        for (int i = c + 1; i < n; ++i) {
            if (sgn(A[i][c]) == 0) continue;
            mpq_class f = A[i][c] / A[c][c];
            for (int j = c; j < n; ++j) A[i][j] -= f * A[c][j];
        }
    }
    return d;
}

std::vector<QVec> nullspace(const QMat& A0, int cols)
{
    QMat A = A0;
    auto piv = rref(A, cols);
    std::vector<bool> is_piv(cols, false);
    for (int c : piv) is_piv[c] = true;
    std::vector<QVec> out;
    for (int f = 0; f < cols; ++f) {
        if (is_piv[f]) continue;
        QVec x(cols, 0);
        x[f] = 1;
        for (size_t r = 0; r < piv.size(); ++r) x[piv[r]] = -A[r][f];
        out.push_back(x);
    }
    return out;
}

static IVec primitive(const QVec& x)
{
    mpz_class l = 1;
    for (const auto& c : x) l = lcm(l, mpz_class(c.get_den()));
    std::vector<mpz_class> z;
    mpz_class g = 0;
    for (const auto& c : x) {
        mpz_class v = c.get_num() * (l / c.get_den());
        z.push_back(v);
        g = gcd(g, v);
    }
    IVec r;
    for (auto& v : z) r.push_back(g == 0 ? 0 : mpz_class(v / g).get_si());
    return r;
}

std::vector<IVec> integer_relations(const std::vector<IVec>& vecs)
{
    if (vecs.empty()) return {};
    int k = static_cast<int>(vecs.size()), d = static_cast<int>(vecs[0].size());
    // relations are the kernel of the d x k matrix whose columns are the vectors
    QMat A(d, QVec(k));
    for (int j = 0; j < k; ++j)
        for (int i = 0; i < d; ++i) A[i][j] = mpq_class(static_cast<long>(vecs[j][i]));
    std::vector<IVec> out;
    for (const auto& x : nullspace(A, k)) out.push_back(primitive(x));
    return out;
}

AffineSolution solve_affine(const QMat& A, const QVec& b, int cols)
{
    QMat M = A;
    for (size_t i = 0; i < M.size(); ++i) M[i].push_back(b[i]);
    auto piv = rref(M, cols + 1);
    AffineSolution s;
    if (!piv.empty() && piv.back() == cols) return s;
    s.consistent = true;
    s.particular.assign(cols, 0);
    for (size_t r = 0; r < piv.size(); ++r) s.particular[piv[r]] = M[r][cols];
    s.directions = nullspace(A, cols);
    return s;
}

Lattice::Lattice(const std::vector<IVec>& gens)
{
    if (gens.empty()) return;
    dim_ = static_cast<int>(gens[0].size());
    std::vector<std::vector<mpz_class>> M;
    for (const auto& g : gens) {
        std::vector<mpz_class> r;
        for (Int x : g) r.emplace_back(static_cast<long>(x));
        M.push_back(r);
    }
    size_t top = 0;
    for (int c = 0; c < dim_ && top < M.size(); ++c) {
        // Euclid on column c among rows top..end
        while (true) {
            size_t best = M.size();
            for (size_t i = top; i < M.size(); ++i)
                if (M[i][c] != 0 && (best == M.size() || abs(M[i][c]) < abs(M[best][c]))) best = i;
            if (best == M.size()) break;
            std::swap(M[top], M[best]);
            bool done = true;
            for (size_t i = top + 1; i < M.size(); ++i) {
                if (M[i][c] == 0) continue;
                mpz_class f;
                mpz_fdiv_q(f.get_mpz_t(), M[i][c].get_mpz_t(), M[top][c].get_mpz_t());
                for (int j = c; j < dim_; ++j) M[i][j] -= f * M[top][j];
                if (M[i][c] != 0) done = false;
            }
            if (done) break;
        }
        if (M[top][c] == 0) continue;
        if (M[top][c] < 0)
            for (int j = c; j < dim_; ++j) M[top][j] = -M[top][j];
        pivots_.push_back(c);
        ++top;
    }
    M.resize(top);
    rows_ = std::move(M);
}

std::optional<std::vector<mpz_class>> Lattice::coordinates(const IVec& v) const
{
    if (rows_.empty()) {
        if (!is_zero(v)) return std::nullopt;
        return std::vector<mpz_class>{};
    }
    if (static_cast<int>(v.size()) != dim_) throw InputError("lattice dimension mismatch");
    std::vector<mpz_class> r;
    for (Int x : v) r.emplace_back(static_cast<long>(x));
    std::vector<mpz_class> coords(rows_.size());
    for (size_t i = 0; i < rows_.size(); ++i) {
        int c = pivots_[i];
        if (!mpz_divisible_p(r[c].get_mpz_t(), rows_[i][c].get_mpz_t())) return std::nullopt;
        coords[i] = r[c] / rows_[i][c];
        for (int j = c; j < dim_; ++j) r[j] -= coords[i] * rows_[i][j];
    }
    for (const auto& x : r)
        if (x != 0) return std::nullopt;
    return coords;
}

bool Lattice::contains(const IVec& v) const { return coordinates(v).has_value(); }

}  // namespace resonf
