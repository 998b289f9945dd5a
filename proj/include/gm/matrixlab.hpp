#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>
#include <vector>

#include "gm/graph.hpp"

namespace gm {

using Int = boost::multiprecision::cpp_int;

class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

    static IntMatrix identity(std::size_t n);
    static IntMatrix from_rows(const std::vector<std::vector<Int>>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Int& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Int& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    IntMatrix transpose() const;
    IntMatrix operator*(const IntMatrix& o) const;
    bool operator==(const IntMatrix& o) const = default;

    bool zero_one() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Int> a_;
};

struct SmithForm {
    IntMatrix u; // unimodular, rows x rows
    IntMatrix d; // diagonal, nonnegative, divisibility chain
    IntMatrix v; // unimodular, cols x cols
    std::vector<Int> invariant_factors; // nonzero diagonal of d
};

/// Exact Smith normal form with u * m * v == d. Deterministic: the pivot is
/// the smallest nonzero entry in absolute value, row-major on ties.
SmithForm smith_normal_form(const IntMatrix& m);

/// Exact determinant (fraction-free elimination); square matrices only.
Int determinant(const IntMatrix& m);

struct CokernelInvariant {
    std::vector<Int> torsion; // invariant factors greater than one
    std::size_t free_rank = 0;

    bool operator==(const CokernelInvariant&) const = default;
};

/// Cokernel of I - A^t for the vertex adjacency matrix A. Requires finite
/// multiplicities and no sinks.
CokernelInvariant cokernel_invariant(const Graph& g);

struct EsseMatrixCheck {
    bool ok = false;
    std::vector<std::string> diagnostics;
};

/// Single elementary equivalence: a == r*s and b == s*r over 0-1 matrices.
EsseMatrixCheck esse_matrix_verify(const IntMatrix& a, const IntMatrix& b, const IntMatrix& r,
                                   const IntMatrix& s);

struct EsseSearchResult {
    enum class Status { found, none, budget } status = Status::none;
    IntMatrix r, s;          // populated when found
    std::uint64_t examined = 0;
    std::string note;
};

/// Exhaustive search for a 0-1 pair (r, s) with a == r*s, b == s*r, trying
/// inner dimensions 1..m_max. Candidates are counted column-wise in binary
/// and visited in lexicographic (r, s) order, so a found witness is the
/// lexicographically first one. Exceeding `budget` examined pairs is
/// reported distinctly from an exhausted search space.
EsseSearchResult esse_matrix_search(const IntMatrix& a, const IntMatrix& b, std::size_t m_max,
                                    std::uint64_t budget);

} // namespace gm
