#include "gm/matrixlab.hpp"

#include <algorithm>

#include "gm/error.hpp"

namespace gm {

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m.at(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<Int>>& rows) {
    std::size_t r = rows.size();
    std::size_t c = r == 0 ? 0 : rows.front().size();
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
        if (rows[i].size() != c)
            fail(errc::invalid_input, "ragged matrix rows");
        for (std::size_t j = 0; j < c; ++j)
            m.at(i, j) = rows[i][j];
    }
    return m;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            m.at(j, i) = at(i, j);
    return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
    if (cols_ != o.rows_)
        fail(errc::invalid_input, "matrix shape mismatch in product");
    IntMatrix m(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Int& x = at(i, k);
            if (x == 0)
                continue;
            for (std::size_t j = 0; j < o.cols_; ++j)
                m.at(i, j) += x * o.at(k, j);
        }
    return m;
}

bool IntMatrix::zero_one() const {
    for (const Int& x : a_)
        if (x != 0 && x != 1)
            return false;
    return true;
}

namespace {

struct SnfWork {
    IntMatrix d, u, v;

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b)
            return;
        for (std::size_t j = 0; j < d.cols(); ++j)
            std::swap(d.at(a, j), d.at(b, j));
        for (std::size_t j = 0; j < u.cols(); ++j)
            std::swap(u.at(a, j), u.at(b, j));
    }

    void swap_cols(std::size_t a, std::size_t b) {
        if (a == b)
            return;
        for (std::size_t i = 0; i < d.rows(); ++i)
            std::swap(d.at(i, a), d.at(i, b));
        for (std::size_t i = 0; i < v.rows(); ++i)
            std::swap(v.at(i, a), v.at(i, b));
    }

    // row[a] -= q * row[b]
    void row_sub(std::size_t a, std::size_t b, const Int& q) {
        if (q == 0)
            return;
        for (std::size_t j = 0; j < d.cols(); ++j)
            d.at(a, j) -= q * d.at(b, j);
        for (std::size_t j = 0; j < u.cols(); ++j)
            u.at(a, j) -= q * u.at(b, j);
    }

    // col[a] -= q * col[b]
    void col_sub(std::size_t a, std::size_t b, const Int& q) {
        if (q == 0)
            return;
        for (std::size_t i = 0; i < d.rows(); ++i)
            d.at(i, a) -= q * d.at(i, b);
        for (std::size_t i = 0; i < v.rows(); ++i)
            v.at(i, a) -= q * v.at(i, b);
    }

    void negate_row(std::size_t a) {
        for (std::size_t j = 0; j < d.cols(); ++j)
            d.at(a, j) = -d.at(a, j);
        for (std::size_t j = 0; j < u.cols(); ++j)
            u.at(a, j) = -u.at(a, j);
    }

    // Smallest nonzero |entry| in the trailing submatrix, row-major on ties.
    bool find_pivot(std::size_t t, std::size_t& pi, std::size_t& pj) const {
        bool found = false;
        Int best;
        for (std::size_t i = t; i < d.rows(); ++i)
            for (std::size_t j = t; j < d.cols(); ++j) {
                if (d.at(i, j) == 0)
                    continue;
                Int mag = abs(d.at(i, j));
                if (!found || mag < best) {
                    found = true;
                    best = mag;
                    pi = i;
                    pj = j;
                }
            }
        return found;
    }

    bool pivot_is_lone(std::size_t t) const {
        for (std::size_t i = t + 1; i < d.rows(); ++i)
            if (d.at(i, t) != 0)
                return false;
        for (std::size_t j = t + 1; j < d.cols(); ++j)
            if (d.at(t, j) != 0)
                return false;
        return true;
    }
};

// Round-to-nearest quotient keeps remainders at most half the pivot, which
// converges quickly.
Int near_div(const Int& a, const Int& b) {
    Int q = a / b;
    Int r = a - q * b;
    if (r != 0 && abs(r) * 2 > abs(b))
        q += (a < 0) == (b < 0) ? 1 : -1;
    return q;
}

} // namespace

SmithForm smith_normal_form(const IntMatrix& m) {
    SnfWork w{m, IntMatrix::identity(m.rows()), IntMatrix::identity(m.cols())};
    std::size_t n = std::min(m.rows(), m.cols());

    for (std::size_t t = 0; t < n; ++t) {
        std::size_t pi = t, pj = t;
        if (!w.find_pivot(t, pi, pj))
            break;
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);

        while (!w.pivot_is_lone(t)) {
            for (std::size_t i = t + 1; i < w.d.rows(); ++i)
                w.row_sub(i, t, near_div(w.d.at(i, t), w.d.at(t, t)));
            for (std::size_t j = t + 1; j < w.d.cols(); ++j)
                w.col_sub(j, t, near_div(w.d.at(t, j), w.d.at(t, t)));
            // Any surviving entry is smaller than the pivot; promote it.
            if (!w.find_pivot(t, pi, pj))
                break;
            w.swap_rows(t, pi);
            w.swap_cols(t, pj);
        }

        // Fold non-divisible trailing entries into the pivot position.
        bool redo = true;
        while (redo) {
            redo = false;
            for (std::size_t i = t + 1; i < w.d.rows() && !redo; ++i)
                for (std::size_t j = t + 1; j < w.d.cols() && !redo; ++j)
                    if (w.d.at(i, j) % w.d.at(t, t) != 0) {
                        w.row_sub(t, i, Int(-1)); // add row i to row t
                        redo = true;
                    }
            if (!redo)
                break;
            while (!w.pivot_is_lone(t)) {
                for (std::size_t i = t + 1; i < w.d.rows(); ++i)
                    w.row_sub(i, t, near_div(w.d.at(i, t), w.d.at(t, t)));
                for (std::size_t j = t + 1; j < w.d.cols(); ++j)
                    w.col_sub(j, t, near_div(w.d.at(t, j), w.d.at(t, t)));
                std::size_t pi2 = t, pj2 = t;
                if (!w.find_pivot(t, pi2, pj2))
                    break;
                w.swap_rows(t, pi2);
                w.swap_cols(t, pj2);
            }
        }

        if (w.d.at(t, t) < 0)
            w.negate_row(t);
    }

    SmithForm out{w.u, w.d, w.v, {}};
    for (std::size_t t = 0; t < n; ++t)
        if (out.d.at(t, t) != 0)
            out.invariant_factors.push_back(out.d.at(t, t));

    if (!(out.u * m * out.v == out.d))
        fail(errc::precondition_failed, "smith normal form postcondition failed");
    return out;
}

Int determinant(const IntMatrix& m) {
    if (m.rows() != m.cols())
        fail(errc::invalid_input, "determinant of a non-square matrix");
    std::size_t n = m.rows();
    if (n == 0)
        return 1;
    IntMatrix a = m;
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a.at(k, k) == 0) {
            std::size_t swap_row = k + 1;
            while (swap_row < n && a.at(swap_row, k) == 0)
                ++swap_row;
            if (swap_row == n)
                return 0;
            for (std::size_t j = 0; j < n; ++j)
                std::swap(a.at(k, j), a.at(swap_row, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                a.at(i, j) = (a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j)) / prev;
        prev = a.at(k, k);
    }
    return sign > 0 ? a.at(n - 1, n - 1) : -a.at(n - 1, n - 1);
}

CokernelInvariant cokernel_invariant(const Graph& g) {
    if (!g.finite_multiplicity())
        fail(errc::precondition_failed, "cokernel invariant requires finite multiplicities");
    if (g.has_sink())
        fail(errc::precondition_failed, "cokernel invariant requires a graph with no sinks");

    std::size_t n = g.vertices().size();
    IntMatrix m(n, n);
    auto adj = g.adjacency_matrix();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            // I - A^t
            Int a = static_cast<long long>(adj[j][i].count());
            m.at(i, j) = (i == j ? Int(1) : Int(0)) - a;
        }

    SmithForm snf = smith_normal_form(m);
    CokernelInvariant inv;
    for (const Int& f : snf.invariant_factors)
        if (f > 1)
            inv.torsion.push_back(f);
    inv.free_rank = n - snf.invariant_factors.size();
    return inv;
}

EsseMatrixCheck esse_matrix_verify(const IntMatrix& a, const IntMatrix& b, const IntMatrix& r,
                                   const IntMatrix& s) {
    if (a.rows() != a.cols() || b.rows() != b.cols())
        fail(errc::invalid_input, "elementary equivalence needs square endpoint matrices");
    if (r.rows() != a.rows() || r.cols() != b.rows() || s.rows() != b.rows() ||
        s.cols() != a.rows())
        fail(errc::invalid_input, "link shape mismatch: need r: n x m and s: m x n");
    for (const IntMatrix* m : {&a, &b, &r, &s})
        if (!m->zero_one())
            fail(errc::invalid_input, "elementary equivalence is defined over 0-1 matrices");

    EsseMatrixCheck check;
    IntMatrix rs = r * s;
    IntMatrix sr = s * r;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (rs.at(i, j) != a.at(i, j))
                check.diagnostics.push_back("(r*s)[" + std::to_string(i) + "][" +
                                            std::to_string(j) + "] = " + rs.at(i, j).str() +
                                            ", a has " + a.at(i, j).str());
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j)
            if (sr.at(i, j) != b.at(i, j))
                check.diagnostics.push_back("(s*r)[" + std::to_string(i) + "][" +
                                            std::to_string(j) + "] = " + sr.at(i, j).str() +
                                            ", b has " + b.at(i, j).str());
    check.ok = check.diagnostics.empty();
    return check;
}

EsseSearchResult esse_matrix_search(const IntMatrix& a, const IntMatrix& b, std::size_t m_max,
                                    std::uint64_t budget) {
    if (a.rows() != a.cols() || b.rows() != b.cols())
        fail(errc::invalid_input, "elementary equivalence needs square endpoint matrices");
    if (!a.zero_one() || !b.zero_one())
        fail(errc::invalid_input, "elementary equivalence is defined over 0-1 matrices");

    std::size_t n = a.rows();
    std::size_t q = b.rows();
    EsseSearchResult res;

    // s*r must land back on b's shape, so only the inner dimension equal to
    // b's size admits candidates at all.
    if (q > m_max) {
        res.status = EsseSearchResult::Status::none;
        res.note = "inner dimensions 1.." + std::to_string(m_max) +
                   " are all shape-incompatible with b";
        return res;
    }

    std::size_t rbits = n * q, sbits = q * n;
    if (rbits + sbits >= 63)
        fail(errc::budget_exceeded, "search space too large to enumerate");

    auto unpack = [](std::uint64_t bits, std::size_t rows, std::size_t cols) {
        // Column-wise binary counting: bit j*rows+i is entry (i, j).
        IntMatrix m(rows, cols);
        for (std::size_t j = 0; j < cols; ++j)
            for (std::size_t i = 0; i < rows; ++i)
                if (bits >> (j * rows + i) & 1)
                    m.at(i, j) = 1;
        return m;
    };

    for (std::uint64_t rv = 0; rv < (1ull << rbits); ++rv) {
        IntMatrix r = unpack(rv, n, q);
        for (std::uint64_t sv = 0; sv < (1ull << sbits); ++sv) {
            if (res.examined == budget) {
                res.status = EsseSearchResult::Status::budget;
                res.note = "budget of " + std::to_string(budget) + " candidate pairs exhausted";
                return res;
            }
            ++res.examined;
            IntMatrix s = unpack(sv, q, n);
            if (r * s == a && s * r == b) {
                res.status = EsseSearchResult::Status::found;
                res.r = r;
                res.s = s;
                return res;
            }
        }
    }
    res.status = EsseSearchResult::Status::none;
    res.note = "search space exhausted; no single link exists with inner dimension up to " +
               std::to_string(m_max);
    return res;
}

} // namespace gm
