#pragma once

// Exact dense/sparse linear algebra over GF(p): rank, solve, kernel bases.
// Elimination is plain Gaussian with first-nonzero pivoting; in exact
// arithmetic there is no tie-breaking sensitivity.

#include <algorithm>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "qhopf/fp.hpp"

namespace qhopf {

class Matrix {
public:
    Matrix(u32 p, std::size_t rows, std::size_t cols)
        : field_(p), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

    Matrix(const Fp& F, std::size_t rows, std::size_t cols)
        : field_(F), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

    static Matrix identity(u32 p, std::size_t n) {
        Matrix m(p, n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    const Fp& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    u32& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    u32 at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    Vec row(std::size_t r) const {
        return Vec(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_);
    }

    void set_row(std::size_t r, const Vec& v) {
        std::copy(v.begin(), v.end(), data_.begin() + r * cols_);
    }

    Matrix transposed() const {
        Matrix t(field_, cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
        return t;
    }

    Vec apply(const Vec& x) const {
        if (x.size() != cols_) throw input_error("matrix-vector dimension mismatch");
        Vec y(rows_, 0);
        for (std::size_t r = 0; r < rows_; ++r) {
            u64 acc = 0;
            const u32* row = data_.data() + r * cols_;
            for (std::size_t c = 0; c < cols_; ++c) {
                acc += static_cast<u64>(row[c]) * x[c];
                if (acc >= (u64(1) << 60)) acc %= field_.p();
            }
            y[r] = field_.reduce(acc);
        }
        return y;
    }

    Matrix multiply(const Matrix& other) const {
        if (cols_ != other.rows_) throw input_error("matrix product dimension mismatch");
        Matrix out(field_, rows_, other.cols_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t k = 0; k < cols_; ++k) {
                u32 a = at(r, k);
                if (!a) continue;
                for (std::size_t c = 0; c < other.cols_; ++c)
                    out.at(r, c) = field_.add(out.at(r, c), field_.mul(a, other.at(k, c)));
            }
        return out;
    }

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

private:
    Fp field_;
    std::size_t rows_, cols_;
    Vec data_;
};

// Row space accumulated in reduced echelon form. Rows are inserted one at a
// time; pivots_ maps pivot column -> row index in basis_.
class Echelon {
public:
    Echelon(u32 p, std::size_t width) : field_(p), width_(width) {}
    Echelon(const Fp& F, std::size_t width) : field_(F), width_(width) {}

    std::size_t width() const { return width_; }
    std::size_t rank() const { return basis_.size(); }
    const std::vector<Vec>& basis() const { return basis_; }

    // Reduces v against the current basis (full reduction).
    Vec reduce(Vec v) const {
        for (const auto& [col, idx] : pivots_) {
            u32 c = v[col];
            if (!c) continue;
            const Vec& b = basis_[idx];
            for (std::size_t j = col; j < width_; ++j) v[j] = field_.sub(v[j], field_.mul(c, b[j]));
        }
        return v;
    }

    bool contains(const Vec& v) const { return vec_is_zero(reduce(v)); }

    // Returns true if v enlarged the span.
    bool insert(const Vec& v) {
        Vec r = reduce(v);
        std::size_t lead = width_;
        for (std::size_t j = 0; j < width_; ++j)
            if (r[j]) { lead = j; break; }
        if (lead == width_) return false;
        u32 s = field_.inv(r[lead]);
        for (std::size_t j = lead; j < width_; ++j) r[j] = field_.mul(r[j], s);
        // back-substitute into existing rows to keep the basis reduced
        for (auto& [col, idx] : pivots_) {
            Vec& b = basis_[idx];
            u32 c = b[lead];
            if (!c) continue;
            for (std::size_t j = lead; j < width_; ++j) b[j] = field_.sub(b[j], field_.mul(c, r[j]));
        }
        pivots_[lead] = basis_.size();
        basis_.push_back(std::move(r));
        return true;
    }

    // Sorted pivot columns.
    std::vector<std::size_t> pivot_columns() const {
        std::vector<std::size_t> cols;
        cols.reserve(pivots_.size());
        for (const auto& [col, idx] : pivots_) cols.push_back(col);
        return cols;
    }

private:
    Fp field_;
    std::size_t width_;
    std::vector<Vec> basis_;
    std::map<std::size_t, std::size_t> pivots_;
};

inline std::size_t rank(const Matrix& m) {
    Echelon e(m.field(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r) e.insert(m.row(r));
    return e.rank();
}

// Some x with m*x = rhs, or nullopt when the system is inconsistent.
inline std::optional<Vec> solve_linear(const Matrix& m, const Vec& rhs) {
    if (rhs.size() != m.rows()) throw input_error("solve_linear: rhs length must equal row count");
    const Fp& F = m.field();
    std::size_t n = m.cols();
    // eliminate on [m | rhs] rows
    Echelon e(F, n + 1);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Vec row = m.row(r);
        row.push_back(rhs[r]);
        e.insert(std::move(row));
    }
    Vec x(n, 0);
    for (const auto& b : e.basis()) {
        std::size_t lead = n + 1;
        for (std::size_t j = 0; j <= n; ++j)
            if (b[j]) { lead = j; break; }
        if (lead == n) return std::nullopt; // row 0 ... 0 | c with c != 0
        if (lead > n) continue;
        // reduced echelon: free variables stay 0, so x[lead] = last entry
        x[lead] = b[n];
    }
    return x;
}

// Linearly independent spanning set of the null space; size = cols - rank.
inline std::vector<Vec> kernel_basis(const Matrix& m) {
    const Fp& F = m.field();
    std::size_t n = m.cols();
    Echelon e(F, n);
    for (std::size_t r = 0; r < m.rows(); ++r) e.insert(m.row(r));
    auto pivots = e.pivot_columns();
    std::vector<bool> is_pivot(n, false);
    for (auto c : pivots) is_pivot[c] = true;

    std::vector<Vec> out;
    for (std::size_t free_col = 0; free_col < n; ++free_col) {
        if (is_pivot[free_col]) continue;
        Vec v(n, 0);
        v[free_col] = 1;
        for (const auto& b : e.basis()) {
            std::size_t lead = n;
            for (std::size_t j = 0; j < n; ++j)
                if (b[j]) { lead = j; break; }
            if (lead < n) v[lead] = F.neg(b[free_col]);
        }
        out.push_back(std::move(v));
    }
    return out;
}

// Gauss-Jordan inverse; throws when singular.
inline Matrix inverse(const Matrix& m) {
    if (m.rows() != m.cols()) throw input_error("inverse: matrix must be square");
    const Fp& F = m.field();
    std::size_t n = m.rows();
    Matrix a = m;
    Matrix inv = Matrix::identity(F.p(), n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a.at(piv, col) == 0) ++piv;
        if (piv == n) throw not_invertible("matrix is singular");
        if (piv != col)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a.at(piv, j), a.at(col, j));
                std::swap(inv.at(piv, j), inv.at(col, j));
            }
        u32 s = F.inv(a.at(col, col));
        for (std::size_t j = 0; j < n; ++j) {
            a.at(col, j) = F.mul(a.at(col, j), s);
            inv.at(col, j) = F.mul(inv.at(col, j), s);
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            u32 c = a.at(r, col);
            if (!c) continue;
            for (std::size_t j = 0; j < n; ++j) {
                a.at(r, j) = F.sub(a.at(r, j), F.mul(c, a.at(col, j)));
                inv.at(r, j) = F.sub(inv.at(r, j), F.mul(c, inv.at(col, j)));
            }
        }
    }
    return inv;
}

// Column-major sparse matrix for the large bar-complex differentials.
// Each column is sorted by row index.
class SparseMatrix {
public:
    using Entry = std::pair<u32, u32>; // (row, value)
    using Col = std::vector<Entry>;

    SparseMatrix(u32 p, std::size_t rows, std::size_t cols)
        : field_(p), rows_(rows), cols_(cols), columns_(cols) {}

    const Fp& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    void add_entry(std::size_t row, std::size_t col, u32 value) {
        if (value % field_.p() == 0) return;
        columns_[col].push_back({static_cast<u32>(row), value % field_.p()});
    }

    // Collapses duplicate (row) entries and sorts each column.
    void normalize() {
        for (auto& col : columns_) {
            std::sort(col.begin(), col.end());
            Col merged;
            for (const auto& [r, v] : col) {
                if (!merged.empty() && merged.back().first == r)
                    merged.back().second = field_.add(merged.back().second, v);
                else
                    merged.push_back({r, v});
            }
            merged.erase(std::remove_if(merged.begin(), merged.end(),
                                        [](const Entry& e) { return e.second == 0; }),
                         merged.end());
            col = std::move(merged);
        }
    }

    Matrix to_dense() const {
        Matrix m(field_, rows_, cols_);
        for (std::size_t c = 0; c < cols_; ++c)
            for (const auto& [r, v] : columns_[c]) m.at(r, c) = field_.add(m.at(r, c), v);
        return m;
    }

    static SparseMatrix from_dense(const Matrix& m) {
        SparseMatrix s(m.field().p(), m.rows(), m.cols());
        for (std::size_t r = 0; r < m.rows(); ++r)
            for (std::size_t c = 0; c < m.cols(); ++c)
                if (m.at(r, c)) s.add_entry(r, c, m.at(r, c));
        return s;
    }

    std::size_t rank() const {
        const Fp& F = field_;
        std::map<u32, Col> pivot_cols; // pivot row -> normalized column
        std::size_t rk = 0;
        for (std::size_t ci = 0; ci < cols_; ++ci) {
            Col col = columns_[ci];
            std::sort(col.begin(), col.end());
            while (!col.empty()) {
                u32 head_row = col.front().first;
                u32 head_val = col.front().second;
                auto it = pivot_cols.find(head_row);
                if (it == pivot_cols.end()) {
                    u32 s = F.inv(head_val);
                    for (auto& e : col) e.second = F.mul(e.second, s);
                    pivot_cols.emplace(head_row, std::move(col));
                    ++rk;
                    break;
                }
                col = axpy_merge(col, F.neg(head_val), it->second);
            }
        }
        return rk;
    }

private:
    // col + c * pivot, both sorted by row; result sorted with zeros dropped.
    Col axpy_merge(const Col& col, u32 c, const Col& pivot) const {
        const Fp& F = field_;
        Col out;
        out.reserve(col.size() + pivot.size());
        std::size_t i = 0, j = 0;
        while (i < col.size() || j < pivot.size()) {
            if (j == pivot.size() || (i < col.size() && col[i].first < pivot[j].first)) {
                out.push_back(col[i++]);
            } else if (i == col.size() || pivot[j].first < col[i].first) {
                u32 v = F.mul(c, pivot[j].second);
                if (v) out.push_back({pivot[j].first, v});
                ++j;
            } else {
                u32 v = F.add(col[i].second, F.mul(c, pivot[j].second));
                if (v) out.push_back({col[i].first, v});
                ++i;
                ++j;
            }
        }
        return out;
    }

    Fp field_;
    std::size_t rows_, cols_;
    std::vector<Col> columns_;
};

} // namespace qhopf
