#include "ahs/matrix.hpp"

#include "ahs/errors.hpp"

#include <sstream>

namespace ahs {

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Matrix Matrix::unit(std::size_t rows, std::size_t cols, std::size_t r, std::size_t c) {
    Matrix m(rows, cols);
    m(r, c) = 1;
    return m;
}

Matrix Matrix::from_rows(const std::vector<Vec>& rows) {
    if (rows.empty()) return {};
    Matrix m(rows.size(), rows[0].size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != m.cols_) throw DimensionError("ragged rows");
        for (std::size_t c = 0; c < m.cols_; ++c) m(r, c) = rows[r][c];
    }
    return m;
}

Matrix Matrix::from_columns(const std::vector<Vec>& cols, std::size_t rows) {
    Matrix m(rows, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) m.set_column(c, cols[c]);
    return m;
}

Vec Matrix::row(std::size_t r) const {
    return Vec(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_);
}

Vec Matrix::column(std::size_t c) const {
    Vec v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
}

void Matrix::set_column(std::size_t c, const Vec& v) {
    if (v.size() != rows_) throw DimensionError("column size mismatch");
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
    if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) throw DimensionError("block out of range");
    for (std::size_t r = 0; r < b.rows_; ++r)
        for (std::size_t c = 0; c < b.cols_; ++c) (*this)(r0 + r, c0 + c) = b(r, c);
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw DimensionError("block out of range");
    Matrix b(nr, nc);
    for (std::size_t r = 0; r < nr; ++r)
        for (std::size_t c = 0; c < nc; ++c) b(r, c) = (*this)(r0 + r, c0 + c);
    return b;
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

Rational Matrix::trace() const {
    if (!is_square()) throw DimensionError("trace of non-square matrix");
    Rational s = 0;
    for (std::size_t i = 0; i < rows_; ++i) s += (*this)(i, i);
    return s;
}

bool Matrix::is_zero() const {
    for (const auto& x : data_)
        if (x != 0) return false;
    return true;
}

Matrix& Matrix::operator+=(const Matrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("matrix size mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("matrix size mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
}

Matrix& Matrix::operator*=(const Rational& c) {
    for (auto& x : data_) x *= c;
    return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw DimensionError("matrix product size mismatch");
    Matrix p(a.rows_, b.cols_);
    Rational t;
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Rational& aik = a(i, k);
            if (aik == 0) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) {
                const Rational& bkj = b(k, j);
                if (bkj == 0) continue;
                t = aik * bkj;
                p(i, j) += t;
            }
        }
    return p;
}

Vec operator*(const Matrix& a, const Vec& v) {
    if (a.cols_ != v.size()) throw DimensionError("matrix-vector size mismatch");
    Vec r(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k)
            if (a(i, k) != 0 && v[k] != 0) r[i] += a(i, k) * v[k];
    return r;
}

bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

std::string Matrix::str() const {
    std::ostringstream os;
    for (std::size_t r = 0; r < rows_; ++r) {
        os << "[";
        for (std::size_t c = 0; c < cols_; ++c) os << (c ? " " : "") << (*this)(r, c).get_str();
        os << "]\n";
    }
    return os.str();
}

Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix k(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (a(i, j) == 0) continue;
            for (std::size_t r = 0; r < b.rows(); ++r)
                for (std::size_t c = 0; c < b.cols(); ++c)
                    if (b(r, c) != 0) k(i * b.rows() + r, j * b.cols() + c) = a(i, j) * b(r, c);
        }
    return k;
}

Rref rref(Matrix m) {
    Rref out;
    std::size_t lead_row = 0;
    for (std::size_t c = 0; c < m.cols() && lead_row < m.rows(); ++c) {
        std::size_t p = lead_row;
        while (p < m.rows() && m(p, c) == 0) ++p;
        if (p == m.rows()) continue;
        if (p != lead_row)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(lead_row, j));
        Rational inv = 1 / m(lead_row, c);
        for (std::size_t j = c; j < m.cols(); ++j) m(lead_row, j) *= inv;
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == lead_row || m(r, c) == 0) continue;
            Rational f = m(r, c);
            for (std::size_t j = c; j < m.cols(); ++j)
                if (m(lead_row, j) != 0) m(r, j) -= f * m(lead_row, j);
        }
        out.pivots.push_back(c);
        ++lead_row;
    }
    out.reduced = std::move(m);
    return out;
}

std::size_t rank(const Matrix& m) { return rref(m).pivots.size(); }

Matrix nullspace(const Matrix& m) {
    Rref r = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : r.pivots) is_pivot[p] = true;
    std::vector<Vec> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        Vec v(m.cols());
        v[f] = 1;
        for (std::size_t i = 0; i < r.pivots.size(); ++i) v[r.pivots[i]] = -r.reduced(i, f);
        basis.push_back(std::move(v));
    }
    return Matrix::from_columns(basis, m.cols());
}

bool solve(const Matrix& a, const Vec& b, Vec& x) {
    if (b.size() != a.rows()) throw DimensionError("rhs size mismatch");
    Matrix aug(a.rows(), a.cols() + 1);
    aug.set_block(0, 0, a);
    aug.set_column(a.cols(), b);
    Rref r = rref(aug);
    x.assign(a.cols(), Rational(0));
    for (std::size_t i = 0; i < r.pivots.size(); ++i) {
        if (r.pivots[i] == a.cols()) return false;
        x[r.pivots[i]] = r.reduced(i, a.cols());
    }
    return true;
}

Matrix inverse(const Matrix& m) {
    if (!m.is_square()) throw DimensionError("inverse of non-square matrix");
    std::size_t n = m.rows();
    Matrix aug(n, 2 * n);
    aug.set_block(0, 0, m);
    aug.set_block(0, n, Matrix::identity(n));
    Rref r = rref(aug);
    if (r.pivots.size() < n || r.pivots[n - 1] >= n) throw MembershipError("singular matrix");
    return r.reduced.block(0, n, n, n);
}

ColumnSpaceCoordinates::ColumnSpaceCoordinates(const Matrix& basis_columns) : basis_(basis_columns) {
    // pivot rows of the transpose pick a square invertible submatrix
    Rref r = rref(basis_columns.transpose());
    if (r.pivots.size() != basis_columns.cols())
        throw DimensionError("basis columns are linearly dependent");
    rows_ = r.pivots;
    Matrix sub(rows_.size(), basis_.cols());
    for (std::size_t i = 0; i < rows_.size(); ++i)
        for (std::size_t c = 0; c < basis_.cols(); ++c) sub(i, c) = basis_(rows_[i], c);
    inv_ = inverse(sub);
}

Vec ColumnSpaceCoordinates::apply(const Vec& v) const {
    if (v.size() != basis_.rows()) throw DimensionError("vector size mismatch");
    Vec picked(rows_.size());
    for (std::size_t i = 0; i < rows_.size(); ++i) picked[i] = v[rows_[i]];
    return inv_ * picked;
}

bool ColumnSpaceCoordinates::contains(const Vec& v) const { return basis_ * apply(v) == v; }

Vec ColumnSpaceCoordinates::coordinates(const Vec& v) const {
    Vec c = apply(v);
    if (basis_ * c != v) throw MembershipError("vector is not in the span");
    return c;
}

}  // namespace ahs
