#pragma once

#include "ahs/rational.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace ahs {

// Dense exact matrix, row-major.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols);

    static Matrix identity(std::size_t n);
    static Matrix unit(std::size_t rows, std::size_t cols, std::size_t r, std::size_t c);
    static Matrix from_rows(const std::vector<Vec>& rows);
    static Matrix from_columns(const std::vector<Vec>& cols, std::size_t rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    Vec row(std::size_t r) const;
    Vec column(std::size_t c) const;
    void set_column(std::size_t c, const Vec& v);
    void set_block(std::size_t r0, std::size_t c0, const Matrix& b);
    Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;

    Matrix transpose() const;
    Rational trace() const;
    bool is_zero() const;
    bool is_square() const { return rows_ == cols_; }

    Matrix& operator+=(const Matrix& o);
    Matrix& operator-=(const Matrix& o);
    Matrix& operator*=(const Rational& c);

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(Matrix a, const Rational& c) { return a *= c; }
    friend Matrix operator*(const Rational& c, Matrix a) { return a *= c; }
    friend Matrix operator-(Matrix a) { return a *= Rational(-1); }
    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend Vec operator*(const Matrix& a, const Vec& v);
    friend bool operator==(const Matrix& a, const Matrix& b);
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

    std::string str() const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Rational> data_;
};

Matrix commutator(const Matrix& a, const Matrix& b);
Matrix kron(const Matrix& a, const Matrix& b);

struct Rref {
    Matrix reduced;
    std::vector<std::size_t> pivots;  // pivot column per nonzero row
};

Rref rref(Matrix m);
std::size_t rank(const Matrix& m);
// columns form a basis of the kernel
Matrix nullspace(const Matrix& m);
// one solution of a x = b, or false when inconsistent
bool solve(const Matrix& a, const Vec& b, Vec& x);
Matrix inverse(const Matrix& m);  // throws when singular

// Exact left inverse of a full-column-rank matrix restricted to chosen rows.
// apply() reads only the pivot rows; contains() checks exact membership.
class ColumnSpaceCoordinates {
public:
    ColumnSpaceCoordinates() = default;
    explicit ColumnSpaceCoordinates(const Matrix& basis_columns);
    std::size_t dim() const { return basis_.cols(); }
    Vec apply(const Vec& v) const;
    bool contains(const Vec& v) const;
    // coordinates, throwing MembershipError when v is not in the span
    Vec coordinates(const Vec& v) const;
    const Matrix& basis() const { return basis_; }

private:
    Matrix basis_;
    std::vector<std::size_t> rows_;
    Matrix inv_;
};

}  // namespace ahs
