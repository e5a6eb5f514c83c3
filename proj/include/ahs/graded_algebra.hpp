#pragma once

#include "ahs/matrix.hpp"
#include "ahs/rational.hpp"

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace ahs {

enum class Family { Grassmannian, Conformal, Lagrangian, Spinorial };

std::string family_name(Family f);
Family parse_family(const std::string& name);

// Coordinates split by grade: g_{-1}, g_0, g_1.
struct Element {
    Vec minus, zero, plus;

    const Vec& part(int grade) const;
    Vec& part(int grade);
    bool is_zero() const;
    bool is_pure(int grade) const;

    Element& operator+=(const Element& o);
    Element& operator-=(const Element& o);
    Element& operator*=(const Rational& c);
    friend Element operator+(Element a, const Element& b) { return a += b; }
    friend Element operator-(Element a, const Element& b) { return a -= b; }
    friend Element operator*(const Rational& c, Element a) { return a *= c; }
    friend bool operator==(const Element& a, const Element& b) {
        return a.minus == b.minus && a.zero == b.zero && a.plus == b.plus;
    }
    friend bool operator!=(const Element& a, const Element& b) { return !(a == b); }
};

struct SparseEntry {
    std::size_t index;
    Rational value;
};

class GradedLieAlgebra {
public:
    GradedLieAlgebra(Family family, std::vector<int> params);

    Family family() const { return family_; }
    const std::vector<int>& params() const { return params_; }

    std::size_t dim() const { return basis_.size(); }
    std::size_t dim_minus() const { return n_; }
    std::size_t dim_zero() const { return d0_; }
    std::size_t dim_plus() const { return n_; }
    std::size_t dim_grade(int grade) const { return grade == 0 ? d0_ : n_; }
    std::size_t matrix_size() const { return size_; }

    // global basis index: g_{-1} first, then g_0, then g_1
    std::size_t global_index(int grade, std::size_t i) const;
    int grade_of(std::size_t global) const;
    const Matrix& basis_matrix(std::size_t global) const { return basis_[global]; }
    const std::string& label(std::size_t global) const { return labels_[global]; }

    // index of the grading element inside the g_0 block
    std::size_t grading_index() const { return grading_index_; }
    Element grading_element() const;
    // the block-diagonal realization of the grading element
    const Matrix& grading_matrix() const { return basis_[n_ + grading_index_]; }
    // signature matrix (conformal) or identity
    const Matrix& signature() const { return signature_; }

    Element zero() const;
    Element unit(int grade, std::size_t i) const;
    Element from_flat(const Vec& v) const;
    Vec to_flat(const Element& x) const;
    void check(const Element& x) const;

    Matrix to_matrix(const Element& x) const;
    // throws MembershipError if m is not in the algebra
    Element from_matrix(const Matrix& m) const;

    Element bracket(const Element& x, const Element& y) const;
    // grade-restricted brackets on coordinate blocks
    Vec bracket_parts(int gx, const Vec& x, int gy, const Vec& y, int target) const;

    // structure constants c_{ab}^c as sparse lists per ordered pair (a,b)
    const std::vector<SparseEntry>& structure(std::size_t a, std::size_t b) const {
        return structure_[a * dim() + b];
    }
    // tr(ad x ad y) for g_{-1} basis x and g_1 basis y
    const Matrix& killing_pairing() const { return killing_; }
    Rational killing(const Element& x, const Element& y) const;

    // n x n matrix of ad(A) on g_{-1} for a g_0 coordinate vector
    Matrix ad_on_minus(const Vec& a0) const;
    // g_0 basis element c acting on g_{-1}
    const Matrix& ad_on_minus_basis(std::size_t c) const { return ad_minus_[c]; }
    // inverse of ad_on_minus: the g_0 element with the given action on g_{-1}
    Vec g0_from_action(const Matrix& action) const;

private:
    void build_grassmannian(int p, int q);
    void build_conformal(int m, int n);
    void build_lagrangian_like(int n, bool symmetric);
    void add(int grade, Matrix m, std::string label);
    void finalize();

    Family family_;
    std::vector<int> params_;
    std::size_t size_ = 0;
    std::size_t n_ = 0, d0_ = 0;
    std::size_t grading_index_ = 0;
    std::vector<Matrix> minus_, zero_, plus_;
    std::vector<std::string> minus_l_, zero_l_, plus_l_;
    std::vector<Matrix> basis_;
    std::vector<std::string> labels_;
    std::vector<std::vector<SparseEntry>> structure_;
    Matrix killing_;
    Matrix signature_;
    ColumnSpaceCoordinates coords_;
    std::vector<Matrix> ad_minus_;
    ColumnSpaceCoordinates g0_action_coords_;
};

using AlgebraPtr = std::shared_ptr<const GradedLieAlgebra>;

AlgebraPtr build_algebra(Family family, const std::vector<int>& params);

Element bracket(const GradedLieAlgebra& alg, const Element& x, const Element& y);

struct DualBases {
    std::vector<Element> xi;   // basis of g_{-1}
    std::vector<Element> eta;  // Killing-dual basis of g_1
};
DualBases killing_dual_bases(const GradedLieAlgebra& alg);

// x + [z,x] + 1/2 [z,[z,x]]
Element ad_exp(const GradedLieAlgebra& alg, const Element& z, const Element& x);

// exact exponential of a nilpotent matrix
Matrix exp_nilpotent(const Matrix& m);
// exact logarithm of a unipotent matrix
Matrix log_unipotent(const Matrix& u);

struct GroupFactorization {
    Matrix b0_part;
    Element g1_log;
};
GroupFactorization factor_group_element(const GradedLieAlgebra& alg, const Matrix& b);
// ad(I)-eigenvalue of a matrix position; B is where this is <= 0
Rational position_degree(const GradedLieAlgebra& alg, std::size_t r, std::size_t c);

std::map<int, Rational> grading_scalars(const GradedLieAlgebra& alg, const Element& v);

}  // namespace ahs
