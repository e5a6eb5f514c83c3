#pragma once

#include "ahs/graded_algebra.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ahs {

// Gamma(e_i) = sum_j gamma(j, i) e^j; nabla[c] is the derivative along e_c
struct DeformationTensor {
    Matrix gamma;
    std::optional<std::vector<Matrix>> nabla;
};

// kappa(e_i, e_j) for all basis pairs; grade parts are kappa_{-1}, kappa_0, kappa_1
struct CurvatureData {
    std::size_t n = 0;
    std::vector<Element> values;                // index i*n + j
    std::optional<std::vector<Element>> nabla;  // nabla_{e_c} kappa(e_i, e_j), index (c*n + i)*n + j

    Element& at(std::size_t i, std::size_t j) { return values[i * n + j]; }
    const Element& at(std::size_t i, std::size_t j) const { return values[i * n + j]; }
    const Element& nabla_at(std::size_t c, std::size_t i, std::size_t j) const;
};

CurvatureData zero_curvature(const GradedLieAlgebra& alg);
// throws MembershipError unless kappa(X,Y) = -kappa(Y,X) with correctly sized parts
void check_curvature(const GradedLieAlgebra& alg, const CurvatureData& k);

// K^k_{lij} with kappa_0(e_i,e_j) e_l = sum_k K^k_{lij} e_k
class Tensor4 {
public:
    Tensor4() = default;
    explicit Tensor4(std::size_t m) : m_(m), data_(m * m * m * m) {}
    std::size_t dim() const { return m_; }
    Rational& operator()(std::size_t k, std::size_t l, std::size_t i, std::size_t j) {
        return data_[((k * m_ + l) * m_ + i) * m_ + j];
    }
    const Rational& operator()(std::size_t k, std::size_t l, std::size_t i, std::size_t j) const {
        return data_[((k * m_ + l) * m_ + i) * m_ + j];
    }

private:
    std::size_t m_ = 0;
    std::vector<Rational> data_;
};

Tensor4 kappa0_coordinates(const GradedLieAlgebra& alg, const CurvatureData& k);
// builds kappa_0 from coordinates; other grades zero
CurvatureData curvature_from_coordinates(const GradedLieAlgebra& alg, const Tensor4& K);
// K^k_{lij} = delta_kj delta_li - delta_ki delta_lj
Tensor4 constant_curvature(std::size_t m);

// (l, j) -> sum_i K^i_{lij}
Matrix trace_curvature(const Tensor4& K);
// (i, j) -> sum_k K^k_{kij}
Matrix internal_trace(const Tensor4& K);
// sum_{i,j} K^i_{jij}
Rational scalar_trace(const Tensor4& K);
// Ric_{lj} = sum_i K^i_{lji}, scalar = trace of Ric
Matrix ricci(const Tensor4& K);

// change of the three contractions under deform_curvature
Matrix trace_change(const Matrix& gamma);
Matrix internal_trace_change(const Matrix& gamma);
Rational scalar_trace_change(const Matrix& gamma);

Vec gamma_apply(const DeformationTensor& g, const Vec& x);

CurvatureData deform_kappa0(const GradedLieAlgebra& alg, const DeformationTensor& g, const CurvatureData& k);
// also deforms kappa_1; requires g.nabla
CurvatureData deform_curvature(const GradedLieAlgebra& alg, const DeformationTensor& g, const CurvatureData& k);

DeformationTensor rho_tensor(const GradedLieAlgebra& alg, const Matrix& ricci, const Rational& scalar);

struct Normalization {
    DeformationTensor gamma;
    bool unique = false;
    std::size_t rank = 0, unknowns = 0;
    Rational deformed_trace_max_abs;
};
// solves trace(deformed) = 0 and internal_trace(deformed) = 0 for Gamma
Normalization normalize_connection(const GradedLieAlgebra& alg, const CurvatureData& k);
Normalization normalize_traces(const GradedLieAlgebra& alg, const Matrix& trace, const Matrix& internal);

CurvatureData fiber_transport(const GradedLieAlgebra& alg, const CurvatureData& k, const Element& tau);

struct ConnectionChange {
    DeformationTensor gamma;
    std::vector<Vec> shift;  // [e_i, upsilon] in g_0; nabla^gamma s = nabla^gamma0 s + lambda(shift) s
};
// upsilon in g_1, nabla_upsilon in the Gamma convention
ConnectionChange change_of_connection(const GradedLieAlgebra& alg, const DeformationTensor& g0, const Vec& upsilon,
                                      const Matrix& nabla_upsilon);

// cyclic sum over (X,Y,Z) of [k(X,Y),Z] - k(k_{-1}(X,Y),Z) - nabla_Z k(X,Y), index (i*n + j)*n + l
std::vector<Element> bianchi_defect(const GradedLieAlgebra& alg, const CurvatureData& k);

// the pointwise data read from curvature JSON
struct CurvatureInput {
    int m = 0;
    Matrix ricci;
    Rational scalar;
    std::optional<Tensor4> riemann;
};
CurvatureInput parse_curvature_json(const std::string& text);
std::string normalization_json(const Normalization& n);

void require_conformal(const GradedLieAlgebra& alg);

}  // namespace ahs
