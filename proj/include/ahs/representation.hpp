#pragma once

#include "ahs/graded_algebra.hpp"

#include <string>
#include <vector>

namespace ahs {

struct Representation {
    AlgebraPtr algebra;
    std::size_t carrier_dim = 0;
    std::vector<Matrix> action;  // one matrix per g_0 basis element
    Rational weight;             // lambda(I) = -weight
    std::string label;

    // lambda(A) for a g_0 coordinate vector
    Matrix act0(const Vec& a0) const;
};

Representation make_density(AlgebraPtr alg, const Rational& w);
Representation make_standard(AlgebraPtr alg);
Representation make_dual_standard(AlgebraPtr alg);
Representation make_tensor(const Representation& a, const Representation& b);
Representation make_shifted(const Representation& r, const Rational& dw);
// "density:w=-1", "standard", "dual_standard", "tensor(<rep>,<rep>)", "shifted(<rep>,<dw>)"
Representation make_rep(AlgebraPtr alg, const std::string& descriptor);

// coefficient of the grading element in a g_0 coordinate vector
Rational center_coefficient(const GradedLieAlgebra& alg, const Vec& a0);

std::size_t tensor_dim(const Representation& rep, int k);
// lambda^(k)(A) on (x)^k g_{-1}^* (x) V; slot 1 is the slowest index, V the fastest
Matrix tensor_action(const Representation& rep, int k, const Vec& a0);
Vec act(const Representation& rep, int k, const Element& A, const Vec& phi);

// each of the action matrices commutes like the algebra; returns first failing pair or -1
bool is_homomorphism(const Representation& rep, int k = 0);

enum class ProjectorKind { Sym0, Trace, Alt, Sym3_0 };
std::string projector_name(ProjectorKind k);
ProjectorKind parse_projector(const std::string& s);

// projector on (x)^k g_{-1}^* (x) V, V of dimension carrier_dim
Matrix projection(const GradedLieAlgebra& alg, int k, ProjectorKind kind, std::size_t carrier_dim = 1);

}  // namespace ahs
