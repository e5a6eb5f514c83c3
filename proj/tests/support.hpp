#pragma once

#include "ahs/graded_algebra.hpp"
#include "ahs/matrix.hpp"

#include <random>

namespace testsupport {

inline std::mt19937_64& rng() {
    static std::mt19937_64 g(20261018);
    return g;
}

// small rationals with denominators up to 4, zero allowed
inline ahs::Rational rnd_q(int span = 5) {
    std::uniform_int_distribution<int> num(-span, span), den(1, 4);
    return ahs::make_q(num(rng()), den(rng()));
}

inline ahs::Vec rnd_vec(std::size_t n) {
    ahs::Vec v(n);
    for (auto& x : v) x = rnd_q();
    return v;
}

inline ahs::Matrix rnd_matrix(std::size_t r, std::size_t c) {
    ahs::Matrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = rnd_q();
    return m;
}

inline ahs::Element rnd_element(const ahs::GradedLieAlgebra& alg, int grade) {
    ahs::Element e = alg.zero();
    e.part(grade) = rnd_vec(alg.dim_grade(grade));
    return e;
}

struct FamilyCase {
    ahs::Family family;
    std::vector<int> params;
};

inline std::vector<FamilyCase> small_families() {
    using ahs::Family;
    std::vector<FamilyCase> out;
    for (int p = 1; p <= 3; ++p)
        for (int q = 1; q <= 3; ++q) out.push_back({Family::Grassmannian, {p, q}});
    for (int m = 3; m <= 6; ++m) out.push_back({Family::Conformal, {m, 0}});
    out.push_back({Family::Conformal, {3, 1}});
    out.push_back({Family::Conformal, {2, 2}});
    for (int n = 2; n <= 3; ++n) {
        out.push_back({Family::Lagrangian, {n}});
        out.push_back({Family::Spinorial, {n}});
    }
    return out;
}

}  // namespace testsupport
