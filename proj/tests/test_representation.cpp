#include "doctest.h"
#include "support.hpp"

#include "ahs/errors.hpp"
#include "ahs/representation.hpp"

using namespace ahs;
using namespace testsupport;

TEST_CASE("density representation") {
    auto alg = build_algebra(Family::Conformal, {4, 0});
    Rational w = make_q(-3, 2);
    Representation r = make_density(alg, w);
    CHECK(r.carrier_dim == 1);
    for (std::size_t c = 0; c < alg->dim_zero(); ++c) {
        Rational expect = (c == alg->grading_index()) ? -w : Rational(0);
        CHECK(r.action[c](0, 0) == expect);
    }
    CHECK(is_homomorphism(r));
}

TEST_CASE("standard representation is (A,a)p = Ap + ap") {
    auto alg = build_algebra(Family::Conformal, {4, 0});
    Representation r = make_standard(alg);
    CHECK(r.weight == -1);
    const std::size_t n = 4;
    std::size_t c = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j, ++c) {
            Matrix A = Matrix::unit(n, n, i, j) - Matrix::unit(n, n, j, i);
            CHECK(r.action[c] == A);
        }
    CHECK(r.action[alg->grading_index()] == Matrix::identity(n));
    CHECK(is_homomorphism(r));
    CHECK(is_homomorphism(make_dual_standard(alg)));
}

TEST_CASE("weights add under tensor products") {
    auto alg = build_algebra(Family::Conformal, {3, 0});
    Representation t = make_tensor(make_density(alg, 2), make_density(alg, make_q(-1, 3)));
    Representation d = make_density(alg, make_q(5, 3));
    CHECK(t.weight == d.weight);
    CHECK(t.action == d.action);
    Representation mixed = make_tensor(make_standard(alg), make_density(alg, 1));
    CHECK(mixed.weight == 0);
    CHECK(is_homomorphism(mixed));
    CHECK(mixed.act0(alg->grading_element().zero) == Matrix::identity(3) * Rational(0));
    Representation sh = make_shifted(make_standard(alg), 2);
    CHECK(sh.weight == 1);
    CHECK(sh.act0(alg->grading_element().zero) == Matrix::identity(3) * Rational(-1));
    CHECK(is_homomorphism(sh));
}

TEST_CASE("rep descriptors") {
    auto alg = build_algebra(Family::Conformal, {4, 0});
    CHECK(make_rep(alg, "density:w=-1").weight == -1);
    CHECK(make_rep(alg, "density:1/2").weight == make_q(1, 2));
    CHECK(make_rep(alg, "tensor(standard,density:w=3)").weight == 2);
    CHECK(make_rep(alg, "shifted(dual_standard, -2)").weight == -1);
    CHECK_THROWS_AS(make_rep(alg, "spinor"), ParameterError);
    CHECK_THROWS_AS(make_rep(alg, "density:w=x"), ParameterError);
    auto other = build_algebra(Family::Conformal, {3, 0});
    CHECK_THROWS_AS(make_tensor(make_density(alg, 1), make_density(other, 1)), ParameterError);
}

TEST_CASE("tensor action") {
    auto alg = build_algebra(Family::Conformal, {3, 0});
    Representation r = make_density(alg, make_q(2, 5));
    Element A = rnd_element(*alg, 0);
    CHECK(tensor_action(r, 0, A.zero) == r.act0(A.zero));

    // lambda([X, Gamma.Y]) s = (-w) <Gamma Y, X> s
    Matrix gamma = rnd_matrix(3, 3);
    Vec X = rnd_vec(3), Y = rnd_vec(3);
    Element gy = alg->zero();
    gy.plus = gamma * Y;
    Element x = alg->zero();
    x.minus = X;
    Element br = alg->bracket(x, gy);
    Rational pairing = 0;
    for (std::size_t j = 0; j < 3; ++j) pairing += X[j] * gy.plus[j];
    CHECK(act(r, 0, br, Vec{1})[0] == -r.weight * pairing);

    for (int k = 1; k <= 2; ++k) CHECK(is_homomorphism(r, k));
    CHECK(is_homomorphism(make_standard(alg), 2));
    // center acts on the k-th tensor power by -w - k
    for (int k = 0; k <= 3; ++k)
        CHECK(tensor_action(r, k, alg->grading_element().zero) ==
              Matrix::identity(tensor_dim(r, k)) * (-r.weight - k));
    CHECK_THROWS_AS(act(r, 1, A, Vec(2)), DimensionError);
    CHECK_THROWS_AS(act(r, 0, rnd_element(*alg, 1), Vec(1)), GradeError);
}

TEST_CASE("orthogonal projectors") {
    for (int m : {3, 4, 5}) {
        auto alg = build_algebra(Family::Conformal, {m, 0});
        Matrix p1 = projection(*alg, 2, ProjectorKind::Sym0);
        Matrix p2 = projection(*alg, 2, ProjectorKind::Trace);
        Matrix p3 = projection(*alg, 2, ProjectorKind::Alt);
        const std::size_t d = static_cast<std::size_t>(m * m);
        CHECK(p1 + p2 + p3 == Matrix::identity(d));
        std::vector<Matrix> ps{p1, p2, p3};
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j)
                CHECK((ps[i] * ps[j]).is_zero() == (i != j));
        for (auto& p : ps) CHECK(p * p == p);
        CHECK(rank(p1) == static_cast<std::size_t>(m * (m + 1) / 2 - 1));
        CHECK(rank(p2) == 1);
        CHECK(rank(p3) == static_cast<std::size_t>(m * (m - 1) / 2));
        Matrix s3 = projection(*alg, 3, ProjectorKind::Sym3_0);
        CHECK(s3 * s3 == s3);
        CHECK(rank(s3) == static_cast<std::size_t>(m * (m + 1) * (m + 2) / 6 - m));

        Representation r = make_density(alg, 1);
        for (std::size_t c = 0; c < alg->dim_zero(); ++c) {
            Matrix l2 = tensor_action(r, 2, alg->unit(0, c).zero);
            for (auto& p : ps) CHECK(p * l2 == l2 * p);
            Matrix l3 = tensor_action(r, 3, alg->unit(0, c).zero);
            CHECK(s3 * l3 == l3 * s3);
        }
    }
    auto alg4 = build_algebra(Family::Conformal, {4, 0});
    CHECK(rank(projection(*alg4, 2, ProjectorKind::Sym0)) == 9);
    CHECK(rank(projection(*alg4, 2, ProjectorKind::Alt)) == 6);
    CHECK(rank(projection(*alg4, 3, ProjectorKind::Sym3_0)) == 16);
    CHECK(projection(*alg4, 2, ProjectorKind::Trace, 3).rows() == 48);
    CHECK_THROWS_AS(projection(*alg4, 3, ProjectorKind::Trace), UnsupportedError);
    CHECK_THROWS_AS(projection(*alg4, 2, ProjectorKind::Sym3_0), UnsupportedError);
    auto lag = build_algebra(Family::Lagrangian, {2});
    CHECK_THROWS_AS(projection(*lag, 2, ProjectorKind::Sym0), UnsupportedError);
}

TEST_CASE("projectors in indefinite signature") {
    auto alg = build_algebra(Family::Conformal, {2, 1});
    Matrix p1 = projection(*alg, 2, ProjectorKind::Sym0);
    Representation r = make_density(alg, 0);
    for (std::size_t c = 0; c < alg->dim_zero(); ++c) {
        Matrix l2 = tensor_action(r, 2, alg->unit(0, c).zero);
        CHECK(p1 * l2 == l2 * p1);
    }
    CHECK(rank(p1) == 5);
}
