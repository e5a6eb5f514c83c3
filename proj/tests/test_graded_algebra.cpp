#include "doctest.h"
#include "support.hpp"

#include "ahs/errors.hpp"
#include "ahs/graded_algebra.hpp"

using namespace ahs;
using namespace testsupport;

namespace {

std::string case_name(const FamilyCase& c) {
    std::string s = family_name(c.family) + "(";
    for (std::size_t i = 0; i < c.params.size(); ++i) s += (i ? "," : "") + std::to_string(c.params[i]);
    return s + ")";
}

}  // namespace

TEST_CASE("dimensions of the model algebras") {
    CHECK(build_algebra(Family::Grassmannian, {1, 3})->dim_minus() == 3);
    auto c3 = build_algebra(Family::Conformal, {3, 0});
    CHECK(c3->dim_minus() == 3);
    CHECK(c3->dim_zero() == 4);
    CHECK(c3->dim() == 10);
    CHECK(build_algebra(Family::Lagrangian, {2})->dim_minus() == 3);
    CHECK(build_algebra(Family::Spinorial, {3})->dim_minus() == 3);
    CHECK(build_algebra(Family::Grassmannian, {2, 3})->dim() == 24);
}

TEST_CASE("parameter domain") {
    CHECK_THROWS_AS(build_algebra(Family::Grassmannian, {0, 2}), ParameterError);
    CHECK_THROWS_AS(build_algebra(Family::Conformal, {2, 0}), ParameterError);
    CHECK_THROWS_AS(build_algebra(Family::Lagrangian, {1}), ParameterError);
    CHECK_THROWS_AS(build_algebra(Family::Spinorial, {1}), ParameterError);
    CHECK_THROWS_AS(parse_family("g2"), ParameterError);
}

TEST_CASE("conformal basis preserves the bilinear form") {
    for (auto mn : std::vector<std::vector<int>>{{3, 0}, {4, 0}, {3, 1}}) {
        auto alg = build_algebra(Family::Conformal, mn);
        const std::size_t N = alg->matrix_size();
        Matrix Q(N, N);
        Q(0, N - 1) = 1;
        Q(N - 1, 0) = 1;
        Q.set_block(1, 1, alg->signature());
        for (std::size_t b = 0; b < alg->dim(); ++b) {
            const Matrix& M = alg->basis_matrix(b);
            CHECK((M.transpose() * Q + Q * M).is_zero());
        }
    }
}

TEST_CASE("Jacobi identity and grading closure") {
    for (const auto& fc : small_families()) {
        CAPTURE(case_name(fc));
        auto alg = build_algebra(fc.family, fc.params);
        const std::size_t D = alg->dim();
        std::vector<Element> e;
        for (std::size_t b = 0; b < D; ++b) e.push_back(alg->from_flat([&] {
            Vec v(D);
            v[b] = 1;
            return v;
        }()));
        bool jacobi = true, closure = true, matches = true;
        for (std::size_t a = 0; a < D; ++a)
            for (std::size_t b = 0; b < D; ++b) {
                Element ab = alg->bracket(e[a], e[b]);
                int g = alg->grade_of(a) + alg->grade_of(b);
                if (g < -1 || g > 1) closure &= ab.is_zero();
                else closure &= ab.is_pure(g);
                matches &= alg->to_matrix(ab) == commutator(alg->basis_matrix(a), alg->basis_matrix(b));
                if (b <= a) continue;
                for (std::size_t c = b + 1; c < D; ++c) {
                    Element j = alg->bracket(e[a], alg->bracket(e[b], e[c])) +
                                alg->bracket(e[b], alg->bracket(e[c], e[a])) +
                                alg->bracket(e[c], alg->bracket(e[a], e[b]));
                    jacobi &= j.is_zero();
                }
            }
        CHECK(jacobi);
        CHECK(closure);
        CHECK(matches);
    }
}

TEST_CASE("Killing pairing, dual bases and reconstruction") {
    for (const auto& fc : small_families()) {
        CAPTURE(case_name(fc));
        auto alg = build_algebra(fc.family, fc.params);
        const std::size_t n = alg->dim_minus();
        CHECK(rank(alg->killing_pairing()) == n);
        DualBases d = killing_dual_bases(*alg);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                CHECK(alg->killing(d.xi[a], d.eta[b]) == Rational(a == b ? 1 : 0));
        for (std::size_t z = 0; z < n; ++z) {
            Element Z = alg->unit(1, z), sum = alg->zero();
            for (std::size_t a = 0; a < n; ++a) sum += alg->killing(d.xi[a], Z) * d.eta[a];
            CHECK(sum == Z);
            Element X = alg->unit(-1, z), sx = alg->zero();
            for (std::size_t a = 0; a < n; ++a) sx += alg->killing(X, d.eta[a]) * d.xi[a];
            CHECK(sx == X);
        }
    }
}

TEST_CASE("conformal(3,0) dual basis is proportional to e^a") {
    auto alg = build_algebra(Family::Conformal, {3, 0});
    // Killing form of so(4,1) is 3 tr(xy); tr(e_i e^j) = 2 delta
    DualBases d = killing_dual_bases(*alg);
    for (std::size_t a = 0; a < 3; ++a) CHECK(d.eta[a] == make_q(1, 6) * alg->unit(1, a));
}

TEST_CASE("conformal bracket of e_i and e^j") {
    for (int m = 3; m <= 5; ++m) {
        auto alg = build_algebra(Family::Conformal, {m, 0});
        const std::size_t N = alg->matrix_size();
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) {
                Matrix expect(N, N);
                expect(i + 1, j + 1) += 1;
                expect(j + 1, i + 1) -= 1;
                if (i == j) expect += alg->grading_matrix();
                Element br = alg->bracket(alg->unit(-1, i), alg->unit(1, j));
                CHECK(alg->to_matrix(br) == expect);
            }
    }
}

TEST_CASE("lagrangian bracket is the matrix product X.Z") {
    auto alg = build_algebra(Family::Lagrangian, {2});
    Element X = rnd_element(*alg, -1), Z = rnd_element(*alg, 1);
    Matrix mx = alg->to_matrix(X), mz = alg->to_matrix(Z);
    Matrix xb = mx.block(0, 2, 2, 2), zb = mz.block(2, 0, 2, 2);
    Matrix br = alg->to_matrix(alg->bracket(X, Z));
    CHECK(br.block(0, 0, 2, 2) == xb * zb);
    CHECK(br.block(2, 2, 2, 2) == -(xb * zb).transpose());
    CHECK(alg->bracket(X, X).is_zero());
}

TEST_CASE("ad_exp agrees with matrix conjugation") {
    for (const auto& fc : small_families()) {
        CAPTURE(case_name(fc));
        auto alg = build_algebra(fc.family, fc.params);
        const std::size_t n = alg->dim_minus();
        bool ok = true;
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
                Element z = alg->unit(1, a), x = alg->unit(-1, b);
                Matrix ez = exp_nilpotent(alg->to_matrix(z));
                Matrix oracle = ez * alg->to_matrix(x) * exp_nilpotent(-alg->to_matrix(z));
                ok &= alg->to_matrix(ad_exp(*alg, z, x)) == oracle;
            }
        Element z = rnd_element(*alg, 1), x = rnd_element(*alg, -1);
        ok &= alg->to_matrix(ad_exp(*alg, z, x)) ==
              exp_nilpotent(alg->to_matrix(z)) * alg->to_matrix(x) * exp_nilpotent(-alg->to_matrix(z));
        CHECK(ok);
        CHECK(ad_exp(*alg, alg->zero(), x) == x);
        CHECK_THROWS_AS(ad_exp(*alg, x, x), GradeError);
    }
}

TEST_CASE("ad_exp example in conformal(3,0)") {
    auto alg = build_algebra(Family::Conformal, {3, 0});
    Element e1 = alg->unit(-1, 0), E1 = alg->unit(1, 0);
    Element expect = e1 - alg->grading_element() - make_q(1, 2) * E1;
    CHECK(ad_exp(*alg, E1, e1) == expect);
}

TEST_CASE("grading scalars follow the matrix realization") {
    for (const auto& fc : small_families()) {
        auto alg = build_algebra(fc.family, fc.params);
        Element v = rnd_element(*alg, -1) + rnd_element(*alg, 0) + rnd_element(*alg, 1);
        auto s = grading_scalars(*alg, alg->unit(-1, 0) + alg->unit(0, 0) + alg->unit(1, 0));
        CHECK(s.at(-1) == 1);
        CHECK(s.at(0) == 0);
        CHECK(s.at(1) == -1);
        CHECK(grading_scalars(*alg, alg->zero()).empty());
        (void)v;
    }
}

TEST_CASE("group factorization") {
    for (const auto& fc : small_families()) {
        CAPTURE(case_name(fc));
        auto alg = build_algebra(fc.family, fc.params);
        const std::size_t N = alg->matrix_size();
        Element Z = rnd_element(*alg, 1), W = rnd_element(*alg, 1);
        Matrix eZ = exp_nilpotent(alg->to_matrix(Z));

        auto f1 = factor_group_element(*alg, eZ);
        CHECK(f1.b0_part == Matrix::identity(N));
        CHECK(f1.g1_log == Z);

        // random invertible block-diagonal b0
        Matrix b0(N, N);
        do {
            b0 = Matrix(N, N);
            for (std::size_t r = 0; r < N; ++r)
                for (std::size_t c = 0; c < N; ++c)
                    if (position_degree(*alg, r, c) == 0) b0(r, c) = rnd_q();
        } while (rank(b0) < N);
        auto f2 = factor_group_element(*alg, b0);
        CHECK(f2.b0_part == b0);
        CHECK(f2.g1_log.is_zero());

        Matrix b = b0 * eZ;
        auto f3 = factor_group_element(*alg, b);
        CHECK(f3.b0_part * exp_nilpotent(alg->to_matrix(f3.g1_log)) == b);
        auto f4 = factor_group_element(*alg, b * exp_nilpotent(alg->to_matrix(W)));
        CHECK(f4.g1_log == f3.g1_log + W);

        Matrix bad = Matrix::identity(N) + alg->to_matrix(alg->unit(-1, 0));
        CHECK_THROWS_AS(factor_group_element(*alg, bad), MembershipError);
    }
}
