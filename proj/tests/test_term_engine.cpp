#include "doctest.h"
#include "fixtures.hpp"
#include "support.hpp"

#include "ahs/errors.hpp"
#include "ahs/term_engine.hpp"

using namespace ahs;
using namespace testsupport;

namespace {

Bindings random_bindings(const Representation& rep, int max_r, int max_j, bool with_tau = true) {
    const std::size_t n = rep.algebra->dim_minus();
    Bindings b;
    if (with_tau) b.tau = rnd_vec(n);
    std::size_t count = 1;
    for (int r = 0; r <= max_r; ++r, count *= n) {
        std::vector<Matrix> table;
        for (std::size_t c = 0; c < count; ++c) table.push_back(rnd_matrix(n, n));
        b.gamma.push_back(table);
    }
    for (int j = 0; j <= max_j; ++j) b.jets.push_back(rnd_vec(tensor_dim(rep, j)));
    return b;
}

}  // namespace

TEST_CASE("low order expansions") {
    CHECK(expand(0).terms.empty());
    Expansion e1 = expand(1);
    REQUIRE(e1.terms.size() == 1);
    CHECK(e1.terms[0] == fixtures::T(1, {{0, fixtures::lead(1)}}, {}));
    CHECK(render(e1, Format::Text) == "λ([X1,τ]) ∘ s");
    CHECK(render(expand(0), Format::Text) == "0");
}

TEST_CASE("term counts") {
    const int full[] = {1, 5, 24, 134, 900, 7184};
    const int corr[] = {0, 1, 4, 16, 67, 328};
    const int lin[] = {1, 2, 8, 30, 153, 830};
    for (int k = 1; k <= 6; ++k) {
        Expansion e = expand(k);
        CHECK(e.terms.size() == static_cast<std::size_t>(full[k - 1]));
        CHECK(filter_by_tau(e, 0).terms.size() == static_cast<std::size_t>(corr[k - 1]));
        CHECK(filter_by_tau(e, 1).terms.size() == static_cast<std::size_t>(lin[k - 1]));
    }
}

TEST_CASE("structural fixtures") {
    CHECK(as_map(expand(2)) == as_map(fixtures::order2()));
    CHECK(as_map(filter_by_tau(expand(2), 0)) == as_map(filter_by_tau(fixtures::order2(), 0)));
    CHECK(as_map(filter_by_tau(expand(3), 0)) == as_map(fixtures::order3_correction()));
    CHECK(as_map(expand(3)) == as_map(fixtures::order3()));
    CHECK(render(filter_by_tau(expand(2), 0), Format::Latex) == "\\lambda([X_1,\\Gamma\\cdot X_2])\\,s");
}

TEST_CASE("algebraic obstruction") {
    Expansion a1 = algebraic_obstruction(1);
    CHECK(as_map(a1) == as_map(expand(1)));
    Expansion a2 = algebraic_obstruction(2);
    CHECK(as_map(a2) == as_map(fixtures::make(2, {fixtures::T(1, {{0, fixtures::lead(1)}}, {2}),
                                                 fixtures::T(1, {{1, fixtures::lead(2)}}, {1})})));
    Expansion a3 = algebraic_obstruction(3);
    REQUIRE(a3.terms.size() == 3);
    // one term per insertion slot i: lambda^(i-1)([X_i, tau]) applied to psi without X_i
    for (int i = 1; i <= 3; ++i) {
        std::vector<int> slots;
        for (int s = 1; s <= 3; ++s)
            if (s != i) slots.push_back(s);
        Term expect = fixtures::T(1, {{i - 1, fixtures::lead(i)}}, slots);
        CHECK(as_map(a3).count(term_key(expect)) == 1);
    }
    for (int k = 1; k <= 5; ++k) CHECK(algebraic_obstruction(k).terms.size() == static_cast<std::size_t>(k));
}

TEST_CASE("canonical form") {
    Expansion e = expand(3);
    for (const auto& t : e.terms) {
        Term c = canonical_form(t);
        CHECK(canonical_form(c) == c);
        CHECK(term_key(c) == term_key(t));
    }
    auto m = as_map(e);
    Term a = fixtures::T(fixtures::quarter, {{0, fixtures::br(fixtures::X(1), fixtures::br(fixtures::ad2(fixtures::X(3)),
                                                                                       fixtures::adt(fixtures::X(2))))}},
                         {});
    Term b = fixtures::T(fixtures::quarter,
                         {{0, fixtures::br(fixtures::X(1), fixtures::adt(fixtures::br(fixtures::ad2(fixtures::X(3)),
                                                                                      fixtures::X(2))))}},
                         {});
    CHECK(term_key(a) != term_key(b));
    CHECK(m.at(term_key(a)) == fixtures::quarter);
    CHECK(m.at(term_key(b)) == fixtures::quarter);

    // the same term built twice from separate nodes merges
    Term d1 = fixtures::T(1, {{1, fixtures::lead(2)}, {0, fixtures::br(fixtures::X(1), fixtures::G(3))}}, {});
    Term d2 = fixtures::T(make_q(2, 3), {{1, br(arg(2), tau())}, {0, br(arg(1), gamma({}, 3))}}, {});
    Expansion dup = fixtures::make(3, {d1, d2});
    Expansion merged = merge(dup);
    REQUIRE(merged.terms.size() == 1);
    CHECK(merged.terms[0].coeff == make_q(5, 3));
    Term d3 = d1;
    d3.coeff = -1;
    CHECK(merge(fixtures::make(3, {d1, d3})).terms.empty());
}

TEST_CASE("well-formedness of generated terms") {
    for (int k = 1; k <= 5; ++k) {
        std::string why;
        bool ok = true;
        for (const auto& t : expand(k).terms) ok &= well_formed(t, k, &why);
        CHECK_MESSAGE(ok, why);
    }
    Term bad = fixtures::T(1, {{0, fixtures::lead(1)}}, {1});
    CHECK_FALSE(well_formed(bad, 1));
    Term bad_grade = fixtures::T(1, {{0, fixtures::X(1)}}, {});
    CHECK_FALSE(well_formed(bad_grade, 1));
}

TEST_CASE("truncation soundness") {
    for (int k = 1; k <= 6; ++k)
        for (int l = 0; l <= 2; ++l) {
            Expansion full = expand(k), cut = expand(k, l);
            for (int j = 0; j <= l; ++j)
                CHECK(as_map(filter_by_tau(full, j)) == as_map(filter_by_tau(cut, j)));
            for (const auto& t : cut.terms) CHECK(tau_count(t) <= l);
        }
}

TEST_CASE("rendering and JSON round trip") {
    for (int k = 0; k <= 4; ++k) {
        Expansion e = expand(k);
        std::string doc = render(e, Format::Json);
        Expansion back = parse_expansion_json(doc);
        CHECK(back == e);
        CHECK(render(back, Format::Json) == doc);
        CHECK(render(e, Format::Text) == render(expand(k), Format::Text));
    }
    Expansion f = filter_by_tau(expand(3), 0);
    CHECK(parse_expansion_json(render(f, Format::Json)) == f);
    CHECK(render(fixtures::order2(), Format::Text) ==
          "λ^(1)([X2,τ]) ∘ λ([X1,τ]) ∘ s - 1/2 λ([X1,[τ,[τ,X2]]]) ∘ s + λ([X1,τ]) ∘ ∇s(X2) + λ([X1,Γ·X2]) ∘ s + "
          "λ^(1)([X2,τ]) ∘ ∇s(X1)");
    CHECK(render(filter_by_tau(fixtures::order2(), 2), Format::Latex) ==
          "\\lambda^{(1)}([X_2,\\tau])\\,\\lambda([X_1,\\tau])\\,s - \\frac{1}{2}\\lambda([X_1,\\mathrm{ad}_\\tau^2 X_2])\\,s");
    CHECK(render_beta(fixtures::G({3, 4}, 2), Format::Text) == "(∇^2Γ)(X3,X4)·X2");
    CHECK_THROWS_AS(parse_expansion_json("{\"order\":1}"), SchemaError);
    CHECK_THROWS_AS(parse_expansion_json("not json"), SchemaError);
    CHECK_THROWS_AS(parse_expansion_json(
                        R"({"order":1,"terms":[{"coeff":"1/1","actions":[{"t":0,"beta":{"kind":"q"}}],"slots":[]}]})"),
                    SchemaError);
}

TEST_CASE("evaluation") {
    auto alg = build_algebra(Family::Conformal, {4, 0});
    Representation r = make_density(alg, -1);

    // Gamma = -1/2 delta, tau = 0, s constant
    Bindings b;
    b.tau = Vec(4);
    b.gamma.push_back({Matrix::identity(4) * make_q(-1, 2)});
    b.gamma.push_back(std::vector<Matrix>(4, Matrix(4, 4)));
    b.jets = {Vec{1}, Vec(4), Vec(16)};
    Vec v = evaluate(expand(2), r, b);
    CHECK(v[0] == make_q(-1, 2));
    CHECK(v[1] == 0);

    // tau = 0 kills every D_j with j >= 1
    Bindings rb = random_bindings(r, 2, 3);
    rb.tau = Vec(4);
    Expansion e3 = expand(3);
    for (int j = 1; j <= 3; ++j) CHECK(is_zero(evaluate(filter_by_tau(e3, j), r, rb)));

    // D_1 top part against the direct insertion formula at k = 2
    Bindings zb = random_bindings(r, 1, 2);
    Vec psi = zb.jets[1];
    Vec out = evaluate(algebraic_obstruction(2), r, zb);
    Element Z = alg->zero();
    Z.plus = *zb.tau;
    for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t c = 0; c < 4; ++c) {
            Element Xa = alg->unit(-1, a), Xc = alg->unit(-1, c);
            Vec za = alg->bracket(Z, Xa).zero, zc = alg->bracket(Z, Xc).zero;
            Rational expect = center_coefficient(*alg, za) * (-r.weight) * psi[c] +
                              center_coefficient(*alg, zc) * (-r.weight) * psi[a];
            Vec moved = alg->ad_on_minus(zc) * Xa.minus;
            for (std::size_t d = 0; d < 4; ++d) expect -= moved[d] * psi[d];
            // terms carry [X_i, tau] = -[tau, X_i]
            CHECK(out[a * 4 + c] == -expect);
        }

    Bindings missing;
    CHECK_THROWS_AS(evaluate(expand(1), r, missing), MissingBindingError);
    Bindings nog = random_bindings(r, 0, 3);
    CHECK_THROWS_AS(evaluate(expand(3), r, nog), MissingBindingError);
}

TEST_CASE("evaluation is linear in the jets") {
    auto alg = build_algebra(Family::Conformal, {3, 0});
    Representation r = make_standard(alg);
    Bindings b = random_bindings(r, 1, 2);
    Bindings b2 = b;
    for (auto& j : b2.jets) j = rnd_vec(j.size());
    Bindings sum = b;
    for (std::size_t j = 0; j < b.jets.size(); ++j) sum.jets[j] = add(b.jets[j], b2.jets[j]);
    Expansion e = expand(2);
    CHECK(evaluate(e, r, sum) == add(evaluate(e, r, b), evaluate(e, r, b2)));
}
