#include "ahs/representation.hpp"

#include "ahs/errors.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace ahs {

Matrix Representation::act0(const Vec& a0) const {
    if (a0.size() != action.size()) throw DimensionError("g_0 coordinate size mismatch");
    Matrix m(carrier_dim, carrier_dim);
    for (std::size_t c = 0; c < action.size(); ++c)
        if (a0[c] != 0) m += a0[c] * action[c];
    return m;
}

Rational center_coefficient(const GradedLieAlgebra& alg, const Vec& a0) {
    if (a0.size() != alg.dim_zero()) throw DimensionError("g_0 coordinate size mismatch");
    return a0[alg.grading_index()];
}

Representation make_density(AlgebraPtr alg, const Rational& w) {
    Representation r;
    r.algebra = alg;
    r.carrier_dim = 1;
    r.weight = w;
    r.label = "density(" + to_short(w) + ")";
    for (std::size_t c = 0; c < alg->dim_zero(); ++c) {
        Matrix m(1, 1);
        if (c == alg->grading_index()) m(0, 0) = -w;
        r.action.push_back(m);
    }
    return r;
}

Representation make_standard(AlgebraPtr alg) {
    Representation r;
    r.algebra = alg;
    r.carrier_dim = alg->dim_minus();
    r.weight = -1;
    r.label = "standard";
    for (std::size_t c = 0; c < alg->dim_zero(); ++c) r.action.push_back(alg->ad_on_minus_basis(c));
    return r;
}

Representation make_dual_standard(AlgebraPtr alg) {
    Representation r;
    r.algebra = alg;
    r.carrier_dim = alg->dim_minus();
    r.weight = 1;
    r.label = "dual_standard";
    for (std::size_t c = 0; c < alg->dim_zero(); ++c) r.action.push_back(-alg->ad_on_minus_basis(c).transpose());
    return r;
}

Representation make_tensor(const Representation& a, const Representation& b) {
    if (a.algebra != b.algebra &&
        (a.algebra->family() != b.algebra->family() || a.algebra->params() != b.algebra->params()))
        throw ParameterError("tensor of representations over different algebras");
    Representation r;
    r.algebra = a.algebra;
    r.carrier_dim = a.carrier_dim * b.carrier_dim;
    r.weight = a.weight + b.weight;
    r.label = "tensor(" + a.label + "," + b.label + ")";
    Matrix ia = Matrix::identity(a.carrier_dim), ib = Matrix::identity(b.carrier_dim);
    for (std::size_t c = 0; c < a.action.size(); ++c)
        r.action.push_back(kron(a.action[c], ib) + kron(ia, b.action[c]));
    return r;
}

Representation make_shifted(const Representation& base, const Rational& dw) {
    Representation r = base;
    r.weight = base.weight + dw;
    r.label = "shifted(" + base.label + "," + to_short(dw) + ")";
    const std::size_t gi = base.algebra->grading_index();
    r.action[gi] -= dw * Matrix::identity(base.carrier_dim);
    return r;
}

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

// split "x,y" at the top-level comma
std::pair<std::string, std::string> split_args(const std::string& s) {
    int depth = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '(') ++depth;
        else if (s[i] == ')') --depth;
        else if (s[i] == ',' && depth == 0) return {trim(s.substr(0, i)), trim(s.substr(i + 1))};
    }
    throw ParameterError("expected two arguments in rep descriptor: " + s);
}

}  // namespace

Representation make_rep(AlgebraPtr alg, const std::string& descriptor) {
    const std::string d = trim(descriptor);
    if (d == "standard") return make_standard(alg);
    if (d == "dual_standard") return make_dual_standard(alg);
    if (d == "density") return make_density(alg, 0);
    if (d.rfind("density:", 0) == 0) {
        std::string rest = d.substr(8);
        if (rest.rfind("w=", 0) == 0) rest = rest.substr(2);
        try {
            return make_density(alg, parse_rational(rest));
        } catch (const SchemaError&) {
            throw ParameterError("bad density weight: " + rest);
        }
    }
    auto call = [&](const std::string& name) -> std::string {
        if (d.rfind(name + "(", 0) == 0 && d.back() == ')') return d.substr(name.size() + 1, d.size() - name.size() - 2);
        return {};
    };
    if (auto in = call("tensor"); !in.empty()) {
        auto [a, b] = split_args(in);
        return make_tensor(make_rep(alg, a), make_rep(alg, b));
    }
    if (auto in = call("shifted"); !in.empty()) {
        auto [a, b] = split_args(in);
        try {
            return make_shifted(make_rep(alg, a), parse_rational(b));
        } catch (const SchemaError&) {
            throw ParameterError("bad weight shift: " + b);
        }
    }
    throw ParameterError("unknown rep descriptor: " + descriptor);
}

std::size_t tensor_dim(const Representation& rep, int k) {
    std::size_t d = rep.carrier_dim;
    for (int i = 0; i < k; ++i) d *= rep.algebra->dim_minus();
    return d;
}

Matrix tensor_action(const Representation& rep, int k, const Vec& a0) {
    if (k < 0) throw ParameterError("negative tensor power");
    const GradedLieAlgebra& alg = *rep.algebra;
    const std::size_t n = alg.dim_minus();
    Matrix lam = rep.act0(a0);
    Matrix slot = -alg.ad_on_minus(a0).transpose();
    auto power_identity = [&](int p) {
        std::size_t d = 1;
        for (int i = 0; i < p; ++i) d *= n;
        return Matrix::identity(d);
    };
    Matrix out = kron(power_identity(k), lam);
    const Matrix iv = Matrix::identity(rep.carrier_dim);
    for (int i = 0; i < k; ++i)
        out += kron(kron(power_identity(i), slot), kron(power_identity(k - 1 - i), iv));
    return out;
}

Vec act(const Representation& rep, int k, const Element& A, const Vec& phi) {
    rep.algebra->check(A);
    if (!A.is_pure(0)) throw GradeError("act expects a grade 0 element");
    if (phi.size() != tensor_dim(rep, k)) throw DimensionError("tensor coordinate size mismatch");
    return tensor_action(rep, k, A.zero) * phi;
}

bool is_homomorphism(const Representation& rep, int k) {
    const GradedLieAlgebra& alg = *rep.algebra;
    const std::size_t d0 = alg.dim_zero();
    std::vector<Matrix> m;
    for (std::size_t c = 0; c < d0; ++c) m.push_back(tensor_action(rep, k, alg.unit(0, c).zero));
    for (std::size_t a = 0; a < d0; ++a)
        for (std::size_t b = a + 1; b < d0; ++b) {
            Vec ab = alg.bracket(alg.unit(0, a), alg.unit(0, b)).zero;
            if (commutator(m[a], m[b]) != tensor_action(rep, k, ab)) return false;
        }
    return true;
}

std::string projector_name(ProjectorKind k) {
    switch (k) {
        case ProjectorKind::Sym0: return "sym0";
        case ProjectorKind::Trace: return "trace";
        case ProjectorKind::Alt: return "alt";
        case ProjectorKind::Sym3_0: return "sym3_0";
    }
    return "?";
}

ProjectorKind parse_projector(const std::string& s) {
    if (s == "sym0") return ProjectorKind::Sym0;
    if (s == "trace") return ProjectorKind::Trace;
    if (s == "alt") return ProjectorKind::Alt;
    if (s == "sym3_0") return ProjectorKind::Sym3_0;
    throw ParameterError("unknown projector kind: " + s);
}

namespace {

using Tensor = Vec;

Tensor sym2(const Tensor& t, std::size_t n) {
    Tensor r(n * n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) r[a * n + b] = (t[a * n + b] + t[b * n + a]) / 2;
    return r;
}

Tensor sym3(const Tensor& t, std::size_t n) {
    Tensor r(n * n * n);
    auto at = [&](std::size_t a, std::size_t b, std::size_t c) -> const Rational& { return t[(a * n + b) * n + c]; };
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c)
                r[(a * n + b) * n + c] =
                    (at(a, b, c) + at(a, c, b) + at(b, a, c) + at(b, c, a) + at(c, a, b) + at(c, b, a)) / 6;
    return r;
}

// the metric on g_{-1}^*; diagonal with entries +-1 so it is its own inverse
Rational metric(const Matrix& g, std::size_t a, std::size_t b) { return g(a, b); }

Tensor apply_kind(const Tensor& t, std::size_t n, int k, ProjectorKind kind, const Matrix& g) {
    if (k == 2) {
        Rational tr = 0;
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) tr += metric(g, a, b) * t[a * n + b];
        Tensor trace_part(n * n);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) trace_part[a * n + b] = tr * metric(g, a, b) / static_cast<long>(n);
        if (kind == ProjectorKind::Trace) return trace_part;
        if (kind == ProjectorKind::Alt) {
            Tensor r(n * n);
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t b = 0; b < n; ++b) r[a * n + b] = (t[a * n + b] - t[b * n + a]) / 2;
            return r;
        }
        return sub(sym2(t, n), trace_part);
    }
    // k == 3, traceless symmetric
    Tensor s = sym3(t, n);
    Vec tr(n);
    for (std::size_t c = 0; c < n; ++c)
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) tr[c] += metric(g, a, b) * s[(a * n + b) * n + c];
    Tensor gt(n * n * n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c) gt[(a * n + b) * n + c] = metric(g, a, b) * tr[c];
    return sub(s, scale(make_q(3, static_cast<long>(n + 2)), sym3(gt, n)));
}

}  // namespace

Matrix projection(const GradedLieAlgebra& alg, int k, ProjectorKind kind, std::size_t carrier_dim) {
    if (alg.family() != Family::Conformal) throw UnsupportedError("projections are defined for the conformal family");
    const bool ok = (k == 2 && kind != ProjectorKind::Sym3_0) || (k == 3 && kind == ProjectorKind::Sym3_0);
    if (!ok) throw UnsupportedError("unsupported projector (k=" + std::to_string(k) + ", " + projector_name(kind) + ")");
    const std::size_t n = alg.dim_minus();
    std::size_t d = 1;
    for (int i = 0; i < k; ++i) d *= n;
    Matrix p(d, d);
    for (std::size_t c = 0; c < d; ++c) {
        Tensor e(d);
        e[c] = 1;
        p.set_column(c, apply_kind(e, n, k, kind, alg.signature()));
    }
    return kron(p, Matrix::identity(carrier_dim));
}

}  // namespace ahs
