#include "ahs/conformal_normalization.hpp"

#include "ahs/errors.hpp"

#include "json.hpp"

namespace ahs {

void require_conformal(const GradedLieAlgebra& alg) {
    if (alg.family() != Family::Conformal || alg.params()[1] != 0)
        throw UnsupportedError("normalization needs a definite conformal algebra conformal(m,0)");
    if (alg.params()[0] < 3) throw ParameterError("conformal normalization requires m >= 3");
}

const Element& CurvatureData::nabla_at(std::size_t c, std::size_t i, std::size_t j) const {
    if (!nabla) throw MissingBindingError("curvature data has no covariant derivative table");
    return (*nabla)[(c * n + i) * n + j];
}

CurvatureData zero_curvature(const GradedLieAlgebra& alg) {
    CurvatureData k;
    k.n = alg.dim_minus();
    k.values.assign(k.n * k.n, alg.zero());
    return k;
}

void check_curvature(const GradedLieAlgebra& alg, const CurvatureData& k) {
    if (k.n != alg.dim_minus() || k.values.size() != k.n * k.n)
        throw DimensionError("curvature table does not match dim g_{-1}");
    for (std::size_t i = 0; i < k.n; ++i)
        for (std::size_t j = 0; j < k.n; ++j) {
            alg.check(k.at(i, j));
            if (!(k.at(i, j) + k.at(j, i)).is_zero()) throw MembershipError("curvature is not antisymmetric");
        }
    if (k.nabla) {
        if (k.nabla->size() != k.n * k.n * k.n) throw DimensionError("derivative table has the wrong size");
        for (const auto& e : *k.nabla) alg.check(e);
    }
}

Tensor4 kappa0_coordinates(const GradedLieAlgebra& alg, const CurvatureData& k) {
    const std::size_t m = k.n;
    Tensor4 K(m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            Matrix a = alg.ad_on_minus(k.at(i, j).zero);
            for (std::size_t kk = 0; kk < m; ++kk)
                for (std::size_t l = 0; l < m; ++l) K(kk, l, i, j) = a(kk, l);
        }
    return K;
}

CurvatureData curvature_from_coordinates(const GradedLieAlgebra& alg, const Tensor4& K) {
    if (K.dim() != alg.dim_minus()) throw DimensionError("curvature coordinates do not match dim g_{-1}");
    CurvatureData k = zero_curvature(alg);
    const std::size_t m = K.dim();
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            Matrix a(m, m);
            for (std::size_t kk = 0; kk < m; ++kk)
                for (std::size_t l = 0; l < m; ++l) a(kk, l) = K(kk, l, i, j);
            try {
                k.at(i, j).zero = alg.g0_from_action(a);
            } catch (const UnsupportedError&) {
                throw MembershipError("curvature values do not lie in g_0");
            } catch (const MembershipError&) {
                throw MembershipError("curvature values do not lie in g_0");
            }
        }
    check_curvature(alg, k);
    return k;
}

Tensor4 constant_curvature(std::size_t m) {
    Tensor4 K(m);
    for (std::size_t k = 0; k < m; ++k)
        for (std::size_t l = 0; l < m; ++l)
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = 0; j < m; ++j)
                    K(k, l, i, j) = Rational((k == j && l == i) ? 1 : 0) - Rational((k == i && l == j) ? 1 : 0);
    return K;
}

Matrix trace_curvature(const Tensor4& K) {
    const std::size_t m = K.dim();
    Matrix t(m, m);
    for (std::size_t l = 0; l < m; ++l)
        for (std::size_t j = 0; j < m; ++j)
            for (std::size_t i = 0; i < m; ++i) t(l, j) += K(i, l, i, j);
    return t;
}

Matrix internal_trace(const Tensor4& K) {
    const std::size_t m = K.dim();
    Matrix t(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            for (std::size_t k = 0; k < m; ++k) t(i, j) += K(k, k, i, j);
    return t;
}

Rational scalar_trace(const Tensor4& K) {
    Rational s = 0;
    for (std::size_t i = 0; i < K.dim(); ++i)
        for (std::size_t j = 0; j < K.dim(); ++j) s += K(i, j, i, j);
    return s;
}

Matrix ricci(const Tensor4& K) {
    const std::size_t m = K.dim();
    Matrix r(m, m);
    for (std::size_t l = 0; l < m; ++l)
        for (std::size_t j = 0; j < m; ++j)
            for (std::size_t i = 0; i < m; ++i) r(l, j) += K(i, l, j, i);
    return r;
}

Matrix trace_change(const Matrix& g) {
    const std::size_t m = g.rows();
    const Rational tr = g.trace();
    Matrix t(m, m);
    for (std::size_t k = 0; k < m; ++k)
        for (std::size_t j = 0; j < m; ++j)
            t(k, j) = -Rational(static_cast<long>(m) - 1) * g(k, j) + g(j, k) - (k == j ? tr : Rational(0));
    return t;
}

Matrix internal_trace_change(const Matrix& g) {
    const std::size_t m = g.rows();
    Matrix t(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) t(i, j) = Rational(static_cast<long>(m)) * (g(j, i) - g(i, j));
    return t;
}

Rational scalar_trace_change(const Matrix& g) { return -Rational(2 * (static_cast<long>(g.rows()) - 1)) * g.trace(); }

Vec gamma_apply(const DeformationTensor& g, const Vec& x) { return g.gamma * x; }

namespace {

void check_gamma(const GradedLieAlgebra& alg, const DeformationTensor& g) {
    const std::size_t n = alg.dim_minus();
    if (alg.dim_plus() != n) throw UnsupportedError("deformation tensors need dim g_1 = dim g_{-1}");
    if (g.gamma.rows() != n || g.gamma.cols() != n) throw DimensionError("Gamma must be dim g_{-1} square");
    if (g.nabla) {
        if (g.nabla->size() != n) throw DimensionError("nabla Gamma needs one matrix per basis direction");
        for (const auto& m : *g.nabla)
            if (m.rows() != n || m.cols() != n) throw DimensionError("nabla Gamma entries must be square");
    }
}

Element plus_element(const GradedLieAlgebra& alg, const Vec& v) {
    Element e = alg.zero();
    e.plus = v;
    return e;
}

}  // namespace

CurvatureData deform_kappa0(const GradedLieAlgebra& alg, const DeformationTensor& g, const CurvatureData& k) {
    check_curvature(alg, k);
    check_gamma(alg, g);
    CurvatureData out = k;
    out.nabla.reset();
    const std::size_t n = k.n;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Element x = alg.unit(-1, i), y = alg.unit(-1, j);
            Element gx = plus_element(alg, g.gamma.column(i)), gy = plus_element(alg, g.gamma.column(j));
            Element d = alg.bracket(x, gy) + alg.bracket(gx, y);
            out.at(i, j).zero = sub(out.at(i, j).zero, d.zero);
        }
    return out;
}

CurvatureData deform_curvature(const GradedLieAlgebra& alg, const DeformationTensor& g, const CurvatureData& k) {
    if (!g.nabla) throw MissingBindingError("deforming kappa_1 needs nabla Gamma");
    CurvatureData out = deform_kappa0(alg, g, k);
    const std::size_t n = k.n;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Vec& v = out.at(i, j).plus;
            v = sub(v, (*g.nabla)[i].column(j));
            v = add(v, (*g.nabla)[j].column(i));
            v = sub(v, g.gamma * k.at(i, j).minus);
        }
    return out;
}

DeformationTensor rho_tensor(const GradedLieAlgebra& alg, const Matrix& ric, const Rational& scalar) {
    require_conformal(alg);
    const long m = alg.params()[0];
    if (ric.rows() != static_cast<std::size_t>(m) || ric.cols() != static_cast<std::size_t>(m))
        throw DimensionError("Ricci tensor must be m x m");
    if (ric != ric.transpose()) throw ParameterError("Ricci tensor must be symmetric");
    DeformationTensor g;
    g.gamma = Matrix(m, m);
    const Rational c = make_q(-1, m - 2), shift = scalar / (2 * (m - 1));
    for (long i = 0; i < m; ++i)
        for (long j = 0; j < m; ++j) g.gamma(i, j) = c * (ric(i, j) - (i == j ? shift : Rational(0)));
    return g;
}

Normalization normalize_traces(const GradedLieAlgebra& alg, const Matrix& trace, const Matrix& internal) {
    require_conformal(alg);
    const std::size_t m = alg.dim_minus();
    if (trace.rows() != m || trace.cols() != m || internal.rows() != m || internal.cols() != m)
        throw DimensionError("trace data must be m x m");
    const std::size_t unknowns = m * m;
    Matrix a(2 * m * m, unknowns);
    Vec rhs(2 * m * m);
    for (std::size_t u = 0; u < unknowns; ++u) {
        Matrix e = Matrix::unit(m, m, u / m, u % m);
        Matrix t = trace_change(e), s = internal_trace_change(e);
        for (std::size_t r = 0; r < m * m; ++r) {
            a(r, u) = t(r / m, r % m);
            a(m * m + r, u) = s(r / m, r % m);
        }
    }
    for (std::size_t r = 0; r < m * m; ++r) {
        rhs[r] = -trace(r / m, r % m);
        rhs[m * m + r] = -internal(r / m, r % m);
    }
    Vec x;
    if (!solve(a, rhs, x)) throw MembershipError("trace equations are inconsistent; check the curvature symmetries");
    Normalization out;
    out.unknowns = unknowns;
    out.rank = rank(a);
    out.unique = out.rank == unknowns;
    out.gamma.gamma = Matrix(m, m);
    for (std::size_t u = 0; u < unknowns; ++u) out.gamma.gamma(u / m, u % m) = x[u];
    Matrix t = trace + trace_change(out.gamma.gamma), s = internal + internal_trace_change(out.gamma.gamma);
    out.deformed_trace_max_abs = 0;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            out.deformed_trace_max_abs = std::max({out.deformed_trace_max_abs, Rational(abs(t(i, j))), Rational(abs(s(i, j)))});
    return out;
}

Normalization normalize_connection(const GradedLieAlgebra& alg, const CurvatureData& k) {
    require_conformal(alg);
    check_curvature(alg, k);
    for (const auto& v : k.values)
        if (!is_zero(v.minus)) throw ParameterError("normalization expects a torsion-free connection");
    Tensor4 K = kappa0_coordinates(alg, k);
    return normalize_traces(alg, trace_curvature(K), internal_trace(K));
}

CurvatureData fiber_transport(const GradedLieAlgebra& alg, const CurvatureData& k, const Element& tau) {
    check_curvature(alg, k);
    alg.check(tau);
    if (!tau.is_pure(1)) throw GradeError("tau must lie in g_1");
    CurvatureData out = k;
    out.nabla.reset();
    for (std::size_t i = 0; i < k.n; ++i)
        for (std::size_t j = 0; j < k.n; ++j) {
            const Element& v = k.at(i, j);
            Element km1 = alg.zero(), k0 = alg.zero();
            km1.minus = v.minus;
            k0.zero = v.zero;
            Element a = alg.bracket(tau, km1);
            Element b = alg.bracket(tau, k0);
            Element c = alg.bracket(tau, a);
            Element& o = out.at(i, j);
            o.zero = sub(v.zero, a.zero);
            o.plus = add(sub(v.plus, b.plus), scale(make_q(1, 2), c.plus));
        }
    return out;
}

ConnectionChange change_of_connection(const GradedLieAlgebra& alg, const DeformationTensor& g0, const Vec& upsilon,
                                      const Matrix& nabla_upsilon) {
    check_gamma(alg, g0);
    const std::size_t n = alg.dim_minus();
    if (upsilon.size() != alg.dim_plus()) throw DimensionError("upsilon must lie in g_1");
    if (nabla_upsilon.rows() != n || nabla_upsilon.cols() != n) throw DimensionError("nabla upsilon must be square");
    Element u = plus_element(alg, upsilon);
    ConnectionChange out;
    out.gamma.gamma = g0.gamma - nabla_upsilon;
    for (std::size_t i = 0; i < n; ++i) {
        Element x = alg.unit(-1, i);
        Element q = alg.bracket(u, alg.bracket(u, x));
        Vec col = sub(out.gamma.gamma.column(i), scale(make_q(1, 2), q.plus));
        out.gamma.gamma.set_column(i, col);
        out.shift.push_back(alg.bracket(x, u).zero);
    }
    return out;
}

std::vector<Element> bianchi_defect(const GradedLieAlgebra& alg, const CurvatureData& k) {
    check_curvature(alg, k);
    if (!k.nabla) throw MissingBindingError("Bianchi defect needs nabla kappa");
    const std::size_t n = k.n;
    auto term = [&](std::size_t x, std::size_t y, std::size_t z) {
        Element t = alg.bracket(k.at(x, y), alg.unit(-1, z));
        const Vec& km1 = k.at(x, y).minus;
        for (std::size_t c = 0; c < n; ++c)
            if (km1[c] != 0) t = t - Element{scale(km1[c], k.at(c, z).minus), scale(km1[c], k.at(c, z).zero),
                                             scale(km1[c], k.at(c, z).plus)};
        return t - k.nabla_at(z, x, y);
    };
    std::vector<Element> out;
    out.reserve(n * n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t l = 0; l < n; ++l) out.push_back(term(i, j, l) + term(j, l, i) + term(l, i, j));
    return out;
}

// ---- JSON ----

namespace {

Rational json_rational(const nlohmann::json& v) {
    if (v.is_number_integer()) return Rational(v.get<long>());
    if (v.is_string()) return parse_rational(v.get<std::string>());
    throw SchemaError("rationals must be integers or \"num/den\" strings");
}

}  // namespace

CurvatureInput parse_curvature_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("m") || !j["m"].is_number_integer()) throw SchemaError("missing integer field m");
    CurvatureInput in;
    in.m = j["m"].get<int>();
    if (in.m < 3) throw ParameterError("conformal normalization requires m >= 3");
    const std::size_t m = in.m;
    if (j.contains("riemann")) {
        Tensor4 K(m);
        const auto& r = j["riemann"];
        auto put = [&](const std::vector<long>& idx, const nlohmann::json& v) {
            for (long x : idx)
                if (x < 0 || x >= in.m) throw SchemaError("riemann index out of range");
            K(idx[0], idx[1], idx[2], idx[3]) = json_rational(v);
        };
        if (r.is_object()) {
            for (const auto& [key, v] : r.items()) {
                std::vector<long> idx;
                std::size_t pos = 0;
                try {
                    while (pos <= key.size()) {
                        std::size_t comma = key.find(',', pos);
                        idx.push_back(std::stol(key.substr(pos, comma - pos)));
                        if (comma == std::string::npos) break;
                        pos = comma + 1;
                    }
                } catch (const std::exception&) {
                    throw SchemaError("riemann keys must be \"k,l,i,j\"");
                }
                if (idx.size() != 4) throw SchemaError("riemann keys must be \"k,l,i,j\"");
                put(idx, v);
            }
        } else if (r.is_array()) {
            for (const auto& e : r) {
                if (!e.is_object() || !e.contains("value")) throw SchemaError("riemann entries need k, l, i, j, value");
                std::vector<long> idx;
                for (const char* f : {"k", "l", "i", "j"}) {
                    if (!e.contains(f) || !e[f].is_number_integer()) throw SchemaError("riemann entries need k, l, i, j, value");
                    idx.push_back(e[f].get<long>());
                }
                put(idx, e["value"]);
            }
        } else {
            throw SchemaError("riemann must be an object or an array");
        }
        in.riemann = K;
        in.ricci = ricci(K);
        in.scalar = in.ricci.trace();
        return in;
    }
    if (!j.contains("ricci") || !j["ricci"].is_array()) throw SchemaError("need either riemann or ricci");
    const auto& rows = j["ricci"];
    if (rows.size() != m) throw SchemaError("ricci must have m rows");
    in.ricci = Matrix(m, m);
    for (std::size_t i = 0; i < m; ++i) {
        if (!rows[i].is_array() || rows[i].size() != m) throw SchemaError("ricci must be m x m");
        for (std::size_t c = 0; c < m; ++c) in.ricci(i, c) = json_rational(rows[i][c]);
    }
    in.scalar = j.contains("scalar") ? json_rational(j["scalar"]) : in.ricci.trace();
    return in;
}

std::string normalization_json(const Normalization& n) {
    nlohmann::ordered_json j;
    nlohmann::ordered_json g = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < n.gamma.gamma.rows(); ++i) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (std::size_t c = 0; c < n.gamma.gamma.cols(); ++c) row.push_back(to_fraction(n.gamma.gamma(i, c)));
        g.push_back(row);
    }
    j["gamma"] = g;
    j["deformed_trace_max_abs"] = to_fraction(n.deformed_trace_max_abs);
    j["unique"] = n.unique;
    j["rank"] = n.rank;
    j["unknowns"] = n.unknowns;
    return j.dump(2);
}

}  // namespace ahs
