#include "ahs/graded_algebra.hpp"

#include "ahs/errors.hpp"

#include <algorithm>

namespace ahs {

std::string family_name(Family f) {
    switch (f) {
        case Family::Grassmannian: return "grassmannian";
        case Family::Conformal: return "conformal";
        case Family::Lagrangian: return "lagrangian";
        case Family::Spinorial: return "spinorial";
    }
    return "?";
}

Family parse_family(const std::string& name) {
    if (name == "grassmannian") return Family::Grassmannian;
    if (name == "conformal") return Family::Conformal;
    if (name == "lagrangian") return Family::Lagrangian;
    if (name == "spinorial") return Family::Spinorial;
    throw ParameterError("unknown family: " + name);
}

// ---- Element ----

const Vec& Element::part(int grade) const {
    if (grade == -1) return minus;
    if (grade == 0) return zero;
    if (grade == 1) return plus;
    throw GradeError("grade out of range");
}

Vec& Element::part(int grade) {
    return const_cast<Vec&>(static_cast<const Element&>(*this).part(grade));
}

bool Element::is_zero() const { return ahs::is_zero(minus) && ahs::is_zero(zero) && ahs::is_zero(plus); }

bool Element::is_pure(int grade) const {
    for (int g = -1; g <= 1; ++g)
        if (g != grade && !ahs::is_zero(part(g))) return false;
    return true;
}

Element& Element::operator+=(const Element& o) {
    minus = add(minus, o.minus);
    zero = add(zero, o.zero);
    plus = add(plus, o.plus);
    return *this;
}

Element& Element::operator-=(const Element& o) {
    minus = sub(minus, o.minus);
    zero = sub(zero, o.zero);
    plus = sub(plus, o.plus);
    return *this;
}

Element& Element::operator*=(const Rational& c) {
    for (auto* v : {&minus, &zero, &plus})
        for (auto& x : *v) x *= c;
    return *this;
}

// ---- construction ----

namespace {

Matrix E(std::size_t n, std::size_t r, std::size_t c) { return Matrix::unit(n, n, r, c); }

std::string idx(std::size_t i) { return std::to_string(i + 1); }

}  // namespace

GradedLieAlgebra::GradedLieAlgebra(Family family, std::vector<int> params)
    : family_(family), params_(std::move(params)) {
    auto need = [&](std::size_t k) {
        if (params_.size() != k)
            throw ParameterError(family_name(family_) + " expects " + std::to_string(k) + " parameter(s)");
    };
    switch (family_) {
        case Family::Grassmannian:
            need(2);
            if (params_[0] < 1 || params_[1] < 1) throw ParameterError("grassmannian needs p, q >= 1");
            build_grassmannian(params_[0], params_[1]);
            break;
        case Family::Conformal:
            if (params_.size() == 1) params_.push_back(0);
            need(2);
            if (params_[0] < 0 || params_[1] < 0 || params_[0] + params_[1] < 3)
                throw ParameterError("conformal needs m, n >= 0 and m + n >= 3");
            build_conformal(params_[0], params_[1]);
            break;
        case Family::Lagrangian:
        case Family::Spinorial:
            need(1);
            if (params_[0] < 2) throw ParameterError(family_name(family_) + " needs n >= 2");
            build_lagrangian_like(params_[0], family_ == Family::Lagrangian);
            break;
    }
    finalize();
}

void GradedLieAlgebra::add(int grade, Matrix m, std::string label) {
    if (grade == -1) {
        minus_.push_back(std::move(m));
        minus_l_.push_back(std::move(label));
    } else if (grade == 0) {
        zero_.push_back(std::move(m));
        zero_l_.push_back(std::move(label));
    } else {
        plus_.push_back(std::move(m));
        plus_l_.push_back(std::move(label));
    }
}

void GradedLieAlgebra::build_grassmannian(int p, int q) {
    size_ = static_cast<std::size_t>(p + q);
    const std::size_t P = p, Q = q;
    for (std::size_t r = 0; r < Q; ++r)
        for (std::size_t c = 0; c < P; ++c) add(-1, E(size_, P + r, c), "X_" + idx(r) + idx(c));
    auto sl_block = [&](std::size_t off, std::size_t k, const std::string& tag) {
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j)
                if (i != j) add(0, E(size_, off + i, off + j), tag + "_" + idx(i) + idx(j));
        for (std::size_t i = 0; i + 1 < k; ++i)
            add(0, E(size_, off + i, off + i) - E(size_, off + i + 1, off + i + 1), tag + "H_" + idx(i));
    };
    sl_block(0, P, "A");
    sl_block(P, Q, "B");
    Matrix grading(size_, size_);
    for (std::size_t i = 0; i < P; ++i) grading(i, i) = make_q(-q, p + q);
    for (std::size_t i = 0; i < Q; ++i) grading(P + i, P + i) = make_q(p, p + q);
    grading_index_ = zero_.size();
    add(0, grading, "I");
    for (std::size_t r = 0; r < Q; ++r)
        for (std::size_t c = 0; c < P; ++c) add(1, E(size_, c, P + r), "Z_" + idx(r) + idx(c));
    signature_ = Matrix::identity(P * Q);
}

void GradedLieAlgebra::build_conformal(int m, int n) {
    const std::size_t s = static_cast<std::size_t>(m + n);
    size_ = s + 2;
    signature_ = Matrix(s, s);
    for (std::size_t i = 0; i < s; ++i) signature_(i, i) = (static_cast<int>(i) < m) ? 1 : -1;
    const std::size_t last = size_ - 1;
    for (std::size_t i = 0; i < s; ++i) {
        Matrix p(size_, size_);
        p(i + 1, 0) = 1;
        p(last, i + 1) = -signature_(i, i);
        add(-1, p, "e_" + idx(i));
    }
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = i + 1; j < s; ++j) {
            Matrix a = E(size_, i + 1, j + 1);
            a(j + 1, i + 1) = -signature_(i, i) * signature_(j, j);
            add(0, a, "A_" + idx(i) + idx(j));
        }
    Matrix grading(size_, size_);
    grading(0, 0) = -1;
    grading(last, last) = 1;
    grading_index_ = zero_.size();
    add(0, grading, "I");
    for (std::size_t i = 0; i < s; ++i) {
        Matrix q(size_, size_);
        q(0, i + 1) = 1;
        q(i + 1, last) = -signature_(i, i);
        add(1, q, "e^" + idx(i));
    }
}

void GradedLieAlgebra::build_lagrangian_like(int nn, bool symmetric) {
    const std::size_t n = nn;
    size_ = 2 * n;
    const Rational sign = symmetric ? 1 : -1;
    auto offdiag = [&](bool upper, std::size_t i, std::size_t j) {
        Matrix x(size_, size_);
        if (upper) {
            x(i, n + j) += 1;
            x(j, n + i) += sign;
        } else {
            x(n + i, j) += 1;
            x(n + j, i) += sign;
        }
        return x;
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = symmetric ? i : i + 1; j < n; ++j) {
            Matrix x = offdiag(true, i, j);
            if (i == j) x *= make_q(1, 2);
            add(-1, x, "X_" + idx(i) + idx(j));
        }
    auto g0 = [&](const Matrix& a) {
        Matrix m(size_, size_);
        m.set_block(0, 0, a);
        m.set_block(n, n, -a.transpose());
        return m;
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) add(0, g0(E(n, i, j)), "A_" + idx(i) + idx(j));
    for (std::size_t i = 0; i + 1 < n; ++i) add(0, g0(E(n, i, i) - E(n, i + 1, i + 1)), "H_" + idx(i));
    grading_index_ = zero_.size();
    add(0, g0(Matrix::identity(n) * make_q(1, 2)), "I");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = symmetric ? i : i + 1; j < n; ++j) {
            Matrix z = offdiag(false, i, j);
            if (i == j) z *= make_q(1, 2);
            add(1, z, "Z_" + idx(i) + idx(j));
        }
    signature_ = Matrix::identity(minus_.size());
}

void GradedLieAlgebra::finalize() {
    n_ = minus_.size();
    d0_ = zero_.size();
    if (plus_.size() != n_) throw Error("internal: dim g_1 != dim g_{-1}");
    for (auto* part : {&minus_, &zero_, &plus_})
        for (auto& m : *part) basis_.push_back(m);
    for (auto* part : {&minus_l_, &zero_l_, &plus_l_})
        for (auto& l : *part) labels_.push_back(l);
    minus_.clear();
    zero_.clear();
    plus_.clear();

    const std::size_t D = dim();
    const std::size_t N2 = size_ * size_;
    Matrix flat(N2, D);
    for (std::size_t b = 0; b < D; ++b)
        for (std::size_t r = 0; r < size_; ++r)
            for (std::size_t c = 0; c < size_; ++c) flat(r * size_ + c, b) = basis_[b](r, c);
    coords_ = ColumnSpaceCoordinates(flat);

    structure_.assign(D * D, {});
    for (std::size_t a = 0; a < D; ++a)
        for (std::size_t b = a + 1; b < D; ++b) {
            Matrix m = commutator(basis_[a], basis_[b]);
            Vec v(N2);
            for (std::size_t r = 0; r < size_; ++r)
                for (std::size_t c = 0; c < size_; ++c) v[r * size_ + c] = m(r, c);
            Vec co = coords_.coordinates(v);
            for (std::size_t k = 0; k < D; ++k)
                if (co[k] != 0) {
                    structure_[a * D + b].push_back({k, co[k]});
                    structure_[b * D + a].push_back({k, -co[k]});
                }
        }

    // ad matrices and Killing pairing between g_{-1} and g_1
    std::vector<Matrix> ad(D, Matrix(D, D));
    for (std::size_t a = 0; a < D; ++a)
        for (std::size_t b = 0; b < D; ++b)
            for (const auto& e : structure(a, b)) ad[a](e.index, b) = e.value;
    killing_ = Matrix(n_, n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) killing_(i, j) = (ad[i] * ad[n_ + d0_ + j]).trace();

    ad_minus_.clear();
    for (std::size_t c = 0; c < d0_; ++c) {
        Matrix a(n_, n_);
        for (std::size_t b = 0; b < n_; ++b)
            for (const auto& e : structure(n_ + c, b)) a(e.index, b) = e.value;
        ad_minus_.push_back(a);
    }
    Matrix acts(n_ * n_, d0_);
    for (std::size_t c = 0; c < d0_; ++c)
        for (std::size_t r = 0; r < n_; ++r)
            for (std::size_t k = 0; k < n_; ++k) acts(r * n_ + k, c) = ad_minus_[c](r, k);
    if (rank(acts) == d0_) g0_action_coords_ = ColumnSpaceCoordinates(acts);
}

// ---- basic queries ----

std::size_t GradedLieAlgebra::global_index(int grade, std::size_t i) const {
    if (i >= dim_grade(grade)) throw DimensionError("basis index out of range");
    if (grade == -1) return i;
    if (grade == 0) return n_ + i;
    if (grade == 1) return n_ + d0_ + i;
    throw GradeError("grade out of range");
}

int GradedLieAlgebra::grade_of(std::size_t g) const {
    if (g < n_) return -1;
    if (g < n_ + d0_) return 0;
    return 1;
}

Element GradedLieAlgebra::zero() const { return Element{Vec(n_), Vec(d0_), Vec(n_)}; }

Element GradedLieAlgebra::unit(int grade, std::size_t i) const {
    Element e = zero();
    if (i >= dim_grade(grade)) throw DimensionError("basis index out of range");
    e.part(grade)[i] = 1;
    return e;
}

Element GradedLieAlgebra::grading_element() const { return unit(0, grading_index_); }

void GradedLieAlgebra::check(const Element& x) const {
    if (x.minus.size() != n_ || x.zero.size() != d0_ || x.plus.size() != n_)
        throw DimensionError("element does not conform to the algebra");
}

Element GradedLieAlgebra::from_flat(const Vec& v) const {
    if (v.size() != dim()) throw DimensionError("flat vector size mismatch");
    Element e;
    e.minus.assign(v.begin(), v.begin() + n_);
    e.zero.assign(v.begin() + n_, v.begin() + n_ + d0_);
    e.plus.assign(v.begin() + n_ + d0_, v.end());
    return e;
}

Vec GradedLieAlgebra::to_flat(const Element& x) const {
    check(x);
    Vec v(x.minus);
    v.insert(v.end(), x.zero.begin(), x.zero.end());
    v.insert(v.end(), x.plus.begin(), x.plus.end());
    return v;
}

Matrix GradedLieAlgebra::to_matrix(const Element& x) const {
    Vec v = to_flat(x);
    Matrix m(size_, size_);
    for (std::size_t b = 0; b < dim(); ++b)
        if (v[b] != 0) m += v[b] * basis_[b];
    return m;
}

Element GradedLieAlgebra::from_matrix(const Matrix& m) const {
    if (m.rows() != size_ || m.cols() != size_) throw DimensionError("matrix size mismatch");
    Vec v(size_ * size_);
    for (std::size_t r = 0; r < size_; ++r)
        for (std::size_t c = 0; c < size_; ++c) v[r * size_ + c] = m(r, c);
    return from_flat(coords_.coordinates(v));
}

Element GradedLieAlgebra::bracket(const Element& x, const Element& y) const {
    check(x);
    check(y);
    Element out = zero();
    for (int gx = -1; gx <= 1; ++gx)
        for (int gy = -1; gy <= 1; ++gy) {
            int t = gx + gy;
            if (t < -1 || t > 1) continue;
            const Vec& xs = x.part(gx);
            const Vec& ys = y.part(gy);
            if (ahs::is_zero(xs) || ahs::is_zero(ys)) continue;
            Vec r = bracket_parts(gx, xs, gy, ys, t);
            axpy(1, r, out.part(t));
        }
    return out;
}

Vec GradedLieAlgebra::bracket_parts(int gx, const Vec& x, int gy, const Vec& y, int target) const {
    if (x.size() != dim_grade(gx) || y.size() != dim_grade(gy)) throw DimensionError("bracket operand size");
    Vec out(dim_grade(target));
    if (target != gx + gy) return out;
    const std::size_t off = global_index(target, 0);
    Rational t;
    for (std::size_t a = 0; a < x.size(); ++a) {
        if (x[a] == 0) continue;
        std::size_t ga = global_index(gx, a);
        for (std::size_t b = 0; b < y.size(); ++b) {
            if (y[b] == 0) continue;
            t = x[a] * y[b];
            for (const auto& e : structure(ga, global_index(gy, b))) out[e.index - off] += t * e.value;
        }
    }
    return out;
}

Rational GradedLieAlgebra::killing(const Element& x, const Element& y) const {
    if (!x.is_pure(-1) || !y.is_pure(1)) throw GradeError("killing pairing expects (g_{-1}, g_1)");
    Rational s = 0;
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j)
            if (x.minus[i] != 0 && y.plus[j] != 0) s += x.minus[i] * killing_(i, j) * y.plus[j];
    return s;
}

Matrix GradedLieAlgebra::ad_on_minus(const Vec& a0) const {
    if (a0.size() != d0_) throw DimensionError("g_0 coordinate size mismatch");
    Matrix m(n_, n_);
    for (std::size_t c = 0; c < d0_; ++c)
        if (a0[c] != 0) m += a0[c] * ad_minus_[c];
    return m;
}

Vec GradedLieAlgebra::g0_from_action(const Matrix& action) const {
    if (g0_action_coords_.dim() != d0_) throw UnsupportedError("g_0 does not act faithfully on g_{-1}");
    if (action.rows() != n_ || action.cols() != n_) throw DimensionError("action matrix size mismatch");
    Vec v(n_ * n_);
    for (std::size_t r = 0; r < n_; ++r)
        for (std::size_t k = 0; k < n_; ++k) v[r * n_ + k] = action(r, k);
    return g0_action_coords_.coordinates(v);
}

// ---- free operations ----

AlgebraPtr build_algebra(Family family, const std::vector<int>& params) {
    return std::make_shared<const GradedLieAlgebra>(family, params);
}

Element bracket(const GradedLieAlgebra& alg, const Element& x, const Element& y) { return alg.bracket(x, y); }

DualBases killing_dual_bases(const GradedLieAlgebra& alg) {
    const std::size_t n = alg.dim_minus();
    Matrix c = inverse(alg.killing_pairing());
    DualBases d;
    for (std::size_t a = 0; a < n; ++a) {
        d.xi.push_back(alg.unit(-1, a));
        Element eta = alg.zero();
        for (std::size_t g = 0; g < n; ++g) eta.plus[g] = c(g, a);
        d.eta.push_back(eta);
    }
    return d;
}

Element ad_exp(const GradedLieAlgebra& alg, const Element& z, const Element& x) {
    alg.check(z);
    alg.check(x);
    if (!z.is_pure(1)) throw GradeError("ad_exp: z must be of grade +1");
    if (!x.is_pure(-1)) throw GradeError("ad_exp: x must be of grade -1");
    Element zx = alg.bracket(z, x);
    Element zzx = alg.bracket(z, zx);
    return x + zx + make_q(1, 2) * zzx;
}

Matrix exp_nilpotent(const Matrix& m) {
    const std::size_t n = m.rows();
    Matrix result = Matrix::identity(n);
    Matrix term = Matrix::identity(n);  // m^k / k!
    for (std::size_t k = 1; k <= n; ++k) {
        term = term * m;
        if (term.is_zero()) return result;
        term *= make_q(1, static_cast<long>(k));
        result += term;
    }
    if (!(term * m).is_zero()) throw MembershipError("matrix is not nilpotent");
    return result;
}

Matrix log_unipotent(const Matrix& u) {
    const std::size_t n = u.rows();
    Matrix x = u - Matrix::identity(n);
    Matrix result(n, n);
    Matrix power = Matrix::identity(n);
    for (std::size_t k = 1; k <= n; ++k) {
        power = power * x;
        if (power.is_zero()) return result;
        Rational c = make_q((k % 2 == 1) ? 1 : -1, static_cast<long>(k));
        result += c * power;
    }
    if (!(power * x).is_zero()) throw MembershipError("matrix is not unipotent");
    return result;
}

Rational position_degree(const GradedLieAlgebra& alg, std::size_t r, std::size_t c) {
    const Matrix& g = alg.grading_matrix();
    return g(r, r) - g(c, c);
}

GroupFactorization factor_group_element(const GradedLieAlgebra& alg, const Matrix& b) {
    const std::size_t N = alg.matrix_size();
    if (b.rows() != N || b.cols() != N) throw DimensionError("group element size mismatch");
    Matrix b0(N, N);
    for (std::size_t r = 0; r < N; ++r)
        for (std::size_t c = 0; c < N; ++c) {
            Rational d = position_degree(alg, r, c);
            if (d > 0 && b(r, c) != 0) throw MembershipError("element lies outside the parabolic block pattern");
            if (d == 0) b0(r, c) = b(r, c);
        }
    Matrix inv0 = inverse(b0);
    Matrix u = inv0 * b;
    Matrix z = log_unipotent(u);
    Element zl = alg.from_matrix(z);
    if (!zl.is_pure(1)) throw MembershipError("unipotent part is not exp of g_1");
    if (exp_nilpotent(z) != u) throw MembershipError("factorization does not reassemble");
    return {b0, zl};
}

std::map<int, Rational> grading_scalars(const GradedLieAlgebra& alg, const Element& v) {
    alg.check(v);
    std::map<int, Rational> out;
    const Element I = alg.grading_element();
    for (int g = -1; g <= 1; ++g) {
        if (is_zero(v.part(g))) continue;
        Element comp = alg.zero();
        comp.part(g) = v.part(g);
        Element r = alg.bracket(I, comp);
        // r = c * comp; read c off the first nonzero coordinate
        std::size_t k = 0;
        while (comp.part(g)[k] == 0) ++k;
        Rational c = r.part(g)[k] / comp.part(g)[k];
        if (r != c * comp) throw Error("internal: component is not an ad(I) eigenvector");
        out[g] = c;
    }
    return out;
}

}  // namespace ahs
