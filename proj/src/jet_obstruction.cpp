#include "ahs/jet_obstruction.hpp"

#include "ahs/errors.hpp"

#include "json.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>

namespace ahs {

namespace {

std::size_t ipow(std::size_t n, int e) {
    std::size_t r = 1;
    for (int i = 0; i < e; ++i) r *= n;
    return r;
}

std::vector<std::size_t> digits(std::size_t flat, std::size_t n, int len) {
    std::vector<std::size_t> d(len);
    for (int i = len - 1; i >= 0; --i) {
        d[i] = flat % n;
        flat /= n;
    }
    return d;
}

std::size_t undigits(const std::vector<std::size_t>& d, std::size_t n) {
    std::size_t f = 0;
    for (auto x : d) f = f * n + x;
    return f;
}

}  // namespace

// ---- jet modules ----

BModule first_jet(const BModule& w) {
    const GradedLieAlgebra& alg = *w.algebra;
    const std::size_t n = alg.dim_minus(), D = w.dim;
    BModule j;
    j.algebra = w.algebra;
    j.dim = D * (1 + n);
    const Matrix id = Matrix::identity(D);
    for (std::size_t c = 0; c < alg.dim_zero(); ++c) {
        Matrix m(j.dim, j.dim);
        m.set_block(0, 0, w.g0[c]);
        const Matrix& a = alg.ad_on_minus_basis(c);
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y) {
                Matrix blk = (x == y) ? w.g0[c] : Matrix(D, D);
                if (a(y, x) != 0) blk -= a(y, x) * id;
                m.set_block(D + x * D, D + y * D, blk);
            }
        j.g0.push_back(m);
    }
    for (std::size_t z = 0; z < alg.dim_plus(); ++z) {
        Matrix m(j.dim, j.dim);
        m.set_block(0, 0, w.g1[z]);
        for (std::size_t x = 0; x < n; ++x) {
            m.set_block(D + x * D, D + x * D, w.g1[z]);
            Vec zx = alg.bracket_parts(1, alg.unit(1, z).plus, -1, alg.unit(-1, x).minus, 0);
            Matrix l(D, D);
            for (std::size_t c = 0; c < zx.size(); ++c)
                if (zx[c] != 0) l += zx[c] * w.g0[c];
            m.set_block(D + x * D, 0, l);
        }
        j.g1.push_back(m);
    }
    return j;
}

namespace {

// (t_0..t_k) -> (t_0..t_{k-1}, x -> (t_1(x), t_2(.,x), ..., t_k(.,..,x)))
Matrix jet_embedding(std::size_t n, std::size_t dv, int k) {
    std::vector<std::size_t> off_lo(k + 1, 0), off(k + 2, 0);
    for (int i = 0; i < k; ++i) off_lo[i + 1] = off_lo[i] + ipow(n, i) * dv;
    for (int i = 0; i <= k; ++i) off[i + 1] = off[i] + ipow(n, i) * dv;
    const std::size_t Dlo = off_lo[k];
    Matrix iota(Dlo * (1 + n), off[k + 1]);
    for (int i = 0; i <= k; ++i)
        for (std::size_t local = 0; local < ipow(n, i) * dv; ++local) {
            const std::size_t col = off[i] + local;
            if (i < k) iota(off_lo[i] + local, col) = 1;
            if (i >= 1) {
                std::size_t multi = local / dv, v = local % dv;
                std::size_t x = multi % n, prefix = multi / n;
                iota(Dlo + x * Dlo + off_lo[i - 1] + prefix * dv + v, col) = 1;
            }
        }
    return iota;
}

Matrix drop_top(std::size_t lo, std::size_t hi) {
    Matrix p(lo, hi);
    for (std::size_t i = 0; i < lo; ++i) p(i, i) = 1;
    return p;
}

}  // namespace

JetModule build_jet_module(const Representation& rep, int k) {
    if (k < 1) throw ParameterError("jet order must be >= 1");
    const GradedLieAlgebra& alg = *rep.algebra;
    const std::size_t n = alg.dim_minus(), dv = rep.carrier_dim;

    BModule base{rep.algebra, dv, rep.action, {}};
    for (std::size_t z = 0; z < alg.dim_plus(); ++z) base.g1.push_back(Matrix(dv, dv));

    BModule cur = first_jet(base);
    Matrix iota_prev = Matrix::identity(cur.dim);
    std::size_t dim_prev = dv;  // carrier of the order-(level-2) module
    for (int level = 2; level <= k; ++level) {
        BModule big = first_jet(cur);
        Matrix iota = jet_embedding(n, dv, level);
        const std::size_t D = cur.dim;
        // the two natural maps J^1(J^{l-1}) -> J^1(J^{l-2})
        Matrix m1(iota_prev.rows(), big.dim), m2(iota_prev.rows(), big.dim);
        m1.set_block(0, 0, iota_prev);
        Matrix p = drop_top(dim_prev, D);
        for (std::size_t b = 0; b <= n; ++b) m2.set_block(b * dim_prev, b * D, p);
        Matrix kernel = nullspace(m1 - m2);
        Matrix both(big.dim, kernel.cols() + iota.cols());
        both.set_block(0, 0, kernel);
        both.set_block(0, kernel.cols(), iota);
        if (kernel.cols() != iota.cols() || rank(both) != iota.cols())
            throw Error("internal: semi-holonomic kernel does not match the direct-sum carrier");

        ColumnSpaceCoordinates coords(iota);
        auto rebase = [&](const Matrix& act) {
            Matrix image = act * iota;
            Matrix out(iota.cols(), iota.cols());
            for (std::size_t c = 0; c < iota.cols(); ++c) out.set_column(c, coords.coordinates(image.column(c)));
            return out;
        };
        BModule next{rep.algebra, iota.cols(), {}, {}};
        for (const auto& a : big.g0) next.g0.push_back(rebase(a));
        for (const auto& a : big.g1) next.g1.push_back(rebase(a));
        dim_prev = D;
        iota_prev = iota;
        cur = std::move(next);
    }

    JetModule j;
    j.base = rep;
    j.order = k;
    j.carrier_dim = cur.dim;
    j.offsets.assign(k + 2, 0);
    for (int i = 0; i <= k; ++i) j.offsets[i + 1] = j.offsets[i] + ipow(n, i) * dv;
    j.g0_action = std::move(cur.g0);
    j.g1_action = std::move(cur.g1);
    j.projection = drop_top(j.offsets[k], j.carrier_dim);
    return j;
}

Matrix JetModule::action(const Element& z) const {
    const GradedLieAlgebra& alg = *base.algebra;
    alg.check(z);
    if (!is_zero(z.minus)) throw GradeError("jet modules carry a b-action; grade -1 part must vanish");
    Matrix m(carrier_dim, carrier_dim);
    for (std::size_t c = 0; c < z.zero.size(); ++c)
        if (z.zero[c] != 0) m += z.zero[c] * g0_action[c];
    for (std::size_t c = 0; c < z.plus.size(); ++c)
        if (z.plus[c] != 0) m += z.plus[c] * g1_action[c];
    return m;
}

// ---- top action via dual bases ----

Matrix g1_top_action(const Representation& rep, int k, const Element& z) {
    const GradedLieAlgebra& alg = *rep.algebra;
    alg.check(z);
    if (!z.is_pure(1)) throw GradeError("g1_top_action expects a grade +1 element");
    if (k < 1) throw ParameterError("order must be >= 1");
    const std::size_t n = alg.dim_minus(), dv = rep.carrier_dim;
    DualBases d = killing_dual_bases(alg);
    Matrix out(ipow(n, k) * dv, ipow(n, k - 1) * dv);
    if (z.is_zero()) return out;
    // eta_alpha paired with each basis direction
    Matrix pair(n, n);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t a = 0; a < n; ++a) pair(x, a) = alg.killing(alg.unit(-1, x), d.eta[a]);
    std::vector<Vec> z_xi;
    for (std::size_t a = 0; a < n; ++a) z_xi.push_back(alg.bracket(z, d.xi[a]).zero);

    // factors Y_1 .. Y_{k-1} (x) v are read right to left against argument slots:
    // eta_alpha sits in slot i, the action hits slots 1..i-1, slots i+1..k keep Y
    for (int i = 1; i <= k; ++i) {
        const int pre = i - 1, post = k - i;
        std::vector<Matrix> lam;
        for (std::size_t a = 0; a < n; ++a) lam.push_back(tensor_action(rep, pre, z_xi[a]));
        const std::size_t npre = ipow(n, pre), npost = ipow(n, post);
        for (std::size_t col = 0; col < ipow(n, k - 1) * dv; ++col) {
            std::size_t u = col % dv, multi = col / dv;
            std::size_t pre_idx = multi / npost, post_idx = multi % npost;
            std::size_t in_col = pre_idx * dv + u;
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t r = 0; r < npre * dv; ++r) {
                    const Rational& y = lam[a](r, in_col);
                    if (y == 0) continue;
                    std::size_t pre_out = r / dv, v = r % dv;
                    for (std::size_t x = 0; x < n; ++x) {
                        if (pair(x, a) == 0) continue;
                        std::size_t row = ((pre_out * n + x) * npost + post_idx) * dv + v;
                        out(row, col) += pair(x, a) * y;
                    }
                }
        }
    }
    return out;
}

// ---- obstruction ----

void check_equivariant(const Representation& rep, int k, const Matrix& phi) {
    const std::size_t d = tensor_dim(rep, k);
    if (phi.cols() != d || phi.rows() != d) throw DimensionError("Phi must be a square matrix on the k-th tensor space");
    const GradedLieAlgebra& alg = *rep.algebra;
    for (std::size_t c = 0; c < alg.dim_zero(); ++c) {
        Matrix l = tensor_action(rep, k, alg.unit(0, c).zero);
        if (phi * l != l * phi)
            throw EquivarianceError("Phi does not commute with g_0 basis element " + alg.label(alg.global_index(0, c)), c);
    }
}

Matrix insertion_map(const Representation& rep, int k, const Element& z) {
    const GradedLieAlgebra& alg = *rep.algebra;
    alg.check(z);
    if (!z.is_pure(1)) throw GradeError("insertion map expects a grade +1 element");
    if (k < 1) throw ParameterError("order must be >= 1");
    const std::size_t n = alg.dim_minus(), dv = rep.carrier_dim;
    std::vector<Matrix> lam, ad;
    for (std::size_t x = 0; x < n; ++x) {
        Vec a = alg.bracket_parts(1, z.plus, -1, alg.unit(-1, x).minus, 0);
        lam.push_back(rep.act0(a));
        ad.push_back(alg.ad_on_minus(a));
    }
    Matrix t(ipow(n, k) * dv, ipow(n, k - 1) * dv);
    for (std::size_t B = 0; B < ipow(n, k); ++B) {
        std::vector<std::size_t> b = digits(B, n, k);
        for (int i = 0; i < k; ++i) {
            const std::size_t x = b[i];
            std::vector<std::size_t> hat(b);
            hat.erase(hat.begin() + i);
            const std::size_t H = undigits(hat, n);
            for (std::size_t v = 0; v < dv; ++v)
                for (std::size_t u = 0; u < dv; ++u)
                    if (lam[x](v, u) != 0) t(B * dv + v, H * dv + u) += lam[x](v, u);
            // slots before i are evaluated after the action
            for (int l = 0; l < i; ++l)
                for (std::size_t c = 0; c < n; ++c) {
                    const Rational& coef = ad[x](c, b[l]);
                    if (coef == 0) continue;
                    std::vector<std::size_t> moved(hat);
                    moved[l] = c;
                    const std::size_t H2 = undigits(moved, n);
                    for (std::size_t v = 0; v < dv; ++v) t(B * dv + v, H2 * dv + v) -= coef;
                }
        }
    }
    return t;
}

bool ObstructionMap::is_zero() const {
    return std::all_of(blocks.begin(), blocks.end(), [](const Matrix& m) { return m.is_zero(); });
}

std::optional<ObstructionWitness> ObstructionMap::witness() const {
    for (std::size_t z = 0; z < blocks.size(); ++z)
        for (std::size_t c = 0; c < blocks[z].cols(); ++c)
            for (std::size_t r = 0; r < blocks[z].rows(); ++r)
                if (blocks[z](r, c) != 0) return ObstructionWitness{z, c, r, blocks[z](r, c)};
    return std::nullopt;
}

ObstructionMap obstruction_map(const Representation& rep, int k, const Matrix& phi) {
    check_equivariant(rep, k, phi);
    ObstructionMap om;
    for (std::size_t z = 0; z < rep.algebra->dim_plus(); ++z)
        om.blocks.push_back(phi * insertion_map(rep, k, rep.algebra->unit(1, z)));
    return om;
}

// ---- weights ----

namespace {

using Poly = std::vector<Rational>;  // coefficients, lowest degree first

void trim(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

Poly poly_mod(Poly a, const Poly& b) {
    trim(a);
    while (a.size() >= b.size() && !a.empty()) {
        Rational f = a.back() / b.back();
        std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
        trim(a);
    }
    return a;
}

Poly poly_gcd(Poly a, Poly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = poly_mod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        Rational lead = a.back();
        for (auto& c : a) c /= lead;
    }
    return a;
}

Rational poly_eval(const Poly& p, const Rational& x) {
    Rational s = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) s = s * x + *it;
    return s;
}

std::vector<mpz_class> divisors(mpz_class v) {
    v = abs(v);
    std::vector<mpz_class> out;
    for (mpz_class d = 1; d * d <= v; ++d)
        if (v % d == 0) {
            out.push_back(d);
            if (d * d != v) out.push_back(v / d);
        }
    return out;
}

std::vector<Rational> rational_roots(Poly p) {
    trim(p);
    std::vector<Rational> roots;
    if (p.size() <= 1) return roots;
    // strip zero roots
    std::size_t low = 0;
    while (p[low] == 0) ++low;
    if (low > 0) {
        roots.push_back(0);
        p.erase(p.begin(), p.begin() + low);
    }
    if (p.size() > 1) {
        mpz_class l = 1;
        for (const auto& c : p) l = lcm(l, mpz_class(c.get_den()));
        std::vector<mpz_class> ints;
        for (const auto& c : p) ints.push_back(mpz_class(c * l));
        for (const auto& num : divisors(ints.front()))
            for (const auto& den : divisors(ints.back()))
                for (int s : {1, -1}) {
                    Rational cand(mpz_class(s * num), den);
                    cand.canonicalize();
                    if (poly_eval(p, cand) == 0 && std::find(roots.begin(), roots.end(), cand) == roots.end())
                        roots.push_back(cand);
                }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

// Lagrange interpolation at integer nodes 0..deg
Poly interpolate(const std::vector<Rational>& values) {
    const std::size_t m = values.size();
    Poly result(m);
    for (std::size_t i = 0; i < m; ++i) {
        Poly basis{1};
        Rational denom = 1;
        for (std::size_t j = 0; j < m; ++j) {
            if (j == i) continue;
            Poly next(basis.size() + 1);
            for (std::size_t t = 0; t < basis.size(); ++t) {
                next[t + 1] += basis[t];
                next[t] -= basis[t] * static_cast<long>(j);
            }
            basis = std::move(next);
            denom *= static_cast<long>(i) - static_cast<long>(j);
        }
        for (std::size_t t = 0; t < basis.size(); ++t) result[t] += values[i] * basis[t] / denom;
    }
    trim(result);
    return result;
}

}  // namespace

WeightSet solve_weights(const Representation& base, int k, ProjectorKind kind) {
    const GradedLieAlgebra& alg = *base.algebra;
    Matrix phi = projection(alg, k, kind, base.carrier_dim);
    auto at = [&](const Rational& w) {
        Representation r = make_shifted(base, w - base.weight);
        ObstructionMap om = obstruction_map(r, k, phi);
        Vec flat;
        for (const auto& b : om.blocks)
            for (std::size_t r2 = 0; r2 < b.rows(); ++r2)
                for (std::size_t c = 0; c < b.cols(); ++c) flat.push_back(b(r2, c));
        return flat;
    };
    // entries are polynomials of degree <= 2 in w; one extra node checks the bound
    const int degree_bound = 2;
    std::vector<Vec> samples;
    for (int i = 0; i <= degree_bound + 1; ++i) samples.push_back(at(Rational(i)));
    WeightSet ws;
    Poly g;
    bool any = false;
    for (std::size_t e = 0; e < samples[0].size(); ++e) {
        std::vector<Rational> vals;
        for (int i = 0; i <= degree_bound; ++i) vals.push_back(samples[i][e]);
        Poly p = interpolate(vals);
        if (poly_eval(p, degree_bound + 1) != samples[degree_bound + 1][e])
            throw Error("obstruction entries are not polynomial of bounded degree in w");
        if (p.empty()) continue;
        g = any ? poly_gcd(g, p) : poly_gcd(p, {});
        any = true;
    }
    if (!any) {
        ws.all = true;
        return ws;
    }
    ws.values = rational_roots(g);
    return ws;
}

std::string weight_set_string(const WeightSet& w, bool fractions) {
    if (w.all) return "all";
    std::string s = "{";
    for (std::size_t i = 0; i < w.values.size(); ++i)
        s += (i ? ", " : "") + (fractions ? to_fraction(w.values[i]) : to_short(w.values[i]));
    return s + "}";
}

// ---- operator formulas ----

namespace {

struct MonoType {
    std::vector<int> gammas;  // derivative orders of the Gamma factors, descending
    int j = 0;
    bool operator<(const MonoType& o) const {
        if (j != o.j) return j > o.j;
        if (gammas.size() != o.gammas.size()) return gammas.size() < o.gammas.size();
        return gammas > o.gammas;
    }
    bool operator==(const MonoType& o) const { return j == o.j && gammas == o.gammas; }
};

void gamma_orders(const Beta& b, std::vector<int>& out) {
    if (b->kind == BracketNode::Kind::Gamma) out.push_back(b->order);
    if (b->kind == BracketNode::Kind::Bracket) {
        gamma_orders(b->left, out);
        gamma_orders(b->right, out);
    }
}

MonoType type_of(const Term& t) {
    MonoType m;
    for (const auto& a : t.actions) gamma_orders(a.beta, m.gammas);
    std::sort(m.gammas.rbegin(), m.gammas.rend());
    m.j = t.deriv_order();
    return m;
}

// Gamma factors occupy consecutive slots (a, b, derivative slots), the jet takes the rest
Vec monomial(const MonoType& m, const Bindings& b, std::size_t n, int k) {
    Vec out(ipow(n, k));
    for (std::size_t B = 0; B < out.size(); ++B) {
        std::vector<std::size_t> d = digits(B, n, k);
        std::size_t pos = 0;
        Rational v = 1;
        for (int r : m.gammas) {
            std::size_t a = d[pos], bb = d[pos + 1];
            std::vector<std::size_t> der(d.begin() + pos + 2, d.begin() + pos + 2 + r);
            v *= b.gamma[r][undigits(der, n)](a, bb);
            pos += 2 + r;
            if (v == 0) break;
        }
        if (v != 0) {
            std::vector<std::size_t> rest(d.begin() + pos, d.end());
            v *= b.jets[m.j][undigits(rest, n)];
        }
        out[B] = v;
    }
    return out;
}

struct Syms {
    bool tex;
    std::string nabla() const { return tex ? "\\nabla" : "∇"; }
    std::string gam() const { return tex ? "\\Gamma" : "Γ"; }
    std::string ric() const { return tex ? "\\mathrm{Ric}" : "Ric"; }
    std::string lap() const { return tex ? "\\Delta" : "Δ"; }
    std::string sep() const { return tex ? "\\," : " "; }
    std::string coeff(const Rational& c) const {
        Rational a = abs(c);
        if (a == 1) return "";
        if (!tex || a.get_den() == 1) return a.get_str();
        return "\\frac{" + a.get_num().get_str() + "}{" + a.get_den().get_str() + "}";
    }
};

// factor groups -> index-decorated string, symmetrization/alternation markers on the outer letters
std::string decorate(const std::vector<std::vector<std::pair<std::string, std::string>>>& groups, ProjectorKind kind,
                     const Syms& s) {
    std::string open, close;
    if (kind == ProjectorKind::Sym0 || kind == ProjectorKind::Sym3_0) {
        open = "(";
        close = ")_0";
    } else if (kind == ProjectorKind::Alt) {
        open = "[";
        close = "]";
    }
    std::size_t total = 0;
    for (const auto& g : groups) total += g.size();
    std::string out;
    std::size_t seen = 0;
    for (const auto& g : groups) {
        std::string part;
        for (const auto& [sym, letters] : g) {
            std::string idx = letters;
            if (seen == 0) idx = open + idx;
            if (seen + 1 == total) idx += close;
            part += sym + "_{" + idx + "}";
            ++seen;
        }
        // a differentiated tensor is wrapped when something follows it
        if (g.size() > 1 && g.front().first == s.nabla() && &g != &groups.back()) part = "(" + part + ")";
        out += part;
    }
    return out;
}

std::string leading(int k, ProjectorKind kind, const Syms& s) {
    if (kind == ProjectorKind::Trace) return s.lap() + " s";
    std::vector<std::vector<std::pair<std::string, std::string>>> groups;
    for (int i = 0; i < k; ++i) groups.push_back({{s.nabla(), std::string(1, static_cast<char>('a' + i))}});
    return decorate(groups, kind, s) + "s";
}

std::string type_body(const MonoType& m, ProjectorKind kind, const Syms& s, bool rho) {
    std::vector<std::vector<std::pair<std::string, std::string>>> groups;
    char letter = 'a';
    auto next = [&]() { return std::string(1, letter++); };
    const std::string tensor = rho ? s.ric() : s.gam();
    for (int r : m.gammas) {
        std::vector<std::pair<std::string, std::string>> g;
        for (int i = 0; i < r; ++i) g.push_back({s.nabla(), next()});
        std::string two = next();
        two += next();
        g.push_back({tensor, two});
        groups.push_back(g);
    }
    if (kind == ProjectorKind::Trace && m.j == 0 && m.gammas == std::vector<int>{0})
        return rho ? "R" + s.sep() + "s" : tensor + "_{a}{}^{a}" + s.sep() + "s";
    for (int i = 0; i < m.j; ++i) groups.push_back({{s.nabla(), next()}});
    std::string body = decorate(groups, kind, s);
    if (m.j == 0 && !groups.empty() && groups.back().size() > 1 && groups.back().front().first == s.nabla())
        body = "(" + body + ")";
    return body + (m.j == 0 ? s.sep() : "") + "s";
}

std::string assemble(const std::string& lead, const std::vector<std::pair<Rational, std::string>>& terms,
                     const Syms& s) {
    std::string out = lead;
    for (const auto& [c, body] : terms) {
        if (c == 0) continue;
        out += c < 0 ? " - " : " + ";
        std::string co = s.coeff(c);
        out += co + body;
    }
    return out;
}

struct Reduction {
    bool ok = false;
    std::vector<MonoType> types;
    std::vector<Rational> coeffs;
};

Bindings random_bindings(std::mt19937_64& g, std::size_t n, int k) {
    std::uniform_int_distribution<int> num(-7, 7), den(1, 3);
    auto q = [&]() { return make_q(num(g), den(g)); };
    Bindings b;
    for (int r = 0; r <= std::max(0, k - 2); ++r) {
        std::vector<Matrix> table;
        for (std::size_t c = 0; c < ipow(n, r); ++c) {
            Matrix m(n, n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) m(i, j) = q();
            table.push_back(m);
        }
        b.gamma.push_back(table);
    }
    for (int j = 0; j <= k; ++j) {
        Vec v(ipow(n, j));
        for (auto& x : v) x = q();
        b.jets.push_back(v);
    }
    return b;
}

Reduction reduce(const Expansion& d0, const Representation& rep, const Matrix& phi, int k) {
    Reduction red;
    const std::size_t n = rep.algebra->dim_minus();
    std::vector<MonoType> types;
    for (const auto& t : d0.terms) {
        MonoType m = type_of(t);
        if (std::find(types.begin(), types.end(), m) == types.end()) types.push_back(m);
    }
    std::sort(types.begin(), types.end());
    std::mt19937_64 g(0x5eed + static_cast<unsigned>(k));
    const int fit = 4, confirm = 2;
    std::vector<Vec> targets;
    std::vector<std::vector<Vec>> cols(types.size());
    for (int s = 0; s < fit + confirm; ++s) {
        Bindings b = random_bindings(g, n, k);
        targets.push_back(phi * evaluate(d0, rep, b));
        for (std::size_t t = 0; t < types.size(); ++t) cols[t].push_back(phi * monomial(types[t], b, n, k));
    }
    // keep types that survive the projection
    std::vector<std::size_t> live;
    for (std::size_t t = 0; t < types.size(); ++t) {
        bool nz = false;
        for (const auto& c : cols[t]) nz |= !is_zero(c);
        if (nz) live.push_back(t);
    }
    const std::size_t rows = targets[0].size();
    Matrix a(rows * fit, live.size());
    Vec rhs(rows * fit);
    for (int s = 0; s < fit; ++s)
        for (std::size_t r = 0; r < rows; ++r) {
            rhs[s * rows + r] = targets[s][r];
            for (std::size_t l = 0; l < live.size(); ++l) a(s * rows + r, l) = cols[live[l]][s][r];
        }
    Vec x;
    if (!solve(a, rhs, x) || rank(a) != live.size()) return red;
    for (int s = fit; s < fit + confirm; ++s) {
        Vec pred(rows);
        for (std::size_t l = 0; l < live.size(); ++l) axpy(x[l], cols[live[l]][s], pred);
        if (pred != targets[s]) return red;
    }
    red.ok = true;
    for (std::size_t l = 0; l < live.size(); ++l) {
        red.types.push_back(types[live[l]]);
        red.coeffs.push_back(x[l]);
    }
    return red;
}

}  // namespace

Verdict verify_operator(const Representation& rep, int k, ProjectorKind kind) {
    const GradedLieAlgebra& alg = *rep.algebra;
    Matrix phi = projection(alg, k, kind, rep.carrier_dim);
    ObstructionMap om = obstruction_map(rep, k, phi);
    Verdict v;
    v.rep_label = rep.label;
    v.weight = rep.weight;
    v.order = k;
    v.projector = kind;
    v.invariant = om.is_zero();
    if (!v.invariant) {
        v.witness = om.witness();
        return v;
    }
    Expansion d0 = filter_by_tau(expand(k, 0), 0);
    Syms tex{true}, txt{false};
    Reduction red;
    if (rep.carrier_dim == 1) red = reduce(d0, rep, phi, k);
    if (!red.ok) {
        Expansion full = d0;
        Term top;
        for (int i = 1; i <= k; ++i) top.slots.push_back(i);
        full.terms.insert(full.terms.begin(), top);
        v.formula_latex = "\\pi_{\\mathrm{" + projector_name(kind) + "}}\\left(" + render(full, Format::Latex) + "\\right)";
        v.formula_text = "π_" + projector_name(kind) + "(" + render(full, Format::Text) + ")";
        return v;
    }
    v.formula_reduced = true;
    std::vector<std::pair<Rational, std::string>> lt, tt;
    for (std::size_t i = 0; i < red.types.size(); ++i) {
        lt.push_back({red.coeffs[i], type_body(red.types[i], kind, tex, false)});
        tt.push_back({red.coeffs[i], type_body(red.types[i], kind, txt, false)});
    }
    v.formula_latex = assemble(leading(k, kind, tex), lt, tex);
    v.formula_text = assemble(leading(k, kind, txt), tt, txt);

    // rho substitution: Gamma = -1/(m-2) (Ric - R delta / (2(m-1)))
    if (alg.family() == Family::Conformal && alg.params()[1] == 0) {
        const long m = alg.params()[0];
        std::vector<std::pair<Rational, std::string>> lr, tr;
        for (std::size_t i = 0; i < red.types.size(); ++i) {
            const MonoType& t = red.types[i];
            Rational c = red.coeffs[i];
            if (kind == ProjectorKind::Alt) continue;  // Gamma is symmetric
            if (kind == ProjectorKind::Trace) {
                c *= make_q(-1, 2 * (m - 1));
                if (t.j == 0 && t.gammas == std::vector<int>{0}) v.zero_order_coefficient = c;
            } else {
                for (std::size_t f = 0; f < t.gammas.size(); ++f) c *= make_q(-1, m - 2);
            }
            lr.push_back({c, type_body(t, kind, tex, true)});
            tr.push_back({c, type_body(t, kind, txt, true)});
        }
        v.formula_rho_latex = assemble(leading(k, kind, tex), lr, tex);
        v.formula_rho_text = assemble(leading(k, kind, txt), tr, txt);
    }
    return v;
}

std::string verdict_json(const Verdict& v) {
    nlohmann::ordered_json j;
    j["invariant"] = v.invariant;
    j["rep"] = v.rep_label;
    j["order"] = v.order;
    j["projector"] = projector_name(v.projector);
    j["weights"] = nlohmann::ordered_json::array({to_fraction(v.weight)});
    if (v.invariant) {
        j["formula_latex"] = v.formula_latex;
        j["formula_text"] = v.formula_text;
        j["formula_reduced"] = v.formula_reduced;
        if (v.formula_rho_latex) j["formula_rho_latex"] = *v.formula_rho_latex;
        if (v.zero_order_coefficient) j["zero_order_coefficient"] = to_fraction(*v.zero_order_coefficient);
    }
    if (v.witness) {
        j["obstruction_witness"] = {{"z_index", v.witness->z_index},
                                    {"psi_index", v.witness->psi_index},
                                    {"row", v.witness->row},
                                    {"value", to_fraction(v.witness->value)}};
    }
    return j.dump(2);
}

}  // namespace ahs
