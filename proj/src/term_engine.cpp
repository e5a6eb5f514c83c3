#include "ahs/term_engine.hpp"

#include "ahs/errors.hpp"

#include "json.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <unordered_map>

namespace ahs {

using Kind = BracketNode::Kind;

int BracketNode::grade() const {
    switch (kind) {
        case Kind::Arg: return -1;
        case Kind::Tau:
        case Kind::Gamma: return 1;
        case Kind::Bracket: return left->grade() + right->grade();
    }
    return 0;
}

Beta arg(int i) {
    auto n = std::make_shared<BracketNode>();
    n->kind = Kind::Arg;
    n->index = i;
    return n;
}

Beta tau() {
    static const Beta t = [] {
        auto n = std::make_shared<BracketNode>();
        n->kind = Kind::Tau;
        return Beta(n);
    }();
    return t;
}

Beta gamma(std::vector<int> derivative_args, int target) {
    auto n = std::make_shared<BracketNode>();
    n->kind = Kind::Gamma;
    n->order = static_cast<int>(derivative_args.size());
    n->args = std::move(derivative_args);
    n->args.push_back(target);
    return n;
}

Beta br(Beta l, Beta r) {
    auto n = std::make_shared<BracketNode>();
    n->kind = Kind::Bracket;
    n->left = std::move(l);
    n->right = std::move(r);
    return n;
}

// ---- identity ----

std::string beta_key(const Beta& b) {
    switch (b->kind) {
        case Kind::Arg: return "x" + std::to_string(b->index);
        case Kind::Tau: return "t";
        case Kind::Gamma: {
            std::string s = "g(";
            for (int i = 0; i < b->order; ++i) s += (i ? "," : "") + std::to_string(b->args[i]);
            return s + ";" + std::to_string(b->args.back()) + ")";
        }
        case Kind::Bracket: return "[" + beta_key(b->left) + "," + beta_key(b->right) + "]";
    }
    return {};
}

std::string term_key(const Term& t) {
    std::string s;
    for (const auto& a : t.actions) s += std::to_string(a.t) + ":" + beta_key(a.beta) + ";";
    s += "|";
    for (std::size_t i = 0; i < t.slots.size(); ++i) s += (i ? "," : "") + std::to_string(t.slots[i]);
    return s;
}

bool operator==(const Term& a, const Term& b) { return a.coeff == b.coeff && term_key(a) == term_key(b); }

bool operator==(const Expansion& a, const Expansion& b) {
    return a.order == b.order && a.provenance == b.provenance && a.terms == b.terms;
}

namespace {

Beta rebuild(const Beta& b) {
    switch (b->kind) {
        case Kind::Arg: return arg(b->index);
        case Kind::Tau: return tau();
        case Kind::Gamma: return gamma(std::vector<int>(b->args.begin(), b->args.end() - 1), b->args.back());
        case Kind::Bracket: return br(rebuild(b->left), rebuild(b->right));
    }
    return b;
}

}  // namespace

Term canonical_form(const Term& t) {
    Term c;
    c.coeff = t.coeff;
    c.coeff.canonicalize();
    for (const auto& a : t.actions) c.actions.push_back({a.t, rebuild(a.beta)});
    c.slots = t.slots;
    return c;
}

Expansion merge(const Expansion& e) {
    Expansion out;
    out.order = e.order;
    out.provenance = e.provenance;
    std::unordered_map<std::string, std::size_t> pos;
    for (const auto& t : e.terms) {
        std::string key = term_key(t);
        auto it = pos.find(key);
        if (it == pos.end()) {
            pos.emplace(key, out.terms.size());
            out.terms.push_back(canonical_form(t));
        } else {
            out.terms[it->second].coeff += t.coeff;
        }
    }
    out.terms.erase(std::remove_if(out.terms.begin(), out.terms.end(), [](const Term& t) { return t.coeff == 0; }),
                    out.terms.end());
    return out;
}

std::map<std::string, Rational> as_map(const Expansion& e) {
    std::map<std::string, Rational> m;
    for (const auto& t : e.terms) m[term_key(t)] += t.coeff;
    for (auto it = m.begin(); it != m.end();)
        it = (it->second == 0) ? m.erase(it) : std::next(it);
    return m;
}

namespace {

int count_kind(const Beta& b, Kind k) {
    if (b->kind == Kind::Bracket) return count_kind(b->left, k) + count_kind(b->right, k);
    return b->kind == k ? 1 : 0;
}

int max_order(const Beta& b) {
    if (b->kind == Kind::Bracket) return std::max(max_order(b->left), max_order(b->right));
    return b->kind == Kind::Gamma ? b->order : -1;
}

bool grades_ok(const Beta& b) {
    if (b->kind != Kind::Bracket) return true;
    if (!grades_ok(b->left) || !grades_ok(b->right)) return false;
    int g = b->grade();
    return g >= -1 && g <= 1;
}

void collect_args(const Beta& b, std::vector<int>& out) {
    switch (b->kind) {
        case Kind::Arg: out.push_back(b->index); break;
        case Kind::Gamma: out.insert(out.end(), b->args.begin(), b->args.end()); break;
        case Kind::Bracket:
            collect_args(b->left, out);
            collect_args(b->right, out);
            break;
        default: break;
    }
}

}  // namespace

int tau_count(const Term& t) {
    int c = 0;
    for (const auto& a : t.actions) c += count_kind(a.beta, Kind::Tau);
    return c;
}

int max_gamma_order(const Term& t) {
    int r = -1;
    for (const auto& a : t.actions) r = std::max(r, max_order(a.beta));
    return r;
}

bool well_formed(const Term& t, int k, std::string* why) {
    auto fail = [&](const std::string& s) {
        if (why) *why = s;
        return false;
    };
    std::vector<int> used(t.slots);
    int prev_t = k;
    for (const auto& a : t.actions) {
        if (a.beta->grade() != 0) return fail("action argument of nonzero grade");
        if (!grades_ok(a.beta)) return fail("bracket leaves the grade range");
        if (a.t < 0 || a.t >= prev_t) return fail("action chain t values must decrease");
        prev_t = a.t;
        collect_args(a.beta, used);
    }
    std::sort(used.begin(), used.end());
    std::vector<int> expect(k);
    for (int i = 0; i < k; ++i) expect[i] = i + 1;
    if (used != expect) return fail("arguments are not used exactly once");
    return true;
}

// ---- recursion ----

namespace {

// copies of b with exactly one atom of the given kind replaced
void variants(const Beta& b, Kind kind, const std::function<Beta(const Beta&)>& f, std::vector<Beta>& out) {
    if (b->kind == kind) {
        out.push_back(f(b));
        return;
    }
    if (b->kind != Kind::Bracket) return;
    std::vector<Beta> tmp;
    variants(b->left, kind, f, tmp);
    for (auto& v : tmp) out.push_back(br(v, b->right));
    tmp.clear();
    variants(b->right, kind, f, tmp);
    for (auto& v : tmp) out.push_back(br(b->left, v));
}

void substitute_all(const Term& t, Kind kind, const Rational& factor, const std::function<Beta(const Beta&)>& f,
                    std::vector<Term>& out) {
    for (std::size_t a = 0; a < t.actions.size(); ++a) {
        std::vector<Beta> vs;
        variants(t.actions[a].beta, kind, f, vs);
        for (auto& v : vs) {
            Term n = t;
            n.coeff *= factor;
            n.actions[a].beta = v;
            out.push_back(std::move(n));
        }
    }
}

}  // namespace

Expansion expand(int k, std::optional<int> truncate_tau_above) {
    if (k < 0) throw ParameterError("expansion order must be >= 0");
    Expansion cur;
    cur.order = 0;
    const Rational minus_half = make_q(-1, 2);
    for (int i = 1; i <= k; ++i) {
        Expansion next;
        next.order = i;
        const Beta lead = br(arg(i), tau());
        const Beta ad2 = br(tau(), br(tau(), arg(i)));
        for (const auto& t : cur.terms) {
            Term pre = t;
            pre.actions.insert(pre.actions.begin(), Action{i - 1, lead});
            next.terms.push_back(std::move(pre));
            substitute_all(t, Kind::Tau, minus_half, [&](const Beta&) { return ad2; }, next.terms);
            substitute_all(t, Kind::Gamma, 1,
                           [&](const Beta& g) {
                               std::vector<int> d(g->args.begin(), g->args.end() - 1);
                               d.push_back(i);
                               return gamma(d, g->args.back());
                           },
                           next.terms);
            Term der = t;
            der.slots.push_back(i);
            next.terms.push_back(std::move(der));
            substitute_all(t, Kind::Tau, 1, [&](const Beta&) { return gamma({}, i); }, next.terms);
        }
        Term fresh;
        fresh.actions.push_back({i - 1, lead});
        for (int s = 1; s < i; ++s) fresh.slots.push_back(s);
        next.terms.push_back(std::move(fresh));
        if (truncate_tau_above) {
            const int limit = *truncate_tau_above + (k - i);
            next.terms.erase(std::remove_if(next.terms.begin(), next.terms.end(),
                                            [&](const Term& t) { return tau_count(t) > limit; }),
                             next.terms.end());
        }
        cur = merge(next);
    }
    cur.order = k;
    cur.provenance = Provenance::Full;
    return cur;
}

Expansion filter_by_tau(const Expansion& e, int j) {
    Expansion out;
    out.order = e.order;
    out.provenance = Provenance::Filtered;
    for (const auto& t : e.terms)
        if (tau_count(t) == j) out.terms.push_back(t);
    return out;
}

Expansion algebraic_obstruction(int k) {
    if (k < 1) throw ParameterError("algebraic obstruction needs k >= 1");
    Expansion d1 = filter_by_tau(expand(k, 1), 1);
    Expansion out;
    out.order = k;
    out.provenance = Provenance::Filtered;
    for (const auto& t : d1.terms)
        if (t.deriv_order() == k - 1) out.terms.push_back(t);
    return out;
}

// ---- evaluation ----

namespace {

struct Evaluator {
    const GradedLieAlgebra& alg;
    const Representation& rep;
    const Bindings& b;
    std::size_t n;

    std::pair<int, Vec> beta(const Beta& node, const std::vector<Vec>& xs) const {
        switch (node->kind) {
            case Kind::Arg: return {-1, xs.at(node->index - 1)};
            case Kind::Tau: return {1, *b.tau};
            case Kind::Gamma: return {1, gamma_value(node, xs)};
            case Kind::Bracket: {
                auto [gl, l] = beta(node->left, xs);
                auto [gr, r] = beta(node->right, xs);
                return {gl + gr, alg.bracket_parts(gl, l, gr, r, gl + gr)};
            }
        }
        return {0, {}};
    }

    Vec gamma_value(const Beta& node, const std::vector<Vec>& xs) const {
        const auto& table = b.gamma[node->order];
        const Vec& target = xs.at(node->args.back() - 1);
        Vec out(n);
        // iterate over the multi-index of the derivative arguments
        std::function<void(int, std::size_t, Rational)> rec = [&](int pos, std::size_t flat, Rational w) {
            if (pos == node->order) {
                axpy(w, table[flat] * target, out);
                return;
            }
            const Vec& x = xs.at(node->args[pos] - 1);
            for (std::size_t c = 0; c < n; ++c)
                if (x[c] != 0) rec(pos + 1, flat * n + c, w * x[c]);
        };
        rec(0, 0, 1);
        return out;
    }

    Vec jet(const std::vector<int>& slots, const std::vector<Vec>& xs) const {
        const std::size_t dv = rep.carrier_dim;
        const Vec& table = b.jets[slots.size()];
        Vec out(dv);
        std::function<void(std::size_t, std::size_t, Rational)> rec = [&](std::size_t pos, std::size_t flat,
                                                                          Rational w) {
            if (pos == slots.size()) {
                for (std::size_t v = 0; v < dv; ++v)
                    if (table[flat * dv + v] != 0) out[v] += w * table[flat * dv + v];
                return;
            }
            const Vec& x = xs.at(slots[pos] - 1);
            for (std::size_t c = 0; c < n; ++c)
                if (x[c] != 0) rec(pos + 1, flat * n + c, w * x[c]);
        };
        rec(0, 0, 1);
        return out;
    }

    Vec chain(const Term& t, std::size_t pos, const std::vector<Vec>& xs) const {
        if (pos == t.actions.size()) return jet(t.slots, xs);
        const Action& a = t.actions[pos];
        auto [g, A] = beta(a.beta, xs);
        (void)g;
        Vec inner = chain(t, pos + 1, xs);
        Vec out = rep.act0(A) * inner;
        if (a.t > 0) {
            Matrix ad = alg.ad_on_minus(A);
            std::vector<Vec> ys = xs;
            for (int i = 0; i < a.t; ++i) {
                ys[i] = ad * xs[i];
                axpy(-1, chain(t, pos + 1, ys), out);
                ys[i] = xs[i];
            }
        }
        return out;
    }
};

void check_bindings(const Term& t, const Representation& rep, const Bindings& b) {
    const GradedLieAlgebra& alg = *rep.algebra;
    const std::size_t n = alg.dim_minus();
    if (tau_count(t) > 0) {
        if (!b.tau) throw MissingBindingError("tau is not bound");
        if (b.tau->size() != n) throw DimensionError("tau binding has wrong size");
    }
    int r = max_gamma_order(t);
    if (r >= 0) {
        if (static_cast<int>(b.gamma.size()) <= r)
            throw MissingBindingError("no binding for (nabla^" + std::to_string(r) + " Gamma)");
        for (int q = 0; q <= r; ++q) {
            std::size_t expect = 1;
            for (int i = 0; i < q; ++i) expect *= n;
            if (b.gamma[q].size() != expect) throw DimensionError("Gamma binding has wrong size");
        }
    }
    const int j = t.deriv_order();
    if (static_cast<int>(b.jets.size()) <= j)
        throw MissingBindingError("no binding for (nabla^" + std::to_string(j) + " s)");
    if (b.jets[j].size() != tensor_dim(rep, j)) throw DimensionError("jet binding has wrong size");
}

}  // namespace

Vec evaluate_term(const Term& t, const Representation& rep, const Bindings& b, const std::vector<Vec>& xs) {
    check_bindings(t, rep, b);
    Evaluator ev{*rep.algebra, rep, b, rep.algebra->dim_minus()};
    return scale(t.coeff, ev.chain(t, 0, xs));
}

Vec evaluate(const Expansion& e, const Representation& rep, const Bindings& b) {
    const std::size_t n = rep.algebra->dim_minus();
    const std::size_t dv = rep.carrier_dim;
    const int k = e.order;
    for (const auto& t : e.terms) check_bindings(t, rep, b);
    Evaluator ev{*rep.algebra, rep, b, n};
    std::size_t tuples = 1;
    for (int i = 0; i < k; ++i) tuples *= n;
    Vec out(tuples * dv);
    std::vector<Vec> xs(k, Vec(n));
    for (std::size_t flat = 0; flat < tuples; ++flat) {
        std::size_t rem = flat;
        for (int i = k - 1; i >= 0; --i) {
            xs[i].assign(n, Rational(0));
            xs[i][rem % n] = 1;
            rem /= n;
        }
        for (const auto& t : e.terms) {
            Vec v = ev.chain(t, 0, xs);
            for (std::size_t c = 0; c < dv; ++c)
                if (v[c] != 0) out[flat * dv + c] += t.coeff * v[c];
        }
    }
    return out;
}

// ---- rendering ----

Format parse_format(const std::string& s) {
    if (s == "text") return Format::Text;
    if (s == "latex") return Format::Latex;
    if (s == "json") return Format::Json;
    throw ParameterError("unknown format: " + s);
}

namespace {

std::string x_name(int i, Format f) { return f == Format::Latex ? "X_" + std::to_string(i) : "X" + std::to_string(i); }

std::string join_args(const std::vector<int>& a, std::size_t from, std::size_t to, Format f) {
    std::string s;
    for (std::size_t i = from; i < to; ++i) s += (i > from ? "," : "") + x_name(a[i], f);
    return s;
}

bool is_tau(const Beta& b) { return b->kind == Kind::Tau; }

std::string render_node(const Beta& b, Format f) {
    const bool tex = f == Format::Latex;
    switch (b->kind) {
        case Kind::Arg: return x_name(b->index, f);
        case Kind::Tau: return tex ? "\\tau" : "τ";
        case Kind::Gamma: {
            std::string target = x_name(b->args.back(), f);
            if (b->order == 0) return tex ? "\\Gamma\\cdot " + target : "Γ·" + target;
            std::string pw = b->order == 1 ? "" : (tex ? "^{" + std::to_string(b->order) + "}" : "^" + std::to_string(b->order));
            std::string args = join_args(b->args, 0, b->order, f);
            if (tex) return "(\\nabla" + pw + "\\Gamma)(" + args + ")\\cdot " + target;
            return "(∇" + pw + "Γ)(" + args + ")·" + target;
        }
        case Kind::Bracket:
            if (tex && is_tau(b->left)) {
                Beta inner = b->right;
                int power = 1;
                if (inner->kind == Kind::Bracket && is_tau(inner->left)) {
                    power = 2;
                    inner = inner->right;
                }
                std::string arg = render_node(inner, f);
                if (inner->kind == Kind::Gamma) arg = "(" + arg + ")";
                return std::string("\\mathrm{ad}_\\tau") + (power == 2 ? "^2" : "") + " " + arg;
            }
            return "[" + render_node(b->left, f) + "," + render_node(b->right, f) + "]";
    }
    return {};
}

std::string render_jet(const std::vector<int>& slots, Format f) {
    const bool tex = f == Format::Latex;
    if (slots.empty()) return "s";
    std::string pw;
    if (slots.size() > 1) pw = tex ? "^{" + std::to_string(slots.size()) + "}" : "^" + std::to_string(slots.size());
    std::string args = join_args(slots, 0, slots.size(), f);
    if (tex) return "(\\nabla" + pw + " s)(" + args + ")";
    return "∇" + pw + "s(" + args + ")";
}

std::string render_coeff(const Rational& c, Format f) {
    Rational a = abs(c);
    if (a == 1) return "";
    if (f == Format::Latex) {
        if (a.get_den() == 1) return a.get_num().get_str();
        return "\\frac{" + a.get_num().get_str() + "}{" + a.get_den().get_str() + "}";
    }
    return a.get_str() + " ";
}

std::string render_term(const Term& t, Format f) {
    const bool tex = f == Format::Latex;
    std::vector<std::string> parts;
    for (const auto& a : t.actions) {
        std::string lam = tex ? "\\lambda" : "λ";
        if (a.t > 0) lam += tex ? "^{(" + std::to_string(a.t) + ")}" : "^(" + std::to_string(a.t) + ")";
        parts.push_back(lam + "(" + render_node(a.beta, f) + ")");
    }
    parts.push_back(render_jet(t.slots, f));
    std::string sep = tex ? "\\," : " ∘ ";
    std::string s;
    for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? sep : "") + parts[i];
    return render_coeff(t.coeff, f) + s;
}

nlohmann::ordered_json beta_json(const Beta& b) {
    nlohmann::ordered_json j;
    switch (b->kind) {
        case Kind::Arg:
            j["kind"] = "arg";
            j["index"] = b->index;
            break;
        case Kind::Tau: j["kind"] = "tau"; break;
        case Kind::Gamma:
            j["kind"] = "gamma";
            j["order"] = b->order;
            j["args"] = b->args;
            break;
        case Kind::Bracket:
            j["kind"] = "bracket";
            j["left"] = beta_json(b->left);
            j["right"] = beta_json(b->right);
            break;
    }
    return j;
}

Beta beta_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) throw SchemaError("beta node without kind");
    const std::string k = j["kind"];
    auto get_int = [&](const char* key) {
        if (!j.contains(key) || !j[key].is_number_integer()) throw SchemaError(std::string("missing integer ") + key);
        return j[key].get<int>();
    };
    if (k == "arg") return arg(get_int("index"));
    if (k == "tau") return tau();
    if (k == "gamma") {
        int r = get_int("order");
        if (!j.contains("args") || !j["args"].is_array()) throw SchemaError("gamma without args");
        std::vector<int> a = j["args"].get<std::vector<int>>();
        if (static_cast<int>(a.size()) != r + 1) throw SchemaError("gamma args must have order+1 entries");
        int target = a.back();
        a.pop_back();
        return gamma(a, target);
    }
    if (k == "bracket") {
        if (!j.contains("left") || !j.contains("right")) throw SchemaError("bracket without operands");
        return br(beta_from_json(j["left"]), beta_from_json(j["right"]));
    }
    throw SchemaError("unknown beta kind: " + k);
}

}  // namespace

std::string render_beta(const Beta& b, Format f) {
    if (f == Format::Json) return beta_json(b).dump();
    return render_node(b, f);
}

std::string render(const Expansion& e, Format f) {
    if (f == Format::Json) {
        nlohmann::ordered_json doc;
        doc["order"] = e.order;
        doc["provenance"] = e.provenance == Provenance::Full ? "full" : "filtered";
        doc["terms"] = nlohmann::ordered_json::array();
        for (const auto& t : e.terms) {
            nlohmann::ordered_json jt;
            jt["coeff"] = to_fraction(t.coeff);
            jt["actions"] = nlohmann::ordered_json::array();
            for (const auto& a : t.actions) {
                nlohmann::ordered_json ja;
                ja["t"] = a.t;
                ja["beta"] = beta_json(a.beta);
                jt["actions"].push_back(ja);
            }
            jt["deriv_order"] = t.deriv_order();
            jt["slots"] = t.slots;
            doc["terms"].push_back(jt);
        }
        return doc.dump(2);
    }
    if (e.terms.empty()) return "0";
    std::string s;
    for (std::size_t i = 0; i < e.terms.size(); ++i) {
        const Term& t = e.terms[i];
        if (i == 0) s += t.coeff < 0 ? "-" : "";
        else s += t.coeff < 0 ? " - " : " + ";
        s += render_term(t, f);
    }
    return s;
}

Expansion parse_expansion_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("order") || !doc["order"].is_number_integer() || !doc.contains("terms") ||
        !doc["terms"].is_array())
        throw SchemaError("expansion document needs integer order and a terms array");
    Expansion e;
    e.order = doc["order"].get<int>();
    std::string prov = doc.value("provenance", std::string("full"));
    if (prov == "full") e.provenance = Provenance::Full;
    else if (prov == "filtered") e.provenance = Provenance::Filtered;
    else throw SchemaError("unknown provenance: " + prov);
    for (const auto& jt : doc["terms"]) {
        if (!jt.is_object() || !jt.contains("coeff") || !jt["coeff"].is_string() || !jt.contains("actions") ||
            !jt["actions"].is_array() || !jt.contains("slots") || !jt["slots"].is_array())
            throw SchemaError("malformed term");
        Term t;
        t.coeff = parse_rational(jt["coeff"].get<std::string>());
        for (const auto& ja : jt["actions"]) {
            if (!ja.is_object() || !ja.contains("t") || !ja["t"].is_number_integer() || !ja.contains("beta"))
                throw SchemaError("malformed action");
            t.actions.push_back({ja["t"].get<int>(), beta_from_json(ja["beta"])});
        }
        t.slots = jt["slots"].get<std::vector<int>>();
        if (jt.contains("deriv_order") && jt["deriv_order"].get<int>() != t.deriv_order())
            throw SchemaError("deriv_order disagrees with slots");
        e.terms.push_back(std::move(t));
    }
    return e;
}

}  // namespace ahs
