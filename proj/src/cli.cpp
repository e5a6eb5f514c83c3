#include "ahs/cli.hpp"

#include "ahs/conformal_normalization.hpp"
#include "ahs/errors.hpp"
#include "ahs/jet_obstruction.hpp"
#include "ahs/term_engine.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace ahs::cli {

namespace {

using Json = nlohmann::ordered_json;

struct Request {
    std::string format = "text";
    std::string output;

    std::string family = "conformal";
    std::vector<int> params;
    int dim = 0;
    int signature = 0;

    int order = -1;
    std::string filter = "all";
    int truncate = -1;
    bool count_only = false;
    int max_order = 6;

    std::string rep = "density";
    std::string projector = "sym0";
    std::string input;
};

Format format_of(const Request& r) { return parse_format(r.format); }

AlgebraPtr algebra_of(const Request& r) {
    if (r.dim > 0) return build_algebra(Family::Conformal, {r.dim, r.signature});
    if (r.params.empty()) throw ParameterError("give --dim or --params");
    return build_algebra(parse_family(r.family), r.params);
}

std::string matrix_text(const Matrix& m) {
    std::string s;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        s += "[";
        for (std::size_t c = 0; c < m.cols(); ++c) s += (c ? " " : "") + to_short(m(i, c));
        s += "]\n";
    }
    return s;
}

std::string matrix_latex(const Matrix& m) {
    std::string s = "\\begin{pmatrix}";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            const Rational& q = m(i, c);
            std::string v = q.get_den() == 1 ? q.get_num().get_str()
                                             : std::string(q < 0 ? "-" : "") + "\\frac{" + mpz_class(abs(q.get_num())).get_str() +
                                                   "}{" + q.get_den().get_str() + "}";
            s += (c ? " & " : "") + v;
        }
        if (i + 1 < m.rows()) s += " \\\\ ";
    }
    return s + "\\end{pmatrix}";
}

Json matrix_json(const Matrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_fraction(m(i, c)));
        rows.push_back(row);
    }
    return rows;
}

std::string read_input(const std::string& path) {
    if (path.empty()) throw ParameterError("--input is required");
    std::stringstream ss;
    if (path == "-") {
        ss << std::cin.rdbuf();
    } else {
        std::ifstream f(path);
        if (!f) throw ParameterError("cannot read " + path);
        ss << f.rdbuf();
    }
    return ss.str();
}

// ---- algebra ----

Result run_algebra_info(const Request& r) {
    AlgebraPtr alg = algebra_of(r);
    const GradedLieAlgebra& a = *alg;
    Result res;
    const Format f = format_of(r);
    if (f == Format::Json) {
        Json j;
        j["family"] = family_name(a.family());
        j["params"] = a.params();
        j["matrix_size"] = a.matrix_size();
        j["dim"] = {{"g-1", a.dim_minus()}, {"g0", a.dim_zero()}, {"g1", a.dim_plus()}, {"total", a.dim()}};
        Json labels = Json::array();
        for (std::size_t i = 0; i < a.dim(); ++i) labels.push_back(a.label(i));
        j["basis"] = labels;
        j["grading_element"] = a.label(a.global_index(0, a.grading_index()));
        res.out = j.dump(2) + "\n";
        return res;
    }
    std::ostringstream o;
    if (f == Format::Latex) {
        o << "\\dim\\mathfrak{g}_{-1} = " << a.dim_minus() << ",\\quad \\dim\\mathfrak{g}_0 = " << a.dim_zero()
          << ",\\quad \\dim\\mathfrak{g}_1 = " << a.dim_plus() << "\n";
    } else {
        o << "family: " << family_name(a.family()) << "(";
        for (std::size_t i = 0; i < a.params().size(); ++i) o << (i ? "," : "") << a.params()[i];
        o << ")\n";
        o << "matrix size: " << a.matrix_size() << "\n";
        o << "dim g-1 = " << a.dim_minus() << ", dim g0 = " << a.dim_zero() << ", dim g1 = " << a.dim_plus()
          << ", total = " << a.dim() << "\n";
        o << "grading element: " << a.label(a.global_index(0, a.grading_index())) << "\n";
        o << "basis:";
        for (std::size_t i = 0; i < a.dim(); ++i) o << " " << a.label(i);
        o << "\n";
    }
    res.out = o.str();
    return res;
}

// ---- expand ----

Expansion apply_filter(const Expansion& e, const std::string& filter) {
    if (filter == "all") return e;
    if (filter == "correction") return filter_by_tau(e, 0);
    if (filter == "obstruction") return filter_by_tau(e, 1);
    if (filter.rfind("tau:", 0) == 0) {
        try {
            int j = std::stoi(filter.substr(4));
            if (j >= 0) return filter_by_tau(e, j);
        } catch (const std::exception&) {
        }
    }
    throw ParameterError("unknown filter '" + filter + "' (all, correction, obstruction, tau:N)");
}

Result run_expand(const Request& r) {
    Result res;
    const Format f = format_of(r);
    if (r.count_only) {
        const int top = r.order >= 0 ? r.order : r.max_order;
        if (top < 0) throw ParameterError("--max-order must be >= 0");
        std::vector<std::size_t> full, corr, lin;
        for (int k = 1; k <= top; ++k) {
            Expansion e = expand(k);
            full.push_back(e.terms.size());
            corr.push_back(filter_by_tau(e, 0).terms.size());
            lin.push_back(filter_by_tau(e, 1).terms.size());
        }
        if (f == Format::Json) {
            Json j;
            j["max_order"] = top;
            j["full"] = full;
            j["correction"] = corr;
            j["linear_obstruction"] = lin;
            res.out = j.dump(2) + "\n";
            return res;
        }
        auto row = [&](const std::string& name, const std::vector<std::size_t>& v) {
            std::string s = name;
            for (std::size_t i = 0; i < v.size(); ++i) s += (f == Format::Latex ? " & " : (i ? ", " : " ")) + std::to_string(v[i]);
            return s + (f == Format::Latex ? " \\\\\n" : "\n");
        };
        res.out = row(f == Format::Latex ? "full" : "full:", full) + row(f == Format::Latex ? "correction" : "correction:", corr) +
                  row(f == Format::Latex ? "linear obstruction" : "linear obstruction:", lin);
        return res;
    }
    if (r.order < 0) throw ParameterError("--order is required and must be >= 0");
    std::optional<int> trunc;
    if (r.truncate >= 0) trunc = r.truncate;
    Expansion e = apply_filter(expand(r.order, trunc), r.filter);
    if (f == Format::Json) {
        res.out = render(e, Format::Json) + "\n";
    } else {
        res.out = render(e, f) + "\n";
        res.err = "terms: " + std::to_string(e.terms.size()) + "\n";
    }
    return res;
}

// ---- operator ----

Result run_operator_check(const Request& r) {
    AlgebraPtr alg = algebra_of(r);
    if (r.order < 1) throw ParameterError("--order must be >= 1");
    Representation rep = make_rep(alg, r.rep);
    Verdict v = verify_operator(rep, r.order, parse_projector(r.projector));
    Result res;
    res.code = v.invariant ? Ok : Negative;
    const Format f = format_of(r);
    if (f == Format::Json) {
        res.out = verdict_json(v) + "\n";
        return res;
    }
    std::ostringstream o;
    if (f == Format::Latex) {
        if (v.invariant) {
            o << v.formula_latex << "\n";
            if (v.formula_rho_latex) o << *v.formula_rho_latex << "\n";
        } else {
            o << "% not invariant\n";
        }
    } else {
        o << "operator: " << rep.label << ", order " << v.order << ", projector " << projector_name(v.projector) << "\n";
        o << "invariant: " << (v.invariant ? "yes" : "no") << "\n";
        if (v.invariant) {
            o << "formula: " << v.formula_text << "\n";
            if (v.formula_rho_text) o << "rho form: " << *v.formula_rho_text << "\n";
            if (v.zero_order_coefficient) o << "zero-order coefficient: " << to_short(*v.zero_order_coefficient) << "\n";
        } else if (v.witness) {
            o << "obstruction witness: Z index " << v.witness->z_index << ", psi index " << v.witness->psi_index << ", row "
              << v.witness->row << ", value " << to_short(v.witness->value) << "\n";
        }
    }
    res.out = o.str();
    return res;
}

Result run_operator_solve(const Request& r) {
    AlgebraPtr alg = algebra_of(r);
    if (r.order < 1) throw ParameterError("--order must be >= 1");
    Representation base = make_rep(alg, r.rep);
    WeightSet ws = solve_weights(base, r.order, parse_projector(r.projector));
    Result res;
    const Format f = format_of(r);
    if (f == Format::Json) {
        Json j;
        j["rep"] = base.label;
        j["order"] = r.order;
        j["projector"] = r.projector;
        j["all"] = ws.all;
        Json w = Json::array();
        for (const auto& x : ws.values) w.push_back(to_fraction(x));
        j["weights"] = w;
        res.out = j.dump(2) + "\n";
    } else if (ws.all) {
        res.out = "w = all\n";
    } else if (ws.values.empty()) {
        res.out = "w = none\n";
    } else {
        std::string s;
        for (std::size_t i = 0; i < ws.values.size(); ++i) s += (i ? ", " : "") + to_short(ws.values[i]);
        res.out = "w = " + s + "\n";
    }
    return res;
}

// ---- conformal ----

Result gamma_document(const Matrix& g, Format f, Json extra) {
    Result res;
    if (f == Format::Json) {
        Json j;
        j["gamma"] = matrix_json(g);
        for (auto& [k, v] : extra.items()) j[k] = v;
        res.out = j.dump(2) + "\n";
    } else if (f == Format::Latex) {
        res.out = "\\Gamma = " + matrix_latex(g) + "\n";
    } else {
        res.out = "Gamma =\n" + matrix_text(g);
        for (auto& [k, v] : extra.items()) res.out += k + ": " + (v.is_string() ? v.get<std::string>() : v.dump()) + "\n";
    }
    return res;
}

Result run_conformal_normalize(const Request& r) {
    CurvatureInput in = parse_curvature_json(read_input(r.input));
    AlgebraPtr alg = build_algebra(Family::Conformal, {in.m, 0});
    Normalization n = in.riemann ? normalize_connection(*alg, curvature_from_coordinates(*alg, *in.riemann))
                                 : normalize_traces(*alg, Rational(-1) * in.ricci, Matrix(in.m, in.m));
    const Format f = format_of(r);
    if (f == Format::Json) return Result{Ok, normalization_json(n) + "\n", ""};
    Json extra;
    extra["deformed_trace_max_abs"] = to_fraction(n.deformed_trace_max_abs);
    extra["unique"] = n.unique;
    return gamma_document(n.gamma.gamma, f, f == Format::Latex ? Json::object() : extra);
}

Result run_conformal_rho(const Request& r) {
    CurvatureInput in = parse_curvature_json(read_input(r.input));
    AlgebraPtr alg = build_algebra(Family::Conformal, {in.m, 0});
    DeformationTensor g = rho_tensor(*alg, in.ricci, in.scalar);
    return gamma_document(g.gamma, format_of(r), Json::object());
}

Result run_laplacian_coefficient(const Request& r) {
    if (r.dim < 3) throw ParameterError("--dim must be >= 3");
    AlgebraPtr alg = build_algebra(Family::Conformal, {r.dim, 0});
    Verdict v = verify_operator(make_density(alg, make_q(r.dim - 2, 2)), 2, ProjectorKind::Trace);
    if (!v.invariant || !v.zero_order_coefficient) throw Error("Laplacian did not certify at w = (m-2)/2");
    const Rational& c = *v.zero_order_coefficient;
    Result res;
    switch (format_of(r)) {
        case Format::Json: {
            Json j;
            j["dim"] = r.dim;
            j["weight"] = to_fraction(make_q(r.dim - 2, 2));
            j["coefficient"] = to_fraction(c);
            res.out = j.dump(2) + "\n";
            break;
        }
        case Format::Latex:
            res.out = c.get_den() == 1 ? c.get_str() + "\n"
                                       : "\\frac{" + c.get_num().get_str() + "}{" + c.get_den().get_str() + "}\n";
            break;
        case Format::Text:
            res.out = to_short(c) + "\n";
            break;
    }
    return res;
}

}  // namespace

Result run(const std::vector<std::string>& args) {
    Request req;
    CLI::App app{"exact invariant calculus on AHS structures", "ahs"};
    app.require_subcommand(1);
    app.add_option("--format", req.format, "text, latex or json")->check(CLI::IsMember({"text", "latex", "json"}));
    app.add_option("--output", req.output, "write the document to PATH");

    auto algebra_opts = [&](CLI::App* c) {
        c->add_option("--family", req.family, "grassmannian, conformal, lagrangian, spinorial");
        c->add_option("--params", req.params, "family parameters");
        c->add_option("--dim", req.dim, "shorthand for conformal(m, n)");
        c->add_option("--signature", req.signature, "n in conformal(m, n)");
    };
    auto global_opts = [&](CLI::App* c) {
        c->add_option("--format", req.format)->check(CLI::IsMember({"text", "latex", "json"}));
        c->add_option("--output", req.output);
    };

    CLI::App* algebra = app.add_subcommand("algebra", "inspect a graded algebra");
    algebra->require_subcommand(1);
    CLI::App* info = algebra->add_subcommand("info", "dimensions and basis");
    algebra_opts(info);
    global_opts(info);

    CLI::App* exp = app.add_subcommand("expand", "expand iterated invariant differentials");
    exp->add_option("--order", req.order, "k");
    exp->add_option("--filter", req.filter, "all, correction, obstruction, tau:N");
    exp->add_option("--truncate", req.truncate, "drop terms with more tau occurrences");
    exp->add_flag("--count-only", req.count_only, "print the term-count table");
    exp->add_option("--max-order", req.max_order, "last order of the count table");
    global_opts(exp);

    CLI::App* op = app.add_subcommand("operator", "invariant operator candidates");
    op->require_subcommand(1);
    CLI::App* check = op->add_subcommand("check", "verify a projected operator");
    CLI::App* solve = op->add_subcommand("solve-weight", "weights making the operator invariant");
    for (CLI::App* c : {check, solve}) {
        algebra_opts(c);
        global_opts(c);
        c->add_option("--rep", req.rep, "representation descriptor");
        c->add_option("--order", req.order, "k")->required();
        c->add_option("--projector", req.projector, "sym0, trace, alt, sym3_0");
    }

    CLI::App* conf = app.add_subcommand("conformal", "conformal normalization");
    conf->require_subcommand(1);
    CLI::App* norm = conf->add_subcommand("normalize", "normal connection from curvature JSON");
    CLI::App* rho = conf->add_subcommand("rho", "rho tensor from Ricci data");
    CLI::App* lap = conf->add_subcommand("laplacian-coefficient", "zero-order coefficient of the conformal Laplacian");
    for (CLI::App* c : {norm, rho}) {
        c->add_option("--input", req.input, "curvature JSON, - for stdin")->required();
        global_opts(c);
    }
    lap->add_option("--dim", req.dim, "m")->required();
    global_opts(lap);

    std::vector<std::string> rev(args.rbegin(), args.rend());
    Result res;
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        return Result{Ok, app.help(), ""};
    } catch (const CLI::CallForAllHelp&) {
        return Result{Ok, app.help("", CLI::AppFormatMode::All), ""};
    } catch (const CLI::ParseError& e) {
        return Result{Usage, "", std::string(e.what()) + "\n"};
    }
    try {
        if (*info)
            res = run_algebra_info(req);
        else if (*exp)
            res = run_expand(req);
        else if (*check)
            res = run_operator_check(req);
        else if (*solve)
            res = run_operator_solve(req);
        else if (*norm)
            res = run_conformal_normalize(req);
        else if (*rho)
            res = run_conformal_rho(req);
        else if (*lap)
            res = run_laplacian_coefficient(req);
    } catch (const std::exception& e) {
        return Result{Usage, "", std::string("error: ") + e.what() + "\n"};
    }
    if (!req.output.empty()) {
        std::ofstream f(req.output);
        if (!f) return Result{Usage, "", "error: cannot write " + req.output + "\n"};
        f << res.out;
        res.out.clear();
    }
    return res;
}

int main_entry(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    Result r = run(args);
    std::cout << r.out;
    std::cerr << r.err;
    return r.code;
}

}  // namespace ahs::cli
