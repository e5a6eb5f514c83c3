#pragma once

#include "ahs/representation.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace ahs {

struct BracketNode;
using Beta = std::shared_ptr<const BracketNode>;

struct BracketNode {
    enum class Kind { Arg, Tau, Gamma, Bracket };
    Kind kind = Kind::Arg;
    int index = 0;          // Arg
    int order = 0;          // Gamma: r
    std::vector<int> args;  // Gamma: r derivative arguments followed by the target argument
    Beta left, right;       // Bracket

    int grade() const;
};

Beta arg(int i);
Beta tau();
// ((nabla^r Gamma)(X_{d_1},...,X_{d_r})) . X_target
Beta gamma(std::vector<int> derivative_args, int target);
Beta br(Beta l, Beta r);

struct Action {
    int t = 0;
    Beta beta;
};

struct Term {
    Rational coeff = 1;
    std::vector<Action> actions;  // outermost first
    std::vector<int> slots;       // arguments of the trailing (nabla^j s)
    int deriv_order() const { return static_cast<int>(slots.size()); }
};

enum class Provenance { Full, Filtered };

struct Expansion {
    int order = 0;
    std::vector<Term> terms;
    Provenance provenance = Provenance::Full;
};

bool operator==(const Term& a, const Term& b);
bool operator==(const Expansion& a, const Expansion& b);

std::string beta_key(const Beta& b);
// hashable identity of the coefficient-free part
std::string term_key(const Term& t);
Term canonical_form(const Term& t);
// sums coefficients of equal keys, drops zeros, keeps first-seen order
Expansion merge(const Expansion& e);
// key -> coefficient, for order-independent comparison
std::map<std::string, Rational> as_map(const Expansion& e);

int tau_count(const Term& t);
int max_gamma_order(const Term& t);  // -1 when no Gamma atom
// grade-0 betas, every argument 1..k used exactly once, decreasing t
bool well_formed(const Term& t, int k, std::string* why = nullptr);

Expansion expand(int k, std::optional<int> truncate_tau_above = std::nullopt);
Expansion filter_by_tau(const Expansion& e, int j);
Expansion algebraic_obstruction(int k);

struct Bindings {
    std::optional<Vec> tau;             // g_1 coordinates
    std::vector<std::vector<Matrix>> gamma;  // gamma[r][multi-index] : column i = (nabla^r Gamma)(...)(e_i)
    std::vector<Vec> jets;              // jets[j] : (x)^j g_{-1}^* (x) V coordinates
};

// value on all basis argument tuples, laid out like (x)^k g_{-1}^* (x) V
Vec evaluate(const Expansion& e, const Representation& rep, const Bindings& b);
// single term, arbitrary argument vectors Xs[0..k-1]
Vec evaluate_term(const Term& t, const Representation& rep, const Bindings& b, const std::vector<Vec>& xs);

enum class Format { Text, Latex, Json };
Format parse_format(const std::string& s);
std::string render(const Expansion& e, Format f);
std::string render_beta(const Beta& b, Format f);
Expansion parse_expansion_json(const std::string& doc);

}  // namespace ahs
