#pragma once

#include "ahs/representation.hpp"
#include "ahs/term_engine.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ahs {

struct JetModule {
    Representation base;
    int order = 0;
    std::size_t carrier_dim = 0;
    std::vector<std::size_t> offsets;  // start of the (x)^i component, i = 0..order
    std::vector<Matrix> g0_action;     // per g_0 basis element
    std::vector<Matrix> g1_action;     // per g_1 basis element
    Matrix projection;                 // onto the order-1 carrier (drops the top component)

    // action of a b-element (grades 0 and 1 only)
    Matrix action(const Element& z) const;
    std::size_t component_dim(int i) const { return offsets[i + 1] - offsets[i]; }
};

JetModule build_jet_module(const Representation& rep, int k);

// first jet prolongation of an arbitrary b-module given by its action matrices
struct BModule {
    AlgebraPtr algebra;
    std::size_t dim = 0;
    std::vector<Matrix> g0, g1;
};
BModule first_jet(const BModule& w);

// top component of the g_1 action built from Killing-dual bases
Matrix g1_top_action(const Representation& rep, int k, const Element& z);

struct ObstructionWitness {
    std::size_t z_index = 0;    // g_1 basis element
    std::size_t psi_index = 0;  // (x)^{k-1} basis element
    std::size_t row = 0;        // output coordinate
    Rational value;
};

struct ObstructionMap {
    std::vector<Matrix> blocks;  // Phi . T_Z for each g_1 basis element Z
    bool is_zero() const;
    std::optional<ObstructionWitness> witness() const;
};

// throws EquivarianceError when Phi does not commute with the g_0 action
void check_equivariant(const Representation& rep, int k, const Matrix& phi);
// the insertion map T_Z : psi -> sum_i lambda^(i-1)([Z,X_i]) psi(..X_i omitted..)
Matrix insertion_map(const Representation& rep, int k, const Element& z);
ObstructionMap obstruction_map(const Representation& rep, int k, const Matrix& phi);

struct WeightSet {
    bool all = false;
    std::vector<Rational> values;
};
// weights w for which shifted(base, w - base.weight) passes the obstruction test
WeightSet solve_weights(const Representation& base, int k, ProjectorKind kind);
std::string weight_set_string(const WeightSet& w, bool fractions = false);

struct Verdict {
    bool invariant = false;
    std::string rep_label;
    Rational weight;
    int order = 0;
    ProjectorKind projector = ProjectorKind::Sym0;
    std::optional<ObstructionWitness> witness;
    std::string formula_latex;
    std::string formula_text;
    std::optional<std::string> formula_rho_latex;
    std::optional<std::string> formula_rho_text;
    std::optional<Rational> zero_order_coefficient;  // after the rho substitution, trace case
    bool formula_reduced = false;                     // false: raw term sum fallback
};

Verdict verify_operator(const Representation& rep, int k, ProjectorKind kind);
std::string verdict_json(const Verdict& v);

}  // namespace ahs
