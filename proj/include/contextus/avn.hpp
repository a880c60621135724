#pragma once

#include "contextus/hilbert.hpp"
#include "contextus/parity.hpp"
#include "contextus/pauli.hpp"
#include "contextus/scenario.hpp"

namespace contextus::scenario {

struct AvnReport {
    pauli::AvnVerdict triple;
    std::size_t subgroup_order = 0;
    std::vector<int> generator_eigenvalues; // exact eigenvalue of the state per generator
    parity::ValuationReport parity_report;
    EmpiricalModel model;
    ContextualityClass classification;
    bool strongly_contextual = false;
};

// End-to-end check for a triple of generators and a stabilised state:
// builds the subgroup, the parity system whose right-hand sides are the
// exact eigenvalues on the state, and the empirical model over the maximal
// single-qubit contexts induced by the subgroup's letter patterns, then
// classifies the model. The state must be an exact +-1 eigenvector of every
// generator; the induced system uses the actual eigenvalues, so both
// stabilised (+1) and signed eigenstates are admitted.
AvnReport avn_check(const std::vector<pauli::PauliOp>& gens, const hilbert::ScaledVector& state);

// Contexts induced by the subgroup's non-identity letter patterns: one
// context per pattern, holding the single-qubit observables at its
// non-identity positions.
std::vector<hilbert::ContextSpec> induced_contexts(const std::vector<pauli::PauliOp>& subgroup);

} // namespace contextus::scenario
