#pragma once

#include "contextus/gf2.hpp"
#include "contextus/hilbert.hpp"
#include "contextus/pauli.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace contextus::parity {

// GF(2) encoding of valuation constraints: each named observable carries a
// value in {+1,-1} with -1 mapped to bit 1, and every multiplicative
// equation inside a context becomes an XOR row.
struct ValuationSystem {
    std::vector<std::string> variables;
    Gf2System system;
    std::vector<std::string> provenance; // per row: context or subgroup element

    std::size_t variable_index(const std::string& name); // appends when new
    void add_equation(const std::vector<std::string>& names, bool negative_rhs,
                      std::string provenance_tag);
    // "nu(A).nu(B)... = +-1" for one row.
    std::string equation_text(std::size_t row) const;
};

struct ValuationReport {
    bool consistent = false;
    // All global valuations as sign maps, when the solver enumerated them.
    std::vector<std::map<std::string, int>> valuations;
    std::size_t free_dimension = 0; // solution count = 2^free_dimension
    std::optional<Certificate> certificate;
    std::string derivation; // multiplicative replay ending in "1 = -1"
};

ValuationReport decide(const ValuationSystem& sys);

// Re-derives the contradiction from the original equations: over the
// certificate rows every valuation factor must appear an even number of
// times while the right-hand sides multiply to -1.
bool replay_certificate(const ValuationSystem& sys, const Certificate& cert);
std::string render_derivation(const ValuationSystem& sys, const Certificate& cert);

// The ten-observable, five-context system. Rows one to four relate each
// three-fold product to its factors; the fifth row's sign is computed from
// the Pauli phase of the product of the four compound observables, never
// hard-coded.
ValuationSystem mermin_system();

// One row per context: the factors' values must multiply to the exact
// eigenvalue of the context product on the given state. Throws
// PreconditionError naming the context when the state is not an eigenvector.
ValuationSystem state_dependent_system(const hilbert::ScaledVector& state,
                                       const std::vector<hilbert::ContextSpec>& contexts);

// One row per subgroup element: the single-qubit letters of the element
// must multiply to the element's global sign. The input must be closed
// under multiplication and consist of involutions times +-1.
ValuationSystem avn_system(const std::vector<pauli::PauliOp>& subgroup);

// Like avn_system, but the right-hand sides come from the exact eigenvalues
// of the letter products on the given state (deduplicated by letter pattern).
ValuationSystem avn_state_system(const std::vector<pauli::PauliOp>& subgroup,
                                 const hilbert::ScaledVector& state);

// The four GHZ contexts used by the built-in state-dependent demonstration:
// {X1,X2,X3}, {X1,Y2,Y3}, {Y1,X2,Y3}, {Y1,Y2,X3}.
std::vector<hilbert::ContextSpec> ghz_contexts();

// The five pentagram contexts over three qubits: {X1,X2,X3}, {X1,Z2,Z3},
// {Z1,X2,Z3}, {Z1,Z2,X3} and the compound context
// {X1X2X3, X1Z2Z3, Z1X2Z3, Z1Z2X3}.
std::vector<hilbert::ContextSpec> pentagram_contexts();

// The ten observables of the pentagram (six single-qubit letters plus the
// four compound products).
std::vector<pauli::PauliOp> pentagram_observables();

} // namespace contextus::parity
