#pragma once

#include "contextus/hilbert.hpp"

#include <map>
#include <string>
#include <vector>

namespace contextus::presheaf {

// Finite poset with named elements and an explicit order relation.
struct FinitePoset {
    std::vector<std::string> elements;
    std::vector<std::vector<bool>> leq; // leq[i][j] iff element i <= element j

    std::size_t size() const { return elements.size(); }
    // Throws unless the relation is reflexive, antisymmetric and transitive.
    void validate() const;
    std::vector<std::size_t> maximal_elements() const;
    std::vector<std::pair<std::size_t, std::size_t>> hasse_edges() const; // (lower, upper)
    std::string to_dot() const;
};

// Contravariant set-valued assignment with precomputed restriction maps.
struct FinitePresheaf {
    FinitePoset poset;
    std::vector<std::vector<std::string>> stalks; // section labels per element
    // For u < v: restriction stalk(v) -> stalk(u) as index maps.
    std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> restrictions;

    const std::vector<std::size_t>& restriction(std::size_t upper, std::size_t lower) const;
    // Identity and composition laws, checked on every composable pair.
    void check_functoriality() const;
};

struct GlobalSectionSearch {
    // Each family assigns a section index to every poset element.
    std::vector<std::vector<std::size_t>> families;
    std::size_t nodes_explored = 0;
    std::string search_tree_dot;
};

// Exhaustive backtracking over the stalks, maximal elements first.
GlobalSectionSearch global_sections(const FinitePresheaf& p);

// Poset generated by maximal contexts and their pairwise intersections
// (intersections taken as commuting subgroups, phases ignored). Returns the
// poset together with one observable set per element, aligned by index.
std::pair<FinitePoset, std::vector<hilbert::ContextSpec>> context_poset(
    const std::vector<hilbert::ContextSpec>& maximal);

// Spectral presheaf: the stalk at V is the set of joint-eigenvalue
// characters of V's observables; the restriction to U <= V evaluates each
// observable of U as a signed product of V's observables.
FinitePresheaf spectral_presheaf(const std::vector<hilbert::ContextSpec>& elements,
                                 const FinitePoset& poset);

// Same stalks filtered to the characters with positive Born weight on the
// state (the state-dependent subpresheaf).
FinitePresheaf state_supported_presheaf(const std::vector<hilbert::ContextSpec>& elements,
                                        const FinitePoset& poset,
                                        const hilbert::ScaledVector& state);

// --- coordinate rings and their prime spectra --------------------------------

// Sign-coordinate ring: variables valued in {+1,-1} subject to monomial
// relations prod(vars) = sign.
struct CoordinateRing {
    std::string name;
    std::vector<std::string> variables;
    struct Relation {
        std::vector<std::string> monomial;
        int sign = 1; // +1 or -1
    };
    std::vector<Relation> relations;
};

// Maximal ideal presented by its residue evaluations.
struct PSpecPoint {
    std::map<std::string, int> assignment;
};

// All closed points: +-1 assignments satisfying every relation. Guarded at
// 20 variables.
std::vector<PSpecPoint> pspec_points(const CoordinateRing& ring);

// Compatible families of closed points over a poset of rings ordered by
// variable inclusion. Returns one merged assignment per family.
std::vector<std::map<std::string, int>> pspec_functor_points(
    const std::vector<CoordinateRing>& rings, const FinitePoset& poset);

// The four GHZ coordinate rings (s1s2s3 = +1; the three mixed rings = -1)
// over their inclusion poset with single-variable rings as intersections.
std::pair<FinitePoset, std::vector<CoordinateRing>> ghz_coordinate_rings();

} // namespace contextus::presheaf
