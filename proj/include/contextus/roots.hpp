#pragma once

#include "contextus/hilbert.hpp"
#include "contextus/rational.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace contextus::roots {

// Vector in Q^8; roots in this module always have squared norm 2.
struct RootVector {
    std::array<Rational, 8> coords;

    friend bool operator==(const RootVector& a, const RootVector& b);
    friend bool operator<(const RootVector& a, const RootVector& b); // lexicographic
    RootVector operator-() const;
};

Rational inner(const RootVector& a, const RootVector& b);
Rational norm2(const RootVector& a);
std::string root_line(const RootVector& a); // 8 space-separated rationals

// s_alpha(beta) = beta - 2 (alpha,beta)/(alpha,alpha) alpha.
RootVector reflect(const RootVector& alpha, const RootVector& beta);

// Flip sign so the first nonzero coordinate is positive (ray identity).
RootVector sign_canonical(const RootVector& v);

struct RootSystem {
    std::vector<RootVector> roots; // sorted, closed under negation
    bool contains(const RootVector& v) const;
};

// Joint eigenrays of the given three-qubit contexts, rescaled to squared
// norm 2, sign-canonicalised and deduplicated. Rays with complex entries or
// with no rational norm-2 rescaling are rejected.
std::vector<RootVector> rays_from_contexts(const std::vector<hilbert::ContextSpec>& contexts);

// Fixed point of adding s_alpha(beta) over all pairs; guarded at 100000
// vectors by default (exceeding the guard signals a non-crystallographic
// seed or wrong normalisation).
RootSystem reflection_closure(const std::vector<RootVector>& seed, std::size_t guard = 100000);

// Both root-system axioms checked exhaustively: scalar multiples only +-1,
// closure under all mutual reflections.
bool verify_root_system_axioms(const RootSystem& system);

struct CoxeterGraph {
    std::vector<RootVector> simple_roots;
    // m_ij for i < j; 2 when orthogonal, 3 when the inner product is -1.
    std::map<std::pair<std::size_t, std::size_t>, int> labels;
    std::string classification; // "E8", "A2", "A1 x A1", ...
    long long functional_parameter = 0;
};

// Simple roots from a generic linear functional (coordinates 1, t, t^2, ...),
// labels from exact inner products, classification by component shape.
CoxeterGraph coxeter_graph(const RootSystem& system);
// Same with an explicit functional parameter (no retry), for invariance checks.
CoxeterGraph coxeter_graph_with_parameter(const RootSystem& system, long long t);

// All complete orthogonal 8-element subsets among the rays (maximal cliques
// of the exact-orthogonality graph). Guarded at 64 rays.
std::vector<std::vector<std::size_t>> orthogonal_bases(const std::vector<RootVector>& rays);

struct ColouringResult {
    bool feasible = false;
    std::optional<std::vector<int>> witness; // 0/1 per ray (rays outside all bases get 0)
    std::size_t solution_count = 0;          // complete enumeration
    std::size_t nodes_explored = 0;
};

// Exhaustive backtracking search for an assignment with exactly one
// green ray per basis, constant per ray across bases.
ColouringResult colouring_search(const std::vector<RootVector>& rays,
                                 const std::vector<std::vector<std::size_t>>& bases);

// One root per line, sorted canonically.
std::string export_roots(const RootSystem& system);

} // namespace contextus::roots
