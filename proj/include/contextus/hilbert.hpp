#pragma once

#include "contextus/pauli.hpp"
#include "contextus/rational.hpp"
#include "contextus/scenario.hpp"

#include <optional>
#include <string>
#include <vector>

namespace contextus::hilbert {

// Dense square matrix over Q(i).
class ExactMatrix {
public:
    explicit ExactMatrix(std::size_t dim)
        : dim_(dim), entries_(dim * dim, GaussianRational()) {}
    static ExactMatrix identity(std::size_t dim);
    static ExactMatrix kron(const ExactMatrix& a, const ExactMatrix& b);

    std::size_t dim() const { return dim_; }
    const GaussianRational& at(std::size_t r, std::size_t c) const { return entries_[r * dim_ + c]; }
    GaussianRational& at(std::size_t r, std::size_t c) { return entries_[r * dim_ + c]; }

    ExactMatrix dagger() const;
    ExactMatrix scaled(const GaussianRational& s) const;
    bool is_zero() const;
    GaussianRational trace() const;

    friend ExactMatrix operator+(const ExactMatrix& a, const ExactMatrix& b);
    friend ExactMatrix operator-(const ExactMatrix& a, const ExactMatrix& b);
    friend ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b);
    friend bool operator==(const ExactMatrix& a, const ExactMatrix& b) = default;

    std::vector<GaussianRational> apply(const std::vector<GaussianRational>& v) const;

private:
    std::size_t dim_;
    std::vector<GaussianRational> entries_;
};

// Ray in C^(2^n), stored as exact coordinates divided by sqrt(scale2).
// Keeping the scale squared keeps every entry inside Q(i).
struct ScaledVector {
    std::vector<GaussianRational> coords;
    Rational scale2 = Rational(1);
};

// Multiply coordinates through by denominators, divide by the common
// integer content and rotate by a Gaussian unit so the first nonzero
// coordinate has re > 0, im >= 0. scale2 becomes the squared norm.
ScaledVector canonical_ray(const ScaledVector& v);
// Projective equality (up to an overall nonzero scalar).
bool same_ray(const ScaledVector& a, const ScaledVector& b);
Rational coords_norm2(const std::vector<GaussianRational>& coords);

ScaledVector ghz_state(std::size_t n);
ScaledVector basis_state(std::size_t n, std::size_t index);

// A set of pairwise-commuting involutions measured together.
class ContextSpec {
public:
    explicit ContextSpec(std::vector<pauli::PauliOp> observables);
    const std::vector<pauli::PauliOp>& observables() const { return observables_; }
    std::size_t size() const { return observables_.size(); }
    std::size_t qubits() const { return observables_.empty() ? 0 : observables_[0].n; }

private:
    std::vector<pauli::PauliOp> observables_;
};

// Kronecker product of single-qubit factors times i^phase. Guarded at 12 qubits.
ExactMatrix to_matrix(const pauli::PauliOp& p);

struct EigenRay {
    ScaledVector ray;
    std::vector<int> eigenvalues; // +1/-1 per context observable, in order
    bool degenerate = false;      // joint eigenspace had dimension > 1
};

// Simultaneous eigenrays of the context, one orthogonal basis vector per
// ray, labelled by the joint eigenvalue pattern. Degenerate eigenspaces
// contribute a flagged orthogonal basis instead of an error.
std::vector<EigenRay> joint_eigenbasis(const ContextSpec& ctx);

// <state| prod (1 + s_i A_i)/2 |state> normalised by <state|state>.
Rational born_probability(const ScaledVector& state, const ContextSpec& ctx,
                          const std::vector<int>& outcome);

// Exact probability tables for every context, observables named by their
// canonical print form.
scenario::EmpiricalModel empirical_model_from_state(const ScaledVector& state,
                                                    const std::vector<ContextSpec>& cover);

// +1 or -1 when the state is an exact eigenvector, nullopt otherwise.
std::optional<int> exact_eigenvalue(const pauli::PauliOp& op, const ScaledVector& state);

// Complex dimension of the algebra spanned by the multiplicative closure
// of the generators; computed symplectically (phases ignored). n <= 6.
std::size_t generated_algebra_dimension(const std::vector<pauli::PauliOp>& gens);

} // namespace contextus::hilbert
