#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace contextus::pauli {

// n-qubit Pauli group element in symplectic form: i^phase * prod_j X_j^{x_j} Z_j^{z_j},
// with X written before Z on every qubit. Y is stored as iXZ.
struct PauliOp {
    std::size_t n = 1;
    std::uint64_t xbits = 0;
    std::uint64_t zbits = 0;
    int phase = 0; // exponent of i, mod 4

    friend bool operator==(const PauliOp& a, const PauliOp& b) = default;
    friend auto operator<=>(const PauliOp& a, const PauliOp& b) = default;
};

// Identity on n qubits.
PauliOp identity(std::size_t n);
// Single X_q / Z_q / Y_q embedded into n qubits (q is 0-based).
PauliOp x_at(std::size_t n, std::size_t q);
PauliOp z_at(std::size_t n, std::size_t q);
PauliOp y_at(std::size_t n, std::size_t q);

// Single-qubit letter at position q, as a character in {I,X,Y,Z}
// (phase ignored; the letter is the (x,z) bit pair).
char letter_at(const PauliOp& p, std::size_t q);

// Sign of the operator when written as a global phase times a tensor
// product of letters: +1, -1 (or +/-i for non-Hermitian words, reported
// as phase exponent 0..3).
int letter_phase(const PauliOp& p);
bool is_involution(const PauliOp& p); // squares to +1
bool is_phase_free(const PauliOp& p); // letter_phase == 0, i.e. global phase +1

// Grammar: optional prefix in {+, -, i, -i, +i}, then either compact
// letters over {I,X,Y,Z} ("XZZ") or indexed atoms ("X1*Z2*Z3", separators
// optional). Indexed form infers n from the largest index.
PauliOp parse_pauli(std::string_view text);

// Canonical print form: phase prefix ("", "i", "-", "-i") followed by
// compact letters. print(parse(s)) is idempotent on canonical strings.
std::string print_pauli(const PauliOp& p);

// Indexed print form ("X1X2X3", "Z2Z3", "-Y1X2Y3"; identity prints "I").
// Round-trips through parse_pauli for operators of the same qubit count.
std::string indexed_name(const PauliOp& p);

PauliOp multiply(const PauliOp& p, const PauliOp& q);
PauliOp operator*(const PauliOp& p, const PauliOp& q);

// True iff the symplectic form (p.x . q.z + p.z . q.x) vanishes mod 2.
bool commutes(const PauliOp& p, const PauliOp& q);

// Three pairwise-commuting, phase-free Pauli operators.
class AvnTriple {
public:
    // Throws PreconditionError unless all invariants hold.
    AvnTriple(PauliOp e, PauliOp f, PauliOp g);
    const PauliOp& e() const { return e_; }
    const PauliOp& f() const { return f_; }
    const PauliOp& g() const { return g_; }

private:
    PauliOp e_, f_, g_;
};

struct AvnVerdict {
    bool is_avn = false;
    std::string reason;
    // Positions where the outer letters agree, differ from the middle one,
    // and none of the three is the identity; parity decides the verdict.
    std::size_t odd_positions = 0;
};

// Letterwise test: (1) at every position at least two of e_i, f_i, g_i are
// equal; (2) the number of positions with e_i = g_i != f_i, all three
// different from the identity, is odd.
AvnVerdict is_avn_triple(const AvnTriple& t);

// Multiplicative closure of the generators, deduplicated by canonical
// form, identity included. Guarded at 4 * 4^n elements.
std::vector<PauliOp> subgroup_generate(const std::vector<PauliOp>& gens);

} // namespace contextus::pauli
