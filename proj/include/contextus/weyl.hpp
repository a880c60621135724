#pragma once

#include "contextus/rational.hpp"

#include <array>
#include <string>

namespace contextus::weyl {

// Normal-ordered word over the Weyl generators of three degrees of
// freedom: e^{i*pi*phase} * prod_i U_i^{uexp_i} V_i^{vexp_i}, with all
// U factors to the left of all V factors within each index. The gauge
// fixes p_i*q_i at an odd multiple of pi, so swapping a V past a U of
// the same index contributes a factor of -1; the phase exponent is kept
// as a rational mod 2 (only integers arise in this project's scope).
struct WeylWord {
    Rational phase; // in [0, 2)
    struct Factor {
        long long uexp = 0;
        long long vexp = 0;
        friend bool operator==(const Factor&, const Factor&) = default;
    };
    std::array<Factor, 3> dof;

    bool is_scalar() const;
    friend bool operator==(const WeylWord&, const WeylWord&) = default;
};

WeylWord weyl_identity();
// U_i^exp or V_i^exp (i is 1-based, 1..3).
WeylWord weyl_u(int i, long long exp);
WeylWord weyl_v(int i, long long exp);

// Normal-ordered product; the phase picks up vexp_a * uexp_b swaps per index.
WeylWord weyl_multiply(const WeylWord& a, const WeylWord& b);

// Product ignoring all commutation phases (values of a putative valuation
// multiply as plain scalars).
WeylWord weyl_multiply_abelian(const WeylWord& a, const WeylWord& b);

std::string print_word(const WeylWord& w);

// The four position-momentum valuation equations patterned on the
// three-qubit parity proof. Multiplying their right-hand sides as scalars
// gives +1; multiplying the left-hand sides as operators gives -1.
struct CliftonReport {
    int func_value = 0;     // +1
    int operator_value = 0; // -1
    std::array<WeylWord, 4> words;
    std::string notes;
};

CliftonReport clifton_contradiction();

} // namespace contextus::weyl
