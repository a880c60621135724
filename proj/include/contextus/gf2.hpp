#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <vector>

namespace contextus {

// Dense bit vector over machine words.
class BitVec {
public:
    BitVec() = default;
    explicit BitVec(std::size_t bits) : bits_(bits), words_((bits + 63) / 64, 0u) {}

    std::size_t size() const { return bits_; }
    bool get(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1u; }
    void set(std::size_t i, bool v) {
        std::uint64_t mask = std::uint64_t{1} << (i % 64);
        if (v) words_[i / 64] |= mask;
        else words_[i / 64] &= ~mask;
    }
    void flip(std::size_t i) { words_[i / 64] ^= std::uint64_t{1} << (i % 64); }

    BitVec& operator^=(const BitVec& o);
    bool any() const;
    // Index of lowest set bit, or npos.
    std::size_t first_set() const;
    std::size_t popcount() const;

    friend bool operator==(const BitVec& a, const BitVec& b) {
        return a.bits_ == b.bits_ && a.words_ == b.words_;
    }
    friend bool operator<(const BitVec& a, const BitVec& b);

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

private:
    std::size_t bits_ = 0;
    std::vector<std::uint64_t> words_;
};

// Linear system over GF(2): each row is (coefficients, rhs bit).
struct Gf2System {
    std::size_t vars = 0;
    std::vector<BitVec> rows;
    std::vector<bool> rhs;

    void add_row(const BitVec& coeffs, bool b);
    std::size_t row_count() const { return rows.size(); }
};

// Inconsistency certificate: a set of row indices whose coefficient
// rows XOR to zero while the rhs bits XOR to one.
struct Certificate {
    std::set<std::size_t> rows;
};

// Independent O(rows x vars) re-check of a certificate.
bool verify_certificate(const Gf2System& sys, const Certificate& cert);

// Affine description of the solution set of a consistent system.
struct Gf2Affine {
    std::size_t vars = 0;
    BitVec particular;
    std::vector<BitVec> basis; // nullspace basis; solutions = particular + span(basis)
    // Complete enumeration, present when vars <= 24.
    std::optional<std::vector<BitVec>> enumerated;

    std::size_t solution_count_log2() const { return basis.size(); }
};

struct Gf2Result {
    std::optional<Gf2Affine> solutions;    // set iff consistent
    std::optional<Certificate> certificate; // set iff inconsistent
    bool consistent() const { return solutions.has_value(); }
};

// Gaussian elimination with row-provenance tracking, so that an
// inconsistent system yields a checkable certificate.
Gf2Result gf2_solve(const Gf2System& sys);

// Rank of the coefficient matrix.
std::size_t gf2_rank(const Gf2System& sys);

} // namespace contextus
