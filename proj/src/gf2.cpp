#include "contextus/gf2.hpp"

#include "contextus/error.hpp"

#include <bit>

namespace contextus {

BitVec& BitVec::operator^=(const BitVec& o) {
    if (bits_ != o.bits_) throw MalformedSystemError("bit vector length mismatch");
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
    return *this;
}

bool BitVec::any() const {
    for (auto w : words_)
        if (w != 0) return true;
    return false;
}

std::size_t BitVec::first_set() const {
    for (std::size_t i = 0; i < words_.size(); ++i)
        if (words_[i] != 0) return i * 64 + static_cast<std::size_t>(std::countr_zero(words_[i]));
    return npos;
}

std::size_t BitVec::popcount() const {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
}

bool operator<(const BitVec& a, const BitVec& b) {
    if (a.bits_ != b.bits_) return a.bits_ < b.bits_;
    for (std::size_t i = a.words_.size(); i-- > 0;)
        if (a.words_[i] != b.words_[i]) return a.words_[i] < b.words_[i];
    return false;
}

void Gf2System::add_row(const BitVec& coeffs, bool b) {
    if (coeffs.size() != vars)
        throw MalformedSystemError("row width " + std::to_string(coeffs.size()) +
                                   " does not match variable count " + std::to_string(vars));
    rows.push_back(coeffs);
    rhs.push_back(b);
}

bool verify_certificate(const Gf2System& sys, const Certificate& cert) {
    BitVec acc(sys.vars);
    bool rhs = false;
    for (std::size_t r : cert.rows) {
        if (r >= sys.rows.size()) return false;
        acc ^= sys.rows[r];
        rhs = rhs != sys.rhs[r];
    }
    return !acc.any() && rhs;
}

namespace {

struct WorkRow {
    BitVec coeffs;
    bool rhs;
    BitVec provenance; // XOR-set of original rows that produced this one
};

} // namespace

Gf2Result gf2_solve(const Gf2System& sys) {
    for (const auto& row : sys.rows)
        if (row.size() != sys.vars) throw MalformedSystemError("ragged rows in GF(2) system");

    const std::size_t n = sys.vars;
    const std::size_t m = sys.rows.size();
    std::vector<WorkRow> work(m);
    for (std::size_t i = 0; i < m; ++i) {
        work[i].coeffs = sys.rows[i];
        work[i].rhs = sys.rhs[i];
        work[i].provenance = BitVec(m);
        work[i].provenance.set(i, true);
    }

    // Forward elimination to row echelon form.
    std::vector<std::size_t> pivot_col;
    std::vector<std::size_t> pivot_row;
    std::size_t next = 0;
    for (std::size_t col = 0; col < n && next < m; ++col) {
        std::size_t sel = m;
        for (std::size_t r = next; r < m; ++r)
            if (work[r].coeffs.get(col)) {
                sel = r;
                break;
            }
        if (sel == m) continue;
        std::swap(work[sel], work[next]);
        for (std::size_t r = 0; r < m; ++r) {
            if (r != next && work[r].coeffs.get(col)) {
                work[r].coeffs ^= work[next].coeffs;
                work[r].rhs = work[r].rhs != work[next].rhs;
                work[r].provenance ^= work[next].provenance;
            }
        }
        pivot_col.push_back(col);
        pivot_row.push_back(next);
        ++next;
    }

    // A zero row with rhs 1 certifies inconsistency.
    for (std::size_t r = 0; r < m; ++r) {
        if (!work[r].coeffs.any() && work[r].rhs) {
            Certificate cert;
            for (std::size_t i = 0; i < m; ++i)
                if (work[r].provenance.get(i)) cert.rows.insert(i);
            Gf2Result out;
            out.certificate = std::move(cert);
            return out;
        }
    }

    Gf2Affine aff;
    aff.vars = n;
    aff.particular = BitVec(n);
    for (std::size_t k = 0; k < pivot_col.size(); ++k)
        aff.particular.set(pivot_col[k], work[pivot_row[k]].rhs);

    std::vector<bool> is_pivot(n, false);
    for (auto c : pivot_col) is_pivot[c] = true;
    for (std::size_t col = 0; col < n; ++col) {
        if (is_pivot[col]) continue;
        BitVec v(n);
        v.set(col, true);
        for (std::size_t k = 0; k < pivot_col.size(); ++k)
            if (work[pivot_row[k]].coeffs.get(col)) v.set(pivot_col[k], true);
        aff.basis.push_back(std::move(v));
    }

    if (n <= 24) {
        std::vector<BitVec> all;
        const std::size_t free_dim = aff.basis.size();
        all.reserve(static_cast<std::size_t>(1) << free_dim);
        for (std::size_t mask = 0; mask < (static_cast<std::size_t>(1) << free_dim); ++mask) {
            BitVec s = aff.particular;
            for (std::size_t k = 0; k < free_dim; ++k)
                if ((mask >> k) & 1u) s ^= aff.basis[k];
            all.push_back(std::move(s));
        }
        aff.enumerated = std::move(all);
    }

    Gf2Result out;
    out.solutions = std::move(aff);
    return out;
}

std::size_t gf2_rank(const Gf2System& sys) {
    Gf2Result r = gf2_solve(sys);
    if (r.solutions) return sys.vars - r.solutions->basis.size();
    // Inconsistent: rank of the coefficient part alone.
    Gf2System homo = sys;
    std::fill(homo.rhs.begin(), homo.rhs.end(), false);
    Gf2Result h = gf2_solve(homo);
    return sys.vars - h.solutions->basis.size();
}

} // namespace contextus
