#include "contextus/pauli.hpp"

#include "contextus/error.hpp"

#include <bit>
#include <cctype>
#include <set>

namespace contextus::pauli {

namespace {

void check_arity(const PauliOp& p, const PauliOp& q) {
    if (p.n != q.n)
        throw ArityError("qubit count mismatch: " + std::to_string(p.n) + " vs " +
                         std::to_string(q.n));
}

std::uint64_t bit(std::size_t q) { return std::uint64_t{1} << q; }

} // namespace

PauliOp identity(std::size_t n) { return PauliOp{n, 0, 0, 0}; }

PauliOp x_at(std::size_t n, std::size_t q) { return PauliOp{n, bit(q), 0, 0}; }
PauliOp z_at(std::size_t n, std::size_t q) { return PauliOp{n, 0, bit(q), 0}; }
PauliOp y_at(std::size_t n, std::size_t q) { return PauliOp{n, bit(q), bit(q), 1}; }

char letter_at(const PauliOp& p, std::size_t q) {
    bool x = (p.xbits >> q) & 1u;
    bool z = (p.zbits >> q) & 1u;
    if (x && z) return 'Y';
    if (x) return 'X';
    if (z) return 'Z';
    return 'I';
}

int letter_phase(const PauliOp& p) {
    int y_count = static_cast<int>(std::popcount(p.xbits & p.zbits));
    return (p.phase + 3 * y_count) % 4;
}

bool is_involution(const PauliOp& p) {
    int sq_phase = (2 * p.phase + 2 * static_cast<int>(std::popcount(p.zbits & p.xbits))) % 4;
    return sq_phase == 0;
}

bool is_phase_free(const PauliOp& p) { return letter_phase(p) == 0; }

PauliOp multiply(const PauliOp& p, const PauliOp& q) {
    check_arity(p, q);
    PauliOp out;
    out.n = p.n;
    // Reordering Z factors of p past X factors of q gives one -1 per crossing.
    out.phase = (p.phase + q.phase + 2 * static_cast<int>(std::popcount(p.zbits & q.xbits))) % 4;
    out.xbits = p.xbits ^ q.xbits;
    out.zbits = p.zbits ^ q.zbits;
    return out;
}

PauliOp operator*(const PauliOp& p, const PauliOp& q) { return multiply(p, q); }

bool commutes(const PauliOp& p, const PauliOp& q) {
    check_arity(p, q);
    int s = static_cast<int>(std::popcount(p.xbits & q.zbits)) +
            static_cast<int>(std::popcount(p.zbits & q.xbits));
    return s % 2 == 0;
}

namespace {

PauliOp letter_op(std::size_t n, std::size_t q, char letter, std::size_t offset) {
    switch (letter) {
        case 'I': return identity(n);
        case 'X': return x_at(n, q);
        case 'Y': return y_at(n, q);
        case 'Z': return z_at(n, q);
        default: throw ParseError(std::string("unknown letter '") + letter + "'", offset);
    }
}

} // namespace

PauliOp parse_pauli(std::string_view text) {
    if (text.empty()) throw ParseError("empty Pauli string", 0);
    std::size_t pos = 0;
    int prefix_phase = 0;
    if (text[pos] == '+' || text[pos] == '-') {
        if (text[pos] == '-') prefix_phase += 2;
        ++pos;
    }
    if (pos < text.size() && text[pos] == 'i' &&
        !(pos + 1 < text.size() && std::isdigit(static_cast<unsigned char>(text[pos + 1])))) {
        // 'i' followed by a digit would be an indexed identity atom, not a phase.
        prefix_phase += 1;
        ++pos;
    }
    if (pos == text.size()) throw ParseError("Pauli string has no letters", pos);

    std::string_view body = text.substr(pos);
    bool indexed = body.find_first_of("0123456789") != std::string_view::npos;

    PauliOp out;
    if (!indexed) {
        if (body.size() > 64) throw SizeGuardError("more than 64 qubits");
        out = identity(body.size());
        for (std::size_t q = 0; q < body.size(); ++q) {
            char c = static_cast<char>(std::toupper(static_cast<unsigned char>(body[q])));
            out = multiply(out, letter_op(out.n, q, c, pos + q));
        }
    } else {
        struct Atom {
            char letter;
            std::size_t index; // 1-based
            std::size_t offset;
        };
        std::vector<Atom> atoms;
        std::size_t i = 0;
        while (i < body.size()) {
            if (body[i] == '*') {
                ++i;
                continue;
            }
            char c = static_cast<char>(std::toupper(static_cast<unsigned char>(body[i])));
            if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z')
                throw ParseError(std::string("unknown letter '") + body[i] + "'", pos + i);
            std::size_t j = i + 1;
            if (j >= body.size() || !std::isdigit(static_cast<unsigned char>(body[j])))
                throw ParseError("expected qubit index after letter", pos + j);
            std::size_t idx = 0;
            while (j < body.size() && std::isdigit(static_cast<unsigned char>(body[j]))) {
                idx = idx * 10 + static_cast<std::size_t>(body[j] - '0');
                ++j;
            }
            if (idx == 0) throw ParseError("qubit indices are 1-based", pos + i + 1);
            atoms.push_back({c, idx, pos + i});
            i = j;
        }
        if (atoms.empty()) throw ParseError("Pauli string has no letters", pos);
        std::size_t n = 0;
        for (const auto& a : atoms) n = std::max(n, a.index);
        if (n > 64) throw SizeGuardError("qubit index exceeds 64");
        out = identity(n);
        for (const auto& a : atoms) out = multiply(out, letter_op(n, a.index - 1, a.letter, a.offset));
    }
    out.phase = (out.phase + prefix_phase) % 4;
    return out;
}

std::string print_pauli(const PauliOp& p) {
    static const char* prefix[4] = {"", "i", "-", "-i"};
    std::string out = prefix[letter_phase(p)];
    for (std::size_t q = 0; q < p.n; ++q) out += letter_at(p, q);
    return out;
}

std::string indexed_name(const PauliOp& p) {
    static const char* prefix[4] = {"", "i", "-", "-i"};
    std::string out = prefix[letter_phase(p)];
    bool any = false;
    for (std::size_t q = 0; q < p.n; ++q) {
        char c = letter_at(p, q);
        if (c == 'I') continue;
        out += c;
        out += std::to_string(q + 1);
        any = true;
    }
    if (!any) out += 'I';
    return out;
}

AvnTriple::AvnTriple(PauliOp e, PauliOp f, PauliOp g)
    : e_(std::move(e)), f_(std::move(f)), g_(std::move(g)) {
    if (e_.n != f_.n || f_.n != g_.n)
        throw PreconditionError("invalid triple: operators act on different qubit counts");
    if (!is_phase_free(e_) || !is_phase_free(f_) || !is_phase_free(g_))
        throw PreconditionError("invalid triple: global phases must be +1");
    if (!commutes(e_, f_) || !commutes(f_, g_) || !commutes(e_, g_))
        throw PreconditionError("invalid triple: operators must pairwise commute");
}

AvnVerdict is_avn_triple(const AvnTriple& t) {
    AvnVerdict v;
    std::size_t odd = 0;
    for (std::size_t q = 0; q < t.e().n; ++q) {
        char e = letter_at(t.e(), q);
        char f = letter_at(t.f(), q);
        char g = letter_at(t.g(), q);
        if (e != f && f != g && e != g) {
            v.reason = "condition (1) fails at position " + std::to_string(q + 1) +
                       ": all three letters differ";
            return v;
        }
        if (e == g && e != f && e != 'I' && f != 'I') ++odd;
    }
    v.odd_positions = odd;
    if (odd % 2 == 0) {
        v.reason = "condition (2) fails: " + std::to_string(odd) +
                   " positions with equal outer letters differing from the middle one";
        return v;
    }
    v.is_avn = true;
    v.reason = "conditions (1) and (2) hold with " + std::to_string(odd) + " odd-parity positions";
    return v;
}

std::vector<PauliOp> subgroup_generate(const std::vector<PauliOp>& gens) {
    if (gens.empty()) throw PreconditionError("subgroup generation needs at least one generator");
    const std::size_t n = gens[0].n;
    for (const auto& g : gens) check_arity(gens[0], g);
    const std::size_t guard =
        n >= 16 ? static_cast<std::size_t>(-1) : (std::size_t{4} << (2 * n));

    std::set<PauliOp> seen;
    std::vector<PauliOp> frontier{identity(n)};
    seen.insert(identity(n));
    while (!frontier.empty()) {
        std::vector<PauliOp> next;
        for (const auto& p : frontier) {
            for (const auto& g : gens) {
                PauliOp q = multiply(p, g);
                if (seen.insert(q).second) {
                    next.push_back(q);
                    if (seen.size() > guard)
                        throw SizeGuardError("generated subgroup exceeds 4*4^n elements");
                }
            }
        }
        frontier = std::move(next);
    }
    return {seen.begin(), seen.end()};
}

} // namespace contextus::pauli
