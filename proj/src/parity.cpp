#include "contextus/parity.hpp"

#include "contextus/error.hpp"

#include <algorithm>
#include <set>

namespace contextus::parity {

using pauli::PauliOp;

std::size_t ValuationSystem::variable_index(const std::string& name) {
    for (std::size_t i = 0; i < variables.size(); ++i)
        if (variables[i] == name) return i;
    variables.push_back(name);
    // Widen existing rows.
    Gf2System wider;
    wider.vars = variables.size();
    for (std::size_t r = 0; r < system.rows.size(); ++r) {
        BitVec row(wider.vars);
        for (std::size_t j = 0; j + 1 < wider.vars; ++j) row.set(j, system.rows[r].get(j));
        wider.add_row(row, system.rhs[r]);
    }
    system = std::move(wider);
    return variables.size() - 1;
}

void ValuationSystem::add_equation(const std::vector<std::string>& names, bool negative_rhs,
                                   std::string provenance_tag) {
    std::vector<std::size_t> idx;
    for (const auto& n : names) idx.push_back(variable_index(n));
    BitVec row(variables.size());
    for (std::size_t i : idx) row.flip(i); // repeated factors cancel mod 2
    system.vars = variables.size();
    system.add_row(row, negative_rhs);
    provenance.push_back(std::move(provenance_tag));
}

std::string ValuationSystem::equation_text(std::size_t row) const {
    std::string out;
    for (std::size_t j = 0; j < variables.size(); ++j) {
        if (!system.rows[row].get(j)) continue;
        if (!out.empty()) out += ".";
        out += "nu(" + variables[j] + ")";
    }
    if (out.empty()) out = "1";
    out += system.rhs[row] ? " = -1" : " = +1";
    return out;
}

ValuationReport decide(const ValuationSystem& sys) {
    ValuationReport rep;
    Gf2Result res = gf2_solve(sys.system);
    if (res.consistent()) {
        rep.consistent = true;
        rep.free_dimension = res.solutions->basis.size();
        if (res.solutions->enumerated) {
            for (const auto& bits : *res.solutions->enumerated) {
                std::map<std::string, int> val;
                for (std::size_t j = 0; j < sys.variables.size(); ++j)
                    val[sys.variables[j]] = bits.get(j) ? -1 : 1;
                rep.valuations.push_back(std::move(val));
            }
        }
        return rep;
    }
    rep.consistent = false;
    rep.certificate = res.certificate;
    if (!replay_certificate(sys, *rep.certificate))
        throw Error("internal: certificate fails the multiplicative replay");
    rep.derivation = render_derivation(sys, *rep.certificate);
    return rep;
}

bool replay_certificate(const ValuationSystem& sys, const Certificate& cert) {
    // Count occurrences of every factor across the cited equations and
    // multiply the right-hand sides.
    std::vector<std::size_t> occurrences(sys.variables.size(), 0);
    int rhs = 1;
    for (std::size_t r : cert.rows) {
        if (r >= sys.system.rows.size()) return false;
        for (std::size_t j = 0; j < sys.variables.size(); ++j)
            if (sys.system.rows[r].get(j)) ++occurrences[j];
        if (sys.system.rhs[r]) rhs = -rhs;
    }
    for (std::size_t c : occurrences)
        if (c % 2 != 0) return false;
    return rhs == -1;
}

std::string render_derivation(const ValuationSystem& sys, const Certificate& cert) {
    std::string out = "Multiply the following equations:\n";
    for (std::size_t r : cert.rows)
        out += "  [" + sys.provenance[r] + "] " + sys.equation_text(r) + "\n";
    out +=
        "Every valuation factor on the left appears an even number of times,\n"
        "so the product of the left-hand sides is +1. The right-hand sides\n"
        "multiply to -1.\n";
    out += "1 = -1";
    return out;
}

namespace {

// rhs bit for "product of ops equals the stored target": 1 iff the exact
// Pauli product carries global sign -1 relative to the target.
bool product_sign_bit(const std::vector<PauliOp>& ops, const PauliOp& target) {
    PauliOp prod = pauli::identity(target.n);
    for (const auto& op : ops) prod = pauli::multiply(prod, op);
    if (prod.xbits != target.xbits || prod.zbits != target.zbits)
        throw PreconditionError("operator product does not match the compound observable");
    int diff = (pauli::letter_phase(prod) - pauli::letter_phase(target) + 4) % 4;
    if (diff % 2 != 0) throw PreconditionError("operator product differs by a factor of i");
    return diff == 2;
}

} // namespace

std::vector<pauli::PauliOp> pentagram_observables() {
    std::vector<PauliOp> singles;
    for (std::size_t q = 0; q < 3; ++q) singles.push_back(pauli::x_at(3, q));
    for (std::size_t q = 0; q < 3; ++q) singles.push_back(pauli::z_at(3, q));
    auto xxx = pauli::parse_pauli("XXX");
    auto xzz = pauli::parse_pauli("XZZ");
    auto zxz = pauli::parse_pauli("ZXZ");
    auto zzx = pauli::parse_pauli("ZZX");
    std::vector<PauliOp> out{xxx, xzz, zxz, zzx};
    out.insert(out.end(), singles.begin(), singles.end());
    return out;
}

std::vector<hilbert::ContextSpec> pentagram_contexts() {
    using hilbert::ContextSpec;
    auto X = [](std::size_t q) { return pauli::x_at(3, q); };
    auto Z = [](std::size_t q) { return pauli::z_at(3, q); };
    std::vector<ContextSpec> out;
    out.emplace_back(std::vector<PauliOp>{X(0), X(1), X(2)});
    out.emplace_back(std::vector<PauliOp>{X(0), Z(1), Z(2)});
    out.emplace_back(std::vector<PauliOp>{Z(0), X(1), Z(2)});
    out.emplace_back(std::vector<PauliOp>{Z(0), Z(1), X(2)});
    out.emplace_back(std::vector<PauliOp>{pauli::parse_pauli("XXX"), pauli::parse_pauli("XZZ"),
                                          pauli::parse_pauli("ZXZ"), pauli::parse_pauli("ZZX")});
    return out;
}

std::vector<hilbert::ContextSpec> ghz_contexts() {
    using hilbert::ContextSpec;
    auto X = [](std::size_t q) { return pauli::x_at(3, q); };
    auto Y = [](std::size_t q) { return pauli::y_at(3, q); };
    std::vector<ContextSpec> out;
    out.emplace_back(std::vector<PauliOp>{X(0), X(1), X(2)});
    out.emplace_back(std::vector<PauliOp>{X(0), Y(1), Y(2)});
    out.emplace_back(std::vector<PauliOp>{Y(0), X(1), Y(2)});
    out.emplace_back(std::vector<PauliOp>{Y(0), Y(1), X(2)});
    return out;
}

ValuationSystem mermin_system() {
    ValuationSystem sys;
    auto X = [](std::size_t q) { return pauli::x_at(3, q); };
    auto Z = [](std::size_t q) { return pauli::z_at(3, q); };

    struct Row {
        PauliOp compound;
        std::vector<PauliOp> factors;
    };
    std::vector<Row> rows = {
        {pauli::parse_pauli("XXX"), {X(0), X(1), X(2)}},
        {pauli::parse_pauli("XZZ"), {X(0), Z(1), Z(2)}},
        {pauli::parse_pauli("ZXZ"), {Z(0), X(1), Z(2)}},
        {pauli::parse_pauli("ZZX"), {Z(0), Z(1), X(2)}},
    };
    for (std::size_t i = 0; i < rows.size(); ++i) {
        std::vector<std::string> names{pauli::indexed_name(rows[i].compound)};
        for (const auto& f : rows[i].factors) names.push_back(pauli::indexed_name(f));
        sys.add_equation(names, product_sign_bit(rows[i].factors, rows[i].compound),
                         "C" + std::to_string(i + 1));
    }
    // Fifth context: the four compound observables multiply to a scalar.
    std::vector<PauliOp> compounds{rows[0].compound, rows[1].compound, rows[2].compound,
                                   rows[3].compound};
    std::vector<std::string> names;
    for (const auto& c : compounds) names.push_back(pauli::indexed_name(c));
    sys.add_equation(names, product_sign_bit(compounds, pauli::identity(3)), "C5");
    return sys;
}

ValuationSystem state_dependent_system(const hilbert::ScaledVector& state,
                                       const std::vector<hilbert::ContextSpec>& contexts) {
    ValuationSystem sys;
    for (std::size_t c = 0; c < contexts.size(); ++c) {
        const auto& obs = contexts[c].observables();
        PauliOp prod = pauli::identity(obs[0].n);
        for (const auto& op : obs) prod = pauli::multiply(prod, op);
        auto eig = hilbert::exact_eigenvalue(prod, state);
        if (!eig)
            throw PreconditionError("state is not stabilised by the product of context " +
                                    std::to_string(c + 1) + " (" + pauli::indexed_name(prod) + ")");
        std::vector<std::string> names;
        for (const auto& op : obs) names.push_back(pauli::indexed_name(op));
        sys.add_equation(names, *eig == -1, "C" + std::to_string(c + 1));
    }
    return sys;
}

namespace {

void check_closed(const std::vector<PauliOp>& subgroup) {
    std::set<PauliOp> members(subgroup.begin(), subgroup.end());
    for (const auto& a : subgroup)
        for (const auto& b : subgroup)
            if (!members.count(pauli::multiply(a, b)))
                throw PreconditionError("input is not closed under multiplication");
}

// Phase-free letter pattern of an element, with its global sign.
std::pair<PauliOp, int> split_sign(const PauliOp& p) {
    int lp = pauli::letter_phase(p);
    if (lp % 2 != 0) throw PreconditionError("subgroup element has global phase +-i");
    PauliOp pattern = p;
    pattern.phase = (p.phase + (lp == 2 ? 2 : 0)) % 4;
    return {pattern, lp == 2 ? -1 : 1};
}

} // namespace

ValuationSystem avn_system(const std::vector<PauliOp>& subgroup) {
    if (subgroup.empty()) throw PreconditionError("empty subgroup");
    check_closed(subgroup);
    ValuationSystem sys;
    for (const auto& elem : subgroup) {
        auto [pattern, sign] = split_sign(elem);
        if (pattern.xbits == 0 && pattern.zbits == 0) {
            if (sign == -1) sys.add_equation({}, true, "-I");
            continue; // identity contributes nothing
        }
        std::vector<std::string> names;
        for (std::size_t q = 0; q < pattern.n; ++q) {
            char c = pauli::letter_at(pattern, q);
            if (c != 'I') names.push_back(std::string(1, c) + std::to_string(q + 1));
        }
        sys.add_equation(names, sign == -1, pauli::indexed_name(elem));
    }
    return sys;
}

ValuationSystem avn_state_system(const std::vector<PauliOp>& subgroup,
                                 const hilbert::ScaledVector& state) {
    if (subgroup.empty()) throw PreconditionError("empty subgroup");
    check_closed(subgroup);
    ValuationSystem sys;
    std::set<std::pair<std::uint64_t, std::uint64_t>> seen;
    for (const auto& elem : subgroup) {
        auto [pattern, sign] = split_sign(elem);
        if (pattern.xbits == 0 && pattern.zbits == 0) continue;
        if (!seen.insert({pattern.xbits, pattern.zbits}).second) continue;
        auto eig = hilbert::exact_eigenvalue(pattern, state);
        if (!eig)
            throw PreconditionError("state is not an exact eigenvector of " +
                                    pauli::indexed_name(pattern));
        std::vector<std::string> names;
        for (std::size_t q = 0; q < pattern.n; ++q) {
            char c = pauli::letter_at(pattern, q);
            if (c != 'I') names.push_back(std::string(1, c) + std::to_string(q + 1));
        }
        sys.add_equation(names, *eig == -1, pauli::indexed_name(pattern));
    }
    return sys;
}

} // namespace contextus::parity
