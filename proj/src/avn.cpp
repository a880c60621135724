#include "contextus/avn.hpp"

#include "contextus/error.hpp"

#include <set>

namespace contextus::scenario {

using pauli::PauliOp;

std::vector<hilbert::ContextSpec> induced_contexts(const std::vector<PauliOp>& subgroup) {
    std::set<std::pair<std::uint64_t, std::uint64_t>> patterns;
    for (const auto& e : subgroup)
        if (e.xbits != 0 || e.zbits != 0) patterns.insert({e.xbits, e.zbits});

    std::vector<hilbert::ContextSpec> out;
    for (const auto& [x, z] : patterns) {
        std::vector<PauliOp> obs;
        const std::size_t n = subgroup[0].n;
        for (std::size_t q = 0; q < n; ++q) {
            bool xb = (x >> q) & 1u, zb = (z >> q) & 1u;
            if (xb && zb) obs.push_back(pauli::y_at(n, q));
            else if (xb) obs.push_back(pauli::x_at(n, q));
            else if (zb) obs.push_back(pauli::z_at(n, q));
        }
        out.emplace_back(std::move(obs));
    }
    return out;
}

AvnReport avn_check(const std::vector<PauliOp>& gens, const hilbert::ScaledVector& state) {
    if (gens.size() != 3)
        throw PreconditionError("avn_check expects exactly three generators, got " +
                                std::to_string(gens.size()));
    pauli::AvnTriple triple(gens[0], gens[1], gens[2]);
    AvnReport rep;
    rep.triple = pauli::is_avn_triple(triple);
    if (!rep.triple.is_avn)
        throw PreconditionError("generators are not an AvN triple: " + rep.triple.reason);

    for (const auto& g : gens) {
        auto eig = hilbert::exact_eigenvalue(g, state);
        if (!eig)
            throw PreconditionError("state is not an exact eigenvector of " +
                                    pauli::indexed_name(g));
        rep.generator_eigenvalues.push_back(*eig);
    }

    auto subgroup = pauli::subgroup_generate(gens);
    rep.subgroup_order = subgroup.size();

    rep.parity_report = parity::decide(parity::avn_state_system(subgroup, state));

    rep.model = hilbert::empirical_model_from_state(state, induced_contexts(subgroup));
    rep.classification = classify(rep.model);
    rep.strongly_contextual = rep.classification.level == Level::strong;
    return rep;
}

} // namespace contextus::scenario
