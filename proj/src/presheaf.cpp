#include "contextus/presheaf.hpp"

#include "contextus/error.hpp"
#include "contextus/gf2.hpp"

#include <algorithm>
#include <bit>
#include <set>

namespace contextus::presheaf {

using hilbert::ContextSpec;
using pauli::PauliOp;

void FinitePoset::validate() const {
    const std::size_t n = elements.size();
    if (leq.size() != n) throw PreconditionError("order relation has wrong shape");
    for (const auto& row : leq)
        if (row.size() != n) throw PreconditionError("order relation has wrong shape");
    for (std::size_t i = 0; i < n; ++i)
        if (!leq[i][i]) throw PreconditionError("order relation is not reflexive");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j && leq[i][j] && leq[j][i])
                throw PreconditionError("order relation is not antisymmetric");
            for (std::size_t k = 0; k < n; ++k)
                if (leq[i][j] && leq[j][k] && !leq[i][k])
                    throw PreconditionError("order relation is not transitive");
        }
}

std::vector<std::size_t> FinitePoset::maximal_elements() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < size(); ++i) {
        bool maximal = true;
        for (std::size_t j = 0; j < size() && maximal; ++j)
            if (i != j && leq[i][j]) maximal = false;
        if (maximal) out.push_back(i);
    }
    return out;
}

std::vector<std::pair<std::size_t, std::size_t>> FinitePoset::hasse_edges() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < size(); ++i)
        for (std::size_t j = 0; j < size(); ++j) {
            if (i == j || !leq[i][j]) continue;
            bool covered = false;
            for (std::size_t k = 0; k < size() && !covered; ++k)
                if (k != i && k != j && leq[i][k] && leq[k][j]) covered = true;
            if (!covered) out.push_back({i, j});
        }
    return out;
}

std::string FinitePoset::to_dot() const {
    std::string out = "digraph poset {\n  rankdir=BT;\n";
    for (std::size_t i = 0; i < size(); ++i)
        out += "  n" + std::to_string(i) + " [label=\"" + elements[i] + "\"];\n";
    for (const auto& [lo, hi] : hasse_edges())
        out += "  n" + std::to_string(lo) + " -> n" + std::to_string(hi) + ";\n";
    out += "}\n";
    return out;
}

const std::vector<std::size_t>& FinitePresheaf::restriction(std::size_t upper,
                                                            std::size_t lower) const {
    auto it = restrictions.find({upper, lower});
    if (it == restrictions.end()) throw PreconditionError("no restriction map for this pair");
    return it->second;
}

void FinitePresheaf::check_functoriality() const {
    const std::size_t n = poset.size();
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = 0; v < n; ++v) {
            if (u == v || !poset.leq[u][v]) continue;
            const auto& r_vu = restriction(v, u);
            if (r_vu.size() != stalks[v].size())
                throw Error("internal: restriction map has wrong domain size");
            for (std::size_t idx : r_vu)
                if (idx >= stalks[u].size())
                    throw Error("internal: restriction map escapes its codomain");
            for (std::size_t w = 0; w < n; ++w) {
                if (v == w || w == u || !poset.leq[v][w]) continue;
                // u <= v <= w: restriction must compose.
                const auto& r_wv = restriction(w, v);
                const auto& r_wu = restriction(w, u);
                for (std::size_t s = 0; s < stalks[w].size(); ++s)
                    if (r_vu[r_wv[s]] != r_wu[s])
                        throw Error("internal: restriction maps do not compose");
            }
        }
}

GlobalSectionSearch global_sections(const FinitePresheaf& p) {
    p.poset.validate();
    const std::size_t n = p.poset.size();

    // Assign each maximal element followed by its down-set, so shared lower
    // elements constrain the next maximal element as early as possible.
    std::vector<std::size_t> order;
    std::vector<bool> placed(n, false);
    for (std::size_t m : p.poset.maximal_elements()) {
        if (!placed[m]) {
            order.push_back(m);
            placed[m] = true;
        }
        for (std::size_t u = 0; u < n; ++u)
            if (!placed[u] && p.poset.leq[u][m]) {
                order.push_back(u);
                placed[u] = true;
            }
    }
    for (std::size_t i = 0; i < n; ++i)
        if (!placed[i]) order.push_back(i);

    GlobalSectionSearch out;
    std::vector<std::size_t> family(n, 0);
    std::vector<bool> assigned(n, false);
    std::string dot = "digraph search {\n  n0 [label=\"start\"];\n";
    std::size_t dot_nodes = 1;
    constexpr std::size_t kDotCap = 2000;

    auto consistent = [&](std::size_t e, std::size_t candidate) {
        for (std::size_t w = 0; w < n; ++w) {
            if (!assigned[w] || w == e) continue;
            if (p.poset.leq[e][w] && p.restriction(w, e)[family[w]] != candidate) return false;
            if (p.poset.leq[w][e] && p.restriction(e, w)[candidate] != family[w]) return false;
        }
        return true;
    };

    auto rec = [&](auto&& self, std::size_t depth, std::size_t parent_dot) -> void {
        if (depth == n) {
            out.families.push_back(family);
            return;
        }
        std::size_t e = order[depth];
        for (std::size_t cand = 0; cand < p.stalks[e].size(); ++cand) {
            ++out.nodes_explored;
            if (!consistent(e, cand)) continue;
            std::size_t my_dot = 0;
            if (dot_nodes < kDotCap) {
                my_dot = dot_nodes++;
                dot += "  n" + std::to_string(my_dot) + " [label=\"" + p.poset.elements[e] + " = " +
                       p.stalks[e][cand] + "\"];\n";
                dot += "  n" + std::to_string(parent_dot) + " -> n" + std::to_string(my_dot) + ";\n";
            }
            family[e] = cand;
            assigned[e] = true;
            self(self, depth + 1, my_dot);
            assigned[e] = false;
        }
    };
    rec(rec, 0, 0);
    dot += "}\n";
    out.search_tree_dot = std::move(dot);
    return out;
}

namespace {

// Letter pattern of an operator as a 2n-bit vector (x half, z half).
BitVec pattern_bits(const PauliOp& p) {
    BitVec v(2 * p.n);
    for (std::size_t q = 0; q < p.n; ++q) {
        if ((p.xbits >> q) & 1u) v.set(q, true);
        if ((p.zbits >> q) & 1u) v.set(p.n + q, true);
    }
    return v;
}

// Hermitian phase-free representative of a letter pattern.
PauliOp pattern_op(std::size_t n, std::uint64_t x, std::uint64_t z) {
    PauliOp p;
    p.n = n;
    p.xbits = x;
    p.zbits = z;
    p.phase = static_cast<int>(std::popcount(x & z)) % 4;
    return p;
}

// Subset of `gens` whose letter patterns XOR to the pattern of `target`.
std::optional<std::vector<std::size_t>> subset_for_pattern(const PauliOp& target,
                                                           const std::vector<PauliOp>& gens) {
    const std::size_t n = target.n;
    Gf2System sys;
    sys.vars = gens.size();
    BitVec tgt = pattern_bits(target);
    for (std::size_t bitpos = 0; bitpos < 2 * n; ++bitpos) {
        BitVec row(gens.size());
        for (std::size_t g = 0; g < gens.size(); ++g)
            if (pattern_bits(gens[g]).get(bitpos)) row.set(g, true);
        sys.add_row(row, tgt.get(bitpos));
    }
    auto res = gf2_solve(sys);
    if (!res.consistent()) return std::nullopt;
    std::vector<std::size_t> subset;
    for (std::size_t g = 0; g < gens.size(); ++g)
        if (res.solutions->particular.get(g)) subset.push_back(g);
    return subset;
}

// All letter patterns generated by the context's observables.
std::set<std::pair<std::uint64_t, std::uint64_t>> pattern_span(const ContextSpec& ctx) {
    std::set<std::pair<std::uint64_t, std::uint64_t>> out;
    const std::size_t k = ctx.size();
    if (k > 20) throw SizeGuardError("context too large for pattern span");
    for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
        std::uint64_t x = 0, z = 0;
        for (std::size_t j = 0; j < k; ++j)
            if ((mask >> j) & 1u) {
                x ^= ctx.observables()[j].xbits;
                z ^= ctx.observables()[j].zbits;
            }
        out.insert({x, z});
    }
    return out;
}

std::string character_label(const std::vector<int>& values) {
    std::string out = "(";
    for (std::size_t i = 0; i < values.size(); ++i) {
        out += values[i] > 0 ? '+' : '-';
        if (i + 1 < values.size()) out += ',';
    }
    out += ")";
    return out;
}

// Characters of a context: deduplicated joint eigenvalue patterns.
std::vector<std::vector<int>> characters_of(const ContextSpec& ctx) {
    std::vector<std::vector<int>> out;
    for (const auto& ray : hilbert::joint_eigenbasis(ctx))
        if (std::find(out.begin(), out.end(), ray.eigenvalues) == out.end())
            out.push_back(ray.eigenvalues);
    return out;
}

FinitePresheaf build_presheaf(const std::vector<ContextSpec>& elements, const FinitePoset& poset,
                              const std::vector<std::vector<std::vector<int>>>& char_values) {
    FinitePresheaf sheaf;
    sheaf.poset = poset;
    sheaf.stalks.resize(elements.size());
    for (std::size_t e = 0; e < elements.size(); ++e)
        for (const auto& chi : char_values[e]) sheaf.stalks[e].push_back(character_label(chi));

    // Restriction maps: evaluate each lower observable as a signed product
    // of upper observables.
    for (std::size_t u = 0; u < elements.size(); ++u) {
        for (std::size_t v = 0; v < elements.size(); ++v) {
            if (u == v || !poset.leq[u][v]) continue;
            const auto& upper = elements[v].observables();
            std::vector<std::vector<std::size_t>> subsets;
            std::vector<int> signs;
            for (const auto& a : elements[u].observables()) {
                auto subset = subset_for_pattern(a, upper);
                if (!subset)
                    throw PreconditionError("poset order violates operator-span inclusion at " +
                                            poset.elements[u] + " <= " + poset.elements[v]);
                PauliOp prod = pauli::identity(a.n);
                for (std::size_t j : *subset) prod = pauli::multiply(prod, upper[j]);
                int diff = (pauli::letter_phase(prod) - pauli::letter_phase(a) + 4) % 4;
                if (diff % 2 != 0) throw Error("internal: product differs by a factor of i");
                subsets.push_back(*subset);
                signs.push_back(diff == 2 ? -1 : 1);
            }
            std::vector<std::size_t> map;
            for (const auto& chi : char_values[v]) {
                std::vector<int> values;
                for (std::size_t a = 0; a < subsets.size(); ++a) {
                    int val = signs[a];
                    for (std::size_t j : subsets[a]) val *= chi[j];
                    values.push_back(val);
                }
                auto it = std::find(char_values[u].begin(), char_values[u].end(), values);
                if (it == char_values[u].end())
                    throw Error("internal: restricted character missing from the lower stalk");
                map.push_back(static_cast<std::size_t>(it - char_values[u].begin()));
            }
            sheaf.restrictions[{v, u}] = std::move(map);
        }
    }
    sheaf.check_functoriality();
    return sheaf;
}

} // namespace

std::pair<FinitePoset, std::vector<ContextSpec>> context_poset(
    const std::vector<ContextSpec>& maximal) {
    if (maximal.empty()) throw PreconditionError("need at least one context");
    const std::size_t n = maximal[0].qubits();
    for (const auto& c : maximal)
        if (c.qubits() != n) throw ArityError("contexts mix qubit counts");

    using Key = std::set<std::pair<std::uint64_t, std::uint64_t>>;
    std::vector<ContextSpec> elements;
    std::vector<Key> keys;
    std::vector<std::string> names;

    auto add_element = [&](ContextSpec ctx, const std::string& name) {
        Key key = pattern_span(ctx);
        for (std::size_t i = 0; i < keys.size(); ++i)
            if (keys[i] == key) return;
        elements.push_back(std::move(ctx));
        keys.push_back(std::move(key));
        names.push_back(name);
    };

    for (std::size_t i = 0; i < maximal.size(); ++i)
        add_element(maximal[i], "C" + std::to_string(i + 1));

    // Pairwise intersections of the pattern groups, presented by a minimal
    // generating set of Hermitian representatives.
    const std::size_t top = elements.size();
    for (std::size_t a = 0; a < top; ++a) {
        for (std::size_t b = a + 1; b < top; ++b) {
            Key inter;
            for (const auto& pat : keys[a])
                if (keys[b].count(pat)) inter.insert(pat);
            // Minimal generators by greedy GF(2) independence.
            std::vector<PauliOp> gens;
            std::set<std::pair<std::uint64_t, std::uint64_t>> span{{0, 0}};
            for (const auto& [x, z] : inter) {
                if (x == 0 && z == 0) continue;
                if (span.count({x, z})) continue;
                std::set<std::pair<std::uint64_t, std::uint64_t>> wider;
                for (const auto& s : span) {
                    wider.insert(s);
                    wider.insert({s.first ^ x, s.second ^ z});
                }
                span = std::move(wider);
                gens.push_back(pattern_op(n, x, z));
            }
            if (gens.empty()) continue;
            std::string name = "{";
            for (std::size_t g = 0; g < gens.size(); ++g) {
                if (g) name += ",";
                name += pauli::indexed_name(gens[g]);
            }
            name += "}";
            add_element(ContextSpec(gens), name);
        }
    }

    FinitePoset poset;
    poset.elements = names;
    poset.leq.assign(elements.size(), std::vector<bool>(elements.size(), false));
    for (std::size_t i = 0; i < elements.size(); ++i)
        for (std::size_t j = 0; j < elements.size(); ++j) {
            if (i == j) {
                poset.leq[i][j] = true;
                continue;
            }
            bool contained = true;
            for (const auto& pat : keys[i])
                if (!keys[j].count(pat)) {
                    contained = false;
                    break;
                }
            if (contained && keys[i] != keys[j]) poset.leq[i][j] = true;
        }
    poset.validate();
    return {poset, elements};
}

FinitePresheaf spectral_presheaf(const std::vector<ContextSpec>& elements,
                                 const FinitePoset& poset) {
    poset.validate();
    if (elements.size() != poset.size())
        throw PreconditionError("one observable set per poset element required");
    std::vector<std::vector<std::vector<int>>> chars;
    for (const auto& ctx : elements) chars.push_back(characters_of(ctx));
    return build_presheaf(elements, poset, chars);
}

FinitePresheaf state_supported_presheaf(const std::vector<ContextSpec>& elements,
                                        const FinitePoset& poset,
                                        const hilbert::ScaledVector& state) {
    poset.validate();
    if (elements.size() != poset.size())
        throw PreconditionError("one observable set per poset element required");
    std::vector<std::vector<std::vector<int>>> chars;
    for (const auto& ctx : elements) {
        std::vector<std::vector<int>> supported;
        for (const auto& chi : characters_of(ctx))
            if (hilbert::born_probability(state, ctx, chi).sign() > 0) supported.push_back(chi);
        chars.push_back(std::move(supported));
    }
    return build_presheaf(elements, poset, chars);
}

std::vector<PSpecPoint> pspec_points(const CoordinateRing& ring) {
    if (ring.variables.size() > 20) throw SizeGuardError("pspec_points limited to 20 variables");
    for (const auto& rel : ring.relations) {
        for (const auto& v : rel.monomial)
            if (std::find(ring.variables.begin(), ring.variables.end(), v) ==
                ring.variables.end())
                throw PreconditionError("relation references undeclared variable " + v);
        if (rel.sign != 1 && rel.sign != -1)
            throw PreconditionError("relation sign must be +-1");
    }
    std::vector<PSpecPoint> out;
    const std::size_t k = ring.variables.size();
    for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
        bool ok = true;
        for (const auto& rel : ring.relations) {
            int prod = 1;
            for (const auto& v : rel.monomial) {
                std::size_t j = static_cast<std::size_t>(
                    std::find(ring.variables.begin(), ring.variables.end(), v) -
                    ring.variables.begin());
                if ((mask >> j) & 1u) prod = -prod;
            }
            if (prod != rel.sign) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        PSpecPoint pt;
        for (std::size_t j = 0; j < k; ++j)
            pt.assignment[ring.variables[j]] = (mask >> j) & 1u ? -1 : 1;
        out.push_back(std::move(pt));
    }
    return out;
}

std::vector<std::map<std::string, int>> pspec_functor_points(
    const std::vector<CoordinateRing>& rings, const FinitePoset& poset) {
    poset.validate();
    if (rings.size() != poset.size())
        throw PreconditionError("one coordinate ring per poset element required");

    std::vector<std::vector<PSpecPoint>> points;
    for (const auto& r : rings) points.push_back(pspec_points(r));

    FinitePresheaf sheaf;
    sheaf.poset = poset;
    sheaf.stalks.resize(rings.size());
    for (std::size_t e = 0; e < rings.size(); ++e) {
        for (const auto& pt : points[e]) {
            std::string label;
            for (const auto& [var, val] : pt.assignment)
                label += var + (val > 0 ? "=+1 " : "=-1 ");
            sheaf.stalks[e].push_back(label);
        }
    }
    for (std::size_t u = 0; u < rings.size(); ++u) {
        for (std::size_t v = 0; v < rings.size(); ++v) {
            if (u == v || !poset.leq[u][v]) continue;
            for (const auto& var : rings[u].variables)
                if (std::find(rings[v].variables.begin(), rings[v].variables.end(), var) ==
                    rings[v].variables.end())
                    throw PreconditionError("variable-inclusion violation: " + var + " of " +
                                            poset.elements[u] + " missing from " +
                                            poset.elements[v]);
            std::vector<std::size_t> map;
            for (const auto& pt : points[v]) {
                std::map<std::string, int> restricted;
                for (const auto& var : rings[u].variables) restricted[var] = pt.assignment.at(var);
                std::size_t found = points[u].size();
                for (std::size_t i = 0; i < points[u].size(); ++i)
                    if (points[u][i].assignment == restricted) {
                        found = i;
                        break;
                    }
                if (found == points[u].size())
                    throw PreconditionError("restriction of a point leaves the lower spectrum");
                map.push_back(found);
            }
            sheaf.restrictions[{v, u}] = std::move(map);
        }
    }
    sheaf.check_functoriality();

    auto search = global_sections(sheaf);
    std::vector<std::map<std::string, int>> out;
    for (const auto& family : search.families) {
        std::map<std::string, int> merged;
        for (std::size_t e = 0; e < rings.size(); ++e)
            for (const auto& [var, val] : points[e][family[e]].assignment) merged[var] = val;
        out.push_back(std::move(merged));
    }
    return out;
}

std::pair<FinitePoset, std::vector<CoordinateRing>> ghz_coordinate_rings() {
    std::vector<CoordinateRing> rings;
    auto ring = [](std::string name, std::vector<std::string> vars,
                   std::vector<std::string> monomial, int sign) {
        CoordinateRing r;
        r.name = std::move(name);
        r.variables = std::move(vars);
        r.relations.push_back({std::move(monomial), sign});
        return r;
    };
    rings.push_back(ring("A1", {"s1", "s2", "s3"}, {"s1", "s2", "s3"}, 1));
    rings.push_back(ring("A2", {"s1", "t2", "t3"}, {"s1", "t2", "t3"}, -1));
    rings.push_back(ring("A3", {"t1", "s2", "t3"}, {"t1", "s2", "t3"}, -1));
    rings.push_back(ring("A4", {"t1", "t2", "s3"}, {"t1", "t2", "s3"}, -1));
    for (const auto& v : {"s1", "s2", "s3", "t1", "t2", "t3"}) {
        CoordinateRing r;
        r.name = std::string("Z2[") + v + "]";
        r.variables = {v};
        rings.push_back(r);
    }

    FinitePoset poset;
    for (const auto& r : rings) poset.elements.push_back(r.name);
    poset.leq.assign(rings.size(), std::vector<bool>(rings.size(), false));
    for (std::size_t i = 0; i < rings.size(); ++i)
        for (std::size_t j = 0; j < rings.size(); ++j) {
            if (i == j) {
                poset.leq[i][j] = true;
                continue;
            }
            if (rings[i].variables.size() >= rings[j].variables.size()) continue;
            bool sub = true;
            for (const auto& v : rings[i].variables)
                if (std::find(rings[j].variables.begin(), rings[j].variables.end(), v) ==
                    rings[j].variables.end()) {
                    sub = false;
                    break;
                }
            poset.leq[i][j] = sub;
        }
    poset.validate();
    return {poset, rings};
}

} // namespace contextus::presheaf
