#include "contextus/roots.hpp"

#include "contextus/error.hpp"

#include <algorithm>
#include <bit>
#include <set>

namespace contextus::roots {

bool operator==(const RootVector& a, const RootVector& b) {
    for (std::size_t i = 0; i < 8; ++i)
        if (a.coords[i] != b.coords[i]) return false;
    return true;
}

bool operator<(const RootVector& a, const RootVector& b) {
    for (std::size_t i = 0; i < 8; ++i) {
        int c = Rational::cmp(a.coords[i], b.coords[i]);
        if (c != 0) return c < 0;
    }
    return false;
}

RootVector RootVector::operator-() const {
    RootVector out;
    for (std::size_t i = 0; i < 8; ++i) out.coords[i] = -coords[i];
    return out;
}

Rational inner(const RootVector& a, const RootVector& b) {
    Rational out(0);
    for (std::size_t i = 0; i < 8; ++i) out += a.coords[i] * b.coords[i];
    return out;
}

Rational norm2(const RootVector& a) { return inner(a, a); }

std::string root_line(const RootVector& a) {
    std::string out;
    for (std::size_t i = 0; i < 8; ++i) {
        if (i) out += " ";
        out += a.coords[i].str();
    }
    return out;
}

RootVector reflect(const RootVector& alpha, const RootVector& beta) {
    Rational aa = norm2(alpha);
    if (aa.is_zero()) throw PreconditionError("cannot reflect in the zero vector");
    Rational f = Rational(2) * inner(alpha, beta) / aa;
    RootVector out;
    for (std::size_t i = 0; i < 8; ++i) out.coords[i] = beta.coords[i] - f * alpha.coords[i];
    return out;
}

RootVector sign_canonical(const RootVector& v) {
    for (std::size_t i = 0; i < 8; ++i) {
        if (v.coords[i].is_zero()) continue;
        return v.coords[i].is_negative() ? -v : v;
    }
    return v;
}

bool RootSystem::contains(const RootVector& v) const {
    return std::binary_search(roots.begin(), roots.end(), v);
}

namespace {

// Exact integer square root when the input is a perfect square.
std::optional<BigInt> perfect_sqrt(const BigInt& n) {
    if (n.is_negative()) return std::nullopt;
    if (n.is_zero()) return BigInt(0);
    // Newton iteration from a safe upper bound.
    BigInt x = n, prev(-1);
    BigInt two(2);
    while (true) {
        BigInt next = (x + n / x) / two;
        if (next >= x) break;
        x = next;
    }
    if (x * x == n) return x;
    return std::nullopt;
}

std::optional<Rational> rational_sqrt(const Rational& r) {
    auto num = perfect_sqrt(r.num());
    auto den = perfect_sqrt(r.den());
    if (!num || !den) return std::nullopt;
    return Rational(*num, *den);
}

} // namespace

std::vector<RootVector> rays_from_contexts(const std::vector<hilbert::ContextSpec>& contexts) {
    std::set<RootVector> seen;
    std::vector<RootVector> out;
    for (const auto& ctx : contexts) {
        if ((std::size_t{1} << ctx.qubits()) != 8)
            throw PreconditionError("rays live in an 8-dimensional space; contexts must act on 3 qubits");
        for (const auto& ray : hilbert::joint_eigenbasis(ctx)) {
            RootVector v;
            for (std::size_t i = 0; i < 8; ++i) {
                const auto& c = ray.ray.coords[i];
                if (!c.is_real())
                    throw PreconditionError("context eigenbasis is not real (imaginary part survives)");
                v.coords[i] = c.re();
            }
            Rational n2 = norm2(v);
            auto t = rational_sqrt(Rational(2) / n2);
            if (!t)
                throw PreconditionError("ray cannot be rescaled to squared norm 2 with rational coordinates");
            for (auto& c : v.coords) c *= *t;
            v = sign_canonical(v);
            if (seen.insert(v).second) out.push_back(v);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

RootSystem reflection_closure(const std::vector<RootVector>& seed, std::size_t guard) {
    if (seed.empty()) throw PreconditionError("empty seed");
    const Rational two(2);
    for (const auto& v : seed)
        if (norm2(v) != two)
            throw PreconditionError("seed vector has squared norm " + norm2(v).str() + ", want 2");

    std::set<RootVector> roots(seed.begin(), seed.end());
    for (const auto& v : seed) roots.insert(-v);
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<RootVector> snapshot(roots.begin(), roots.end());
        for (const auto& alpha : snapshot) {
            for (const auto& beta : snapshot) {
                RootVector image = reflect(alpha, beta);
                if (roots.insert(image).second) {
                    grew = true;
                    if (roots.size() > guard)
                        throw Error("reflection closure exceeded " + std::to_string(guard) +
                                    " vectors; the seed does not generate a finite root system");
                }
            }
        }
    }
    RootSystem out;
    out.roots.assign(roots.begin(), roots.end());
    return out;
}

bool verify_root_system_axioms(const RootSystem& system) {
    // Scalar multiples: grouping by ray must give exactly the +- pairs.
    std::set<RootVector> rays;
    for (const auto& r : system.roots) rays.insert(sign_canonical(r));
    if (rays.size() * 2 != system.roots.size()) return false;
    for (const auto& r : system.roots) {
        if (!system.contains(-r)) return false;
        // Any other rational multiple of a norm-2 root has a different norm,
        // so +-1 are the only multiples once norms are checked.
        if (norm2(r) != Rational(2)) return false;
    }
    for (const auto& alpha : system.roots)
        for (const auto& beta : system.roots)
            if (!system.contains(reflect(alpha, beta))) return false;
    return true;
}

namespace {

std::string classify_components(const std::vector<RootVector>& simple,
                                const std::map<std::pair<std::size_t, std::size_t>, int>& labels) {
    const std::size_t n = simple.size();
    std::vector<std::vector<std::size_t>> adj(n);
    for (const auto& [edge, m] : labels) {
        if (m == 2) continue;
        if (m != 3) return "non-simply-laced";
        adj[edge.first].push_back(edge.second);
        adj[edge.second].push_back(edge.first);
    }
    std::vector<int> comp(n, -1);
    int ncomp = 0;
    for (std::size_t s = 0; s < n; ++s) {
        if (comp[s] != -1) continue;
        std::vector<std::size_t> stack{s};
        comp[s] = ncomp;
        while (!stack.empty()) {
            std::size_t v = stack.back();
            stack.pop_back();
            for (std::size_t w : adj[v])
                if (comp[w] == -1) {
                    comp[w] = ncomp;
                    stack.push_back(w);
                }
        }
        ++ncomp;
    }

    std::vector<std::string> parts;
    for (int c = 0; c < ncomp; ++c) {
        std::vector<std::size_t> nodes;
        for (std::size_t v = 0; v < n; ++v)
            if (comp[v] == c) nodes.push_back(v);
        std::size_t edges = 0;
        std::size_t deg3 = 0, deg_over = 0;
        std::vector<std::size_t> leaves;
        for (std::size_t v : nodes) {
            std::size_t d = adj[v].size();
            edges += d;
            if (d == 3) ++deg3;
            if (d > 3) ++deg_over;
            if (d <= 1) leaves.push_back(v);
        }
        edges /= 2;
        std::string label;
        if (edges != nodes.size() - 1 || deg_over > 0 || deg3 > 1) {
            label = "unclassified";
        } else if (deg3 == 0) {
            label = "A" + std::to_string(nodes.size());
        } else {
            // One branch node: arm lengths identify D/E.
            std::size_t branch = 0;
            for (std::size_t v : nodes)
                if (adj[v].size() == 3) branch = v;
            std::vector<std::size_t> arms;
            for (std::size_t start : adj[branch]) {
                std::size_t len = 1, prev = branch, cur = start;
                while (adj[cur].size() == 2) {
                    std::size_t nxt = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
                    prev = cur;
                    cur = nxt;
                    ++len;
                }
                arms.push_back(len);
            }
            std::sort(arms.begin(), arms.end());
            if (arms[0] == 1 && arms[1] == 1) label = "D" + std::to_string(nodes.size());
            else if (arms == std::vector<std::size_t>{1, 2, 2}) label = "E6";
            else if (arms == std::vector<std::size_t>{1, 2, 3}) label = "E7";
            else if (arms == std::vector<std::size_t>{1, 2, 4}) label = "E8";
            else label = "unclassified";
        }
        parts.push_back(label);
    }
    std::sort(parts.begin(), parts.end());
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += " x ";
        out += parts[i];
    }
    return out;
}

} // namespace

CoxeterGraph coxeter_graph_with_parameter(const RootSystem& system, long long t) {
    if (system.roots.empty()) throw PreconditionError("empty root system");
    RootVector functional;
    Rational power(1);
    const Rational tq(t);
    for (std::size_t i = 0; i < 8; ++i) {
        functional.coords[i] = power;
        power *= tq;
    }
    std::vector<RootVector> positive;
    for (const auto& r : system.roots) {
        int s = inner(functional, r).sign();
        if (s == 0)
            throw PreconditionError("functional parameter " + std::to_string(t) +
                                    " annihilates a root");
        if (s > 0) positive.push_back(r);
    }
    std::set<RootVector> pos_set(positive.begin(), positive.end());

    CoxeterGraph graph;
    graph.functional_parameter = t;
    for (const auto& alpha : positive) {
        bool decomposable = false;
        for (const auto& beta : positive) {
            RootVector gamma;
            for (std::size_t i = 0; i < 8; ++i)
                gamma.coords[i] = alpha.coords[i] - beta.coords[i];
            if (pos_set.count(gamma)) {
                decomposable = true;
                break;
            }
        }
        if (!decomposable) graph.simple_roots.push_back(alpha);
    }
    std::sort(graph.simple_roots.begin(), graph.simple_roots.end());

    for (std::size_t i = 0; i < graph.simple_roots.size(); ++i)
        for (std::size_t j = i + 1; j < graph.simple_roots.size(); ++j) {
            Rational p = inner(graph.simple_roots[i], graph.simple_roots[j]);
            int m;
            if (p.is_zero()) m = 2;
            else if (p == Rational(-1)) m = 3;
            else
                throw PreconditionError("simple roots with inner product " + p.str() +
                                        " fall outside the simply-laced labels {2,3}");
            graph.labels[{i, j}] = m;
        }
    graph.classification = classify_components(graph.simple_roots, graph.labels);
    return graph;
}

CoxeterGraph coxeter_graph(const RootSystem& system) {
    for (long long t : {17LL, 19LL, 23LL, 29LL, 31LL, 37LL}) {
        try {
            return coxeter_graph_with_parameter(system, t);
        } catch (const PreconditionError& e) {
            if (std::string(e.what()).find("annihilates") == std::string::npos) throw;
        }
    }
    throw Error("no generic functional found among the candidate parameters");
}

std::vector<std::vector<std::size_t>> orthogonal_bases(const std::vector<RootVector>& rays) {
    if (rays.size() > 64) throw SizeGuardError("orthogonal basis enumeration limited to 64 rays");
    const std::size_t n = rays.size();
    std::vector<std::uint64_t> adj(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (inner(rays[i], rays[j]).is_zero()) {
                adj[i] |= std::uint64_t{1} << j;
                adj[j] |= std::uint64_t{1} << i;
            }

    std::vector<std::vector<std::size_t>> bases;
    // Bron-Kerbosch with pivoting over bitset vertex sets.
    auto rec = [&](auto&& self, std::uint64_t r, std::uint64_t p, std::uint64_t x) -> void {
        if (p == 0 && x == 0) {
            if (std::popcount(r) == 8) {
                std::vector<std::size_t> basis;
                for (std::size_t i = 0; i < n; ++i)
                    if ((r >> i) & 1u) basis.push_back(i);
                bases.push_back(std::move(basis));
            }
            return;
        }
        // Pivot maximising neighbours inside p.
        std::uint64_t px = p | x;
        std::size_t pivot = 0;
        int best_count = -1;
        std::uint64_t scan = px;
        while (scan) {
            std::size_t v = static_cast<std::size_t>(std::countr_zero(scan));
            scan &= scan - 1;
            int cnt = std::popcount(p & adj[v]);
            if (cnt > best_count) {
                best_count = cnt;
                pivot = v;
            }
        }
        std::uint64_t best = p & ~adj[pivot];
        while (best) {
            std::size_t v = static_cast<std::size_t>(std::countr_zero(best));
            best &= best - 1;
            std::uint64_t vb = std::uint64_t{1} << v;
            self(self, r | vb, p & adj[v], x & adj[v]);
            p &= ~vb;
            x |= vb;
        }
    };
    std::uint64_t all = n == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
    rec(rec, 0, all, 0);
    for (auto& b : bases) std::sort(b.begin(), b.end());
    std::sort(bases.begin(), bases.end());
    return bases;
}

ColouringResult colouring_search(const std::vector<RootVector>& rays,
                                 const std::vector<std::vector<std::size_t>>& bases) {
    for (const auto& basis : bases) {
        if (basis.size() != 8) throw PreconditionError("bases must have exactly 8 rays");
        for (std::size_t r : basis)
            if (r >= rays.size()) throw PreconditionError("basis references unknown ray");
    }

    ColouringResult out;
    std::vector<int> colour(rays.size(), -1); // -1 unknown, 0 red, 1 green
    std::vector<int> first_solution;

    auto rec = [&](auto&& self, std::size_t b) -> void {
        if (b == bases.size()) {
            ++out.solution_count;
            if (first_solution.empty()) {
                first_solution = colour;
                for (auto& c : first_solution)
                    if (c == -1) c = 0;
            }
            return;
        }
        const auto& basis = bases[b];
        int greens = 0;
        for (std::size_t r : basis)
            if (colour[r] == 1) ++greens;
        if (greens > 1) return;
        if (greens == 1) {
            // Remaining unknowns in this basis must be red.
            std::vector<std::size_t> changed;
            for (std::size_t r : basis)
                if (colour[r] == -1) {
                    colour[r] = 0;
                    changed.push_back(r);
                }
            ++out.nodes_explored;
            self(self, b + 1);
            for (std::size_t r : changed) colour[r] = -1;
            return;
        }
        for (std::size_t pick : basis) {
            if (colour[pick] != -1) continue; // red already, cannot be the green one
            std::vector<std::size_t> changed;
            bool ok = true;
            for (std::size_t r : basis) {
                if (colour[r] == -1) {
                    colour[r] = r == pick ? 1 : 0;
                    changed.push_back(r);
                } else if (r == pick && colour[r] == 0) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                ++out.nodes_explored;
                self(self, b + 1);
            }
            for (std::size_t r : changed) colour[r] = -1;
        }
    };
    rec(rec, 0);
    out.feasible = out.solution_count > 0;
    if (out.feasible) out.witness = std::move(first_solution);
    return out;
}

std::string export_roots(const RootSystem& system) {
    std::string out;
    for (const auto& r : system.roots) out += root_line(r) + "\n";
    return out;
}

} // namespace contextus::roots
