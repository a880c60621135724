// Acceptance suite: one check per shipped guarantee, each printed as a
// single PASS/FAIL line with its runtime. Exits nonzero if any fails.

#include "contextus/avn.hpp"
#include "contextus/error.hpp"
#include "contextus/gf2.hpp"
#include "contextus/hilbert.hpp"
#include "contextus/lp.hpp"
#include "contextus/parity.hpp"
#include "contextus/pauli.hpp"
#include "contextus/presheaf.hpp"
#include "contextus/roots.hpp"
#include "contextus/scenario.hpp"
#include "contextus/weyl.hpp"

#include <array>
#include <bit>
#include <chrono>
#include <cstdint>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

using namespace contextus;

namespace {

struct Harness {
    int failures = 0;
    int index = 0;

    void run(const std::string& name, double budget_seconds, const std::function<void()>& body) {
        ++index;
        auto t0 = std::chrono::steady_clock::now();
        std::string error;
        try {
            body();
        } catch (const std::exception& e) {
            error = e.what();
        }
        auto t1 = std::chrono::steady_clock::now();
        double seconds = std::chrono::duration<double>(t1 - t0).count();
        bool ok = error.empty() && seconds < budget_seconds;
        if (!ok) ++failures;
        std::ostringstream line;
        line << (ok ? "[PASS] " : "[FAIL] ") << index << ". " << name << " (" << seconds * 1000.0
             << " ms, budget " << budget_seconds << " s)";
        if (!error.empty()) line << "\n       " << error;
        else if (seconds >= budget_seconds) line << "\n       exceeded runtime budget";
        std::cout << line.str() << "\n";
    }
};

void require(bool cond, const std::string& what) {
    if (!cond) throw Error("requirement failed: " + what);
}

struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return state;
    }
    std::uint64_t next(std::uint64_t bound) { return next() % bound; }
    long long next_int(long long lo, long long hi) {
        return lo + static_cast<long long>(next(static_cast<std::uint64_t>(hi - lo + 1)));
    }
};

// --- exact rational Gaussian elimination, for the LP vertex oracle ----------

std::optional<std::vector<Rational>> gauss_solve(std::vector<std::vector<Rational>> M,
                                                 std::vector<Rational> c) {
    const std::size_t m = M.size();
    const std::size_t n = m == 0 ? 0 : M[0].size();
    std::vector<std::size_t> pivot_of_row;
    std::size_t row = 0;
    for (std::size_t col = 0; col < n && row < m; ++col) {
        std::size_t sel = m;
        for (std::size_t r = row; r < m; ++r)
            if (!M[r][col].is_zero()) {
                sel = r;
                break;
            }
        if (sel == m) continue;
        std::swap(M[sel], M[row]);
        std::swap(c[sel], c[row]);
        Rational inv = M[row][col].inverse();
        for (auto& v : M[row]) v *= inv;
        c[row] *= inv;
        for (std::size_t r = 0; r < m; ++r) {
            if (r == row || M[r][col].is_zero()) continue;
            Rational f = M[r][col];
            for (std::size_t k = 0; k < n; ++k) M[r][k] -= f * M[row][k];
            c[r] -= f * c[row];
        }
        pivot_of_row.push_back(col);
        ++row;
    }
    for (std::size_t r = row; r < m; ++r)
        if (!c[r].is_zero()) return std::nullopt;
    std::vector<Rational> z(n, Rational(0));
    for (std::size_t r = 0; r < row; ++r) z[pivot_of_row[r]] = c[r];
    return z;
}

bool feasible_by_vertex_enumeration(const LinearSystem& sys) {
    const std::size_t n = sys.vars;
    const std::size_t m = sys.rows.size();
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        std::vector<std::size_t> cols;
        for (std::size_t j = 0; j < n; ++j)
            if ((mask >> j) & 1u) cols.push_back(j);
        std::vector<std::vector<Rational>> M(m, std::vector<Rational>(cols.size(), Rational(0)));
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t k = 0; k < cols.size(); ++k) M[i][k] = sys.rows[i][cols[k]];
        auto z = gauss_solve(M, sys.rhs);
        if (!z) continue;
        bool ok = true;
        for (const auto& v : *z)
            if (v.is_negative()) ok = false;
        if (!ok) continue;
        std::vector<Rational> x(n, Rational(0));
        for (std::size_t k = 0; k < cols.size(); ++k) x[cols[k]] = (*z)[k];
        for (std::size_t i = 0; i < m && ok; ++i) {
            Rational s(0);
            for (std::size_t j = 0; j < n; ++j) s += sys.rows[i][j] * x[j];
            ok = s == sys.rhs[i];
        }
        if (ok) return true;
    }
    return false;
}

std::size_t complex_matrix_rank(std::vector<std::vector<GaussianRational>> rows) {
    std::size_t rank = 0;
    const std::size_t cols = rows.empty() ? 0 : rows[0].size();
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < rows.size(); ++col) {
        std::size_t sel = rows.size();
        for (std::size_t r = row; r < rows.size(); ++r)
            if (!rows[r][col].is_zero()) {
                sel = r;
                break;
            }
        if (sel == rows.size()) continue;
        std::swap(rows[sel], rows[row]);
        GaussianRational inv = rows[row][col].inverse();
        for (auto& v : rows[row]) v = v * inv;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == row || rows[r][col].is_zero()) continue;
            GaussianRational f = rows[r][col];
            for (std::size_t c = 0; c < cols; ++c) rows[r][c] -= f * rows[row][c];
        }
        ++row;
        ++rank;
    }
    return rank;
}

pauli::PauliOp random_op(Rng& rng, std::size_t n) {
    pauli::PauliOp p;
    p.n = n;
    p.xbits = rng.next(std::uint64_t{1} << n);
    p.zbits = rng.next(std::uint64_t{1} << n);
    p.phase = static_cast<int>(rng.next(4));
    return p;
}

} // namespace

int main() {
    Harness h;

    h.run("pentagram parity: INCONSISTENT with the five-row certificate, derivation ends 1 = -1",
          0.1, [] {
              auto sys = parity::mermin_system();
              auto rep = parity::decide(sys);
              require(!rep.consistent, "system must be inconsistent");
              require(rep.certificate->rows == std::set<std::size_t>{0, 1, 2, 3, 4},
                      "certificate must cite exactly the five rows");
              require(parity::replay_certificate(sys, *rep.certificate),
                      "multiplicative replay must reach 1 = -1");
              require(rep.derivation.ends_with("1 = -1"), "derivation must end with 1 = -1");
          });

    h.run("state-dependent system: rhs bits (0,1,1,1) from exact GHZ eigenvalues, INCONSISTENT",
          0.1, [] {
              auto sys = parity::state_dependent_system(hilbert::ghz_state(3),
                                                        parity::ghz_contexts());
              require(sys.system.row_count() == 4, "four rows");
              std::vector<bool> want{false, true, true, true};
              for (std::size_t r = 0; r < 4; ++r)
                  require(sys.system.rhs[r] == want[r], "rhs bit " + std::to_string(r));
              auto rep = parity::decide(sys);
              require(!rep.consistent, "system must be inconsistent");
              require(rep.certificate->rows == std::set<std::size_t>{0, 1, 2, 3},
                      "all four rows certify");
          });

    h.run("GHZ empirical model: 32-cell support table, exact 1/4 weights, no-signalling, STRONG "
          "with the s1-s4 elimination at the X context",
          1.0, [] {
              auto e = hilbert::empirical_model_from_state(hilbert::ghz_state(3),
                                                           parity::ghz_contexts());
              const Rational quarter(BigInt(1), BigInt(4));
              int table[4][8] = {{1, 0, 0, 1, 0, 1, 1, 0},
                                 {0, 1, 1, 0, 1, 0, 0, 1},
                                 {0, 1, 1, 0, 1, 0, 0, 1},
                                 {0, 1, 1, 0, 1, 0, 0, 1}};
              const char* cols[8] = {"+++", "++-", "+-+", "+--", "-++", "-+-", "--+", "---"};
              for (std::size_t c = 0; c < 4; ++c)
                  for (std::size_t k = 0; k < 8; ++k) {
                      Rational got = e.tables[c][scenario::key_to_mask(cols[k], 3)];
                      require(got == (table[c][k] ? quarter : Rational(0)),
                              "cell (" + std::to_string(c) + "," + cols[k] + ")");
                  }
              require(scenario::check_no_signalling(e).ok, "no-signalling must hold exactly");
              auto cls = scenario::classify(e);
              require(cls.level == scenario::Level::strong, "classification must be STRONG");
              // Eight survivors of C2..C4, eliminated by row C1, in exactly
              // the four sign classes quoted as s1..s4.
              std::set<std::array<int, 3>> xparts;
              std::size_t survivors = 0;
              auto ix = [&](const char* n) { return e.cover.observable_index(n); };
              for (std::size_t g = 0; g < cls.excluded_by.size(); ++g) {
                  if (cls.excluded_by[g] != std::vector<std::size_t>{0}) continue;
                  ++survivors;
                  xparts.insert({(g >> ix("X1")) & 1u ? -1 : 1, (g >> ix("X2")) & 1u ? -1 : 1,
                                 (g >> ix("X3")) & 1u ? -1 : 1});
              }
              require(survivors == 8, "eight candidates are killed by the X context alone");
              std::set<std::array<int, 3>> want{{1, 1, -1}, {1, -1, 1}, {-1, 1, 1}, {-1, -1, -1}};
              require(xparts == want, "their X restrictions are exactly s1..s4");
          });

    h.run("hierarchy sanity: PR box STRONG; shared coin NONCONTEXTUAL with exact reproducing "
          "witness",
          1.0, [] {
              require(scenario::classify(scenario::pr_box_model()).level ==
                          scenario::Level::strong,
                      "PR box is strongly contextual");
              auto coin = scenario::shared_coin_model();
              auto cls = scenario::classify(coin);
              require(cls.level == scenario::Level::noncontextual, "shared coin is noncontextual");
              const auto& mu = *cls.global_distribution;
              for (std::size_t c = 0; c < coin.cover.contexts.size(); ++c)
                  for (std::size_t mask = 0; mask < coin.tables[c].size(); ++mask) {
                      Rational sum(0);
                      for (std::size_t g = 0; g < mu.size(); ++g) {
                          std::size_t r = 0;
                          for (std::size_t j = 0; j < coin.cover.contexts[c].size(); ++j)
                              if ((g >> coin.cover.contexts[c][j]) & 1u) r |= std::size_t{1} << j;
                          if (r == mask) sum += mu[g];
                      }
                      require(sum == coin.tables[c][mask], "witness marginal reproduces the table");
                  }
          });

    h.run("algebra face: generated dimension 64 equals the matrix-rank oracle", 1.0, [] {
        auto observables = parity::pentagram_observables();
        require(hilbert::generated_algebra_dimension(observables) == 64, "dimension 64");
        auto group = pauli::subgroup_generate(observables);
        std::set<std::pair<std::uint64_t, std::uint64_t>> patterns;
        std::vector<std::vector<GaussianRational>> rows;
        for (const auto& g : group) {
            if (!patterns.insert({g.xbits, g.zbits}).second) continue;
            auto m = hilbert::to_matrix(g);
            std::vector<GaussianRational> row;
            for (std::size_t r = 0; r < m.dim(); ++r)
                for (std::size_t c = 0; c < m.dim(); ++c) row.push_back(m.at(r, c));
            rows.push_back(std::move(row));
        }
        require(complex_matrix_rank(std::move(rows)) == 64, "matrix rank oracle agrees");
    });

    h.run("geometry: 40 rays, 240 roots in 120 antipodal pairs, axioms verified on all 240^2 "
          "pairs, 8 simple roots, E8 under three functionals",
          60.0, [] {
              auto rays = roots::rays_from_contexts(parity::pentagram_contexts());
              require(rays.size() == 40, "forty distinct rays");
              auto system = roots::reflection_closure(rays);
              require(system.roots.size() == 240, "240 roots");
              std::set<roots::RootVector> canon;
              for (const auto& r : system.roots) canon.insert(roots::sign_canonical(r));
              require(canon.size() == 120, "120 antipodal pairs");
              require(roots::verify_root_system_axioms(system),
                      "root-system axioms verified exhaustively");
              for (long long t : {17LL, 19LL, 23LL}) {
                  auto graph = roots::coxeter_graph_with_parameter(system, t);
                  require(graph.simple_roots.size() == 8, "eight simple roots");
                  require(graph.classification == "E8", "diagram classifies as E8");
              }
          });

    h.run("colouring: exhaustive search over the enumerated bases is INFEASIBLE; basis count "
          "matches the frozen golden value",
          60.0, [] {
              auto rays = roots::rays_from_contexts(parity::pentagram_contexts());
              auto bases = roots::orthogonal_bases(rays);
              require(bases.size() == 25, "25 orthogonal bases (golden)");
              auto again = roots::orthogonal_bases(rays);
              require(bases == again, "basis enumeration is stable across runs");
              auto result = roots::colouring_search(rays, bases);
              require(!result.feasible, "no admissible colouring exists");
              require(result.solution_count == 0, "exhaustive count is zero");
              require(result.nodes_explored > 0, "search explored nodes");
          });

    h.run("position-momentum contradiction: valuation product +1 vs operator product -1; "
          "abelianised control +1/+1",
          0.1, [] {
              auto rep = weyl::clifton_contradiction();
              require(rep.func_value == 1 && rep.operator_value == -1, "verdict pair (+1,-1)");
              weyl::WeylWord ab = weyl::weyl_identity();
              for (const auto& w : rep.words) ab = weyl::weyl_multiply_abelian(ab, w);
              require(ab.is_scalar() && ab.phase.is_zero(), "abelianised control gives +1");
          });

    h.run("presheaf equivalences: pentagram sections empty; GHZ support minus the X context has "
          "8 families in the 4 quoted classes; coordinate-ring functor pointless; all three "
          "agree with the GF(2) verdicts",
          5.0, [] {
              auto [poset5, elements5] = presheaf::context_poset(parity::pentagram_contexts());
              auto spectral = presheaf::spectral_presheaf(elements5, poset5);
              bool empty5 = presheaf::global_sections(spectral).families.empty();
              require(empty5, "pentagram spectral presheaf has no global section");
              require(empty5 == !parity::decide(parity::mermin_system()).consistent,
                      "agrees with the parity verdict");

              auto ghz = hilbert::ghz_state(3);
              auto contexts = parity::ghz_contexts();
              auto [poset4, elements4] = presheaf::context_poset(contexts);
              bool empty4 =
                  presheaf::global_sections(
                      presheaf::state_supported_presheaf(elements4, poset4, ghz))
                      .families.empty();
              auto state_rep =
                  parity::decide(parity::state_dependent_system(ghz, contexts));
              require(empty4 && !state_rep.consistent, "state-dependent faces agree (both empty)");

              std::vector<hilbert::ContextSpec> reduced(contexts.begin() + 1, contexts.end());
              auto [poset3, elements3] = presheaf::context_poset(reduced);
              auto minus = presheaf::state_supported_presheaf(elements3, poset3, ghz);
              auto search = presheaf::global_sections(minus);
              require(search.families.size() == 8,
                      "eight compatible families without the X context");
              std::set<std::array<std::string, 3>> candidates;
              for (const auto& family : search.families) {
                  std::array<std::string, 3> xs;
                  for (std::size_t c = 0; c < 3; ++c) {
                      std::size_t e = 0;
                      for (std::size_t i = 0; i < poset3.size(); ++i)
                          if (poset3.elements[i] == "C" + std::to_string(c + 1)) e = i;
                      xs[c] = minus.stalks[e][family[e]].substr(1 + 2 * c, 1);
                  }
                  candidates.insert(xs);
              }
              std::set<std::array<std::string, 3>> want{
                  {"+", "+", "-"}, {"+", "-", "+"}, {"-", "+", "+"}, {"-", "-", "-"}};
              require(candidates == want,
                      "exactly the four quoted candidate sections at the removed context");
              auto reduced_rep = parity::decide(parity::state_dependent_system(ghz, reduced));
              require(reduced_rep.consistent &&
                          reduced_rep.valuations.size() == search.families.size(),
                      "family count matches the GF(2) solution count");

              auto [rposet, rings] = presheaf::ghz_coordinate_rings();
              bool pointless = presheaf::pspec_functor_points(rings, rposet).empty();
              require(pointless, "the coordinate-ring functor has no points");
              require(pointless == !state_rep.consistent, "prime-spectrum face agrees");
          });

    h.run("AvN search: exhaustive over phase-free commuting 3-qubit triples; every stabilisable "
          "triple yields parity inconsistency and strong contextuality",
          120.0, [] {
              // All 64 phase-free three-qubit operators.
              std::vector<pauli::PauliOp> ops;
              for (std::uint64_t x = 0; x < 8; ++x)
                  for (std::uint64_t z = 0; z < 8; ++z) {
                      pauli::PauliOp p;
                      p.n = 3;
                      p.xbits = x;
                      p.zbits = z;
                      p.phase = static_cast<int>(std::popcount(x & z)) % 4;
                      ops.push_back(p);
                  }
              std::size_t avn_found = 0, checked = 0, stabilisable = 0;
              std::map<std::vector<pauli::PauliOp>, std::pair<bool, bool>> cache;
              for (const auto& e : ops)
                  for (const auto& f : ops) {
                      if (!pauli::commutes(e, f)) continue;
                      for (const auto& g : ops) {
                          if (!pauli::commutes(e, g) || !pauli::commutes(f, g)) continue;
                          pauli::AvnTriple triple(e, f, g);
                          if (!pauli::is_avn_triple(triple).is_avn) continue;
                          ++avn_found;
                          auto subgroup = pauli::subgroup_generate({e, f, g});
                          std::set<std::pair<std::uint64_t, std::uint64_t>> patterns;
                          for (const auto& m : subgroup) patterns.insert({m.xbits, m.zbits});
                          if (patterns.size() != subgroup.size()) continue; // -1 inside
                          ++stabilisable;
                          auto it = cache.find(subgroup);
                          if (it == cache.end()) {
                              // A stabilised state: any nonzero column of the
                              // product of the generator projectors.
                              const std::size_t dim = 8;
                              auto proj = hilbert::ExactMatrix::identity(dim);
                              const GaussianRational half(Rational(BigInt(1), BigInt(2)));
                              for (const auto& gen : {e, f, g})
                                  proj = proj * (hilbert::ExactMatrix::identity(dim) +
                                                 hilbert::to_matrix(gen))
                                                    .scaled(half);
                              hilbert::ScaledVector state;
                              for (std::size_t col = 0; col < dim && state.coords.empty(); ++col) {
                                  std::vector<GaussianRational> v(dim);
                                  bool nonzero = false;
                                  for (std::size_t r = 0; r < dim; ++r) {
                                      v[r] = proj.at(r, col);
                                      nonzero = nonzero || !v[r].is_zero();
                                  }
                                  if (nonzero) state = hilbert::canonical_ray(
                                                   hilbert::ScaledVector{v, Rational(1)});
                              }
                              require(!state.coords.empty(), "stabilised state exists");
                              auto rep = scenario::avn_check({e, f, g}, state);
                              ++checked;
                              cache[subgroup] = {!rep.parity_report.consistent,
                                                 rep.strongly_contextual};
                              it = cache.find(subgroup);
                          }
                          require(it->second.first, "parity system inconsistent for AvN triple");
                          require(it->second.second, "model strongly contextual for AvN triple");
                      }
                  }
              require(avn_found > 0, "the AvN set is non-empty");
              require(stabilisable > 0, "some triples stabilise a common state");
              std::cout << "       (AvN triples: " << avn_found << ", with stabilised state: "
                        << stabilisable << ", distinct subgroups checked: " << checked << ")\n";
          });

    h.run("oracle invariants: 1000 matrix-oracle Pauli pairs; 200 LP instances against vertex "
          "enumeration; certificates re-verify",
          60.0, [] {
              Rng rng(0xacce97);
              for (int iter = 0; iter < 1000; ++iter) {
                  auto p = random_op(rng, 3), q = random_op(rng, 3);
                  auto mp = hilbert::to_matrix(p), mq = hilbert::to_matrix(q);
                  require(hilbert::to_matrix(pauli::multiply(p, q)) == mp * mq,
                          "multiply matches the matrix oracle");
                  require(pauli::commutes(p, q) == (mp * mq == mq * mp),
                          "commutes matches the matrix commutator");
              }
              int feasible_seen = 0, infeasible_seen = 0;
              for (int iter = 0; iter < 200; ++iter) {
                  LinearSystem sys;
                  sys.vars = 1 + rng.next(8);
                  std::size_t m = 1 + rng.next(4);
                  for (std::size_t i = 0; i < m; ++i) {
                      std::vector<Rational> row;
                      for (std::size_t j = 0; j < sys.vars; ++j)
                          row.emplace_back(BigInt(rng.next_int(-3, 3)), BigInt(1 + rng.next(3)));
                      sys.add_equality(std::move(row),
                                       Rational(BigInt(rng.next_int(-4, 4)), BigInt(1 + rng.next(2))));
                  }
                  auto res = lp_feasible(sys);
                  require(res.feasible == feasible_by_vertex_enumeration(sys),
                          "LP agrees with vertex enumeration");
                  (res.feasible ? feasible_seen : infeasible_seen)++;
              }
              require(feasible_seen > 0 && infeasible_seen > 0, "both outcomes sampled");
              for (int iter = 0; iter < 200; ++iter) {
                  Gf2System sys;
                  sys.vars = 2 + rng.next(10);
                  std::size_t rows = 1 + rng.next(8);
                  for (std::size_t r = 0; r < rows; ++r) {
                      BitVec row(sys.vars);
                      for (std::size_t j = 0; j < sys.vars; ++j) row.set(j, rng.next(2));
                      sys.add_row(row, rng.next(2));
                  }
                  auto res = gf2_solve(sys);
                  if (!res.consistent())
                      require(verify_certificate(sys, *res.certificate),
                              "certificate re-verifies");
              }
          });

    std::cout << "ACCEPTANCE: " << (h.index - h.failures) << "/" << h.index << " criteria passed\n";
    return h.failures == 0 ? 0 : 1;
}
