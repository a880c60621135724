#include "contextus/avn.hpp"
#include "contextus/error.hpp"
#include "contextus/hilbert.hpp"
#include "contextus/parity.hpp"
#include "contextus/scenario.hpp"

#include <doctest.h>

#include <array>
#include <set>

using namespace contextus;
using scenario::EmpiricalModel;
using scenario::Level;

namespace {

EmpiricalModel ghz_model() {
    return hilbert::empirical_model_from_state(hilbert::ghz_state(3), parity::ghz_contexts());
}

} // namespace

TEST_CASE("no-signalling holds for the GHZ model and fails for the defect model") {
    CHECK(scenario::check_no_signalling(ghz_model()).ok);

    auto bad = scenario::signalling_defect_model();
    auto report = scenario::check_no_signalling(bad);
    CHECK(!report.ok);
    REQUIRE(report.violations.size() >= 1);
    const auto& v = report.violations.front();
    CHECK(bad.cover.observables[v.overlap.at(0)] == "X1");
    CHECK(v.marginal_a != v.marginal_b);

    // A single-context model is vacuously fine.
    EmpiricalModel single;
    single.cover = scenario::MeasurementCover::make({"A", "B"}, {{"A", "B"}});
    single.tables = {{Rational(1), Rational(0), Rational(0), Rational(0)}};
    CHECK(scenario::check_no_signalling(single).ok);
}

TEST_CASE("support presheaf of the GHZ model") {
    auto e = ghz_model();
    auto sp = scenario::support_presheaf(e);

    // Sections at the first context: the four supported assignments.
    std::vector<std::size_t> c1 = e.cover.contexts[0];
    std::sort(c1.begin(), c1.end());
    REQUIRE(sp.sections.count(c1) == 1);
    CHECK(sp.sections.at(c1).size() == 4);

    // Both outcomes possible for a single observable.
    std::vector<std::size_t> x1{e.cover.observable_index("X1")};
    CHECK(sp.sections.at(x1).size() == 2);

    CHECK(sp.restriction_closed());
    CHECK(sp.global_sections.empty()); // no global section at all

    // Deterministic model: singleton sections everywhere.
    auto det = hilbert::empirical_model_from_state(
        hilbert::basis_state(3, 0),
        {hilbert::ContextSpec({pauli::z_at(3, 0), pauli::z_at(3, 1)})});
    auto spd = scenario::support_presheaf(det);
    for (const auto& [u, secs] : spd.sections) CHECK(secs.size() == 1);
    CHECK(spd.global_sections.size() == 1);
}

TEST_CASE("support presheaf refuses signalling models") {
    CHECK_THROWS_AS(scenario::support_presheaf(scenario::signalling_defect_model()),
                    PreconditionError);
}

TEST_CASE("GHZ model is strongly contextual with the four-class elimination trace") {
    auto e = ghz_model();
    auto cls = scenario::classify(e);
    CHECK(cls.level == Level::strong);

    // Survivors of contexts C2..C4 are eliminated by C1 alone: eight global
    // assignments, exactly four distinct restrictions to C1.
    std::vector<std::size_t> survivors;
    for (std::size_t g = 0; g < cls.excluded_by.size(); ++g)
        if (cls.excluded_by[g] == std::vector<std::size_t>{0}) survivors.push_back(g);
    CHECK(survivors.size() == 8);

    std::set<std::array<int, 3>> xparts;
    auto ix = [&](const char* n) { return e.cover.observable_index(n); };
    for (std::size_t g : survivors) {
        std::array<int, 3> xs{(g >> ix("X1")) & 1u ? -1 : 1, (g >> ix("X2")) & 1u ? -1 : 1,
                              (g >> ix("X3")) & 1u ? -1 : 1};
        CHECK(xs[0] * xs[1] * xs[2] == -1); // all violate the C1 parity
        xparts.insert(xs);
    }
    CHECK(xparts.size() == 4);
    CHECK(xparts.count({1, 1, -1}) == 1);
    CHECK(xparts.count({1, -1, 1}) == 1);
    CHECK(xparts.count({-1, 1, 1}) == 1);
    CHECK(xparts.count({-1, -1, -1}) == 1);

    // Hierarchy chain: strong implies possibilistic implies probabilistic.
    auto lp = lp_feasible(scenario::global_distribution_system(e));
    CHECK(!lp.feasible);
    // Some supported section has no global-support extension (here: all).
    auto sp = scenario::support_presheaf(e);
    CHECK(sp.global_sections.empty());
}

TEST_CASE("independent infeasibility oracle for the GHZ marginal system") {
    // Strong contextuality forces every global-assignment variable to zero
    // through some zero-probability equality, contradicting normalisation.
    auto e = ghz_model();
    auto cls = scenario::classify(e);
    for (std::size_t g = 0; g < cls.excluded_by.size(); ++g) CHECK(!cls.excluded_by[g].empty());
    auto sys = scenario::global_distribution_system(e);
    CHECK(sys.vars == 64);
    CHECK(!lp_feasible(sys).feasible);
}

TEST_CASE("PR box is strongly contextual, the shared coin is noncontextual") {
    auto pr = scenario::pr_box_model();
    CHECK(scenario::check_no_signalling(pr).ok);
    CHECK(scenario::classify(pr).level == Level::strong);

    auto coin = scenario::shared_coin_model();
    CHECK(scenario::check_no_signalling(coin).ok);
    auto cls = scenario::classify(coin);
    CHECK(cls.level == Level::noncontextual);
    REQUIRE(cls.global_distribution.has_value());

    // The witness marginalises back to every table exactly.
    const auto& mu = *cls.global_distribution;
    for (std::size_t c = 0; c < coin.cover.contexts.size(); ++c) {
        for (std::size_t mask = 0; mask < coin.tables[c].size(); ++mask) {
            Rational sum(0);
            for (std::size_t g = 0; g < mu.size(); ++g) {
                std::size_t r = 0;
                for (std::size_t j = 0; j < coin.cover.contexts[c].size(); ++j)
                    if ((g >> coin.cover.contexts[c][j]) & 1u) r |= std::size_t{1} << j;
                if (r == mask) sum += mu[g];
            }
            CHECK(sum == coin.tables[c][mask]);
        }
    }
}

TEST_CASE("a full-support nonlocal box classifies as probabilistic") {
    // Three parts noise on a PR box: supported cells 7/16, the rest 1/16.
    // Full support means every section extends, but the correlations still
    // admit no global distribution.
    EmpiricalModel e;
    e.cover = scenario::MeasurementCover::make(
        {"a0", "a1", "b0", "b1"}, {{"a0", "b0"}, {"a0", "b1"}, {"a1", "b0"}, {"a1", "b1"}});
    const Rational heavy(BigInt(7), BigInt(16)), light(BigInt(1), BigInt(16));
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) {
            std::vector<Rational> table(4, light);
            for (std::size_t mask = 0; mask < 4; ++mask) {
                bool a = mask & 1u, b = (mask >> 1) & 1u;
                if ((a != b) == (x == 1 && y == 1)) table[mask] = heavy;
            }
            e.tables.push_back(std::move(table));
        }
    e.validate();
    REQUIRE(scenario::check_no_signalling(e).ok);
    auto cls = scenario::classify(e);
    CHECK(cls.level == Level::probabilistic);
    REQUIRE(cls.farkas.has_value());
    // The support presheaf is all of E(X) here.
    auto sp = scenario::support_presheaf(e);
    CHECK(sp.global_sections.size() == 16);
}

TEST_CASE("a model with an unextendable supported section classifies as possibilistic") {
    // Two parties, two settings each; the (+,+) section of the first
    // context is supported yet extends to no global assignment within the
    // supports, while other global sections do exist.
    EmpiricalModel e;
    e.cover = scenario::MeasurementCover::make(
        {"a0", "a1", "b0", "b1"}, {{"a0", "b0"}, {"a0", "b1"}, {"a1", "b0"}, {"a1", "b1"}});
    auto r = [](long long n, long long d) { return Rational(BigInt(n), BigInt(d)); };
    // Row order follows the mask convention: ++, -+, +-, --.
    e.tables = {
        {r(1, 8), r(1, 16), r(1, 16), r(3, 4)}, // a0 b0
        {r(0, 1), r(3, 4), r(3, 16), r(1, 16)}, // a0 b1
        {r(0, 1), r(3, 16), r(3, 4), r(1, 16)}, // a1 b0
        {r(1, 2), r(1, 4), r(1, 4), r(0, 1)},   // a1 b1
    };
    e.validate();
    REQUIRE(scenario::check_no_signalling(e).ok);
    auto cls = scenario::classify(e);
    CHECK(cls.level == Level::possibilistic);
    REQUIRE(cls.unextendable_section.has_value());
    auto sp = scenario::support_presheaf(e);
    CHECK(!sp.global_sections.empty()); // not strong

    // Chain property: possibilistic implies no global distribution.
    CHECK(!lp_feasible(scenario::global_distribution_system(e)).feasible);

    // And the named witness really fails to extend.
    auto [c, mask] = *cls.unextendable_section;
    for (std::size_t g : sp.global_sections) {
        std::size_t restriction = 0;
        for (std::size_t j = 0; j < e.cover.contexts[c].size(); ++j)
            if ((g >> e.cover.contexts[c][j]) & 1u) restriction |= std::size_t{1} << j;
        CHECK(restriction != mask);
    }
}

TEST_CASE("classification is invariant under exact state rescaling") {
    auto ghz = hilbert::ghz_state(3);
    hilbert::ScaledVector scaled;
    for (const auto& c : ghz.coords)
        scaled.coords.push_back(c * GaussianRational(Rational(3), Rational(2)));
    scaled.scale2 = ghz.scale2 * Rational(BigInt(13), BigInt(4));
    auto a = hilbert::empirical_model_from_state(ghz, parity::ghz_contexts());
    auto b = hilbert::empirical_model_from_state(scaled, parity::ghz_contexts());
    CHECK(a.tables == b.tables);
    CHECK(scenario::classify(b).level == Level::strong);
}

TEST_CASE("scenario JSON round trip") {
    auto e = ghz_model();
    std::string json = scenario::scenario_to_json(e);
    auto parsed = scenario::parse_scenario(json);
    CHECK(parsed.cover.observables == e.cover.observables);
    CHECK(parsed.cover.contexts == e.cover.contexts);
    CHECK(parsed.tables == e.tables);

    // UTF-8 minus signs are accepted in row keys.
    auto utf8 = scenario::parse_scenario(R"({
      "observables": ["A", "B"],
      "contexts": [["A", "B"]],
      "model": [ { "context": 0, "rows": { "++": "1/2", "−−": "1/2" } } ]
    })");
    CHECK(utf8.tables[0][3] == Rational(BigInt(1), BigInt(2)));
}

TEST_CASE("scenario JSON diagnostics") {
    CHECK_THROWS_AS(scenario::parse_scenario("{ not json"), ParseError);
    // Decimal probabilities are rejected: exactness is the point.
    CHECK_THROWS_AS(scenario::parse_scenario(R"({
      "observables": ["A"], "contexts": [["A"]],
      "model": [ { "context": 0, "rows": { "+": 0.5, "-": 0.5 } } ]
    })"),
                    MalformedSystemError);
    // Tables must sum to one.
    CHECK_THROWS_AS(scenario::parse_scenario(R"({
      "observables": ["A"], "contexts": [["A"]],
      "model": [ { "context": 0, "rows": { "+": "1/3" } } ]
    })"),
                    MalformedSystemError);
    // Assignment keys must match the context width.
    CHECK_THROWS_AS(scenario::parse_scenario(R"({
      "observables": ["A"], "contexts": [["A"]],
      "model": [ { "context": 0, "rows": { "++": "1" } } ]
    })"),
                    ParseError);
    // Contexts must cover every observable.
    CHECK_THROWS_AS(scenario::parse_scenario(R"({
      "observables": ["A", "B"], "contexts": [["A"]],
      "model": [ { "context": 0, "rows": { "+": "1" } } ]
    })"),
                    PreconditionError);
}

TEST_CASE("avn_check: GHZ triple against the GHZ state") {
    auto gens = std::vector<pauli::PauliOp>{pauli::parse_pauli("XXX"), pauli::parse_pauli("XYY"),
                                            pauli::parse_pauli("YXY")};
    auto rep = scenario::avn_check(gens, hilbert::ghz_state(3));
    CHECK(rep.triple.is_avn);
    CHECK(rep.subgroup_order == 8);
    CHECK(rep.generator_eigenvalues == std::vector<int>{1, -1, -1});
    CHECK(!rep.parity_report.consistent);
    CHECK(rep.strongly_contextual);
    CHECK(rep.classification.level == Level::strong);
}

TEST_CASE("avn_check: the stabilised eigenstate of the triple works too") {
    // The +1 joint eigenstate of (XXX, XYY, YXY) is (|001> + |110>)/sqrt(2).
    hilbert::ScaledVector v;
    v.coords.assign(8, GaussianRational());
    v.coords[1] = GaussianRational(1);
    v.coords[6] = GaussianRational(1);
    v.scale2 = Rational(2);
    auto gens = std::vector<pauli::PauliOp>{pauli::parse_pauli("XXX"), pauli::parse_pauli("XYY"),
                                            pauli::parse_pauli("YXY")};
    auto rep = scenario::avn_check(gens, v);
    CHECK(rep.generator_eigenvalues == std::vector<int>{1, 1, 1});
    CHECK(!rep.parity_report.consistent);
    CHECK(rep.strongly_contextual);
}

TEST_CASE("avn_check rejects bad inputs") {
    auto ghz = hilbert::ghz_state(3);
    // Not a triple: condition (2) fails.
    CHECK_THROWS_AS(scenario::avn_check({pauli::parse_pauli("XI"), pauli::parse_pauli("IX"),
                                         pauli::parse_pauli("XX")},
                                        hilbert::basis_state(2, 0)),
                    PreconditionError);
    // Wrong generator count.
    CHECK_THROWS_AS(scenario::avn_check({pauli::parse_pauli("XXX")}, ghz), PreconditionError);
    // State not an eigenvector of a generator.
    CHECK_THROWS_AS(scenario::avn_check({pauli::parse_pauli("XXX"), pauli::parse_pauli("XYY"),
                                         pauli::parse_pauli("YXY")},
                                        hilbert::basis_state(3, 0)),
                    PreconditionError);
}
