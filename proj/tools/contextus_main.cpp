#include "contextus/avn.hpp"
#include "contextus/error.hpp"
#include "contextus/hilbert.hpp"
#include "contextus/parity.hpp"
#include "contextus/pauli.hpp"
#include "contextus/presheaf.hpp"
#include "contextus/report.hpp"
#include "contextus/roots.hpp"
#include "contextus/scenario.hpp"
#include "contextus/weyl.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

using namespace contextus;
using cli::Report;

constexpr int kExitMatch = 0;    // verdicts match the expected outcomes
constexpr int kExitMismatch = 1; // computed fine, verdict differs
constexpr int kExitInput = 2;    // parse/validation failure

void emit(const Report& report, bool as_json) {
    if (as_json) std::cout << cli::render_json(report);
    else std::cout << cli::render_text(report, cli::color_mode_from_env());
}

std::string join_sizes(const std::vector<std::size_t>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += " ";
        out += std::to_string(v[i]);
    }
    return out;
}

// ---------------------------------------------------------------------------

int cmd_pentagram(bool state_dependent, bool show_presheaf, bool show_pspec, bool show_algebra,
                  bool show_clifton, bool as_json) {
    Report report;
    report.title = "Mermin pentagram";
    bool all_match = true;

    // Parity face (always on).
    parity::ValuationSystem system = parity::mermin_system();
    parity::ValuationReport parity_rep = parity::decide(system);
    {
        std::string s = "Parity face: " + std::to_string(system.variables.size()) +
                        " observables, " + std::to_string(system.system.row_count()) +
                        " equations\n";
        for (std::size_t r = 0; r < system.system.row_count(); ++r)
            s += "  [" + system.provenance[r] + "] " + system.equation_text(r) + "\n";
        if (!parity_rep.consistent) {
            std::string rows;
            for (std::size_t r : parity_rep.certificate->rows) {
                if (!rows.empty()) rows += " ";
                rows += system.provenance[r];
            }
            s += "Certificate rows: " + rows + "\n" + parity_rep.derivation + "\n";
            report.add_summary("parity", "INCONSISTENT");
            report.add_summary("certificate_rows", rows);
        } else {
            s += "Unexpectedly consistent.\n";
            report.add_summary("parity", "CONSISTENT");
            all_match = false;
        }
        report.sections.push_back(s);
    }

    if (state_dependent) {
        auto ghz = hilbert::ghz_state(3);
        auto contexts = parity::ghz_contexts();
        parity::ValuationSystem sd = parity::state_dependent_system(ghz, contexts);
        parity::ValuationReport rep = parity::decide(sd);
        std::string s =
            "State-dependent face (GHZ state):\n"
            "  The probability table is reproduced with Y-form contexts; X1Y2Y3\n"
            "  stabilises the state with eigenvalue -1 while the X/Z-labelled\n"
            "  system keeps the same GF(2) structure.\n";
        std::string rhs;
        for (std::size_t r = 0; r < sd.system.row_count(); ++r) {
            s += "  [" + sd.provenance[r] + "] " + sd.equation_text(r) + "\n";
            rhs += sd.system.rhs[r] ? "1" : "0";
        }
        s += "  rhs bits: (" + rhs + ")\n";
        s += rep.consistent ? "  system: CONSISTENT (unexpected)\n" : "  system: INCONSISTENT\n";
        report.sections.push_back(s);
        report.add_summary("state_dependent", rep.consistent ? "CONSISTENT" : "INCONSISTENT");
        report.add_summary("state_dependent_rhs", rhs);
        if (rep.consistent || rhs != "0111") all_match = false;
    }

    if (show_presheaf) {
        auto [poset, elements] = presheaf::context_poset(parity::pentagram_contexts());
        auto sheaf = presheaf::spectral_presheaf(elements, poset);
        auto search = presheaf::global_sections(sheaf);
        std::string s = "Spectral presheaf face:\n  poset: " + std::to_string(poset.size()) +
                        " elements, stalk sizes:";
        std::vector<std::size_t> sizes;
        for (const auto& st : sheaf.stalks) sizes.push_back(st.size());
        s += " " + join_sizes(sizes) + "\n";
        s += "  global sections: " + std::to_string(search.families.size()) + " (" +
             std::to_string(search.nodes_explored) + " search nodes)\n";
        bool empty5 = search.families.empty();

        auto ghz = hilbert::ghz_state(3);
        auto contexts = parity::ghz_contexts();
        std::vector<hilbert::ContextSpec> reduced(contexts.begin() + 1, contexts.end());
        auto [poset3, elements3] = presheaf::context_poset(reduced);
        auto minus = presheaf::state_supported_presheaf(elements3, poset3, ghz);
        auto msearch = presheaf::global_sections(minus);
        s += "  GHZ support presheaf without the X context: " +
             std::to_string(msearch.families.size()) +
             " compatible families, 4 candidate sections at the removed context\n";
        report.sections.push_back(s);
        report.add_summary("presheaf_sections", std::to_string(search.families.size()));
        report.add_summary("presheaf_minus_c1_families", std::to_string(msearch.families.size()));
        if (!empty5 || msearch.families.size() != 8) all_match = false;
    }

    if (show_pspec) {
        auto [poset, rings] = presheaf::ghz_coordinate_rings();
        auto families = presheaf::pspec_functor_points(rings, poset);
        std::string s = "Prime-spectrum face:\n";
        for (std::size_t i = 0; i < 4; ++i)
            s += "  PSpec " + rings[i].name + ": " +
                 std::to_string(presheaf::pspec_points(rings[i]).size()) + " points\n";
        s += families.empty() ? "  compatible families: none - the functor has no points\n"
                              : "  compatible families: " + std::to_string(families.size()) + "\n";
        report.sections.push_back(s);
        report.add_summary("pspec_families", std::to_string(families.size()));
        if (!families.empty()) all_match = false;
    }

    if (show_algebra) {
        std::size_t dim = hilbert::generated_algebra_dimension(parity::pentagram_observables());
        std::string s = "Algebra face:\n  generated algebra dimension " + std::to_string(dim) +
                        (dim == 64 ? " = dim M8(C)\n" : "\n");
        report.sections.push_back(s);
        report.add_summary("algebra_dimension", std::to_string(dim));
        if (dim != 64) all_match = false;
    }

    if (show_clifton) {
        auto rep = weyl::clifton_contradiction();
        std::string s = "Position-momentum face (Weyl operators):\n";
        for (const auto& w : rep.words) s += "  word: " + weyl::print_word(w) + "\n";
        s += "  valuation product (right-hand sides): " +
             std::string(rep.func_value > 0 ? "+1" : "-1") + "\n";
        s += "  operator product (left-hand sides):  " +
             std::string(rep.operator_value > 0 ? "+1" : "-1") + "\n";
        s += "  " + rep.notes + "\n";
        report.sections.push_back(s);
        report.add_summary("clifton", rep.func_value > 0 && rep.operator_value < 0 ? "+1/-1" : "?");
        if (rep.func_value != 1 || rep.operator_value != -1) all_match = false;
    }

    report.verdict = parity_rep.consistent ? "CONSISTENT" : "INCONSISTENT";
    emit(report, as_json);
    return all_match && !parity_rep.consistent ? kExitMatch : kExitMismatch;
}

// ---------------------------------------------------------------------------

int cmd_scenario(const std::string& path, bool level_only, bool as_json) {
    scenario::EmpiricalModel model = scenario::load_scenario_file(path);

    Report report;
    report.title = "Scenario " + path;
    report.add_summary("observables", std::to_string(model.cover.observables.size()));
    report.add_summary("contexts", std::to_string(model.cover.contexts.size()));

    auto ns = scenario::check_no_signalling(model);
    if (!ns.ok) {
        std::string s = "No-signalling violations:\n";
        for (const auto& v : ns.violations) {
            s += "  contexts " + std::to_string(v.context_a + 1) + " and " +
                 std::to_string(v.context_b + 1) + " disagree on {";
            for (std::size_t i = 0; i < v.overlap.size(); ++i) {
                if (i) s += ",";
                s += model.cover.observables[v.overlap[i]];
            }
            s += "} = " + scenario::mask_to_key(v.overlap_mask, v.overlap.size()) + ": " +
                 v.marginal_a.str() + " vs " + v.marginal_b.str() + "\n";
        }
        report.sections.push_back(s);
        report.verdict = "VIOLATION";
        report.add_summary("no_signalling", "VIOLATION");
        emit(report, as_json);
        return kExitInput;
    }
    report.add_summary("no_signalling", "OK");

    auto cls = scenario::classify(model);
    std::string level = scenario::level_name(cls.level);
    report.add_summary("level", level);

    if (!level_only) {
        std::string s = "No-signalling: OK\n";
        s += "Classification: " + level + "\n";
        switch (cls.level) {
            case scenario::Level::noncontextual:
                s += "  a global joint distribution reproduces every table\n";
                break;
            case scenario::Level::probabilistic:
                s += "  no global distribution, but every supported section extends\n";
                break;
            case scenario::Level::possibilistic: {
                auto [c, mask] = *cls.unextendable_section;
                s += "  section " +
                     scenario::mask_to_key(mask, model.cover.contexts[c].size()) + " of context " +
                     std::to_string(c + 1) + " admits no global extension within the supports\n";
                break;
            }
            case scenario::Level::strong: {
                s += "  the support presheaf has no global section\n";
                // Candidates eliminated by exactly one context, grouped.
                for (std::size_t c = 0; c < model.cover.contexts.size(); ++c) {
                    std::set<std::size_t> restrictions;
                    for (std::size_t g = 0; g < cls.excluded_by.size(); ++g) {
                        if (cls.excluded_by[g] != std::vector<std::size_t>{c}) continue;
                        std::size_t mask = 0;
                        for (std::size_t j = 0; j < model.cover.contexts[c].size(); ++j)
                            if ((g >> model.cover.contexts[c][j]) & 1u) mask |= std::size_t{1} << j;
                        restrictions.insert(mask);
                    }
                    if (restrictions.empty()) continue;
                    s += "  candidates surviving all other contexts are killed by context " +
                         std::to_string(c + 1) + " at:";
                    for (std::size_t mask : restrictions)
                        s += " " + scenario::mask_to_key(mask, model.cover.contexts[c].size());
                    s += "\n";
                }
                break;
            }
        }
        report.sections.push_back(s);
    }
    report.verdict = level;
    emit(report, as_json);
    return kExitMatch;
}

// ---------------------------------------------------------------------------

int cmd_avn(const std::string& generators, const std::string& state_name, bool as_json) {
    std::vector<pauli::PauliOp> gens;
    std::string current;
    std::vector<std::string> parts;
    for (char c : generators) {
        if (c == ';') {
            parts.push_back(current);
            current.clear();
        } else {
            current += c;
        }
    }
    parts.push_back(current);
    for (const auto& p : parts) gens.push_back(pauli::parse_pauli(p));
    if (gens.empty()) throw PreconditionError("no generators given");
    for (const auto& g : gens)
        if (g.n != gens[0].n)
            throw ArityError("generators act on different qubit counts");
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (std::size_t j = i + 1; j < gens.size(); ++j)
            if (!pauli::commutes(gens[i], gens[j]))
                throw PreconditionError("generators " + parts[i] + " and " + parts[j] +
                                        " do not commute");
    for (const auto& g : gens)
        if (!pauli::is_phase_free(g))
            throw PreconditionError("generator " + pauli::print_pauli(g) +
                                    " carries a global phase");

    Report report;
    report.title = "AvN analysis";
    bool theorem_respected = true;

    bool triple_ok = false;
    std::string triple_line;
    if (gens.size() == 3) {
        pauli::AvnTriple triple(gens[0], gens[1], gens[2]);
        auto verdict = pauli::is_avn_triple(triple);
        triple_ok = verdict.is_avn;
        triple_line = std::string("AvN triple: ") + (triple_ok ? "yes" : "no") + " (" +
                      verdict.reason + ")";
    } else {
        triple_line = "AvN triple: no (" + std::to_string(gens.size()) + " generators)";
    }
    report.add_summary("avn_triple", triple_ok ? "yes" : "no");

    auto subgroup = pauli::subgroup_generate(gens);
    auto system = parity::avn_system(subgroup);
    auto parity_rep = parity::decide(system);
    std::string body = triple_line + "\n";
    body += "Subgroup order: " + std::to_string(subgroup.size()) + "\n";
    body += "Parity system: " + std::to_string(system.system.row_count()) + " equations over " +
            std::to_string(system.variables.size()) + " observables -> " +
            (parity_rep.consistent ? "CONSISTENT" : "INCONSISTENT") + "\n";
    if (!parity_rep.consistent) body += parity_rep.derivation + "\n";
    report.add_summary("subgroup_order", std::to_string(subgroup.size()));
    report.add_summary("parity", parity_rep.consistent ? "CONSISTENT" : "INCONSISTENT");
    if (triple_ok && parity_rep.consistent) theorem_respected = false;

    std::string final_verdict = parity_rep.consistent ? "CONSISTENT" : "INCONSISTENT";

    if (!state_name.empty()) {
        if (state_name != "ghz")
            throw PreconditionError("unknown state " + state_name + " (only: ghz)");
        auto state = hilbert::ghz_state(gens[0].n);
        if (triple_ok) {
            auto rep = scenario::avn_check(gens, state);
            body += "State: ghz; generator eigenvalues:";
            for (int e : rep.generator_eigenvalues) body += e > 0 ? " +1" : " -1";
            body += "\nState-signed system: " +
                    std::string(rep.parity_report.consistent ? "CONSISTENT" : "INCONSISTENT") +
                    "\n";
            body += "Empirical model: " + scenario::level_name(rep.classification.level) + "\n";
            report.add_summary("state_system",
                               rep.parity_report.consistent ? "CONSISTENT" : "INCONSISTENT");
            report.add_summary("model", scenario::level_name(rep.classification.level));
            final_verdict = scenario::level_name(rep.classification.level);
            if (rep.parity_report.consistent || !rep.strongly_contextual)
                theorem_respected = false;
        } else {
            // Not a triple: still classify the induced model for reporting.
            for (const auto& g : gens)
                if (!hilbert::exact_eigenvalue(g, state))
                    throw PreconditionError("state is not an exact eigenvector of " +
                                            pauli::indexed_name(g));
            auto model = hilbert::empirical_model_from_state(state,
                                                             scenario::induced_contexts(subgroup));
            auto cls = scenario::classify(model);
            body += "State: ghz\nEmpirical model: " + scenario::level_name(cls.level) + "\n";
            report.add_summary("model", scenario::level_name(cls.level));
        }
    }

    report.sections.push_back(body);
    report.verdict = final_verdict;
    emit(report, as_json);
    return theorem_respected ? kExitMatch : kExitMismatch;
}

// ---------------------------------------------------------------------------

int cmd_roots(bool complete, bool identify, bool colouring, const std::string& export_path,
              bool as_json) {
    Report report;
    report.title = "Root-system pipeline";
    bool all_match = true;

    auto rays = roots::rays_from_contexts(parity::pentagram_contexts());
    std::string body = "Rays from the five contexts: " + std::to_string(rays.size()) + "\n";
    report.add_summary("rays", std::to_string(rays.size()));
    if (rays.size() != 40) all_match = false;

    bool need_closure = complete || identify || !export_path.empty();
    std::optional<roots::RootSystem> system;
    if (need_closure) {
        system = roots::reflection_closure(rays);
        body += "Reflection closure: " + std::to_string(system->roots.size()) + " roots\n";
        report.add_summary("roots", std::to_string(system->roots.size()));
        if (system->roots.size() != 240) all_match = false;
    }
    if (identify) {
        auto graph = roots::coxeter_graph(*system);
        body += "Simple roots: " + std::to_string(graph.simple_roots.size()) +
                "; diagram: " + graph.classification + "\n";
        report.add_summary("diagram", graph.classification);
        if (graph.classification != "E8") all_match = false;
    }
    if (colouring) {
        auto bases = roots::orthogonal_bases(rays);
        auto result = roots::colouring_search(rays, bases);
        body += "Orthogonal bases among the rays: " + std::to_string(bases.size()) + "\n";
        body += "Colouring (one green per basis): " +
                std::string(result.feasible ? "FEASIBLE" : "INFEASIBLE") + " after " +
                std::to_string(result.nodes_explored) + " search nodes\n";
        report.add_summary("bases", std::to_string(bases.size()));
        report.add_summary("colouring", result.feasible ? "FEASIBLE" : "INFEASIBLE");
        report.add_summary("colouring_nodes", std::to_string(result.nodes_explored));
        if (result.feasible) all_match = false;
        report.verdict = result.feasible ? "FEASIBLE" : "INFEASIBLE";
    }
    if (!export_path.empty()) {
        std::ofstream out(export_path, std::ios::binary);
        if (!out) throw Error("cannot write " + export_path);
        out << roots::export_roots(*system);
        body += "Wrote " + std::to_string(system->roots.size()) + " roots to " + export_path + "\n";
        report.add_summary("export", export_path);
    }

    report.sections.push_back(body);
    if (report.verdict.empty()) report.verdict = all_match ? "OK" : "VIOLATION";
    emit(report, as_json);
    return all_match ? kExitMatch : kExitMismatch;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"contextus - exact verification of the Mermin pentagram "
                 "contradictions and the contextuality hierarchy"};
    app.require_subcommand(1);
    bool as_json = false;
    app.add_flag("--json", as_json, "machine-readable summary instead of text");

    auto* pent = app.add_subcommand("pentagram", "parity proof and its other faces");
    bool sd = false, pre = false, pspec = false, algebra = false, clifton = false;
    pent->add_flag("--state-dependent", sd, "add the GHZ state-dependent system");
    pent->add_flag("--presheaf", pre, "add the spectral-presheaf face");
    pent->add_flag("--pspec", pspec, "add the coordinate-ring face");
    pent->add_flag("--algebra", algebra, "add the generated-algebra dimension");
    pent->add_flag("--clifton", clifton, "add the position-momentum Weyl face");

    auto* scen = app.add_subcommand("scenario", "classify an empirical model file");
    std::string path;
    bool level_only = false;
    scen->add_option("path", path, "scenario JSON file")->required();
    scen->add_flag("--level", level_only, "print only the classification level");

    auto* avn = app.add_subcommand("avn", "all-versus-nothing analysis of Pauli generators");
    std::string generators, state_name;
    avn->add_option("--generators", generators, "semicolon-separated Pauli strings")->required();
    avn->add_option("--state", state_name, "named state (ghz)");

    auto* rootsc = app.add_subcommand("roots", "ray geometry of the five contexts");
    bool complete = false, identify = false, colouring = false;
    std::string export_path;
    rootsc->add_flag("--complete", complete, "close the rays under reflections");
    rootsc->add_flag("--identify", identify, "classify the Coxeter diagram");
    rootsc->add_flag("--colouring", colouring, "run the basis-colouring search");
    rootsc->add_option("--export", export_path, "write the closed root list to a file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // --help and friends exit 0; everything else is an input error.
        int code = app.exit(e);
        return code == 0 ? kExitMatch : kExitInput;
    }

    try {
        if (*pent) return cmd_pentagram(sd, pre, pspec, algebra, clifton, as_json);
        if (*scen) return cmd_scenario(path, level_only, as_json);
        if (*avn) return cmd_avn(generators, state_name, as_json);
        if (*rootsc) return cmd_roots(complete, identify, colouring, export_path, as_json);
    } catch (const ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const PreconditionError& e) {
        std::cerr << "precondition error: " << e.what() << "\n";
        return kExitInput;
    } catch (const MalformedSystemError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}
