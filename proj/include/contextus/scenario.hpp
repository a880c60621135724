#pragma once

#include "contextus/lp.hpp"
#include "contextus/rational.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace contextus::scenario {

// Finite set of observables with a family of jointly-measurable contexts
// covering it. Outcomes are {+1, -1} throughout.
struct MeasurementCover {
    std::vector<std::string> observables;
    std::vector<std::vector<std::size_t>> contexts; // indices into observables
    std::vector<bool> maximal;                      // no other context contains it

    static MeasurementCover make(std::vector<std::string> observables,
                                 std::vector<std::vector<std::string>> contexts);
    std::size_t observable_index(const std::string& name) const;
};

// Assignments over an (ordered) observable list are encoded as bit masks:
// bit j set means the j-th observable takes outcome -1.
std::string mask_to_key(std::size_t mask, std::size_t width);
std::size_t key_to_mask(const std::string& key, std::size_t width);

struct EmpiricalModel {
    MeasurementCover cover;
    // tables[c][mask] = exact probability of that assignment in context c.
    std::vector<std::vector<Rational>> tables;

    // Checks table shapes, nonnegativity and exact normalisation.
    void validate() const;
    const Rational& probability(std::size_t context, std::size_t mask) const {
        return tables[context][mask];
    }
};

struct SignallingViolation {
    std::size_t context_a = 0;
    std::size_t context_b = 0;
    std::vector<std::size_t> overlap; // observable indices
    std::size_t overlap_mask = 0;     // assignment on the overlap
    Rational marginal_a;
    Rational marginal_b;
};

struct NoSignallingReport {
    bool ok = true;
    std::vector<SignallingViolation> violations;
};

// Exact pairwise marginal comparison on every context intersection.
NoSignallingReport check_no_signalling(const EmpiricalModel& e);

// Supports of the model at every subset of every context, plus the glued
// global sections over the whole observable set.
struct SupportPresheaf {
    // Key: sorted observable-index subset U contained in some context.
    std::map<std::vector<std::size_t>, std::set<std::size_t>> sections;
    // Assignments over all observables compatible with every maximal
    // context's support (the sheaf-condition gluing).
    std::set<std::size_t> global_sections;

    bool restriction_closed() const;
};

SupportPresheaf support_presheaf(const EmpiricalModel& e);

enum class Level { noncontextual, probabilistic, possibilistic, strong };
std::string level_name(Level level);

struct ContextualityClass {
    Level level = Level::noncontextual;
    // Level-specific witnesses.
    std::optional<std::vector<Rational>> global_distribution; // noncontextual
    std::optional<std::vector<Rational>> farkas;              // contextual levels
    // possibilistic: a supported local section with no global-support extension
    std::optional<std::pair<std::size_t, std::size_t>> unextendable_section;
    // strong: for every global assignment, the contexts whose support excludes it
    std::vector<std::vector<std::size_t>> excluded_by;
};

// The Abramsky-Brandenburger hierarchy, decided exactly:
//  - noncontextual iff a global joint distribution matches every table,
//  - possibilistic iff additionally some supported section has no
//    support-compatible global extension,
//  - strong iff the support presheaf has no global section at all.
ContextualityClass classify(const EmpiricalModel& e);

// The marginal-matching linear system over one variable per global
// assignment, as handed to the LP solver (exposed for direct checks).
LinearSystem global_distribution_system(const EmpiricalModel& e);

// --- bundled models ---------------------------------------------------------

// Two parties, two binary observables each, support a XOR b = x AND y,
// uniform weight 1/2 on each supported row.
EmpiricalModel pr_box_model();

// Four two-party contexts whose outcomes are perfectly correlated copies of
// one shared coin.
EmpiricalModel shared_coin_model();

// A model with mismatched single-observable marginals between its two
// contexts (a deliberate no-signalling defect).
EmpiricalModel signalling_defect_model();

// --- scenario file format ----------------------------------------------------
//
// UTF-8 JSON document:
//   { "observables": ["X1","X2",...],
//     "contexts": [["X1","X2","X3"], ...],
//     "model": [ { "context": 0, "rows": { "+++": "1/4", "++-": "0", ... } }, ... ] }
// Probabilities are decimal-free rational strings; assignment keys are
// strings over {+,-} in the context's observable order (ASCII '-' and
// UTF-8 minus both accepted). Missing rows mean probability zero.

EmpiricalModel parse_scenario(const std::string& json_text);
EmpiricalModel load_scenario_file(const std::string& path);
std::string scenario_to_json(const EmpiricalModel& e);

} // namespace contextus::scenario
