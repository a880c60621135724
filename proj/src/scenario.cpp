#include "contextus/scenario.hpp"

#include "contextus/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

namespace contextus::scenario {

MeasurementCover MeasurementCover::make(std::vector<std::string> observables,
                                        std::vector<std::vector<std::string>> contexts) {
    MeasurementCover cover;
    cover.observables = std::move(observables);
    for (std::size_t i = 0; i < cover.observables.size(); ++i)
        for (std::size_t j = i + 1; j < cover.observables.size(); ++j)
            if (cover.observables[i] == cover.observables[j])
                throw PreconditionError("duplicate observable name " + cover.observables[i]);

    std::vector<bool> seen(cover.observables.size(), false);
    for (const auto& ctx : contexts) {
        std::vector<std::size_t> idx;
        for (const auto& name : ctx) {
            std::size_t k = cover.observable_index(name);
            if (std::find(idx.begin(), idx.end(), k) != idx.end())
                throw PreconditionError("observable " + name + " repeated inside a context");
            idx.push_back(k);
            seen[k] = true;
        }
        if (idx.empty()) throw PreconditionError("empty context");
        cover.contexts.push_back(std::move(idx));
    }
    for (std::size_t k = 0; k < seen.size(); ++k)
        if (!seen[k])
            throw PreconditionError("observable " + cover.observables[k] +
                                    " appears in no context (cover condition fails)");

    cover.maximal.assign(cover.contexts.size(), true);
    for (std::size_t a = 0; a < cover.contexts.size(); ++a) {
        std::set<std::size_t> sa(cover.contexts[a].begin(), cover.contexts[a].end());
        for (std::size_t b = 0; b < cover.contexts.size(); ++b) {
            if (a == b) continue;
            std::set<std::size_t> sb(cover.contexts[b].begin(), cover.contexts[b].end());
            if (sa != sb && std::includes(sb.begin(), sb.end(), sa.begin(), sa.end()))
                cover.maximal[a] = false;
        }
    }
    return cover;
}

std::size_t MeasurementCover::observable_index(const std::string& name) const {
    for (std::size_t i = 0; i < observables.size(); ++i)
        if (observables[i] == name) return i;
    throw PreconditionError("unknown observable " + name);
}

std::string mask_to_key(std::size_t mask, std::size_t width) {
    std::string out(width, '+');
    for (std::size_t j = 0; j < width; ++j)
        if ((mask >> j) & 1u) out[j] = '-';
    return out;
}

std::size_t key_to_mask(const std::string& key, std::size_t width) {
    std::size_t mask = 0;
    std::size_t pos = 0;
    std::size_t i = 0;
    while (i < key.size()) {
        bool minus;
        if (key[i] == '+') {
            minus = false;
            ++i;
        } else if (key[i] == '-') {
            minus = true;
            ++i;
        } else if (i + 3 <= key.size() && static_cast<unsigned char>(key[i]) == 0xE2 &&
                   static_cast<unsigned char>(key[i + 1]) == 0x88 &&
                   static_cast<unsigned char>(key[i + 2]) == 0x92) {
            minus = true; // UTF-8 minus sign
            i += 3;
        } else {
            throw ParseError("assignment keys use only '+' and '-'", i);
        }
        if (pos >= width) throw ParseError("assignment key longer than context", i);
        if (minus) mask |= std::size_t{1} << pos;
        ++pos;
    }
    if (pos != width)
        throw ParseError("assignment key has " + std::to_string(pos) + " outcomes, context needs " +
                             std::to_string(width),
                         key.size());
    return mask;
}

void EmpiricalModel::validate() const {
    if (tables.size() != cover.contexts.size())
        throw MalformedSystemError("model has " + std::to_string(tables.size()) +
                                   " tables for " + std::to_string(cover.contexts.size()) +
                                   " contexts");
    for (std::size_t c = 0; c < tables.size(); ++c) {
        const std::size_t want = std::size_t{1} << cover.contexts[c].size();
        if (tables[c].size() != want)
            throw MalformedSystemError("table " + std::to_string(c) + " has wrong size");
        Rational sum(0);
        for (const auto& p : tables[c]) {
            if (p.is_negative())
                throw MalformedSystemError("negative probability in context " + std::to_string(c));
            sum += p;
        }
        if (sum != Rational(1))
            throw MalformedSystemError("context " + std::to_string(c) +
                                       " probabilities sum to " + sum.str() + ", not 1");
    }
}

namespace {

// Restriction of a context assignment to a sorted observable subset.
std::size_t restrict_mask(const std::vector<std::size_t>& context, std::size_t mask,
                          const std::vector<std::size_t>& subset) {
    std::size_t out = 0;
    for (std::size_t p = 0; p < subset.size(); ++p) {
        auto it = std::find(context.begin(), context.end(), subset[p]);
        if (it == context.end()) throw PreconditionError("subset escapes context");
        std::size_t j = static_cast<std::size_t>(it - context.begin());
        if ((mask >> j) & 1u) out |= std::size_t{1} << p;
    }
    return out;
}

Rational marginal(const EmpiricalModel& e, std::size_t c, const std::vector<std::size_t>& subset,
                  std::size_t submask) {
    Rational out(0);
    const auto& ctx = e.cover.contexts[c];
    for (std::size_t mask = 0; mask < e.tables[c].size(); ++mask)
        if (restrict_mask(ctx, mask, subset) == submask) out += e.tables[c][mask];
    return out;
}

} // namespace

NoSignallingReport check_no_signalling(const EmpiricalModel& e) {
    e.validate();
    NoSignallingReport report;
    const auto& ctxs = e.cover.contexts;
    for (std::size_t a = 0; a < ctxs.size(); ++a) {
        for (std::size_t b = a + 1; b < ctxs.size(); ++b) {
            std::vector<std::size_t> overlap;
            for (std::size_t k : ctxs[a])
                if (std::find(ctxs[b].begin(), ctxs[b].end(), k) != ctxs[b].end())
                    overlap.push_back(k);
            std::sort(overlap.begin(), overlap.end());
            if (overlap.empty()) continue;
            for (std::size_t sub = 0; sub < (std::size_t{1} << overlap.size()); ++sub) {
                Rational pa = marginal(e, a, overlap, sub);
                Rational pb = marginal(e, b, overlap, sub);
                if (pa != pb) {
                    report.ok = false;
                    report.violations.push_back({a, b, overlap, sub, pa, pb});
                }
            }
        }
    }
    return report;
}

bool SupportPresheaf::restriction_closed() const {
    for (const auto& [u, secs] : sections) {
        for (const auto& [v, vsecs] : sections) {
            if (v.size() >= u.size() || v.empty()) continue;
            if (!std::includes(u.begin(), u.end(), v.begin(), v.end())) continue;
            for (std::size_t s : secs) {
                // Restrict s (over u) to v.
                std::size_t out = 0;
                for (std::size_t p = 0; p < v.size(); ++p) {
                    auto it = std::find(u.begin(), u.end(), v[p]);
                    std::size_t j = static_cast<std::size_t>(it - u.begin());
                    if ((s >> j) & 1u) out |= std::size_t{1} << p;
                }
                if (!vsecs.count(out)) return false;
            }
        }
    }
    return true;
}

SupportPresheaf support_presheaf(const EmpiricalModel& e) {
    auto ns = check_no_signalling(e);
    if (!ns.ok)
        throw PreconditionError(
            "model is signalling; run check_no_signalling for the violating overlaps");

    SupportPresheaf sp;
    const auto& ctxs = e.cover.contexts;
    for (std::size_t c = 0; c < ctxs.size(); ++c) {
        const std::size_t k = ctxs[c].size();
        for (std::size_t pick = 1; pick < (std::size_t{1} << k); ++pick) {
            std::vector<std::size_t> subset;
            for (std::size_t j = 0; j < k; ++j)
                if ((pick >> j) & 1u) subset.push_back(ctxs[c][j]);
            std::sort(subset.begin(), subset.end());
            std::set<std::size_t> secs;
            for (std::size_t sub = 0; sub < (std::size_t{1} << subset.size()); ++sub)
                if (marginal(e, c, subset, sub).sign() > 0) secs.insert(sub);
            auto [it, inserted] = sp.sections.emplace(subset, secs);
            if (!inserted && it->second != secs)
                throw Error("internal: inconsistent supports on a shared subset");
        }
    }

    // Glue over maximal contexts to get the global sections.
    const std::size_t nobs = e.cover.observables.size();
    if (nobs > 20) throw SizeGuardError("global-section search limited to 20 observables");
    for (std::size_t g = 0; g < (std::size_t{1} << nobs); ++g) {
        bool ok = true;
        for (std::size_t c = 0; c < ctxs.size() && ok; ++c) {
            if (!e.cover.maximal[c]) continue;
            std::size_t mask = 0;
            for (std::size_t j = 0; j < ctxs[c].size(); ++j)
                if ((g >> ctxs[c][j]) & 1u) mask |= std::size_t{1} << j;
            ok = e.tables[c][mask].sign() > 0;
        }
        if (ok) sp.global_sections.insert(g);
    }
    return sp;
}

std::string level_name(Level level) {
    switch (level) {
        case Level::noncontextual: return "NONCONTEXTUAL";
        case Level::probabilistic: return "PROBABILISTIC";
        case Level::possibilistic: return "POSSIBILISTIC";
        case Level::strong: return "STRONG";
    }
    return "?";
}

LinearSystem global_distribution_system(const EmpiricalModel& e) {
    const std::size_t nobs = e.cover.observables.size();
    if (nobs > 12) throw SizeGuardError("global distribution system limited to 12 observables");
    LinearSystem sys;
    sys.vars = std::size_t{1} << nobs;
    const auto& ctxs = e.cover.contexts;
    for (std::size_t c = 0; c < ctxs.size(); ++c) {
        for (std::size_t mask = 0; mask < e.tables[c].size(); ++mask) {
            std::vector<Rational> row(sys.vars, Rational(0));
            for (std::size_t g = 0; g < sys.vars; ++g) {
                std::size_t r = 0;
                for (std::size_t j = 0; j < ctxs[c].size(); ++j)
                    if ((g >> ctxs[c][j]) & 1u) r |= std::size_t{1} << j;
                if (r == mask) row[g] = Rational(1);
            }
            sys.add_equality(std::move(row), e.tables[c][mask]);
        }
    }
    return sys;
}

ContextualityClass classify(const EmpiricalModel& e) {
    SupportPresheaf sp = support_presheaf(e); // also enforces no-signalling

    ContextualityClass out;
    const std::size_t nobs = e.cover.observables.size();
    const auto& ctxs = e.cover.contexts;

    out.excluded_by.assign(std::size_t{1} << nobs, {});
    for (std::size_t g = 0; g < out.excluded_by.size(); ++g) {
        for (std::size_t c = 0; c < ctxs.size(); ++c) {
            std::size_t mask = 0;
            for (std::size_t j = 0; j < ctxs[c].size(); ++j)
                if ((g >> ctxs[c][j]) & 1u) mask |= std::size_t{1} << j;
            if (e.tables[c][mask].is_zero()) out.excluded_by[g].push_back(c);
        }
    }

    if (sp.global_sections.empty()) {
        out.level = Level::strong;
        return out;
    }

    auto lp = lp_feasible(global_distribution_system(e));
    if (lp.feasible) {
        out.level = Level::noncontextual;
        out.global_distribution = std::move(lp.witness);
        return out;
    }
    out.farkas = std::move(lp.farkas);

    // Some supported section with no support-compatible global extension?
    for (std::size_t c = 0; c < ctxs.size(); ++c) {
        for (std::size_t mask = 0; mask < e.tables[c].size(); ++mask) {
            if (e.tables[c][mask].is_zero()) continue;
            bool extendable = false;
            for (std::size_t g : sp.global_sections) {
                std::size_t r = 0;
                for (std::size_t j = 0; j < ctxs[c].size(); ++j)
                    if ((g >> ctxs[c][j]) & 1u) r |= std::size_t{1} << j;
                if (r == mask) {
                    extendable = true;
                    break;
                }
            }
            if (!extendable) {
                out.level = Level::possibilistic;
                out.unextendable_section = {c, mask};
                return out;
            }
        }
    }
    out.level = Level::probabilistic;
    return out;
}

EmpiricalModel pr_box_model() {
    EmpiricalModel e;
    e.cover = MeasurementCover::make({"a0", "a1", "b0", "b1"},
                                     {{"a0", "b0"}, {"a0", "b1"}, {"a1", "b0"}, {"a1", "b1"}});
    const Rational half(BigInt(1), BigInt(2));
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) {
            std::vector<Rational> table(4, Rational(0));
            for (std::size_t mask = 0; mask < 4; ++mask) {
                bool a = mask & 1u, b = (mask >> 1) & 1u;
                if ((a != b) == (x == 1 && y == 1)) table[mask] = half;
            }
            e.tables.push_back(std::move(table));
        }
    e.validate();
    return e;
}

EmpiricalModel shared_coin_model() {
    EmpiricalModel e;
    e.cover = MeasurementCover::make({"a0", "a1", "b0", "b1"},
                                     {{"a0", "b0"}, {"a0", "b1"}, {"a1", "b0"}, {"a1", "b1"}});
    const Rational half(BigInt(1), BigInt(2));
    for (int c = 0; c < 4; ++c) {
        std::vector<Rational> table(4, Rational(0));
        table[0b00] = half; // both +
        table[0b11] = half; // both -
        e.tables.push_back(std::move(table));
    }
    e.validate();
    return e;
}

EmpiricalModel signalling_defect_model() {
    EmpiricalModel e;
    e.cover = MeasurementCover::make({"X1", "A", "B"}, {{"X1", "A"}, {"X1", "B"}});
    std::vector<Rational> t1(4, Rational(0));
    t1[0b00] = Rational(BigInt(1), BigInt(2));
    t1[0b11] = Rational(BigInt(1), BigInt(2));
    std::vector<Rational> t2(4, Rational(0));
    t2[0b00] = Rational(BigInt(1), BigInt(3));
    t2[0b11] = Rational(BigInt(2), BigInt(3));
    e.tables.push_back(std::move(t1));
    e.tables.push_back(std::move(t2));
    e.validate();
    return e;
}

EmpiricalModel parse_scenario(const std::string& json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& ex) {
        throw ParseError(std::string("scenario JSON: ") + ex.what(), ex.byte);
    }
    if (!doc.is_object() || !doc.contains("observables") || !doc.contains("contexts") ||
        !doc.contains("model"))
        throw MalformedSystemError(
            "scenario document needs \"observables\", \"contexts\" and \"model\"");

    std::vector<std::string> observables = doc["observables"].get<std::vector<std::string>>();
    std::vector<std::vector<std::string>> contexts =
        doc["contexts"].get<std::vector<std::vector<std::string>>>();

    EmpiricalModel e;
    e.cover = MeasurementCover::make(std::move(observables), std::move(contexts));
    e.tables.assign(e.cover.contexts.size(), {});
    for (std::size_t c = 0; c < e.cover.contexts.size(); ++c)
        e.tables[c].assign(std::size_t{1} << e.cover.contexts[c].size(), Rational(0));

    std::vector<bool> filled(e.cover.contexts.size(), false);
    for (const auto& entry : doc["model"]) {
        if (!entry.contains("context") || !entry["context"].is_number_unsigned())
            throw MalformedSystemError("model entry needs an unsigned \"context\" index");
        std::size_t c = entry["context"].get<std::size_t>();
        if (c >= e.cover.contexts.size())
            throw MalformedSystemError("model entry references context " + std::to_string(c) +
                                       " but only " + std::to_string(e.cover.contexts.size()) +
                                       " are declared");
        if (filled[c]) throw MalformedSystemError("duplicate model entry for context " + std::to_string(c));
        filled[c] = true;
        const std::size_t width = e.cover.contexts[c].size();
        if (!entry.contains("rows") || !entry["rows"].is_object())
            throw MalformedSystemError("model entry needs a \"rows\" object");
        for (const auto& [key, value] : entry["rows"].items()) {
            std::size_t mask = key_to_mask(key, width);
            Rational p;
            if (value.is_string()) {
                p = Rational::from_string(value.get<std::string>());
            } else if (value.is_number_unsigned()) {
                p = Rational(static_cast<long long>(value.get<unsigned long long>()));
            } else {
                throw MalformedSystemError(
                    "probabilities must be decimal-free rational strings like \"1/4\" (row " + key +
                    ")");
            }
            e.tables[c][mask] = p;
        }
    }
    e.validate();
    return e;
}

EmpiricalModel load_scenario_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open scenario file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_scenario(ss.str());
}

std::string scenario_to_json(const EmpiricalModel& e) {
    nlohmann::ordered_json doc;
    doc["observables"] = e.cover.observables;
    nlohmann::ordered_json ctxs = nlohmann::ordered_json::array();
    for (const auto& ctx : e.cover.contexts) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (std::size_t k : ctx) row.push_back(e.cover.observables[k]);
        ctxs.push_back(row);
    }
    doc["contexts"] = ctxs;
    nlohmann::ordered_json model = nlohmann::ordered_json::array();
    for (std::size_t c = 0; c < e.tables.size(); ++c) {
        nlohmann::ordered_json entry;
        entry["context"] = c;
        nlohmann::ordered_json rows;
        for (std::size_t mask = 0; mask < e.tables[c].size(); ++mask)
            rows[mask_to_key(mask, e.cover.contexts[c].size())] = e.tables[c][mask].str();
        entry["rows"] = rows;
        model.push_back(entry);
    }
    doc["model"] = model;
    return doc.dump(2) + "\n";
}

} // namespace contextus::scenario
