#include "contextus/hilbert.hpp"

#include "contextus/error.hpp"

#include <algorithm>
#include <set>

namespace contextus::hilbert {

using pauli::PauliOp;

ExactMatrix ExactMatrix::identity(std::size_t dim) {
    ExactMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m.at(i, i) = GaussianRational(1);
    return m;
}

ExactMatrix ExactMatrix::kron(const ExactMatrix& a, const ExactMatrix& b) {
    ExactMatrix out(a.dim() * b.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j) {
            if (a.at(i, j).is_zero()) continue;
            for (std::size_t k = 0; k < b.dim(); ++k)
                for (std::size_t l = 0; l < b.dim(); ++l)
                    out.at(i * b.dim() + k, j * b.dim() + l) = a.at(i, j) * b.at(k, l);
        }
    return out;
}

ExactMatrix ExactMatrix::dagger() const {
    ExactMatrix out(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) out.at(j, i) = at(i, j).conj();
    return out;
}

ExactMatrix ExactMatrix::scaled(const GaussianRational& s) const {
    ExactMatrix out(dim_);
    for (std::size_t i = 0; i < entries_.size(); ++i) out.entries_[i] = entries_[i] * s;
    return out;
}

bool ExactMatrix::is_zero() const {
    for (const auto& e : entries_)
        if (!e.is_zero()) return false;
    return true;
}

GaussianRational ExactMatrix::trace() const {
    GaussianRational t;
    for (std::size_t i = 0; i < dim_; ++i) t += at(i, i);
    return t;
}

ExactMatrix operator+(const ExactMatrix& a, const ExactMatrix& b) {
    if (a.dim() != b.dim()) throw ArityError("matrix dimension mismatch");
    ExactMatrix out(a.dim());
    for (std::size_t i = 0; i < a.entries_.size(); ++i)
        out.entries_[i] = a.entries_[i] + b.entries_[i];
    return out;
}

ExactMatrix operator-(const ExactMatrix& a, const ExactMatrix& b) {
    if (a.dim() != b.dim()) throw ArityError("matrix dimension mismatch");
    ExactMatrix out(a.dim());
    for (std::size_t i = 0; i < a.entries_.size(); ++i)
        out.entries_[i] = a.entries_[i] - b.entries_[i];
    return out;
}

ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b) {
    if (a.dim() != b.dim()) throw ArityError("matrix dimension mismatch");
    ExactMatrix out(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t k = 0; k < a.dim(); ++k) {
            const GaussianRational& aik = a.at(i, k);
            if (aik.is_zero()) continue;
            for (std::size_t j = 0; j < a.dim(); ++j) {
                if (b.at(k, j).is_zero()) continue;
                out.at(i, j) += aik * b.at(k, j);
            }
        }
    return out;
}

std::vector<GaussianRational> ExactMatrix::apply(const std::vector<GaussianRational>& v) const {
    if (v.size() != dim_) throw ArityError("matrix/vector dimension mismatch");
    std::vector<GaussianRational> out(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) {
            if (at(i, j).is_zero() || v[j].is_zero()) continue;
            out[i] += at(i, j) * v[j];
        }
    return out;
}

Rational coords_norm2(const std::vector<GaussianRational>& coords) {
    Rational out(0);
    for (const auto& c : coords) out += c.norm2();
    return out;
}

ScaledVector canonical_ray(const ScaledVector& v) {
    if (v.coords.empty()) throw PreconditionError("empty ray");
    // Clear denominators.
    BigInt lcm(1);
    for (const auto& c : v.coords) {
        lcm = lcm / gcd(lcm, c.re().den()) * c.re().den();
        lcm = lcm / gcd(lcm, c.im().den()) * c.im().den();
    }
    std::vector<GaussianRational> w;
    w.reserve(v.coords.size());
    const Rational mult{lcm};
    for (const auto& c : v.coords) w.emplace_back(c.re() * mult, c.im() * mult);
    // Divide by the integer content.
    BigInt content(0);
    for (const auto& c : w) {
        content = gcd(content, c.re().num());
        content = gcd(content, c.im().num());
    }
    if (content.is_zero()) throw PreconditionError("zero vector is not a ray");
    const Rational div{content};
    for (auto& c : w) c = GaussianRational(c.re() / div, c.im() / div);
    // Rotate by a Gaussian unit so the leading entry has re > 0, im >= 0.
    for (auto& c : w)
        if (!c.is_zero()) {
            GaussianRational unit(1);
            GaussianRational probe = c;
            const GaussianRational i = GaussianRational::i();
            for (int k = 0; k < 4; ++k) {
                if (probe.re().sign() > 0 && probe.im().sign() >= 0) break;
                probe = probe * i;
                unit = unit * i;
            }
            if (!(probe.re().sign() > 0 && probe.im().sign() >= 0))
                throw Error("internal: no canonical unit rotation");
            for (auto& d : w) d = d * unit;
            break;
        }
    ScaledVector out;
    out.scale2 = coords_norm2(w);
    out.coords = std::move(w);
    return out;
}

bool same_ray(const ScaledVector& a, const ScaledVector& b) {
    if (a.coords.size() != b.coords.size()) return false;
    // Find matching leading entries and cross-multiply.
    std::size_t ia = a.coords.size(), ib = b.coords.size();
    for (std::size_t i = 0; i < a.coords.size(); ++i) {
        if (ia == a.coords.size() && !a.coords[i].is_zero()) ia = i;
        if (ib == b.coords.size() && !b.coords[i].is_zero()) ib = i;
    }
    if (ia != ib || ia == a.coords.size()) return ia == ib;
    const GaussianRational &ca = a.coords[ia], &cb = b.coords[ib];
    for (std::size_t i = 0; i < a.coords.size(); ++i)
        if (a.coords[i] * cb != b.coords[i] * ca) return false;
    return true;
}

ScaledVector ghz_state(std::size_t n) {
    if (n == 0 || n > 12) throw SizeGuardError("qubit count out of range");
    ScaledVector v;
    v.coords.assign(std::size_t{1} << n, GaussianRational());
    v.coords.front() = GaussianRational(1);
    v.coords.back() = GaussianRational(1);
    v.scale2 = Rational(2);
    return v;
}

ScaledVector basis_state(std::size_t n, std::size_t index) {
    if (n == 0 || n > 12) throw SizeGuardError("qubit count out of range");
    if (index >= (std::size_t{1} << n)) throw PreconditionError("basis index out of range");
    ScaledVector v;
    v.coords.assign(std::size_t{1} << n, GaussianRational());
    v.coords[index] = GaussianRational(1);
    v.scale2 = Rational(1);
    return v;
}

ContextSpec::ContextSpec(std::vector<PauliOp> observables) : observables_(std::move(observables)) {
    if (observables_.empty()) throw PreconditionError("context must contain an observable");
    for (std::size_t i = 0; i < observables_.size(); ++i) {
        if (observables_[i].n != observables_[0].n)
            throw ArityError("context mixes qubit counts");
        if (!pauli::is_involution(observables_[i]) || pauli::letter_phase(observables_[i]) % 2 != 0)
            throw PreconditionError("context observable " + pauli::print_pauli(observables_[i]) +
                                    " is not a +/-1-valued involution");
        for (std::size_t j = i + 1; j < observables_.size(); ++j)
            if (!pauli::commutes(observables_[i], observables_[j]))
                throw PreconditionError("context observables " + pauli::print_pauli(observables_[i]) +
                                        " and " + pauli::print_pauli(observables_[j]) +
                                        " do not commute");
    }
}

ExactMatrix to_matrix(const PauliOp& p) {
    if (p.n > 12) throw SizeGuardError("to_matrix limited to 12 qubits");
    ExactMatrix single(1);
    single.at(0, 0) = GaussianRational(1);
    ExactMatrix out = single;
    for (std::size_t q = 0; q < p.n; ++q) {
        ExactMatrix f(2);
        bool x = (p.xbits >> q) & 1u;
        bool z = (p.zbits >> q) & 1u;
        if (x && z) { // XZ = [[0,-1],[1,0]]
            f.at(0, 1) = GaussianRational(-1);
            f.at(1, 0) = GaussianRational(1);
        } else if (x) {
            f.at(0, 1) = GaussianRational(1);
            f.at(1, 0) = GaussianRational(1);
        } else if (z) {
            f.at(0, 0) = GaussianRational(1);
            f.at(1, 1) = GaussianRational(-1);
        } else {
            f = ExactMatrix::identity(2);
        }
        out = ExactMatrix::kron(out, f);
    }
    static const GaussianRational i_pow[4] = {
        GaussianRational(1), GaussianRational::i(), GaussianRational(-1),
        GaussianRational(Rational(0), Rational(-1))};
    return out.scaled(i_pow[((p.phase % 4) + 4) % 4]);
}

namespace {

// Exact Gram-Schmidt without normalisation; returns nonzero orthogonal
// spanning vectors of the column space.
std::vector<std::vector<GaussianRational>> orthogonal_column_basis(const ExactMatrix& m) {
    std::vector<std::vector<GaussianRational>> basis;
    for (std::size_t col = 0; col < m.dim(); ++col) {
        std::vector<GaussianRational> v(m.dim());
        for (std::size_t r = 0; r < m.dim(); ++r) v[r] = m.at(r, col);
        for (const auto& u : basis) {
            GaussianRational dot, uu;
            for (std::size_t r = 0; r < v.size(); ++r) {
                dot += u[r].conj() * v[r];
                uu += u[r].conj() * u[r];
            }
            if (dot.is_zero()) continue;
            GaussianRational f = dot / uu;
            for (std::size_t r = 0; r < v.size(); ++r) v[r] -= f * u[r];
        }
        bool zero = true;
        for (const auto& c : v)
            if (!c.is_zero()) {
                zero = false;
                break;
            }
        if (!zero) basis.push_back(std::move(v));
    }
    return basis;
}

ExactMatrix spectral_projector(const ContextSpec& ctx, const std::vector<int>& outcome) {
    const std::size_t dim = std::size_t{1} << ctx.qubits();
    ExactMatrix proj = ExactMatrix::identity(dim);
    const GaussianRational half(Rational(BigInt(1), BigInt(2)));
    for (std::size_t i = 0; i < ctx.size(); ++i) {
        ExactMatrix m = to_matrix(ctx.observables()[i]);
        ExactMatrix factor =
            (outcome[i] > 0 ? ExactMatrix::identity(dim) + m : ExactMatrix::identity(dim) - m)
                .scaled(half);
        proj = proj * factor;
    }
    return proj;
}

} // namespace

std::vector<EigenRay> joint_eigenbasis(const ContextSpec& ctx) {
    const std::size_t k = ctx.size();
    if (k > 24) throw SizeGuardError("too many observables in context");
    std::vector<EigenRay> out;
    for (std::size_t pattern = 0; pattern < (std::size_t{1} << k); ++pattern) {
        std::vector<int> outcome(k);
        for (std::size_t i = 0; i < k; ++i) outcome[i] = (pattern >> i) & 1u ? -1 : 1;
        ExactMatrix proj = spectral_projector(ctx, outcome);
        if (proj.is_zero()) continue;
        auto basis = orthogonal_column_basis(proj);
        const bool degenerate = basis.size() > 1;
        for (auto& v : basis) {
            EigenRay ray;
            ray.ray = canonical_ray(ScaledVector{std::move(v), Rational(1)});
            ray.eigenvalues = outcome;
            ray.degenerate = degenerate;
            out.push_back(std::move(ray));
        }
    }
    return out;
}

Rational born_probability(const ScaledVector& state, const ContextSpec& ctx,
                          const std::vector<int>& outcome) {
    const std::size_t dim = std::size_t{1} << ctx.qubits();
    if (state.coords.size() != dim)
        throw ArityError("state dimension " + std::to_string(state.coords.size()) +
                         " does not match context dimension " + std::to_string(dim));
    if (outcome.size() != ctx.size())
        throw ArityError("outcome must assign every observable in the context");
    ExactMatrix proj = spectral_projector(ctx, outcome);
    auto pv = proj.apply(state.coords);
    GaussianRational num;
    for (std::size_t i = 0; i < dim; ++i) num += state.coords[i].conj() * pv[i];
    if (!num.is_real()) throw Error("internal: Born probability has an imaginary part");
    Rational denom = coords_norm2(state.coords);
    return num.re() / denom;
}

scenario::EmpiricalModel empirical_model_from_state(const ScaledVector& state,
                                                    const std::vector<ContextSpec>& cover) {
    if (cover.empty()) throw PreconditionError("empty measurement cover");
    const std::size_t n = cover[0].qubits();
    for (const auto& ctx : cover)
        if (ctx.qubits() != n) throw ArityError("cover mixes qubit counts");

    std::vector<std::string> names;
    std::vector<std::vector<std::string>> ctx_names;
    for (const auto& ctx : cover) {
        std::vector<std::string> row;
        for (const auto& op : ctx.observables()) {
            std::string name = pauli::indexed_name(op);
            if (std::find(names.begin(), names.end(), name) == names.end()) names.push_back(name);
            row.push_back(std::move(name));
        }
        ctx_names.push_back(std::move(row));
    }

    scenario::EmpiricalModel model;
    model.cover = scenario::MeasurementCover::make(std::move(names), std::move(ctx_names));
    for (const auto& ctx : cover) {
        const std::size_t k = ctx.size();
        std::vector<Rational> table(std::size_t{1} << k);
        for (std::size_t mask = 0; mask < table.size(); ++mask) {
            std::vector<int> outcome(k);
            for (std::size_t i = 0; i < k; ++i) outcome[i] = (mask >> i) & 1u ? -1 : 1;
            table[mask] = born_probability(state, ctx, outcome);
        }
        model.tables.push_back(std::move(table));
    }
    model.validate();
    return model;
}

std::optional<int> exact_eigenvalue(const pauli::PauliOp& op, const ScaledVector& state) {
    ExactMatrix m = to_matrix(op);
    auto w = m.apply(state.coords);
    bool plus = true, minus = true;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i] != state.coords[i]) plus = false;
        if (w[i] != -state.coords[i]) minus = false;
    }
    if (plus) return 1;
    if (minus) return -1;
    return std::nullopt;
}

std::size_t generated_algebra_dimension(const std::vector<PauliOp>& gens) {
    if (gens.empty()) throw PreconditionError("empty generator list");
    if (gens[0].n > 6) throw SizeGuardError("generated_algebra_dimension limited to 6 qubits");
    auto group = pauli::subgroup_generate(gens);
    std::set<std::pair<std::uint64_t, std::uint64_t>> patterns;
    for (const auto& g : group) patterns.insert({g.xbits, g.zbits});
    return patterns.size();
}

} // namespace contextus::hilbert
