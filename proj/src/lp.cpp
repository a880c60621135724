#include "contextus/lp.hpp"

#include "contextus/error.hpp"

namespace contextus {

void LinearSystem::add_equality(std::vector<Rational> row, Rational b) {
    if (row.size() != vars)
        throw MalformedSystemError("equality width " + std::to_string(row.size()) +
                                   " does not match variable count " + std::to_string(vars));
    rows.push_back(std::move(row));
    rhs.push_back(std::move(b));
}

LpResult lp_feasible(const LinearSystem& sys) {
    for (const auto& row : sys.rows)
        if (row.size() != sys.vars) throw MalformedSystemError("ragged rows in linear system");

    const std::size_t m = sys.rows.size();
    const std::size_t n = sys.vars;
    const std::size_t cols = n + m; // structural + artificial
    const Rational zero(0), one(1);

    // Tableau with b >= 0; artificial variables form the initial basis.
    std::vector<int> row_sign(m, 1);
    std::vector<std::vector<Rational>> tab(m, std::vector<Rational>(cols + 1, zero));
    for (std::size_t i = 0; i < m; ++i) {
        row_sign[i] = sys.rhs[i].is_negative() ? -1 : 1;
        for (std::size_t j = 0; j < n; ++j)
            tab[i][j] = row_sign[i] < 0 ? -sys.rows[i][j] : sys.rows[i][j];
        tab[i][n + i] = one;
        tab[i][cols] = row_sign[i] < 0 ? -sys.rhs[i] : sys.rhs[i];
    }
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;

    // Objective row for min(sum of artificials): obj[j] = c_j - sum_i tab[i][j],
    // obj[cols] = -objective value.
    std::vector<Rational> obj(cols + 1, zero);
    for (std::size_t j = 0; j <= cols; ++j) {
        Rational s = zero;
        for (std::size_t i = 0; i < m; ++i) s += tab[i][j];
        obj[j] = (j >= n && j < cols ? one : zero) - s;
    }

    for (;;) {
        // Bland's rule: entering column = lowest index with negative reduced cost.
        std::size_t enter = cols;
        for (std::size_t j = 0; j < cols; ++j)
            if (obj[j].is_negative()) {
                enter = j;
                break;
            }
        if (enter == cols) break;

        // Ratio test; ties broken by lowest basic variable index.
        std::size_t leave = m;
        Rational best;
        for (std::size_t i = 0; i < m; ++i) {
            if (tab[i][enter].sign() <= 0) continue;
            Rational ratio = tab[i][cols] / tab[i][enter];
            if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                best = ratio;
                leave = i;
            }
        }
        if (leave == m) throw Error("phase-1 objective unbounded; system is malformed");

        // Pivot.
        Rational piv = tab[leave][enter];
        for (auto& v : tab[leave]) v /= piv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == leave || tab[i][enter].is_zero()) continue;
            Rational f = tab[i][enter];
            for (std::size_t j = 0; j <= cols; ++j) tab[i][j] -= f * tab[leave][j];
        }
        if (!obj[enter].is_zero()) {
            Rational f = obj[enter];
            for (std::size_t j = 0; j <= cols; ++j) obj[j] -= f * tab[leave][j];
        }
        basis[leave] = enter;
    }

    Rational objective = -obj[cols];
    LpResult out;
    if (objective.is_zero()) {
        std::vector<Rational> x(n, zero);
        for (std::size_t i = 0; i < m; ++i)
            if (basis[i] < n) x[basis[i]] = tab[i][cols];
        // The witness must satisfy the original equalities exactly.
        for (std::size_t i = 0; i < m; ++i) {
            Rational s = zero;
            for (std::size_t j = 0; j < n; ++j) s += sys.rows[i][j] * x[j];
            if (s != sys.rhs[i]) throw Error("internal: simplex witness verification failed");
        }
        out.feasible = true;
        out.witness = std::move(x);
        return out;
    }

    // Farkas vector from the reduced costs of the artificial columns:
    // y_i = 1 - obj[n+i] for the sign-normalised system.
    std::vector<Rational> y(m, zero);
    for (std::size_t i = 0; i < m; ++i) {
        Rational yi = one - obj[n + i];
        y[i] = row_sign[i] < 0 ? -yi : yi;
    }
    for (std::size_t j = 0; j < n; ++j) {
        Rational s = zero;
        for (std::size_t i = 0; i < m; ++i) s += y[i] * sys.rows[i][j];
        if (s.sign() > 0) throw Error("internal: Farkas certificate verification failed");
    }
    {
        Rational s = zero;
        for (std::size_t i = 0; i < m; ++i) s += y[i] * sys.rhs[i];
        if (s.sign() <= 0) throw Error("internal: Farkas certificate verification failed");
    }
    out.feasible = false;
    out.farkas = std::move(y);
    return out;
}

} // namespace contextus
