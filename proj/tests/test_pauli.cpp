#include "contextus/error.hpp"
#include "contextus/hilbert.hpp"
#include "contextus/pauli.hpp"
#include "contextus/weyl.hpp"

#include <doctest.h>

#include <cstdint>
#include <set>
#include <vector>

using namespace contextus;
using hilbert::ExactMatrix;
using pauli::PauliOp;

namespace {

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
};

PauliOp random_op(Rng& rng, std::size_t n) {
    PauliOp p;
    p.n = n;
    p.xbits = rng.next(std::uint64_t{1} << n);
    p.zbits = rng.next(std::uint64_t{1} << n);
    p.phase = static_cast<int>(rng.next(4));
    return p;
}

GaussianRational gr(long long re, long long im = 0) {
    return GaussianRational(Rational(re), Rational(im));
}

// Independent Kronecker oracle: entry (r,c) of the letter product is the
// product of single-qubit entries selected by the bits of r and c.
ExactMatrix kron_oracle(const PauliOp& p) {
    auto single = [](char letter, int r, int c) -> GaussianRational {
        switch (letter) {
            case 'I': return r == c ? gr(1) : gr(0);
            case 'X': return r != c ? gr(1) : gr(0);
            case 'Z': return r == c ? (r == 0 ? gr(1) : gr(-1)) : gr(0);
            case 'Y': // sigma_y = [[0,-i],[i,0]]
                if (r == 0 && c == 1) return gr(0, -1);
                if (r == 1 && c == 0) return gr(0, 1);
                return gr(0);
        }
        return gr(0);
    };
    const std::size_t dim = std::size_t{1} << p.n;
    ExactMatrix m(dim);
    for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t c = 0; c < dim; ++c) {
            GaussianRational e = gr(1);
            for (std::size_t q = 0; q < p.n; ++q) {
                int rb = (r >> (p.n - 1 - q)) & 1u;
                int cb = (c >> (p.n - 1 - q)) & 1u;
                e = e * single(pauli::letter_at(p, q), rb, cb);
            }
            m.at(r, c) = e;
        }
    // Global phase of the letter form.
    static const GaussianRational ipow[4] = {gr(1), gr(0, 1), gr(-1), gr(0, -1)};
    return m.scaled(ipow[pauli::letter_phase(p)]);
}

} // namespace

TEST_CASE("parser handles compact, indexed and phased forms") {
    PauliOp xzz = pauli::parse_pauli("XZZ");
    CHECK(xzz.n == 3);
    CHECK(xzz.xbits == 0b001);
    CHECK(xzz.zbits == 0b110);
    CHECK(xzz.phase == 0);

    PauliOp y = pauli::parse_pauli("Y");
    CHECK(y.n == 1);
    CHECK(y.xbits == 1);
    CHECK(y.zbits == 1);
    CHECK(y.phase == 1);

    CHECK(pauli::parse_pauli("X1*Z2*Z3") == xzz);
    CHECK(pauli::parse_pauli("X1Z2Z3") == xzz);
    CHECK(pauli::parse_pauli("Z3*Z2*X1") == xzz);
    CHECK(pauli::parse_pauli("-iY").phase == (y.phase + 3) % 4);
    CHECK(pauli::parse_pauli("+XZZ") == xzz);
    CHECK(pauli::parse_pauli("i2") == pauli::identity(2)); // indexed identity atom

    // Indexed form infers the qubit count from the largest index.
    CHECK(pauli::parse_pauli("Z5").n == 5);
}

TEST_CASE("parser reports the offset of the offending character") {
    try {
        pauli::parse_pauli("XQY");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.offset() == 1);
    }
    CHECK_THROWS_AS(pauli::parse_pauli(""), ParseError);
    CHECK_THROWS_AS(pauli::parse_pauli("-"), ParseError);
    CHECK_THROWS_AS(pauli::parse_pauli("X0"), ParseError);
    CHECK_THROWS_AS(pauli::parse_pauli("XZ1"), ParseError);
}

TEST_CASE("print/parse round trip is idempotent") {
    Rng rng(0xfeed01);
    for (int iter = 0; iter < 500; ++iter) {
        PauliOp p = random_op(rng, 1 + rng.next(4));
        std::string s = pauli::print_pauli(p);
        PauliOp q = pauli::parse_pauli(s);
        CHECK(pauli::print_pauli(q) == s);
        CHECK(q == p);
    }
    CHECK(pauli::print_pauli(pauli::parse_pauli("XZZ")) == "XZZ");
    CHECK(pauli::print_pauli(pauli::parse_pauli("Y")) == "Y");
    CHECK(pauli::indexed_name(pauli::parse_pauli("XZZ")) == "X1Z2Z3");
    CHECK(pauli::indexed_name(pauli::identity(3)) == "I");
}

TEST_CASE("multiplication matches the matrix oracle") {
    // X * Z has canonical bits (1,1) and phase 0; as a matrix it is -iY.
    PauliOp x = pauli::parse_pauli("X"), z = pauli::parse_pauli("Z");
    PauliOp xz = pauli::multiply(x, z);
    CHECK(xz.xbits == 1);
    CHECK(xz.zbits == 1);
    CHECK(xz.phase == 0);
    ExactMatrix lhs = hilbert::to_matrix(x) * hilbert::to_matrix(z);
    CHECK(lhs == hilbert::to_matrix(xz));
    ExactMatrix y = hilbert::to_matrix(pauli::parse_pauli("Y"));
    CHECK(lhs == y.scaled(gr(0, -1)));

    Rng rng(0xfeed02);
    for (int iter = 0; iter < 300; ++iter) {
        std::size_t n = 1 + rng.next(3);
        PauliOp p = random_op(rng, n), q = random_op(rng, n);
        CHECK(hilbert::to_matrix(pauli::multiply(p, q)) ==
              hilbert::to_matrix(p) * hilbert::to_matrix(q));
    }
    // Identity law.
    for (int iter = 0; iter < 50; ++iter) {
        PauliOp p = random_op(rng, 3);
        CHECK(pauli::multiply(p, pauli::identity(3)) == p);
    }
    CHECK_THROWS_AS(pauli::multiply(pauli::identity(2), pauli::identity(3)), ArityError);
}

TEST_CASE("the four compound observables multiply to minus identity") {
    PauliOp prod = pauli::parse_pauli("XXX") * pauli::parse_pauli("XZZ") *
                   pauli::parse_pauli("ZXZ") * pauli::parse_pauli("ZZX");
    CHECK(prod.xbits == 0);
    CHECK(prod.zbits == 0);
    CHECK(prod.phase == 2);
}

TEST_CASE("commutes matches the matrix commutator") {
    CHECK(!pauli::commutes(pauli::parse_pauli("X"), pauli::parse_pauli("Z")));
    CHECK(pauli::commutes(pauli::parse_pauli("XXX"), pauli::parse_pauli("XZZ")));
    Rng rng(0xfeed03);
    for (int iter = 0; iter < 300; ++iter) {
        std::size_t n = 1 + rng.next(3);
        PauliOp p = random_op(rng, n), q = random_op(rng, n);
        ExactMatrix mp = hilbert::to_matrix(p), mq = hilbert::to_matrix(q);
        CHECK(pauli::commutes(p, q) == (mp * mq == mq * mp));
        CHECK(pauli::commutes(p, p));
    }
}

TEST_CASE("every Pauli operator squares to plus or minus identity") {
    Rng rng(0xfeed04);
    for (int iter = 0; iter < 200; ++iter) {
        PauliOp p = random_op(rng, 1 + rng.next(3));
        PauliOp sq = pauli::multiply(p, p);
        CHECK(sq.xbits == 0);
        CHECK(sq.zbits == 0);
        CHECK(sq.phase % 2 == 0);
    }
}

TEST_CASE("to_matrix agrees with the entrywise Kronecker oracle") {
    CHECK(hilbert::to_matrix(pauli::parse_pauli("XZZ")) == kron_oracle(pauli::parse_pauli("XZZ")));
    Rng rng(0xfeed05);
    for (int iter = 0; iter < 100; ++iter) {
        PauliOp p = random_op(rng, 1 + rng.next(3));
        CHECK(hilbert::to_matrix(p) == kron_oracle(p));
    }
}

TEST_CASE("avn triple conditions") {
    auto T = [](const char* a, const char* b, const char* c) {
        return pauli::AvnTriple(pauli::parse_pauli(a), pauli::parse_pauli(b),
                                pauli::parse_pauli(c));
    };
    // The standard three-qubit triple.
    auto v = pauli::is_avn_triple(T("XXX", "XYY", "YXY"));
    CHECK(v.is_avn);
    CHECK(v.odd_positions == 1);

    // Degenerate triple: no position has outer letters differing from the
    // middle one, so condition (2) counts zero.
    CHECK(!pauli::is_avn_triple(T("XXX", "XXX", "XXX")).is_avn);

    // Condition (2) count 0 (identity letters excluded).
    CHECK(!pauli::is_avn_triple(T("XI", "IX", "XX")).is_avn);

    // Condition (1) violation: all three letters differ at every position.
    auto v1 = pauli::is_avn_triple(T("XX", "YY", "ZZ"));
    CHECK(!v1.is_avn);
    CHECK(v1.reason.find("condition (1)") != std::string::npos);

    // Construction errors.
    CHECK_THROWS_AS(T("XX", "XZ", "II"), PreconditionError);   // non-commuting pair
    CHECK_THROWS_AS(T("-XXX", "XYY", "YXY"), PreconditionError); // phased input
}

namespace {

// Independent oracle: the order of the matrix group generated by the
// operators, enumerated by exact matrix products.
std::size_t matrix_group_order(const std::vector<PauliOp>& gens) {
    std::vector<ExactMatrix> members;
    std::vector<ExactMatrix> frontier{hilbert::ExactMatrix::identity(std::size_t{1} << gens[0].n)};
    members.push_back(frontier[0]);
    auto contains = [&](const ExactMatrix& m) {
        for (const auto& k : members)
            if (k == m) return true;
        return false;
    };
    while (!frontier.empty()) {
        std::vector<ExactMatrix> next;
        for (const auto& m : frontier)
            for (const auto& g : gens) {
                ExactMatrix prod = m * hilbert::to_matrix(g);
                if (!contains(prod)) {
                    members.push_back(prod);
                    next.push_back(prod);
                }
            }
        frontier = std::move(next);
    }
    return members.size();
}

} // namespace

TEST_CASE("subgroup generation") {
    using pauli::subgroup_generate;
    auto gens1 = std::vector<PauliOp>{pauli::parse_pauli("X")};
    auto g1 = subgroup_generate(gens1);
    CHECK(g1.size() == 2);

    // Three of the four compound observables: one sign per letter pattern,
    // including -Z1Z2X3; -1 itself only enters with the fourth generator.
    std::vector<PauliOp> three = {pauli::parse_pauli("XXX"), pauli::parse_pauli("XZZ"),
                                  pauli::parse_pauli("ZXZ")};
    auto g2 = subgroup_generate(three);
    CHECK(g2.size() == 8);
    CHECK(g2.size() == matrix_group_order(three));
    PauliOp minus_zzx = pauli::parse_pauli("-ZZX");
    CHECK(std::find(g2.begin(), g2.end(), minus_zzx) != g2.end());

    std::vector<PauliOp> four = three;
    four.push_back(pauli::parse_pauli("ZZX"));
    auto g2b = subgroup_generate(four);
    CHECK(g2b.size() == 16);
    CHECK(g2b.size() == matrix_group_order(four));
    CHECK(std::find(g2b.begin(), g2b.end(), pauli::parse_pauli("-III")) != g2b.end());

    // Two Hermitian generators reach only half the phases: order 8.
    std::vector<PauliOp> xz = {pauli::parse_pauli("X"), pauli::parse_pauli("Z")};
    auto g3 = subgroup_generate(xz);
    CHECK(g3.size() == 8);
    CHECK(g3.size() == matrix_group_order(xz));
    // With i*identity adjoined the full order-16 single-qubit Pauli group appears.
    std::vector<PauliOp> xzi = {pauli::parse_pauli("X"), pauli::parse_pauli("Z"),
                                pauli::parse_pauli("iI")};
    auto g4 = subgroup_generate(xzi);
    CHECK(g4.size() == 16);
    CHECK(g4.size() == matrix_group_order(xzi));

    // Closure: products stay inside.
    std::set<PauliOp> member(g2.begin(), g2.end());
    for (const auto& a : g2)
        for (const auto& b : g2) CHECK(member.count(pauli::multiply(a, b)) == 1);

    CHECK_THROWS_AS(subgroup_generate({}), PreconditionError);
    CHECK_THROWS_AS(subgroup_generate({pauli::identity(2), pauli::identity(3)}), ArityError);
}

TEST_CASE("the GHZ triple generates an order-8 subgroup without -1") {
    auto g = pauli::subgroup_generate({pauli::parse_pauli("XXX"), pauli::parse_pauli("XYY"),
                                       pauli::parse_pauli("YXY")});
    CHECK(g.size() == 8);
    CHECK(std::find(g.begin(), g.end(), pauli::parse_pauli("-YYX")) != g.end());
    CHECK(std::find(g.begin(), g.end(), pauli::parse_pauli("-Z2Z3")) != g.end());
}

TEST_CASE("weyl words anticommute per degree of freedom") {
    using namespace contextus::weyl;
    WeylWord uv = weyl_multiply(weyl_u(1, 1), weyl_v(1, 1));
    WeylWord vu = weyl_multiply(weyl_v(1, 1), weyl_u(1, 1));
    CHECK(uv.dof == vu.dof);
    CHECK(uv.phase == Rational(0));
    CHECK(vu.phase == Rational(1)); // one transposition to reach normal order

    // Different degrees of freedom commute.
    CHECK(weyl_multiply(weyl_u(1, 1), weyl_v(2, 1)) ==
          weyl_multiply(weyl_v(2, 1), weyl_u(1, 1)));

    WeylWord a = weyl_multiply(weyl_u(2, -3), weyl_v(2, 2));
    CHECK(weyl_multiply(a, weyl_identity()) == a);
    CHECK(weyl_multiply(weyl_identity(), a) == a);
}

TEST_CASE("weyl multiplication is associative") {
    using namespace contextus::weyl;
    Rng rng(0xfeed06);
    auto random_word = [&]() {
        WeylWord w;
        for (int i = 0; i < 3; ++i) {
            w.dof[i].uexp = static_cast<long long>(rng.next(7)) - 3;
            w.dof[i].vexp = static_cast<long long>(rng.next(7)) - 3;
        }
        w.phase = Rational(static_cast<long long>(rng.next(2)));
        return w;
    };
    for (int iter = 0; iter < 300; ++iter) {
        WeylWord a = random_word(), b = random_word(), c = random_word();
        CHECK(weyl_multiply(weyl_multiply(a, b), c) == weyl_multiply(a, weyl_multiply(b, c)));
    }
}

TEST_CASE("clifton contradiction") {
    using namespace contextus::weyl;
    CliftonReport rep = clifton_contradiction();
    CHECK(rep.func_value == 1);
    CHECK(rep.operator_value == -1);

    // The operator product of all four words is the scalar -1.
    WeylWord op = weyl_identity();
    for (const auto& w : rep.words) op = weyl_multiply(op, w);
    CHECK(op.is_scalar());
    CHECK(op.phase == Rational(1));

    // No proper nonempty subset reduces to a scalar at all, so no subset
    // carries a contradiction.
    for (unsigned mask = 1; mask < 15; ++mask) {
        WeylWord prod = weyl_identity();
        for (int i = 0; i < 4; ++i)
            if ((mask >> i) & 1u) prod = weyl_multiply(prod, rep.words[i]);
        CHECK(!prod.is_scalar());
    }

    // Abelianised control: +1 on both sides.
    WeylWord ab = weyl_identity();
    for (const auto& w : rep.words) ab = weyl_multiply_abelian(ab, w);
    CHECK(ab.is_scalar());
    CHECK(ab.phase == Rational(0));
}
