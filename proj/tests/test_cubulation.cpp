#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "rap/cubulation.hpp"
#include "rap/game.hpp"
#include "rap/homology.hpp"
#include "rap/polytope.hpp"

using namespace rap;

namespace {

// brute-force oracle: number of spanning d-sets with pairwise-distinct
// colours, straight from the vertex records
long long census_spanning(const Polytope& P, const Colouring& lam, int d) {
    std::set<std::vector<int>> found;
    auto consider = [&](std::vector<int> S) {
        std::set<int> cols;
        for (int f : S) cols.insert(lam.colour[f]);
        if ((int)cols.size() != (int)S.size()) return;
        std::sort(S.begin(), S.end());
        found.insert(S);
    };
    std::vector<int> S;
    std::function<void(const std::vector<int>&, size_t)> pick = [&](const std::vector<int>& pool,
                                                                    size_t from) {
        if ((int)S.size() == d) {
            consider(S);
            return;
        }
        for (size_t i = from; i < pool.size(); i++) {
            S.push_back(pool[i]);
            pick(pool, i + 1);
            S.pop_back();
        }
    };
    for (const auto& rec : P.finite_vertices) pick(rec, 0);
    for (const auto& iv : P.ideal_vertices) {
        // subsets avoiding both members of any opposite pair
        std::function<void(size_t)> walk = [&](size_t pair_idx) {
            if ((int)S.size() > d) return;
            if (pair_idx == iv.size()) {
                if ((int)S.size() == d) consider(S);
                return;
            }
            walk(pair_idx + 1);
            if ((int)S.size() < d) {
                S.push_back(iv[pair_idx].first);
                walk(pair_idx + 1);
                S.pop_back();
                S.push_back(iv[pair_idx].second);
                walk(pair_idx + 1);
                S.pop_back();
            }
        };
        walk(0);
    }
    return (long long)found.size();
}

// the ideal drum from the polytope tests: facets 0..3 in a 4-cycle around one
// ideal vertex with opposite pairs (0,2), (1,3); facets 4, 5 cap the ends
Polytope drum3() {
    Polytope P;
    P.dim = 3;
    P.num_facets = 6;
    P.adjacency = {{0, 1}, {0, 3}, {1, 2}, {2, 3}, {0, 4}, {1, 4}, {2, 4}, {3, 4},
                   {0, 5}, {1, 5}, {2, 5}, {3, 5}};
    std::sort(P.adjacency.begin(), P.adjacency.end());
    P.finite_vertices = {{0, 1, 4}, {1, 2, 4}, {2, 3, 4}, {0, 3, 4},
                         {0, 1, 5}, {1, 2, 5}, {2, 3, 5}, {0, 3, 5}};
    P.ideal_vertices = {{{0, 2}, {1, 3}}};
    P.build_index();
    return P;
}

Moves discrete_for(int c) { return discrete_moves(c); }

}  // namespace

TEST_CASE("build: cell counts match the spanning-set census") {
    for (int n = 2; n <= 6; n++) {
        Polytope P = polygon_2n(n);
        Colouring lam = alternating_colouring(P);
        CubeComplex C = build(P, lam, 2);
        CHECK(C.count(0) == 4);
        CHECK(C.count(1) == 4 * n);
        CHECK(C.count(2) == 2 * n - 1);
        for (int d = 1; d <= 2; d++)
            CHECK(C.count(d) == census_spanning(P, lam, d) * (1LL << (2 - d)));
        CHECK(euler_characteristic(C) == 3 - 2 * n);
        CHECK((long long)C.square_pairs.size() == census_spanning(P, lam, 2));
    }

    Polytope sq = square();
    Colouring lam = alternating_colouring(sq);
    CubeComplex C = build(sq, lam, 2);
    CHECK(C.count(0) == 4);
    CHECK(C.count(1) == 8);
    CHECK(C.count(2) == 4);
    CHECK(euler_characteristic(C) == 0);

    Polytope D = drum3();
    Colouring dl{4, {1, 2, 3, 2, 4, 4}};
    CubeComplex CD = build(D, dl, 3);
    CHECK(CD.count(0) == 16);
    CHECK(CD.count(1) == 48);
    CHECK(CD.count(2) == 48);
    CHECK(CD.count(3) == 16);
    for (int d = 1; d <= 3; d++)
        CHECK(CD.count(d) == census_spanning(D, dl, d) * (1LL << (4 - d)));
    CHECK(euler_characteristic(CD) == 0);  // odd-dimensional manifold

    // dimension bound respected; euler refuses a partial build
    CubeComplex C1 = build(D, dl, 1);
    CHECK(C1.count(2) == 0);
    CHECK(C1.square_pairs.size() == CD.square_pairs.size());
    CHECK_THROWS_AS(euler_characteristic(C1), std::logic_error);
    CHECK_THROWS_AS(build(D, dl, 4), std::invalid_argument);
    CHECK_THROWS_AS(build(D, dl, 3, 50), std::length_error);

    Colouring badlam{4, {1, 1, 3, 2, 4, 4}};  // facets 0,1 adjacent, same colour
    CHECK_THROWS_AS(build(D, badlam, 1), std::invalid_argument);
}

TEST_CASE("cells are canonical and indexable") {
    Polytope D = drum3();
    Colouring dl{4, {1, 2, 3, 2, 4, 4}};
    CubeComplex C = build(D, dl, 3);
    for (int d = 0; d <= 3; d++) {
        std::set<std::vector<int32_t>> seen;
        for (size_t i = 0; i < C.cells[d].v.size(); i++) {
            const int32_t* S = C.cells[d].facets.data() + (size_t)d * i;
            uint32_t v = C.cells[d].v[i];
            // base vertex has every S-colour coordinate equal to zero
            for (int p = 0; p < d; p++) CHECK((v >> (dl.colour[S[p]] - 1) & 1u) == 0);
            std::vector<int32_t> key(S, S + d);
            key.push_back((int32_t)v);
            CHECK(seen.insert(key).second);  // stored once
            CHECK(C.find_cell(d, v, 0, S) == (long long)i);
        }
    }
    // O(1) edge index agrees with binary search
    for (size_t i = 0; i < C.cells[1].v.size(); i++)
        CHECK(C.edge_index(C.cells[1].facets[i], C.cells[1].v[i], 0) == (long long)i);
}

TEST_CASE("boundary maps: endpoints, signs, and d of d = 0") {
    Polytope sq = square();
    Colouring lam = alternating_colouring(sq);
    CubeComplex C = build(sq, lam, 2);
    ChainComplex cx = cube_boundary_matrices(C);
    CHECK(boundary_squares_to_zero(cx));

    // every edge (v, {F}) joins v and v xor e_{colour(F)}
    for (int j = 0; j < cx.d[1].cols; j++) {
        uint32_t v = C.cells[1].v[j];
        int f = C.cells[1].facets[j];
        uint32_t w = v ^ (1u << (lam.colour[f] - 1));
        REQUIRE(cx.d[1].col[j].size() == 2);
        std::map<int, long long> ends(cx.d[1].col[j].begin(), cx.d[1].col[j].end());
        CHECK(ends.at((int)v) == -1);
        CHECK(ends.at((int)w) == 1);
    }
    // each square has exactly 4 boundary edges
    for (int j = 0; j < cx.d[2].cols; j++) CHECK(cx.d[2].col[j].size() == 4);

    // the square-polytope complex is the torus
    auto b = betti(cx, Field::Q, 2);
    CHECK(b == std::vector<long long>{1, 2, 1});
    auto ih = integral_homology(cx, 2);
    CHECK(ih.rank[1] == 2);
    CHECK(ih.torsion[1].empty());

    ChainComplex dx = cube_boundary_matrices(build(drum3(), Colouring{4, {1, 2, 3, 2, 4, 4}}, 3));
    CHECK(boundary_squares_to_zero(dx));
    // in the drum every spanning pair extends to exactly two spanning triples,
    // so the complex is a closed orientable pseudomanifold
    std::vector<int> cofaces(dx.ncells[2], 0);
    for (const auto& colv : dx.d[3].col)
        for (const auto& e : colv) cofaces[e.first]++;
    for (int n : cofaces) CHECK(n == 2);
    auto db = betti(dx, Field::Q, 3);
    CHECK(db[0] == 1);
    CHECK(db[3] == 1);
    CHECK(db[0] - db[1] + db[2] - db[3] == 0);
}

TEST_CASE("orientation follows the status rule") {
    Polytope sq = square();
    Colouring lam = alternating_colouring(sq);
    Moves mv = discrete_for(2);
    CubeComplex C = build(sq, lam, 2);

    State all_i{std::vector<Status>(4, Status::I)};
    orient(C, lam, all_i, mv);
    // at its base vertex every edge has the untouched status I, so every edge
    // points inward
    for (uint8_t o : C.edge_out) CHECK(o == 0);

    State all_o{std::vector<Status>(4, Status::O)};
    orient(C, lam, all_o, mv);
    for (uint8_t o : C.edge_out) CHECK(o == 1);

    State bal{{Status::I, Status::I, Status::O, Status::O}};
    orient(C, lam, bal, mv);
    for (size_t i = 0; i < C.edge_out.size(); i++) {
        Status st = status_at(lam, bal, mv, C.cells[1].v[i], C.cells[1].facets[i]);
        CHECK(C.edge_out[i] == (st == Status::O ? 1 : 0));
    }

    Colouring mismatched{2, {1, 2, 1, 2, 1, 2}};
    CHECK_THROWS_AS(orient(C, mismatched, all_i, mv), std::invalid_argument);
    C = build(sq, lam, 2);
    CHECK_THROWS_AS(cocycle(C), std::logic_error);  // not oriented
}

TEST_CASE("cocycle: coherent passes, bad pair is named") {
    Polytope sq = square();
    Colouring lam = alternating_colouring(sq);
    CubeComplex C = build(sq, lam, 2);

    // discrete moves make any state coherent
    State bal{{Status::I, Status::I, Status::O, Status::O}};
    orient(C, lam, bal, discrete_for(2));
    const auto& z = cocycle(C);
    REQUIRE(z.size() == C.cells[1].v.size());
    for (size_t i = 0; i < z.size(); i++) CHECK(z[i] == (C.edge_out[i] ? 1 : -1));

    // one block {1,2}: same-block pairs with equal status are merely Good and
    // still give a cocycle
    Moves one_block{{{1, 2}}};
    State all_i{std::vector<Status>(4, Status::I)};
    orient(C, lam, all_i, one_block);
    CHECK(classify_all(sq, lam, all_i, one_block).good == 4);
    CHECK_NOTHROW(cocycle(C));

    // opposite statuses in one block are Bad; the error names a spanning pair
    State twisted{{Status::I, Status::O, Status::I, Status::O}};
    orient(C, lam, twisted, one_block);
    REQUIRE(classify_all(sq, lam, twisted, one_block).bad > 0);
    try {
        cocycle(C);
        FAIL("expected BadPairPresent");
    } catch (const BadPairPresent& e) {
        CHECK(classify_pair(e.first_facet, e.second_facet, sq, lam, twisted, one_block) ==
              PairClass::Bad);
    }
}

TEST_CASE("cyclic covers: counts, euler, deck action, parity of components") {
    Polytope sq = square();
    Colouring lam = alternating_colouring(sq);
    Moves mv = discrete_for(2);
    State bal{{Status::I, Status::I, Status::O, Status::O}};

    CubeComplex C = build(sq, lam, 2);
    orient(C, lam, bal, mv);
    std::vector<int> z = cocycle(C);

    // ell = 1 is the complex itself
    CubeComplex C1 = cyclic_cover(C, z, 1);
    for (int d = 0; d <= 2; d++) CHECK(C1.count(d) == C.count(d));
    ChainComplex cx = cube_boundary_matrices(C);
    ChainComplex cx1 = cube_boundary_matrices(C1);
    for (int k = 1; k <= 2; k++) CHECK(cx.d[k].col == cx1.d[k].col);

    for (int ell = 2; ell <= 6; ell++) {
        CubeComplex Cl = cyclic_cover(C, z, ell);
        for (int d = 0; d <= 2; d++) CHECK(Cl.count(d) == ell * C.count(d));
        CHECK(euler_characteristic(Cl) == 0);
        ChainComplex cl = cube_boundary_matrices(Cl);
        CHECK(boundary_squares_to_zero(cl));
        // the balanced-state cocycle pairs to -2 with each torus loop, so the
        // cover splits into gcd(ell, 2) tori
        long long comps = ell % 2 == 0 ? 2 : 1;
        auto b = betti(cl, Field::Q, 2);
        CHECK(b[0] == comps);
        CHECK(b[1] == 2 * comps);
        CHECK(b[2] == comps);

        // deck action: shifting the sheet is a cell-complex automorphism
        for (int d = 0; d <= 2; d++) {
            for (size_t i = 0; i < Cl.cells[d].v.size(); i += 7) {
                const int32_t* S = Cl.cells[d].facets.data() + (size_t)d * i;
                int js = (Cl.cells[d].sheet[i] + 1) % ell;
                CHECK(Cl.find_cell(d, Cl.cells[d].v[i], js, S) >= 0);
            }
        }
    }

    // non-cocycle input is rejected
    std::vector<int> zbad = z;
    zbad[0] = -zbad[0];
    CHECK_THROWS_AS(cyclic_cover(C, zbad, 3), std::invalid_argument);
    CHECK_THROWS_AS(cyclic_cover(C, z, 0), std::invalid_argument);

    // b1 of 2n-gon covers grows linearly: b1 = b0 + ell(2n-3), b2 = 0
    for (int n = 2; n <= 3; n++) {
        Polytope P = polygon_2n(n);
        Colouring pl = alternating_colouring(P);
        std::vector<Status> st(2 * n);
        for (int f = 0; f < 2 * n; f++) st[f] = f < n ? Status::I : Status::O;
        CubeComplex B = build(P, pl, 2);
        orient(B, pl, State{st}, discrete_for(2));
        std::vector<int> zp = cocycle(B);
        for (int ell = 1; ell <= 6; ell++) {
            CubeComplex Bl = cyclic_cover(B, zp, ell);
            CHECK(euler_characteristic(Bl) == (long long)ell * (3 - 2 * n));
            auto b = betti(cube_boundary_matrices(Bl), Field::Q, 2);
            CHECK(b[2] == 0);
            CHECK(b[1] == b[0] + (long long)ell * (2 * n - 3));
        }
    }
}
