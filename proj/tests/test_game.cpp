#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "rap/game.hpp"
#include "rap/polytope.hpp"

using namespace rap;

namespace {

// Independent oracle for status_at: walk an explicit edge path from 0 to v,
// one coordinate flip at a time, applying the inversion rule at each step
// ("flip the status of every facet whose colour shares a move with the
// flipped colour's... block of the flipped coordinate").  The closed form
// must agree regardless of the path taken, including redundant detours.
Status status_by_path(const Colouring& lam, const State& s, const Moves& mv, uint32_t v, int facet,
                      std::mt19937& rng) {
    // locate the move containing the facet's colour by direct scan
    const std::vector<int>* fblock = nullptr;
    for (const auto& b : mv.blocks)
        for (int col : b)
            if (col == lam.colour[facet]) fblock = &b;
    REQUIRE(fblock != nullptr);
    Status cur = s.status[facet];
    auto flip = [&](int colour) {
        for (int col : *fblock)
            if (col == colour) cur = cur == Status::I ? Status::O : Status::I;
    };
    // random detour: toggle some coordinate twice
    std::uniform_int_distribution<int> dc(1, lam.palette_size);
    if (rng() & 1) {
        int c = dc(rng);
        flip(c);
        flip(c);
    }
    std::vector<int> order;
    for (int c = 1; c <= lam.palette_size; c++)
        if (v >> (c - 1) & 1) order.push_back(c);
    std::shuffle(order.begin(), order.end(), rng);
    for (int c : order) flip(c);
    return cur;
}

Moves random_partition(int c, std::mt19937& rng) {
    Moves mv;
    std::uniform_int_distribution<int> d(0, c - 1);
    std::vector<std::vector<int>> raw(c);
    for (int col = 1; col <= c; col++) raw[d(rng)].push_back(col);
    for (auto& b : raw)
        if (!b.empty()) mv.blocks.push_back(b);
    return mv;
}

}  // namespace

TEST_CASE("status_at closed form matches the inductive path rule") {
    std::mt19937 rng(20240901);
    const int c = 9;
    Colouring lam;
    lam.palette_size = c;
    for (int f = 0; f < 30; f++) lam.colour.push_back(f % c + 1);
    std::uniform_int_distribution<uint32_t> dv(0, (1u << c) - 1);
    std::uniform_int_distribution<int> df(0, 29);
    for (int trial = 0; trial < 400; trial++) {
        State s;
        for (int f = 0; f < 30; f++) s.status.push_back(rng() & 1 ? Status::I : Status::O);
        Moves mv = random_partition(c, rng);
        for (int probe = 0; probe < 5; probe++) {
            uint32_t v = dv(rng);
            int F = df(rng);
            CHECK(status_at(lam, s, mv, v, F) == status_by_path(lam, s, mv, v, F, rng));
        }
    }
}

TEST_CASE("status_at basics") {
    Colouring lam{3, {1, 2, 3, 1}};
    State s{{Status::I, Status::O, Status::I, Status::O}};

    SUBCASE("base vertex is the state itself") {
        Moves mv = discrete_moves(3);
        for (int f = 0; f < 4; f++) CHECK(status_at(lam, s, mv, 0, f) == s.status[f]);
    }
    SUBCASE("discrete partition flips by own coordinate") {
        Moves mv = discrete_moves(3);
        CHECK(status_at(lam, s, mv, 0b001, 0) == Status::O);  // colour 1 flipped
        CHECK(status_at(lam, s, mv, 0b001, 1) == Status::O);  // colour 2 untouched
        CHECK(status_at(lam, s, mv, 0b110, 0) == Status::I);
        CHECK(status_at(lam, s, mv, 0b010, 1) == Status::I);
    }
    SUBCASE("two flips inside one block cancel") {
        Moves mv{{{1, 2}, {3}}};
        CHECK(status_at(lam, s, mv, 0b011, 0) == s.status[0]);
        CHECK(status_at(lam, s, mv, 0b011, 1) == s.status[1]);
        CHECK(status_at(lam, s, mv, 0b001, 1) == Status::I);  // colour 2 sees colour 1's flip
    }
    SUBCASE("endpoint consistency across an edge") {
        Moves mv{{{1, 3}, {2}}};
        for (uint32_t v = 0; v < 8; v++)
            for (int f = 0; f < 4; f++) {
                uint32_t w = v ^ (1u << (lam.colour[f] - 1));
                CHECK(status_at(lam, s, mv, v, f) != status_at(lam, s, mv, w, f));
            }
    }
}

TEST_CASE("classify_pair on the square") {
    Polytope P = square();
    Colouring lam = alternating_colouring(P);  // colours 1,2,1,2

    State both_i{{Status::I, Status::I, Status::I, Status::I}};
    State mixed{{Status::I, Status::O, Status::I, Status::O}};

    Moves separate = discrete_moves(2);
    Moves joined{{{1, 2}}};

    CHECK(classify_pair(0, 1, P, lam, both_i, separate) == PairClass::VeryGood);
    CHECK(classify_pair(0, 1, P, lam, both_i, joined) == PairClass::Good);
    CHECK(classify_pair(0, 1, P, lam, mixed, joined) == PairClass::Bad);

    SUBCASE("symmetry and global flip invariance") {
        for (auto [a, b] : P.adjacency) {
            for (const Moves& mv : {separate, joined}) {
                CHECK(classify_pair(a, b, P, lam, mixed, mv) ==
                      classify_pair(b, a, P, lam, mixed, mv));
                State flipped = mixed;
                for (auto& st : flipped.status) st = st == Status::I ? Status::O : Status::I;
                CHECK(classify_pair(a, b, P, lam, mixed, mv) ==
                      classify_pair(a, b, P, lam, flipped, mv));
            }
        }
    }
    SUBCASE("non-adjacent pair is an error") {
        CHECK_THROWS_AS(classify_pair(0, 2, P, lam, both_i, separate), std::invalid_argument);
    }
}

TEST_CASE("classify_all") {
    Polytope P = polygon_2n(3);
    Colouring lam = alternating_colouring(P);
    std::mt19937 rng(7);

    SUBCASE("discrete partition is coherent for any state") {
        Moves mv = discrete_moves(2);
        for (int t = 0; t < 10; t++) {
            State s;
            for (int f = 0; f < P.num_facets; f++)
                s.status.push_back(rng() & 1 ? Status::I : Status::O);
            GameReport r = classify_all(P, lam, s, mv);
            CHECK(r.coherent);
            CHECK(r.cocycle_ok);
            CHECK(r.good == 0);
            CHECK(r.bad == 0);
            CHECK(r.very_good == (long long)P.adjacency.size());
        }
    }
    SUBCASE("single block, constant state: good everywhere") {
        Moves mv{{{1, 2}}};
        State s(State{std::vector<Status>(P.num_facets, Status::I)});
        GameReport r = classify_all(P, lam, s, mv);
        CHECK_FALSE(r.coherent);
        CHECK(r.cocycle_ok);
        CHECK(r.good == (long long)P.adjacency.size());
        CHECK(r.bad_pairs.empty());
    }
    SUBCASE("single block, alternating state: everything bad") {
        Moves mv{{{1, 2}}};
        State s;
        for (int f = 0; f < P.num_facets; f++)
            s.status.push_back(f % 2 ? Status::O : Status::I);
        GameReport r = classify_all(P, lam, s, mv);
        CHECK_FALSE(r.cocycle_ok);
        CHECK(r.bad == (long long)P.adjacency.size());
        CHECK(r.bad_pairs.size() == P.adjacency.size());
    }
    SUBCASE("counts always partition the adjacency list") {
        for (int t = 0; t < 20; t++) {
            Moves mv = t % 2 ? discrete_moves(2) : Moves{{{1, 2}}};
            State s;
            for (int f = 0; f < P.num_facets; f++)
                s.status.push_back(rng() & 1 ? Status::I : Status::O);
            GameReport r = classify_all(P, lam, s, mv);
            CHECK(r.very_good + r.good + r.bad == (long long)P.adjacency.size());
            CHECK(r.coherent == (r.good == 0 && r.bad == 0));
            CHECK(r.cocycle_ok == (r.bad == 0));
        }
    }
}

TEST_CASE("balance and moves validity") {
    Polytope P = square();
    Colouring lam = alternating_colouring(P);

    CHECK(is_balanced(State{{Status::I, Status::I, Status::O, Status::O}}, lam));
    CHECK_FALSE(is_balanced(State{{Status::I, Status::I, Status::I, Status::O}}, lam));
    CHECK_FALSE(is_balanced(State{{Status::I, Status::O, Status::I, Status::O}}, lam));
    // colour classes here are {0,2} and {1,3}; the first state splits both

    CHECK(valid_moves(discrete_moves(4), 4));
    CHECK(valid_moves(Moves{{{2, 1}, {3, 4}}}, 4));
    CHECK_FALSE(valid_moves(Moves{{{1, 2}, {2, 3}, {4}}}, 4));  // overlap
    CHECK_FALSE(valid_moves(Moves{{{1, 2}, {4}}}, 4));          // misses 3
    CHECK_FALSE(valid_moves(Moves{{{1, 2, 3, 4}, {}}}, 4));     // empty block
    CHECK_FALSE(valid_moves(Moves{{{1, 2, 5}}}, 4));            // out of range
}
