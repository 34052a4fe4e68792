#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <string>
#include <vector>

#include "rap/io.hpp"

using namespace rap;

namespace {

Polytope drum3() {
    Polytope P;
    P.dim = 3;
    P.num_facets = 6;
    P.adjacency = {{0, 1}, {1, 2}, {2, 3}, {0, 3}};
    for (int side = 0; side < 4; ++side) {
        P.adjacency.emplace_back(side, 4);
        P.adjacency.emplace_back(side, 5);
    }
    std::sort(P.adjacency.begin(), P.adjacency.end());
    for (int cap : {4, 5})
        for (auto [a, b] : {std::pair{0, 1}, {1, 2}, {2, 3}, {0, 3}})
            P.finite_vertices.push_back({a, b, cap});
    P.ideal_vertices = {{{0, 2}, {1, 3}}};
    P.build_index();
    return P;
}

}  // namespace

TEST_CASE("polytope round-trip") {
    for (const Polytope& P : {square(), polygon_2n(5), drum3(), gosset_p8()}) {
        Polytope Q = read_polytope(write_polytope(P));
        CHECK(P == Q);
        // the derived index must be rebuilt, not serialized
        auto [a, b] = P.adjacency.front();
        CHECK(Q.adjacent(a, b));
        CHECK_FALSE(Q.adjacent(a, a));
    }

    std::string text = write_polytope(square());
    CHECK(text.find("\"format\": \"rap/polytope\"") != std::string::npos);
    CHECK(text.find("\"dim\": 2") != std::string::npos);
    CHECK(text.back() == '\n');
}

TEST_CASE("polytope rejects malformed input") {
    CHECK_THROWS_AS(read_polytope("not json"), std::invalid_argument);
    CHECK_THROWS_AS(read_polytope("{}"), std::invalid_argument);
    CHECK_THROWS_AS(read_polytope(write_colouring(alternating_colouring(square()))),
                    std::invalid_argument);

    // adjacency index out of range
    CHECK_THROWS_AS(
        read_polytope(R"({"format": "rap/polytope", "version": 1, "dim": 2,
                          "num_facets": 2, "adjacency": [[0, 5]],
                          "finite_vertices": [], "ideal_vertices": []})"),
        std::invalid_argument);
    // self-adjacency
    CHECK_THROWS_AS(
        read_polytope(R"({"format": "rap/polytope", "version": 1, "dim": 2,
                          "num_facets": 2, "adjacency": [[1, 1]],
                          "finite_vertices": [], "ideal_vertices": []})"),
        std::invalid_argument);
    // wrong version
    CHECK_THROWS_AS(
        read_polytope(R"({"format": "rap/polytope", "version": 99, "dim": 2,
                          "num_facets": 0, "adjacency": [],
                          "finite_vertices": [], "ideal_vertices": []})"),
        std::invalid_argument);
}

TEST_CASE("colouring, state and moves round-trip") {
    Colouring lam{4, {1, 2, 3, 2, 4, 4}};
    Colouring lam2 = read_colouring(write_colouring(lam));
    CHECK(lam2.palette_size == lam.palette_size);
    CHECK(lam2.colour == lam.colour);

    State s;
    s.status = {Status::I, Status::O, Status::O, Status::I, Status::O, Status::I};
    State s2 = read_state(write_state(s));
    CHECK(s2.status == s.status);
    CHECK(write_state(s).find("\"I\"") != std::string::npos);

    Moves mv = discrete_moves(4);
    Moves mv2 = read_moves(write_moves(mv));
    CHECK(mv2.blocks == mv.blocks);
    Moves merged{{{1, 3}, {2}, {4}}};
    CHECK(read_moves(write_moves(merged)).blocks == merged.blocks);

    CHECK_THROWS_AS(read_state(R"({"format": "rap/state", "version": 1,
                                   "stati": ["I", "X"]})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(read_colouring("{}"), std::invalid_argument);
    CHECK_THROWS_AS(read_moves(write_state(s)), std::invalid_argument);
}

TEST_CASE("gram round-trip keeps exact rationals") {
    std::vector<std::vector<mpq_class>> G = {
        {mpq_class(16), mpq_class(-3, 7)},
        {mpq_class(-3, 7), mpq_class(mpz_class("123456789123456789"), mpz_class(4))}};
    auto G2 = read_gram(write_gram(G));
    CHECK(G2 == G);

    // non-reduced input is canonicalized on read
    auto G3 = read_gram(R"({"format": "rap/gram", "version": 1,
                            "entries": [[["2", "4"]]]})");
    CHECK(G3[0][0] == mpq_class(1, 2));

    CHECK_THROWS_AS(read_gram(R"({"format": "rap/gram", "version": 1,
                                  "entries": [[["1", "0"]]]})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(read_gram(R"({"format": "rap/gram", "version": 1,
                                  "entries": [[["1", "1"], ["2", "1"]]]})"),
                    std::invalid_argument);  // not square
    CHECK_THROWS_AS(read_gram(R"({"format": "rap/gram", "version": 1,
                                  "entries": [[["a", "1"]]]})"),
                    std::invalid_argument);
}

TEST_CASE("character round-trip with and without cocycle") {
    Character chi;
    chi.cusp_values = {{mpq_class(2), mpq_class(0)}, {mpq_class(-1, 3)}};
    Character chi2 = read_character(write_character(chi));
    CHECK(chi2.cusp_values == chi.cusp_values);
    CHECK(chi2.cocycle.empty());
    CHECK(write_character(chi).find("cocycle") == std::string::npos);

    chi.cocycle = {mpq_class(1), mpq_class(-1, 2), mpq_class(0)};
    Character chi3 = read_character(write_character(chi));
    CHECK(chi3.cocycle == chi.cocycle);
    CHECK(chi3.cusp_values == chi.cusp_values);
}

TEST_CASE("file helpers") {
    std::string path = "/tmp/rap_io_test_file.json";
    write_file(path, write_moves(discrete_moves(3)));
    CHECK(read_moves(read_file(path)).blocks == discrete_moves(3).blocks);
    std::remove(path.c_str());
    CHECK_THROWS_AS(read_file("/tmp/rap_io_no_such_file"), std::invalid_argument);
    CHECK_THROWS_AS(write_file("/tmp/no_such_dir_rap/x", "y"), std::invalid_argument);
}
