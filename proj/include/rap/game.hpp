#pragma once

#include <cstdint>
#include <vector>

#include "rap/polytope.hpp"

namespace rap {

enum class Status : uint8_t { I, O };

// Status assignment facet -> {I,O}.  A state is balanced when every colour
// class is split evenly, which is what the diagonal Morse function needs.
struct State {
    std::vector<Status> status;

    bool operator==(const State& o) const { return status == o.status; }
};

bool is_balanced(const State& s, const Colouring& lam);

// Partition of the colour palette {1..c} into moves.
struct Moves {
    std::vector<std::vector<int>> blocks;

    bool operator==(const Moves& o) const { return blocks == o.blocks; }
};

Moves discrete_moves(int palette_size);                    // singleton blocks
bool valid_moves(const Moves& mv, int palette_size);

// block index of each colour (1-based colours; entry 0 unused)
std::vector<int> block_of_colour(const Moves& mv, int palette_size);

// Status of facet F seen from cubulation vertex v in Z2^c: s(F) flipped iff
// the coordinates of v over the block containing colour(F) have odd parity.
// This is the closed form of the edge-inversion rule; path-independence is
// checked in the tests, not assumed here.
Status status_at(const Colouring& lam, const State& s, const Moves& mv, uint32_t v, int facet);

enum class PairClass : uint8_t { VeryGood, Good, Bad };

// Square classification for a pair of adjacent facets: very good when the
// colours sit in distinct moves, otherwise good/bad by status agreement.
PairClass classify_pair(int F1, int F2, const Polytope& P, const Colouring& lam, const State& s,
                        const Moves& mv);

struct GameReport {
    long long very_good = 0, good = 0, bad = 0;
    std::vector<std::pair<int, int>> bad_pairs;
    bool coherent = false;    // all pairs very good
    bool cocycle_ok = false;  // no bad pair
};

GameReport classify_all(const Polytope& P, const Colouring& lam, const State& s, const Moves& mv);

}  // namespace rap
