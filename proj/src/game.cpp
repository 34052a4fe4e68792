#include "rap/game.hpp"

#include <algorithm>
#include <stdexcept>

namespace rap {

bool is_balanced(const State& s, const Colouring& lam) {
    std::vector<int> diff(lam.palette_size + 1, 0);
    for (size_t f = 0; f < s.status.size(); f++)
        diff[lam.colour[f]] += s.status[f] == Status::I ? 1 : -1;
    for (int c = 1; c <= lam.palette_size; c++)
        if (diff[c] != 0) return false;
    return true;
}

Moves discrete_moves(int palette_size) {
    Moves mv;
    for (int c = 1; c <= palette_size; c++) mv.blocks.push_back({c});
    return mv;
}

bool valid_moves(const Moves& mv, int palette_size) {
    std::vector<int> seen(palette_size + 1, 0);
    for (const auto& b : mv.blocks) {
        if (b.empty()) return false;
        for (int c : b) {
            if (c < 1 || c > palette_size || seen[c]) return false;
            seen[c] = 1;
        }
    }
    for (int c = 1; c <= palette_size; c++)
        if (!seen[c]) return false;
    return true;
}

std::vector<int> block_of_colour(const Moves& mv, int palette_size) {
    std::vector<int> blk(palette_size + 1, -1);
    for (int i = 0; i < (int)mv.blocks.size(); i++)
        for (int c : mv.blocks[i]) blk[c] = i;
    return blk;
}

Status status_at(const Colouring& lam, const State& s, const Moves& mv, uint32_t v, int facet) {
    int col = lam.colour[facet];
    uint32_t mask = 0;
    for (const auto& b : mv.blocks) {
        bool has = std::find(b.begin(), b.end(), col) != b.end();
        if (has) {
            for (int c : b) mask |= uint32_t(1) << (c - 1);
            break;
        }
    }
    bool flip = __builtin_popcount(v & mask) & 1;
    Status base = s.status[facet];
    if (!flip) return base;
    return base == Status::I ? Status::O : Status::I;
}

PairClass classify_pair(int F1, int F2, const Polytope& P, const Colouring& lam, const State& s,
                        const Moves& mv) {
    if (!P.adjacent(F1, F2)) throw std::invalid_argument("classify_pair: facets not adjacent");
    auto blk = block_of_colour(mv, lam.palette_size);
    if (blk[lam.colour[F1]] != blk[lam.colour[F2]]) return PairClass::VeryGood;
    return s.status[F1] == s.status[F2] ? PairClass::Good : PairClass::Bad;
}

GameReport classify_all(const Polytope& P, const Colouring& lam, const State& s, const Moves& mv) {
    GameReport rep;
    auto blk = block_of_colour(mv, lam.palette_size);
    for (auto [a, b] : P.adjacency) {
        if (blk[lam.colour[a]] != blk[lam.colour[b]]) {
            rep.very_good++;
        } else if (s.status[a] == s.status[b]) {
            rep.good++;
        } else {
            rep.bad++;
            rep.bad_pairs.push_back({a, b});
        }
    }
    rep.coherent = rep.good == 0 && rep.bad == 0;
    rep.cocycle_ok = rep.bad == 0;
    return rep;
}

}  // namespace rap
