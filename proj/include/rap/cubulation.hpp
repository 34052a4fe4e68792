#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rap/game.hpp"
#include "rap/homology.hpp"
#include "rap/polytope.hpp"

namespace rap {

// Thrown by cocycle() when the stored orientation fails the coboundary test on
// some square; carries the facet pair spanning the offending square.
struct BadPairPresent : std::runtime_error {
    int first_facet;
    int second_facet;
    BadPairPresent(int f1, int f2);
};

// Dual cube complex of the coloured manifold.  Vertices are the points of
// Z_2^c; a k-cell is a pair (v, S) where S is a spanning k-set of facets with
// pairwise-distinct colours and v is the canonical (lexicographically least)
// vertex of the cube, i.e. the one whose S-colour coordinates are all zero.
// Cells are materialized only up to built_dim; ell > 1 marks a cyclic cover,
// whose cells additionally carry a sheet index.
struct CubeComplex {
    int c = 0;
    int polytope_dim = 0;
    int built_dim = -1;
    int ell = 1;
    Colouring colouring;

    struct Level {
        std::vector<uint32_t> v;      // canonical base vertex per cell
        std::vector<int32_t> sheet;   // per-cell sheet; empty when ell == 1
        std::vector<int32_t> facets;  // flattened spanning sets, stride = dim
    };
    std::vector<Level> cells;  // cells[d] for d = 0..built_dim

    // every spanning 2-set with distinct colours, in lexicographic order;
    // recorded even when squares themselves are not materialized
    std::vector<std::pair<int, int>> square_pairs;
    // position of each facet's block in the edge level, -1 if the facet spans
    // no face (cannot happen for a valid polytope)
    std::vector<int> facet_edge_pos;

    bool oriented = false;
    std::vector<uint8_t> edge_out;  // per edge: 1 = points away from the base vertex
    bool has_cocycle = false;
    std::vector<int> z;  // per edge, value in the base -> base^e direction

    long long count(int d) const;
    // index of a cell given its canonical data, -1 if absent
    long long find_cell(int d, uint32_t v, int sheet, const int32_t* S) const;
    // O(1) edge lookup; facet must span and v must have the facet's colour bit clear
    long long edge_index(int facet, uint32_t v, int sheet) const;
};

// Materialize the dual complex up to dimension up_to_dim.  Throws
// std::length_error when the total cell count would exceed cell_cap and
// std::invalid_argument on an invalid colouring.
CubeComplex build(const Polytope& P, const Colouring& lam, int up_to_dim,
                  long long cell_cap = 1LL << 24);

// Orient every edge by the game status at its base vertex: status I points the
// edge toward the base (inward), status O away from it.
void orient(CubeComplex& C, const Colouring& lam, const State& s, const Moves& mv);

// The +-1 cochain induced by the orientation.  Verifies the cocycle condition
// on every square of the complex (materialized or not) and throws
// BadPairPresent naming the spanning pair of the first square where it fails.
const std::vector<int>& cocycle(CubeComplex& C);

// Alternating cell-count sum; requires the complex built to full dimension.
long long euler_characteristic(const CubeComplex& C);

// The ell-fold cyclic cover determined by z: vertices (v, j mod ell), with the
// endpoint of each lifted edge shifted by the z-value of the edge below it.
// Throws std::invalid_argument if z is not a cocycle.
CubeComplex cyclic_cover(const CubeComplex& C, const std::vector<int>& z, int ell);

// Cellular boundary matrices of the materialized skeleton, suitable for the
// homology engine.
ChainComplex cube_boundary_matrices(const CubeComplex& C);

}  // namespace rap
