#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace rap {

// Combinatorial model of a finite-volume right-angled polytope.
//
// Facets are indexed 0..num_facets-1.  Adjacency records pairs of facets
// meeting in a codimension-2 face.  A finite vertex is the set of the dim
// facets through it (pairwise adjacent, since the polytope is right-angled
// and simple).  An ideal vertex is recorded as the ordered list of dim-1
// opposite pairs of its parallelepiped link: facets from distinct pairs
// meet, facets within a pair meet only at the ideal point.
struct Polytope {
    int dim = 0;
    int num_facets = 0;
    std::vector<std::pair<int, int>> adjacency;           // i < j, sorted
    std::vector<std::vector<int>> finite_vertices;        // sorted facet ids
    std::vector<std::vector<std::pair<int, int>>> ideal_vertices;

    // derived index, rebuilt by build_index(); not part of structural equality
    int adj_words = 0;
    std::vector<uint64_t> adj_bits;                       // row-major bitset
    std::vector<std::vector<int>> facet_finite;           // facet -> finite vertex ids
    std::vector<std::vector<int>> facet_ideal;            // facet -> ideal vertex ids

    void build_index();
    bool adjacent(int a, int b) const {
        return (adj_bits[size_t(a) * adj_words + (b >> 6)] >> (b & 63)) & 1;
    }
    bool operator==(const Polytope& o) const {
        return dim == o.dim && num_facets == o.num_facets && adjacency == o.adjacency &&
               finite_vertices == o.finite_vertices && ideal_vertices == o.ideal_vertices;
    }
};

// Proper colouring of the facets.  Colours are 1-based: {1..palette_size}.
struct Colouring {
    int palette_size = 0;
    std::vector<int> colour;                              // facet -> colour

    bool operator==(const Colouring& o) const {
        return palette_size == o.palette_size && colour == o.colour;
    }
};

struct ValidationReport {
    std::vector<std::string> violations;
    bool valid() const { return violations.empty(); }
};

ValidationReport validate_polytope(const Polytope& P);
ValidationReport validate_colouring(const Polytope& P, const Colouring& lam);

// P8: the ideal right-angled hyperbolic 8-polytope dual to the Gosset
// polytope 4_21.  Facets are the 240 minimal vectors of E8 (doubled integer
// coordinates), adjacent when the Gosset vertices span an edge (inner
// product 4 in doubled coordinates).  Finite vertices are the 17280 simplex
// facets of 4_21 (8-cliques), ideal vertices the 2160 orthoplex facets with
// their 7 antipodal vertex pairs as opposite-pair data.
Polytope gosset_p8();

// Doubled-coordinate E8 vectors backing gosset_p8's facet indexing, in the
// exact facet order used by it.
std::vector<std::array<int, 8>> e8_roots();

// Induced colouring on the 2(dim-1) link facets of an ideal vertex, facets
// ordered pair-by-pair (first, second).  Returns the induced colouring and
// c' = number of distinct colours inherited.
std::pair<Colouring, int> link_colouring(const Polytope& P, const Colouring& lam, int ideal_id);

// Per-ideal-vertex cusp counts 2^(c-c') and their total.
std::pair<std::vector<long long>, long long> cusp_count(const Polytope& P, const Colouring& lam);

// True iff S is the facet set of a face of P: S lies in some finite
// vertex's facet set, or inside some ideal vertex's link with no opposite
// pair (an opposite pair meets only at the ideal point, which is not a
// face).
bool spans_simplex(const Polytope& P, const std::vector<int>& S);

// Right-angled polygons, the 2-dimensional test bed.  `square()` is the
// compact quadrilateral; `polygon_2n(n)` the right-angled 2n-gon with one
// ideal vertex and 2n-1 finite ones.  Both come with the alternating
// 2-colouring.
Polytope square();
Polytope polygon_2n(int n);
Colouring alternating_colouring(const Polytope& P);

}  // namespace rap
