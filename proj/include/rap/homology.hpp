#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace rap {

// Simplicial complex on integer vertex labels.  simplices[d] holds the
// d-simplices as flattened sorted (d+1)-tuples, lex-ordered and deduped;
// simplices[0] is the vertex list.  Labels need not be contiguous (full
// subcomplexes keep the labels of their parent).
struct SimplicialComplex {
    std::vector<std::vector<int>> simplices;

    int dim() const { return (int)simplices.size() - 1; }
    long long count(int d) const {
        if (d < 0 || d > dim()) return 0;
        return (long long)(simplices[d].size() / (d + 1));
    }
    bool empty() const { return simplices.empty() || simplices[0].empty(); }
    // index of a sorted d-simplex, -1 if absent
    long long find(int d, const int* verts) const;

    bool operator==(const SimplicialComplex& o) const { return simplices == o.simplices; }
};

// build from maximal (or any generating) simplices; closes under faces
SimplicialComplex complex_from_simplices(const std::vector<std::vector<int>>& gens);

SimplicialComplex full_subcomplex(const SimplicialComplex& K, const std::vector<int>& verts);

// sparse integer matrix, column-major, rows sorted within each column
struct SparseInt {
    int rows = 0, cols = 0;
    std::vector<std::vector<std::pair<int, long long>>> col;
};

// boundary matrices with simplicial signs; d[k] maps k-chains to (k-1)-chains
struct ChainComplex {
    std::vector<long long> ncells;
    std::vector<SparseInt> d;  // d[k] for k = 1..dim; d[0] unused (empty)
};

ChainComplex boundary_matrices(const SimplicialComplex& K);
bool boundary_squares_to_zero(const ChainComplex& cx);

enum class Field { Q, Z2 };

// Betti numbers b_0..b_k.  Q-ranks are exact (integer elimination with
// arbitrary-precision fallback); Z2 uses bit-packed elimination.  The
// reduced variant subtracts 1 from b_0 of a nonempty complex.
std::vector<long long> betti(const ChainComplex& cx, Field field, int up_to, bool reduced = false);
std::vector<long long> betti(const SimplicialComplex& K, Field field, int up_to,
                             bool reduced = false);

long long rank_q(const SparseInt& m);
long long rank_z2(const SparseInt& m);

// Smith normal form summary of one integer matrix: rank and the nontrivial
// invariant factors (absolute values > 1, in divisibility order).
struct SmithSummary {
    long long rank = 0;
    std::vector<mpz_class> torsion;
};
SmithSummary smith_summary(const SparseInt& m);

// H_0..H_k as rank + torsion coefficients (invariant factors > 1).
struct IntegralHomology {
    std::vector<long long> rank;
    std::vector<std::vector<mpz_class>> torsion;
};
IntegralHomology integral_homology(const ChainComplex& cx, int up_to, bool reduced = false);
IntegralHomology integral_homology(const SimplicialComplex& K, int up_to, bool reduced = false);

enum class Certificate : uint8_t { Certified, Unknown };

// greedy free-face collapse to a point (with a cone-apex fast path that
// performs the canonical cone collapse); never a disproof
Certificate certify_contractible(const SimplicialComplex& K);

// Edge-path-group presentation of a connected complex: generators are the
// non-tree edges of a BFS spanning tree, relators come from triangles.
struct GroupPresentation {
    int num_generators = 0;
    std::vector<std::vector<int>> relators;  // signed 1-based generator ids
};
GroupPresentation edge_path_presentation(const SimplicialComplex& K);

// bounded Tietze simplification; true iff the presentation reduces to the
// trivial group within `budget` moves
bool tietze_trivializes(GroupPresentation pres, long long budget);

// collapse first, then presentation + Tietze; throws on disconnected input
Certificate certify_simply_connected(const SimplicialComplex& K, long long tietze_budget = 10000);

// classical 6-vertex triangulation of RP^2 (test fixture and SNF oracle)
SimplicialComplex rp2_complex();
// dunce hat triangulation with no free face (greedy collapse gets stuck)
SimplicialComplex dunce_hat();

}  // namespace rap
