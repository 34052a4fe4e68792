#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rap/cubulation.hpp"
#include "rap/game.hpp"
#include "rap/polytope.hpp"

namespace rap {

// Closed edge path in the base cubulation.  Each step records the edge index
// and the direction of travel: +1 when the step runs from the canonical base
// vertex towards base^e, -1 for the reverse.
struct Loop {
    std::vector<std::pair<long long, int>> steps;

    int length() const { return (int)steps.size(); }
};

// Cusp cross-section torus at an ideal vertex: the basis loops gamma_1..
// gamma_{n-1} (one per opposite pair, dual to the lifts of F1_i and F2_i) and
// a flat metric on their span.  The Gram matrix is a free parameter of the
// analysis; the default built by cusp_loops gives every edge length 1, i.e.
// G = diag(len(gamma_i)^2).
struct CuspTorus {
    int ideal_vertex = -1;
    uint32_t base = 0;  // v0, the chosen lift
    std::vector<Loop> loops;
    std::vector<std::vector<mpq_class>> gram;
};

// Walk edges dual to F1_i, F2_i alternately from v0 until the walk closes.
// Loops have length 2 exactly when the pair shares a colour, else 4; a walk
// that fails to close within 4 steps signals corrupted input data.  The
// complex must be a base cubulation (ell = 1) with edges materialized.
CuspTorus cusp_loops(const CubeComplex& C, const Polytope& P, const Colouring& lam, int v_ideal,
                     uint32_t v0);

// Signed sum of the cochain along the loop.
long long evaluate(const std::vector<int>& z, const Loop& gamma);
mpq_class evaluate(const std::vector<mpq_class>& z, const Loop& gamma);

// The two sufficient conditions of the surjectivity Prop. for an opposite
// pair (F1, F2) at an ideal vertex: Cond1 = the facets share a colour, Cond2
// = they lie in distinct connected components of the subgraph X of facets
// coloured by one of their two colours.
enum class PairCondition : uint8_t { Cond1, Cond2, None };
enum class CuspVerdict : uint8_t { Surjective, NonTrivial, Inconclusive };

struct SurjectivityReport {
    std::vector<PairCondition> pairs;
    CuspVerdict verdict = CuspVerdict::Inconclusive;
};

// Surjective iff every pair satisfies Cond1 or Cond2, NonTrivial iff at least
// one does.  The conditions are sufficient only, so the remaining verdict is
// Inconclusive rather than a negative.
SurjectivityReport surjectivity_conditions(const Polytope& P, const Colouring& lam, int v_ideal);

// The state and moves constructed in the Prop. proof for pair j of the given
// ideal vertex.  Under Cond1 the moves are discrete and only F1_j is switched
// on; the induced cocycle evaluates to +-2 on gamma_j and to 0 on the other
// loops.  Under Cond2 the two colours form a single move block and the whole
// X-component of F1_j is switched on; the cocycle evaluates to +-4 on gamma_j
// and 0 elsewhere.  Throws std::invalid_argument when the pair satisfies
// neither condition.
struct CuspCocycleData {
    State state;
    Moves moves;
    PairCondition used = PairCondition::None;
};

CuspCocycleData surjectivity_cocycle(const Polytope& P, const Colouring& lam, int v_ideal,
                                     int pair_j);

// Choi-Park formula: b1 = sum over nonzero colour subsets w of the reduced
// number of components of the full subcomplex of the nerve on facets whose
// colour lies in w.  Enumeration is capped at 2^c <= 2^24.  The result does
// not depend on jobs; the subsets are split across workers and the partial
// sums added.
long long choi_park_b1(const Polytope& P, const Colouring& lam, int jobs = 1);

// Kernel of x -> sum x_i * values_i on Z^r.  For nonzero input the basis has
// rank r-1 and comes from integer column reduction; `complement` is a vector
// completing it to a basis of Z^r whose value is +-gcd.  All-zero input is
// flagged and returns the identity basis.
struct KernelSublattice {
    std::vector<std::vector<mpz_class>> basis;
    std::vector<mpz_class> complement;
    mpz_class gcd;
    bool whole_lattice = false;
};

KernelSublattice kernel_sublattice(const std::vector<mpz_class>& values);

// Least squared length of a nonzero vector of the sublattice spanned by
// `basis`, by exhaustive enumeration inside the ball whose radius is the
// shortest basis vector.  Exact rational arithmetic throughout; throws
// std::invalid_argument when the form fails to be positive definite on the
// span or the basis is empty.
mpq_class systole_squared(const std::vector<std::vector<mpq_class>>& gram,
                          const std::vector<std::vector<mpz_class>>& basis);
double systole(const std::vector<std::vector<mpq_class>>& gram,
               const std::vector<std::vector<mpz_class>>& basis);

// All nonzero lattice vectors x with x^T G x <= bound_squared, one
// representative per antipodal pair (first nonzero coordinate positive), in
// lexicographic order.  Throws std::length_error past the safety cap.
std::vector<std::vector<mpz_class>> short_vectors(const std::vector<std::vector<mpq_class>>& gram,
                                                  const mpq_class& bound_squared,
                                                  long long cap = 1LL << 20);

// A character is carried by its per-cusp value vectors; the underlying edge
// cochain is kept when known (it is not needed for the lattice-level
// analysis).
struct Character {
    std::vector<mpq_class> cocycle;                   // per edge, may be empty
    std::vector<std::vector<mpq_class>> cusp_values;  // per cusp: mu(gamma_i)
};

Character character_from_cocycle(const std::vector<mpq_class>& z,
                                 const std::vector<CuspTorus>& cusps);
Character character_from_cocycle(const std::vector<int>& z, const std::vector<CuspTorus>& cusps);

struct TwoPiResult {
    bool pass = false;
    std::string reason;
};

// Per-cusp check that every closed geodesic of the kernel subtorus is longer
// than 2*pi: fail with reason "trivial on cusp" when the restriction is zero,
// otherwise compare the exact kernel systole against 2*pi with interval
// arithmetic at growing precision (equality cannot occur).
std::vector<TwoPiResult> two_pi_check(const Character& mu, const std::vector<CuspTorus>& cusps);

struct NoSolutionWithinBound : std::runtime_error {
    explicit NoSolutionWithinBound(const std::string& what) : std::runtime_error(what) {}
};

// Certificate of the perturbation search: the chosen coefficients and, per
// cusp, the enumerated short vectors with their (all nonzero) mu-values.
// Vectors are stored one per antipodal pair; the value on -x is -value(x).
struct PerturbResult {
    Character mu;
    std::vector<mpq_class> lambda;  // one per aux character

    struct CuspEvidence {
        std::vector<std::vector<mpz_class>> vectors;
        std::vector<mpq_class> values;
    };
    std::vector<CuspEvidence> evidence;
};

// Search mu = chi + sum lambda_a * aux_a over the rational grid |p| <=
// max_num, q <= max_den such that on every cusp the value vector is nonzero
// and every nonzero lattice vector of length <= target has nonzero value.
// Candidates are ordered by magnitude (zero first, positive before negative)
// and tuples lexicographically; the first hit wins, independently of jobs.
// Throws NoSolutionWithinBound when the grid is exhausted.
PerturbResult perturb(const Character& chi, const mpq_class& target,
                      const std::vector<CuspTorus>& cusps, const std::vector<Character>& aux,
                      long long max_num = 8, long long max_den = 8, int jobs = 1);

}  // namespace rap
