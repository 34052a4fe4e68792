#pragma once

#include <cstdint>
#include <vector>

#include "rap/game.hpp"
#include "rap/homology.hpp"
#include "rap/polytope.hpp"

namespace rap {

// Nerve of the facet family: vertices are facets, k-simplices the spanning
// (k+1)-sets.  up_to_dim = -1 builds everything (dimension P.dim - 1); a
// bound keeps the big complexes affordable (links only consume dim <= k).
SimplicialComplex nerve(const Polytope& P, int up_to_dim = -1);

// Full subcomplex of the nerve L on the facets with status O (ascending) or
// I (descending) at the cubulation vertex v.
SimplicialComplex ascending_link(const SimplicialComplex& L, const Colouring& lam,
                                 const State& s, const Moves& mv, uint32_t v);
SimplicialComplex descending_link(const SimplicialComplex& L, const Colouring& lam,
                                  const State& s, const Moves& mv, uint32_t v);

enum class LinkCheck : uint8_t { Pass, Fail, Unknown };

// One deduplicated status pattern (a parity bit per move block) and the
// verdicts for its ascending link.  The descending link of a pattern is the
// ascending link of the all-blocks-flipped pattern, so a pass over all
// patterns covers both families.
struct LinkRecord {
    uint32_t pattern = 0;
    int o_count = 0;                // link vertex count
    bool connected = false;
    std::vector<LinkCheck> hq;      // reduced H_i = 0 over Q, i = 0..k-1
    std::vector<LinkCheck> hz2;     //   ... over Z/2
    std::vector<LinkCheck> hz;      //   ... integrally
    LinkCheck simply_connected = LinkCheck::Unknown;
    bool pass = false;              // every check up to the requested k

    bool clean() const;             // no Fail and no Unknown anywhere
};

struct LinkReport {
    int k = 0;
    long long patterns = 0;
    int verdict = 0;                // largest j <= k with all links passing level j
    long long unknowns = 0;         // total Unknown verdicts across records
    long long disconnected = 0;
    long long sc_failures = 0;      // Fail or Unknown simple-connectivity
    std::vector<long long> h_failures;  // per i = 0..k-1, integral failures
    // records that fail or carry an Unknown, sorted by (vertex count, pattern)
    std::vector<LinkRecord> failures;
};

// Batch verdict over every distinct status pattern (links depend only on the
// O-set).  Requires a coherent orientation; jobs > 1 parallelizes over
// patterns with a worker-count-independent result.
LinkReport check_all_links(const Polytope& P, const Colouring& lam, const State& s,
                           const Moves& mv, int k, int jobs = 1);

}  // namespace rap
