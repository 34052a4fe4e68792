#include "rap/polytope.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace rap {

void Polytope::build_index() {
    adj_words = (num_facets + 63) / 64;
    adj_bits.assign(size_t(num_facets) * adj_words, 0);
    for (auto [a, b] : adjacency) {
        adj_bits[size_t(a) * adj_words + (b >> 6)] |= uint64_t(1) << (b & 63);
        adj_bits[size_t(b) * adj_words + (a >> 6)] |= uint64_t(1) << (a & 63);
    }
    facet_finite.assign(num_facets, {});
    facet_ideal.assign(num_facets, {});
    for (int i = 0; i < (int)finite_vertices.size(); i++)
        for (int f : finite_vertices[i]) facet_finite[f].push_back(i);
    for (int i = 0; i < (int)ideal_vertices.size(); i++)
        for (auto [a, b] : ideal_vertices[i]) {
            facet_ideal[a].push_back(i);
            facet_ideal[b].push_back(i);
        }
}

ValidationReport validate_polytope(const Polytope& P) {
    ValidationReport rep;
    auto flag = [&](std::string s) { rep.violations.push_back(std::move(s)); };
    if (P.dim < 2) flag("dim < 2");
    if (P.num_facets <= 0) flag("no facets");
    std::set<std::pair<int, int>> adj;
    for (auto [a, b] : P.adjacency) {
        if (a < 0 || b < 0 || a >= P.num_facets || b >= P.num_facets || a == b)
            flag("adjacency pair (" + std::to_string(a) + "," + std::to_string(b) +
                 ") out of range or reflexive");
        else
            adj.insert({std::min(a, b), std::max(a, b)});
    }
    auto adjacent = [&](int a, int b) {
        return adj.count({std::min(a, b), std::max(a, b)}) > 0;
    };
    std::vector<char> covered(P.num_facets, 0);
    for (size_t i = 0; i < P.finite_vertices.size(); i++) {
        const auto& V = P.finite_vertices[i];
        if ((int)V.size() != P.dim)
            flag("finite vertex " + std::to_string(i) + " has " + std::to_string(V.size()) +
                 " facets, expected " + std::to_string(P.dim));
        for (int f : V) {
            if (f < 0 || f >= P.num_facets) {
                flag("finite vertex " + std::to_string(i) + " facet out of range");
                continue;
            }
            covered[f] = 1;
        }
        for (size_t a = 0; a < V.size(); a++)
            for (size_t b = a + 1; b < V.size(); b++)
                if (!adjacent(V[a], V[b]))
                    flag("finite vertex " + std::to_string(i) + " facets " +
                         std::to_string(V[a]) + "," + std::to_string(V[b]) + " not adjacent");
    }
    for (size_t i = 0; i < P.ideal_vertices.size(); i++) {
        const auto& pairs = P.ideal_vertices[i];
        if ((int)pairs.size() != P.dim - 1)
            flag("ideal vertex " + std::to_string(i) + " has " + std::to_string(pairs.size()) +
                 " pairs, expected " + std::to_string(P.dim - 1));
        std::vector<int> all;
        for (auto [a, b] : pairs) {
            if (a < 0 || b < 0 || a >= P.num_facets || b >= P.num_facets || a == b) {
                flag("ideal vertex " + std::to_string(i) + " pair out of range");
                continue;
            }
            covered[a] = covered[b] = 1;
            all.push_back(a);
            all.push_back(b);
            if (adjacent(a, b))
                flag("ideal vertex " + std::to_string(i) + ": opposite facets " +
                     std::to_string(a) + "," + std::to_string(b) + " adjacent");
        }
        for (size_t p = 0; p < pairs.size(); p++)
            for (size_t q = p + 1; q < pairs.size(); q++)
                for (int x : {pairs[p].first, pairs[p].second})
                    for (int y : {pairs[q].first, pairs[q].second})
                        if (!adjacent(x, y))
                            flag("ideal vertex " + std::to_string(i) + ": facets " +
                                 std::to_string(x) + "," + std::to_string(y) +
                                 " from distinct pairs not adjacent");
        std::sort(all.begin(), all.end());
        if (std::adjacent_find(all.begin(), all.end()) != all.end())
            flag("ideal vertex " + std::to_string(i) + " repeats a facet");
    }
    for (int f = 0; f < P.num_facets; f++)
        if (!covered[f]) flag("facet " + std::to_string(f) + " appears in no vertex record");
    return rep;
}

ValidationReport validate_colouring(const Polytope& P, const Colouring& lam) {
    ValidationReport rep;
    auto flag = [&](std::string s) { rep.violations.push_back(std::move(s)); };
    if (lam.palette_size < 1) flag("palette empty");
    if ((int)lam.colour.size() != P.num_facets)
        flag("colour map covers " + std::to_string(lam.colour.size()) + " facets, expected " +
             std::to_string(P.num_facets));
    std::vector<char> used(lam.palette_size + 1, 0);
    for (size_t f = 0; f < lam.colour.size(); f++) {
        int c = lam.colour[f];
        if (c < 1 || c > lam.palette_size)
            flag("facet " + std::to_string(f) + " colour " + std::to_string(c) +
                 " outside 1.." + std::to_string(lam.palette_size));
        else
            used[c] = 1;
    }
    for (int c = 1; c <= lam.palette_size; c++)
        if (!used[c]) flag("colour " + std::to_string(c) + " unused");
    for (auto [a, b] : P.adjacency)
        if (a >= 0 && b >= 0 && a < (int)lam.colour.size() && b < (int)lam.colour.size() &&
            lam.colour[a] == lam.colour[b])
            flag("adjacent facets " + std::to_string(a) + "," + std::to_string(b) +
                 " share colour " + std::to_string(lam.colour[a]));
    return rep;
}

std::vector<std::array<int, 8>> e8_roots() {
    std::vector<std::array<int, 8>> R;
    // doubled coordinates: +-2 twice (D8 roots), and +-1^8 with an even
    // number of minus signs (half-integer roots)
    for (int i = 0; i < 8; i++)
        for (int j = i + 1; j < 8; j++)
            for (int si = -2; si <= 2; si += 4)
                for (int sj = -2; sj <= 2; sj += 4) {
                    std::array<int, 8> v{};
                    v[i] = si;
                    v[j] = sj;
                    R.push_back(v);
                }
    for (int m = 0; m < 256; m++) {
        if (__builtin_popcount(m) & 1) continue;
        std::array<int, 8> v;
        for (int k = 0; k < 8; k++) v[k] = (m >> k) & 1 ? -1 : 1;
        R.push_back(v);
    }
    std::sort(R.begin(), R.end());
    return R;
}

Polytope gosset_p8() {
    auto R = e8_roots();
    const int N = (int)R.size();
    auto dot = [&](const std::array<int, 8>& a, const std::array<int, 8>& b) {
        int s = 0;
        for (int k = 0; k < 8; k++) s += a[k] * b[k];
        return s;
    };
    Polytope P;
    P.dim = 8;
    P.num_facets = N;
    std::vector<std::vector<int>> nbr(N);
    for (int i = 0; i < N; i++)
        for (int j = i + 1; j < N; j++)
            if (dot(R[i], R[j]) == 4) {
                P.adjacency.push_back({i, j});
                nbr[i].push_back(j);
                nbr[j].push_back(i);
            }

    // finite vertices: 8-cliques of the adjacency graph, enumerated in lex
    // order (these are exactly the simplex facets of 4_21)
    std::vector<int> cur;
    auto dfs = [&](auto&& self, const std::vector<int>& cand) -> void {
        if (cur.size() == 8) {
            P.finite_vertices.push_back(cur);
            return;
        }
        for (size_t t = 0; t < cand.size(); t++) {
            int v = cand[t];
            std::vector<int> nxt;
            for (size_t u = t + 1; u < cand.size(); u++) {
                int w = cand[u];
                if (dot(R[v], R[w]) == 4) nxt.push_back(w);
            }
            if (cur.size() + 1 + nxt.size() < 8) continue;
            cur.push_back(v);
            self(self, nxt);
            cur.pop_back();
        }
    };
    {
        std::vector<int> all(N);
        for (int i = 0; i < N; i++) all[i] = i;
        dfs(dfs, all);
    }

    // ideal vertices: second-shell vectors w (norm 16 doubled); the 14 roots
    // with <w,v> = 8 split into 7 pairs (v, w-v)
    std::set<std::array<int, 8>> shell;
    for (int i = 0; i < N; i++)
        for (int j = i + 1; j < N; j++) {
            if (dot(R[i], R[j]) != 0) continue;  // |u+v|^2 = 16 iff <u,v> = 0
            std::array<int, 8> w;
            for (int k = 0; k < 8; k++) w[k] = R[i][k] + R[j][k];
            shell.insert(w);
        }
    std::map<std::array<int, 8>, int> rid;
    for (int i = 0; i < N; i++) rid[R[i]] = i;
    for (const auto& w : shell) {
        std::vector<std::pair<int, int>> pairs;
        for (int i = 0; i < N; i++) {
            if (dot(w, R[i]) != 8) continue;
            std::array<int, 8> opp;
            for (int k = 0; k < 8; k++) opp[k] = w[k] - R[i][k];
            int j = rid.at(opp);
            if (i < j) pairs.push_back({i, j});
        }
        std::sort(pairs.begin(), pairs.end());
        P.ideal_vertices.push_back(pairs);
    }
    std::sort(P.ideal_vertices.begin(), P.ideal_vertices.end());
    std::sort(P.finite_vertices.begin(), P.finite_vertices.end());
    P.build_index();
    return P;
}

std::pair<Colouring, int> link_colouring(const Polytope& P, const Colouring& lam, int ideal_id) {
    if (ideal_id < 0 || ideal_id >= (int)P.ideal_vertices.size())
        throw std::out_of_range("link_colouring: bad ideal vertex id");
    const auto& pairs = P.ideal_vertices[ideal_id];
    Colouring link;
    std::set<int> distinct;
    for (auto [a, b] : pairs) {
        link.colour.push_back(lam.colour[a]);
        link.colour.push_back(lam.colour[b]);
        distinct.insert(lam.colour[a]);
        distinct.insert(lam.colour[b]);
    }
    link.palette_size = lam.palette_size;
    return {link, (int)distinct.size()};
}

std::pair<std::vector<long long>, long long> cusp_count(const Polytope& P, const Colouring& lam) {
    std::vector<long long> per;
    long long total = 0;
    for (int v = 0; v < (int)P.ideal_vertices.size(); v++) {
        int cp = link_colouring(P, lam, v).second;
        long long n = 1LL << (lam.palette_size - cp);
        per.push_back(n);
        total += n;
    }
    return {per, total};
}

bool spans_simplex(const Polytope& P, const std::vector<int>& S) {
    if (S.empty()) return true;  // the empty face is the polytope itself
    const bool indexed = !P.facet_finite.empty();
    int f0 = S[0];
    auto subset_of = [&](const std::vector<int>& sorted_set) {
        for (int x : S)
            if (!std::binary_search(sorted_set.begin(), sorted_set.end(), x)) return false;
        return true;
    };
    if (indexed) {
        for (int vid : P.facet_finite[f0])
            if (subset_of(P.finite_vertices[vid])) return true;
        for (int vid : P.facet_ideal[f0]) {
            const auto& pairs = P.ideal_vertices[vid];
            bool in = true, opp = false;
            for (int x : S) {
                int side = -1;
                for (int p = 0; p < (int)pairs.size(); p++) {
                    if (pairs[p].first == x || pairs[p].second == x) {
                        side = p;
                        break;
                    }
                }
                if (side < 0) {
                    in = false;
                    break;
                }
            }
            if (!in) continue;
            for (int x : S)
                for (int y : S)
                    if (x < y)
                        for (auto [a, b] : pairs)
                            if (a == std::min(x, y) && b == std::max(x, y)) opp = true;
            if (!opp) return true;
        }
        return false;
    }
    // un-indexed fallback: scan all records
    for (const auto& V : P.finite_vertices)
        if (subset_of(V)) return true;
    for (const auto& pairs : P.ideal_vertices) {
        std::set<int> facets;
        for (auto [a, b] : pairs) {
            facets.insert(a);
            facets.insert(b);
        }
        bool in = true;
        for (int x : S) in = in && facets.count(x);
        if (!in) continue;
        bool opp = false;
        for (auto [a, b] : pairs) {
            bool ha = false, hb = false;
            for (int x : S) {
                ha = ha || x == a;
                hb = hb || x == b;
            }
            if (ha && hb) opp = true;
        }
        if (!opp) return true;
    }
    return false;
}

Polytope square() {
    Polytope P;
    P.dim = 2;
    P.num_facets = 4;
    P.adjacency = {{0, 1}, {0, 3}, {1, 2}, {2, 3}};
    P.finite_vertices = {{0, 1}, {0, 3}, {1, 2}, {2, 3}};
    P.build_index();
    return P;
}

Polytope polygon_2n(int n) {
    Polytope P;
    P.dim = 2;
    P.num_facets = 2 * n;
    for (int i = 0; i + 1 < 2 * n; i++) {
        P.adjacency.push_back({i, i + 1});
        P.finite_vertices.push_back({i, i + 1});
    }
    P.ideal_vertices = {{{0, 2 * n - 1}}};
    P.build_index();
    return P;
}

Colouring alternating_colouring(const Polytope& P) {
    Colouring lam;
    lam.palette_size = 2;
    for (int i = 0; i < P.num_facets; i++) lam.colour.push_back(1 + (i & 1));
    return lam;
}

}  // namespace rap
