#include "rap/morse.hpp"

#include <algorithm>
#include <atomic>
#include <cstring>
#include <set>
#include <stdexcept>
#include <thread>

namespace rap {

namespace {

// subset emission helpers for nerve(); tuples are collected per dimension and
// deduped afterwards
struct TupleSink {
    int max_size;
    std::vector<std::vector<int>>& out;  // out[d] flattened (d+1)-tuples
    std::vector<int> cur;

    void emit() {
        if (cur.empty()) return;
        std::vector<int>& dst = out[cur.size() - 1];
        if (std::is_sorted(cur.begin(), cur.end())) {
            dst.insert(dst.end(), cur.begin(), cur.end());
        } else {
            std::vector<int> s(cur);
            std::sort(s.begin(), s.end());
            dst.insert(dst.end(), s.begin(), s.end());
        }
    }
};

void walk_subsets(const std::vector<int>& rec, size_t from, TupleSink& sink) {
    sink.emit();
    if ((int)sink.cur.size() == sink.max_size) return;
    for (size_t i = from; i < rec.size(); i++) {
        sink.cur.push_back(rec[i]);
        walk_subsets(rec, i + 1, sink);
        sink.cur.pop_back();
    }
}

void walk_pairfree(const std::vector<std::pair<int, int>>& rec, size_t pair_idx,
                   TupleSink& sink) {
    if (pair_idx == rec.size()) {
        sink.emit();
        return;
    }
    walk_pairfree(rec, pair_idx + 1, sink);
    if ((int)sink.cur.size() < sink.max_size) {
        sink.cur.push_back(rec[pair_idx].first);
        walk_pairfree(rec, pair_idx + 1, sink);
        sink.cur.back() = rec[pair_idx].second;
        walk_pairfree(rec, pair_idx + 1, sink);
        sink.cur.pop_back();
    }
}

// sort + dedup the flattened d-tuples; facet ids < 256 pack into uint64 keys
void dedup_tuples(std::vector<int>& flat, int width, int max_label) {
    size_t n = flat.size() / width;
    if (n == 0) return;
    if (max_label < 256 && width <= 8) {
        std::vector<uint64_t> keys(n);
        for (size_t i = 0; i < n; i++) {
            uint64_t k = 0;
            for (int j = 0; j < width; j++) k = k << 8 | (uint64_t)(uint8_t)flat[i * width + j];
            keys[i] = k;
        }
        std::sort(keys.begin(), keys.end());
        keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
        flat.resize(keys.size() * width);
        for (size_t i = 0; i < keys.size(); i++)
            for (int j = width - 1; j >= 0; j--) {
                flat[i * width + j] = (int)(keys[i] & 0xff);
                keys[i] >>= 8;
            }
        return;
    }
    std::set<std::vector<int>> seen;
    for (size_t i = 0; i < n; i++)
        seen.insert(std::vector<int>(flat.begin() + i * width, flat.begin() + (i + 1) * width));
    flat.clear();
    for (const auto& t : seen) flat.insert(flat.end(), t.begin(), t.end());
}

}  // namespace

SimplicialComplex nerve(const Polytope& P, int up_to_dim) {
    int top = P.dim - 1;
    if (up_to_dim >= 0 && up_to_dim < top) top = up_to_dim;
    if (top < 0) return {};
    std::vector<std::vector<int>> flat(top + 1);
    TupleSink sink{top + 1, flat, {}};
    for (const auto& rec : P.finite_vertices) walk_subsets(rec, 0, sink);
    for (const auto& rec : P.ideal_vertices) walk_pairfree(rec, 0, sink);
    SimplicialComplex K;
    K.simplices.resize(top + 1);
    for (int d = 0; d <= top; d++) {
        dedup_tuples(flat[d], d + 1, P.num_facets);
        K.simplices[d] = std::move(flat[d]);
    }
    while (!K.simplices.empty() && K.simplices.back().empty()) K.simplices.pop_back();
    return K;
}

namespace {

SimplicialComplex status_link(const SimplicialComplex& L, const Colouring& lam, const State& s,
                              const Moves& mv, uint32_t v, Status want) {
    std::vector<int> keep;
    if (!L.simplices.empty())
        for (int f : L.simplices[0])
            if (status_at(lam, s, mv, v, f) == want) keep.push_back(f);
    return full_subcomplex(L, keep);
}

}  // namespace

SimplicialComplex ascending_link(const SimplicialComplex& L, const Colouring& lam, const State& s,
                                 const Moves& mv, uint32_t v) {
    return status_link(L, lam, s, mv, v, Status::O);
}

SimplicialComplex descending_link(const SimplicialComplex& L, const Colouring& lam, const State& s,
                                  const Moves& mv, uint32_t v) {
    return status_link(L, lam, s, mv, v, Status::I);
}

bool LinkRecord::clean() const {
    if (!connected || simply_connected != LinkCheck::Pass) return false;
    for (const auto* vec : {&hq, &hz2, &hz})
        for (LinkCheck c : *vec)
            if (c != LinkCheck::Pass) return false;
    return true;
}

namespace {

// union-find over local vertex indices
struct DSU {
    std::vector<int> up;
    void reset(int n) {
        up.resize(n);
        for (int i = 0; i < n; i++) up[i] = i;
    }
    int find(int x) {
        while (up[x] != x) x = up[x] = up[up[x]];
        return x;
    }
    void unite(int a, int b) { up[find(a)] = find(b); }
};

// Shared per-batch tables: for every nerve simplex, the global indices of its
// codimension-1 faces (drop-i order, boundary sign (-1)^i) and the reverse
// coface adjacency in CSR form.  Built once; patterns only read it.
struct LinkEngine {
    const SimplicialComplex* L;
    const std::vector<uint8_t>* sbit;  // s(F) == O per facet
    const std::vector<int>* fbit;      // effective-block bit per facet
    int num_facets = 0;
    int k = 0;
    long long tietze_budget = 20000;
    int top = -1;                               // nerve dimension actually built
    std::vector<std::vector<int32_t>> faces;    // faces[d], stride d+1, d = 1..top
    std::vector<std::vector<int32_t>> cof_off;  // cof_off[d] for d < top
    std::vector<std::vector<int32_t>> cof_dat;  // cofaces of d-cells in dim d+1
};

LinkEngine make_engine(const SimplicialComplex& L, const std::vector<uint8_t>& sbit,
                       const std::vector<int>& fbit, int num_facets, int k) {
    LinkEngine E;
    E.L = &L;
    E.sbit = &sbit;
    E.fbit = &fbit;
    E.num_facets = num_facets;
    E.k = k;
    E.top = L.dim();
    E.faces.resize(E.top + 1);
    E.cof_off.resize(E.top + 1);
    E.cof_dat.resize(E.top + 1);
    std::vector<int> probe;
    for (int d = 1; d <= E.top; d++) {
        const int w = d + 1;
        const long long n = L.count(d);
        E.faces[d].resize((size_t)n * w);
        probe.resize(d);
        for (long long j = 0; j < n; j++) {
            const int* rec = L.simplices[d].data() + j * w;
            for (int i = 0; i < w; i++) {
                int t = 0;
                for (int u = 0; u < w; u++)
                    if (u != i) probe[t++] = rec[u];
                E.faces[d][(size_t)j * w + i] = (int32_t)L.find(d - 1, probe.data());
            }
        }
        const long long m = L.count(d - 1);
        auto& off = E.cof_off[d - 1];
        auto& dat = E.cof_dat[d - 1];
        off.assign(m + 1, 0);
        for (int32_t f : E.faces[d]) off[f + 1]++;
        for (long long i = 0; i < m; i++) off[i + 1] += off[i];
        dat.resize(E.faces[d].size());
        std::vector<int32_t> cur(off.begin(), off.end() - 1);
        for (long long j = 0; j < n; j++)
            for (int i = 0; i < w; i++) dat[cur[E.faces[d][(size_t)j * w + i]]++] = (int32_t)j;
    }
    return E;
}

LinkRecord check_pattern(const LinkEngine& E, uint32_t pattern) {
    LinkRecord r;
    r.pattern = pattern;
    r.hq.assign(E.k, LinkCheck::Pass);
    r.hz2.assign(E.k, LinkCheck::Pass);
    r.hz.assign(E.k, LinkCheck::Pass);

    std::vector<char> live(E.num_facets, 0);
    int o_count = 0;
    for (int f = 0; f < E.num_facets; f++) {
        live[f] = (char)((*E.sbit)[f] ^ (uint8_t)(pattern >> (*E.fbit)[f] & 1u));
        o_count += live[f];
    }
    r.o_count = o_count;
    if (o_count == 0) {
        r.connected = false;
        r.hq[0] = r.hz2[0] = r.hz[0] = LinkCheck::Fail;
        r.simply_connected = LinkCheck::Fail;
        r.pass = false;
        return r;
    }

    const SimplicialComplex& L = *E.L;
    const int top = E.top;

    // live cells per dimension: a nerve simplex survives iff all its facets do
    std::vector<std::vector<uint8_t>> alive(top + 1);
    for (int d = 0; d <= top; d++) {
        const int w = d + 1;
        const long long n = L.count(d);
        alive[d].assign(n, 0);
        const int* arr = L.simplices[d].data();
        for (long long j = 0; j < n; j++) {
            const int* rec = arr + j * w;
            bool ok = live[rec[0]] != 0;
            for (int i = 1; ok && i < w; i++) ok = live[rec[i]] != 0;
            alive[d][j] = ok;
        }
    }
    std::vector<int32_t> edge_list, tri_list;  // snapshots before the cascade
    if (top >= 1)
        for (long long j = 0; j < L.count(1); j++)
            if (alive[1][j]) edge_list.push_back((int32_t)j);
    if (top >= 2)
        for (long long j = 0; j < L.count(2); j++)
            if (alive[2][j]) tri_list.push_back((int32_t)j);

    // connectivity by union-find over facet labels
    DSU dsu;
    dsu.reset(E.num_facets);
    for (int32_t e : edge_list) dsu.unite(L.simplices[1][2 * e], L.simplices[1][2 * e + 1]);
    int comps = 0;
    for (int f = 0; f < E.num_facets; f++)
        if (live[f] && dsu.find(f) == f) comps++;
    r.connected = comps == 1;

    // Integer reduction/coreduction cascade: repeatedly remove a cell paired
    // with its unique live face (coreduction) or unique live coface
    // (reduction).  Either pair has incidence +-1 and its removal changes no
    // other boundary coefficient, so the surviving core is a chain complex
    // with the same H_i for i >= 1.  Seeding drops one vertex per component
    // (the usual augmentation trick), which leaves reduced homology intact.
    std::vector<std::vector<int8_t>> bdc(top + 1);   // live faces per cell
    std::vector<std::vector<int32_t>> cbc(top + 1);  // live cofaces per cell
    for (int d = 1; d <= top; d++) bdc[d].assign(L.count(d), (int8_t)(d + 1));
    for (int d = 0; d < top; d++) {
        cbc[d].assign(L.count(d), 0);
        const int w = d + 2;
        for (long long j = 0; j < L.count(d + 1); j++) {
            if (!alive[d + 1][j]) continue;
            for (int i = 0; i < w; i++) cbc[d][E.faces[d + 1][(size_t)j * w + i]]++;
        }
    }
    std::vector<std::pair<int, int32_t>> stack;
    auto kill = [&](int d, int32_t cell) {
        alive[d][cell] = 0;
        if (d < top) {
            const auto& off = E.cof_off[d];
            const auto& dat = E.cof_dat[d];
            for (int32_t t = off[cell]; t < off[cell + 1]; t++) {
                int32_t y = dat[t];
                if (alive[d + 1][y] && --bdc[d + 1][y] == 1) stack.push_back({d + 1, y});
            }
        }
        if (d >= 1) {
            const int w = d + 1;
            for (int i = 0; i < w; i++) {
                int32_t f = E.faces[d][(size_t)cell * w + i];
                if (alive[d - 1][f] && --cbc[d - 1][f] == 1) stack.push_back({d - 1, f});
            }
        }
    };
    {
        std::vector<char> seeded(E.num_facets, 0);
        for (long long j = 0; j < L.count(0); j++) {
            if (!alive[0][j]) continue;
            int root = dsu.find(L.simplices[0][j]);
            if (seeded[root]) continue;
            seeded[root] = 1;
            kill(0, (int32_t)j);
        }
    }
    for (int d = 0; d < top; d++)
        for (long long j = 0; j < L.count(d); j++)
            if (alive[d][j] && cbc[d][j] == 1) stack.push_back({d, (int32_t)j});
    while (!stack.empty()) {
        auto [d, j] = stack.back();
        stack.pop_back();
        if (!alive[d][j]) continue;
        const int w = d + 1;
        if (d >= 1 && bdc[d][j] == 1) {  // coreduction: pair with the live face
            int32_t tau = -1;
            for (int i = 0; i < w; i++) {
                int32_t f = E.faces[d][(size_t)j * w + i];
                if (alive[d - 1][f]) {
                    tau = f;
                    break;
                }
            }
            kill(d, j);
            kill(d - 1, tau);
        } else if (d < top && cbc[d][j] == 1) {  // reduction: pair with the live coface
            const auto& off = E.cof_off[d];
            const auto& dat = E.cof_dat[d];
            int32_t c = -1;
            for (int32_t t = off[j]; t < off[j + 1]; t++)
                if (alive[d + 1][dat[t]]) {
                    c = dat[t];
                    break;
                }
            kill(d + 1, c);
            kill(d, j);
        }
    }

    // boundary matrices of the core (original simplicial signs, live entries)
    const int hdim = E.k - 1;
    const int mtop = std::min(top, hdim + 1);
    ChainComplex core;
    core.ncells.assign(mtop + 1, 0);
    core.d.resize(mtop + 1);
    std::vector<std::vector<int32_t>> lid(mtop + 1);
    for (int d = 0; d <= mtop; d++) {
        lid[d].assign(L.count(d), -1);
        int32_t n = 0;
        for (long long j = 0; j < L.count(d); j++)
            if (alive[d][j]) lid[d][j] = n++;
        core.ncells[d] = n;
    }
    for (int d = 1; d <= mtop; d++) {
        SparseInt& M = core.d[d];
        M.rows = (int)core.ncells[d - 1];
        M.cols = (int)core.ncells[d];
        M.col.resize(M.cols);
        const int w = d + 1;
        for (long long j = 0; j < L.count(d); j++) {
            if (!alive[d][j]) continue;
            auto& col = M.col[lid[d][j]];
            for (int i = d; i >= 0; i--) {  // descending i = ascending face index
                int32_t f = E.faces[d][(size_t)j * w + i];
                if (alive[d - 1][f]) col.push_back({lid[d - 1][f], (i & 1) ? -1LL : 1LL});
            }
        }
    }

    // one Smith decomposition per boundary matrix feeds all three coefficient
    // systems: free rank and torsion directly, Z2 ranks as the count of odd
    // invariant factors (the transforms are unimodular, hence invertible mod 2)
    std::vector<SmithSummary> S(hdim + 2);
    for (int d = 1; d <= hdim + 1 && d <= mtop; d++) S[d] = smith_summary(core.d[d]);
    auto z2rank = [](const SmithSummary& s) {
        long long odd = s.rank - (long long)s.torsion.size();
        for (const auto& t : s.torsion)
            if (mpz_odd_p(t.get_mpz_t())) odd++;
        return odd;
    };
    r.hq[0] = r.hz2[0] = r.hz[0] = r.connected ? LinkCheck::Pass : LinkCheck::Fail;
    for (int i = 1; i < E.k; i++) {
        long long ni = i <= mtop ? core.ncells[i] : 0;
        long long free_rank = ni - S[i].rank - S[i + 1].rank;
        long long b2i = ni - z2rank(S[i]) - z2rank(S[i + 1]);
        r.hq[i] = free_rank == 0 ? LinkCheck::Pass : LinkCheck::Fail;
        r.hz[i] = (free_rank == 0 && S[i + 1].torsion.empty()) ? LinkCheck::Pass
                                                               : LinkCheck::Fail;
        r.hz2[i] = b2i == 0 ? LinkCheck::Pass : LinkCheck::Fail;
    }

    if (!r.connected) {
        r.simply_connected = LinkCheck::Fail;
    } else if (E.k >= 2 && r.hz[1] == LinkCheck::Fail) {
        // nontrivial H_1 disproves simple connectivity via abelianization
        r.simply_connected = LinkCheck::Fail;
    } else {
        // edge-path presentation straight from the live cell lists: BFS
        // spanning tree over live facets, a generator per non-tree edge, a
        // relator [ab][bc][ac]^-1 per live triangle
        GroupPresentation pres;
        std::vector<int32_t> gen(top >= 1 ? L.count(1) : 0, 0);  // -1 tree, >0 generator
        {
            std::vector<int32_t> off(E.num_facets + 1, 0);
            for (int32_t e : edge_list) {
                off[L.simplices[1][2 * e] + 1]++;
                off[L.simplices[1][2 * e + 1] + 1]++;
            }
            for (int f = 0; f < E.num_facets; f++) off[f + 1] += off[f];
            std::vector<std::pair<int32_t, int32_t>> adj(edge_list.size() * 2);  // (nbr, edge)
            std::vector<int32_t> cur(off.begin(), off.end() - 1);
            for (int32_t e : edge_list) {
                int a = L.simplices[1][2 * e], b = L.simplices[1][2 * e + 1];
                adj[cur[a]++] = {b, e};
                adj[cur[b]++] = {a, e};
            }
            std::vector<char> seen(E.num_facets, 0);
            std::vector<int> queue;
            for (int f = 0; f < E.num_facets && queue.empty(); f++)
                if (live[f]) {
                    seen[f] = 1;
                    queue.push_back(f);
                }
            for (size_t head = 0; head < queue.size(); head++) {
                int u = queue[head];
                for (int32_t t = off[u]; t < off[u + 1]; t++) {
                    auto [v, e] = adj[t];
                    if (!seen[v]) {
                        seen[v] = 1;
                        gen[e] = -1;
                        queue.push_back(v);
                    }
                }
            }
            for (int32_t e : edge_list)
                if (gen[e] == 0) gen[e] = ++pres.num_generators;
        }
        for (int32_t t : tri_list) {
            const int32_t* fc = E.faces[2].data() + (size_t)t * 3;
            // drop-0 = [bc], drop-1 = [ac], drop-2 = [ab]
            int word[3] = {gen[fc[2]] > 0 ? gen[fc[2]] : 0, gen[fc[0]] > 0 ? gen[fc[0]] : 0,
                           gen[fc[1]] > 0 ? -gen[fc[1]] : 0};
            std::vector<int> red;
            for (int g : word) {
                if (g == 0) continue;
                if (!red.empty() && red.back() == -g)
                    red.pop_back();
                else
                    red.push_back(g);
            }
            if (!red.empty()) pres.relators.push_back(std::move(red));
        }
        if (tietze_trivializes(std::move(pres), E.tietze_budget)) {
            r.simply_connected = LinkCheck::Pass;
        } else {
            // rare: rebuild the subcomplex and let the full certifier (which
            // also tries collapses) have a go
            SimplicialComplex K;
            K.simplices.resize(top + 1);
            for (int d = 0; d <= top; d++) {
                const auto& src = L.simplices[d];
                auto& dst = K.simplices[d];
                const int w = d + 1;
                for (size_t i = 0; i < src.size(); i += w) {
                    bool ok = true;
                    for (int j = 0; j < w; j++)
                        if (!live[src[i + j]]) {
                            ok = false;
                            break;
                        }
                    if (ok) dst.insert(dst.end(), src.begin() + i, src.begin() + i + w);
                }
            }
            while (!K.simplices.empty() && K.simplices.back().empty()) K.simplices.pop_back();
            r.simply_connected = certify_simply_connected(K, E.tietze_budget) ==
                                         Certificate::Certified
                                     ? LinkCheck::Pass
                                     : LinkCheck::Unknown;
        }
    }

    r.pass = r.connected;
    if (E.k >= 2) r.pass = r.pass && r.simply_connected == LinkCheck::Pass;
    for (int i = 0; i < E.k && r.pass; i++)
        r.pass = r.hq[i] == LinkCheck::Pass && r.hz2[i] == LinkCheck::Pass &&
                 r.hz[i] == LinkCheck::Pass;
    return r;
}

}  // namespace

LinkReport check_all_links(const Polytope& P, const Colouring& lam, const State& s,
                           const Moves& mv, int k, int jobs, long long tietze_budget) {
    if (k < 1) throw std::invalid_argument("check_all_links: k must be >= 1");
    if (tietze_budget < 1) throw std::invalid_argument("check_all_links: budget must be positive");
    GameReport gr = classify_all(P, lam, s, mv);
    if (!gr.coherent)
        throw std::invalid_argument("check_all_links: non-coherent orientation (" +
                                    std::to_string(gr.good) + " good, " + std::to_string(gr.bad) +
                                    " bad pairs)");

    // effective blocks: a parity bit only matters if some facet wears it
    std::vector<int> blk = block_of_colour(mv, lam.palette_size);
    std::vector<int> block_bit((int)mv.blocks.size(), -1);
    int nbits = 0;
    for (int f = 0; f < P.num_facets; f++) {
        int b = blk[lam.colour[f]];
        if (block_bit[b] < 0) block_bit[b] = nbits++;
    }
    if (nbits > 22) throw std::length_error("check_all_links: too many status patterns");

    std::vector<int> fbit(P.num_facets);
    std::vector<uint8_t> sbit(P.num_facets);
    for (int f = 0; f < P.num_facets; f++) {
        fbit[f] = block_bit[blk[lam.colour[f]]];
        sbit[f] = s.status[f] == Status::O ? 1 : 0;
    }

    int link_dim = std::min(k, P.dim - 1);
    SimplicialComplex L = nerve(P, link_dim);

    LinkEngine ctx = make_engine(L, sbit, fbit, P.num_facets, k);
    ctx.tietze_budget = tietze_budget;
    const uint32_t npat = 1u << nbits;

    // batch order: ascending link vertex count, then pattern id
    std::vector<std::pair<int, uint32_t>> order(npat);
    for (uint32_t p = 0; p < npat; p++) {
        int cnt = 0;
        for (int f = 0; f < P.num_facets; f++)
            cnt += sbit[f] ^ (uint8_t)(p >> fbit[f] & 1u);
        order[p] = {cnt, p};
    }
    std::sort(order.begin(), order.end());

    std::vector<LinkRecord> results(npat);
    int workers = jobs < 1 ? 1 : jobs;
    if (workers == 1) {
        for (const auto& [cnt, p] : order) results[p] = check_pattern(ctx, p);
    } else {
        std::atomic<size_t> next{0};
        auto run = [&]() {
            for (;;) {
                size_t i = next.fetch_add(1);
                if (i >= order.size()) return;
                uint32_t p = order[i].second;
                results[p] = check_pattern(ctx, p);
            }
        };
        std::vector<std::thread> pool;
        for (int t = 0; t < workers; t++) pool.emplace_back(run);
        for (auto& t : pool) t.join();
    }

    LinkReport rep;
    rep.k = k;
    rep.patterns = npat;
    rep.h_failures.assign(k, 0);
    bool all_connected = true, all_sc = true;
    std::vector<bool> all_h(k, true);
    for (const auto& [cnt, p] : order) {
        const LinkRecord& r = results[p];
        if (!r.connected) {
            rep.disconnected++;
            all_connected = false;
        }
        if (r.simply_connected != LinkCheck::Pass) {
            rep.sc_failures++;
            all_sc = false;
        }
        bool has_unknown = r.simply_connected == LinkCheck::Unknown;
        for (int i = 0; i < k; i++) {
            bool ok = r.hq[i] == LinkCheck::Pass && r.hz2[i] == LinkCheck::Pass &&
                      r.hz[i] == LinkCheck::Pass;
            if (!ok) {
                rep.h_failures[i]++;
                all_h[i] = false;
            }
        }
        if (has_unknown) rep.unknowns++;
        if (!r.pass) rep.failures.push_back(r);
    }
    int verdict = 0;
    if (all_connected) {
        verdict = 1;
        if (k >= 2 && all_sc) {
            verdict = 2;
            for (int j = 3; j <= k; j++) {
                if (!all_h[j - 1]) break;
                verdict = j;
            }
        }
    }
    rep.verdict = verdict;
    return rep;
}

}  // namespace rap
