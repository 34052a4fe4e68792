#include "rap/homology.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <queue>
#include <set>
#include <stdexcept>
#include <tuple>
#include <type_traits>

namespace rap {

long long SimplicialComplex::find(int d, const int* verts) const {
    if (d < 0 || d > dim()) return -1;
    const auto& arr = simplices[d];
    const int w = d + 1;
    long long lo = 0, hi = (long long)arr.size() / w - 1;
    while (lo <= hi) {
        long long mid = (lo + hi) / 2;
        const int* rec = arr.data() + mid * w;
        int cmp = 0;
        for (int i = 0; i < w && !cmp; i++) cmp = rec[i] < verts[i] ? -1 : rec[i] > verts[i] ? 1 : 0;
        if (cmp == 0) return mid;
        if (cmp < 0)
            lo = mid + 1;
        else
            hi = mid - 1;
    }
    return -1;
}

SimplicialComplex complex_from_simplices(const std::vector<std::vector<int>>& gens) {
    std::vector<std::set<std::vector<int>>> per_dim;
    for (auto g : gens) {
        std::sort(g.begin(), g.end());
        g.erase(std::unique(g.begin(), g.end()), g.end());
        if (g.empty()) continue;
        int d = (int)g.size() - 1;
        if ((int)per_dim.size() <= d) per_dim.resize(d + 1);
        // all nonempty subsets
        for (unsigned m = 1; m < (1u << g.size()); m++) {
            std::vector<int> f;
            for (size_t i = 0; i < g.size(); i++)
                if (m >> i & 1) f.push_back(g[i]);
            per_dim[f.size() - 1].insert(f);
        }
    }
    SimplicialComplex K;
    K.simplices.resize(per_dim.size());
    for (size_t d = 0; d < per_dim.size(); d++)
        for (const auto& s : per_dim[d])
            K.simplices[d].insert(K.simplices[d].end(), s.begin(), s.end());
    return K;
}

SimplicialComplex full_subcomplex(const SimplicialComplex& K, const std::vector<int>& verts) {
    std::set<int> vs(verts.begin(), verts.end());
    SimplicialComplex R;
    for (int d = 0; d <= K.dim(); d++) {
        std::vector<int> keep;
        const int w = d + 1;
        for (size_t i = 0; i < K.simplices[d].size(); i += w) {
            bool all = true;
            for (int j = 0; j < w; j++) all = all && vs.count(K.simplices[d][i + j]);
            if (all) keep.insert(keep.end(), K.simplices[d].begin() + i, K.simplices[d].begin() + i + w);
        }
        if (!keep.empty()) {
            if ((int)R.simplices.size() <= d) R.simplices.resize(d + 1);
            R.simplices[d] = std::move(keep);
        }
    }
    return R;
}

ChainComplex boundary_matrices(const SimplicialComplex& K) {
    ChainComplex cx;
    int top = K.dim();
    cx.ncells.resize(top + 1);
    for (int d = 0; d <= top; d++) cx.ncells[d] = K.count(d);
    cx.d.resize(top + 1);
    for (int d = 1; d <= top; d++) {
        SparseInt& M = cx.d[d];
        M.rows = (int)K.count(d - 1);
        M.cols = (int)K.count(d);
        M.col.resize(M.cols);
        const int w = d + 1;
        std::vector<int> face(d);
        for (int j = 0; j < M.cols; j++) {
            const int* rec = K.simplices[d].data() + (size_t)j * w;
            for (int i = 0; i < w; i++) {
                int t = 0;
                for (int u = 0; u < w; u++)
                    if (u != i) face[t++] = rec[u];
                long long r = K.find(d - 1, face.data());
                if (r < 0) throw std::logic_error("complex not closed under faces");
                M.col[j].push_back({(int)r, (i & 1) ? -1 : 1});
            }
            std::sort(M.col[j].begin(), M.col[j].end());
        }
    }
    return cx;
}

bool boundary_squares_to_zero(const ChainComplex& cx) {
    for (int d = 2; d < (int)cx.d.size(); d++) {
        const SparseInt& A = cx.d[d - 1];
        const SparseInt& B = cx.d[d];
        for (int j = 0; j < B.cols; j++) {
            std::map<int, long long> acc;
            for (auto [k, bv] : B.col[j])
                for (auto [r, av] : A.col[k]) acc[r] += av * bv;
            for (auto& [r, v] : acc)
                if (v != 0) return false;
        }
    }
    return true;
}

long long rank_z2(const SparseInt& m) {
    const int words = (m.rows + 63) / 64;
    std::vector<std::vector<uint64_t>> basis;
    std::vector<int> pivots;
    long long rank = 0;
    std::vector<uint64_t> acc(words);
    for (int j = 0; j < m.cols; j++) {
        std::fill(acc.begin(), acc.end(), 0);
        bool nz = false;
        for (auto [r, v] : m.col[j])
            if (v & 1) {
                acc[r >> 6] ^= uint64_t(1) << (r & 63);
                nz = true;
            }
        if (!nz) continue;
        for (size_t b = 0; b < basis.size(); b++)
            if (acc[pivots[b] >> 6] >> (pivots[b] & 63) & 1)
                for (int w = 0; w < words; w++) acc[w] ^= basis[b][w];
        int p = -1;
        for (int w = 0; w < words && p < 0; w++)
            if (acc[w]) p = w * 64 + __builtin_ctzll(acc[w]);
        if (p >= 0) {
            basis.push_back(acc);
            pivots.push_back(p);
            rank++;
        }
    }
    return rank;
}

// ---- integer elimination -------------------------------------------------
//
// Rank and invariant factors of a sparse integer matrix.  Unimodular phase:
// repeatedly pick a +-1 entry with minimal Markowitz cost, clear its row by
// column operations, then drop the row and column (invariant factor 1).
// Whatever remains has no unit entries and goes through a dense Smith normal
// form over mpz.  The int64 phase throws on overflow and is rerun on mpz.

namespace {

struct OverflowEscape {};

template <class T>
struct Elim {
    int nrows, ncols;
    std::vector<std::vector<std::pair<int, T>>> C;  // per column, sorted by row
    std::vector<int> rowcnt, colcnt;
    std::vector<char> rowdead, coldead;
    std::vector<std::vector<int>> rowcols;  // row -> candidate cols (stale entries ok)
    long long rank = 0;

    static bool is_unit(const T& v) { return v == 1 || v == -1; }

    static T from_ll(long long v) {
        if constexpr (std::is_same_v<T, long long>)
            return v;
        else
            return mpz_class((long)v);
    }

    void init(const SparseInt& m) {
        nrows = m.rows;
        ncols = m.cols;
        C.assign(ncols, {});
        rowcnt.assign(nrows, 0);
        colcnt.assign(ncols, 0);
        rowdead.assign(nrows, 0);
        coldead.assign(ncols, 0);
        rowcols.assign(nrows, {});
        for (int j = 0; j < ncols; j++) {
            for (auto [r, v] : m.col[j]) {
                if (v == 0) continue;
                C[j].push_back({r, from_ll(v)});
                rowcnt[r]++;
                colcnt[j]++;
                rowcols[r].push_back(j);
            }
        }
    }

    T get(int j, int r) const {
        auto& c = C[j];
        auto it = std::lower_bound(c.begin(), c.end(), r,
                                   [](const std::pair<int, T>& a, int b) { return a.first < b; });
        if (it != c.end() && it->first == r) return it->second;
        return T(0);
    }

    // col_j -= f * col_c   (sparse merge; only live rows kept)
    void axpy(int j, int c, const T& f) {
        std::vector<std::pair<int, T>> out;
        out.reserve(C[j].size() + C[c].size());
        size_t a = 0, b = 0;
        while (a < C[j].size() || b < C[c].size()) {
            if (b == C[c].size() || (a < C[j].size() && C[j][a].first < C[c][b].first)) {
                out.push_back(C[j][a++]);
            } else if (a == C[j].size() || C[c][b].first < C[j][a].first) {
                int r = C[c][b].first;
                T v = mulT(f, C[c][b].second);
                negT(v);
                b++;
                if (v != 0 && !rowdead[r]) {
                    out.push_back({r, v});
                    rowcnt[r]++;
                    rowcols[r].push_back(j);
                }
            } else {
                int r = C[j][a].first;
                T v = C[j][a].second;
                submulT(v, f, C[c][b].second);
                a++;
                b++;
                if (v == 0) {
                    rowcnt[r]--;
                } else {
                    out.push_back({r, v});
                }
            }
        }
        colcnt[j] = 0;
        for (auto& [r, v] : out) (void)v, colcnt[j]++;
        C[j] = std::move(out);
    }

    static long long mulT(long long a, long long b) {
        long long r;
        if (__builtin_mul_overflow(a, b, &r)) throw OverflowEscape{};
        return r;
    }
    static mpz_class mulT(const mpz_class& a, const mpz_class& b) { return a * b; }
    static void negT(long long& a) { a = -a; }
    static void negT(mpz_class& a) { a = -a; }
    static void submulT(long long& v, long long f, long long w) {
        long long p = mulT(f, w);
        if (__builtin_sub_overflow(v, p, &v)) throw OverflowEscape{};
    }
    static void submulT(mpz_class& v, const mpz_class& f, const mpz_class& w) { v -= f * w; }

    void run() {
        using Cand = std::pair<long long, std::pair<int, int>>;  // score, (row, col)
        std::priority_queue<Cand, std::vector<Cand>, std::greater<>> heap;
        auto push_col = [&](int j) {
            for (auto& [r, v] : C[j])
                if (!rowdead[r] && is_unit(v))
                    heap.push({(long long)(rowcnt[r] - 1) * (colcnt[j] - 1), {r, j}});
        };
        for (int j = 0; j < ncols; j++) push_col(j);
        while (!heap.empty()) {
            auto [score, rc] = heap.top();
            heap.pop();
            auto [r, c] = rc;
            if (rowdead[r] || coldead[c]) continue;
            T v = get(c, r);
            if (!is_unit(v)) continue;
            long long cur = (long long)(rowcnt[r] - 1) * (colcnt[c] - 1);
            if (cur != score) {
                heap.push({cur, {r, c}});
                continue;
            }
            // eliminate: clear row r using column c
            std::vector<int> cols = rowcols[r];
            for (int j : cols) {
                if (j == c || coldead[j]) continue;
                T m = get(j, r);
                if (m == 0) continue;
                T f = v == 1 ? m : mulT(m, T(-1));
                axpy(j, c, f);
                push_col(j);
            }
            rowcols[r].clear();
            rowdead[r] = 1;
            coldead[c] = 1;
            for (auto& [rr, vv] : C[c])
                if (!rowdead[rr]) rowcnt[rr]--;
            C[c].clear();
            rank++;
        }
    }

    // residual as dense mpz matrix (live rows/cols only)
    std::vector<std::vector<mpz_class>> residual() const {
        std::vector<int> rmap(nrows, -1), live_rows;
        for (int r = 0; r < nrows; r++)
            if (!rowdead[r] && rowcnt[r] > 0) {
                rmap[r] = (int)live_rows.size();
                live_rows.push_back(r);
            }
        std::vector<std::vector<mpz_class>> D;
        for (int j = 0; j < ncols; j++) {
            if (coldead[j] || C[j].empty()) continue;
            std::vector<mpz_class> row(live_rows.size(), 0);
            bool nz = false;
            for (auto& [r, v] : C[j])
                if (!rowdead[r] && v != 0) {
                    row[rmap[r]] = to_mpz(v);
                    nz = true;
                }
            if (nz) D.push_back(std::move(row));  // stored column-as-row; SNF symmetric
        }
        return D;
    }
    static mpz_class to_mpz(long long v) { return mpz_class((long)v); }
    static mpz_class to_mpz(const mpz_class& v) { return v; }
};

// Dense Smith normal form; returns the nonzero diagonal.  The pivot is
// re-selected as the globally minimal entry after every disturbance, which
// keeps intermediate entries from exploding (one fixed pivot hammered
// through repeated Euclid passes can blow entries up to astronomical sizes
// even on 10x10 inputs).
std::vector<mpz_class> dense_snf(std::vector<std::vector<mpz_class>> A) {
    std::vector<mpz_class> diag;
    size_t R = A.size();
    if (R == 0 || A[0].empty()) return diag;
    size_t Cn = A[0].size();
    size_t t = 0;
    while (t < R && t < Cn) {
        // minimal nonzero |entry| in A[t.., t..]
        size_t bi = R, bj = Cn;
        for (size_t i = t; i < R; i++)
            for (size_t j = t; j < Cn; j++)
                if (A[i][j] != 0 && (bi == R || cmp(abs(A[i][j]), abs(A[bi][bj])) < 0)) {
                    bi = i;
                    bj = j;
                }
        if (bi == R) break;
        std::swap(A[t], A[bi]);
        for (size_t i = 0; i < R; i++) std::swap(A[i][t], A[i][bj]);
        // one reduction sweep; any surviving remainder is strictly smaller
        // than the pivot, so re-picking makes progress
        bool disturbed = false;
        for (size_t i = t + 1; i < R; i++) {
            if (A[i][t] == 0) continue;
            mpz_class q = A[i][t] / A[t][t];
            if (q != 0)
                for (size_t j = t; j < Cn; j++) A[i][j] -= q * A[t][j];
            disturbed = disturbed || A[i][t] != 0;
        }
        for (size_t j = t + 1; j < Cn; j++) {
            if (A[t][j] == 0) continue;
            mpz_class q = A[t][j] / A[t][t];
            if (q != 0)
                for (size_t i = t; i < R; i++) A[i][j] -= q * A[i][t];
            disturbed = disturbed || A[t][j] != 0;
        }
        if (disturbed) continue;
        // pivot row/column clean: check the pivot divides the rest
        bool fixed = false;
        for (size_t i = t + 1; i < R && !fixed; i++)
            for (size_t j = t + 1; j < Cn && !fixed; j++)
                if (A[i][j] % A[t][t] != 0) {
                    for (size_t jj = t; jj < Cn; jj++) A[t][jj] += A[i][jj];
                    fixed = true;
                }
        if (fixed) continue;
        t++;
    }
    // divisibility chain
    for (size_t i = 0; i < t; i++) diag.push_back(abs(A[i][i]));
    for (size_t i = 0; i + 1 < diag.size(); i++)
        for (size_t j = i + 1; j < diag.size(); j++) {
            if (diag[i] == 0) std::swap(diag[i], diag[j]);
            if (diag[j] % diag[i] != 0) {
                mpz_class g = gcd(diag[i], diag[j]);
                mpz_class l = diag[i] / g * diag[j];
                diag[i] = g;
                diag[j] = l;
            }
        }
    std::sort(diag.begin(), diag.end());
    return diag;
}

}  // namespace

SmithSummary smith_summary(const SparseInt& m) {
    SmithSummary out;
    std::vector<std::vector<mpz_class>> resid;
    try {
        Elim<long long> e;
        e.init(m);
        e.run();
        out.rank = e.rank;
        resid = e.residual();
    } catch (OverflowEscape&) {
        Elim<mpz_class> e;
        e.init(m);
        e.run();
        out.rank = e.rank;
        resid = e.residual();
    }
    auto diag = dense_snf(std::move(resid));
    for (auto& v : diag)
        if (v != 0) {
            out.rank++;
            if (v > 1) out.torsion.push_back(v);
        }
    return out;
}

long long rank_q(const SparseInt& m) { return smith_summary(m).rank; }

static const SparseInt& zero_matrix() {
    static SparseInt z;
    return z;
}

std::vector<long long> betti(const ChainComplex& cx, Field field, int up_to, bool reduced) {
    int top = (int)cx.ncells.size() - 1;
    std::vector<long long> ranks(up_to + 2, 0);
    for (int d = 1; d <= up_to + 1; d++) {
        const SparseInt& M = d <= top ? cx.d[d] : zero_matrix();
        ranks[d] = field == Field::Z2 ? rank_z2(M) : smith_summary(M).rank;
    }
    std::vector<long long> b(up_to + 1, 0);
    for (int k = 0; k <= up_to; k++) {
        long long nk = k <= top ? cx.ncells[k] : 0;
        b[k] = nk - ranks[k] - ranks[k + 1];  // ranks[0] == 0
    }
    if (reduced && !cx.ncells.empty() && cx.ncells[0] > 0) b[0] -= 1;
    return b;
}

std::vector<long long> betti(const SimplicialComplex& K, Field field, int up_to, bool reduced) {
    if (K.empty()) return std::vector<long long>(up_to + 1, 0);
    return betti(boundary_matrices(K), field, up_to, reduced);
}

IntegralHomology integral_homology(const ChainComplex& cx, int up_to, bool reduced) {
    int top = (int)cx.ncells.size() - 1;
    IntegralHomology H;
    H.rank.resize(up_to + 1);
    H.torsion.resize(up_to + 1);
    std::vector<SmithSummary> S(up_to + 2);
    for (int d = 1; d <= up_to + 1; d++) S[d] = smith_summary(d <= top ? cx.d[d] : zero_matrix());
    for (int k = 0; k <= up_to; k++) {
        long long nk = k <= top ? cx.ncells[k] : 0;
        long long rk = k == 0 ? 0 : S[k].rank;
        H.rank[k] = nk - rk - S[k + 1].rank;
        H.torsion[k] = S[k + 1].torsion;
    }
    if (reduced && !cx.ncells.empty() && cx.ncells[0] > 0) H.rank[0] -= 1;
    return H;
}

IntegralHomology integral_homology(const SimplicialComplex& K, int up_to, bool reduced) {
    if (K.empty()) {
        IntegralHomology H;
        H.rank.resize(up_to + 1, 0);
        H.torsion.resize(up_to + 1);
        return H;
    }
    return integral_homology(boundary_matrices(K), up_to, reduced);
}

// ---- collapses -----------------------------------------------------------

namespace {

// generic incidence model for collapse bookkeeping
struct CellModel {
    // id = (dim, index); flattened global ids
    std::vector<int> dim_off;  // per dim start in global ids
    int total = 0;
    std::vector<std::vector<int>> faces, cofaces;  // dim +-1 only
    std::vector<char> alive;
    std::vector<int> up_alive;  // number of live (d+1)-cofaces

    explicit CellModel(const SimplicialComplex& K) {
        int top = K.dim();
        dim_off.resize(top + 2, 0);
        for (int d = 0; d <= top; d++) dim_off[d + 1] = dim_off[d] + (int)K.count(d);
        total = dim_off[top + 1];
        faces.resize(total);
        cofaces.resize(total);
        alive.assign(total, 1);
        up_alive.assign(total, 0);
        std::vector<int> face(top + 1);
        for (int d = 1; d <= top; d++) {
            const int w = d + 1;
            for (long long j = 0; j < K.count(d); j++) {
                const int* rec = K.simplices[d].data() + j * w;
                int gid = dim_off[d] + (int)j;
                for (int i = 0; i < w; i++) {
                    int t = 0;
                    for (int u = 0; u < w; u++)
                        if (u != i) face[t++] = rec[u];
                    int fid = dim_off[d - 1] + (int)K.find(d - 1, face.data());
                    faces[gid].push_back(fid);
                    cofaces[fid].push_back(gid);
                }
            }
        }
        for (int g = 0; g < total; g++) up_alive[g] = (int)cofaces[g].size();
    }

    // collapse all available free pairs; returns number of live cells left
    int greedy_collapse() {
        std::vector<int> stack;
        for (int g = total - 1; g >= 0; g--)
            if (up_alive[g] == 1) stack.push_back(g);
        auto kill = [&](int g) {
            alive[g] = 0;
            for (int f : faces[g])
                if (alive[f] && --up_alive[f] == 1) stack.push_back(f);
        };
        int live = total;
        while (!stack.empty()) {
            int g = stack.back();
            stack.pop_back();
            if (!alive[g] || up_alive[g] != 1) continue;
            int t = -1;
            for (int cf : cofaces[g])
                if (alive[cf]) t = cf;
            if (t < 0) continue;
            kill(t);
            kill(g);
            live -= 2;
        }
        return live;
    }

    SimplicialComplex remainder(const SimplicialComplex& K) const {
        SimplicialComplex R;
        int top = K.dim();
        for (int d = 0; d <= top; d++) {
            const int w = d + 1;
            std::vector<int> keep;
            for (long long j = 0; j < K.count(d); j++)
                if (alive[dim_off[d] + j])
                    keep.insert(keep.end(), K.simplices[d].begin() + j * w,
                                K.simplices[d].begin() + (j + 1) * w);
            if (!keep.empty()) {
                if ((int)R.simplices.size() <= d) R.simplices.resize(d + 1);
                R.simplices[d] = std::move(keep);
            }
        }
        return R;
    }
};

// cone apex: a vertex a such that sigma + a is a simplex for every simplex
// sigma not already containing a.  A cone collapses to its apex (pair each
// sigma with sigma + a, processed by decreasing dimension).
int find_apex(const SimplicialComplex& K) {
    if (K.empty()) return -1;
    // candidates: vertices of one top-dimensional simplex
    std::vector<int> cand(K.simplices[K.dim()].begin(),
                          K.simplices[K.dim()].begin() + K.dim() + 1);
    for (int a : cand) {
        bool ok = true;
        std::vector<int> probe;
        for (int d = 0; d < K.dim() && ok; d++) {
            const int w = d + 1;
            for (size_t i = 0; i < K.simplices[d].size() && ok; i += w) {
                const int* rec = K.simplices[d].data() + i;
                bool has = false;
                for (int j = 0; j < w; j++) has = has || rec[j] == a;
                if (has) continue;
                probe.assign(rec, rec + w);
                probe.insert(std::lower_bound(probe.begin(), probe.end(), a), a);
                ok = K.find(d + 1, probe.data()) >= 0;
            }
        }
        // top-dim simplices must all contain a
        if (ok) {
            const int w = K.dim() + 1;
            for (size_t i = 0; i < K.simplices[K.dim()].size() && ok; i += w) {
                bool has = false;
                for (int j = 0; j < w; j++) has = has || K.simplices[K.dim()][i + j] == a;
                ok = has;
            }
        }
        if (ok) return a;
    }
    return -1;
}

}  // namespace

Certificate certify_contractible(const SimplicialComplex& K) {
    if (K.empty()) return Certificate::Unknown;
    if (K.count(0) == 1 && K.dim() == 0) return Certificate::Certified;
    // cone fast path: the canonical collapse of a cone always reaches the apex
    if (find_apex(K) >= 0) return Certificate::Certified;
    CellModel M(K);
    int live = M.greedy_collapse();
    return live == 1 ? Certificate::Certified : Certificate::Unknown;
}

GroupPresentation edge_path_presentation(const SimplicialComplex& K) {
    GroupPresentation pres;
    if (K.empty()) return pres;
    const auto& verts = K.simplices[0];
    std::map<int, int> vidx;
    for (size_t i = 0; i < verts.size(); i++) vidx[verts[i]] = (int)i;
    int nv = (int)verts.size();
    long long ne = K.count(1);
    std::vector<std::vector<std::pair<int, int>>> adj(nv);  // (neighbour, edge id)
    for (long long e = 0; e < ne; e++) {
        int a = vidx.at(K.simplices[1][2 * e]), b = vidx.at(K.simplices[1][2 * e + 1]);
        adj[a].push_back({b, (int)e});
        adj[b].push_back({a, (int)e});
    }
    // BFS spanning tree from vertex 0 (smallest label)
    std::vector<int> dist(nv, -1);
    std::vector<char> tree(ne, 0);
    std::queue<int> q;
    dist[0] = 0;
    q.push(0);
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (auto [w, e] : adj[u])
            if (dist[w] < 0) {
                dist[w] = dist[u] + 1;
                tree[e] = 1;
                q.push(w);
            }
    }
    for (int i = 0; i < nv; i++)
        if (dist[i] < 0) throw std::invalid_argument("edge_path_presentation: disconnected");
    std::vector<int> gen(ne, 0);  // 1-based generator id per non-tree edge
    for (long long e = 0; e < ne; e++)
        if (!tree[e]) gen[e] = ++pres.num_generators;
    // relator per triangle: [ab][bc][ac]^-1 with a<b<c
    for (long long t = 0; t < K.count(2); t++) {
        const int* rec = K.simplices[2].data() + 3 * t;
        int eab = (int)K.find(1, rec);
        int pair1[2] = {rec[1], rec[2]};
        int ebc = (int)K.find(1, pair1);
        int pair2[2] = {rec[0], rec[2]};
        int eac = (int)K.find(1, pair2);
        std::vector<int> word;
        if (gen[eab]) word.push_back(gen[eab]);
        if (gen[ebc]) word.push_back(gen[ebc]);
        if (gen[eac]) word.push_back(-gen[eac]);
        // free reduction
        std::vector<int> red;
        for (int g : word) {
            if (!red.empty() && red.back() == -g)
                red.pop_back();
            else
                red.push_back(g);
        }
        if (!red.empty()) pres.relators.push_back(red);
    }
    return pres;
}

bool tietze_trivializes(GroupPresentation pres, long long budget) {
    const int ng = pres.num_generators;
    auto freereduce = [](std::vector<int>& w) {
        std::vector<int> r;
        for (int g : w) {
            if (!r.empty() && r.back() == -g)
                r.pop_back();
            else
                r.push_back(g);
        }
        // cyclic reduction
        while (r.size() >= 2 && r.front() == -r.back()) {
            r.erase(r.begin());
            r.pop_back();
        }
        w = std::move(r);
    };
    auto& rel = pres.relators;
    for (auto& w : rel) freereduce(w);

    // Incremental bookkeeping: per-generator occurrence totals, a (possibly
    // stale) list of relators touching each generator, and a min-heap of
    // candidate eliminations keyed by substitution cost.  Heap entries are
    // validated against the live presentation when popped, so the selected
    // move is always the true argmin of (cost, relator length, ids).
    std::vector<char> gen_live(ng + 1, 1);
    std::vector<char> rel_dead(rel.size(), 0);
    std::vector<long long> occ(ng + 1, 0);
    std::vector<std::vector<int>> bucket(ng + 1);
    std::vector<int> stamp(ng + 1, -1), cnt(ng + 1, 0), touched;
    int tick = 0;
    using Cand = std::tuple<long long, int, int, int>;  // cost, len, relator, gen
    std::priority_queue<Cand, std::vector<Cand>, std::greater<Cand>> heap;

    // distinct generators of rel[ri] with per-relator counts (into touched/cnt)
    auto scan = [&](int ri) {
        tick++;
        touched.clear();
        for (int g : rel[ri]) {
            int a = std::abs(g);
            if (stamp[a] != tick) {
                stamp[a] = tick;
                cnt[a] = 0;
                touched.push_back(a);
            }
            cnt[a]++;
        }
    };
    auto enlist = [&](int ri) {  // register a new or rewritten relator
        scan(ri);
        int len = (int)rel[ri].size();
        for (int a : touched) {
            bucket[a].push_back(ri);
            if (cnt[a] == 1) heap.push({(long long)(len - 1) * (occ[a] - 1), len, ri, a});
        }
    };
    for (int ri = 0; ri < (int)rel.size(); ri++) {
        for (int g : rel[ri]) occ[std::abs(g)]++;
        if (rel[ri].empty()) rel_dead[ri] = 1;
    }
    for (int ri = 0; ri < (int)rel.size(); ri++)
        if (!rel_dead[ri]) enlist(ri);

    long long moves = 0;
    int live_gens = ng;
    std::vector<int> repl;
    while (live_gens > 0) {
        if (moves >= budget) return false;
        // pop until a candidate matches the current presentation
        int best_r = -1, best_g = 0;
        while (!heap.empty()) {
            auto [cost, len, ri, a] = heap.top();
            heap.pop();
            if (rel_dead[ri] || !gen_live[a]) continue;
            scan(ri);
            if (stamp[a] != tick || cnt[a] != 1) continue;
            long long now = (long long)((int)rel[ri].size() - 1) * (occ[a] - 1);
            if (now != cost || (int)rel[ri].size() != len) {
                heap.push({now, (int)rel[ri].size(), ri, a});
                continue;
            }
            best_r = ri;
            best_g = a;
            break;
        }
        if (best_r < 0) return false;  // stuck (or a free factor survives)
        // solve relator for g: rotate so g^eps is first, then g = inverse(rest)^eps
        std::vector<int> w = rel[best_r];
        int pos = 0;
        while (std::abs(w[pos]) != best_g) pos++;
        std::rotate(w.begin(), w.begin() + pos, w.end());
        int eps = w[0] > 0 ? 1 : -1;
        repl.clear();  // word replacing g (for eps=+1: inverse of tail)
        for (int i = (int)w.size() - 1; i >= 1; i--) repl.push_back(-w[i]);
        if (eps < 0) {
            for (auto& g : repl) g = -g;
            std::reverse(repl.begin(), repl.end());
        }
        for (int g : rel[best_r]) occ[std::abs(g)]--;
        rel_dead[best_r] = 1;
        rel[best_r].clear();
        std::vector<int> hits;
        hits.swap(bucket[best_g]);
        for (int ri : hits) {
            if (rel_dead[ri]) continue;
            bool has = false;
            for (int g : rel[ri])
                if (std::abs(g) == best_g) {
                    has = true;
                    break;
                }
            if (!has) continue;  // stale bucket entry
            for (int g : rel[ri]) occ[std::abs(g)]--;
            std::vector<int> out;
            for (int g : rel[ri]) {
                if (g == best_g)
                    out.insert(out.end(), repl.begin(), repl.end());
                else if (g == -best_g)
                    for (int i = (int)repl.size() - 1; i >= 0; i--) out.push_back(-repl[i]);
                else
                    out.push_back(g);
            }
            freereduce(out);
            rel[ri] = std::move(out);
            for (int g : rel[ri]) occ[std::abs(g)]++;
            if (rel[ri].empty())
                rel_dead[ri] = 1;
            else
                enlist(ri);
        }
        gen_live[best_g] = 0;
        live_gens--;
        moves++;
    }
    return true;
}

Certificate certify_simply_connected(const SimplicialComplex& K, long long tietze_budget) {
    if (K.empty()) throw std::invalid_argument("certify_simply_connected: empty complex");
    // connectivity check on the 1-skeleton
    {
        const auto& verts = K.simplices[0];
        std::map<int, int> vidx;
        for (size_t i = 0; i < verts.size(); i++) vidx[verts[i]] = (int)i;
        std::vector<std::vector<int>> adj(verts.size());
        for (long long e = 0; e < K.count(1); e++) {
            int a = vidx.at(K.simplices[1][2 * e]), b = vidx.at(K.simplices[1][2 * e + 1]);
            adj[a].push_back(b);
            adj[b].push_back(a);
        }
        std::vector<char> seen(verts.size(), 0);
        std::vector<int> st = {0};
        seen[0] = 1;
        size_t cnt = 1;
        while (!st.empty()) {
            int u = st.back();
            st.pop_back();
            for (int w : adj[u])
                if (!seen[w]) {
                    seen[w] = 1;
                    cnt++;
                    st.push_back(w);
                }
        }
        if (cnt != verts.size())
            throw std::invalid_argument("certify_simply_connected: disconnected complex");
    }
    // pi_1 lives on the 3-skeleton; collapse it (homotopy-preserving), then
    // present the edge-path group of what is left
    SimplicialComplex K3;
    K3.simplices.assign(K.simplices.begin(),
                        K.simplices.begin() + std::min((size_t)4, K.simplices.size()));
    if (find_apex(K3) >= 0) return Certificate::Certified;  // canonical cone collapse
    CellModel M(K3);
    int live = M.greedy_collapse();
    if (live == 1) return Certificate::Certified;
    SimplicialComplex R = M.remainder(K3);
    if (R.count(1) == 0) return Certificate::Certified;
    auto pres = edge_path_presentation(R);
    if (pres.num_generators == 0) return Certificate::Certified;
    return tietze_trivializes(std::move(pres), tietze_budget) ? Certificate::Certified
                                                              : Certificate::Unknown;
}

SimplicialComplex rp2_complex() {
    return complex_from_simplices({{1, 2, 3},
                                   {1, 2, 4},
                                   {1, 3, 5},
                                   {1, 4, 6},
                                   {1, 5, 6},
                                   {2, 3, 6},
                                   {2, 4, 5},
                                   {2, 5, 6},
                                   {3, 4, 5},
                                   {3, 4, 6}});
}

SimplicialComplex dunce_hat() {
    // Triangulated disk whose boundary 9-gon reads a.a.a^{-1} after the
    // vertex identification below, the defining gluing of the dunce hat.
    // Boundary labels around the 9-gon: corner 1, arc interior 2,3 -- the
    // three arcs are [1,2,3,1], [1,2,3,1] and the third traversed backwards,
    // so the cycle reads 1,2,3,1,2,3,1,3,2.  An interior ring u and hub keep
    // every triangle inside a single arc: no accidental identifications, and
    // every edge of the quotient lies in at least two triangles (no free
    // face anywhere, so greedy collapse cannot even start).
    static const int s[9] = {1, 2, 3, 1, 2, 3, 1, 3, 2};
    std::vector<std::vector<int>> gens;
    for (int i = 0; i < 9; i++) {
        int u = 4 + i, un = 4 + (i + 1) % 9;
        gens.push_back({s[i], s[(i + 1) % 9], u});
        gens.push_back({s[(i + 1) % 9], u, un});
        gens.push_back({u, un, 13});
    }
    return complex_from_simplices(gens);
}

}  // namespace rap
