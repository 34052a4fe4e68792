#include "rap/characters.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <thread>

namespace rap {

namespace {

struct DSU {
    std::vector<int> parent;

    explicit DSU(int n) : parent(n) {
        for (int i = 0; i < n; i++) parent[i] = i;
    }
    int find(int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[a] = b;
        return true;
    }
};

// components of the facet subgraph X spanned by two colours
DSU two_colour_components(const Polytope& P, const Colouring& lam, int c1, int c2) {
    DSU dsu(P.num_facets);
    for (auto [a, b] : P.adjacency) {
        int ca = lam.colour[a], cb = lam.colour[b];
        if ((ca == c1 || ca == c2) && (cb == c1 || cb == c2)) dsu.unite(a, b);
    }
    return dsu;
}

}  // namespace

CuspTorus cusp_loops(const CubeComplex& C, const Polytope& P, const Colouring& lam, int v_ideal,
                     uint32_t v0) {
    if (C.ell != 1) throw std::invalid_argument("cusp_loops: loops live in the base cubulation");
    if (C.built_dim < 1) throw std::logic_error("cusp_loops: no edges materialized");
    if (lam.palette_size != C.colouring.palette_size || lam.colour != C.colouring.colour)
        throw std::invalid_argument("cusp_loops: colouring does not match the complex");
    if (v_ideal < 0 || v_ideal >= (int)P.ideal_vertices.size())
        throw std::out_of_range("cusp_loops: no such ideal vertex");
    if (C.c < 32 && (v0 >> C.c) != 0)
        throw std::invalid_argument("cusp_loops: base vertex outside Z2^c");

    CuspTorus T;
    T.ideal_vertex = v_ideal;
    T.base = v0;
    for (auto [F1, F2] : P.ideal_vertices[v_ideal]) {
        Loop g;
        uint32_t cur = v0;
        const int facet_of[2] = {F1, F2};
        for (int step = 0; step < 4; step++) {
            int F = facet_of[step & 1];
            uint32_t bit = 1u << (lam.colour.at(F) - 1);
            g.steps.push_back({C.edge_index(F, cur & ~bit, 0), (cur & bit) ? -1 : +1});
            cur ^= bit;
            if (cur == v0 && (step & 1)) break;
        }
        if (cur != v0)
            throw std::runtime_error("cusp_loops: walk failed to close within 4 steps");
        T.loops.push_back(std::move(g));
    }

    int m = (int)T.loops.size();
    T.gram.assign(m, std::vector<mpq_class>(m, 0));
    for (int i = 0; i < m; i++)
        T.gram[i][i] = (long)T.loops[i].length() * T.loops[i].length();
    return T;
}

long long evaluate(const std::vector<int>& z, const Loop& gamma) {
    long long total = 0;
    for (auto [e, s] : gamma.steps) total += s * (long long)z.at((size_t)e);
    return total;
}

mpq_class evaluate(const std::vector<mpq_class>& z, const Loop& gamma) {
    mpq_class total = 0;
    for (auto [e, s] : gamma.steps) {
        if (s > 0)
            total += z.at((size_t)e);
        else
            total -= z.at((size_t)e);
    }
    return total;
}

SurjectivityReport surjectivity_conditions(const Polytope& P, const Colouring& lam, int v_ideal) {
    if (v_ideal < 0 || v_ideal >= (int)P.ideal_vertices.size())
        throw std::out_of_range("surjectivity_conditions: no such ideal vertex");

    SurjectivityReport R;
    int satisfied = 0;
    for (auto [F1, F2] : P.ideal_vertices[v_ideal]) {
        int c1 = lam.colour.at(F1), c2 = lam.colour.at(F2);
        PairCondition pc = PairCondition::None;
        if (c1 == c2) {
            pc = PairCondition::Cond1;
        } else {
            DSU dsu = two_colour_components(P, lam, c1, c2);
            if (dsu.find(F1) != dsu.find(F2)) pc = PairCondition::Cond2;
        }
        if (pc != PairCondition::None) satisfied++;
        R.pairs.push_back(pc);
    }
    int total = (int)R.pairs.size();
    R.verdict = (satisfied == total && total > 0) ? CuspVerdict::Surjective
                : satisfied > 0                   ? CuspVerdict::NonTrivial
                                                  : CuspVerdict::Inconclusive;
    return R;
}

CuspCocycleData surjectivity_cocycle(const Polytope& P, const Colouring& lam, int v_ideal,
                                     int pair_j) {
    if (v_ideal < 0 || v_ideal >= (int)P.ideal_vertices.size())
        throw std::out_of_range("surjectivity_cocycle: no such ideal vertex");
    const auto& pairs = P.ideal_vertices[v_ideal];
    if (pair_j < 0 || pair_j >= (int)pairs.size())
        throw std::out_of_range("surjectivity_cocycle: no such opposite pair");

    auto [F1, F2] = pairs[pair_j];
    int c1 = lam.colour.at(F1), c2 = lam.colour.at(F2);

    CuspCocycleData out;
    out.state.status.assign(P.num_facets, Status::I);
    if (c1 == c2) {
        // case (1): switch one facet of the pair, discrete moves
        out.state.status[F1] = Status::O;
        out.moves = discrete_moves(lam.palette_size);
        out.used = PairCondition::Cond1;
        return out;
    }

    // case (2): the pair's colours form one move block and the whole
    // X-component of F1 is switched; F2 sits in another component, so no
    // square spanned by the block goes bad
    DSU dsu = two_colour_components(P, lam, c1, c2);
    int r1 = dsu.find(F1);
    if (dsu.find(F2) == r1)
        throw std::invalid_argument("surjectivity_cocycle: pair satisfies neither condition");
    for (int f = 0; f < P.num_facets; f++) {
        int cf = lam.colour[f];
        if ((cf == c1 || cf == c2) && dsu.find(f) == r1) out.state.status[f] = Status::O;
    }
    int lo = std::min(c1, c2), hi = std::max(c1, c2);
    for (int k = 1; k <= lam.palette_size; k++) {
        if (k == hi) continue;
        if (k == lo)
            out.moves.blocks.push_back({lo, hi});
        else
            out.moves.blocks.push_back({k});
    }
    out.used = PairCondition::Cond2;
    return out;
}

long long choi_park_b1(const Polytope& P, const Colouring& lam, int jobs) {
    int c = lam.palette_size;
    if (c > 24) throw std::length_error("choi_park_b1: palette too large to enumerate (cap 2^24)");
    if ((int)lam.colour.size() != P.num_facets)
        throw std::invalid_argument("choi_park_b1: colouring size mismatch");
    if (jobs < 1) jobs = 1;

    const int n = P.num_facets;
    std::vector<uint32_t> fmask(n);
    for (int f = 0; f < n; f++) fmask[f] = 1u << (lam.colour[f] - 1);
    const uint32_t end = 1u << c;

    auto worker = [&](uint32_t first, uint32_t stride) {
        long long part = 0;
        std::vector<int> parent(n);
        for (uint32_t w = first; w < end; w += stride) {
            int comps = 0;
            for (int f = 0; f < n; f++) {
                if (fmask[f] & w) {
                    parent[f] = f;
                    comps++;
                } else {
                    parent[f] = -1;
                }
            }
            if (comps == 0) continue;
            auto find = [&](int x) {
                while (parent[x] != x) {
                    parent[x] = parent[parent[x]];
                    x = parent[x];
                }
                return x;
            };
            for (auto [a, b] : P.adjacency) {
                if (parent[a] < 0 || parent[b] < 0) continue;
                int ra = find(a), rb = find(b);
                if (ra != rb) {
                    parent[ra] = rb;
                    comps--;
                }
            }
            part += comps - 1;
        }
        return part;
    };

    if (jobs == 1) return worker(1, 1);

    std::vector<long long> parts(jobs, 0);
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; t++)
        pool.emplace_back([&, t] { parts[t] = worker(1u + t, (uint32_t)jobs); });
    for (auto& th : pool) th.join();
    long long total = 0;
    for (long long p : parts) total += p;
    return total;
}

KernelSublattice kernel_sublattice(const std::vector<mpz_class>& values) {
    const int r = (int)values.size();
    KernelSublattice out;

    bool all_zero = true;
    for (const auto& v : values)
        if (v != 0) all_zero = false;
    if (all_zero) {
        out.whole_lattice = true;
        out.basis.assign(r, std::vector<mpz_class>(r, 0));
        for (int i = 0; i < r; i++) out.basis[i][i] = 1;
        out.gcd = 0;
        return out;
    }

    // column reduction of the 1 x r matrix `values`, tracking the unimodular
    // transform: when one entry is left, the other columns span the kernel
    std::vector<std::vector<mpz_class>> U(r, std::vector<mpz_class>(r, 0));
    for (int i = 0; i < r; i++) U[i][i] = 1;
    std::vector<mpz_class> w = values;

    for (;;) {
        int p = -1;
        for (int i = 0; i < r; i++)
            if (w[i] != 0 && (p < 0 || cmp(abs(w[i]), abs(w[p])) < 0)) p = i;
        bool more = false;
        for (int i = 0; i < r; i++)
            if (i != p && w[i] != 0) more = true;
        if (!more) {
            out.gcd = abs(w[p]);
            out.complement = U[p];
            for (int i = 0; i < r; i++)
                if (i != p) out.basis.push_back(std::move(U[i]));
            return out;
        }
        for (int i = 0; i < r; i++) {
            if (i == p || w[i] == 0) continue;
            mpz_class q = w[i] / w[p];  // truncated; |w[i]| >= |w[p]| keeps q nonzero
            w[i] -= q * w[p];
            for (int k = 0; k < r; k++) U[i][k] -= q * U[p][k];
        }
    }
}

namespace {

// Q = L D L^T with unit lower-triangular L; false when a pivot is not positive
bool ldl(const std::vector<std::vector<mpq_class>>& Q, std::vector<std::vector<mpq_class>>& L,
         std::vector<mpq_class>& D) {
    const int m = (int)Q.size();
    L.assign(m, std::vector<mpq_class>(m, 0));
    D.assign(m, 0);
    for (int i = 0; i < m; i++) {
        mpq_class d = Q[i][i];
        for (int k = 0; k < i; k++) d -= D[k] * L[i][k] * L[i][k];
        if (d <= 0) return false;
        D[i] = d;
        L[i][i] = 1;
        for (int j = i + 1; j < m; j++) {
            mpq_class v = Q[j][i];
            for (int k = 0; k < i; k++) v -= D[k] * L[j][k] * L[i][k];
            L[j][i] = v / d;
        }
    }
    return true;
}

// exact floor(t + sqrt(rad2)) and ceil(t - sqrt(rad2)), rad2 >= 0; the double
// guess only seeds the search, the fix-up loops compare exactly
long long floor_plus(const mpq_class& t, const mpq_class& rad2) {
    auto ok = [&](long long v) {
        mpq_class diff = mpq_class((long)v) - t;
        return diff <= 0 || diff * diff <= rad2;
    };
    double guess = t.get_d() + std::sqrt(std::max(0.0, rad2.get_d()));
    long long x = (long long)std::floor(guess);
    while (ok(x + 1)) x++;
    while (!ok(x)) x--;
    return x;
}

long long ceil_minus(const mpq_class& t, const mpq_class& rad2) {
    auto ok = [&](long long v) {
        mpq_class diff = mpq_class((long)v) - t;
        return diff >= 0 || diff * diff <= rad2;
    };
    double guess = t.get_d() - std::sqrt(std::max(0.0, rad2.get_d()));
    long long x = (long long)std::ceil(guess);
    while (ok(x - 1)) x--;
    while (!ok(x)) x++;
    return x;
}

// Fincke-Pohst over the exact LDL form: visits every x with x^T Q x <= bound()
// from the top level down, reporting the exact value at the leaves
struct Enumerator {
    const std::vector<std::vector<mpq_class>>& L;
    const std::vector<mpq_class>& D;
    int m;
    std::function<mpq_class()> bound;
    std::function<void(const std::vector<long long>&, const mpq_class&)> emit;
    std::vector<long long> x;

    void run() {
        x.assign(m, 0);
        rec(m - 1, 0);
    }

    void rec(int i, const mpq_class& used) {
        if (i < 0) {
            bool nonzero = false;
            for (long long v : x)
                if (v) nonzero = true;
            if (nonzero) emit(x, used);
            return;
        }
        mpq_class rem = bound() - used;
        if (rem < 0) return;
        mpq_class c = 0;
        for (int j = i + 1; j < m; j++)
            if (x[j]) c += L[j][i] * (long)x[j];
        mpq_class t = -c, rad2 = rem / D[i];
        long long hi = floor_plus(t, rad2);
        for (long long v = ceil_minus(t, rad2); v <= hi; v++) {
            x[i] = v;
            mpq_class dv = mpq_class((long)v) + c;
            rec(i - 1, used + D[i] * dv * dv);
        }
        x[i] = 0;
    }
};

}  // namespace

mpq_class systole_squared(const std::vector<std::vector<mpq_class>>& gram,
                          const std::vector<std::vector<mpz_class>>& basis) {
    const int m = (int)basis.size();
    const int r = (int)gram.size();
    if (m == 0) throw std::invalid_argument("systole: empty basis");
    for (const auto& row : gram)
        if ((int)row.size() != r) throw std::invalid_argument("systole: Gram is not square");
    for (const auto& b : basis)
        if ((int)b.size() != r) throw std::invalid_argument("systole: basis/Gram size mismatch");
    for (int i = 0; i < r; i++)
        for (int j = i + 1; j < r; j++)
            if (gram[i][j] != gram[j][i])
                throw std::invalid_argument("systole: Gram is not symmetric");

    // Gram of the sublattice basis
    std::vector<std::vector<mpq_class>> T(m, std::vector<mpq_class>(r, 0));
    for (int a = 0; a < m; a++)
        for (int i = 0; i < r; i++) {
            if (basis[a][i] == 0) continue;
            mpq_class coef(basis[a][i]);
            for (int j = 0; j < r; j++) T[a][j] += coef * gram[i][j];
        }
    std::vector<std::vector<mpq_class>> Q(m, std::vector<mpq_class>(m, 0));
    for (int a = 0; a < m; a++)
        for (int b = 0; b < m; b++)
            for (int j = 0; j < r; j++)
                if (basis[b][j] != 0) Q[a][b] += T[a][j] * mpq_class(basis[b][j]);

    std::vector<std::vector<mpq_class>> Lm;
    std::vector<mpq_class> Dm;
    if (!ldl(Q, Lm, Dm))
        throw std::invalid_argument("systole: form not positive definite on the sublattice");

    mpq_class best = Q[0][0];
    for (int i = 1; i < m; i++)
        if (Q[i][i] < best) best = Q[i][i];

    Enumerator en{Lm, Dm, m, [&] { return best; },
                  [&](const std::vector<long long>&, const mpq_class& val) {
                      if (val < best) best = val;
                  },
                  {}};
    en.run();
    return best;
}

double systole(const std::vector<std::vector<mpq_class>>& gram,
               const std::vector<std::vector<mpz_class>>& basis) {
    return std::sqrt(systole_squared(gram, basis).get_d());
}

std::vector<std::vector<mpz_class>> short_vectors(const std::vector<std::vector<mpq_class>>& gram,
                                                  const mpq_class& bound_squared, long long cap) {
    const int r = (int)gram.size();
    for (const auto& row : gram)
        if ((int)row.size() != r) throw std::invalid_argument("short_vectors: Gram is not square");
    for (int i = 0; i < r; i++)
        for (int j = i + 1; j < r; j++)
            if (gram[i][j] != gram[j][i])
                throw std::invalid_argument("short_vectors: Gram is not symmetric");
    if (r == 0 || bound_squared < 0) return {};

    std::vector<std::vector<mpq_class>> Lm;
    std::vector<mpq_class> Dm;
    if (!ldl(gram, Lm, Dm))
        throw std::invalid_argument("short_vectors: Gram is not positive definite");

    std::vector<std::vector<mpz_class>> out;
    Enumerator en{Lm, Dm, r, [&] { return bound_squared; },
                  [&](const std::vector<long long>& x, const mpq_class&) {
                      for (long long v : x) {
                          if (v > 0) break;
                          if (v < 0) return;  // keep one representative per +-x
                      }
                      if ((long long)out.size() >= cap)
                          throw std::length_error("short_vectors: enumeration exceeds cap");
                      std::vector<mpz_class> vec(r);
                      for (int i = 0; i < r; i++) vec[i] = (long)x[i];
                      out.push_back(std::move(vec));
                  },
                  {}};
    en.run();
    std::sort(out.begin(), out.end());
    return out;
}

Character character_from_cocycle(const std::vector<mpq_class>& z,
                                 const std::vector<CuspTorus>& cusps) {
    Character out;
    out.cocycle = z;
    for (const auto& T : cusps) {
        std::vector<mpq_class> vals;
        for (const auto& g : T.loops) vals.push_back(evaluate(z, g));
        out.cusp_values.push_back(std::move(vals));
    }
    return out;
}

Character character_from_cocycle(const std::vector<int>& z, const std::vector<CuspTorus>& cusps) {
    std::vector<mpq_class> zq(z.size());
    for (size_t i = 0; i < z.size(); i++) zq[i] = z[i];
    return character_from_cocycle(zq, cusps);
}

namespace {

// 4*pi^2 vs an exact rational, by interval arithmetic at growing precision;
// equality cannot occur since pi^2 is irrational
bool exceeds_4pi2(const mpq_class& s2) {
    for (mpfr_prec_t prec = 128; prec <= (1 << 20); prec *= 2) {
        mpfr_t lo, hi;
        mpfr_init2(lo, prec);
        mpfr_init2(hi, prec);
        mpfr_const_pi(lo, MPFR_RNDD);
        mpfr_sqr(lo, lo, MPFR_RNDD);
        mpfr_mul_ui(lo, lo, 4, MPFR_RNDD);
        mpfr_const_pi(hi, MPFR_RNDU);
        mpfr_sqr(hi, hi, MPFR_RNDU);
        mpfr_mul_ui(hi, hi, 4, MPFR_RNDU);
        int above = mpfr_cmp_q(hi, s2.get_mpq_t());
        int below = mpfr_cmp_q(lo, s2.get_mpq_t());
        mpfr_clear(lo);
        mpfr_clear(hi);
        if (above < 0) return true;   // s2 > upper bound of 4*pi^2
        if (below > 0) return false;  // s2 < lower bound
    }
    throw std::logic_error("two_pi_check: interval comparison did not converge");
}

}  // namespace

std::vector<TwoPiResult> two_pi_check(const Character& mu, const std::vector<CuspTorus>& cusps) {
    if (mu.cusp_values.size() != cusps.size())
        throw std::invalid_argument("two_pi_check: character/cusp count mismatch");

    std::vector<TwoPiResult> results;
    for (size_t s = 0; s < cusps.size(); s++) {
        const auto& vals = mu.cusp_values[s];
        if (vals.size() != cusps[s].loops.size())
            throw std::invalid_argument("two_pi_check: value vector does not match cusp rank");

        bool nonzero = false;
        for (const auto& v : vals)
            if (v != 0) nonzero = true;
        if (!nonzero) {
            results.push_back({false, "trivial on cusp"});
            continue;
        }

        mpz_class den = 1;
        for (const auto& v : vals)
            mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), mpq_denref(v.get_mpq_t()));
        std::vector<mpz_class> ints;
        for (const auto& v : vals) ints.push_back(v.get_num() * (den / v.get_den()));

        KernelSublattice ker = kernel_sublattice(ints);
        if (ker.basis.empty()) {
            results.push_back({true, "kernel is trivial"});
            continue;
        }
        bool pass = exceeds_4pi2(systole_squared(cusps[s].gram, ker.basis));
        results.push_back(
            {pass, pass ? "kernel systole exceeds 2*pi" : "kernel systole at most 2*pi"});
    }
    return results;
}

namespace {

// candidate coefficients ordered by magnitude, zero first, positive before
// negative; ties in magnitude cannot occur between reduced fractions
std::vector<mpq_class> lambda_grid(long long max_num, long long max_den) {
    std::vector<mpq_class> cand;
    cand.push_back(0);
    for (long long q = 1; q <= max_den; q++)
        for (long long p = 1; p <= max_num; p++) {
            if (std::gcd(p, q) != 1) continue;
            mpq_class v((long)p, (long)q);
            cand.push_back(v);
            cand.push_back(-v);
        }
    std::sort(cand.begin(), cand.end(), [](const mpq_class& a, const mpq_class& b) {
        mpq_class aa = abs(a), ab = abs(b);
        if (aa != ab) return aa < ab;
        return a > b;
    });
    return cand;
}

}  // namespace

PerturbResult perturb(const Character& chi, const mpq_class& target,
                      const std::vector<CuspTorus>& cusps, const std::vector<Character>& aux,
                      long long max_num, long long max_den, int jobs) {
    const size_t S = cusps.size();
    const size_t A = aux.size();
    if (chi.cusp_values.size() != S)
        throw std::invalid_argument("perturb: base character/cusp count mismatch");
    for (const auto& a : aux)
        if (a.cusp_values.size() != S)
            throw std::invalid_argument("perturb: aux character/cusp count mismatch");
    if (target <= 0) throw std::invalid_argument("perturb: target must be positive");
    if (max_num < 1 || max_den < 1) throw std::invalid_argument("perturb: empty coefficient grid");
    if (jobs < 1) jobs = 1;

    std::vector<std::vector<std::vector<mpz_class>>> Z(S);
    for (size_t s = 0; s < S; s++) Z[s] = short_vectors(cusps[s].gram, target * target);

    const std::vector<mpq_class> cand = lambda_grid(max_num, max_den);
    unsigned long long total = 1;
    for (size_t a = 0; a < A; a++) {
        if (total > (1ull << 32) / cand.size())
            throw std::length_error("perturb: candidate grid too large to enumerate");
        total *= cand.size();
    }

    auto decode = [&](unsigned long long idx) {
        std::vector<mpq_class> lam(A);
        for (size_t a = A; a-- > 0;) {
            lam[a] = cand[idx % cand.size()];
            idx /= cand.size();
        }
        return lam;  // index order == lexicographic order on tuples
    };

    auto cusp_values_for = [&](const std::vector<mpq_class>& lam, size_t s) {
        std::vector<mpq_class> vals = chi.cusp_values[s];
        for (size_t a = 0; a < A; a++) {
            if (lam[a] == 0) continue;
            const auto& av = aux[a].cusp_values[s];
            if (av.size() != vals.size())
                throw std::invalid_argument("perturb: aux value vector does not match cusp rank");
            for (size_t i = 0; i < vals.size(); i++) vals[i] += lam[a] * av[i];
        }
        return vals;
    };

    auto admissible = [&](const std::vector<mpq_class>& lam) {
        for (size_t s = 0; s < S; s++) {
            std::vector<mpq_class> vals = cusp_values_for(lam, s);
            bool nonzero = false;
            for (const auto& v : vals)
                if (v != 0) nonzero = true;
            if (!nonzero) return false;
            for (const auto& vec : Z[s]) {
                mpq_class dot = 0;
                for (size_t i = 0; i < vals.size(); i++)
                    if (vec[i] != 0) dot += mpq_class(vec[i]) * vals[i];
                if (dot == 0) return false;
            }
        }
        return true;
    };

    long long hit = -1;
    if (jobs == 1 || total < 64) {
        for (unsigned long long idx = 0; idx < total; idx++)
            if (admissible(decode(idx))) {
                hit = (long long)idx;
                break;
            }
    } else {
        // blocks scanned in order keep the first hit independent of jobs
        const unsigned long long B = (unsigned long long)jobs * 16;
        std::vector<char> res;
        for (unsigned long long base = 0; base < total && hit < 0; base += B) {
            unsigned long long count = std::min(B, total - base);
            res.assign(count, 0);
            std::vector<std::thread> pool;
            for (int t = 0; t < jobs; t++)
                pool.emplace_back([&, t] {
                    for (unsigned long long k = t; k < count; k += jobs)
                        res[k] = admissible(decode(base + k)) ? 1 : 0;
                });
            for (auto& th : pool) th.join();
            for (unsigned long long k = 0; k < count; k++)
                if (res[k]) {
                    hit = (long long)(base + k);
                    break;
                }
        }
    }

    if (hit < 0)
        throw NoSolutionWithinBound(
            "perturb: no avoiding combination with |p| <= " + std::to_string(max_num) +
            ", q <= " + std::to_string(max_den) + " (" + std::to_string(total) + " candidates)");

    PerturbResult R;
    R.lambda = decode((unsigned long long)hit);

    bool have_cochain = !chi.cocycle.empty();
    for (size_t a = 0; a < A && have_cochain; a++)
        if (R.lambda[a] != 0 && aux[a].cocycle.size() != chi.cocycle.size()) have_cochain = false;
    if (have_cochain) {
        R.mu.cocycle = chi.cocycle;
        for (size_t a = 0; a < A; a++) {
            if (R.lambda[a] == 0) continue;
            for (size_t e = 0; e < R.mu.cocycle.size(); e++)
                R.mu.cocycle[e] += R.lambda[a] * aux[a].cocycle[e];
        }
    }
    for (size_t s = 0; s < S; s++) {
        std::vector<mpq_class> vals = cusp_values_for(R.lambda, s);
        PerturbResult::CuspEvidence ev;
        ev.vectors = Z[s];
        for (const auto& vec : Z[s]) {
            mpq_class dot = 0;
            for (size_t i = 0; i < vals.size(); i++)
                if (vec[i] != 0) dot += mpq_class(vec[i]) * vals[i];
            ev.values.push_back(dot);
        }
        R.evidence.push_back(std::move(ev));
        R.mu.cusp_values.push_back(std::move(vals));
    }
    return R;
}

}  // namespace rap
