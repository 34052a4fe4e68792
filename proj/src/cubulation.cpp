#include "rap/cubulation.hpp"

#include <algorithm>
#include <functional>
#include <string>

namespace rap {

BadPairPresent::BadPairPresent(int f1, int f2)
    : std::runtime_error("bad pair present: orientation is not a cocycle on squares spanned by facets " +
                         std::to_string(f1) + " and " + std::to_string(f2)),
      first_facet(f1),
      second_facet(f2) {}

long long CubeComplex::count(int d) const {
    if (d < 0 || d > built_dim) return 0;
    return (long long)cells[d].v.size();
}

namespace {

// drop bit b from v, packing the higher bits down
inline uint32_t drop_bit(uint32_t v, int b) {
    return ((v >> (b + 1)) << b) | (v & ((1u << b) - 1u));
}

// order: facet tuple (lex), then base vertex, then sheet
struct CellKey {
    const int32_t* S;
    uint32_t v;
    int32_t sheet;
};

int compare_cell(const CubeComplex::Level& L, int d, size_t i, const CellKey& k, int ell) {
    const int32_t* Si = L.facets.data() + (size_t)d * i;
    for (int p = 0; p < d; p++) {
        if (Si[p] != k.S[p]) return Si[p] < k.S[p] ? -1 : 1;
    }
    if (L.v[i] != k.v) return L.v[i] < k.v ? -1 : 1;
    int32_t si = ell > 1 ? L.sheet[i] : 0;
    if (si != k.sheet) return si < k.sheet ? -1 : 1;
    return 0;
}

}  // namespace

long long CubeComplex::find_cell(int d, uint32_t v, int sheet, const int32_t* S) const {
    if (d < 0 || d > built_dim) return -1;
    const Level& L = cells[d];
    CellKey key{S, v, sheet};
    size_t lo = 0, hi = L.v.size();
    while (lo < hi) {
        size_t mid = lo + (hi - lo) / 2;
        if (compare_cell(L, d, mid, key, ell) < 0)
            lo = mid + 1;
        else
            hi = mid;
    }
    if (lo < L.v.size() && compare_cell(L, d, lo, key, ell) == 0) return (long long)lo;
    return -1;
}

long long CubeComplex::edge_index(int facet, uint32_t v, int sheet) const {
    int pos = facet_edge_pos[facet];
    if (pos < 0) return -1;
    long long half = 1LL << (c - 1);
    int b = colouring.colour[facet] - 1;
    return (pos * half + drop_bit(v, b)) * ell + sheet;
}

CubeComplex build(const Polytope& P, const Colouring& lam, int up_to_dim, long long cell_cap) {
    ValidationReport vr = validate_colouring(P, lam);
    if (!vr.valid())
        throw std::invalid_argument("build: invalid colouring: " + vr.violations.front());
    if (lam.palette_size > 24) throw std::length_error("build: palette too large (c > 24)");
    if (up_to_dim < 0 || up_to_dim > P.dim)
        throw std::invalid_argument("build: dimension bound out of range");

    CubeComplex C;
    C.c = lam.palette_size;
    C.polytope_dim = P.dim;
    C.built_dim = up_to_dim;
    C.colouring = lam;
    C.cells.resize(up_to_dim + 1);
    C.facet_edge_pos.assign(P.num_facets, -1);

    long long total = 1LL << C.c;
    if (total > cell_cap) throw std::length_error("build: cell cap exceeded at dimension 0");
    C.cells[0].v.resize((size_t)total);
    for (long long v = 0; v < total; v++) C.cells[0].v[(size_t)v] = (uint32_t)v;

    // enumerate spanning d-sets with pairwise-distinct colours in lex order;
    // each contributes 2^(c-d) translates, base vertices ascending
    std::vector<int> S;
    std::vector<int> positions;
    auto emit = [&](int d) {
        uint32_t mask = 0;
        for (int f : S) mask |= 1u << (lam.colour[f] - 1);
        positions.clear();
        for (int b = 0; b < C.c; b++)
            if (!(mask & (1u << b))) positions.push_back(b);
        long long n = 1LL << positions.size();
        total += n;
        if (total > cell_cap)
            throw std::length_error("build: cell cap exceeded at dimension " + std::to_string(d));
        CubeComplex::Level& L = C.cells[d];
        for (long long u = 0; u < n; u++) {
            uint32_t v = 0;
            for (size_t i = 0; i < positions.size(); i++)
                if (u & (1LL << i)) v |= 1u << positions[i];
            L.v.push_back(v);
            L.facets.insert(L.facets.end(), S.begin(), S.end());
        }
    };

    std::function<void(int, uint32_t)> extend = [&](int first, uint32_t used) {
        int d = (int)S.size();
        if (d > 0) emit(d);
        if (d == up_to_dim) return;
        for (int f = first; f < P.num_facets; f++) {
            uint32_t cb = 1u << (lam.colour[f] - 1);
            if (used & cb) continue;
            bool adj = true;
            for (int g : S)
                if (!P.adjacent(g, f)) {
                    adj = false;
                    break;
                }
            if (!adj) continue;
            S.push_back(f);
            if (spans_simplex(P, S)) {
                if (d == 1) C.square_pairs.emplace_back(S[0], S[1]);
                extend(f + 1, used | cb);
            }
            S.pop_back();
        }
    };

    // square_pairs must be complete even when squares are not materialized
    if (up_to_dim < 2 && P.dim >= 2) {
        std::vector<int> pair;
        for (int a = 0; a < P.num_facets; a++) {
            pair.assign(1, a);
            if (!spans_simplex(P, pair)) continue;
            for (int b = a + 1; b < P.num_facets; b++) {
                if (lam.colour[a] == lam.colour[b] || !P.adjacent(a, b)) continue;
                pair.assign(1, a);
                pair.push_back(b);
                if (spans_simplex(P, pair)) C.square_pairs.emplace_back(a, b);
            }
        }
    }
    extend(0, 0);

    // edge blocks appear in facet order; record each facet's block position
    int pos = 0;
    for (int f = 0; f < P.num_facets; f++) {
        std::vector<int> single(1, f);
        C.facet_edge_pos[f] = spans_simplex(P, single) ? pos++ : -1;
    }
    if (up_to_dim >= 1 && (long long)C.cells[1].v.size() != (long long)pos << (C.c - 1))
        throw std::logic_error("build: edge layout mismatch");
    std::sort(C.square_pairs.begin(), C.square_pairs.end());
    C.square_pairs.erase(std::unique(C.square_pairs.begin(), C.square_pairs.end()),
                         C.square_pairs.end());
    return C;
}

void orient(CubeComplex& C, const Colouring& lam, const State& s, const Moves& mv) {
    if (lam.palette_size != C.colouring.palette_size || lam.colour != C.colouring.colour)
        throw std::invalid_argument("orient: colouring does not match the complex");
    if (!valid_moves(mv, lam.palette_size))
        throw std::invalid_argument("orient: invalid moves for the palette");
    if ((int)s.status.size() != (int)lam.colour.size())
        throw std::invalid_argument("orient: state size mismatch");
    if (C.built_dim < 1) throw std::logic_error("orient: no edges materialized");

    const CubeComplex::Level& E = C.cells[1];
    C.edge_out.resize(E.v.size());
    for (size_t i = 0; i < E.v.size(); i++) {
        Status st = status_at(lam, s, mv, E.v[i], E.facets[i]);
        C.edge_out[i] = st == Status::O ? 1 : 0;
    }
    C.oriented = true;
    C.has_cocycle = false;
    C.z.clear();
}

namespace {

// walk every square spanned by each recorded pair and evaluate the coboundary
// of zval; returns the first offending pair or (-1, -1)
std::pair<int, int> coboundary_defect(const CubeComplex& C, const std::vector<int>& zval) {
    const int c = C.c;
    for (const auto& [f1, f2] : C.square_pairs) {
        int b1 = C.colouring.colour[f1] - 1;
        int b2 = C.colouring.colour[f2] - 1;
        uint32_t mask = (1u << b1) | (1u << b2);
        std::vector<int> positions;
        for (int b = 0; b < c; b++)
            if (!(mask & (1u << b))) positions.push_back(b);
        long long n = 1LL << positions.size();
        for (long long u = 0; u < n; u++) {
            uint32_t v = 0;
            for (size_t i = 0; i < positions.size(); i++)
                if (u & (1LL << i)) v |= 1u << positions[i];
            long long ea = C.edge_index(f1, v, 0);
            long long eb = C.edge_index(f1, v | (1u << b2), 0);
            long long ec = C.edge_index(f2, v, 0);
            long long ed = C.edge_index(f2, v | (1u << b1), 0);
            if (zval[ed] - zval[ec] - zval[eb] + zval[ea] != 0) return {f1, f2};
        }
    }
    return {-1, -1};
}

}  // namespace

const std::vector<int>& cocycle(CubeComplex& C) {
    if (!C.oriented) throw std::logic_error("cocycle: complex is not oriented");
    if (C.ell != 1) throw std::invalid_argument("cocycle: covers inherit their cochain");
    std::vector<int> zval(C.edge_out.size());
    for (size_t i = 0; i < zval.size(); i++) zval[i] = C.edge_out[i] ? 1 : -1;
    auto bad = coboundary_defect(C, zval);
    if (bad.first >= 0) throw BadPairPresent(bad.first, bad.second);
    C.z = std::move(zval);
    C.has_cocycle = true;
    return C.z;
}

long long euler_characteristic(const CubeComplex& C) {
    if (C.built_dim < C.polytope_dim)
        throw std::logic_error("euler_characteristic: complex not built to full dimension");
    long long chi = 0;
    for (int d = 0; d <= C.built_dim; d++) chi += (d % 2 == 0) ? C.count(d) : -C.count(d);
    return chi;
}

CubeComplex cyclic_cover(const CubeComplex& C, const std::vector<int>& z, int ell) {
    if (ell < 1) throw std::invalid_argument("cyclic_cover: ell must be >= 1");
    if (C.ell != 1) throw std::invalid_argument("cyclic_cover: input is already a cover");
    if (C.built_dim < 1) throw std::invalid_argument("cyclic_cover: no edges materialized");
    if (z.size() != C.cells[1].v.size())
        throw std::invalid_argument("cyclic_cover: cochain size mismatch");
    auto bad = coboundary_defect(C, z);
    if (bad.first >= 0)
        throw std::invalid_argument("cyclic_cover: input cochain is not a cocycle (facets " +
                                    std::to_string(bad.first) + ", " + std::to_string(bad.second) +
                                    ")");

    CubeComplex R;
    R.c = C.c;
    R.polytope_dim = C.polytope_dim;
    R.built_dim = C.built_dim;
    R.ell = ell;
    R.colouring = C.colouring;
    R.square_pairs = C.square_pairs;
    R.facet_edge_pos = C.facet_edge_pos;
    R.cells.resize(C.built_dim + 1);
    for (int d = 0; d <= C.built_dim; d++) {
        const CubeComplex::Level& L = C.cells[d];
        CubeComplex::Level& M = R.cells[d];
        size_t n = L.v.size();
        M.v.reserve(n * ell);
        M.sheet.reserve(n * ell);
        M.facets.reserve(L.facets.size() * ell);
        for (size_t i = 0; i < n; i++) {
            for (int j = 0; j < ell; j++) {
                M.v.push_back(L.v[i]);
                M.sheet.push_back(j);
                M.facets.insert(M.facets.end(), L.facets.begin() + (size_t)d * i,
                                L.facets.begin() + (size_t)d * (i + 1));
            }
        }
    }
    if (C.oriented) {
        R.edge_out.reserve(C.edge_out.size() * ell);
        for (uint8_t b : C.edge_out)
            for (int j = 0; j < ell; j++) R.edge_out.push_back(b);
        R.oriented = true;
    }
    R.z.reserve(z.size() * ell);
    for (int zv : z)
        for (int j = 0; j < ell; j++) R.z.push_back(zv);
    R.has_cocycle = true;
    return R;
}

ChainComplex cube_boundary_matrices(const CubeComplex& C) {
    if (C.built_dim < 0) throw std::logic_error("cube_boundary_matrices: empty complex");
    if (C.ell > 1 && !C.has_cocycle)
        throw std::logic_error("cube_boundary_matrices: cover without its cochain");
    ChainComplex cx;
    cx.ncells.resize(C.built_dim + 1);
    for (int d = 0; d <= C.built_dim; d++) cx.ncells[d] = C.count(d);
    cx.d.resize(C.built_dim + 1);
    std::vector<int32_t> face;
    for (int k = 1; k <= C.built_dim; k++) {
        SparseInt& M = cx.d[k];
        M.rows = (int)C.count(k - 1);
        M.cols = (int)C.count(k);
        M.col.resize(M.cols);
        const CubeComplex::Level& L = C.cells[k];
        for (size_t i = 0; i < L.v.size(); i++) {
            const int32_t* S = L.facets.data() + (size_t)k * i;
            uint32_t v = L.v[i];
            int j = C.ell > 1 ? L.sheet[i] : 0;
            auto& colv = M.col[i];
            for (int p = 0; p < k; p++) {
                face.assign(S, S + k);
                face.erase(face.begin() + p);
                int b = C.colouring.colour[S[p]] - 1;
                uint32_t vtop = v ^ (1u << b);
                int jtop = j;
                if (C.ell > 1) {
                    int zv = C.z[(size_t)C.edge_index(S[p], v, 0)];
                    jtop = ((j + zv) % C.ell + C.ell) % C.ell;
                }
                long long bot = C.find_cell(k - 1, v, j, face.data());
                long long top = C.find_cell(k - 1, vtop, jtop, face.data());
                if (bot < 0 || top < 0)
                    throw std::logic_error("cube_boundary_matrices: missing face");
                long long sgn = (p % 2 == 0) ? 1 : -1;
                colv.emplace_back((int)top, sgn);
                colv.emplace_back((int)bot, -sgn);
            }
            std::sort(colv.begin(), colv.end());
            // merge duplicate rows (cannot occur for cubes, but keep the
            // matrix well-formed regardless)
            size_t w = 0;
            for (size_t r = 0; r < colv.size(); r++) {
                if (w > 0 && colv[w - 1].first == colv[r].first)
                    colv[w - 1].second += colv[r].second;
                else
                    colv[w++] = colv[r];
            }
            colv.resize(w);
            colv.erase(std::remove_if(colv.begin(), colv.end(),
                                      [](const std::pair<int, long long>& e) {
                                          return e.second == 0;
                                      }),
                       colv.end());
        }
    }
    return cx;
}

}  // namespace rap
