#pragma once

// Sparse exact integer linear algebra: Smith normal form invariant
// factors, ranks modulo a prime, integer kernel bases, and preimage
// lattices under column operations. Arbitrary-precision entries
// throughout; pivot selection favors units and low Markowitz fill.

#include <algorithm>
#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace steinberg {

using Int = boost::multiprecision::cpp_int;

struct SparseIntMatrix {
    int64_t rows = 0;
    int64_t cols = 0;

    struct Entry {
        int64_t r;
        int64_t c;
        Int v;
    };
    std::vector<Entry> entries;  // unique (r, c), nonzero v

    SparseIntMatrix() = default;
    SparseIntMatrix(int64_t r, int64_t c) : rows(r), cols(c) {}

    void add(int64_t r, int64_t c, Int v) {
        if (r < 0 || r >= rows || c < 0 || c >= cols)
            throw std::out_of_range("matrix entry out of range");
        if (v != 0) entries.push_back({r, c, std::move(v)});
    }

    size_t nnz() const { return entries.size(); }

    /// Combine duplicate coordinates and drop zeros.
    void normalize() {
        std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
            return std::tie(a.r, a.c) < std::tie(b.r, b.c);
        });
        std::vector<Entry> out;
        for (Entry& e : entries) {
            if (!out.empty() && out.back().r == e.r && out.back().c == e.c)
                out.back().v += e.v;
            else
                out.push_back(std::move(e));
        }
        entries.clear();
        for (Entry& e : out)
            if (e.v != 0) entries.push_back(std::move(e));
    }

    SparseIntMatrix transpose() const {
        SparseIntMatrix t(cols, rows);
        for (const Entry& e : entries) t.entries.push_back({e.c, e.r, e.v});
        return t;
    }

    static SparseIntMatrix from_dense(const std::vector<std::vector<int64_t>>& d) {
        SparseIntMatrix m(static_cast<int64_t>(d.size()),
                          d.empty() ? 0 : static_cast<int64_t>(d[0].size()));
        for (size_t r = 0; r < d.size(); ++r)
            for (size_t c = 0; c < d[r].size(); ++c)
                if (d[r][c] != 0) m.entries.push_back({(int64_t)r, (int64_t)c, Int(d[r][c])});
        return m;
    }

    /// Stack b below this matrix (column counts must agree).
    SparseIntMatrix stack_below(const SparseIntMatrix& b) const {
        if (cols != b.cols) throw std::invalid_argument("stack: column mismatch");
        SparseIntMatrix m(rows + b.rows, cols);
        m.entries = entries;
        for (const Entry& e : b.entries) m.entries.push_back({e.r + rows, e.c, e.v});
        return m;
    }

    friend SparseIntMatrix multiply(const SparseIntMatrix& a, const SparseIntMatrix& b) {
        if (a.cols != b.rows) throw std::invalid_argument("multiply: shape mismatch");
        std::vector<std::vector<std::pair<int64_t, const Int*>>> brow(b.rows);
        for (const Entry& e : b.entries) brow[e.r].emplace_back(e.c, &e.v);
        std::vector<std::vector<std::pair<int64_t, const Int*>>> arow(a.rows);
        for (const Entry& e : a.entries) arow[e.r].emplace_back(e.c, &e.v);
        SparseIntMatrix out(a.rows, b.cols);
        std::map<int64_t, Int> acc;
        for (int64_t r = 0; r < a.rows; ++r) {
            acc.clear();
            for (auto& [k, av] : arow[r])
                for (auto& [c, bv] : brow[k]) acc[c] += (*av) * (*bv);
            for (auto& [c, v] : acc)
                if (v != 0) out.entries.push_back({r, c, v});
        }
        return out;
    }

    bool is_zero() const {
        for (const Entry& e : entries)
            if (e.v != 0) return false;
        return true;
    }
};

// --- text format: header "rows cols nnz", then "r c v" triplets -----------

inline void save_matrix(std::ostream& os, const SparseIntMatrix& m) {
    os << m.rows << ' ' << m.cols << ' ' << m.nnz() << '\n';
    for (const auto& e : m.entries) os << e.r << ' ' << e.c << ' ' << e.v << '\n';
}

inline SparseIntMatrix load_matrix(std::istream& in) {
    int64_t r, c;
    size_t nnz;
    if (!(in >> r >> c >> nnz)) throw std::runtime_error("bad matrix header");
    SparseIntMatrix m(r, c);
    for (size_t i = 0; i < nnz; ++i) {
        int64_t er, ec;
        Int v;
        if (!(in >> er >> ec >> v)) throw std::runtime_error("bad matrix triplet");
        m.add(er, ec, std::move(v));
    }
    m.normalize();
    return m;
}

namespace detail {

/// Quotient with remainder of minimal magnitude.
inline Int rounded_div(const Int& a, const Int& b) {
    Int q = a / b;
    Int r = a - q * b;
    Int hb = abs(b);
    if (2 * abs(r) > hb) q += (r > 0) == (b > 0) ? 1 : -1;
    return q;
}

/// Row-major sparse elimination workspace shared by the Smith reduction.
struct RowMajor {
    std::vector<std::map<int32_t, Int>> row;
    std::vector<std::set<int32_t>> col_rows;
    std::set<std::pair<int32_t, int32_t>> rows_by_size;  // (nnz, row)

    explicit RowMajor(const SparseIntMatrix& m)
        : row(m.rows), col_rows(m.cols) {
        for (const auto& e : m.entries) {
            auto [it, fresh] = row[e.r].emplace(static_cast<int32_t>(e.c), e.v);
            if (!fresh) {
                it->second += e.v;
                if (it->second == 0) row[e.r].erase(it);
            }
        }
        for (size_t r = 0; r < row.size(); ++r) {
            for (auto& [c, v] : row[r]) col_rows[c].insert(static_cast<int32_t>(r));
            if (!row[r].empty())
                rows_by_size.insert({static_cast<int32_t>(row[r].size()), static_cast<int32_t>(r)});
        }
    }

    void touch_begin(int32_t r) {
        if (!row[r].empty())
            rows_by_size.erase({static_cast<int32_t>(row[r].size()), r});
    }
    void touch_end(int32_t r) {
        if (!row[r].empty())
            rows_by_size.insert({static_cast<int32_t>(row[r].size()), r});
    }

    void set_entry(int32_t r, int32_t c, Int v) {
        auto it = row[r].find(c);
        if (v == 0) {
            if (it != row[r].end()) {
                row[r].erase(it);
                col_rows[c].erase(r);
            }
        } else {
            if (it == row[r].end()) {
                row[r].emplace(c, std::move(v));
                col_rows[c].insert(r);
            } else {
                it->second = std::move(v);
            }
        }
    }

    /// row[dst] += f * row[src]
    void row_axpy(int32_t dst, int32_t src, const Int& f) {
        touch_begin(dst);
        for (auto& [c, v] : row[src]) {
            auto it = row[dst].find(c);
            if (it == row[dst].end()) {
                Int nv = f * v;
                if (nv != 0) {
                    row[dst].emplace(c, std::move(nv));
                    col_rows[c].insert(dst);
                }
            } else {
                it->second += f * v;
                if (it->second == 0) {
                    row[dst].erase(it);
                    col_rows[c].erase(dst);
                }
            }
        }
        touch_end(dst);
    }

    void erase_row(int32_t r) {
        touch_begin(r);
        for (auto& [c, v] : row[r]) col_rows[c].erase(r);
        row[r].clear();
    }
};

}  // namespace detail

struct SmithResult {
    std::vector<Int> factors;  // invariant factors > 0, each dividing the next
    int64_t rank() const { return static_cast<int64_t>(factors.size()); }
    std::vector<Int> nontrivial() const {
        std::vector<Int> t;
        for (const Int& f : factors)
            if (f > 1) t.push_back(f);
        return t;
    }
};

/// Invariant factors of an integer matrix by sparse diagonal extraction:
/// repeatedly choose a pivot (unit preferred, then minimal Markowitz fill),
/// gcd-clean its row and column, clear both, and normalize the collected
/// diagonal into a divisibility chain at the end.
inline SmithResult smith_normal_form(const SparseIntMatrix& m) {
    detail::RowMajor w(m);
    std::vector<Int> diag;

    constexpr int kScanRows = 12;
    while (!w.rows_by_size.empty()) {
        // pivot selection
        int32_t pr = -1, pc = -1;
        bool best_unit = false;
        int64_t best_cost = 0;
        Int best_abs;
        int scanned = 0;
        for (auto it = w.rows_by_size.begin();
             it != w.rows_by_size.end() && scanned < kScanRows; ++it, ++scanned) {
            int32_t r = it->second;
            for (auto& [c, v] : w.row[r]) {
                Int av = abs(v);
                bool unit = (av == 1);
                int64_t cost = (int64_t)(w.row[r].size() - 1) * (int64_t)(w.col_rows[c].size() - 1);
                bool better;
                if (pr < 0) better = true;
                else if (unit != best_unit) better = unit;
                else if (cost != best_cost) better = cost < best_cost;
                else better = av < best_abs;
                if (better) {
                    pr = r; pc = c; best_unit = unit; best_cost = cost; best_abs = av;
                }
            }
            if (best_unit && best_cost == 0) break;
        }

        // gcd cleanup: shrink the pivot until it exactly divides its row and
        // column, moving it to smaller remainders as they appear
        while (true) {
            Int pv = w.row[pr].at(pc);
            bool restart = false;
            // column phase (row operations; may create fill)
            while (w.col_rows[pc].size() > 1) {
                int32_t r2 = -1;
                for (int32_t r : w.col_rows[pc])
                    if (r != pr) { r2 = r; break; }
                Int v2 = w.row[r2].at(pc);
                Int q = detail::rounded_div(v2, pv);
                w.row_axpy(r2, pr, -q);
                auto it = w.row[r2].find(pc);
                if (it != w.row[r2].end()) {  // nonzero remainder: smaller pivot found
                    pr = r2;
                    restart = true;
                    break;
                }
            }
            if (restart) continue;
            // row phase (column operations; pivot column is singleton, so each
            // op only changes the pivot row)
            pv = w.row[pr].at(pc);
            bool moved = false;
            std::vector<int32_t> cols;
            for (auto& [c, v] : w.row[pr])
                if (c != pc) cols.push_back(c);
            for (int32_t c2 : cols) {
                Int v2 = w.row[pr].at(c2);
                Int q = detail::rounded_div(v2, pv);
                Int rem = v2 - q * pv;
                w.touch_begin(pr);
                w.set_entry(pr, c2, rem);
                w.touch_end(pr);
                if (rem != 0) {
                    pc = c2;
                    moved = true;
                    break;
                }
            }
            if (moved) continue;
            break;  // row and column both clean
        }

        diag.push_back(abs(w.row[pr].at(pc)));
        w.erase_row(pr);
    }

    // normalize into a divisibility chain (1s are already universal divisors)
    std::vector<Int> ones, rest;
    for (Int& d : diag)
        (d == 1 ? ones : rest).push_back(std::move(d));
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i < rest.size(); ++i)
            for (size_t j = i + 1; j < rest.size(); ++j)
                if (rest[j] % rest[i] != 0) {
                    Int g = gcd(rest[i], rest[j]);
                    Int l = rest[i] / g * rest[j];
                    rest[i] = g;
                    rest[j] = l;
                    changed = true;
                }
    }
    std::sort(rest.begin(), rest.end());
    SmithResult out;
    out.factors = std::move(ones);
    for (Int& d : rest) out.factors.push_back(std::move(d));
    return out;
}

// --- rank modulo a prime ---------------------------------------------------

namespace detail {

inline uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t p) {
    return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

inline uint64_t powmod_u64(uint64_t a, uint64_t e, uint64_t p) {
    uint64_t r = 1;
    a %= p;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, p);
        a = mulmod_u64(a, a, p);
        e >>= 1;
    }
    return r;
}

inline bool is_probable_prime_u64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t sp : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n == sp) return true;
        if (n % sp == 0) return false;
    }
    uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) { witness = false; break; }
        }
        if (witness) return false;
    }
    return true;
}

inline uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

}  // namespace detail

/// Deterministic 62-bit prime derived from a seed.
inline uint64_t random_prime_62(uint64_t seed) {
    uint64_t state = seed;
    while (true) {
        uint64_t c = (detail::splitmix64(state) >> 2) | (1ull << 61) | 1ull;
        if (detail::is_probable_prime_u64(c)) return c;
    }
}

/// Rank of the matrix over F_p by sparse Gaussian elimination.
inline int64_t rank_mod_prime(const SparseIntMatrix& m, uint64_t p) {
    std::vector<std::map<int32_t, uint64_t>> row(m.rows);
    std::vector<std::set<int32_t>> col_rows(m.cols);
    for (const auto& e : m.entries) {
        Int rv = e.v % static_cast<int64_t>(p);
        if (rv < 0) rv += static_cast<int64_t>(p);
        uint64_t v = rv.convert_to<uint64_t>();
        if (v == 0) continue;
        auto [it, fresh] = row[e.r].emplace(static_cast<int32_t>(e.c), v);
        if (!fresh) {
            it->second = (it->second + v) % p;
            if (it->second == 0) row[e.r].erase(it);
        }
    }
    for (size_t r = 0; r < row.size(); ++r)
        for (auto& [c, v] : row[r]) col_rows[c].insert(static_cast<int32_t>(r));

    std::set<std::pair<int32_t, int32_t>> rows_by_size;
    for (size_t r = 0; r < row.size(); ++r)
        if (!row[r].empty())
            rows_by_size.insert({static_cast<int32_t>(row[r].size()), static_cast<int32_t>(r)});

    auto resize = [&](int32_t r, auto&& fn) {
        if (!row[r].empty()) rows_by_size.erase({static_cast<int32_t>(row[r].size()), r});
        fn();
        if (!row[r].empty()) rows_by_size.insert({static_cast<int32_t>(row[r].size()), r});
    };

    int64_t rank = 0;
    constexpr int kScanRows = 12;
    while (!rows_by_size.empty()) {
        int32_t pr = -1, pc = -1;
        int64_t best_cost = 0;
        int scanned = 0;
        for (auto it = rows_by_size.begin(); it != rows_by_size.end() && scanned < kScanRows;
             ++it, ++scanned) {
            int32_t r = it->second;
            for (auto& [c, v] : row[r]) {
                int64_t cost = (int64_t)(row[r].size() - 1) * (int64_t)(col_rows[c].size() - 1);
                if (pr < 0 || cost < best_cost) { pr = r; pc = c; best_cost = cost; }
            }
            if (best_cost == 0) break;
        }

        uint64_t pv = row[pr].at(pc);
        uint64_t ipv = detail::powmod_u64(pv, p - 2, p);
        std::vector<int32_t> targets(col_rows[pc].begin(), col_rows[pc].end());
        for (int32_t r2 : targets) {
            if (r2 == pr) continue;
            uint64_t f = p - detail::mulmod_u64(row[r2].at(pc), ipv, p);  // -v2/pv mod p
            resize(r2, [&] {
                for (auto& [c, v] : row[pr]) {
                    uint64_t add = detail::mulmod_u64(f, v, p);
                    auto it = row[r2].find(c);
                    if (it == row[r2].end()) {
                        if (add) { row[r2].emplace(c, add); col_rows[c].insert(r2); }
                    } else {
                        it->second = (it->second + add) % p;
                        if (it->second == 0) { row[r2].erase(it); col_rows[c].erase(r2); }
                    }
                }
            });
        }
        resize(pr, [&] {
            for (auto& [c, v] : row[pr]) col_rows[c].erase(pr);
            row[pr].clear();
        });
        ++rank;
    }
    return rank;
}

// --- integer kernels and preimage lattices (column operations) -------------

namespace detail {

/// Column-major elimination over the integers with per-column tracked
/// coordinate tails. Columns are combined by unimodular column operations
/// until every remaining active column is zero; the tails of those columns
/// generate the tracked projection of the kernel lattice. Once a row has
/// been processed it stays clear: active columns all vanish there, and
/// later combinations of active columns cannot repopulate it.
struct ColumnElim {
    int64_t nrows;
    int64_t a_cols;
    std::vector<std::map<int32_t, Int>> col;
    std::vector<std::vector<Int>> tail;  // empty vector = all-zero tail
    size_t tail_len;
    std::vector<std::set<int32_t>> row_cols;
    std::vector<bool> active;

    ColumnElim(const SparseIntMatrix& a, const SparseIntMatrix& b)
        : nrows(a.rows), a_cols(a.cols), col(a.cols + b.cols), tail(a.cols + b.cols),
          tail_len(static_cast<size_t>(b.cols)), row_cols(a.rows),
          active(a.cols + b.cols, true) {
        if (a.rows != b.rows) throw std::invalid_argument("row count mismatch");
        for (const auto& e : a.entries) add_entry(e.r, e.c, e.v);
        for (const auto& e : b.entries) add_entry(e.r, a.cols + e.c, e.v);
        for (int64_t j = 0; j < b.cols; ++j) {
            tail[a.cols + j].assign(tail_len, Int(0));
            tail[a.cols + j][j] = 1;
        }
    }

    void add_entry(int64_t r, int64_t c, const Int& v) {
        auto it = col[c].find(static_cast<int32_t>(r));
        if (it == col[c].end()) {
            if (v != 0) {
                col[c].emplace(static_cast<int32_t>(r), v);
                row_cols[r].insert(static_cast<int32_t>(c));
            }
        } else {
            it->second += v;
            if (it->second == 0) {
                col[c].erase(it);
                row_cols[r].erase(static_cast<int32_t>(c));
            }
        }
    }

    /// col[dst] += f * col[src] (with tail update); records rows whose
    /// occupancy changed.
    void col_axpy(int32_t dst, int32_t src, const Int& f, std::vector<int32_t>& touched) {
        for (auto& [r, v] : col[src]) {
            auto it = col[dst].find(r);
            if (it == col[dst].end()) {
                Int nv = f * v;
                if (nv != 0) {
                    col[dst].emplace(r, std::move(nv));
                    row_cols[r].insert(dst);
                    touched.push_back(r);
                }
            } else {
                it->second += f * v;
                if (it->second == 0) {
                    col[dst].erase(it);
                    row_cols[r].erase(dst);
                    touched.push_back(r);
                }
            }
        }
        if (!tail[src].empty()) {
            if (tail[dst].empty()) tail[dst].assign(tail_len, Int(0));
            for (size_t i = 0; i < tail_len; ++i) tail[dst][i] += f * tail[src][i];
        }
    }

    void deactivate(int32_t c, std::vector<int32_t>& touched) {
        active[c] = false;
        for (auto& [r, v] : col[c]) {
            row_cols[r].erase(c);
            touched.push_back(r);
        }
        col[c].clear();
        tail[c].clear();
    }

    /// Run to completion; returns the nonzero tails of the zero columns.
    std::vector<std::vector<Int>> run() {
        // lazy min-heap of (occupancy, row); stale keys are skipped on pop
        using QE = std::pair<int64_t, int32_t>;
        std::priority_queue<QE, std::vector<QE>, std::greater<QE>> pq;
        std::vector<char> done(static_cast<size_t>(nrows), 0);
        for (int64_t r = 0; r < nrows; ++r)
            if (!row_cols[r].empty())
                pq.push({static_cast<int64_t>(row_cols[r].size()), static_cast<int32_t>(r)});

        std::vector<int32_t> touched;
        while (!pq.empty()) {
            auto [occ, r] = pq.top();
            pq.pop();
            if (done[r]) continue;
            int64_t cur = static_cast<int64_t>(row_cols[r].size());
            if (cur == 0) { done[r] = 1; continue; }
            if (cur != occ) { pq.push({cur, r}); continue; }

            touched.clear();
            // gcd-eliminate all but one column at row r
            while (row_cols[r].size() > 1) {
                int32_t cmin = -1;
                Int vmin;
                for (int32_t c : row_cols[r]) {
                    Int av = abs(col[c].at(r));
                    if (cmin < 0 || av < vmin) {
                        cmin = c;
                        vmin = av;
                    }
                }
                std::vector<int32_t> others(row_cols[r].begin(), row_cols[r].end());
                for (int32_t c : others) {
                    if (c == cmin) continue;
                    Int q = rounded_div(col[c].at(r), col[cmin].at(r));
                    col_axpy(c, cmin, -q, touched);
                }
            }
            if (row_cols[r].size() == 1) deactivate(*row_cols[r].begin(), touched);
            done[r] = 1;

            std::sort(touched.begin(), touched.end());
            touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
            for (int32_t rr : touched)
                if (!done[rr] && !row_cols[rr].empty())
                    pq.push({static_cast<int64_t>(row_cols[rr].size()), rr});
        }

        std::vector<std::vector<Int>> gens;
        for (size_t c = 0; c < col.size(); ++c) {
            if (!active[c] || !col[c].empty() || tail[c].empty()) continue;
            bool nonzero = false;
            for (const Int& x : tail[c])
                if (x != 0) {
                    nonzero = true;
                    break;
                }
            if (nonzero) gens.push_back(tail[c]);
        }
        return gens;
    }
};

}  // namespace detail

/// Generators of the lattice {t in Z^{b.cols} : exists x with a*x + b*t = 0},
/// i.e. the projection of ker[a | b] onto the b-block coordinates.
inline std::vector<std::vector<Int>> lattice_kernel_tails(const SparseIntMatrix& a,
                                                          const SparseIntMatrix& b) {
    detail::ColumnElim engine(a, b);
    return engine.run();
}

/// Basis of the integer kernel {x : a*x = 0} (saturated by construction).
inline std::vector<std::vector<Int>> integer_kernel_basis(const SparseIntMatrix& a) {
    SparseIntMatrix empty(a.rows, 0);
    return lattice_kernel_tails(empty, a);
}

}  // namespace steinberg
