#pragma once

// Exact linear algebra over prime fields F_q: canonical subspaces (reduced
// row echelon bases), direct-sum tests, and deterministic enumeration of
// subspaces and complements. Everything here is a value type; all
// representations are canonical so equality is structural.

#include <algorithm>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace steinberg {

using BigInt = boost::multiprecision::cpp_int;

/// Prime field F_q. Primality is checked at construction.
class PrimeField {
public:
    explicit PrimeField(uint32_t q) : q_(q) {
        if (q < 2) throw std::invalid_argument("field modulus must be >= 2");
        for (uint64_t d = 2; d * d <= q; ++d)
            if (q % d == 0) throw std::invalid_argument("field modulus must be prime");
    }

    uint32_t q() const { return q_; }

    uint32_t reduce(int64_t x) const {
        int64_t r = x % static_cast<int64_t>(q_);
        return static_cast<uint32_t>(r < 0 ? r + q_ : r);
    }
    uint32_t add(uint32_t a, uint32_t b) const { return (a + b) % q_; }
    uint32_t sub(uint32_t a, uint32_t b) const { return (a + q_ - b) % q_; }
    uint32_t mul(uint32_t a, uint32_t b) const {
        return static_cast<uint32_t>((static_cast<uint64_t>(a) * b) % q_);
    }
    uint32_t neg(uint32_t a) const { return a == 0 ? 0 : q_ - a; }

    uint32_t inv(uint32_t a) const {
        if (a == 0) throw std::domain_error("inverse of zero");
        // extended Euclid on (a, q)
        int64_t t = 0, new_t = 1, r = q_, new_r = a;
        while (new_r != 0) {
            int64_t quot = r / new_r;
            t -= quot * new_t; std::swap(t, new_t);
            r -= quot * new_r; std::swap(r, new_r);
        }
        return reduce(t);
    }

    friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.q_ == b.q_; }
    friend bool operator!=(const PrimeField& a, const PrimeField& b) { return a.q_ != b.q_; }

private:
    uint32_t q_;
};

using FFRow = std::vector<uint32_t>;

/// Dense matrix over F_q, entries stored reduced mod q.
struct MatFF {
    PrimeField field;
    size_t rows = 0;
    size_t cols = 0;
    std::vector<uint32_t> data;  // row-major

    MatFF(PrimeField f, size_t r, size_t c) : field(f), rows(r), cols(c), data(r * c, 0) {}

    uint32_t& at(size_t r, size_t c) { return data[r * cols + c]; }
    uint32_t at(size_t r, size_t c) const { return data[r * cols + c]; }

    FFRow row(size_t r) const {
        return FFRow(data.begin() + r * cols, data.begin() + (r + 1) * cols);
    }

    static MatFF from_rows(const std::vector<FFRow>& rs, size_t ncols, PrimeField f) {
        MatFF m(f, rs.size(), ncols);
        for (size_t i = 0; i < rs.size(); ++i) {
            if (rs[i].size() != ncols) throw std::invalid_argument("row length mismatch");
            for (size_t j = 0; j < ncols; ++j) m.at(i, j) = f.reduce(rs[i][j]);
        }
        return m;
    }

    friend bool operator==(const MatFF& a, const MatFF& b) {
        return a.field == b.field && a.rows == b.rows && a.cols == b.cols && a.data == b.data;
    }
};

struct RrefResult {
    MatFF mat;                     // RREF with zero rows removed
    size_t rank = 0;
    std::vector<uint32_t> pivots;  // strictly increasing pivot columns
};

/// Reduced row echelon form; zero rows are dropped, row space is preserved.
inline RrefResult rref(MatFF m) {
    const PrimeField f = m.field;
    size_t pr = 0;  // current pivot row
    std::vector<uint32_t> pivots;
    for (size_t c = 0; c < m.cols && pr < m.rows; ++c) {
        size_t sel = pr;
        while (sel < m.rows && m.at(sel, c) == 0) ++sel;
        if (sel == m.rows) continue;
        for (size_t j = 0; j < m.cols; ++j) std::swap(m.at(pr, j), m.at(sel, j));
        uint32_t iv = f.inv(m.at(pr, c));
        for (size_t j = c; j < m.cols; ++j) m.at(pr, j) = f.mul(m.at(pr, j), iv);
        for (size_t r = 0; r < m.rows; ++r) {
            if (r == pr || m.at(r, c) == 0) continue;
            uint32_t factor = m.at(r, c);
            for (size_t j = c; j < m.cols; ++j)
                m.at(r, j) = f.sub(m.at(r, j), f.mul(factor, m.at(pr, j)));
        }
        pivots.push_back(static_cast<uint32_t>(c));
        ++pr;
    }
    MatFF out(f, pr, m.cols);
    std::copy(m.data.begin(), m.data.begin() + pr * m.cols, out.data.begin());
    return RrefResult{std::move(out), pr, std::move(pivots)};
}

/// A linear subspace of F_q^n in canonical form: the basis is the reduced
/// row echelon basis with no zero rows, so two subspaces are equal as sets
/// of vectors iff their representations compare equal.
class Subspace {
public:
    static Subspace span(const std::vector<FFRow>& vectors, uint32_t n, PrimeField f) {
        for (const auto& v : vectors)
            if (v.size() != n) throw std::invalid_argument("vector length mismatch");
        RrefResult r = rref(MatFF::from_rows(vectors, n, f));
        return Subspace(std::move(r.mat), std::move(r.pivots));
    }

    static Subspace zero(uint32_t n, PrimeField f) { return span({}, n, f); }

    static Subspace full(uint32_t n, PrimeField f) {
        std::vector<FFRow> rows(n, FFRow(n, 0));
        for (uint32_t i = 0; i < n; ++i) rows[i][i] = 1;
        return span(rows, n, f);
    }

    const PrimeField& field() const { return basis_.field; }
    uint32_t ambient_dim() const { return static_cast<uint32_t>(basis_.cols); }
    uint32_t rank() const { return static_cast<uint32_t>(basis_.rows); }
    const MatFF& basis() const { return basis_; }
    const std::vector<uint32_t>& pivots() const { return pivots_; }

    bool is_zero() const { return rank() == 0; }
    bool is_full() const { return rank() == ambient_dim(); }

    /// Membership test by reduction against the echelon basis.
    bool contains_vector(FFRow v) const {
        if (v.size() != ambient_dim()) throw std::invalid_argument("ambient mismatch");
        const PrimeField& f = field();
        for (size_t i = 0; i < basis_.rows; ++i) {
            uint32_t c = v[pivots_[i]];
            if (c == 0) continue;
            for (size_t j = pivots_[i]; j < basis_.cols; ++j)
                v[j] = f.sub(v[j], f.mul(c, basis_.at(i, j)));
        }
        return std::all_of(v.begin(), v.end(), [](uint32_t x) { return x == 0; });
    }

    /// True iff other is a subset of this subspace.
    bool contains(const Subspace& other) const {
        check_same_ambient(*this, other);
        if (other.rank() > rank()) return false;
        for (size_t i = 0; i < other.basis_.rows; ++i)
            if (!contains_vector(other.basis_.row(i))) return false;
        return true;
    }

    friend bool operator==(const Subspace& a, const Subspace& b) {
        return a.basis_ == b.basis_;
    }
    friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }

    static void check_same_ambient(const Subspace& a, const Subspace& b) {
        if (a.field() != b.field() || a.ambient_dim() != b.ambient_dim())
            throw std::invalid_argument("ambient space mismatch");
    }

private:
    Subspace(MatFF basis, std::vector<uint32_t> pivots)
        : basis_(std::move(basis)), pivots_(std::move(pivots)) {}

    MatFF basis_;
    std::vector<uint32_t> pivots_;

    friend Subspace subspace_from_rref_unchecked(MatFF basis, std::vector<uint32_t> pivots);
};

/// Internal: wrap an already-canonical RREF basis without recomputing.
inline Subspace subspace_from_rref_unchecked(MatFF basis, std::vector<uint32_t> pivots) {
    return Subspace(std::move(basis), std::move(pivots));
}

/// Enumeration/canonical order: by rank, then pivot-column set
/// (lexicographic), then basis entries row-major (which compares exactly
/// the free entries when pivot sets agree).
inline bool subspace_less(const Subspace& a, const Subspace& b) {
    if (a.rank() != b.rank()) return a.rank() < b.rank();
    if (a.pivots() != b.pivots()) return a.pivots() < b.pivots();
    return a.basis().data < b.basis().data;
}

struct SubspaceLess {
    bool operator()(const Subspace& a, const Subspace& b) const { return subspace_less(a, b); }
};

inline Subspace sum(const Subspace& a, const Subspace& b) {
    Subspace::check_same_ambient(a, b);
    std::vector<FFRow> rows;
    rows.reserve(a.rank() + b.rank());
    for (size_t i = 0; i < a.rank(); ++i) rows.push_back(a.basis().row(i));
    for (size_t i = 0; i < b.rank(); ++i) rows.push_back(b.basis().row(i));
    return Subspace::span(rows, a.ambient_dim(), a.field());
}

/// Zassenhaus intersection: rref of [A|A; B|0], rows with zero left half
/// carry a basis of the intersection in the right half.
inline Subspace intersect(const Subspace& a, const Subspace& b) {
    Subspace::check_same_ambient(a, b);
    const uint32_t n = a.ambient_dim();
    const PrimeField f = a.field();
    MatFF work(f, a.rank() + b.rank(), 2 * n);
    for (size_t i = 0; i < a.rank(); ++i)
        for (uint32_t j = 0; j < n; ++j) {
            work.at(i, j) = a.basis().at(i, j);
            work.at(i, n + j) = a.basis().at(i, j);
        }
    for (size_t i = 0; i < b.rank(); ++i)
        for (uint32_t j = 0; j < n; ++j) work.at(a.rank() + i, j) = b.basis().at(i, j);
    RrefResult r = rref(std::move(work));
    std::vector<FFRow> gens;
    for (size_t i = 0; i < r.rank; ++i) {
        bool left_zero = true;
        for (uint32_t j = 0; j < n && left_zero; ++j) left_zero = (r.mat.at(i, j) == 0);
        if (!left_zero) continue;
        FFRow v(n);
        for (uint32_t j = 0; j < n; ++j) v[j] = r.mat.at(i, n + j);
        gens.push_back(std::move(v));
    }
    return Subspace::span(gens, n, f);
}

/// True iff p + q is direct and fills the ambient space.
inline bool is_direct_sum(const Subspace& p, const Subspace& q) {
    Subspace::check_same_ambient(p, q);
    if (p.rank() + q.rank() != p.ambient_dim()) return false;
    return sum(p, q).rank() == p.ambient_dim();
}

/// All subspaces of F_q^n (optionally only those of rank k), emitted in the
/// canonical order of subspace_less: rank ascending, pivot sets in
/// lexicographic order, free entries in row-major lexicographic order.
inline std::vector<Subspace> enumerate_subspaces(uint32_t n, PrimeField f,
                                                 std::optional<uint32_t> k = std::nullopt) {
    if (k && *k > n) throw std::invalid_argument("rank filter exceeds ambient dimension");
    std::vector<Subspace> out;
    const uint32_t q = f.q();
    uint32_t klo = k ? *k : 0, khi = k ? *k : n;
    for (uint32_t kk = klo; kk <= khi; ++kk) {
        if (kk == 0) {
            out.push_back(Subspace::zero(n, f));
            continue;
        }
        // pivot column combinations in lexicographic order
        std::vector<uint32_t> piv(kk);
        for (uint32_t i = 0; i < kk; ++i) piv[i] = i;
        while (true) {
            // free cells in row-major order: (i, j) with j > piv[i], j not a pivot
            std::vector<bool> is_piv(n, false);
            for (uint32_t p : piv) is_piv[p] = true;
            std::vector<std::pair<uint32_t, uint32_t>> free_cells;
            for (uint32_t i = 0; i < kk; ++i)
                for (uint32_t j = piv[i] + 1; j < n; ++j)
                    if (!is_piv[j]) free_cells.emplace_back(i, j);

            std::vector<uint32_t> vals(free_cells.size(), 0);
            while (true) {
                MatFF basis(f, kk, n);
                for (uint32_t i = 0; i < kk; ++i) basis.at(i, piv[i]) = 1;
                for (size_t t = 0; t < free_cells.size(); ++t)
                    basis.at(free_cells[t].first, free_cells[t].second) = vals[t];
                out.push_back(subspace_from_rref_unchecked(std::move(basis), piv));
                // odometer: last cell fastest, so value tuples are lexicographic
                size_t t = vals.size();
                while (t > 0 && vals[t - 1] == q - 1) vals[--t] = 0;
                if (t == 0) break;
                ++vals[t - 1];
            }

            // next k-combination of [0, n)
            int i = static_cast<int>(kk) - 1;
            while (i >= 0 && piv[i] == n - kk + i) --i;
            if (i < 0) break;
            ++piv[i];
            for (uint32_t j = i + 1; j < kk; ++j) piv[j] = piv[j - 1] + 1;
        }
    }
    return out;
}

/// All complements of p: every q with p ⊕ q = ambient, in canonical order.
/// Brute force over rank-(n-k) subspaces with an early dependency abort;
/// the count q^{k(n-k)} is asserted by the test suite.
inline std::vector<Subspace> enumerate_complements(const Subspace& p) {
    const uint32_t n = p.ambient_dim();
    std::vector<Subspace> out;
    for (const Subspace& cand : enumerate_subspaces(n, p.field(), n - p.rank())) {
        if (is_direct_sum(p, cand)) out.push_back(cand);
    }
    return out;
}

/// Gaussian binomial [n, k]_q by the product formula, exact.
inline BigInt gaussian_binomial(uint32_t n, uint32_t k, uint32_t q) {
    if (k > n) return 0;
    BigInt num = 1, den = 1;
    std::vector<BigInt> qpow(n + 1);
    qpow[0] = 1;
    for (uint32_t i = 1; i <= n; ++i) qpow[i] = qpow[i - 1] * q;
    for (uint32_t i = 0; i < k; ++i) {
        num *= qpow[n - i] - 1;
        den *= qpow[k - i] - 1;
    }
    return num / den;
}

/// An ordered pair (P, Q) with P ⊕ Q = M; the vertex type of the split
/// building. Parts are stored canonically, so equality is structural.
struct SplitPair {
    Subspace p;
    Subspace q_part;

    SplitPair(Subspace p_, Subspace q_) : p(std::move(p_)), q_part(std::move(q_)) {
        if (!is_direct_sum(p, q_part))
            throw std::invalid_argument("parts do not form a direct sum decomposition");
    }

    friend bool operator==(const SplitPair& a, const SplitPair& b) {
        return a.p == b.p && a.q_part == b.q_part;
    }

    /// Strict order of the split building: P grows, Q shrinks.
    static bool less(const SplitPair& a, const SplitPair& b) {
        return a.p.rank() < b.p.rank() && b.p.contains(a.p) && a.q_part.contains(b.q_part);
    }
};

struct SplitPairLess {
    bool operator()(const SplitPair& a, const SplitPair& b) const {
        if (subspace_less(a.p, b.p)) return true;
        if (subspace_less(b.p, a.p)) return false;
        return subspace_less(a.q_part, b.q_part);
    }
};

// --- text format: first line "q n k", then k rows of residues -------------

inline std::string format_subspace(const Subspace& s) {
    std::ostringstream os;
    os << s.field().q() << ' ' << s.ambient_dim() << ' ' << s.rank() << '\n';
    for (size_t i = 0; i < s.rank(); ++i) {
        for (size_t j = 0; j < s.ambient_dim(); ++j) {
            if (j) os << ' ';
            os << s.basis().at(i, j);
        }
        os << '\n';
    }
    return os.str();
}

inline Subspace parse_subspace(std::istream& in) {
    uint32_t q, n, k;
    if (!(in >> q >> n >> k)) throw std::runtime_error("bad subspace header");
    PrimeField f(q);
    std::vector<FFRow> rows(k, FFRow(n));
    for (uint32_t i = 0; i < k; ++i)
        for (uint32_t j = 0; j < n; ++j)
            if (!(in >> rows[i][j])) throw std::runtime_error("bad subspace row");
    Subspace s = Subspace::span(rows, n, f);
    if (s.rank() != k) throw std::runtime_error("subspace rows are dependent");
    return s;
}

inline Subspace parse_subspace(const std::string& text) {
    std::istringstream is(text);
    return parse_subspace(is);
}

/// Compact single-token form used in cache manifests: rows of digits
/// joined by ';', or "0" for the zero subspace.
inline std::string subspace_token(const Subspace& s) {
    if (s.rank() == 0) return "0";
    std::string t;
    for (size_t i = 0; i < s.rank(); ++i) {
        if (i) t += ';';
        for (size_t j = 0; j < s.ambient_dim(); ++j) t += std::to_string(s.basis().at(i, j));
    }
    return t;
}

}  // namespace steinberg
