#pragma once

// Finite abstract simplicial complexes with face closure, order complexes
// of posets, and joins.

#include <algorithm>
#include <cstdint>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "steinberg/poset.hpp"

namespace steinberg {

using Simplex = std::vector<int32_t>;  // strictly increasing vertex indices

class SimplicialComplex {
public:
    SimplicialComplex() = default;
    explicit SimplicialComplex(size_t vertex_count) : n_vertices_(vertex_count) {}

    /// Build from arbitrary simplices; faces are generated, duplicates
    /// removed, and per-dimension lists sorted lexicographically.
    static SimplicialComplex from_simplices(size_t vertex_count,
                                            const std::vector<Simplex>& simplices) {
        SimplicialComplex c(vertex_count);
        std::set<Simplex> seen;
        for (Simplex s : simplices) {
            std::sort(s.begin(), s.end());
            if (std::adjacent_find(s.begin(), s.end()) != s.end())
                throw std::invalid_argument("simplex has repeated vertices");
            for (int32_t v : s)
                if (v < 0 || static_cast<size_t>(v) >= vertex_count)
                    throw std::invalid_argument("simplex vertex out of range");
            // all nonempty subsets
            const size_t m = s.size();
            for (size_t mask = 1; mask < (size_t{1} << m); ++mask) {
                Simplex face;
                for (size_t i = 0; i < m; ++i)
                    if (mask & (size_t{1} << i)) face.push_back(s[i]);
                seen.insert(std::move(face));
            }
        }
        for (const Simplex& s : seen) c.insert_unchecked(s);
        c.sort_dims();
        return c;
    }

    size_t vertex_count() const { return n_vertices_; }

    /// Dimension of the complex; -1 for the empty complex.
    int dim() const { return static_cast<int>(by_dim_.size()) - 1; }

    bool empty() const { return by_dim_.empty(); }

    int64_t count(int d) const {
        if (d < 0 || d > dim()) return 0;
        return static_cast<int64_t>(by_dim_[d].size());
    }

    const std::vector<Simplex>& simplices(int d) const {
        static const std::vector<Simplex> none;
        if (d < 0 || d > dim()) return none;
        return by_dim_[d];
    }

    /// Index of a (sorted) simplex within its dimension's lexicographic
    /// list; -1 if absent.
    int64_t index_of(const Simplex& s) const {
        int d = static_cast<int>(s.size()) - 1;
        if (d < 0 || d > dim()) return -1;
        const auto& v = by_dim_[d];
        auto it = std::lower_bound(v.begin(), v.end(), s);
        if (it == v.end() || *it != s) return -1;
        return it - v.begin();
    }

    std::vector<Simplex> maximal_simplices() const {
        std::vector<Simplex> out;
        for (int d = 0; d <= dim(); ++d)
            for (const Simplex& s : by_dim_[d]) {
                bool maximal = true;
                if (d + 1 <= dim()) {
                    // s is maximal iff no (d+1)-simplex contains it
                    for (const Simplex& t : by_dim_[d + 1]) {
                        if (std::includes(t.begin(), t.end(), s.begin(), s.end())) {
                            maximal = false;
                            break;
                        }
                    }
                }
                if (maximal) out.push_back(s);
            }
        return out;
    }

    friend bool operator==(const SimplicialComplex& a, const SimplicialComplex& b) {
        return a.n_vertices_ == b.n_vertices_ && a.by_dim_ == b.by_dim_;
    }

    friend SimplicialComplex order_complex(const FinitePoset&);
    friend SimplicialComplex join_complex(const SimplicialComplex&, const SimplicialComplex&);

private:
    void insert_unchecked(const Simplex& s) {
        size_t d = s.size() - 1;
        if (by_dim_.size() <= d) by_dim_.resize(d + 1);
        by_dim_[d].push_back(s);
    }

    void sort_dims() {
        for (auto& v : by_dim_) std::sort(v.begin(), v.end());
    }

    size_t n_vertices_ = 0;
    std::vector<std::vector<Simplex>> by_dim_;
};

/// Order complex: d-simplices are exactly the (d+1)-element chains.
inline SimplicialComplex order_complex(const FinitePoset& p) {
    SimplicialComplex c(p.size());
    for (const std::vector<size_t>& chain : p.all_chains()) {
        Simplex s(chain.begin(), chain.end());
        std::sort(s.begin(), s.end());
        c.insert_unchecked(s);
    }
    c.sort_dims();
    return c;
}

/// Join K * L: simplices are unions of a (possibly empty) simplex from each
/// factor, with L's vertices offset past K's.
inline SimplicialComplex join_complex(const SimplicialComplex& k, const SimplicialComplex& l) {
    const int32_t off = static_cast<int32_t>(k.vertex_count());
    SimplicialComplex c(k.vertex_count() + l.vertex_count());
    std::vector<Simplex> left{{}};
    for (int d = 0; d <= k.dim(); ++d)
        for (const Simplex& s : k.simplices(d)) left.push_back(s);
    std::vector<Simplex> right{{}};
    for (int d = 0; d <= l.dim(); ++d)
        for (const Simplex& s : l.simplices(d)) {
            Simplex t = s;
            for (int32_t& v : t) v += off;
            right.push_back(std::move(t));
        }
    for (const Simplex& a : left)
        for (const Simplex& b : right) {
            if (a.empty() && b.empty()) continue;
            Simplex s = a;
            s.insert(s.end(), b.begin(), b.end());
            c.insert_unchecked(s);
        }
    c.sort_dims();
    return c;
}

// --- text format: "dim D vertices N", one maximal simplex per line --------

inline void save_complex(std::ostream& os, const SimplicialComplex& c) {
    os << "dim " << c.dim() << " vertices " << c.vertex_count() << '\n';
    for (const Simplex& s : c.maximal_simplices()) {
        for (size_t i = 0; i < s.size(); ++i) {
            if (i) os << ' ';
            os << s[i];
        }
        os << '\n';
    }
}

inline SimplicialComplex load_complex(std::istream& in) {
    std::string kw1, kw2;
    int d;
    size_t n;
    if (!(in >> kw1 >> d >> kw2 >> n) || kw1 != "dim" || kw2 != "vertices")
        throw std::runtime_error("bad complex header");
    std::string line;
    std::getline(in, line);
    std::vector<Simplex> maximal;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        Simplex s;
        int32_t v;
        while (ls >> v) s.push_back(v);
        if (!s.empty()) maximal.push_back(std::move(s));
    }
    SimplicialComplex c = SimplicialComplex::from_simplices(n, maximal);
    if (c.dim() != d) throw std::runtime_error("complex dimension mismatch");
    return c;
}

inline std::string complex_to_string(const SimplicialComplex& c) {
    std::ostringstream os;
    save_complex(os, c);
    return os.str();
}

}  // namespace steinberg
