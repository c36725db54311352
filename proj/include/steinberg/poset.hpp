#pragma once

// Generic finite poset machinery: strict orders stored as transitively
// closed reachability bitsets, induced subposets, links, opposites,
// heights, monotone maps and poset fibers.

#include <algorithm>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace steinberg {

using Bitset = boost::dynamic_bitset<uint64_t>;

class FinitePoset {
public:
    FinitePoset() = default;

    /// Build from an arbitrary set of strict relations a < b (indices into
    /// [0, n)). The transitive closure is computed; cycles are rejected.
    FinitePoset(size_t n, const std::vector<std::pair<size_t, size_t>>& relations,
                std::vector<std::string> labels = {})
        : n_(n), lt_(n, Bitset(n)), labels_(std::move(labels)) {
        if (!labels_.empty() && labels_.size() != n)
            throw std::invalid_argument("label count mismatch");
        for (auto [a, b] : relations) {
            if (a >= n || b >= n) throw std::invalid_argument("relation index out of range");
            lt_[a].set(b);
        }
        // Warshall closure on the strict relation
        for (size_t k = 0; k < n_; ++k)
            for (size_t i = 0; i < n_; ++i)
                if (lt_[i].test(k)) lt_[i] |= lt_[k];
        for (size_t i = 0; i < n_; ++i)
            if (lt_[i].test(i)) throw std::invalid_argument("relation has a cycle");
    }

    size_t size() const { return n_; }
    bool less(size_t a, size_t b) const { return lt_[a].test(b); }
    bool comparable(size_t a, size_t b) const { return less(a, b) || less(b, a); }
    const std::string& label(size_t a) const {
        static const std::string empty;
        return labels_.empty() ? empty : labels_[a];
    }
    const Bitset& above(size_t a) const { return lt_[a]; }

    size_t relation_count() const {
        size_t c = 0;
        for (const Bitset& row : lt_) c += row.count();
        return c;
    }

    FinitePoset opposite() const {
        FinitePoset op;
        op.n_ = n_;
        op.labels_ = labels_;
        op.lt_.assign(n_, Bitset(n_));
        for (size_t a = 0; a < n_; ++a)
            for (size_t b = lt_[a].find_first(); b != Bitset::npos; b = lt_[a].find_next(b))
                op.lt_[b].set(a);
        return op;
    }

    /// Induced subposet together with the selected original indices.
    struct Induced;

    Induced induced(std::vector<size_t> sel) const;

    std::vector<size_t> strictly_above(size_t a) const {
        check_element(a);
        std::vector<size_t> v;
        for (size_t b = lt_[a].find_first(); b != Bitset::npos; b = lt_[a].find_next(b))
            v.push_back(b);
        return v;
    }

    std::vector<size_t> strictly_below(size_t a) const {
        check_element(a);
        std::vector<size_t> v;
        for (size_t b = 0; b < n_; ++b)
            if (less(b, a)) v.push_back(b);
        return v;
    }

    Induced upper_link(size_t a) const;
    Induced lower_link(size_t a) const;
    Induced link(size_t a) const;

    /// Height of a: the length k of a longest chain a_0 < ... < a_k = a.
    size_t height(size_t a) const { return heights()[a]; }

    std::vector<size_t> heights() const {
        std::vector<size_t> h(n_, 0);
        std::vector<size_t> order(n_);
        for (size_t i = 0; i < n_; ++i) order[i] = i;
        // process in order of increasing down-set size; predecessors come first
        std::vector<size_t> below_count(n_, 0);
        for (size_t a = 0; a < n_; ++a)
            for (size_t b = 0; b < n_; ++b)
                if (less(b, a)) ++below_count[a];
        std::sort(order.begin(), order.end(),
                  [&](size_t x, size_t y) { return below_count[x] < below_count[y]; });
        for (size_t a : order)
            for (size_t b = 0; b < n_; ++b)
                if (less(b, a)) h[a] = std::max(h[a], h[b] + 1);
        return h;
    }

    /// All nonempty chains, each listed in increasing poset order.
    std::vector<std::vector<size_t>> all_chains() const {
        std::vector<std::vector<size_t>> out;
        std::vector<size_t> chain;
        for (size_t a = 0; a < n_; ++a) extend_chain(a, chain, out);
        return out;
    }

    std::vector<std::pair<size_t, size_t>> cover_pairs() const {
        std::vector<std::pair<size_t, size_t>> covers;
        for (size_t a = 0; a < n_; ++a)
            for (size_t b = lt_[a].find_first(); b != Bitset::npos; b = lt_[a].find_next(b)) {
                bool is_cover = true;
                for (size_t c = lt_[a].find_first(); c != Bitset::npos && is_cover;
                     c = lt_[a].find_next(c))
                    if (c != b && less(c, b)) is_cover = false;
                if (is_cover) covers.emplace_back(a, b);
            }
        return covers;
    }

    void check_element(size_t a) const {
        if (a >= n_) throw std::invalid_argument("unknown poset element");
    }

    friend bool operator==(const FinitePoset& a, const FinitePoset& b) {
        return a.n_ == b.n_ && a.lt_ == b.lt_;
    }

private:
    void extend_chain(size_t last, std::vector<size_t>& chain,
                      std::vector<std::vector<size_t>>& out) const {
        chain.push_back(last);
        out.push_back(chain);
        for (size_t b = lt_[last].find_first(); b != Bitset::npos; b = lt_[last].find_next(b))
            extend_chain(b, chain, out);
        chain.pop_back();
    }

    size_t n_ = 0;
    std::vector<Bitset> lt_;
    std::vector<std::string> labels_;
};

struct FinitePoset::Induced {
    FinitePoset poset;
    std::vector<size_t> elements;  // induced index -> original index
};

inline FinitePoset::Induced FinitePoset::induced(std::vector<size_t> sel) const {
    std::sort(sel.begin(), sel.end());
    Induced out;
    out.elements = std::move(sel);
    const size_t m = out.elements.size();
    out.poset.n_ = m;
    out.poset.lt_.assign(m, Bitset(m));
    if (!labels_.empty()) {
        out.poset.labels_.reserve(m);
        for (size_t i : out.elements) out.poset.labels_.push_back(labels_[i]);
    }
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j)
            if (less(out.elements[i], out.elements[j])) out.poset.lt_[i].set(j);
    return out;
}

inline FinitePoset::Induced FinitePoset::upper_link(size_t a) const {
    return induced(strictly_above(a));
}

inline FinitePoset::Induced FinitePoset::lower_link(size_t a) const {
    return induced(strictly_below(a));
}

inline FinitePoset::Induced FinitePoset::link(size_t a) const {
    std::vector<size_t> v = strictly_below(a);
    std::vector<size_t> u = strictly_above(a);
    v.insert(v.end(), u.begin(), u.end());
    return induced(std::move(v));
}

/// Monotone map of posets; monotonicity is checked at construction
/// (strictness is not required).
class PosetMap {
public:
    PosetMap(FinitePoset source, FinitePoset target, std::vector<size_t> assignment)
        : source_(std::move(source)), target_(std::move(target)), map_(std::move(assignment)) {
        if (map_.size() != source_.size()) throw std::invalid_argument("assignment size mismatch");
        for (size_t v : map_) target_.check_element(v);
        for (size_t a = 0; a < source_.size(); ++a)
            for (size_t b = 0; b < source_.size(); ++b)
                if (source_.less(a, b) && map_[a] != map_[b] && !target_.less(map_[a], map_[b]))
                    throw std::invalid_argument("assignment is not monotone");
    }

    const FinitePoset& source() const { return source_; }
    const FinitePoset& target() const { return target_; }
    size_t operator()(size_t a) const { return map_.at(a); }
    const std::vector<size_t>& assignment() const { return map_; }

private:
    FinitePoset source_;
    FinitePoset target_;
    std::vector<size_t> map_;
};

/// Poset fiber F_{<=b}: induced subposet of the source on {a : F(a) <= b}.
inline FinitePoset::Induced fiber(const PosetMap& f, size_t b) {
    f.target().check_element(b);
    std::vector<size_t> sel;
    for (size_t a = 0; a < f.source().size(); ++a)
        if (f(a) == b || f.target().less(f(a), b)) sel.push_back(a);
    return f.source().induced(std::move(sel));
}

// --- text format: "elements N" then one "a < b" covering pair per line ----

inline void save_poset(std::ostream& os, const FinitePoset& p) {
    os << "elements " << p.size() << '\n';
    for (auto [a, b] : p.cover_pairs()) os << a << " < " << b << '\n';
}

inline FinitePoset load_poset(std::istream& in) {
    std::string kw;
    size_t n = 0;
    if (!(in >> kw >> n) || kw != "elements") throw std::runtime_error("bad poset header");
    std::vector<std::pair<size_t, size_t>> rel;
    size_t a, b;
    std::string op;
    while (in >> a >> op >> b) {
        if (op != "<") throw std::runtime_error("bad poset relation line");
        rel.emplace_back(a, b);
    }
    return FinitePoset(n, rel);
}

inline std::string poset_to_string(const FinitePoset& p) {
    std::ostringstream os;
    save_poset(os, p);
    return os.str();
}

}  // namespace steinberg
