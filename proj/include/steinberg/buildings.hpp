#pragma once

// The concrete posets under study over F_q^n: the poset of proper nonzero
// subspaces ordered by inclusion (whose order complex is the Tits
// building), the poset of split pairs (P, Q) with P + Q direct and full
// (the Charney building), restricted subposets, the complement-forgetting
// map, and the filtration of the restricted split poset by the rank of the
// first component relative to a chosen hyperplane.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "steinberg/ff.hpp"
#include "steinberg/poset.hpp"

namespace steinberg {

struct TitsPoset {
    uint32_t n = 0;
    PrimeField field;
    FinitePoset poset;                // element i is elements[i], ordered by inclusion
    std::vector<Subspace> elements;   // proper nonzero subspaces in canonical order

    size_t index_of(const Subspace& s) const {
        auto it = std::lower_bound(elements.begin(), elements.end(), s, SubspaceLess{});
        if (it == elements.end() || !(*it == s))
            throw std::invalid_argument("subspace is not an element of the poset");
        return static_cast<size_t>(it - elements.begin());
    }

    std::string manifest() const {
        std::ostringstream os;
        os << "building T " << field.q() << ' ' << n;
        return os.str();
    }
};

inline TitsPoset build_tits(uint32_t n, PrimeField field) {
    TitsPoset t{n, field, {}, {}};
    for (const Subspace& s : enumerate_subspaces(n, field))
        if (!s.is_zero() && !s.is_full()) t.elements.push_back(s);
    std::vector<std::pair<size_t, size_t>> rel;
    std::vector<std::string> labels;
    labels.reserve(t.elements.size());
    for (const Subspace& s : t.elements) labels.push_back(subspace_token(s));
    for (size_t i = 0; i < t.elements.size(); ++i)
        for (size_t j = 0; j < t.elements.size(); ++j)
            if (i != j && t.elements[i].rank() < t.elements[j].rank() &&
                t.elements[j].contains(t.elements[i]))
                rel.emplace_back(i, j);
    t.poset = FinitePoset(t.elements.size(), rel, std::move(labels));
    return t;
}

struct SplitPoset {
    uint32_t n = 0;
    PrimeField field;
    FinitePoset poset;
    std::vector<SplitPair> elements;  // both parts proper nonzero, canonical order

    size_t index_of(const SplitPair& e) const {
        auto it = std::lower_bound(elements.begin(), elements.end(), e, SplitPairLess{});
        if (it == elements.end() || !(*it == e))
            throw std::invalid_argument("pair is not an element of the poset");
        return static_cast<size_t>(it - elements.begin());
    }

    std::string manifest() const {
        std::ostringstream os;
        os << "building S " << field.q() << ' ' << n;
        return os.str();
    }
};

inline std::string split_pair_label(const SplitPair& e) {
    return subspace_token(e.p) + "|" + subspace_token(e.q_part);
}

inline SplitPoset build_split(uint32_t n, PrimeField field) {
    SplitPoset s{n, field, {}, {}};
    for (const Subspace& p : enumerate_subspaces(n, field)) {
        if (p.is_zero() || p.is_full()) continue;
        for (const Subspace& q : enumerate_complements(p)) s.elements.emplace_back(p, q);
    }
    std::vector<std::pair<size_t, size_t>> rel;
    std::vector<std::string> labels;
    labels.reserve(s.elements.size());
    for (const SplitPair& e : s.elements) labels.push_back(split_pair_label(e));
    for (size_t i = 0; i < s.elements.size(); ++i)
        for (size_t j = 0; j < s.elements.size(); ++j)
            if (i != j && SplitPair::less(s.elements[i], s.elements[j])) rel.emplace_back(i, j);
    s.poset = FinitePoset(s.elements.size(), rel, std::move(labels));
    return s;
}

/// Induced subposet with P contained in k_bound and/or Q containing
/// v_bound. Either bound may be absent (vacuous).
inline FinitePoset::Induced restrict_split(const SplitPoset& s,
                                           const std::optional<Subspace>& k_bound,
                                           const std::optional<Subspace>& v_bound) {
    for (const auto& bound : {k_bound, v_bound})
        if (bound && (bound->field() != s.field || bound->ambient_dim() != s.n))
            throw std::invalid_argument("restriction bound lives in a different ambient space");
    std::vector<size_t> sel;
    for (size_t i = 0; i < s.elements.size(); ++i) {
        const SplitPair& e = s.elements[i];
        if (k_bound && !k_bound->contains(e.p)) continue;
        if (v_bound && !e.q_part.contains(*v_bound)) continue;
        sel.push_back(i);
    }
    return s.poset.induced(std::move(sel));
}

inline std::string restricted_manifest(const SplitPoset& s, const std::optional<Subspace>& k_bound,
                                       const std::optional<Subspace>& v_bound) {
    std::ostringstream os;
    os << s.manifest();
    if (v_bound) os << " V=" << subspace_token(*v_bound);
    if (k_bound) os << " K=" << subspace_token(*k_bound);
    return os.str();
}

/// The complement-forgetting map (P, Q) -> Q, a monotone map into the
/// opposite of the subspace poset. Chains never degenerate because Q
/// strictly decreases along the split order.
inline PosetMap forgetful_map(const SplitPoset& s, const TitsPoset& t) {
    if (s.field != t.field || s.n != t.n)
        throw std::invalid_argument("posets live over different modules");
    std::vector<size_t> assignment(s.elements.size());
    for (size_t i = 0; i < s.elements.size(); ++i)
        assignment[i] = t.index_of(s.elements[i].q_part);
    return PosetMap(s.poset, t.poset.opposite(), std::move(assignment));
}

/// The filtration of X = S_M(sub, sup V) by X_0 = S_M(sub H, sup V) and the
/// antichain levels T_i = {(A, B) in X : rank(A) = n-k-1-i, A not in H}.
/// The level index runs from i = -1 (the elements with B = V and A not in
/// H) through i = n-k-2, so the levels partition X - X_0 and the final
/// stage equals X.
struct Filtration {
    uint32_t n = 0;
    PrimeField field;
    Subspace v, l, h;
    uint32_t k = 0;                            // rank of v
    FinitePoset x;                             // S_M(sub, sup V)
    std::vector<SplitPair> x_elements;         // aligned with x
    std::vector<size_t> x0;                    // indices with P in H
    std::vector<std::vector<size_t>> t_levels; // t_levels[j] = T_{j-1}, rank(A) = n-k-j

    int level_count() const { return static_cast<int>(t_levels.size()); }
    static int level_index(int level) { return level - 1; }

    /// Elements of stage j: X_0 together with the first j levels.
    std::vector<size_t> stage(int j) const {
        std::vector<size_t> out = x0;
        for (int s = 0; s < j; ++s) out.insert(out.end(), t_levels[s].begin(), t_levels[s].end());
        std::sort(out.begin(), out.end());
        return out;
    }
};

inline Filtration build_filtration(const SplitPoset& s, const Subspace& v,
                                   std::optional<Subspace> l_choice = std::nullopt,
                                   std::optional<Subspace> h_choice = std::nullopt) {
    if (v.field() != s.field || v.ambient_dim() != s.n)
        throw std::invalid_argument("V lives in a different ambient space");
    if (v.is_zero() || v.is_full() || v.rank() < 2)
        throw std::invalid_argument("filtration requires a proper summand of rank at least 2");
    Filtration f{s.n, s.field, v, v, v, v.rank(), {}, {}, {}, {}};

    if (l_choice) {
        if (l_choice->rank() != 1 || !v.contains(*l_choice))
            throw std::invalid_argument("L must be a rank-1 summand of V");
        f.l = *l_choice;
    } else {
        // canonically first rank-1 subspace of V
        bool found = false;
        for (const Subspace& cand : enumerate_subspaces(s.n, s.field, 1))
            if (v.contains(cand)) {
                f.l = cand;
                found = true;
                break;
            }
        if (!found) throw std::logic_error("no rank-1 summand found");
    }
    if (h_choice) {
        if (!is_direct_sum(*h_choice, f.l))
            throw std::invalid_argument("H must be a complement of L");
        f.h = *h_choice;
    } else {
        f.h = enumerate_complements(f.l).front();  // canonical order
    }
    if (f.h.contains(v)) throw std::logic_error("H unexpectedly contains V");

    FinitePoset::Induced x = restrict_split(s, std::nullopt, v);
    f.x = std::move(x.poset);
    f.x_elements.reserve(x.elements.size());
    for (size_t i : x.elements) f.x_elements.push_back(s.elements[i]);

    const uint32_t levels = s.n - f.k;  // ranks of A run from 1 to n-k
    f.t_levels.assign(levels, {});
    for (size_t i = 0; i < f.x_elements.size(); ++i) {
        const SplitPair& e = f.x_elements[i];
        if (f.h.contains(e.p)) {
            f.x0.push_back(i);
        } else {
            uint32_t j = s.n - f.k - e.p.rank();  // level j holds rank n-k-j
            if (j >= levels) throw std::logic_error("element outside every filtration level");
            f.t_levels[j].push_back(i);
        }
    }
    // the final stage must recover X
    size_t covered = f.x0.size();
    for (const auto& lv : f.t_levels) covered += lv.size();
    if (covered != f.x_elements.size()) throw std::logic_error("filtration does not cover X");
    return f;
}

// --- isomorphism witnesses for the three structural claims -----------------

/// A direct-sum pair inside a submodule B (rather than the full ambient
/// space): Z + W = B with the sum direct, both parts proper nonzero in B.
struct SubPair {
    Subspace z, w;
    friend bool operator==(const SubPair& a, const SubPair& b) { return a.z == b.z && a.w == b.w; }
    static bool less(const SubPair& a, const SubPair& b) {
        return a.z.rank() < b.z.rank() && b.z.contains(a.z) && a.w.contains(b.w);
    }
};

struct SubPairLess {
    bool operator()(const SubPair& a, const SubPair& b) const {
        if (subspace_less(a.z, b.z)) return true;
        if (subspace_less(b.z, a.z)) return false;
        return subspace_less(a.w, b.w);
    }
};

/// All pairs (Z, W) with Z + W = b direct, both parts proper nonzero in b,
/// optionally with Z inside k0 and/or W containing v0.
inline std::vector<SubPair> internal_split_pairs(const Subspace& b,
                                                 const std::optional<Subspace>& k0,
                                                 const std::optional<Subspace>& v0) {
    std::vector<SubPair> out;
    const uint32_t bn = b.rank();
    std::vector<Subspace> inside;
    for (const Subspace& s : enumerate_subspaces(b.ambient_dim(), b.field()))
        if (s.rank() > 0 && s.rank() < bn && b.contains(s)) inside.push_back(s);
    for (const Subspace& z : inside) {
        if (k0 && !k0->contains(z)) continue;
        for (const Subspace& w : inside) {
            if (z.rank() + w.rank() != bn) continue;
            if (v0 && !w.contains(*v0)) continue;
            if (sum(z, w).rank() == bn) out.push_back({z, w});
        }
    }
    return out;
}

struct IsoWitnessFailure {
    std::string claim;
    std::string detail;
};

struct IsoWitnessReport {
    bool ok = true;
    std::vector<IsoWitnessFailure> failures;
    size_t instances_checked = 0;

    void fail(std::string claim, std::string detail) {
        ok = false;
        failures.push_back({std::move(claim), std::move(detail)});
    }
};

namespace detail {

/// Verify that fwd/inv give mutually inverse, order-preserving bijections
/// between a set of split pairs of M and a set of internal pairs.
template <class Fwd, class Inv>
void check_pair_bijection(IsoWitnessReport& rep, const std::string& claim,
                          const std::vector<SplitPair>& domain, const std::vector<SubPair>& target,
                          Fwd&& fwd, Inv&& inv) {
    rep.instances_checked++;
    if (domain.size() != target.size()) {
        rep.fail(claim, "domain and target sizes differ: " + std::to_string(domain.size()) +
                            " vs " + std::to_string(target.size()));
        return;
    }
    std::set<SubPair, SubPairLess> target_set(target.begin(), target.end());
    std::set<SubPair, SubPairLess> seen;
    std::vector<SubPair> images;
    images.reserve(domain.size());
    for (const SplitPair& e : domain) {
        SubPair img = fwd(e);
        if (!target_set.count(img)) {
            rep.fail(claim, "image escapes the target: " + split_pair_label(e));
            return;
        }
        if (!seen.insert(img).second) {
            rep.fail(claim, "forward map is not injective at " + split_pair_label(e));
            return;
        }
        SplitPair back = inv(img);
        if (!(back == e)) {
            rep.fail(claim, "round trip fails at " + split_pair_label(e));
            return;
        }
        images.push_back(std::move(img));
    }
    for (const SubPair& y : target) {
        SplitPair back = inv(y);
        SubPair again = fwd(back);
        if (!(again == y)) {
            rep.fail(claim, "inverse round trip fails");
            return;
        }
    }
    for (size_t a = 0; a < domain.size(); ++a)
        for (size_t b = 0; b < domain.size(); ++b) {
            if (a == b) continue;
            bool da = SplitPair::less(domain[a], domain[b]);
            bool db = SubPair::less(images[a], images[b]);
            if (da != db) {
                rep.fail(claim, "order is not preserved between " + split_pair_label(domain[a]) +
                                    " and " + split_pair_label(domain[b]));
                return;
            }
        }
}

}  // namespace detail

/// Concretely construct and verify the three poset isomorphisms used by the
/// filtration argument:
///   X_0 <-> pairs of H with W containing H^V   via (P,Q) -> (P, Q^H),
///   upper links of (A,B) <-> pairs of B with W containing V   via (P,Q) -> (P^B, Q),
///   {P in A^H, Q strictly containing B} <-> pairs of A with Z in H^A  via (P,Q) -> (P, Q^A).
inline IsoWitnessReport claim_isomorphism_witnesses(const Filtration& f) {
    IsoWitnessReport rep;
    const Subspace hv = intersect(f.h, f.v);

    // the base stage
    {
        std::vector<SplitPair> domain;
        for (size_t i : f.x0) domain.push_back(f.x_elements[i]);
        std::vector<SubPair> target = internal_split_pairs(f.h, std::nullopt, hv);
        detail::check_pair_bijection(
            rep, "base-iso", domain, target,
            [&](const SplitPair& e) { return SubPair{e.p, intersect(e.q_part, f.h)}; },
            [&](const SubPair& y) { return SplitPair(y.z, sum(y.w, f.l)); });
    }

    // the two link isomorphisms, per element of every level
    for (int j = 0; j < f.level_count(); ++j) {
        for (size_t idx : f.t_levels[j]) {
            const SplitPair& ab = f.x_elements[idx];
            const Subspace& a = ab.p;
            const Subspace& b = ab.q_part;

            std::vector<SplitPair> upper;
            for (size_t other = 0; other < f.x_elements.size(); ++other)
                if (f.x.less(idx, other)) upper.push_back(f.x_elements[other]);
            std::vector<SubPair> target2 = internal_split_pairs(b, std::nullopt, f.v);
            detail::check_pair_bijection(
                rep, "upper-link-iso", upper, target2,
                [&](const SplitPair& e) { return SubPair{intersect(e.p, b), e.q_part}; },
                [&](const SubPair& y) { return SplitPair(sum(y.z, a), y.w); });

            const Subspace ah = intersect(a, f.h);
            std::vector<SplitPair> lower_set;
            for (const SplitPair& e : f.x_elements)
                if (ah.contains(e.p) && e.q_part.rank() > b.rank() && e.q_part.contains(b))
                    lower_set.push_back(e);
            std::vector<SubPair> target3 = internal_split_pairs(a, ah, std::nullopt);
            detail::check_pair_bijection(
                rep, "lower-link-iso", lower_set, target3,
                [&](const SplitPair& e) { return SubPair{e.p, intersect(e.q_part, a)}; },
                [&](const SubPair& y) { return SplitPair(y.z, sum(y.w, b)); });
        }
    }
    return rep;
}

}  // namespace steinberg
