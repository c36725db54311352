#pragma once

// Poset-level topological checks that consume a sphericity oracle: the
// Morse-style decomposition hypotheses (antichain attachment with spherical
// links) and homological Cohen-Macaulayness via links of chains.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "steinberg/poset.hpp"
#include "steinberg/simplicial.hpp"

namespace steinberg {

/// Outcome of checking the decomposition X = Y + antichain V with target
/// sphere dimension n: hypotheses (i) V is an antichain, (ii) |Y| is
/// n-spherical, (iii) each |Link(v) cap Y| is (n-1)-spherical; conclusion
/// |X| is n-spherical. The conclusion is computed even when hypotheses fail.
struct MorseReport {
    bool antichain_ok = false;
    bool y_spherical_ok = false;
    bool links_ok = false;
    bool conclusion_ok = false;
    std::vector<size_t> bad_links;                 // X-indices of v with a bad link
    std::optional<std::pair<size_t, size_t>> comparable_pair;
    bool hypotheses_ok() const { return antichain_ok && y_spherical_ok && links_ok; }
    bool all_ok() const { return hypotheses_ok() && conclusion_ok; }
};

template <class SphericalOracle>
MorseReport check_morse_decomposition(const FinitePoset& x, const std::vector<size_t>& y_elements,
                                      SphericalOracle&& spherical, int n) {
    for (size_t e : y_elements) x.check_element(e);
    std::vector<char> in_y(x.size(), 0);
    for (size_t e : y_elements) in_y[e] = 1;
    std::vector<size_t> v_elements;
    for (size_t e = 0; e < x.size(); ++e)
        if (!in_y[e]) v_elements.push_back(e);

    MorseReport rep;
    rep.antichain_ok = true;
    for (size_t i = 0; i < v_elements.size() && rep.antichain_ok; ++i)
        for (size_t j = i + 1; j < v_elements.size(); ++j)
            if (x.comparable(v_elements[i], v_elements[j])) {
                rep.antichain_ok = false;
                rep.comparable_pair = {v_elements[i], v_elements[j]};
                break;
            }

    std::vector<size_t> ys(y_elements.begin(), y_elements.end());
    rep.y_spherical_ok = spherical(order_complex(x.induced(ys).poset), n);

    rep.links_ok = true;
    for (size_t v : v_elements) {
        std::vector<size_t> link_in_y;
        for (size_t e : y_elements)
            if (x.comparable(v, e)) link_in_y.push_back(e);
        if (!spherical(order_complex(x.induced(link_in_y).poset), n - 1)) {
            rep.links_ok = false;
            rep.bad_links.push_back(v);
        }
    }

    rep.conclusion_ok = spherical(order_complex(x), n);
    return rep;
}

struct CohenMacaulayResult {
    bool cohen_macaulay = false;
    std::string reason;
    std::vector<size_t> witness_chain;  // offending chain on failure (may be empty)
};

/// Homological Cohen-Macaulayness of dimension d: the order complex is pure
/// of dimension d and d-spherical, and for every nonempty chain c the link
/// of c (elements comparable with all of c, outside c) is (d - |c|)-spherical.
template <class SphericalOracle>
CohenMacaulayResult is_cohen_macaulay(const FinitePoset& p, int d, SphericalOracle&& spherical) {
    CohenMacaulayResult res;
    SimplicialComplex oc = order_complex(p);
    for (const Simplex& s : oc.maximal_simplices())
        if (static_cast<int>(s.size()) != d + 1) {
            res.reason = "order complex is not pure of the stated dimension";
            res.witness_chain.assign(s.begin(), s.end());
            return res;
        }
    if (!spherical(oc, d)) {
        res.reason = "order complex is not spherical in the stated dimension";
        return res;
    }
    for (const std::vector<size_t>& chain : p.all_chains()) {
        std::vector<char> in_chain(p.size(), 0);
        for (size_t e : chain) in_chain[e] = 1;
        std::vector<size_t> link;
        for (size_t e = 0; e < p.size(); ++e) {
            if (in_chain[e]) continue;
            bool comp = true;
            for (size_t cth : chain)
                if (!p.comparable(e, cth)) {
                    comp = false;
                    break;
                }
            if (comp) link.push_back(e);
        }
        int want = d - static_cast<int>(chain.size());
        if (!spherical(order_complex(p.induced(link).poset), want)) {
            res.reason = "link of a chain is not spherical in the complementary dimension";
            res.witness_chain = chain;
            return res;
        }
    }
    res.cohen_macaulay = true;
    return res;
}

}  // namespace steinberg
