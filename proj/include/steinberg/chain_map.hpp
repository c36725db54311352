#pragma once

// Chain maps induced by monotone poset maps on order complexes, and the
// top-degree integral surjectivity test: the image of the source cycle
// lattice is compared against the full target cycle lattice, so the
// decision is over Z, not merely over Q.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "steinberg/homology.hpp"
#include "steinberg/poset.hpp"
#include "steinberg/simplicial.hpp"
#include "steinberg/snf.hpp"

namespace steinberg {

/// Degree-wise matrices of the simplicial map induced by a monotone poset
/// map between order complexes. Simplices with collapsing vertices map to
/// zero; otherwise the image simplex is taken with the sign of the
/// permutation sorting the mapped vertices.
struct ChainMap {
    std::vector<SparseIntMatrix> deg;  // deg[d] : C_d(source) -> C_d(target)
    int top() const { return static_cast<int>(deg.size()) - 1; }
};

inline ChainMap induced_chain_map(const PosetMap& f, const SimplicialComplex& src,
                                  const SimplicialComplex& dst) {
    ChainMap out;
    for (int d = 0; d <= src.dim(); ++d) {
        SparseIntMatrix m(dst.count(d), src.count(d));
        const auto& simps = src.simplices(d);
        for (int64_t j = 0; j < static_cast<int64_t>(simps.size()); ++j) {
            std::vector<int32_t> img;
            img.reserve(simps[j].size());
            for (int32_t v : simps[j]) img.push_back(static_cast<int32_t>(f(v)));
            // sign of the sorting permutation; zero on vertex collision
            int sign = 1;
            bool degenerate = false;
            for (size_t a = 0; a < img.size() && !degenerate; ++a)
                for (size_t b = a + 1; b < img.size() && !degenerate; ++b) {
                    if (img[a] == img[b]) degenerate = true;
                    else if (img[a] > img[b]) sign = -sign;
                }
            if (degenerate) continue;
            Simplex sorted = img;
            std::sort(sorted.begin(), sorted.end());
            int64_t ti = dst.index_of(sorted);
            if (ti < 0) throw std::logic_error("image simplex missing from target complex");
            m.add(ti, j, sign);
        }
        out.deg.push_back(std::move(m));
    }
    return out;
}

/// Assert the chain-map identity f.del = del.f in every degree (degree 0
/// commutes with the augmentations).
inline void check_chain_map_commutes(const ChainMap& f, const IntegerChainComplex& src,
                                     const IntegerChainComplex& dst) {
    if (f.top() != src.top || src.top > dst.top)
        throw std::invalid_argument("chain map degrees do not match complexes");
    for (int d = 0; d <= src.top; ++d) {
        SparseIntMatrix upper = multiply(dst.boundary(d), f.deg[d]);
        // the degree -1 map is the identity on the augmentation
        SparseIntMatrix lower =
            (d == 0) ? src.boundary(0) : multiply(f.deg[d - 1], src.boundary(d));
        SparseIntMatrix diff = upper;
        for (const auto& e : lower.entries) diff.entries.push_back({e.r, e.c, -e.v});
        diff.normalize();
        if (!diff.is_zero()) throw std::logic_error("chain map does not commute with boundaries");
    }
}

struct SurjectivityResult {
    bool surjective = false;
    int64_t target_rank = 0;          // rank of H_d(target)
    int64_t image_rank = 0;           // rank of the pushed-forward lattice
    std::vector<Int> cokernel_torsion;  // invariant factors > 1 of the cokernel
    int64_t cokernel_free_rank = 0;
};

/// Decide whether the induced map on degree-d homology is surjective over
/// the integers. Requires d to be the top dimension of both complexes, so
/// cycles are kernels of the top boundaries and no boundaries arrive from
/// above in the target.
inline SurjectivityResult surjective_on_homology(const ChainMap& f,
                                                 const IntegerChainComplex& src,
                                                 const IntegerChainComplex& dst, int d) {
    if (d != src.top || d != dst.top)
        throw std::invalid_argument("surjectivity test requires the shared top dimension");

    SurjectivityResult res;
    // Z_d(target) = ker del_d, a saturated sublattice of C_d(target)
    std::vector<std::vector<Int>> zt = integer_kernel_basis(dst.boundary(d));
    res.target_rank = static_cast<int64_t>(zt.size());
    if (zt.empty()) {
        res.surjective = true;  // trivial target homology
        return res;
    }
    SparseIntMatrix kt(dst.size(d), static_cast<int64_t>(zt.size()));
    for (int64_t j = 0; j < static_cast<int64_t>(zt.size()); ++j)
        for (int64_t r = 0; r < dst.size(d); ++r)
            if (zt[j][r] != 0) kt.add(r, j, zt[j][r]);

    // t is reachable iff f(x) = K_t . t for some source cycle x, i.e.
    // [f ; del_src] x + [-K_t ; 0] t = 0.
    SparseIntMatrix w = f.deg[d].stack_below(src.boundary(d));
    SparseIntMatrix b(w.rows, kt.cols);
    for (const auto& e : kt.entries) b.add(e.r, e.c, -e.v);

    std::vector<std::vector<Int>> gens = lattice_kernel_tails(w, b);
    SparseIntMatrix g(kt.cols, static_cast<int64_t>(gens.size()));
    for (int64_t j = 0; j < static_cast<int64_t>(gens.size()); ++j)
        for (int64_t r = 0; r < kt.cols; ++r)
            if (gens[j][r] != 0) g.add(r, j, gens[j][r]);

    SmithResult snf = smith_normal_form(g);
    res.image_rank = snf.rank();
    res.cokernel_free_rank = res.target_rank - snf.rank();
    res.cokernel_torsion = snf.nontrivial();
    res.surjective = (res.cokernel_free_rank == 0) && res.cokernel_torsion.empty();
    return res;
}

}  // namespace steinberg
