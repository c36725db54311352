#pragma once

// Reduced simplicial homology over the integers. Chain complexes carry the
// degree -1 augmentation, so degree 0 reports reduced Betti numbers and the
// empty complex has one unit of homology in degree -1.

#include <cstdint>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "steinberg/simplicial.hpp"
#include "steinberg/snf.hpp"

namespace steinberg {

/// Ordered-simplex boundary matrices of a complex, augmentation included.
/// sizes[d + 1] = |C_d| for d in [-1, top]; boundary(d) maps C_d -> C_{d-1}.
struct IntegerChainComplex {
    int top = -1;
    std::vector<int64_t> sizes;          // index d+1 <-> degree d
    std::vector<SparseIntMatrix> bnd;    // index d <-> boundary C_d -> C_{d-1}, d in [0, top]

    int64_t size(int d) const {
        if (d < -1 || d > top) return 0;
        return sizes[d + 1];
    }

    const SparseIntMatrix& boundary(int d) const {
        if (d < 0 || d > top) throw std::out_of_range("no boundary at this degree");
        return bnd[d];
    }
};

/// Boundary matrices with the alternating-sign convention on sorted vertex
/// lists; the degree-0 boundary is the all-ones augmentation row.
/// Verifies del . del = 0 on construction.
inline IntegerChainComplex boundaries(const SimplicialComplex& c) {
    IntegerChainComplex cc;
    cc.top = c.dim();
    cc.sizes.assign(static_cast<size_t>(cc.top) + 2, 0);
    cc.sizes[0] = 1;  // C_{-1} = Z
    for (int d = 0; d <= cc.top; ++d) cc.sizes[d + 1] = c.count(d);

    cc.bnd.reserve(static_cast<size_t>(cc.top) + 1);
    for (int d = 0; d <= cc.top; ++d) {
        SparseIntMatrix m(cc.size(d - 1), cc.size(d));
        const auto& simps = c.simplices(d);
        if (d == 0) {
            for (int64_t j = 0; j < static_cast<int64_t>(simps.size()); ++j) m.add(0, j, 1);
        } else {
            for (int64_t j = 0; j < static_cast<int64_t>(simps.size()); ++j) {
                const Simplex& s = simps[j];
                Simplex face(s.size() - 1);
                for (size_t i = 0; i < s.size(); ++i) {
                    size_t t = 0;
                    for (size_t u = 0; u < s.size(); ++u)
                        if (u != i) face[t++] = s[u];
                    int64_t fi = c.index_of(face);
                    if (fi < 0) throw std::invalid_argument("complex is not face-closed");
                    m.add(fi, j, (i % 2 == 0) ? 1 : -1);
                }
            }
        }
        cc.bnd.push_back(std::move(m));
    }
    for (int d = 1; d <= cc.top; ++d)
        if (!multiply(cc.bnd[d - 1], cc.bnd[d]).is_zero())
            throw std::logic_error("boundary of boundary is nonzero");
    return cc;
}

struct HomologyOptions {
    bool modular_check = true;
    uint64_t prime_seed = 0x7375726a656374ull;
};

/// Per-degree reduced Betti numbers and torsion invariant factors.
struct HomologySummary {
    struct Degree {
        int d;
        int64_t betti = 0;
        std::vector<Int> torsion;  // invariant factors > 1, each dividing the next
    };
    std::vector<Degree> degrees;           // d from -1 to top
    std::vector<int64_t> boundary_ranks;   // rank of boundary(d), index d in [0, top]
    std::vector<int64_t> modular_ranks;    // same ranks mod a random prime (if computed)
    uint64_t prime = 0;

    const Degree& at(int d) const { return degrees.at(static_cast<size_t>(d + 1)); }
    int top() const { return static_cast<int>(degrees.size()) - 2; }

    int64_t betti(int d) const {
        if (d < -1 || d > top()) return 0;
        return degrees[d + 1].betti;
    }
    bool has_torsion(int d) const {
        if (d < -1 || d > top()) return false;
        return !degrees[d + 1].torsion.empty();
    }

    /// Homology vanishes outside degree d and is free in degree d.
    bool concentrated_free(int d) const {
        for (const Degree& deg : degrees) {
            if (!deg.torsion.empty()) return false;
            if (deg.d != d && deg.betti != 0) return false;
        }
        return true;
    }
};

inline HomologySummary homology(const IntegerChainComplex& cc, const HomologyOptions& opt = {}) {
    HomologySummary out;
    const int top = cc.top;
    std::vector<SmithResult> smith(static_cast<size_t>(top) + 1);
    out.boundary_ranks.assign(static_cast<size_t>(top) + 1, 0);
    for (int d = 0; d <= top; ++d) {
        smith[d] = smith_normal_form(cc.bnd[d]);
        out.boundary_ranks[d] = smith[d].rank();
    }
    if (opt.modular_check) {
        out.prime = random_prime_62(opt.prime_seed);
        out.modular_ranks.assign(static_cast<size_t>(top) + 1, 0);
        for (int d = 0; d <= top; ++d) {
            out.modular_ranks[d] = rank_mod_prime(cc.bnd[d], out.prime);
            if (out.modular_ranks[d] != out.boundary_ranks[d])
                throw std::logic_error("integer and modular boundary ranks disagree");
        }
    }

    auto rank_at = [&](int d) -> int64_t {
        return (d >= 0 && d <= top) ? out.boundary_ranks[d] : 0;
    };
    Int euler_simplices = 0, euler_betti = 0;
    for (int d = -1; d <= top; ++d) {
        HomologySummary::Degree deg;
        deg.d = d;
        deg.betti = cc.size(d) - rank_at(d) - rank_at(d + 1);
        if (deg.betti < 0) throw std::logic_error("negative Betti number");
        if (d + 1 <= top) deg.torsion = smith[d + 1].nontrivial();
        int sign = (d % 2 == 0) ? 1 : -1;
        euler_simplices += sign * cc.size(d);
        euler_betti += sign * deg.betti;
        out.degrees.push_back(std::move(deg));
    }
    if (euler_simplices != euler_betti)
        throw std::logic_error("Euler characteristic mismatch between chains and homology");
    return out;
}

inline HomologySummary homology(const SimplicialComplex& c, const HomologyOptions& opt = {}) {
    return homology(boundaries(c), opt);
}

/// Homological d-sphericity: the complex has dimension at most d, reduced
/// homology vanishing outside degree d, and free homology in degree d. The
/// empty complex is exactly (-1)-spherical; wedges over empty index sets
/// (trivial homology) count as spherical in any degree >= the dimension.
inline bool is_spherical(const SimplicialComplex& c, int d, const HomologyOptions& opt = {}) {
    if (c.dim() > d) return false;
    HomologySummary h = homology(c, opt);
    return h.concentrated_free(d);
}

// --- serialization: one line per degree, "d betti torsion..." --------------

inline std::string format_homology(const HomologySummary& h) {
    std::ostringstream os;
    for (const auto& deg : h.degrees) {
        os << deg.d << ' ' << deg.betti;
        for (const Int& t : deg.torsion) os << ' ' << t;
        os << '\n';
    }
    return os.str();
}

}  // namespace steinberg
