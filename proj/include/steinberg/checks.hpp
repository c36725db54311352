#pragma once

// The named verification commands: each builds the relevant posets,
// computes exact homology (with optional caching and modular cross-checks),
// decides the claim under test, and emits machine-readable reports with
// witnesses on failure.

#include <atomic>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"

#include "steinberg/buildings.hpp"
#include "steinberg/cache.hpp"
#include "steinberg/chain_map.hpp"
#include "steinberg/ff.hpp"
#include "steinberg/homology.hpp"
#include "steinberg/poset_checks.hpp"

namespace steinberg {

using nlohmann::json;

struct RunConfig {
    uint32_t q = 2;
    uint32_t n = 2;
    std::optional<uint32_t> rank_v;
    std::optional<uint32_t> rank_k;
    std::optional<Subspace> v_explicit;
    std::optional<Subspace> k_explicit;
    bool all_subspaces = false;   // every V/K instead of one representative per rank
    bool sweep_lh = false;        // every admissible (L, H) pair in the filtration
    bool cm = false;              // full Cohen-Macaulay link verification
    bool modular_check = true;    // cross-check integer ranks modulo a random prime
    std::string cache_dir;
    double max_seconds = 0;       // 0 = uncapped
    int64_t max_mb = 0;           // 0 = uncapped
    int jobs = 1;

    void validate() const {
        PrimeField f(q);
        if (n < 2) throw std::invalid_argument("n must be at least 2");
        for (const auto& s : {v_explicit, k_explicit})
            if (s) {
                if (s->field() != f || s->ambient_dim() != n)
                    throw std::invalid_argument("explicit subspace does not match q and n");
                if (s->is_zero() || s->is_full())
                    throw std::invalid_argument("explicit subspace must be proper and nonzero");
            }
        for (const auto& r : {rank_v, rank_k})
            if (r && (*r < 1 || *r >= n)) throw std::invalid_argument("rank out of range [1, n-1]");
    }

    json to_json() const {
        json j{{"q", q},
               {"n", n},
               {"all", all_subspaces},
               {"sweep_lh", sweep_lh},
               {"cm", cm},
               {"modular_check", modular_check},
               {"jobs", jobs}};
        if (rank_v) j["rank_v"] = *rank_v;
        if (rank_k) j["rank_k"] = *rank_k;
        if (v_explicit) j["v"] = subspace_token(*v_explicit);
        if (k_explicit) j["k"] = subspace_token(*k_explicit);
        if (!cache_dir.empty()) j["cache"] = cache_dir;
        if (max_seconds > 0) j["max_seconds"] = max_seconds;
        if (max_mb > 0) j["max_mb"] = max_mb;
        return j;
    }
};

struct CheckReport {
    std::string check;
    json params = json::object();
    bool pass = false;
    bool partial = false;  // resource cap reached before the check completed
    json details = json::object();
    std::vector<std::string> witnesses;
    double wall_ms = 0;
    int cache_hits = 0;

    json to_json() const {
        return json{{"check", check},       {"params", params},   {"pass", pass},
                    {"partial", partial},   {"details", details}, {"witnesses", witnesses},
                    {"wall_ms", wall_ms},   {"cache_hits", cache_hits}};
    }
};

struct RunDocument {
    json config = json::object();
    std::vector<CheckReport> reports;

    bool pass() const {
        for (const auto& r : reports)
            if (!r.pass) return false;
        return true;
    }

    json to_json() const {
        json rs = json::array();
        for (const auto& r : reports) rs.push_back(r.to_json());
        return json{{"tool", "steinberg-verify"},
                    {"format_version", kCacheFormatVersion},
                    {"config", config},
                    {"pass", pass()},
                    {"reports", rs}};
    }
};

// --- resource caps ----------------------------------------------------------

inline int64_t current_rss_mb() {
    std::ifstream in("/proc/self/status");
    std::string key;
    while (in >> key) {
        if (key == "VmRSS:") {
            int64_t kb = 0;
            in >> kb;
            return kb / 1024;
        }
        std::string rest;
        std::getline(in, rest);
    }
    return 0;
}

struct Deadline {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double max_seconds = 0;
    int64_t max_mb = 0;

    double elapsed_s() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
    bool exceeded() const {
        if (max_seconds > 0 && elapsed_s() > max_seconds) return true;
        if (max_mb > 0 && current_rss_mb() > max_mb) return true;
        return false;
    }
};

template <class Fn>
void parallel_for(size_t count, int jobs, Fn&& fn) {
    jobs = std::max(1, jobs);
    if (jobs == 1 || count <= 1) {
        for (size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<size_t> next{0};
    size_t workers = std::min(static_cast<size_t>(jobs), count);
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    for (size_t w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            try {
                for (size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

// --- cached homology of a complex -------------------------------------------

inline json homology_to_json(const HomologySummary& h) {
    json degs = json::array();
    for (const auto& d : h.degrees) {
        json tor = json::array();
        for (const Int& t : d.torsion) tor.push_back(t.str());
        degs.push_back(json{{"d", d.d}, {"betti", d.betti}, {"torsion", tor}});
    }
    return json{{"degrees", degs},
                {"boundary_ranks", h.boundary_ranks},
                {"modular_ranks", h.modular_ranks},
                {"prime", std::to_string(h.prime)}};
}

inline HomologySummary homology_from_json(const json& j) {
    HomologySummary h;
    for (const auto& d : j.at("degrees")) {
        HomologySummary::Degree deg;
        deg.d = d.at("d").get<int>();
        deg.betti = d.at("betti").get<int64_t>();
        for (const auto& t : d.at("torsion")) deg.torsion.emplace_back(t.get<std::string>());
        h.degrees.push_back(std::move(deg));
    }
    h.boundary_ranks = j.at("boundary_ranks").get<std::vector<int64_t>>();
    h.modular_ranks = j.at("modular_ranks").get<std::vector<int64_t>>();
    h.prime = std::stoull(j.at("prime").get<std::string>());
    return h;
}

struct ComplexAnalysis {
    int dim = -1;
    std::vector<int64_t> counts;  // counts[d+1] = |C_d|, with C_{-1} = 1
    HomologySummary summary;
    bool cache_hit = false;

    bool spherical(int d) const { return dim <= d && summary.concentrated_free(d); }

    BigInt reduced_euler() const {
        BigInt chi = 0;
        for (size_t i = 0; i < counts.size(); ++i)
            chi += ((static_cast<int>(i) - 1) % 2 == 0) ? counts[i] : -counts[i];
        return chi;
    }

    json to_json() const {
        return json{{"dim", dim},
                    {"simplex_counts", std::vector<int64_t>(counts.begin() + 1, counts.end())},
                    {"reduced_euler", reduced_euler().str()},
                    {"homology", homology_to_json(summary)},
                    {"cache_hit", cache_hit}};
    }
};

inline ComplexAnalysis analyze_complex(const SimplicialComplex& oc, const std::string& cache_key,
                                       const ArtifactCache& cache, bool modular) {
    ComplexAnalysis out;
    out.dim = oc.dim();
    out.counts.assign(static_cast<size_t>(oc.dim()) + 2, 0);
    out.counts[0] = 1;
    for (int d = 0; d <= oc.dim(); ++d) out.counts[d + 1] = oc.count(d);
    if (auto hit = cache.get(cache_key)) {
        // the cached artifact carries the complex itself; accept the stored
        // homology only if it matches what we just built
        std::istringstream stored(hit->at("complex").get<std::string>());
        if (load_complex(stored) == oc) {
            out.summary = homology_from_json(hit->at("homology"));
            out.cache_hit = true;
            return out;
        }
    }
    out.summary = homology(oc, HomologyOptions{modular});
    cache.put(cache_key, nlohmann::json{{"complex", complex_to_string(oc)},
                                        {"homology", homology_to_json(out.summary)}});
    return out;
}

// --- command implementations -------------------------------------------------

namespace detail {

inline BigInt expected_top_rank(uint32_t q, uint32_t n) {
    BigInt r = 1;
    for (uint32_t i = 0; i < n * (n - 1) / 2; ++i) r *= q;
    return r;
}

inline double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

inline std::vector<uint32_t> rank_grid(const RunConfig& cfg, uint32_t lo) {
    std::vector<uint32_t> ks;
    if (cfg.rank_v) {
        if (*cfg.rank_v >= lo) ks.push_back(*cfg.rank_v);
    } else {
        for (uint32_t k = lo; k <= cfg.n - 1; ++k) ks.push_back(k);
    }
    return ks;
}

}  // namespace detail

/// Top homology of the subspace poset: concentrated in degree n-2, free,
/// of rank q^{n(n-1)/2}, matching the reduced Euler characteristic.
inline std::vector<CheckReport> run_solomon_tits(const RunConfig& cfg) {
    auto t0 = std::chrono::steady_clock::now();
    ArtifactCache cache(cfg.cache_dir);
    PrimeField f(cfg.q);
    CheckReport rep;
    rep.check = "solomon-tits";
    rep.params = {{"q", cfg.q}, {"n", cfg.n}};
    Deadline deadline{t0, cfg.max_seconds, cfg.max_mb};
    if (deadline.exceeded()) {
        rep.partial = true;
        rep.witnesses.push_back("resource cap exceeded before the check ran");
        return {rep};
    }

    TitsPoset t = build_tits(cfg.n, f);
    SimplicialComplex oc = order_complex(t.poset);
    ComplexAnalysis an =
        analyze_complex(oc, t.manifest() + "#homology", cache, cfg.modular_check);
    rep.cache_hits += an.cache_hit ? 1 : 0;

    const int top = static_cast<int>(cfg.n) - 2;
    BigInt anchor = detail::expected_top_rank(cfg.q, cfg.n);
    bool spherical = an.spherical(top);
    bool rank_ok = BigInt(an.summary.betti(top)) == anchor;
    bool euler_ok = BigInt(an.summary.betti(top)) == abs(an.reduced_euler());
    rep.pass = spherical && rank_ok && euler_ok;
    rep.details = {{"complex", an.to_json()},
                   {"spherical_in_degree", top},
                   {"spherical", spherical},
                   {"expected_rank", anchor.str()},
                   {"rank_matches_anchor", rank_ok},
                   {"rank_matches_euler", euler_ok}};
    if (!rep.pass) rep.witnesses.push_back(format_homology(an.summary));

    const bool run_cm = cfg.cm || cfg.n <= 3;
    if (run_cm) {
        auto oracle = [&](const SimplicialComplex& c, int d) {
            return is_spherical(c, d, HomologyOptions{cfg.modular_check});
        };
        CohenMacaulayResult cmres = is_cohen_macaulay(t.poset, top, oracle);
        rep.details["cohen_macaulay"] = cmres.cohen_macaulay;
        if (!cmres.cohen_macaulay) {
            rep.pass = false;
            std::string w = "CM failure: " + cmres.reason + "; chain:";
            for (size_t e : cmres.witness_chain) w += " " + t.poset.label(e);
            rep.witnesses.push_back(w);
        }
    } else {
        rep.details["cohen_macaulay"] = "skipped";
    }

    rep.wall_ms = detail::ms_since(t0);
    return {rep};
}

/// Top homology of the split poset and of its two one-sided restrictions
/// (P inside a corank-1 summand; Q containing a rank-1 summand), all
/// concentrated and free in degree n-2.
inline std::vector<CheckReport> run_charney(const RunConfig& cfg) {
    ArtifactCache cache(cfg.cache_dir);
    PrimeField f(cfg.q);
    SplitPoset s = build_split(cfg.n, f);
    const int top = static_cast<int>(cfg.n) - 2;

    std::vector<CheckReport> reports;
    Deadline deadline{std::chrono::steady_clock::now(), cfg.max_seconds, cfg.max_mb};
    auto one = [&](const std::string& variant, const std::optional<Subspace>& kb,
                   const std::optional<Subspace>& vb) {
        auto t0 = std::chrono::steady_clock::now();
        CheckReport rep;
        rep.check = "charney";
        rep.params = {{"q", cfg.q}, {"n", cfg.n}, {"variant", variant}};
        if (kb) rep.params["k"] = subspace_token(*kb);
        if (vb) rep.params["v"] = subspace_token(*vb);
        if (deadline.exceeded()) {
            rep.partial = true;
            rep.witnesses.push_back("resource cap exceeded before this instance ran");
            reports.push_back(std::move(rep));
            return;
        }
        FinitePoset::Induced r = restrict_split(s, kb, vb);
        SimplicialComplex oc = order_complex(r.poset);
        ComplexAnalysis an = analyze_complex(oc, restricted_manifest(s, kb, vb) + "#homology",
                                             cache, cfg.modular_check);
        rep.cache_hits += an.cache_hit ? 1 : 0;
        bool spherical = an.spherical(top);
        bool euler_ok = BigInt(an.summary.betti(top)) == abs(an.reduced_euler());
        rep.pass = spherical && euler_ok;
        rep.details = {{"complex", an.to_json()},
                       {"spherical_in_degree", top},
                       {"spherical", spherical},
                       {"rank_matches_euler", euler_ok},
                       {"elements", r.elements.size()}};
        if (!rep.pass) rep.witnesses.push_back(format_homology(an.summary));
        rep.wall_ms = detail::ms_since(t0);
        reports.push_back(std::move(rep));
    };

    one("full", std::nullopt, std::nullopt);
    Subspace h = enumerate_subspaces(cfg.n, f, cfg.n - 1).front();
    Subspace l = enumerate_subspaces(cfg.n, f, 1).front();
    one("sub-H", h, std::nullopt);
    one("sup-L", std::nullopt, l);
    return reports;
}

/// S_M(sub, sup V) is (n-k-1)-spherical for proper nonzero V of rank k.
inline std::vector<CheckReport> run_theorem31(const RunConfig& cfg) {
    ArtifactCache cache(cfg.cache_dir);
    PrimeField f(cfg.q);
    SplitPoset s = build_split(cfg.n, f);
    Deadline deadline{std::chrono::steady_clock::now(), cfg.max_seconds, cfg.max_mb};

    struct Instance {
        uint32_t k;
        Subspace v;
    };
    std::vector<Instance> instances;
    if (cfg.v_explicit) {
        instances.push_back({cfg.v_explicit->rank(), *cfg.v_explicit});
    } else {
        for (uint32_t k : detail::rank_grid(cfg, 1)) {
            if (cfg.all_subspaces)
                for (const Subspace& v : enumerate_subspaces(cfg.n, f, k))
                    instances.push_back({k, v});
            else
                instances.push_back({k, enumerate_subspaces(cfg.n, f, k).front()});
        }
    }

    std::vector<CheckReport> reports(instances.size());
    parallel_for(instances.size(), cfg.jobs, [&](size_t i) {
        auto t0 = std::chrono::steady_clock::now();
        const auto& inst = instances[i];
        CheckReport& rep = reports[i];
        rep.check = "theorem31";
        rep.params = {{"q", cfg.q}, {"n", cfg.n}, {"k", inst.k}, {"v", subspace_token(inst.v)}};
        if (deadline.exceeded()) {
            rep.partial = true;
            rep.witnesses.push_back("resource cap exceeded before this instance ran");
            return;
        }
        const int want = static_cast<int>(cfg.n) - static_cast<int>(inst.k) - 1;
        FinitePoset::Induced r = restrict_split(s, std::nullopt, inst.v);
        SimplicialComplex oc = order_complex(r.poset);
        ComplexAnalysis an =
            analyze_complex(oc, restricted_manifest(s, std::nullopt, inst.v) + "#homology",
                            cache, cfg.modular_check);
        rep.cache_hits += an.cache_hit ? 1 : 0;
        rep.pass = an.spherical(want);
        rep.details = {{"complex", an.to_json()},
                       {"spherical_in_degree", want},
                       {"elements", r.elements.size()}};
        if (!rep.pass) rep.witnesses.push_back(format_homology(an.summary));
        rep.wall_ms = detail::ms_since(t0);
    });

    // in --all mode every V of a rank must have the same homology (orbit
    // consistency under the transitive change-of-basis action)
    if (cfg.all_subspaces && !cfg.v_explicit) {
        for (uint32_t k : detail::rank_grid(cfg, 1)) {
            std::string first;
            bool consistent = true;
            for (size_t i = 0; i < instances.size(); ++i) {
                if (instances[i].k != k || reports[i].partial) continue;
                std::string sig = reports[i].details["complex"]["homology"].dump();
                if (first.empty()) first = sig;
                else if (sig != first) consistent = false;
            }
            for (size_t i = 0; i < instances.size(); ++i)
                if (instances[i].k == k) {
                    reports[i].details["orbit_consistent"] = consistent;
                    if (!consistent) {
                        reports[i].pass = false;
                        reports[i].witnesses.push_back(
                            "homology differs across the rank orbit");
                    }
                }
        }
    }
    return reports;
}

/// S_M(sub K, sup) is (n-k-1)-spherical for corank-k K.
inline std::vector<CheckReport> run_corollary32(const RunConfig& cfg) {
    ArtifactCache cache(cfg.cache_dir);
    PrimeField f(cfg.q);
    SplitPoset s = build_split(cfg.n, f);
    Deadline deadline{std::chrono::steady_clock::now(), cfg.max_seconds, cfg.max_mb};

    struct Instance {
        uint32_t corank;
        Subspace k0;
    };
    std::vector<Instance> instances;
    if (cfg.k_explicit) {
        instances.push_back({cfg.n - cfg.k_explicit->rank(), *cfg.k_explicit});
    } else {
        std::vector<uint32_t> coranks;
        if (cfg.rank_k) coranks.push_back(*cfg.rank_k);
        else
            for (uint32_t k = 1; k <= cfg.n - 1; ++k) coranks.push_back(k);
        for (uint32_t k : coranks) {
            if (cfg.all_subspaces)
                for (const Subspace& k0 : enumerate_subspaces(cfg.n, f, cfg.n - k))
                    instances.push_back({k, k0});
            else
                instances.push_back({k, enumerate_subspaces(cfg.n, f, cfg.n - k).front()});
        }
    }

    std::vector<CheckReport> reports(instances.size());
    parallel_for(instances.size(), cfg.jobs, [&](size_t i) {
        auto t0 = std::chrono::steady_clock::now();
        const auto& inst = instances[i];
        CheckReport& rep = reports[i];
        rep.check = "corollary32";
        rep.params = {{"q", cfg.q},
                      {"n", cfg.n},
                      {"k", inst.corank},
                      {"k0", subspace_token(inst.k0)}};
        if (deadline.exceeded()) {
            rep.partial = true;
            rep.witnesses.push_back("resource cap exceeded before this instance ran");
            return;
        }
        const int want = static_cast<int>(cfg.n) - static_cast<int>(inst.corank) - 1;
        FinitePoset::Induced r = restrict_split(s, inst.k0, std::nullopt);
        SimplicialComplex oc = order_complex(r.poset);
        ComplexAnalysis an =
            analyze_complex(oc, restricted_manifest(s, inst.k0, std::nullopt) + "#homology",
                            cache, cfg.modular_check);
        rep.cache_hits += an.cache_hit ? 1 : 0;
        rep.pass = an.spherical(want);
        rep.details = {{"complex", an.to_json()},
                       {"spherical_in_degree", want},
                       {"elements", r.elements.size()}};
        if (!rep.pass) rep.witnesses.push_back(format_homology(an.summary));
        rep.wall_ms = detail::ms_since(t0);
    });

    if (cfg.all_subspaces && !cfg.k_explicit) {
        for (uint32_t k = 1; k <= cfg.n - 1; ++k) {
            std::string first;
            bool consistent = true;
            for (size_t i = 0; i < instances.size(); ++i) {
                if (instances[i].corank != k || reports[i].partial) continue;
                std::string sig = reports[i].details["complex"]["homology"].dump();
                if (first.empty()) first = sig;
                else if (sig != first) consistent = false;
            }
            for (size_t i = 0; i < instances.size(); ++i)
                if (instances[i].corank == k) {
                    reports[i].details["orbit_consistent"] = consistent;
                    if (!consistent) {
                        reports[i].pass = false;
                        reports[i].witnesses.push_back(
                            "homology differs across the corank orbit");
                    }
                }
        }
    }
    return reports;
}

/// The headline check: the complement-forgetting map induces a surjection
/// on top integral homology; plus the fiber criterion hypotheses (monotone
/// map, every fiber spherical in its height, heights equal n-k-1).
inline std::vector<CheckReport> run_surjectivity(const RunConfig& cfg) {
    auto t0 = std::chrono::steady_clock::now();
    ArtifactCache cache(cfg.cache_dir);
    PrimeField f(cfg.q);
    const int top = static_cast<int>(cfg.n) - 2;

    TitsPoset t = build_tits(cfg.n, f);
    SplitPoset s = build_split(cfg.n, f);
    PosetMap fm = forgetful_map(s, t);  // construction verifies monotonicity

    SimplicialComplex src = order_complex(fm.source());
    SimplicialComplex dst = order_complex(fm.target());
    IntegerChainComplex scc = boundaries(src);
    IntegerChainComplex dcc = boundaries(dst);
    ChainMap cm = induced_chain_map(fm, src, dst);
    check_chain_map_commutes(cm, scc, dcc);

    CheckReport main;
    main.check = "surjectivity";
    main.params = {{"q", cfg.q}, {"n", cfg.n}};
    SurjectivityResult sr = surjective_on_homology(cm, scc, dcc, top);
    main.pass = sr.surjective;
    json coker = json::array();
    for (const Int& c : sr.cokernel_torsion) coker.push_back(c.str());
    main.details = {{"degree", top},
                    {"target_rank", sr.target_rank},
                    {"image_rank", sr.image_rank},
                    {"cokernel_torsion", coker},
                    {"cokernel_free_rank", sr.cokernel_free_rank},
                    {"monotone", true},
                    {"chain_map_commutes", true}};
    if (!main.pass) {
        std::ostringstream w;
        w << "cokernel is nontrivial: free rank " << sr.cokernel_free_rank << ", torsion";
        for (const Int& c : sr.cokernel_torsion) w << ' ' << c;
        main.witnesses.push_back(w.str());
    }
    main.wall_ms = detail::ms_since(t0);

    // fiber criterion hypotheses, one sub-result per subspace V
    auto t1 = std::chrono::steady_clock::now();
    CheckReport cp;
    cp.check = "church-putman";
    cp.params = {{"q", cfg.q}, {"n", cfg.n}};
    std::vector<size_t> heights = fm.target().heights();
    size_t count = t.elements.size();
    std::vector<json> fiber_results(count);
    std::vector<char> fiber_ok(count, 0);
    std::atomic<int> hits{0};
    Deadline deadline{t1, cfg.max_seconds, cfg.max_mb};
    std::atomic<bool> capped{false};
    parallel_for(count, cfg.jobs, [&](size_t vi) {
        if (deadline.exceeded()) {
            capped = true;
            fiber_results[vi] = {{"v", subspace_token(t.elements[vi])}, {"skipped", true}};
            return;
        }
        const Subspace& v = t.elements[vi];
        size_t ht = heights[vi];
        bool height_ok = ht == cfg.n - v.rank() - 1;
        FinitePoset::Induced fib = fiber(fm, vi);
        FinitePoset::Induced res = restrict_split(s, std::nullopt, v);
        bool fiber_is_restriction = fib.elements == res.elements;
        SimplicialComplex oc = order_complex(fib.poset);
        ComplexAnalysis an =
            analyze_complex(oc, restricted_manifest(s, std::nullopt, v) + "#homology", cache,
                            cfg.modular_check);
        if (an.cache_hit) hits.fetch_add(1);
        bool spherical = an.spherical(static_cast<int>(ht));
        fiber_ok[vi] = height_ok && fiber_is_restriction && spherical;
        fiber_results[vi] = {{"v", subspace_token(v)},
                             {"rank", v.rank()},
                             {"height", ht},
                             {"height_ok", height_ok},
                             {"fiber_equals_restriction", fiber_is_restriction},
                             {"fiber_spherical", spherical}};
    });
    cp.cache_hits = hits.load();
    cp.partial = capped;
    cp.pass = !capped;
    if (capped) cp.witnesses.push_back("resource cap reached; some fibers were skipped");
    for (size_t vi = 0; vi < count; ++vi)
        if (!fiber_ok[vi] && !fiber_results[vi].value("skipped", false)) {
            cp.pass = false;
            cp.witnesses.push_back("fiber hypotheses fail at V=" +
                                   subspace_token(t.elements[vi]));
        }
    cp.details = {{"fibers", fiber_results}, {"monotone", true}};

    const bool run_cm = cfg.cm || cfg.n <= 3;
    if (run_cm) {
        auto oracle = [&](const SimplicialComplex& c, int d) {
            return is_spherical(c, d, HomologyOptions{cfg.modular_check});
        };
        CohenMacaulayResult cmres = is_cohen_macaulay(fm.target(), top, oracle);
        cp.details["target_cohen_macaulay"] = cmres.cohen_macaulay;
        if (!cmres.cohen_macaulay) {
            cp.pass = false;
            cp.witnesses.push_back("target fails Cohen-Macaulay: " + cmres.reason);
        }
    } else {
        cp.details["target_cohen_macaulay"] = "skipped";
    }
    cp.wall_ms = detail::ms_since(t1);

    return {main, cp};
}

/// The filtration checks: antichain levels, sphericity of the base and of
/// every upper/lower link at the stated dimensions, the two link set
/// identities, the Morse decomposition at every stage, and the explicit
/// isomorphism witnesses.
inline std::vector<CheckReport> run_morse(const RunConfig& cfg) {
    PrimeField f(cfg.q);
    SplitPoset s = build_split(cfg.n, f);
    Deadline deadline{std::chrono::steady_clock::now(), cfg.max_seconds, cfg.max_mb};

    std::vector<CheckReport> reports;
    std::vector<uint32_t> ks = detail::rank_grid(cfg, 2);
    if (cfg.v_explicit) ks.assign(1, cfg.v_explicit->rank());
    if (ks.empty() || (cfg.v_explicit && cfg.v_explicit->rank() < 2)) {
        CheckReport rep;
        rep.check = "morse";
        rep.params = {{"q", cfg.q}, {"n", cfg.n}};
        rep.pass = true;
        rep.details = {{"note", "no rank satisfies k >= 2; the filtration is not needed"}};
        reports.push_back(std::move(rep));
        return reports;
    }

    HomologyOptions hopt{cfg.modular_check};
    auto oracle = [&](const SimplicialComplex& c, int d) { return is_spherical(c, d, hopt); };

    for (uint32_t k : ks) {
        std::vector<Subspace> vs;
        if (cfg.v_explicit) vs.push_back(*cfg.v_explicit);
        else if (cfg.all_subspaces) vs = enumerate_subspaces(cfg.n, f, k);
        else vs.push_back(enumerate_subspaces(cfg.n, f, k).front());

        for (const Subspace& v : vs) {
            std::vector<std::pair<std::optional<Subspace>, std::optional<Subspace>>> lh;
            if (cfg.sweep_lh) {
                for (const Subspace& l : enumerate_subspaces(cfg.n, f, 1)) {
                    if (!v.contains(l)) continue;
                    for (const Subspace& h : enumerate_complements(l)) lh.emplace_back(l, h);
                }
            } else {
                lh.emplace_back(std::nullopt, std::nullopt);
            }

            for (const auto& [lc, hc] : lh) {
                auto t0 = std::chrono::steady_clock::now();
                CheckReport rep;
                rep.check = "morse";
                rep.params = {{"q", cfg.q}, {"n", cfg.n}, {"k", k}, {"v", subspace_token(v)}};
                if (deadline.exceeded()) {
                    rep.partial = true;
                    rep.witnesses.push_back("resource cap exceeded before this instance ran");
                    reports.push_back(std::move(rep));
                    continue;
                }
                Filtration fil = build_filtration(s, v, lc, hc);
                rep.params["l"] = subspace_token(fil.l);
                rep.params["h"] = subspace_token(fil.h);
                const int sphere_dim = static_cast<int>(cfg.n) - static_cast<int>(k) - 1;
                bool ok = true;
                json stages = json::array();

                // the base stage
                bool x0_spherical =
                    oracle(order_complex(fil.x.induced(fil.x0).poset), sphere_dim);
                ok = ok && x0_spherical;
                if (!x0_spherical)
                    rep.witnesses.push_back("the base stage is not spherical in degree " +
                                            std::to_string(sphere_dim));

                std::vector<size_t> prev = fil.stage(0);
                for (int j = 0; j < fil.level_count(); ++j) {
                    const int level_i = Filtration::level_index(j);
                    std::vector<size_t> cur = fil.stage(j + 1);
                    std::set<size_t> prev_set(prev.begin(), prev.end());

                    // Morse decomposition hypotheses and conclusion on this stage
                    FinitePoset::Induced stage_ind = fil.x.induced(cur);
                    std::vector<size_t> ypos;
                    for (size_t i = 0; i < cur.size(); ++i)
                        if (prev_set.count(cur[i])) ypos.push_back(i);
                    MorseReport mr =
                        check_morse_decomposition(stage_ind.poset, ypos, oracle, sphere_dim);

                    bool upper_identity = true, lower_identity = true;
                    bool upper_spherical = true, lower_spherical = true;
                    for (size_t idx : fil.t_levels[j]) {
                        const SplitPair& ab = fil.x_elements[idx];
                        std::vector<size_t> up = fil.x.strictly_above(idx);
                        for (size_t u : up)
                            if (!prev_set.count(u)) upper_identity = false;
                        if (!oracle(order_complex(fil.x.induced(up).poset), level_i))
                            upper_spherical = false;

                        std::vector<size_t> low_in_prev;
                        for (size_t b : fil.x.strictly_below(idx))
                            if (prev_set.count(b)) low_in_prev.push_back(b);
                        const Subspace ah = intersect(ab.p, fil.h);
                        std::vector<size_t> formula;
                        for (size_t e = 0; e < fil.x_elements.size(); ++e) {
                            const SplitPair& pq = fil.x_elements[e];
                            if (ah.contains(pq.p) && pq.q_part.rank() > ab.q_part.rank() &&
                                pq.q_part.contains(ab.q_part))
                                formula.push_back(e);
                        }
                        std::sort(low_in_prev.begin(), low_in_prev.end());
                        std::sort(formula.begin(), formula.end());
                        if (low_in_prev != formula) lower_identity = false;
                        const int lower_dim = static_cast<int>(cfg.n) - static_cast<int>(k) -
                                              level_i - 3;
                        if (!oracle(order_complex(fil.x.induced(low_in_prev).poset), lower_dim))
                            lower_spherical = false;
                    }

                    bool stage_ok = mr.all_ok() && upper_identity && lower_identity &&
                                    upper_spherical && lower_spherical;
                    ok = ok && stage_ok;
                    stages.push_back(json{{"level_index", level_i},
                                          {"level_size", fil.t_levels[j].size()},
                                          {"antichain", mr.antichain_ok},
                                          {"previous_stage_spherical", mr.y_spherical_ok},
                                          {"links_spherical", mr.links_ok},
                                          {"stage_spherical", mr.conclusion_ok},
                                          {"upper_link_identity", upper_identity},
                                          {"lower_link_identity", lower_identity},
                                          {"upper_links_spherical", upper_spherical},
                                          {"lower_links_spherical", lower_spherical}});
                    if (!stage_ok)
                        rep.witnesses.push_back("level with index " +
                                                std::to_string(level_i) + " fails");
                    prev = std::move(cur);
                }

                IsoWitnessReport iso = claim_isomorphism_witnesses(fil);
                ok = ok && iso.ok;
                for (const auto& fl : iso.failures)
                    rep.witnesses.push_back(fl.claim + ": " + fl.detail);

                rep.pass = ok;
                rep.details = {{"x_elements", fil.x_elements.size()},
                               {"x0_elements", fil.x0.size()},
                               {"x0_spherical", x0_spherical},
                               {"levels", fil.level_count()},
                               {"stages", stages},
                               {"iso_witnesses_checked", iso.instances_checked},
                               {"iso_witnesses_ok", iso.ok}};
                rep.wall_ms = detail::ms_since(t0);
                reports.push_back(std::move(rep));
            }
        }
    }
    return reports;
}

inline std::vector<CheckReport> run_check(const std::string& verb, const RunConfig& cfg) {
    cfg.validate();
    if (verb == "solomon-tits") return run_solomon_tits(cfg);
    if (verb == "charney") return run_charney(cfg);
    if (verb == "theorem31") return run_theorem31(cfg);
    if (verb == "corollary32") return run_corollary32(cfg);
    if (verb == "surjectivity") return run_surjectivity(cfg);
    if (verb == "morse") return run_morse(cfg);
    throw std::invalid_argument("unknown check: " + verb);
}

inline RunDocument run_document(const std::string& verb, const RunConfig& cfg) {
    RunDocument doc;
    doc.config = cfg.to_json();
    doc.config["command"] = verb;
    doc.reports = run_check(verb, cfg);
    return doc;
}

}  // namespace steinberg
