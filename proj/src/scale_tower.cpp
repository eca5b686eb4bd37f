#include "ec/scale_tower.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <mutex>
#include <thread>

namespace ec {

ThetaData theta(const PresentationAtScale& coarse, const SimplifiedPresentation& coarse_simp,
                const PresentationAtScale& fine, const SimplifiedPresentation& fine_simp) {
    if (&coarse.graph().space() != &fine.graph().space())
        throw ValidationError("theta: scales over different spaces");
    if (fine.graph().scale() > coarse.graph().scale())
        throw ValidationError("theta: schedule not nested (fine scale exceeds coarse)");

    ThetaData out;
    out.coarse_raw_gens = coarse.generator_count();
    out.fine_raw_gens = fine.generator_count();
    out.images_raw.reserve(fine.generator_count());
    out.matrix_raw.resize(fine.generator_count());
    for (std::size_t g = 0; g < fine.generator_count(); ++g) {
        std::vector<PointIndex> loop = fine.generator_loop(g);
        // fine edges are coarse edges by filtration monotonicity
        Word w = coarse.trace(loop);
        std::map<std::uint32_t, std::int64_t> sums;
        for (Letter l : w)
            sums[static_cast<std::uint32_t>(letter_generator(l))] += l > 0 ? 1 : -1;
        for (auto& [r, v] : sums)
            if (v != 0) out.matrix_raw[g].emplace_back(r, v);
        out.images_raw.push_back(std::move(w));
    }

    if (coarse_simp.certified_free() && fine_simp.certified_free()) {
        out.reduced_available = true;
        const std::size_t cr = coarse_simp.rank();
        const std::size_t fr = fine_simp.rank();
        // image of each simplified fine generator: it is an original fine
        // generator's image only when the simplification kept it; express via
        // the surviving-original lookup
        std::vector<std::int64_t> survivor(fr, -1);
        for (std::size_t og = 0; og < fine.generator_count(); ++og) {
            const Word& img = fine_simp.image(og);
            if (img.size() == 1 && img[0] > 0) {
                std::size_t sg = letter_generator(img[0]);
                if (survivor[sg] < 0) survivor[sg] = static_cast<std::int64_t>(og);
            }
        }
        out.images_reduced.resize(fr);
        out.matrix_reduced.assign(cr, std::vector<std::int64_t>(fr, 0));
        for (std::size_t sg = 0; sg < fr; ++sg) {
            if (survivor[sg] < 0)
                throw ValidationError("theta: simplified fine generator has no original preimage");
            Word coarse_word =
                coarse_simp.map_word(out.images_raw[static_cast<std::size_t>(survivor[sg])]);
            for (Letter l : coarse_word)
                out.matrix_reduced[letter_generator(l)][sg] += l > 0 ? 1 : -1;
            out.images_reduced[sg] = std::move(coarse_word);
        }
        FoldedSubgroupGraph folded = FoldedSubgroupGraph::fold(out.images_reduced, cr);
        out.surjective = folded.surjective(cr);
        // kernel rank of the abelianized map
        SparseColumns cols(fr);
        for (std::size_t j = 0; j < fr; ++j)
            for (std::size_t i = 0; i < cr; ++i)
                if (out.matrix_reduced[i][j] != 0)
                    cols[j].emplace_back(static_cast<std::uint32_t>(i), out.matrix_reduced[i][j]);
        std::size_t r = integer_rank(cols, cr);
        out.kernel_rank = fr - r;
    }
    return out;
}

std::vector<std::vector<std::int64_t>> matmul(const std::vector<std::vector<std::int64_t>>& a,
                                              const std::vector<std::vector<std::int64_t>>& b) {
    if (a.empty() || b.empty()) {
        std::size_t rows = a.size();
        std::size_t cols = b.empty() ? 0 : b[0].size();
        return std::vector<std::vector<std::int64_t>>(rows, std::vector<std::int64_t>(cols, 0));
    }
    std::size_t n = a.size(), k = b.size(), m = b[0].size();
    std::vector<std::vector<std::int64_t>> c(n, std::vector<std::int64_t>(m, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t t = 0; t < k; ++t) {
            std::int64_t av = a[i][t];
            if (!av) continue;
            for (std::size_t j = 0; j < m; ++j)
                c[i][j] += av * b[t][j];
        }
    return c;
}

SparseColumns sparse_matmul(const SparseColumns& a, std::size_t a_rows, const SparseColumns& b) {
    SparseColumns c(b.size());
    std::vector<std::int64_t> acc(a_rows, 0);
    std::vector<std::uint32_t> touched;
    for (std::size_t j = 0; j < b.size(); ++j) {
        for (auto& [t, bv] : b[j])
            for (auto& [i, av] : a[t]) {
                if (acc[i] == 0) touched.push_back(i);
                acc[i] += av * bv;
            }
        std::sort(touched.begin(), touched.end());
        for (std::uint32_t i : touched) {
            if (acc[i] != 0) c[j].emplace_back(i, acc[i]);
            acc[i] = 0;
        }
        touched.clear();
    }
    return c;
}

bool sparse_equal(const SparseColumns& a, const SparseColumns& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t j = 0; j < a.size(); ++j) {
        auto na = a[j];
        auto nb = b[j];
        std::sort(na.begin(), na.end());
        std::sort(nb.begin(), nb.end());
        if (na != nb) return false;
    }
    return true;
}

UniversalityResult universality_check(const FPGroup& group) {
    UniversalityResult out;
    SimplifiedPresentation simp = tietze_simplify(group);
    if (simp.certification() == Certification::TrivialCertified) {
        out.verdict = UniversalityVerdict::Certified;
        return out;
    }
    if (simp.certification() == Certification::FreeCertified) {
        out.verdict = UniversalityVerdict::Refuted;
        out.witness = Word{make_letter(0, true)};
        return out;
    }
    AbelianInvariants inv = abelianize(simp.group());
    if (inv.betti == 0 && inv.torsion.empty()) {
        out.verdict = UniversalityVerdict::Inconclusive;
        return out;
    }
    // find a generator whose abelian image is nonzero: provably nontrivial
    std::vector<std::vector<BigInt>> rows;
    for (const Word& r : simp.group().relators) {
        std::vector<BigInt> row(simp.rank());
        for (Letter l : r)
            row[letter_generator(l)] += BigInt(l > 0 ? 1 : -1);
        rows.push_back(std::move(row));
    }
    IntegerLattice lattice(std::move(rows), simp.rank());
    for (std::size_t g = 0; g < simp.rank(); ++g) {
        std::vector<BigInt> e(simp.rank());
        e[g] = BigInt(1);
        if (!lattice.contains(std::move(e))) {
            out.verdict = UniversalityVerdict::Refuted;
            out.witness = Word{make_letter(g, true)};
            return out;
        }
    }
    out.verdict = UniversalityVerdict::Inconclusive;
    return out;
}

std::vector<double> auto_schedule(const FiniteMetricSpace& space) {
    std::vector<double> out;
    double top = space.diameter() / 2.0;
    double bottom = space.min_positive_spacing() * 2.0;
    if (top <= 0.0) return {1.0};
    if (bottom <= 0.0) bottom = top / 16.0;
    for (double s = top; s >= bottom && out.size() < 24; s /= 2.0)
        out.push_back(s);
    if (out.empty()) out.push_back(top);
    return out;
}

namespace {

std::size_t thread_count(const TowerOptions& options) {
    if (options.threads > 0) return options.threads;
    if (const char* env = std::getenv("EC_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<std::size_t>(v);
    }
    return 1;
}

} // namespace

TowerDetail run_tower(const FiniteMetricSpace& space, const std::vector<double>& schedule,
                      const TowerOptions& options) {
    if (schedule.empty()) throw ValidationError("tower: empty schedule");
    for (std::size_t i = 1; i < schedule.size(); ++i)
        if (!(schedule[i] < schedule[i - 1]))
            throw ValidationError("tower: schedule must be strictly decreasing");
    for (double s : schedule)
        if (!(s > 0.0)) throw ValidationError("tower: scales must be positive");

    TowerDetail detail;
    detail.schedule = schedule;
    TowerReport& rep = detail.report;
    rep.digest = SpaceDigest{space.size(), space.diameter(), space.min_positive_spacing(),
                             space.basepoint()};
    if (schedule.back() <= rep.digest.min_spacing)
        rep.warnings.push_back(
            "finest scale is at or below the minimum positive spacing; the graph "
            "degenerates toward a discrete space and chain connectivity fails");

    const std::size_t k = schedule.size();
    detail.graphs.resize(k);
    detail.presentations.resize(k);
    detail.simplifications.resize(k);
    rep.scales.resize(k);

    // per-scale pipeline, optionally parallel, deterministic assembly by index
    std::size_t workers = std::min(thread_count(options), k);
    auto run_scale = [&](std::size_t i) {
        detail.graphs[i] = std::make_unique<ScaleGraph>(space, schedule[i]);
        detail.presentations[i] = std::make_unique<PresentationAtScale>(*detail.graphs[i]);
        detail.simplifications[i] =
            tietze_simplify(detail.presentations[i]->fp_group(), options.tietze_budget);
        ScaleRecord& r = rep.scales[i];
        r.scale = schedule[i];
        auto cc = chain_connected(*detail.graphs[i]);
        r.chain_connected = cc.connected;
        r.component_size = detail.presentations[i]->component_size();
        r.generators = detail.presentations[i]->generator_count();
        r.relators = detail.presentations[i]->relators().size();
        r.certification = detail.simplifications[i].certification();
        r.invariants = abelianize(detail.simplifications[i].group());
    };
    if (workers <= 1) {
        for (std::size_t i = 0; i < k; ++i)
            run_scale(i);
    } else {
        std::vector<std::thread> pool;
        std::size_t next = 0;
        std::mutex mu;
        for (std::size_t t = 0; t < workers; ++t)
            pool.emplace_back([&]() {
                while (true) {
                    std::size_t i;
                    {
                        std::lock_guard<std::mutex> lock(mu);
                        if (next >= k) return;
                        i = next++;
                    }
                    run_scale(i);
                }
            });
        for (auto& th : pool)
            th.join();
    }

    // consecutive theta maps
    for (std::size_t i = 0; i + 1 < k; ++i) {
        detail.thetas.push_back(theta(*detail.presentations[i], detail.simplifications[i],
                                      *detail.presentations[i + 1], detail.simplifications[i + 1]));
        MapRecord m;
        m.coarse_index = i;
        m.fine_index = i + 1;
        const ThetaData& td = detail.thetas.back();
        m.surjective = td.surjective;
        m.kernel_rank = td.kernel_rank;
        m.matrix_reduced = td.matrix_reduced;
        rep.maps.push_back(std::move(m));
    }

    // covering-like flags: ball connectivity plus theta surjectivity from the
    // finer scale; left unset when surjectivity is unknown and balls connect
    for (std::size_t i = 0; i + 1 < k; ++i) {
        bool balls = balls_chain_connected(*detail.graphs[i], *detail.graphs[i + 1]);
        std::optional<bool> surj = detail.thetas[i].surjective;
        if (surj)
            rep.scales[i].covering_like = balls && *surj;
        else if (!balls)
            rep.scales[i].covering_like = false;
    }

    // critical scales: consecutive pairs where betti or torsion changes
    for (std::size_t i = 0; i + 1 < k; ++i)
        if (!(rep.scales[i].invariants == rep.scales[i + 1].invariants))
            rep.critical.push_back(i);

    // stabilization: last `window` consecutive maps are abelianized isomorphisms
    // between certified-free scales of one rank
    const std::size_t window = options.stabilization_window;
    rep.stabilization.window = window;
    if (k >= window + 1) {
        bool ok = true;
        std::size_t rank = rep.scales[k - 1].invariants.betti;
        for (std::size_t j = k - window - 1; j + 1 < k && ok; ++j) {
            const ScaleRecord& a = rep.scales[j];
            const ScaleRecord& b = rep.scales[j + 1];
            const MapRecord& m = rep.maps[j];
            bool cert_a = a.certification != Certification::Inconclusive;
            bool cert_b = b.certification != Certification::Inconclusive;
            bool iso = m.kernel_rank && *m.kernel_rank == 0 && m.surjective && *m.surjective &&
                       a.invariants.betti == rank && b.invariants.betti == rank &&
                       a.invariants.torsion.empty() && b.invariants.torsion.empty();
            if (!a.chain_connected || !b.chain_connected) iso = false; // excluded scales
            ok = cert_a && cert_b && iso;
        }
        rep.stabilization.stable = ok;
        rep.stabilization.rank = ok ? rank : 0;
    }
    return detail;
}

} // namespace ec
