// Developer probe for eyeballing towers and simplification behavior on the
// built-in families. Not part of the test suite; build with
//   cmake --build build --target debug_probe
// and run with "earring", "sine", or a carpet level number.
#include <cstdio>
#include <set>

#include "ec/chain_homotopy.hpp"
#include "ec/example_spaces.hpp"
#include "ec/reports.hpp"
#include "ec/scale_complex.hpp"
#include "ec/scale_tower.hpp"

using namespace ec;

static void sine_probe() {
    auto sine = sample({Family::SineCurve, 1, 0.012});
    std::printf("sine m=1: %zu points, diameter %.4f\n", sine.size(), sine.diameter());
    for (double radius : {0.6, 0.8, 1.0, 1.2}) {
        std::vector<PointIndex> net;
        for (PointIndex i = 0; i < sine.size(); ++i) {
            bool covered = false;
            for (PointIndex a : net)
                if (sine.dist(i, a) < radius) covered = true;
            if (!covered) net.push_back(i);
        }
        std::printf("net radius %.2f: %zu points:", radius, net.size());
        for (auto i : net) {
            auto c = sine.coordinates(i);
            std::printf(" (%.2f,%.2f)", c[0], c[1]);
        }
        std::printf("\n");
        if (net.size() > 8) continue;
        std::vector<std::vector<double>> m(net.size(), std::vector<double>(net.size()));
        for (std::size_t i = 0; i < net.size(); ++i)
            for (std::size_t j = 0; j < net.size(); ++j)
                m[i][j] = sine.dist(net[i], net[j]);
        auto sub = FiniteMetricSpace::from_matrix(m, 0, false);
        std::set<double> scales;
        for (std::size_t i = 0; i < net.size(); ++i)
            for (std::size_t j = i + 1; j < net.size(); ++j) {
                scales.insert(m[i][j] * 0.9);
                scales.insert(m[i][j] * 1.1);
            }
        for (double eps : scales) {
            ScaleGraph g(sub, eps);
            for (std::uint32_t L = 4; L <= 8; ++L) {
                OracleClasses oc = oracle_classes(g, 0, L, 2000000);
                if (!oc.stable()) continue;
                PresentationAtScale pres(g);
                auto simp = tietze_simplify(pres.fp_group());
                std::set<Word> words;
                for (const auto& rep : oc.representatives())
                    words.insert(simp.map_word(chain_class(pres, make_chain(g, rep)).word));
                std::printf("  eps %.4f L %u: classes %zu words %zu cert %s betti %zu\n",
                            eps, L, oc.class_count(), words.size(),
                            certification_name(simp.certification()).c_str(),
                            abelianize(simp.group()).betti);
                break;
            }
        }
    }
}

int main(int argc, char** argv) {
    if (argc > 1 && std::string(argv[1]) == "sine") {
        sine_probe();
        return 0;
    }
    if (argc > 1 && std::string(argv[1]) == "earring") {
        for (std::uint32_t n = 1; n <= 3; ++n) {
            double eps_n = stage_scale(Family::HawaiianStage, n);
            auto space = sample({Family::HawaiianStage, n, eps_n / 4.0});
            std::vector<double> sched;
            for (std::uint32_t m = 0; m <= n; ++m)
                sched.push_back(stage_scale(Family::HawaiianStage, m));
            auto d = run_tower(space, sched);
            std::printf("stage %u (%zu pts): betti", n, space.size());
            for (auto& s : d.report.scales)
                std::printf(" %zu(%s)", s.invariants.betti,
                            certification_name(s.certification).c_str());
            std::printf("  kernels");
            for (auto& m : d.report.maps)
                std::printf(" %s", m.kernel_rank ? std::to_string(*m.kernel_rank).c_str() : "?");
            std::printf("\n");
        }
        return 0;
    }
    std::uint32_t level = argc > 1 ? static_cast<std::uint32_t>(std::atoi(argv[1])) : 2;
    double eps = stage_scale(Family::CarpetLevel, level);
    auto space = sample({Family::CarpetLevel, level, eps / 4.0});
    std::printf("carpet level %u: %zu points\n", level, space.size());
    ScaleGraph g(space, eps);
    std::printf("edges %zu triangles %zu\n", g.edges().size(), g.triangles().size());
    PresentationAtScale pres(g);
    std::printf("generators %zu relators %zu\n", pres.generator_count(), pres.relators().size());
    auto simp = tietze_simplify(pres.fp_group());
    std::printf("after tietze: gens %zu relators %zu cert %s\n", simp.rank(),
                simp.group().relators.size(), certification_name(simp.certification()).c_str());
    std::size_t show = 0;
    for (const auto& r : simp.group().relators) {
        std::printf("  relator:");
        for (Letter l : r)
            std::printf(" %d", l);
        std::printf("\n");
        if (++show > 10) break;
    }
    auto inv = abelianize(simp.group());
    std::printf("betti %zu torsion %zu\n", inv.betti, inv.torsion.size());
    return 0;
}
