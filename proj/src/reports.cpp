#include "ec/reports.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"

#include "ec/space_io.hpp"

namespace ec {

using json = nlohmann::ordered_json;

std::string certification_name(Certification c) {
    switch (c) {
    case Certification::TrivialCertified: return "trivial";
    case Certification::FreeCertified: return "free";
    case Certification::Inconclusive: return "inconclusive";
    }
    return "?";
}

namespace {

json torsion_to_json(const std::vector<BigInt>& torsion) {
    json out = json::array();
    for (const BigInt& t : torsion) {
        if (t.fits_int64())
            out.push_back(t.to_int64());
        else
            out.push_back(t.str());
    }
    return out;
}

} // namespace

std::string tower_to_json(const TowerReport& report) {
    json j;
    j["schema"] = kTowerSchema;
    j["tool_version"] = kToolVersion;
    j["space"] = {{"points", report.digest.points},
                  {"diameter", report.digest.diameter},
                  {"min_spacing", report.digest.min_spacing},
                  {"basepoint", report.digest.basepoint}};
    json scales = json::array();
    for (const auto& s : report.scales) {
        json e;
        e["scale"] = s.scale;
        e["chain_connected"] = s.chain_connected;
        e["component_size"] = s.component_size;
        e["generators"] = s.generators;
        e["relators"] = s.relators;
        e["betti"] = s.invariants.betti;
        e["torsion"] = torsion_to_json(s.invariants.torsion);
        e["certified"] = certification_name(s.certification);
        if (s.covering_like)
            e["covering_like"] = *s.covering_like;
        else
            e["covering_like"] = nullptr;
        scales.push_back(std::move(e));
    }
    j["scales"] = std::move(scales);
    json maps = json::array();
    for (const auto& m : report.maps) {
        json e;
        e["coarse"] = report.scales[m.coarse_index].scale;
        e["fine"] = report.scales[m.fine_index].scale;
        if (m.surjective)
            e["surjective"] = *m.surjective;
        else
            e["surjective"] = nullptr;
        if (m.kernel_rank)
            e["kernel_rank"] = *m.kernel_rank;
        else
            e["kernel_rank"] = nullptr;
        if (!m.matrix_reduced.empty() || m.surjective)
            e["matrix"] = m.matrix_reduced;
        else
            e["matrix"] = nullptr;
        maps.push_back(std::move(e));
    }
    j["maps"] = std::move(maps);
    json crit = json::array();
    for (std::size_t i : report.critical)
        crit.push_back({{"coarser", report.scales[i].scale}, {"finer", report.scales[i + 1].scale}});
    j["critical_scales"] = std::move(crit);
    j["stabilization"] = {{"stable", report.stabilization.stable},
                          {"rank", report.stabilization.rank},
                          {"window", report.stabilization.window}};
    j["warnings"] = report.warnings;
    return j.dump(2) + "\n";
}

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return buf;
}

} // namespace

std::string tower_to_svg(const TowerReport& report) {
    const double width = 640, height = 400;
    const double ml = 60, mr = 20, mt = 30, mb = 50;
    std::size_t max_betti = 1;
    for (const auto& s : report.scales)
        max_betti = std::max(max_betti, s.invariants.betti);
    double lo = std::log10(report.scales.back().scale);
    double hi = std::log10(report.scales.front().scale);
    if (hi - lo < 1e-9) {
        hi += 0.5;
        lo -= 0.5;
    }
    auto X = [&](double scale) {
        return ml + (std::log10(scale) - lo) / (hi - lo) * (width - ml - mr);
    };
    auto Y = [&](double betti) {
        return height - mb - betti / static_cast<double>(max_betti) * (height - mt - mb);
    };
    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    s << "  <rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
    s << "  <text x=\"" << width / 2 << "\" y=\"18\" text-anchor=\"middle\" font-size=\"14\">"
      << "betti number by scale (log axis)</text>\n";
    // axes
    s << "  <line x1=\"" << ml << "\" y1=\"" << height - mb << "\" x2=\"" << width - mr
      << "\" y2=\"" << height - mb << "\" stroke=\"black\"/>\n";
    s << "  <line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\""
      << height - mb << "\" stroke=\"black\"/>\n";
    for (std::size_t b = 0; b <= max_betti; ++b) {
        s << "  <text x=\"" << ml - 8 << "\" y=\"" << fmt(Y(static_cast<double>(b)) + 4)
          << "\" text-anchor=\"end\" font-size=\"11\">" << b << "</text>\n";
    }
    // critical scale markers
    for (std::size_t i : report.critical) {
        double x = (X(report.scales[i].scale) + X(report.scales[i + 1].scale)) / 2.0;
        s << "  <line x1=\"" << fmt(x) << "\" y1=\"" << mt << "\" x2=\"" << fmt(x) << "\" y2=\""
          << height - mb << "\" stroke=\"#cc3333\" stroke-dasharray=\"4,3\"/>\n";
    }
    // step polyline, coarse (right) to fine (left)
    std::ostringstream pts;
    for (std::size_t i = 0; i < report.scales.size(); ++i) {
        double x = X(report.scales[i].scale);
        double y = Y(static_cast<double>(report.scales[i].invariants.betti));
        if (i) {
            pts << fmt(x) << "," << fmt(Y(static_cast<double>(report.scales[i - 1].invariants.betti)))
                << " ";
        }
        pts << fmt(x) << "," << fmt(y) << " ";
    }
    s << "  <polyline points=\"" << pts.str() << "\" fill=\"none\" stroke=\"#2255aa\""
      << " stroke-width=\"2\"/>\n";
    for (std::size_t i = 0; i < report.scales.size(); ++i) {
        s << "  <circle cx=\"" << fmt(X(report.scales[i].scale)) << "\" cy=\""
          << fmt(Y(static_cast<double>(report.scales[i].invariants.betti)))
          << "\" r=\"3\" fill=\"#2255aa\"/>\n";
        s << "  <text x=\"" << fmt(X(report.scales[i].scale)) << "\" y=\"" << height - mb + 16
          << "\" text-anchor=\"middle\" font-size=\"10\">" << fmt(report.scales[i].scale)
          << "</text>\n";
    }
    s << "  <text x=\"" << width / 2 << "\" y=\"" << height - 12
      << "\" text-anchor=\"middle\" font-size=\"12\">scale</text>\n";
    s << "</svg>\n";
    return s.str();
}

std::string presentation_to_json(const PresentationAtScale& pres,
                                 const AbelianInvariants& invariants) {
    json j;
    j["schema"] = "ec-present/1";
    j["scale"] = pres.graph().scale();
    json gens = json::array();
    for (auto [a, b] : pres.generators())
        gens.push_back({a, b});
    j["generators"] = std::move(gens);
    json rels = json::array();
    for (const Word& r : pres.relators())
        rels.push_back(r);
    j["relators"] = std::move(rels);
    j["rank_upper"] = invariants.betti;
    return j.dump(2) + "\n";
}

std::string analyze_to_json(const AnalyzeResult& r) {
    json j;
    j["schema"] = "ec-analyze/1";
    j["scale"] = r.scale;
    j["chain_connected"] = r.chain_connected;
    j["component_size"] = r.component_size;
    j["generators"] = r.generators;
    j["relators"] = r.relators;
    j["betti"] = r.invariants.betti;
    j["torsion"] = torsion_to_json(r.invariants.torsion);
    j["certified"] = certification_name(r.certification);
    switch (r.universality.verdict) {
    case UniversalityVerdict::Certified: j["universal_at_scale"] = "certified"; break;
    case UniversalityVerdict::Refuted:
        j["universal_at_scale"] = "refuted";
        j["witness"] = word_to_string(r.universality.witness);
        break;
    case UniversalityVerdict::Inconclusive: j["universal_at_scale"] = "inconclusive"; break;
    }
    return j.dump(2) + "\n";
}

} // namespace ec
