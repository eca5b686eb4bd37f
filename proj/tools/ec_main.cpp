#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "ec/cover_builder.hpp"
#include "ec/example_spaces.hpp"
#include "ec/reports.hpp"
#include "ec/scale_tower.hpp"
#include "ec/space_io.hpp"
#include "ec/subgroup_folding.hpp"

namespace {

using namespace ec;

void write_text(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write file: " + path);
    out << content;
}

std::vector<PointIndex> parse_chain(const std::string& spec) {
    std::vector<PointIndex> out;
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        out.push_back(static_cast<PointIndex>(std::stoul(tok)));
    }
    if (out.empty()) throw ValidationError("empty chain: " + spec);
    return out;
}

std::vector<double> parse_scales(const std::string& spec) {
    std::vector<double> out;
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        out.push_back(std::stod(tok));
    }
    if (out.empty()) throw ValidationError("empty scale list: " + spec);
    return out;
}

AnalyzeResult analyze_space(const FiniteMetricSpace& space, double scale) {
    ScaleGraph graph(space, scale);
    PresentationAtScale pres(graph);
    SimplifiedPresentation simp = tietze_simplify(pres.fp_group());
    AnalyzeResult r;
    r.scale = scale;
    r.chain_connected = chain_connected(graph).connected;
    r.component_size = pres.component_size();
    r.generators = pres.generator_count();
    r.relators = pres.relators().size();
    r.certification = simp.certification();
    r.invariants = abelianize(simp.group());
    r.universality = universality_check(pres.fp_group());
    return r;
}

int run(int argc, char** argv) {
    CLI::App app{"ec: scale-dependent deck groups, covers and scale towers of finite metric "
                 "samples"};
    app.set_version_flag("--version", std::string("ec ") + kToolVersion);
    app.require_subcommand(1);

    // generate
    auto* gen = app.add_subcommand("generate", "sample a built-in example space");
    std::string gen_family;
    std::uint32_t gen_level = 1;
    double gen_density = 0.05;
    std::string gen_out;
    gen->add_option("--family", gen_family, "circle|wedge|hawaiian|gasket|carpet|sine|square")
        ->required();
    gen->add_option("--level", gen_level, "stage / level / count (family dependent)");
    gen->add_option("--density", gen_density, "target maximum sample spacing");
    gen->add_option("--out", gen_out, "output ec-space/1 file")->required();

    // graph
    auto* graph_cmd = app.add_subcommand("graph", "emit the scale graph as DOT");
    std::string graph_input, graph_dot;
    double graph_scale = 0.0;
    graph_cmd->add_option("--input", graph_input)->required();
    graph_cmd->add_option("--scale", graph_scale)->required();
    graph_cmd->add_option("--emit-dot", graph_dot)->required();

    // analyze
    auto* an = app.add_subcommand("analyze", "single-scale invariants and certification");
    std::string an_input, an_json;
    double an_scale = 0.0;
    an->add_option("--input", an_input)->required();
    an->add_option("--scale", an_scale)->required();
    an->add_option("--emit-json", an_json);

    // present
    auto* pr = app.add_subcommand("present", "emit the presentation at a scale");
    std::string pr_input, pr_json;
    double pr_scale = 0.0;
    pr->add_option("--input", pr_input)->required();
    pr->add_option("--scale", pr_scale)->required();
    pr->add_option("--emit-json", pr_json)->required();

    // certify
    auto* ce = app.add_subcommand("certify", "search for or verify homotopy certificates");
    std::string ce_space, ce_from, ce_to, ce_verify, ce_out;
    double ce_scale = 0.0;
    std::size_t ce_budget = 100000;
    ce->add_option("--space", ce_space)->required();
    ce->add_option("--scale", ce_scale)->required();
    ce->add_option("--from", ce_from);
    ce->add_option("--to", ce_to);
    ce->add_option("--verify", ce_verify);
    ce->add_option("--out", ce_out);
    ce->add_option("--budget", ce_budget);

    // cover
    auto* co = app.add_subcommand("cover", "build a truncated cover");
    std::string co_input, co_dot;
    double co_scale = 0.0;
    std::uint32_t co_radius = 4;
    bool co_abelian = false;
    co->add_option("--input", co_input)->required();
    co->add_option("--scale", co_scale)->required();
    co->add_option("--radius", co_radius)->required();
    co->add_option("--emit-dot", co_dot)->required();
    co->add_flag("--abelianized", co_abelian, "use the abelianized vertex identity");

    // theta
    auto* th = app.add_subcommand("theta", "coarsening homomorphism between two scales");
    std::string th_input, th_dot, th_json;
    double th_coarse = 0.0, th_fine = 0.0;
    th->add_option("--input", th_input)->required();
    th->add_option("--coarse", th_coarse)->required();
    th->add_option("--fine", th_fine)->required();
    th->add_option("--emit-dot", th_dot, "folded image subgroup graph");
    th->add_option("--emit-json", th_json);

    // tower
    auto* to = app.add_subcommand("tower", "scale tower report");
    std::string to_input, to_scales, to_json, to_svg;
    bool to_auto = false;
    std::size_t to_window = 3;
    to->add_option("--input", to_input)->required();
    to->add_option("--scales", to_scales, "comma-separated decreasing scales");
    to->add_flag("--auto", to_auto, "geometric schedule from the space digest");
    to->add_option("--emit-json", to_json);
    to->add_option("--emit-svg", to_svg);
    to->add_option("--window", to_window, "stabilization window");

    CLI11_PARSE(app, argc, argv);

    if (gen->parsed()) {
        SamplerSpec spec;
        spec.family = family_from_string(gen_family);
        spec.level = gen_level;
        spec.density = gen_density;
        FiniteMetricSpace space = sample(spec);
        write_space_file(space, gen_out);
        std::cout << "wrote " << gen_out << " (" << space.size() << " points)\n";
        return 0;
    }
    if (graph_cmd->parsed()) {
        FiniteMetricSpace space = read_space_file(graph_input);
        ScaleGraph graph(space, graph_scale);
        write_text(graph_dot, scale_graph_to_dot(graph));
        std::cout << "wrote " << graph_dot << " (" << graph.edges().size() << " edges, "
                  << graph.triangles().size() << " triangles)\n";
        return 0;
    }
    if (an->parsed()) {
        FiniteMetricSpace space = read_space_file(an_input);
        AnalyzeResult r = analyze_space(space, an_scale);
        std::string doc = analyze_to_json(r);
        if (!an_json.empty()) write_text(an_json, doc);
        std::cout << doc;
        return 0;
    }
    if (pr->parsed()) {
        FiniteMetricSpace space = read_space_file(pr_input);
        ScaleGraph graph(space, pr_scale);
        PresentationAtScale pres(graph);
        if (!chain_connected(graph).connected)
            std::cerr << "warning: space is not chain connected at scale " << pr_scale
                      << "; components away from the basepoint are ignored\n";
        AbelianInvariants inv = abelianize(tietze_simplify(pres.fp_group()).group());
        write_text(pr_json, presentation_to_json(pres, inv));
        std::cout << "wrote " << pr_json << "\n";
        return 0;
    }
    if (ce->parsed()) {
        FiniteMetricSpace space = read_space_file(ce_space);
        ScaleGraph graph(space, ce_scale);
        if (!ce_verify.empty()) {
            CertificateFile cf = read_certificate_file(ce_verify);
            if (cf.scale != ce_scale)
                std::cerr << "note: certificate was recorded at scale " << cf.scale << "\n";
            HomotopyCertificate cert{make_chain(graph, cf.start), cf.moves};
            try {
                Chain end = verify_certificate(cert);
                std::cout << "certificate verifies; end chain:";
                for (PointIndex v : end.vertices)
                    std::cout << " " << v;
                std::cout << "\n";
                return 0;
            } catch (const CertificateError& e) {
                std::cerr << "invalid certificate: " << e.what() << "\n";
                return 2;
            }
        }
        if (ce_from.empty() || ce_to.empty())
            throw ValidationError("certify needs either --verify or both --from and --to");
        Chain a = make_chain(graph, parse_chain(ce_from));
        Chain b = make_chain(graph, parse_chain(ce_to));
        SearchResult res = search_homotopy(a, b, ce_budget);
        if (!res.found) {
            std::cerr << "inconclusive: no certificate found within budget " << ce_budget << "\n";
            return 3;
        }
        std::string doc = certificate_to_json(ce_scale, res.certificate);
        if (!ce_out.empty()) {
            write_text(ce_out, doc);
            std::cout << "wrote " << ce_out << " (" << res.certificate.moves.size()
                      << " moves)\n";
        } else {
            std::cout << doc;
        }
        return 0;
    }
    if (co->parsed()) {
        FiniteMetricSpace space = read_space_file(co_input);
        ScaleGraph graph(space, co_scale);
        PresentationAtScale pres(graph);
        SimplifiedPresentation simp = tietze_simplify(pres.fp_group());
        TruncatedCover cover = build_cover(pres, simp, co_radius,
                                           co_abelian ? CoverMode::Abelianized : CoverMode::Free);
        write_text(co_dot, cover_to_dot(cover));
        std::cout << "wrote " << co_dot << " (" << cover.vertex_count() << " vertices, "
                  << cover.edges().size() << " edges, radius " << cover.radius()
                  << ", max word length " << cover.max_word_length() << ")\n";
        return 0;
    }
    if (th->parsed()) {
        FiniteMetricSpace space = read_space_file(th_input);
        if (!(th_fine < th_coarse)) throw ValidationError("--fine must be below --coarse");
        ScaleGraph gc(space, th_coarse), gf(space, th_fine);
        PresentationAtScale pc(gc), pf(gf);
        SimplifiedPresentation sc = tietze_simplify(pc.fp_group());
        SimplifiedPresentation sf = tietze_simplify(pf.fp_group());
        ThetaData td = theta(pc, sc, pf, sf);
        if (!th_dot.empty()) {
            if (!td.reduced_available)
                throw ValidationError("folded image graph needs both scales FreeCertified");
            FoldedSubgroupGraph folded = FoldedSubgroupGraph::fold(td.images_reduced, sc.rank());
            write_text(th_dot, folded.to_dot());
        }
        std::cout << "theta " << th_coarse << " <- " << th_fine << ": ";
        if (td.reduced_available) {
            std::cout << (td.surjective && *td.surjective ? "surjective" : "not surjective")
                      << ", kernel rank " << *td.kernel_rank << "\n";
        } else {
            std::cout << "raw abelianized matrix only (a scale is not certified free)\n";
        }
        if (!th_json.empty()) {
            std::ostringstream js;
            js << "{\n  \"schema\": \"ec-theta/1\",\n  \"coarse\": " << th_coarse
               << ",\n  \"fine\": " << th_fine << ",\n  \"reduced_available\": "
               << (td.reduced_available ? "true" : "false") << "\n}\n";
            write_text(th_json, js.str());
        }
        return 0;
    }
    if (to->parsed()) {
        FiniteMetricSpace space = read_space_file(to_input);
        std::vector<double> schedule;
        if (to_auto)
            schedule = auto_schedule(space);
        else if (!to_scales.empty())
            schedule = parse_scales(to_scales);
        else
            throw ValidationError("tower needs --scales or --auto");
        TowerOptions opts;
        opts.stabilization_window = to_window;
        TowerDetail detail = run_tower(space, schedule, opts);
        std::string doc = tower_to_json(detail.report);
        if (!to_json.empty()) write_text(to_json, doc);
        if (!to_svg.empty()) write_text(to_svg, tower_to_svg(detail.report));
        std::cout << doc;
        return 0;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const ec::CertificateError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ec::BudgetExceeded& e) {
        std::cerr << "inconclusive: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
