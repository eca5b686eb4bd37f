#include "ec/space_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace ec {

using json = nlohmann::ordered_json;

FiniteMetricSpace read_space(std::istream& in) {
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ValidationError(std::string("space file does not parse: ") + e.what());
    }
    if (!j.is_object()) throw ValidationError("space file must hold a JSON object");
    if (!j.contains("schema") || j["schema"] != kSpaceSchema)
        throw ValidationError(std::string("space file must declare schema \"") + kSpaceSchema +
                              "\"");
    if (!j.contains("metric") || !j["metric"].is_string())
        throw ValidationError("space file needs a \"metric\" of \"euclidean\" or \"matrix\"");
    if (!j.contains("basepoint") || !j["basepoint"].is_number_unsigned())
        throw ValidationError("missing basepoint");
    auto basepoint = j["basepoint"].get<PointIndex>();
    std::vector<std::string> labels;
    if (j.contains("labels")) {
        if (!j["labels"].is_array()) throw ValidationError("labels must be an array");
        for (const auto& l : j["labels"])
            labels.push_back(l.get<std::string>());
    }
    const std::string metric = j["metric"].get<std::string>();
    if (metric == "euclidean") {
        if (!j.contains("points") || !j["points"].is_array())
            throw ValidationError("euclidean space needs a \"points\" array");
        std::vector<std::vector<double>> coords;
        for (const auto& p : j["points"]) {
            if (!p.is_array()) throw ValidationError("each point must be a coordinate array");
            coords.push_back(p.get<std::vector<double>>());
        }
        return FiniteMetricSpace::from_coordinates(std::move(coords), basepoint,
                                                   std::move(labels));
    }
    if (metric == "matrix") {
        if (!j.contains("matrix") || !j["matrix"].is_array())
            throw ValidationError("matrix space needs a \"matrix\" array");
        std::vector<std::vector<double>> m;
        for (const auto& row : j["matrix"])
            m.push_back(row.get<std::vector<double>>());
        bool pseudometric = j.value("pseudometric", false);
        return FiniteMetricSpace::from_matrix(m, basepoint, pseudometric, std::move(labels));
    }
    throw ValidationError("metric must be \"euclidean\" or \"matrix\", got \"" + metric + "\"");
}

FiniteMetricSpace read_space_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open space file: " + path);
    return read_space(in);
}

std::string space_to_json(const FiniteMetricSpace& space) {
    json j;
    j["schema"] = kSpaceSchema;
    if (space.has_coordinates()) {
        j["metric"] = "euclidean";
        json pts = json::array();
        for (PointIndex i = 0; i < space.size(); ++i) {
            auto c = space.coordinates(i);
            pts.push_back(std::vector<double>(c.begin(), c.end()));
        }
        j["points"] = std::move(pts);
    } else {
        j["metric"] = "matrix";
        json rows = json::array();
        for (PointIndex i = 0; i < space.size(); ++i) {
            std::vector<double> row(space.size());
            for (PointIndex k = 0; k < space.size(); ++k)
                row[k] = space.dist(i, k);
            rows.push_back(std::move(row));
        }
        j["matrix"] = std::move(rows);
        if (space.declared_pseudometric()) j["pseudometric"] = true;
    }
    j["basepoint"] = space.basepoint();
    if (!space.labels().empty()) j["labels"] = space.labels();
    return j.dump(2) + "\n";
}

void write_space_file(const FiniteMetricSpace& space, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write space file: " + path);
    out << space_to_json(space);
}

CertificateFile read_certificate_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open certificate file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ValidationError(std::string("certificate does not parse: ") + e.what());
    }
    if (!j.contains("schema") || j["schema"] != kCertSchema)
        throw ValidationError(std::string("certificate must declare schema \"") + kCertSchema +
                              "\"");
    CertificateFile out;
    out.scale = j.at("scale").get<double>();
    out.start = j.at("start").get<std::vector<PointIndex>>();
    for (const auto& m : j.at("moves")) {
        HomotopyMove mv;
        std::string kind = m.at("kind").get<std::string>();
        if (kind == "add")
            mv.kind = MoveKind::Add;
        else if (kind == "remove")
            mv.kind = MoveKind::Remove;
        else
            throw ValidationError("move kind must be \"add\" or \"remove\"");
        mv.position = m.at("position").get<std::uint32_t>();
        if (mv.kind == MoveKind::Add) mv.point = m.at("point").get<PointIndex>();
        out.moves.push_back(mv);
    }
    return out;
}

std::string certificate_to_json(double scale, const HomotopyCertificate& cert) {
    json j;
    j["schema"] = kCertSchema;
    j["scale"] = scale;
    j["start"] = cert.start.vertices;
    json moves = json::array();
    for (const auto& m : cert.moves) {
        json mj;
        mj["kind"] = m.kind == MoveKind::Add ? "add" : "remove";
        mj["position"] = m.position;
        if (m.kind == MoveKind::Add) mj["point"] = m.point;
        moves.push_back(std::move(mj));
    }
    j["moves"] = std::move(moves);
    return j.dump(2) + "\n";
}

void write_certificate_file(double scale, const HomotopyCertificate& cert,
                            const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write certificate file: " + path);
    out << certificate_to_json(scale, cert);
}

std::string scale_graph_to_dot(const ScaleGraph& graph) {
    std::ostringstream s;
    s << "graph scale_graph {\n";
    const auto& labels = graph.space().labels();
    for (PointIndex v = 0; v < graph.vertex_count(); ++v) {
        s << "  " << v;
        if (!labels.empty()) s << " [label=\"" << labels[v] << "\"]";
        s << ";\n";
    }
    for (auto [a, b] : graph.edges())
        s << "  " << a << " -- " << b << ";\n";
    s << "}\n";
    return s.str();
}

std::string cover_to_dot(const TruncatedCover& cover) {
    std::ostringstream s;
    s << "graph " << (cover.mode() == CoverMode::Abelianized ? "cover_abelianized" : "cover")
      << " {\n";
    for (std::uint32_t v = 0; v < cover.vertex_count(); ++v)
        s << "  " << v << " [label=\"" << cover.point(v) << ":" << word_to_string(cover.word(v))
          << "\"];\n";
    for (auto [a, b] : cover.edges())
        s << "  " << a << " -- " << b << ";\n";
    s << "}\n";
    return s.str();
}

} // namespace ec
