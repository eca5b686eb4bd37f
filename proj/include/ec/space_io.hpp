#pragma once

#include <iosfwd>
#include <string>

#include "ec/chain_homotopy.hpp"
#include "ec/cover_builder.hpp"
#include "ec/metric_core.hpp"

namespace ec {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kSpaceSchema = "ec-space/1";
inline constexpr const char* kCertSchema = "ec-cert/1";
inline constexpr const char* kTowerSchema = "ec-tower/1";

FiniteMetricSpace read_space(std::istream& in);
FiniteMetricSpace read_space_file(const std::string& path);
std::string space_to_json(const FiniteMetricSpace& space);
void write_space_file(const FiniteMetricSpace& space, const std::string& path);

struct CertificateFile {
    double scale = 0.0;
    std::vector<PointIndex> start;
    std::vector<HomotopyMove> moves;
};

CertificateFile read_certificate_file(const std::string& path);
std::string certificate_to_json(double scale, const HomotopyCertificate& cert);
void write_certificate_file(double scale, const HomotopyCertificate& cert,
                            const std::string& path);

std::string scale_graph_to_dot(const ScaleGraph& graph);
std::string cover_to_dot(const TruncatedCover& cover);

} // namespace ec
