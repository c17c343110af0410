#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "steklov/analysis.hpp"
#include "steklov/mesh.hpp"

namespace steklov::io {

/// 12 significant digits, scientific; fixed formatting for reproducible files.
std::string format_sci(double v);

/// Writes through a temporary file in the same directory plus rename, so a
/// failed run leaves no partial output behind.
void write_text_atomic(const std::filesystem::path& path, std::string_view content);

/// Plain-text mesh dump: header `vertices N triangles M boundary_edges K`,
/// one vertex `x y` per line, one triangle `i j k` per line, one boundary
/// edge `i j label` per line.
std::string mesh_text(const Mesh& mesh);

/// Coordinate-list text, one `i j value` line per stored entry.
std::string matrix_text(const Eigen::SparseMatrix<double>& m);
std::string matrix_text(const Eigen::MatrixXd& m);

/// Polyline blocks: `curve closed=<0|1> winding=<n> points=<m>` then `x y`
/// lines.
std::string nodal_curves_text(const std::vector<analysis::NodalCurve>& curves);

}  // namespace steklov::io
