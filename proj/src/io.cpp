#include "steklov/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace steklov::io {

std::string format_sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12e", v);
    return buf;
}

void write_text_atomic(const std::filesystem::path& path, std::string_view content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        out << content;
        if (!out) throw std::runtime_error("failed writing " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

std::string mesh_text(const Mesh& mesh) {
    std::ostringstream os;
    os << "vertices " << mesh.n_vertices() << " triangles " << mesh.triangles.size()
       << " boundary_edges " << mesh.boundary_edges.size() << "\n";
    for (const auto& v : mesh.vertices) {
        os << format_sci(v.x()) << " " << format_sci(v.y()) << "\n";
    }
    for (const auto& t : mesh.triangles) {
        os << t[0] << " " << t[1] << " " << t[2] << "\n";
    }
    for (const auto& e : mesh.boundary_edges) {
        os << e.a << " " << e.b << " "
           << (e.component == BoundaryComponent::outer ? "outer" : "inner") << "\n";
    }
    return os.str();
}

std::string matrix_text(const Eigen::SparseMatrix<double>& m) {
    std::ostringstream os;
    for (int col = 0; col < m.outerSize(); ++col) {
        for (Eigen::SparseMatrix<double>::InnerIterator it(m, col); it; ++it) {
            os << it.row() << " " << it.col() << " " << format_sci(it.value()) << "\n";
        }
    }
    return os.str();
}

std::string matrix_text(const Eigen::MatrixXd& m) {
    std::ostringstream os;
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) {
            os << i << " " << j << " " << format_sci(m(i, j)) << "\n";
        }
    }
    return os.str();
}

std::string nodal_curves_text(const std::vector<analysis::NodalCurve>& curves) {
    std::ostringstream os;
    for (const auto& c : curves) {
        os << "curve closed=" << (c.closed ? 1 : 0) << " winding=" << c.winding
           << " points=" << c.points.size() << "\n";
        for (const auto& p : c.points) {
            os << format_sci(p.x()) << " " << format_sci(p.y()) << "\n";
        }
    }
    return os.str();
}

}  // namespace steklov::io
