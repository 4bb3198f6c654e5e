#include "hcasim/hexgrid.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>

namespace hcasim {

double GridGeometry::distance(CellId i, CellId j) const {
    const auto n = static_cast<CellId>(centers.size());
    if (i < 0 || i >= n || j < 0 || j >= n)
        throw std::out_of_range("cell id out of range: " + std::to_string(i < 0 || i >= n ? i : j));
    return std::hypot(centers[i][0] - centers[j][0], centers[i][1] - centers[j][1]);
}

GridGeometry build_grid(int rows, int cols) {
    if (rows < 1 || cols < 1)
        throw std::invalid_argument("grid dimensions must be positive");
    GridGeometry geom;
    geom.rows = rows;
    geom.cols = cols;
    geom.centers.resize(static_cast<std::size_t>(rows) * cols);
    const double row_step = std::sqrt(3.0) / 2.0;
    for (int b = 0; b < rows; ++b)
        for (int a = 0; a < cols; ++a)
            geom.centers[geom.cell_at(b, a)] = {a + b / 2.0, b * row_step};
    return geom;
}

GainMatrix::GainMatrix(int cells, std::vector<double> values)
    : n_(cells), g_(std::move(values)) {
    if (cells < 0 || g_.size() != static_cast<std::size_t>(cells) * cells)
        throw std::invalid_argument("gain matrix shape mismatch");
}

void GainMatrix::write_csv(std::ostream& os) const {
    os << std::setprecision(17);
    os << "cell";
    for (int j = 0; j < n_; ++j) os << ',' << j;
    os << '\n';
    for (int i = 0; i < n_; ++i) {
        os << i;
        for (int j = 0; j < n_; ++j) os << ',' << (*this)(i, j);
        os << '\n';
    }
}

GainMatrix build_gain_matrix(const GridGeometry& geom, const GainModel& model) {
    if (model.path_loss_exponent <= 0.0)
        throw std::invalid_argument("path_loss_exponent must be positive");
    if (model.min_distance <= 0.0)
        throw std::invalid_argument("min_distance must be positive");
    if (model.self_gain <= 0.0)
        throw std::invalid_argument("self_gain must be positive");

    const int n = geom.cell_count();
    std::vector<double> g(static_cast<std::size_t>(n) * n, 0.0);
    double max_cross = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == j) {
                g[static_cast<std::size_t>(i) * n + j] = model.self_gain;
                continue;
            }
            const double d = std::max(geom.distance(i, j), model.min_distance);
            const double v = std::pow(d, -model.path_loss_exponent);
            g[static_cast<std::size_t>(i) * n + j] = v;
            max_cross = std::max(max_cross, v);
        }
    }
    if (n > 1 && model.self_gain <= max_cross)
        throw std::invalid_argument("self_gain must exceed every cross gain");
    return GainMatrix(n, std::move(g));
}

} // namespace hcasim
