#pragma once

#include "hcasim/types.hpp"

#include <array>
#include <iosfwd>
#include <vector>

namespace hcasim {

// Hexagonal cell lattice in axial coordinates forming a parallelogram.
// Cell (col a, row b) has id b*cols + a and center (a + b/2, b*sqrt(3)/2),
// so adjacent cell centers are exactly distance 1 apart.
struct GridGeometry {
    int rows = 0;
    int cols = 0;
    std::vector<std::array<double, 2>> centers; // indexed by cell id

    int cell_count() const { return rows * cols; }
    CellId cell_at(int row, int col) const { return row * cols + col; }

    // Euclidean center-to-center distance; throws std::out_of_range on bad ids.
    double distance(CellId i, CellId j) const;
};

GridGeometry build_grid(int rows, int cols);

// Inverse power-law propagation: cross gain = max(d, min_distance)^(-path_loss_exponent).
// self_gain is the serving-link gain g_ii and must exceed every cross gain.
struct GainModel {
    double path_loss_exponent = 2.0;
    double min_distance = 1.0;
    double self_gain = 3.0;

    bool operator==(const GainModel&) const = default;
};

class GainMatrix {
public:
    GainMatrix() = default;
    GainMatrix(int cells, std::vector<double> values); // row-major cells*cells

    double operator()(CellId i, CellId j) const { return g_[static_cast<std::size_t>(i) * n_ + j]; }
    int cells() const { return n_; }

    // Row-major CSV, full precision, header row of cell ids.
    void write_csv(std::ostream& os) const;

private:
    int n_ = 0;
    std::vector<double> g_;
};

GainMatrix build_gain_matrix(const GridGeometry& geom, const GainModel& model);

} // namespace hcasim
