#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "rovernav/geometry.hpp"

namespace rovernav {

/// Dense row-major 2-D array. Row index r maps to the world y axis and
/// column index c to the world x axis everywhere in this library.
template <typename T>
class Grid {
public:
    Grid() = default;
    Grid(int rows, int cols, T init = T{})
        : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols, init) {
        if (rows <= 0 || cols <= 0)
            throw std::invalid_argument("Grid: dimensions must be positive");
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    size_t size() const { return data_.size(); }
    bool empty() const { return data_.empty(); }

    bool in_bounds(int r, int c) const {
        return r >= 0 && r < rows_ && c >= 0 && c < cols_;
    }

    T& at(int r, int c) { return data_[static_cast<size_t>(r) * cols_ + c]; }
    const T& at(int r, int c) const { return data_[static_cast<size_t>(r) * cols_ + c]; }

    template <typename U>
    bool same_shape(const Grid<U>& o) const {
        return rows_ == o.rows() && cols_ == o.cols();
    }

    std::vector<T>& data() { return data_; }
    const std::vector<T>& data() const { return data_; }

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<T> data_;
};

/// Georeference for a grid: world coordinates of the (0,0) cell's min corner
/// plus the cell edge length in meters.
struct GridFrame {
    double res = 1.0;
    Vec2 origin;

    struct Cell {
        int r = 0;
        int c = 0;
    };

    Cell cell_of(const Vec2& p) const {
        return {static_cast<int>(std::floor((p.y - origin.y) / res)),
                static_cast<int>(std::floor((p.x - origin.x) / res))};
    }
    Vec2 center_of(int r, int c) const {
        return {origin.x + (c + 0.5) * res, origin.y + (r + 0.5) * res};
    }
};

}  // namespace rovernav
