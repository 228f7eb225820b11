#pragma once

#include <cassert>
#include <cstddef>
#include <vector>

namespace dacs {

/// Minimal dense row-major matrix. The graphs here are tiny (n <= 100), so
/// plain dense storage is all the linear algebra this project needs.
struct Matrix {
    int rows = 0;
    int cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, 0.0) {}

    double& operator()(int r, int c) {
        assert(r >= 0 && r < rows && c >= 0 && c < cols);
        return data[static_cast<std::size_t>(r) * cols + c];
    }
    double operator()(int r, int c) const {
        assert(r >= 0 && r < rows && c >= 0 && c < cols);
        return data[static_cast<std::size_t>(r) * cols + c];
    }

    std::vector<double> multiply(const std::vector<double>& v) const {
        assert(static_cast<int>(v.size()) == cols);
        std::vector<double> out(rows, 0.0);
        for (int r = 0; r < rows; ++r) {
            double acc = 0.0;
            for (int c = 0; c < cols; ++c) acc += (*this)(r, c) * v[c];
            out[r] = acc;
        }
        return out;
    }

    std::vector<double> multiply_transposed(const std::vector<double>& v) const {
        assert(static_cast<int>(v.size()) == rows);
        std::vector<double> out(cols, 0.0);
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c) out[c] += (*this)(r, c) * v[r];
        return out;
    }
};

}  // namespace dacs
