#pragma once

#include <span>
#include <vector>

#include "cnnelm/dataset.hpp"
#include "cnnelm/linalg.hpp"

namespace cnnelm {

/// Brute-force 1-nearest-neighbour index under euclidean distance.
class KnnIndex {
public:
    /// Throws ConfigError for an empty training set.
    static KnnIndex build(Matrix points, std::vector<Label> labels);

    /// Label of the closest training row; the lowest row index wins ties.
    Label classify(std::span<const double> query) const;
    std::size_t nearest(std::span<const double> query) const;
    std::vector<Label> classify_all(const Matrix& queries) const;

    std::size_t size() const noexcept { return points_.rows(); }
    std::size_t width() const noexcept { return points_.cols(); }
    const std::vector<Label>& labels() const noexcept { return labels_; }

private:
    KnnIndex(Matrix points, std::vector<Label> labels)
        : points_(std::move(points)), labels_(std::move(labels)) {}

    Matrix points_;
    std::vector<Label> labels_;
};

}  // namespace cnnelm
