#include "cnnelm/knn.hpp"

#include "cnnelm/error.hpp"

namespace cnnelm {

KnnIndex KnnIndex::build(Matrix points, std::vector<Label> labels) {
    if (points.rows() == 0) throw ConfigError("1-NN index needs at least one training point");
    if (labels.size() != points.rows()) throw ShapeError("1-NN index: points and labels differ in count");
    return KnnIndex(std::move(points), std::move(labels));
}

std::size_t KnnIndex::nearest(std::span<const double> query) const {
    if (query.size() != width())
        throw ShapeError("query has " + std::to_string(query.size()) + " values, index expects " +
                         std::to_string(width()));
    // Squared distance has the same argmin as the distance itself.
    std::size_t best = 0;
    double best_d = 0.0;
    const std::size_t n = width();
    for (std::size_t r = 0; r < points_.rows(); ++r) {
        const double* p = points_.row(r).data();
        double d = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double diff = p[j] - query[j];
            d += diff * diff;
        }
        if (r == 0 || d < best_d) {
            best = r;
            best_d = d;
        }
    }
    return best;
}

Label KnnIndex::classify(std::span<const double> query) const { return labels_[nearest(query)]; }

std::vector<Label> KnnIndex::classify_all(const Matrix& queries) const {
    if (queries.rows() == 0 && queries.cols() != width() && queries.cols() != 0)
        throw ShapeError("query width does not match the index");
    std::vector<Label> out;
    out.reserve(queries.rows());
    for (std::size_t r = 0; r < queries.rows(); ++r) out.push_back(classify(queries.row(r)));
    return out;
}

}  // namespace cnnelm
