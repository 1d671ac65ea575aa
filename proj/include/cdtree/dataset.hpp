#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace cdtree {

// n x d matrix of real-valued observations, one column per variable.
struct ObservationDataset {
    Eigen::MatrixXd data;
    std::vector<std::string> names;

    int n() const { return static_cast<int>(data.rows()); }
    int d() const { return static_cast<int>(data.cols()); }

    // Zero-mean / unit-variance per column; constant columns are only centered.
    ObservationDataset standardized() const {
        ObservationDataset out = *this;
        for (int j = 0; j < d(); ++j) {
            auto col = out.data.col(j);
            const double mean = col.mean();
            col.array() -= mean;
            const double sd = std::sqrt(col.squaredNorm() / n());
            if (sd > 0) col /= sd;
        }
        return out;
    }
};

}  // namespace cdtree
