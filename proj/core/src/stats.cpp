#include "agfd/stats.hpp"

#include <algorithm>

namespace agfd {

double median(Eigen::VectorXd values) {
    const auto n = values.size();
    if (n == 0) throw InvalidInputError("median: empty vector");
    double* data = values.data();
    const auto mid = n / 2;
    std::nth_element(data, data + mid, data + n);
    const double upper = data[mid];
    if (n % 2 == 1) return upper;
    const double lower = *std::max_element(data, data + mid);
    return 0.5 * (lower + upper);
}

}  // namespace agfd
