#include "entverify/shape.hpp"

#include <algorithm>
#include <string>

namespace entverify {

SystemShape::SystemShape(std::vector<int> dims) : dims_(std::move(dims)) {
    if (dims_.empty()) {
        throw BadShape("SystemShape: at least one party required");
    }
    total_ = 1;
    for (int d : dims_) {
        if (d < 2) {
            throw BadShape("SystemShape: every party dimension must be >= 2, got " +
                           std::to_string(d));
        }
        total_ *= d;
    }
}

int SystemShape::dim(int party) const {
    if (party < 1 || party > parties()) {
        throw BadPartySet("SystemShape: party index " + std::to_string(party) +
                          " outside 1.." + std::to_string(parties()));
    }
    return dims_[static_cast<std::size_t>(party - 1)];
}

std::vector<int> index_digits(const SystemShape& shape, std::int64_t index) {
    const int n = shape.parties();
    std::vector<int> digits(static_cast<std::size_t>(n));
    for (int k = n; k >= 1; --k) {
        const int d = shape.dim(k);
        digits[static_cast<std::size_t>(k - 1)] = static_cast<int>(index % d);
        index /= d;
    }
    return digits;
}

std::int64_t digits_index(const SystemShape& shape, const std::vector<int>& digits) {
    std::int64_t index = 0;
    for (int k = 1; k <= shape.parties(); ++k) {
        index = index * shape.dim(k) + digits[static_cast<std::size_t>(k - 1)];
    }
    return index;
}

SystemShape restrict_shape(const SystemShape& shape, const std::vector<int>& parties) {
    std::vector<int> dims;
    dims.reserve(parties.size());
    for (int k : parties) {
        dims.push_back(shape.dim(k));
    }
    return SystemShape(dims);
}

} // namespace entverify
