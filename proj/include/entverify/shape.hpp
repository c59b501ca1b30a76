#pragma once

#include <cstdint>
#include <vector>

#include "entverify/errors.hpp"

namespace entverify {

/// Party dimensions (d_1,...,d_n) of a composite system H = H_1 x ... x H_n.
/// Party indices are 1-based everywhere: in the API, in labels and in files.
class SystemShape {
public:
    explicit SystemShape(std::vector<int> dims);

    int parties() const { return static_cast<int>(dims_.size()); }
    int dim(int party) const;  // 1-based
    const std::vector<int>& dims() const { return dims_; }
    std::int64_t total_dim() const { return total_; }

    bool operator==(const SystemShape&) const = default;

private:
    std::vector<int> dims_;
    std::int64_t total_ = 0;
};

/// Mixed-radix digits (i_1,...,i_n) of a basis index, party 1 most significant.
std::vector<int> index_digits(const SystemShape& shape, std::int64_t index);

/// Inverse of index_digits.
std::int64_t digits_index(const SystemShape& shape, const std::vector<int>& digits);

/// Shape restricted to a subset of parties (1-based, ascending order kept).
SystemShape restrict_shape(const SystemShape& shape, const std::vector<int>& parties);

} // namespace entverify
