#ifndef SPINV_OPCOUNT_HPP
#define SPINV_OPCOUNT_HPP

#include <cstdint>

namespace spinv {

// Elementary-operation tally. "counted" holds variable-dependent
// multiplications, divisions, integer powers and elementary-function
// applications; "free" holds additions, subtractions and any operation
// with a constant operand (scalar multiplications and the like).
struct OperationCount {
    std::int64_t counted = 0;
    std::int64_t free = 0;

    OperationCount& operator+=(const OperationCount& o) {
        counted += o.counted;
        free += o.free;
        return *this;
    }
    friend OperationCount operator+(OperationCount a, const OperationCount& b) {
        a += b;
        return a;
    }
    friend bool operator==(const OperationCount&, const OperationCount&) = default;
};

}  // namespace spinv

#endif
