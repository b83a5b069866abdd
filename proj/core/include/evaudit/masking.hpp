#pragma once

// Loss-mask spans over the raw tagged text.
//
// Policy-generated bytes train; environment-generated bytes do not. The one
// exception implements selective unmasking: inside a masked tool response,
// the content bytes of items that the NEXT step's declaration cites flip
// back to training. The result is a canonical partition — sorted, coalesced
// spans that tile [0, raw size) exactly.

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "evaudit/protocol.hpp"

namespace evaudit {

class MissingOffsets : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct MaskSpan {
    std::size_t begin = 0;
    std::size_t end = 0;
    bool train = true;

    bool operator==(const MaskSpan& o) const {
        return begin == o.begin && end == o.end && train == o.train;
    }
};

// Throws MissingOffsets when the trajectory has no raw text (offsets only
// exist on parsed input).
std::vector<MaskSpan> compute_masks(const Trajectory& t);

}  // namespace evaudit
