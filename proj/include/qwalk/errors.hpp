#pragma once

#include <stdexcept>
#include <string>

namespace qwalk {

/// A truncated expansion failed to stabilize; carries the achieved gap.
class NonConvergence : public std::runtime_error {
public:
    NonConvergence(const std::string& what, double gap)
        : std::runtime_error(what + " (achieved gap " + std::to_string(gap) + ")"), gap_(gap) {}
    double gap() const { return gap_; }

private:
    double gap_;
};

} // namespace qwalk
