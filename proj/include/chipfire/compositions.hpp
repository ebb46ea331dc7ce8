#pragma once

#include <cstddef>
#include <vector>

namespace chipfire {

/// Walks every weak composition of `total` into `parts` nonnegative parts in
/// descending lexicographic order: (c,0,..,0), (c-1,1,0,..), ..., (0,..,0,c).
template <class T>
class CompositionCursor {
public:
    CompositionCursor(std::size_t parts, T total) : parts_(parts, T(0))
    {
        if (parts > 0) parts_[0] = total;
    }

    const std::vector<T>& current() const noexcept { return parts_; }

    // Moves to the next composition; false once the last one has been seen.
    bool advance()
    {
        const std::size_t n = parts_.size();
        if (n < 2) return false;
        std::size_t j = n - 1;
        while (j-- > 0) {
            if (parts_[j] != 0) break;
            if (j == 0) return false;
        }
        if (parts_[j] == 0) return false;
        parts_[j] -= 1;
        T tail = parts_[n - 1];
        parts_[n - 1] = 0;
        parts_[j + 1] = tail + 1;
        return true;
    }

private:
    std::vector<T> parts_;
};

}  // namespace chipfire
